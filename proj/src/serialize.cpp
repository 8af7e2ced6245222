#include "mcgpres/serialize.hpp"

#include <sstream>

namespace mcgpres {

using nlohmann::json;

Format parse_format(const std::string& s) {
  if (s == "structured") return Format::structured;
  if (s == "algebra-text") return Format::algebra_text;
  if (s == "human") return Format::human;
  throw std::invalid_argument("unknown format: " + s);
}

json gen_to_json(const Gen& g) {
  json payload = json::array();
  switch (g.fam) {
    case Family::twist:
      payload = {g.label, std::string(1, g.orient)};
      break;
    case Family::cross_y:
      payload = {g.label, g.label2, std::string(1, g.orient)};
      break;
    case Family::schreier:
      payload = {g.label};
      break;
    case Family::image:
      payload = {g.label, g.label2};
      break;
    default:
      for (int v : g.indices()) payload.push_back(v);
  }
  return json::array({family_tag(g.fam), payload});
}

Gen gen_from_json(const json& j) {
  Family f = family_from_tag(j.at(0).get<std::string>());
  const json& p = j.at(1);
  switch (f) {
    case Family::twist:
      return gen_twist(p.at(0).get<std::string>(), p.at(1).get<std::string>().at(0));
    case Family::cross_y:
      return gen_cross_y(p.at(0).get<std::string>(), p.at(1).get<std::string>(),
                         p.at(2).get<std::string>().at(0));
    case Family::schreier:
      return gen_schreier(p.at(0).get<std::string>());
    case Family::image:
      return gen_image(p.at(0).get<std::string>(), p.at(1).get<std::string>());
    default:
      return gen_from_indices(f, p.get<std::vector<int>>());
  }
}

json word_to_json(const Word& w) {
  json out = json::array();
  for (auto& l : w.letters()) {
    json t = gen_to_json(l.g);
    t.push_back(l.e);
    out.push_back(std::move(t));
  }
  return out;
}

Word word_from_json(const json& j) {
  std::vector<Letter> raw;
  for (auto& t : j) raw.push_back({gen_from_json(json::array({t.at(0), t.at(1)})), t.at(2).get<long>()});
  return Word::reduce(raw);
}

std::string to_structured(const Presentation& P) {
  std::ostringstream os;
  json surf = {{"genus", P.genus}, {"boundary", P.boundary}};
  json gens = json::array();
  for (auto& g : P.alphabet.gens()) gens.push_back(gen_to_json(g));
  os << "{\n\"surface\": " << surf.dump() << ",\n\"generators\": " << gens.dump()
     << ",\n\"relators\": [";
  for (std::size_t i = 0; i < P.relators.size(); ++i) {
    auto& r = P.relators[i];
    json jr = {{"family", r.family}, {"case", r.kase}, {"word", word_to_json(r.word)}};
    os << (i ? ",\n" : "\n") << jr.dump();
  }
  os << (P.relators.empty() ? "" : "\n") << "],\n\"flags\": " << json(P.flags).dump() << "\n}\n";
  return os.str();
}

Presentation from_structured(const std::string& text) {
  json j = json::parse(text);
  Presentation P;
  P.genus = j.at("surface").at("genus").get<int>();
  P.boundary = j.at("surface").at("boundary").get<int>();
  for (auto& g : j.at("generators")) P.alphabet.add(gen_from_json(g));
  for (auto& r : j.at("relators"))
    P.add_relator(word_from_json(r.at("word")), r.at("family").get<std::string>(),
                  r.at("case").get<std::string>());
  if (j.contains("flags")) P.flags = j.at("flags").get<std::vector<std::string>>();
  P.check();
  return P;
}

namespace {

std::string algebra_word(const Word& w) {
  if (w.empty()) return "One(F)";
  return w.str();
}

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::string to_algebra_text(const Presentation& P) {
  std::ostringstream os;
  os << "# genus " << P.genus << " boundary " << P.boundary << "\n";
  for (auto& f : P.flags) os << "# flag " << f << "\n";
  os << "F := FreeGroup(";
  for (std::size_t i = 0; i < P.alphabet.size(); ++i)
    os << (i ? ", " : "") << '"' << P.alphabet[i].name() << '"';
  os << ");;\nAssignGeneratorVariables(F);;\nrels := [\n";
  for (std::size_t i = 0; i < P.relators.size(); ++i) {
    auto& r = P.relators[i];
    os << "  " << algebra_word(r.word) << (i + 1 < P.relators.size() ? "," : "")
       << " # " << r.family;
    if (!r.kase.empty()) os << " " << r.kase;
    os << "\n";
  }
  os << "];;\nG := F / rels;;\n";
  return os.str();
}

Presentation from_algebra_text(const std::string& text) {
  Presentation P;
  std::istringstream is(text);
  std::string line;
  bool in_rels = false;
  while (std::getline(is, line)) {
    if (line.rfind("# genus ", 0) == 0) {
      std::istringstream ls(line.substr(8));
      std::string kw;
      ls >> P.genus >> kw >> P.boundary;
    } else if (line.rfind("# flag ", 0) == 0) {
      P.flags.push_back(line.substr(7));
    } else if (line.rfind("F := FreeGroup(", 0) == 0) {
      std::size_t p = 0;
      while ((p = line.find('"', p)) != std::string::npos) {
        auto q = line.find('"', p + 1);
        P.alphabet.add(parse_gen(line.substr(p + 1, q - p - 1)));
        p = q + 1;
      }
    } else if (line == "rels := [") {
      in_rels = true;
    } else if (line == "];;") {
      in_rels = false;
    } else if (in_rels) {
      auto hash = line.find(" # ");
      std::string body = trim(line.substr(0, hash));
      std::string tag = hash == std::string::npos ? "" : line.substr(hash + 3);
      if (!body.empty() && body.back() == ',') body.pop_back();
      auto sp = tag.find(' ');
      std::string fam = tag.substr(0, sp);
      std::string kase = sp == std::string::npos ? "" : tag.substr(sp + 1);
      Word w = body == "One(F)" ? Word() : parse_word(body);
      P.add_relator(w, fam, kase);
    }
  }
  P.check();
  return P;
}

std::string to_human(const Presentation& P) {
  std::ostringstream os;
  os << "N_{" << P.genus << "," << P.boundary << "}: " << P.alphabet.size()
     << " generators, " << P.relators.size() << " relators\n";
  for (auto& f : P.flags) os << "flag: " << f << "\n";
  os << "generators:";
  for (auto& g : P.alphabet.gens()) os << " " << g.name();
  os << "\n";
  for (auto& r : P.relators) {
    os << "(" << r.family << (r.kase.empty() ? "" : " " + r.kase) << ") " << r.word.str()
       << "\n";
  }
  return os.str();
}

std::string dump(const Presentation& P, Format f) {
  switch (f) {
    case Format::structured: return to_structured(P);
    case Format::algebra_text: return to_algebra_text(P);
    case Format::human: return to_human(P);
  }
  return {};
}

Presentation load(const std::string& text, Format f) {
  switch (f) {
    case Format::structured: return from_structured(text);
    case Format::algebra_text: return from_algebra_text(text);
    case Format::human: break;
  }
  throw std::invalid_argument("human format is not parseable");
}

}  // namespace mcgpres
