#include "mcgpres/homology.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "mcgpres/catalog.hpp"
#include "mcgpres/formula.hpp"

namespace mcgpres {

extern const char* const kCurveLedgerJson;

HomologySpace::HomologySpace(int g_, int n_) : g(g_), n(std::max(n_, 1)) {
  if (g < 1 || dim() > 64) throw InvalidSurface("homology model needs 1 <= g and g+n-1 <= 64");
}

int HomologySpace::pairing(std::uint64_t u, std::uint64_t v) const {
  return std::popcount(u & v & x_mask()) & 1;
}

std::string HomologySpace::basis_name(int q) const {
  return q < g ? "X" + std::to_string(q + 1) : "H" + std::to_string(q - g + 1);
}

std::string HomologySpace::str(std::uint64_t v) const {
  std::string s;
  for (int q = 0; q < dim(); ++q)
    if (v >> q & 1) s += (s.empty() ? "" : "+") + basis_name(q);
  return s.empty() ? "0" : s;
}

Z2Matrix Z2Matrix::identity(int d) {
  Z2Matrix M;
  M.dim = d;
  for (int q = 0; q < d; ++q) M.col.push_back(std::uint64_t{1} << q);
  return M;
}

std::uint64_t Z2Matrix::apply(std::uint64_t v) const {
  std::uint64_t r = 0;
  for (int q = 0; q < dim; ++q)
    if (v >> q & 1) r ^= col[q];
  return r;
}

Z2Matrix Z2Matrix::operator*(const Z2Matrix& o) const {
  Z2Matrix M;
  M.dim = dim;
  for (auto c : o.col) M.col.push_back(apply(c));
  return M;
}

bool Z2Matrix::is_identity() const { return *this == identity(dim); }

Z2Matrix Z2Matrix::transpose() const {
  Z2Matrix T;
  T.dim = dim;
  T.col.assign(dim, 0);
  for (int c = 0; c < dim; ++c)
    for (int r = 0; r < dim; ++r)
      if (col[c] >> r & 1) T.col[r] |= std::uint64_t{1} << c;
  return T;
}

bool Z2Matrix::invertible() const {
  std::vector<std::uint64_t> v = col;
  int rank = 0;
  for (int bit = 0; bit < dim; ++bit) {
    auto it = std::find_if(v.begin() + rank, v.end(), [&](auto c) { return c >> bit & 1; });
    if (it == v.end()) continue;
    std::iter_swap(v.begin() + rank, it);
    for (int q = 0; q < dim; ++q)
      if (q != rank && (v[q] >> bit & 1)) v[q] ^= v[rank];
    ++rank;
  }
  return rank == dim;
}

Z2Matrix Z2Matrix::inverse() const {
  // Gauss-Jordan on the rows of [A | I]
  Z2Matrix T = transpose();
  std::vector<std::uint64_t> a = T.col, b = identity(dim).col;
  for (int bit = 0; bit < dim; ++bit) {
    int p = -1;
    for (int q = bit; q < dim; ++q)
      if (a[q] >> bit & 1) {
        p = q;
        break;
      }
    if (p < 0) throw std::domain_error("singular matrix");
    std::swap(a[p], a[bit]);
    std::swap(b[p], b[bit]);
    for (int q = 0; q < dim; ++q)
      if (q != bit && (a[q] >> bit & 1)) {
        a[q] ^= a[bit];
        b[q] ^= b[bit];
      }
  }
  Z2Matrix R;
  R.dim = dim;
  R.col = b;
  return R.transpose();
}

namespace {

// "alpha{i};{j}" -> regex with one capture per variable
std::pair<std::regex, std::string> compile_pattern(const std::string& pat) {
  std::string re, vars;
  for (std::size_t p = 0; p < pat.size(); ++p) {
    if (pat[p] == '{') {
      vars += pat[p + 1];
      re += "(\\d+)";
      p += 2;
    } else {
      if (std::string("\\^$.|?*+()[]{}").find(pat[p]) != std::string::npos) re += '\\';
      re += pat[p];
    }
  }
  return {std::regex(re), vars};
}

}  // namespace

CurveLedger::CurveLedger(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  for (auto& e : j.at("curves")) {
    Entry en{e.at("name").get<std::string>(), e.at("class").get<std::vector<std::string>>(),
             e.value("one_sided", false), e.value("note", ""), {}, {}};
    std::tie(en.re, en.vars) = compile_pattern(en.pattern);
    entries_.push_back(std::move(en));
  }
  if (j.contains("slides"))
    for (auto& s : j.at("slides"))
      slides_.push_back({s.at("mu").get<std::string>(), s.at("alpha").get<std::string>(),
                         s.at("delta1").get<std::string>(), s.at("delta2").get<std::string>()});
}

const CurveLedger& CurveLedger::builtin() {
  static const CurveLedger L(kCurveLedgerJson);
  return L;
}


CurveRecord CurveLedger::curve(const std::string& raw, const HomologySpace& H) const {
  std::string name = !raw.empty() && raw[0] == '-' ? raw.substr(1) : raw;
  for (auto& e : entries_) {
    const std::string& vars = e.vars;
    std::smatch m;
    if (!std::regex_match(name, m, e.re)) continue;
    Env env;
    env['g'] = H.g;
    env['n'] = H.n;
    for (std::size_t q = 0; q < vars.size(); ++q) {
      int v = std::stoi(m[q + 1].str());
      if (v < 1) throw UnknownCurve("curve index out of range: " + raw);
      env[vars[q]] = v;
    }
    CurveRecord rec{name, 0, e.one_sided, e.note};
    for (auto& t : e.terms) {
      std::string body = t.substr(1);
      if (!body.empty() && body.front() == '{') body = body.substr(1, body.size() - 2);
      int idx = eval_index(body, env);
      int bit;
      if (t[0] == 'X') {
        if (idx < 1 || idx > H.g) throw UnknownCurve("curve leaves the surface: " + raw);
        bit = idx - 1;
      } else {
        if (idx < 1 || idx > H.n - 1) throw UnknownCurve("curve leaves the surface: " + raw);
        bit = H.g + idx - 1;
      }
      rec.cls ^= std::uint64_t{1} << bit;
    }
    if ((H.pairing(rec.cls, rec.cls) == 1) != rec.one_sided)
      throw std::logic_error("ledger sidedness disagrees with the form for " + raw);
    return rec;
  }
  throw UnknownCurve("unknown curve: " + raw);
}

std::pair<std::string, std::string> CurveLedger::slide_boundaries(const std::string& mu,
                                                                  const std::string& alpha) const {
  std::string a = !alpha.empty() && alpha[0] == '-' ? alpha.substr(1) : alpha;
  for (auto& s : slides_)
    if (s.mu == mu && s.alpha == a) return {s.delta1, s.delta2};
  throw UnknownCurve("no slide neighbourhood recorded for (" + mu + ", " + alpha + ")");
}

CurveRecord curve_class(const std::string& name, int g, int n) {
  return CurveLedger::builtin().curve(name, HomologySpace(g, n));
}

Z2Matrix twist_matrix(const CurveRecord& c, const HomologySpace& H) {
  if (c.one_sided) throw OneSidedTwist("twist along one-sided curve " + c.name);
  Z2Matrix M = Z2Matrix::identity(H.dim());
  for (int q = 0; q < H.dim(); ++q)
    if (H.pairing(std::uint64_t{1} << q, c.cls)) M.col[q] ^= c.cls;
  return M;
}

Z2Matrix y_matrix(const CurveRecord& mu, const CurveRecord& alpha, const CurveRecord& d1,
                  const CurveRecord& d2, const HomologySpace& H) {
  if (!mu.one_sided) throw std::invalid_argument("crosscap slide needs a one-sided mu");
  if (H.pairing(mu.cls, alpha.cls) != 1)
    throw std::invalid_argument("mu and alpha must meet once");
  // over Z/2 the inverse twist is the twist itself
  return twist_matrix(d1, H) * twist_matrix(d2, H);
}

bool preserves_form(const Z2Matrix& M, const HomologySpace& H) {
  for (int p = 0; p < M.dim; ++p)
    for (int q = 0; q < M.dim; ++q)
      if (H.pairing(M.col[p], M.col[q]) !=
          H.pairing(std::uint64_t{1} << p, std::uint64_t{1} << q))
        return false;
  return true;
}

std::string curve_of(const Gen& s) {
  auto v = s.indices();
  auto I = [&](std::size_t q) { return std::to_string(v[q]); };
  switch (s.fam) {
    case Family::a: return "alpha" + I(0);
    case Family::b: return "beta";
    case Family::d: return "delta" + I(0);
    case Family::a_sub: return "alpha" + I(0) + ";" + I(1);
    case Family::r_sub: return "rho" + I(0) + ";" + I(1);
    case Family::s: return "sigma" + I(0) + "," + I(1);
    case Family::s_bar: return "sigmabar" + I(0) + "," + I(1);
    case Family::s_bar_tri: return "sigmabar" + I(0) + "," + I(1) + ";" + I(2);
    case Family::twist: return s.label;
    default: throw Unassigned("no curve behind " + s.name());
  }
}

Z2Matrix assign(const Gen& s, const HomologySpace& H) {
  const auto& L = CurveLedger::builtin();
  auto slide = [&](const std::string& mu, const std::string& alpha) {
    auto [d1, d2] = L.slide_boundaries(mu, alpha);
    return y_matrix(L.curve(mu, H), L.curve(alpha, H), L.curve(d1, H), L.curve(d2, H), H);
  };
  if (s.fam == Family::y) return slide("mu1", "alpha1");
  if (s.fam == Family::cross_y) return slide(s.label, s.label2);
  return twist_matrix(L.curve(curve_of(s), H), H);
}

const Z2Matrix& Representation::matrix(const Gen& s) {
  auto it = cache_.find(s);
  if (it == cache_.end()) it = cache_.emplace(s, assign(s, H_)).first;
  return it->second;
}

Z2Matrix Representation::image(const Word& w) {
  Z2Matrix M = Z2Matrix::identity(H_.dim());
  for (auto& l : w.letters()) {
    const Z2Matrix& A = matrix(l.g);
    // every assigned matrix is a product of transvections; invert once
    Z2Matrix B = l.e > 0 ? A : A.inverse();
    for (long t = 0; t < std::abs(l.e); ++t) M = M * B;
  }
  return M;
}

RelatorVerdict Representation::verify(const Word& w) {
  Z2Matrix M = image(w);
  for (int q = 0; q < M.dim; ++q)
    if (M.col[q] != std::uint64_t{1} << q)
      return {false, H_.basis_name(q) + " -> " + H_.str(M.col[q])};
  return {};
}

RelatorVerdict verify_relator(const Word& w, int g, int n) {
  Representation R(HomologySpace(g, n));
  return R.verify(w);
}

bool VerifyReport::ok() const {
  if (form_failed) return false;
  for (auto& f : families)
    if (f.failed) return false;
  return true;
}

std::string VerifyReport::str() const {
  std::ostringstream os;
  os << "verify N_{" << g << "," << n << "}\n";
  for (auto& f : families) {
    os << "  " << f.family << ": emitted " << f.emitted << ", verified " << f.verified
       << ", failed " << f.failed;
    if (!f.first_witness.empty()) os << ", first witness " << f.first_witness;
    os << "\n";
  }
  os << "  generator matrices: " << form_checked << " checked, " << form_failed
     << " fail form preservation or invertibility\n";
  for (auto& q : quarantine) os << "  quarantined: " << q << "\n";
  os << (ok() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

VerifyReport verify_presentation(const Presentation& P, int jobs) {
  HomologySpace H(P.genus, P.boundary);
  VerifyReport rep;
  rep.g = P.genus;
  rep.n = P.boundary;

  // assign every generator up front so worker threads only read
  std::map<Gen, Z2Matrix> mats;
  for (auto& s : P.alphabet.gens()) {
    Z2Matrix M = assign(s, H);
    ++rep.form_checked;
    if (!preserves_form(M, H) || !M.invertible()) ++rep.form_failed;
    mats.emplace(s, std::move(M));
  }

  std::size_t N = P.relators.size();
  std::vector<RelatorVerdict> verdicts(N);
  auto work = [&](std::size_t lo, std::size_t hi) {
    Representation R(H);
    for (auto& [s, M] : mats) const_cast<Z2Matrix&>(R.matrix(s)) = M;
    for (std::size_t q = lo; q < hi; ++q) verdicts[q] = R.verify(P.relators[q].word);
  };
  jobs = std::max(1, jobs);
  std::vector<std::future<void>> fut;
  std::size_t chunk = (N + jobs - 1) / jobs;
  for (std::size_t lo = 0; lo < N; lo += chunk)
    fut.push_back(std::async(std::launch::async, work, lo, std::min(N, lo + chunk)));
  for (auto& f : fut) f.get();

  std::map<std::string, std::size_t> pos;
  for (std::size_t q = 0; q < N; ++q) {
    auto& r = P.relators[q];
    auto [it, fresh] = pos.emplace(r.family, rep.families.size());
    if (fresh) rep.families.push_back({r.family, 0, 0, 0, {}});
    auto& f = rep.families[it->second];
    ++f.emitted;
    if (verdicts[q].ok) {
      ++f.verified;
    } else {
      if (!f.failed) f.first_witness = r.kase + ": " + verdicts[q].witness;
      ++f.failed;
    }
  }
  for (auto& fl : P.flags)
    if (fl.rfind("quarantine ", 0) == 0) rep.quarantine.push_back(fl.substr(11));
  return rep;
}

VerifyReport verify_presentation(int g, int n, int jobs) {
  return verify_presentation(full_presentation(g, n), jobs);
}

}  // namespace mcgpres
