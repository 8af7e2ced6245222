#include "mcgpres/formula.hpp"

#include <cctype>
#include <stdexcept>

namespace mcgpres {

namespace {

struct IndexParser {
  const std::string& s;
  const Env& env;
  std::size_t p = 0;

  void ws() {
    while (p < s.size() && s[p] == ' ') ++p;
  }
  int factor() {
    ws();
    if (p >= s.size()) throw std::invalid_argument("bad index expression: " + s);
    if (s[p] == '(') {
      ++p;
      int v = sum();
      ws();
      ++p;
      return v;
    }
    if (s[p] == '-') {
      ++p;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(s[p]))) {
      int v = 0;
      while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p])))
        v = v * 10 + (s[p++] - '0');
      return v;
    }
    if (std::islower(static_cast<unsigned char>(s[p]))) return env[s[p++]];
    throw std::invalid_argument("bad index expression: " + s);
  }
  int product() {
    int v = factor();
    for (;;) {
      ws();
      if (p < s.size() && s[p] == '/') {
        ++p;
        v /= factor();
      } else if (p < s.size() && s[p] == '*') {
        ++p;
        v *= factor();
      } else {
        return v;
      }
    }
  }
  int sum() {
    int v = product();
    for (;;) {
      ws();
      if (p < s.size() && (s[p] == '+' || s[p] == '-')) {
        char op = s[p++];
        int r = product();
        v = op == '+' ? v + r : v - r;
      } else {
        return v;
      }
    }
  }
};

}  // namespace

int eval_index(const std::string& expr, const Env& env) {
  IndexParser ip{expr, env};
  int v = ip.sum();
  ip.ws();
  if (ip.p != expr.size()) throw std::invalid_argument("trailing index text: " + expr);
  return v;
}

struct FormulaNode {
  enum Kind { Seq, Pow, Comm, Macro, Sym } kind = Seq;
  std::vector<std::shared_ptr<const FormulaNode>> kids;
  long exp = 1;
  std::string name;
  std::vector<std::string> args;
};

namespace {

using NodeP = std::shared_ptr<const FormulaNode>;

struct Parser {
  const std::string& s;
  std::size_t p = 0;

  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("formula error (" + why + ") at " + std::to_string(p) +
                                " in: " + s);
  }
  void ws() {
    while (p < s.size() && (s[p] == ' ' || s[p] == '*' || s[p] == '\n')) ++p;
  }
  bool at_end_of_seq() {
    ws();
    return p >= s.size() || s[p] == ')' || s[p] == '}' || s[p] == ',' || s[p] == ']' ||
           s[p] == '=';
  }
  NodeP seq() {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaNode::Seq;
    while (!at_end_of_seq()) n->kids.push_back(term());
    return n;
  }
  NodeP term() {
    NodeP a = atom();
    ws();
    if (p < s.size() && s[p] == '^') {
      ++p;
      bool neg = false;
      if (p < s.size() && s[p] == '-') {
        neg = true;
        ++p;
      }
      if (p >= s.size() || !std::isdigit(static_cast<unsigned char>(s[p]))) fail("exponent");
      long e = 0;
      while (p < s.size() && std::isdigit(static_cast<unsigned char>(s[p])))
        e = e * 10 + (s[p++] - '0');
      auto n = std::make_shared<FormulaNode>();
      n->kind = FormulaNode::Pow;
      n->exp = neg ? -e : e;
      n->kids.push_back(a);
      return n;
    }
    return a;
  }
  void expect(char c) {
    ws();
    if (p >= s.size() || s[p] != c) fail(std::string("expected ") + c);
    ++p;
  }
  std::string balanced_until(char stop1, char stop2) {
    std::string out;
    int depth = 0;
    while (p < s.size()) {
      char c = s[p];
      if (depth == 0 && (c == stop1 || c == stop2)) break;
      if (c == '(' || c == '<') ++depth;
      if (c == ')' || c == '>') --depth;
      out.push_back(c);
      ++p;
    }
    return out;
  }
  NodeP atom() {
    ws();
    if (p >= s.size()) fail("unexpected end");
    char c = s[p];
    if (c == '(' || c == '{') {
      ++p;
      NodeP inner = seq();
      expect(c == '(' ? ')' : '}');
      return inner;
    }
    if (c == '[') {
      ++p;
      auto n = std::make_shared<FormulaNode>();
      n->kind = FormulaNode::Comm;
      n->kids.push_back(seq());
      expect(',');
      n->kids.push_back(seq());
      expect(']');
      return n;
    }
    if (std::isupper(static_cast<unsigned char>(c))) {
      auto n = std::make_shared<FormulaNode>();
      n->kind = FormulaNode::Macro;
      while (p < s.size() && std::isalpha(static_cast<unsigned char>(s[p]))) n->name += s[p++];
      expect('(');
      for (;;) {
        n->args.push_back(balanced_until(',', ')'));
        if (p < s.size() && s[p] == ',') {
          ++p;
          continue;
        }
        break;
      }
      expect(')');
      return n;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      auto n = std::make_shared<FormulaNode>();
      n->kind = FormulaNode::Sym;
      while (p < s.size()) {
        char d = s[p];
        if (d == '<') {
          std::size_t q = s.find('>', p);
          if (q == std::string::npos) fail("unclosed index slot");
          n->name += s.substr(p, q - p + 1);
          p = q + 1;
        } else if (std::isalnum(static_cast<unsigned char>(d)) || d == '_') {
          n->name += d;
          ++p;
        } else {
          break;
        }
      }
      return n;
    }
    fail(std::string("unexpected '") + c + "'");
  }
};

Word eval_node(const FormulaNode& n, const Env& env, const MacroFn& macro) {
  switch (n.kind) {
    case FormulaNode::Seq: {
      Word w;
      for (auto& k : n.kids) w *= eval_node(*k, env, macro);
      return w;
    }
    case FormulaNode::Pow:
      return eval_node(*n.kids[0], env, macro).pow(n.exp);
    case FormulaNode::Comm:
      return commutator(eval_node(*n.kids[0], env, macro), eval_node(*n.kids[1], env, macro));
    case FormulaNode::Macro: {
      std::vector<int> a;
      for (auto& e : n.args) a.push_back(eval_index(e, env));
      return macro(n.name, a);
    }
    case FormulaNode::Sym: {
      std::string name;
      for (std::size_t p = 0; p < n.name.size(); ++p) {
        if (n.name[p] == '<') {
          std::size_t q = n.name.find('>', p);
          name += std::to_string(eval_index(n.name.substr(p + 1, q - p - 1), env));
          p = q;
        } else {
          name += n.name[p];
        }
      }
      return Word(parse_gen(name));
    }
  }
  return {};
}

}  // namespace

Formula::Formula(const std::string& text) : text_(text) {
  Parser ps{text};
  NodeP lhs = ps.seq();
  ps.ws();
  if (ps.p < text.size() && text[ps.p] == '=') {
    ++ps.p;
    NodeP rhs = ps.seq();
    auto inv = std::make_shared<FormulaNode>();
    inv->kind = FormulaNode::Pow;
    inv->exp = -1;
    inv->kids.push_back(rhs);
    auto top = std::make_shared<FormulaNode>();
    top->kind = FormulaNode::Seq;
    top->kids = {lhs, inv};
    lhs = top;
  }
  ps.ws();
  if (ps.p != text.size()) ps.fail("trailing text");
  root_ = lhs;
}

Word Formula::eval(const Env& env, const MacroFn& macro) const {
  if (!root_) return {};
  return eval_node(*root_, env, macro);
}

}  // namespace mcgpres
