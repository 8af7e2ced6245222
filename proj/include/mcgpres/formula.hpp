#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "mcgpres/word.hpp"

namespace mcgpres {

// Index variables: i j k l m t n g, looked up by letter.
struct Env {
  std::array<int, 26> v{};
  int& operator[](char c) { return v[static_cast<std::size_t>(c - 'a')]; }
  int operator[](char c) const { return v[static_cast<std::size_t>(c - 'a')]; }
};

int eval_index(const std::string& expr, const Env& env);

// Macro hook: uppercase names such as P(i) or Sbt(l,i) resolve through it.
using MacroFn = std::function<Word(const std::string&, const std::vector<int>&)>;

struct FormulaNode;

// Parsed word template. Grammar:
//   seq  := term*            juxtaposition or '*'
//   term := atom ('^' int)?
//   atom := '(' seq ')' | '{' seq '}' | '[' seq ',' seq ']'
//         | Macro '(' idx (',' idx)* ')' | symbol
// symbols are lowercase names with <expr> index slots, e.g. a<i>_<k>.
// A top-level '=' turns "L = R" into the relator L R^-1.
class Formula {
 public:
  Formula() = default;
  explicit Formula(const std::string& text);
  Word eval(const Env& env, const MacroFn& macro) const;
  const std::string& text() const { return text_; }

 private:
  std::string text_;
  std::shared_ptr<const FormulaNode> root_;
};

}  // namespace mcgpres
