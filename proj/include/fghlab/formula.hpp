#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fghlab/error.hpp"

namespace fghlab {

enum class Op : std::uint8_t { Var, Top, Bot, Not, And, Or, Imp, Iff, Box };

/// Immutable propositional/modal formula. Copies share structure; equality
/// and ordering are structural. The ordering compares size first, so a sorted
/// container of subformulas lists every formula after all of its parts.
class Formula {
 public:
  static Formula var(std::string name);
  static Formula top();
  static Formula bot();
  static Formula neg(Formula a);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula imp(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula box(Formula a);
  static Formula binary(Op op, Formula a, Formula b);

  Op op() const noexcept;
  bool is_binary() const noexcept;
  // Valid only for Op::Var.
  const std::string& name() const;
  // Not and Box carry their operand in lhs().
  const Formula& lhs() const;
  const Formula& rhs() const;

  std::size_t size() const noexcept;
  unsigned modal_depth() const noexcept;
  bool is_box_free() const noexcept;
  std::size_t hash() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

  struct Node;

 private:
  Formula() = default;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Op op, std::string name, Formula lhs, Formula rhs);

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Op op;
  std::string name;
  Formula lhs;
  Formula rhs;
  std::size_t size;
  std::size_t hash;
  unsigned depth;
  bool box_free;
};

using FormulaSet = std::set<Formula>;
using Substitution = std::map<std::string, Formula>;

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& what);
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Grammar: identifiers, #t, #f, !, &, |, ->, <->, [], <>, parentheses.
// Precedence ! [] <> > & > | > -> > <->; -> is right-associative, the
// other binaries associate to the left. <>A is read as ![]!A.
Formula parse_formula(std::string_view text);
std::string print_formula(const Formula& f);

FormulaSet subformulas(const Formula& f);
std::set<std::string> variables(const Formula& f);

/// Number of distinct boxed subformulas.
std::size_t cx(const Formula& f);
/// { []B -> B : []B a subformula of f }.
FormulaSet rf(const Formula& f);

Formula box_n(std::size_t n, Formula f);
/// !([]^n !f) for n >= 1; diamond_n(0, f) is f itself.
Formula diamond_n(std::size_t n, Formula f);
/// []^{s+1}#f -> []^s #f
Formula f_s(std::size_t s);

Formula substitute(const Formula& f, const Substitution& subst);

/// A^1 = A, A^0 = !A.
Formula polarity(bool bit, Formula a);
/// #t for 1 and #f for 0; the constant form of #t^bit.
Formula truth_constant(bool bit);

/// Left-nested conjunction; the empty conjunction is #t.
Formula big_and(const std::vector<Formula>& parts);
/// Left-nested disjunction; the empty disjunction is #f.
Formula big_or(const std::vector<Formula>& parts);
Formula big_and(const FormulaSet& parts);

}  // namespace fghlab

template <>
struct std::hash<fghlab::Formula> {
  std::size_t operator()(const fghlab::Formula& f) const noexcept { return f.hash(); }
};
