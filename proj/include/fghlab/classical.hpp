#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fghlab/error.hpp"
#include "fghlab/formula.hpp"

namespace fghlab {

using Assignment = std::map<std::string, bool>;

enum class Classification { Tautology, Unsatisfiable, Contingent };

const char* to_string(Classification c) noexcept;

class NotBoxFree : public Error {
 public:
  explicit NotBoxFree(const Formula& f);
};

class PartialAssignment : public Error {
 public:
  explicit PartialAssignment(const std::string& variable);
};

class NotContingent : public Error {
 public:
  NotContingent(const Formula& f, Classification c);
  Classification classification() const noexcept { return classification_; }

 private:
  Classification classification_;
};

class NotFresh : public Error {
 public:
  explicit NotFresh(const std::string& variable);
};

/// Raised by lemma2_synthesize when some specialization of A under the
/// q-variables is not contingent; carries that specialization.
class ConditionFails : public Error {
 public:
  explicit ConditionFails(Assignment witness);
  const Assignment& witness() const noexcept { return witness_; }

 private:
  Assignment witness_;
};

bool evaluate(const Formula& f, const Assignment& a);

/// Exhaustive truth-table verdict. Supports up to 24 distinct variables.
Classification classify(const Formula& f);

/// Lexicographically least assignment (variables in name order, the first
/// variable most significant, 0 before 1) making f take the value `value`.
std::optional<Assignment> least_assignment(const Formula& f, bool value);

struct Binding {
  std::string variable;
  Formula witness;

  friend bool operator==(const Binding&, const Binding&) = default;
};

/// Witnesses B_1(r)..B_n(r), one per variable of `a` in name order, with
/// |= r <-> a(B_1(r), ..., B_n(r)). Throws NotContingent, NotFresh.
std::vector<Binding> lemma1_synthesize(const Formula& a, const std::string& r);

struct ConditionCheck {
  bool holds = true;
  std::optional<Assignment> counterexample;
};

/// True iff every specialization of `a` that replaces each q-variable by a
/// truth constant is contingent.
ConditionCheck theorem2_condition(const Formula& a, const std::set<std::string>& q_vars);

/// Witnesses B_i(r, q) for the p-variables (variables of `a` outside
/// `q_vars`) with |= r <-> a(B, q). Throws ConditionFails, NotFresh.
std::vector<Binding> lemma2_synthesize(const Formula& a, const std::set<std::string>& q_vars,
                                       const std::string& r);

/// r <-> a(B), the formula every synthesizer result makes a tautology.
Formula synthesis_equivalence(const Formula& a, const std::vector<Binding>& bindings,
                              const std::string& r);

}  // namespace fghlab
