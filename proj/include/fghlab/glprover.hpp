#pragma once

#include <cstddef>
#include <variant>

#include "fghlab/error.hpp"
#include "fghlab/formula.hpp"
#include "fghlab/kripke.hpp"

namespace fghlab {

inline constexpr std::size_t kDefaultNodeBudget = 1'000'000;

struct ProverOptions {
  std::size_t node_budget = kDefaultNodeBudget;
};

/// Bookkeeping for a closed tableau.
struct ProofTrace {
  std::size_t expansions = 0;      // case-split steps spent
  std::size_t closure_size = 0;    // |Sub(A)|
  std::size_t boxed = 0;           // cx(A)
  std::size_t worlds_tried = 0;    // world-seeds that were searched
};

class Verdict {
 public:
  static Verdict proved(ProofTrace trace) { return Verdict(std::move(trace)); }
  static Verdict refuted(KripkeModel countermodel) { return Verdict(std::move(countermodel)); }

  bool is_proved() const noexcept { return std::holds_alternative<ProofTrace>(v_); }
  const ProofTrace& trace() const { return std::get<ProofTrace>(v_); }
  const KripkeModel& countermodel() const { return std::get<KripkeModel>(v_); }

 private:
  explicit Verdict(ProofTrace t) : v_(std::move(t)) {}
  explicit Verdict(KripkeModel m) : v_(std::move(m)) {}
  std::variant<ProofTrace, KripkeModel> v_;
};

class ResourceLimitExceeded : public Error {
 public:
  explicit ResourceLimitExceeded(std::size_t budget);
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

/// Decides GL-provability with a diamond-expansion tableau. A refutation
/// carries a tree countermodel (root 0, preorder ids) whose root forces
/// !f and []^{cx(f)+1}#f.
Verdict gl_proves(const Formula& f, const ProverOptions& opts = {});

/// 1 iff f holds at the root of every model with at most max_worlds worlds
/// over vars(f). A refuter only: exact when some countermodel is that small.
bool gl_proves_brute(const Formula& f, unsigned max_worlds);
bool gl_proves_brute(const Formula& f, const ModelCorpus& corpus);

}  // namespace fghlab
