#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fghlab/error.hpp"
#include "fghlab/formula.hpp"
#include "fghlab/kripke.hpp"
#include "fghlab/report.hpp"

namespace fghlab {

/// Least witness stage of a Sigma_1 event; empty means no witness.
using Position = std::optional<unsigned>;

/// phi's witness exists and no witness of psi comes strictly earlier.
bool wc_preceq(Position mu_phi, Position mu_psi) noexcept;
/// phi's witness exists and no witness of psi comes at or before it.
bool wc_prec(Position mu_phi, Position mu_psi) noexcept;

std::string to_string(Position p);

class InvalidScenario : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Solovay function over a two-branch merged model.

struct Trigger {
  enum class Kind : std::uint8_t { None, Case1, Case2 };
  Kind kind = Kind::None;
  unsigned stage = 0;

  friend bool operator==(const Trigger&, const Trigger&) = default;
};

const char* to_string(Trigger::Kind k) noexcept;

struct SolovayRun {
  std::vector<WorldId> trajectory;  // h(0..horizon)
  WorldId limit = 0;
  Trigger trigger;
  bool unstable = false;  // a climb happened within the last |W| stages
};

/// Runs h for `horizon` stages. The model must have the merge_mt shape:
/// root 0 below every world, <0,0> = 1 and <1,0> = 2 present, no relation
/// across branches. neg_lambda_proofs maps a stage x to the world a such
/// that x proves !lambda(a); stages at or past the horizon are ignored.
SolovayRun solovay_run(const KripkeModel& model, Position sigma_pos, Position fa_proof_pos,
                       const std::map<unsigned, WorldId>& neg_lambda_proofs, unsigned horizon);

/// Checks the limit world against the branch/trigger correspondence, the
/// witness-comparison reading of the trigger, and (for limits at level >= 1)
/// the forcing of every subformula of []a against an independent evaluation
/// that takes each world in turn as the hypothetical limit.
CheckReport solovay_check(const SolovayRun& run, const KripkeModel& model, const Formula& a, Position sigma_pos,
                          Position fa_proof_pos, unsigned horizon);

// ---------------------------------------------------------------------------
// Rosser reordering of a proof stream.

struct Tag {
  enum class Kind : std::uint8_t { Phi, NotPhi, Fa, Other };
  Kind kind = Kind::Other;
  unsigned other = 0;  // index for Other

  static constexpr Tag phi() noexcept { return {Kind::Phi, 0}; }
  static constexpr Tag not_phi() noexcept { return {Kind::NotPhi, 0}; }
  static constexpr Tag fa() noexcept { return {Kind::Fa, 0}; }
  static constexpr Tag other_k(unsigned k) noexcept { return {Kind::Other, k}; }

  bool is_phi_pair() const noexcept { return kind == Kind::Phi || kind == Kind::NotPhi; }

  friend bool operator==(const Tag&, const Tag&) = default;
  friend auto operator<=>(const Tag&, const Tag&) = default;
};

std::string to_string(Tag t);
/// Parses PHI, NOT_PHI, FA or OTHER(k).
Tag parse_tag(const std::string& text);

struct ProofStream {
  unsigned horizon = 0;
  std::vector<std::optional<Tag>> events;  // one slot per stage 0..horizon-1
  bool infinite_proofs = false;

  ProofStream() = default;
  explicit ProofStream(unsigned h) : horizon(h), events(h) {}

  /// Every proved tag is proved at least twice before the horizon.
  bool satisfies_repetition() const noexcept;
  /// Throws InvalidScenario on a size mismatch, or when infinite_proofs is
  /// set and the repetition discipline fails.
  void validate() const;
};

class BothSigmaTrue : public Error {
 public:
  BothSigmaTrue();
};

struct RosserRun {
  std::vector<Tag> outputs;
  bool pr_rosser_phi = false;
  bool pr_rosser_not_phi = false;
  std::optional<unsigned> gate_stage;  // stage at which PHI or NOT_PHI was first output
  std::optional<Tag> gated_tag;        // the proof consumed at that stage
};

RosserRun rosser_run(const ProofStream& stream, Position tau0_pos, Position tau1_pos);
/// Same as rosser_run but reuses `out`'s storage.
void rosser_run_into(const ProofStream& stream, Position tau0_pos, Position tau1_pos, RosserRun& out);

struct MtrVerdict {
  CheckStatus equivalence_phi = CheckStatus::Pass;
  CheckStatus equivalence_not_phi = CheckStatus::Pass;
  CheckStatus outputs_sound = CheckStatus::Pass;
  CheckStatus outputs_complete = CheckStatus::Pass;
  CheckStatus exclusion = CheckStatus::Pass;

  bool any(CheckStatus s) const noexcept;
};

/// Allocation-free core of mtr_check.
MtrVerdict mtr_evaluate(const RosserRun& run, const ProofStream& stream, Position tau0_pos, Position tau1_pos);
CheckReport mtr_check(const RosserRun& run, const ProofStream& stream, Position tau0_pos, Position tau1_pos);

}  // namespace fghlab
