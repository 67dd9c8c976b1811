#pragma once

#include <map>
#include <string>
#include <vector>

#include "fghlab/error.hpp"
#include "fghlab/formula.hpp"
#include "fghlab/kripke.hpp"

namespace fghlab {

struct Claim {
  WorldId world;
  std::string label;  // world name used by the construction, e.g. "r*" or "<0,1>"
  Formula formula;
  bool expected;
  bool actual;
};

struct MergeCertificate {
  KripkeModel model;
  std::vector<Claim> checked_claims;
  std::map<std::string, WorldId> landmarks;
};

class PreconditionFail : public Error {
 public:
  using Error::Error;
};

class ClaimFail : public Error {
 public:
  explicit ClaimFail(Claim claim);
  const Claim& claim() const noexcept { return claim_; }

 private:
  Claim claim_;
};

class ImpossibleExtension : public Error {
 public:
  using Error::Error;
};

/// Pair coding for the two-branch merge: world 0 is the new root and
/// <i,j> (i in {0,1}) is 1 + i + 2j.
constexpr WorldId pair_id(int i, int j) noexcept { return 1 + i + 2 * j; }
constexpr int pair_branch(WorldId w) noexcept { return (w - 1) % 2; }
constexpr int pair_level(WorldId w) noexcept { return (w - 1) / 2; }
std::string pair_label(WorldId w);

/// Puts a new root r* below m and below a chain r_L ⊏ ... ⊏ r_1 ⊏ r_0, where
/// r_0 is the root of m0. Every r_i and r* copy r_0's valuation.
/// Ids: r* = 0, r_i = i for 1 <= i <= L, then m's worlds, then m0's.
MergeCertificate merge_nontrifling(const KripkeModel& m, const KripkeModel& m0, const Formula& a,
                                   unsigned chain_len);

/// Two-branch merge: 0 below <0,0> below m0 and <1,0> below m1.
MergeCertificate merge_mt(const KripkeModel& m0, const KripkeModel& m1, const Formula& a);
MergeCertificate merge_mt4(const KripkeModel& m0, const KripkeModel& m1, const Formula& a, unsigned s);

/// Prepends fresh worlds below the root so the new root forces
/// []^{s+1}#f & <>^s#t. New worlds copy the old root's valuation.
KripkeModel chain_extend(const KripkeModel& m, unsigned target_s);

}  // namespace fghlab
