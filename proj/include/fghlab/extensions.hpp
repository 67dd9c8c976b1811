#pragma once

#include <cstddef>
#include <optional>

#include "fghlab/formula.hpp"
#include "fghlab/glprover.hpp"

namespace fghlab {

/// GL + {[]B -> B : all B}, via GL |- /\rf(f) -> f.
bool gls_proves(const Formula& f, const ProverOptions& opts = {});

/// GL_omega |- []a.
bool glw_proves_box(const Formula& a, const ProverOptions& opts = {});
/// GL_omega |- ![]a, via GL |- <>^{cx(a)+1}#t -> ![]a.
bool glw_proves_negbox(const Formula& a, const ProverOptions& opts = {});

/// GL + {!F_s} |- b, via GL |- !F_s -> b.
bool glnfs_proves(unsigned s, const Formula& b, const ProverOptions& opts = {});

/// Least k <= k_max with GL |- <>^k#t -> b. Empty `k` means unknown: the
/// search is one-sided and never disproves b.
struct BoundedResult {
  std::optional<unsigned> k;
  unsigned k_max = 0;

  bool proved() const noexcept { return k.has_value(); }
};
BoundedResult glw_proves_bounded(const Formula& b, unsigned k_max, const ProverOptions& opts = {});

struct NontriflingReport {
  bool verdict = false;
  struct {
    bool glw_box = false;
    bool glw_negbox = false;
  } char2;
  struct {
    bool gls_box = false;
    bool gls_negbox = false;
  } char3;
  struct {
    unsigned s_used = 0;
    bool nfs_box = false;
    bool nfs_negbox = false;
  } char4;
  struct {
    bool gl_a = false;
    bool gl_rf_negbox = false;
  } char5;
  BoundedResult char1_bounded;

  /// True when clauses 2 to 5 all give the same verdict.
  bool consistent() const noexcept;
};

NontriflingReport nontrifling(const Formula& a, const ProverOptions& opts = {});

}  // namespace fghlab
