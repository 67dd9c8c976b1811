#include "fghlab/extensions.hpp"

namespace fghlab {

namespace {

bool proves(const Formula& f, const ProverOptions& opts) { return gl_proves(f, opts).is_proved(); }

}  // namespace

bool gls_proves(const Formula& f, const ProverOptions& opts) {
  return proves(Formula::imp(big_and(rf(f)), f), opts);
}

bool glw_proves_box(const Formula& a, const ProverOptions& opts) { return proves(a, opts); }

bool glw_proves_negbox(const Formula& a, const ProverOptions& opts) {
  const unsigned n = static_cast<unsigned>(cx(a)) + 1;
  return proves(Formula::imp(diamond_n(n, Formula::top()), Formula::neg(Formula::box(a))), opts);
}

bool glnfs_proves(unsigned s, const Formula& b, const ProverOptions& opts) {
  return proves(Formula::imp(Formula::neg(f_s(s)), b), opts);
}

BoundedResult glw_proves_bounded(const Formula& b, unsigned k_max, const ProverOptions& opts) {
  for (unsigned k = 0; k <= k_max; ++k)
    if (proves(Formula::imp(diamond_n(k, Formula::top()), b), opts)) return {k, k_max};
  return {std::nullopt, k_max};
}

bool NontriflingReport::consistent() const noexcept {
  const bool c3 = !char3.gls_box && !char3.gls_negbox;
  const bool c4 = !char4.nfs_box && !char4.nfs_negbox;
  const bool c5 = !char5.gl_a && !char5.gl_rf_negbox;
  return verdict == c3 && verdict == c4 && verdict == c5;
}

NontriflingReport nontrifling(const Formula& a, const ProverOptions& opts) {
  const Formula boxed = Formula::box(a);
  const Formula negboxed = Formula::neg(boxed);
  const unsigned c = static_cast<unsigned>(cx(a));

  NontriflingReport r;
  r.char2.glw_box = glw_proves_box(a, opts);
  r.char2.glw_negbox = glw_proves_negbox(a, opts);
  r.verdict = !r.char2.glw_box && !r.char2.glw_negbox;

  r.char3.gls_box = gls_proves(boxed, opts);
  r.char3.gls_negbox = gls_proves(negboxed, opts);

  r.char4.s_used = c + 1;
  r.char4.nfs_box = glnfs_proves(r.char4.s_used, boxed, opts);
  r.char4.nfs_negbox = glnfs_proves(r.char4.s_used, negboxed, opts);

  r.char5.gl_a = proves(a, opts);
  r.char5.gl_rf_negbox = proves(Formula::imp(big_and(rf(boxed)), negboxed), opts);

  r.char1_bounded = glw_proves_bounded(Formula::imp(Formula::box(boxed), boxed), c + 2, opts);
  return r;
}

}  // namespace fghlab
