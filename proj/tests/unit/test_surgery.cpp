#include <doctest.h>

#include "fghlab/extensions.hpp"
#include "fghlab/surgery.hpp"
#include "support/oracles.hpp"

using namespace fghlab;

namespace {
Formula P(const char* s) { return parse_formula(s); }

KripkeModel dead_end(bool p) { return {{0}, {}, 0, {{0, {{"p", p}}}}}; }

KripkeModel two_chain(bool p_top) { return {{0, 1}, {{0, 1}}, 0, {{0, {{"p", false}}}, {1, {{"p", p_top}}}}}; }

void all_claims_hold(const MergeCertificate& c) {
  REQUIRE(validate_frame(c.model).empty());
  REQUIRE(oracle::is_gl_model(c.model));
  REQUIRE_FALSE(c.checked_claims.empty());
  for (const auto& cl : c.checked_claims) {
    REQUIRE(cl.expected == cl.actual);
    REQUIRE(oracle::forces(c.model, cl.world, cl.formula) == cl.actual);
  }
}
}  // namespace

TEST_CASE("pair coding") {
  CHECK(pair_id(0, 0) == 1);
  CHECK(pair_id(1, 0) == 2);
  CHECK(pair_id(0, 1) == 3);
  CHECK(pair_id(1, 1) == 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 5; ++j) {
      CHECK(pair_branch(pair_id(i, j)) == i);
      CHECK(pair_level(pair_id(i, j)) == j);
    }
  CHECK(pair_label(0) == "0");
  CHECK(pair_label(pair_id(1, 2)) == "<1,2>");
}

TEST_CASE("merge_nontrifling on the witness pair") {
  const Formula a = P("[]p -> p");
  for (unsigned len = 0; len <= 5; ++len) {
    const auto c = merge_nontrifling(two_chain(true), dead_end(true), a, len);
    all_claims_hold(c);
    CHECK(c.model.worlds.size() == 1 + len + 2 + 1);
    const WorldId star = c.landmarks.at("r*");
    CHECK(star == 0);
    CHECK_FALSE(oracle::forces(c.model, star, P("[][]([]p->p) -> []([]p->p)")));
    CHECK(oracle::forces(c.model, star, diamond_n(len, Formula::top())));
    const WorldId r0 = c.landmarks.at("r_0");
    for (unsigned i = 1; i <= len; ++i) {
      const WorldId ri = c.landmarks.at("r_" + std::to_string(i));
      for (const auto& b : subformulas(Formula::box(a)))
        REQUIRE(oracle::forces(c.model, ri, b) == oracle::forces(c.model, r0, b));
    }
  }
}

TEST_CASE("merge_nontrifling preconditions") {
  CHECK_THROWS_AS(merge_nontrifling(two_chain(true), dead_end(true), Formula::top(), 2), PreconditionFail);
  CHECK_THROWS_AS(merge_nontrifling(two_chain(false), dead_end(true), P("[]p -> p"), 2), PreconditionFail);
  CHECK_THROWS_AS(merge_nontrifling(two_chain(true), dead_end(false), P("[]p -> p"), 2), PreconditionFail);
}

TEST_CASE("merge_mt on the witness pair") {
  const Formula a = P("[]p -> p");
  const auto c = merge_mt(two_chain(true), dead_end(true), a);
  all_claims_hold(c);
  CHECK(c.model.worlds.size() == 6);
  CHECK(c.model.worlds == std::vector<WorldId>{0, 1, 2, 3, 4, 5});
  for (const auto& v : variables(a)) CHECK(c.model.holds(0, v));
  // <i,0> copies <i,1>.
  CHECK(c.model.holds(pair_id(0, 0), "p") == c.model.holds(pair_id(0, 1), "p"));
  CHECK(c.model.holds(pair_id(1, 0), "p") == c.model.holds(pair_id(1, 1), "p"));
  CHECK_FALSE(c.model.rel.contains({pair_id(0, 0), pair_id(1, 1)}));
  CHECK(c.model.rel.contains({0, pair_id(1, 1)}));
  CHECK_THROWS_AS(merge_mt(dead_end(true), dead_end(true), a), PreconditionFail);
}

TEST_CASE("merge_mt4") {
  const auto c = merge_mt4(two_chain(false), two_chain(true), P("p"), 1);
  all_claims_hold(c);
  CHECK_THROWS_AS(merge_mt4(dead_end(false), dead_end(true), P("p"), 0), PreconditionFail);
  CHECK_THROWS_AS(merge_mt4(two_chain(false), two_chain(true), P("p"), 2), PreconditionFail);
}

TEST_CASE("prover countermodels feed the merges") {
  for (const char* s : {"p", "[]p -> p", "[]p | q", "<>p -> []q", "[](p -> q) | []p"}) {
    const Formula a = P(s);
    const auto r = nontrifling(a);
    REQUIRE(r.verdict);
    const Verdict va = gl_proves(a);
    const Verdict vb = gl_proves(Formula::imp(big_and(rf(Formula::box(a))), Formula::neg(Formula::box(a))));
    REQUIRE_FALSE(va.is_proved());
    REQUIRE_FALSE(vb.is_proved());
    all_claims_hold(merge_mt(va.countermodel(), vb.countermodel(), a));

    // M needs []a & !a at its root: put a fresh root below a refutation of a.
    const Verdict vbox = gl_proves(Formula::imp(Formula::box(a), a));
    REQUIRE_FALSE(vbox.is_proved());
    for (unsigned len = 0; len <= 5; ++len)
      all_claims_hold(merge_nontrifling(vbox.countermodel(), vb.countermodel(), a, len));
  }
}

TEST_CASE("chain_extend") {
  const KripkeModel e = chain_extend(dead_end(true), 2);
  CHECK(e.worlds.size() == 3);
  CHECK(oracle::forces(e, e.root, P("[][][]#f & <><>#t")));
  CHECK(oracle::is_gl_model(e));
  for (WorldId w : e.worlds) CHECK(e.holds(w, "p"));

  CHECK(chain_extend(dead_end(false), 0) == dead_end(false));
  CHECK_THROWS_AS(chain_extend(two_chain(true), 0), ImpossibleExtension);

  const KripkeModel t = chain_extend(two_chain(true), 4);
  CHECK(t.worlds.size() == 5);
  CHECK(oracle::forces(t, t.root, P("[][][][][]#f & <><><><>#t")));
}

TEST_CASE("failing claims surface as ClaimFail") {
  const Claim c{3, "x", P("p"), true, false};
  const ClaimFail e(c);
  CHECK(e.claim().world == 3);
  CHECK(std::string(e.what()).find("x") != std::string::npos);
}
