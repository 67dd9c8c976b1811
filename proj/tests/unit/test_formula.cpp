#include <doctest.h>

#include "fghlab/corpus.hpp"
#include "fghlab/formula.hpp"

using namespace fghlab;

namespace {
Formula P(const char* s) { return parse_formula(s); }
const Formula p = Formula::var("p");
const Formula q = Formula::var("q");
}  // namespace

TEST_CASE("parse builds the expected trees") {
  CHECK(P("[]([]p -> p) -> []p") ==
        Formula::imp(Formula::box(Formula::imp(Formula::box(p), p)), Formula::box(p)));
  CHECK(P("p") == p);
  CHECK(P("  p&q ") == Formula::conj(p, q));
  CHECK(P("#t") == Formula::top());
  CHECK(P("#f") == Formula::bot());
}

TEST_CASE("precedence and associativity") {
  CHECK(P("!p & q | p -> q <-> p") ==
        Formula::iff(Formula::imp(Formula::disj(Formula::conj(Formula::neg(p), q), p), q), p));
  CHECK(P("p -> q -> p") == Formula::imp(p, Formula::imp(q, p)));
  CHECK(P("p & q & p") == Formula::conj(Formula::conj(p, q), p));
  CHECK(P("p <-> q <-> p") == Formula::iff(Formula::iff(p, q), p));
  CHECK(P("[]p & q") == Formula::conj(Formula::box(p), q));
}

TEST_CASE("diamond is desugared at parse time") {
  CHECK(P("<>p") == Formula::neg(Formula::box(Formula::neg(p))));
  CHECK(cx(P("<>p")) == 1);
  CHECK(P("<><>#t") == diamond_n(1, diamond_n(1, Formula::top())));
  CHECK(P("![][]!#t") == diamond_n(2, Formula::top()));
}

TEST_CASE("syntax errors carry offsets") {
  auto offset_of = [](const char* text) {
    try {
      parse_formula(text);
    } catch (const ParseError& e) {
      return static_cast<long>(e.offset());
    }
    return -1L;
  };
  CHECK(offset_of("p ->") == 4);
  CHECK(offset_of("") == 0);
  CHECK(offset_of("p q") == 2);
  CHECK(offset_of("(p") == 2);
  CHECK(offset_of("p & $") == 4);
  CHECK(offset_of("p )") == 2);
  CHECK(offset_of("<- p") == 0);
  CHECK_THROWS_AS(Formula::var(""), Error);
}

TEST_CASE("printer") {
  CHECK(print_formula(Formula::box(p)) == "[]p");
  CHECK(print_formula(Formula::imp(Formula::box(Formula::bot()), Formula::bot())) == "[]#f -> #f");
  CHECK(print_formula(Formula::neg(Formula::neg(p))) == "!!p");
  CHECK(print_formula(Formula::imp(Formula::imp(p, q), p)) == "(p -> q) -> p");
  CHECK(print_formula(Formula::imp(p, Formula::imp(q, p))) == "p -> q -> p");
  CHECK(print_formula(Formula::conj(p, Formula::conj(q, p))) == "p & (q & p)");
  CHECK(print_formula(Formula::neg(Formula::conj(p, q))) == "!(p & q)");
}

TEST_CASE("print/parse round trip on generated formulas") {
  Grammar g;
  g.binary.push_back(Op::Iff);
  for (const auto& f : enumerate_formulas(g, 5)) REQUIRE(parse_formula(print_formula(f)) == f);
  FormulaGenerator gen(g, 11);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = gen.next(14);
    REQUIRE(parse_formula(print_formula(f)) == f);
  }
}

TEST_CASE("subformulas") {
  CHECK(subformulas(Formula::box(p)) == FormulaSet{Formula::box(p), p});
  const Formula lob = P("[]([]p->p)->[]p");
  CHECK(subformulas(lob) == FormulaSet{lob, P("[]([]p->p)"), P("[]p->p"), P("[]p"), p});
  CHECK(subformulas(Formula::top()) == FormulaSet{Formula::top()});
}

TEST_CASE("cx and rf") {
  CHECK(cx(p) == 0);
  CHECK(cx(P("[]([]p->p)->[]p")) == 2);
  CHECK(cx(P("[][]#f")) == 2);
  CHECK(rf(Formula::box(p)) == FormulaSet{P("[]p -> p")});
  CHECK(rf(P("![]#f")) == FormulaSet{P("[]#f -> #f")});
  CHECK(rf(P("p & q")).empty());
  for (std::size_t n = 0; n <= 10; ++n) CHECK(cx(box_n(n, Formula::bot())) == n);
}

TEST_CASE("iterated modalities and F_s") {
  CHECK(box_n(0, p) == p);
  CHECK(box_n(2, Formula::bot()) == P("[][]#f"));
  CHECK(diamond_n(1, Formula::top()) == Formula::neg(Formula::box(Formula::neg(Formula::top()))));
  CHECK(diamond_n(0, Formula::top()) == Formula::top());
  CHECK(f_s(0) == P("[]#f -> #f"));
  CHECK(f_s(1) == P("[][]#f -> []#f"));
  for (std::size_t s = 0; s < 6; ++s) {
    CHECK_FALSE(f_s(s).is_box_free());
    CHECK(cx(f_s(s)) == s + 1);
  }
}

TEST_CASE("substitute") {
  CHECK(substitute(P("p -> q"), {{"p", P("r & r")}}) == P("(r & r) -> q"));
  CHECK(substitute(P("[]p"), {{"p", Formula::bot()}}) == P("[]#f"));
  CHECK(substitute(p, {}) == p);
  // Simultaneous, not sequential.
  CHECK(substitute(P("p & q"), {{"p", q}, {"q", p}}) == P("q & p"));
}

TEST_CASE("polarity and constants") {
  CHECK(polarity(true, p) == p);
  CHECK(polarity(false, p) == Formula::neg(p));
  CHECK(truth_constant(true) == Formula::top());
  CHECK(truth_constant(false) == Formula::bot());
  CHECK(big_and(std::vector<Formula>{}) == Formula::top());
  CHECK(big_or(std::vector<Formula>{}) == Formula::bot());
  CHECK(big_and(std::vector<Formula>{p, q}) == Formula::conj(p, q));
}

TEST_CASE("structural properties on an enumerated corpus") {
  const auto fs = enumerate_formulas(Grammar{}, 5);
  for (const auto& f : fs) {
    REQUIRE(rf(f).size() == cx(f));
    const FormulaSet sub = subformulas(f);
    for (const auto& g : sub) {
      for (const auto& h : subformulas(g)) REQUIRE(sub.contains(h));
    }
    REQUIRE(f.size() == f.size());
  }
}

TEST_CASE("ordering is total and consistent with equality") {
  const auto fs = enumerate_formulas(Grammar{}, 4);
  FormulaSet set(fs.begin(), fs.end());
  CHECK(set.size() == fs.size());
  for (std::size_t i = 0; i + 1 < fs.size(); i += 7) {
    CHECK((fs[i] == fs[i + 1]) == ((fs[i] <=> fs[i + 1]) == 0));
    CHECK(std::hash<Formula>{}(fs[i]) == std::hash<Formula>{}(parse_formula(print_formula(fs[i]))));
  }
}
