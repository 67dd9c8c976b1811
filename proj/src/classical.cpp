#include "fghlab/classical.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace fghlab {

const char* to_string(Classification c) noexcept {
  switch (c) {
    case Classification::Tautology: return "tautology";
    case Classification::Unsatisfiable: return "unsatisfiable";
    case Classification::Contingent: return "contingent";
  }
  return "?";
}

NotBoxFree::NotBoxFree(const Formula& f) : Error("formula is not box-free: " + print_formula(f)) {}

PartialAssignment::PartialAssignment(const std::string& variable)
    : Error("assignment has no value for variable '" + variable + "'") {}

NotContingent::NotContingent(const Formula& f, Classification c)
    : Error("formula is not contingent (" + std::string(to_string(c)) + "): " + print_formula(f)),
      classification_(c) {}

NotFresh::NotFresh(const std::string& variable)
    : Error("variable '" + variable + "' already occurs in the formula") {}

namespace {

std::string describe(const Assignment& a) {
  std::string s = "{";
  bool first = true;
  for (const auto& [v, b] : a) {
    if (!first) s += ", ";
    first = false;
    s += v + ":" + (b ? "1" : "0");
  }
  return s + "}";
}

constexpr std::size_t kMaxVariables = 24;

// Truth table over 2^n rows packed into 64-bit words. Row index bits are
// read with the first variable (in name order) as the most significant bit.
class TruthTable {
 public:
  explicit TruthTable(std::vector<std::string> vars) : vars_(std::move(vars)) {
    if (vars_.size() > kMaxVariables) throw Error("too many variables for a truth table");
    rows_ = std::size_t{1} << vars_.size();
    words_ = (rows_ + 63) / 64;
  }

  std::size_t rows() const { return rows_; }

  std::vector<std::uint64_t> compute(const Formula& f) const {
    switch (f.op()) {
      case Op::Var: return column(f.name());
      case Op::Top: return mask(std::vector<std::uint64_t>(words_, ~std::uint64_t{0}));
      case Op::Bot: return std::vector<std::uint64_t>(words_, 0);
      case Op::Not: {
        auto a = compute(f.lhs());
        for (auto& w : a) w = ~w;
        return mask(std::move(a));
      }
      case Op::Box: throw NotBoxFree(f);
      default: break;
    }
    auto a = compute(f.lhs());
    auto b = compute(f.rhs());
    for (std::size_t i = 0; i < words_; ++i) {
      switch (f.op()) {
        case Op::And: a[i] &= b[i]; break;
        case Op::Or: a[i] |= b[i]; break;
        case Op::Imp: a[i] = ~a[i] | b[i]; break;
        case Op::Iff: a[i] = ~(a[i] ^ b[i]); break;
        default: break;
      }
    }
    return mask(std::move(a));
  }

  std::size_t count(const std::vector<std::uint64_t>& t) const {
    std::size_t c = 0;
    for (auto w : t) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  std::optional<std::size_t> first_row(const std::vector<std::uint64_t>& t, bool value) const {
    for (std::size_t r = 0; r < rows_; ++r)
      if (bit(t, r) == value) return r;
    return std::nullopt;
  }

  Assignment row_assignment(std::size_t row) const {
    Assignment a;
    const std::size_t n = vars_.size();
    for (std::size_t i = 0; i < n; ++i) a[vars_[i]] = (row >> (n - 1 - i)) & 1U;
    return a;
  }

 private:
  static bool bit(const std::vector<std::uint64_t>& t, std::size_t r) { return (t[r / 64] >> (r % 64)) & 1U; }

  std::vector<std::uint64_t> column(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    const std::size_t n = vars_.size();
    const std::size_t shift = n - 1 - static_cast<std::size_t>(it - vars_.begin());
    std::vector<std::uint64_t> out(words_, 0);
    for (std::size_t r = 0; r < rows_; ++r)
      if ((r >> shift) & 1U) out[r / 64] |= std::uint64_t{1} << (r % 64);
    return out;
  }

  std::vector<std::uint64_t> mask(std::vector<std::uint64_t> t) const {
    if (rows_ < 64) t[0] &= (std::uint64_t{1} << rows_) - 1;
    return t;
  }

  std::vector<std::string> vars_;
  std::size_t rows_ = 1;
  std::size_t words_ = 1;
};

TruthTable table_for(const Formula& f) {
  if (!f.is_box_free()) throw NotBoxFree(f);
  auto vs = variables(f);
  return TruthTable(std::vector<std::string>(vs.begin(), vs.end()));
}

void require_fresh(const Formula& a, const std::string& r) {
  if (variables(a).contains(r)) throw NotFresh(r);
  // Validates the identifier.
  (void)Formula::var(r);
}

}  // namespace

ConditionFails::ConditionFails(Assignment witness)
    : Error("specialization " + describe(witness) + " is not contingent"), witness_(std::move(witness)) {}

bool evaluate(const Formula& f, const Assignment& a) {
  switch (f.op()) {
    case Op::Var: {
      auto it = a.find(f.name());
      if (it == a.end()) throw PartialAssignment(f.name());
      return it->second;
    }
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::Not: return !evaluate(f.lhs(), a);
    case Op::Box: throw NotBoxFree(f);
    case Op::And: return evaluate(f.lhs(), a) && evaluate(f.rhs(), a);
    case Op::Or: return evaluate(f.lhs(), a) || evaluate(f.rhs(), a);
    case Op::Imp: return !evaluate(f.lhs(), a) || evaluate(f.rhs(), a);
    case Op::Iff: return evaluate(f.lhs(), a) == evaluate(f.rhs(), a);
  }
  return false;
}

Classification classify(const Formula& f) {
  TruthTable tt = table_for(f);
  const std::size_t ones = tt.count(tt.compute(f));
  if (ones == tt.rows()) return Classification::Tautology;
  if (ones == 0) return Classification::Unsatisfiable;
  return Classification::Contingent;
}

std::optional<Assignment> least_assignment(const Formula& f, bool value) {
  TruthTable tt = table_for(f);
  auto row = tt.first_row(tt.compute(f), value);
  if (!row) return std::nullopt;
  return tt.row_assignment(*row);
}

Formula synthesis_equivalence(const Formula& a, const std::vector<Binding>& bindings, const std::string& r) {
  Substitution subst;
  for (const auto& b : bindings) subst.emplace(b.variable, b.witness);
  return Formula::iff(Formula::var(r), substitute(a, subst));
}

std::vector<Binding> lemma1_synthesize(const Formula& a, const std::string& r) {
  const Classification c = classify(a);
  if (c != Classification::Contingent) throw NotContingent(a, c);
  require_fresh(a, r);

  const Assignment sat = *least_assignment(a, true);
  const Assignment unsat = *least_assignment(a, false);
  const Formula rv = Formula::var(r);

  std::vector<Binding> out;
  for (const auto& [v, on] : sat) {
    // (r & #t^f(i)) | (!r & #t^g(i))
    Formula b = Formula::disj(Formula::conj(rv, truth_constant(on)),
                              Formula::conj(Formula::neg(rv), truth_constant(unsat.at(v))));
    out.push_back({v, std::move(b)});
  }
  if (classify(synthesis_equivalence(a, out, r)) != Classification::Tautology)
    throw std::logic_error("lemma1_synthesize produced an unverified witness for " + print_formula(a));
  return out;
}

namespace {

std::vector<std::string> checked_q_vars(const Formula& a, const std::set<std::string>& q_vars) {
  if (!a.is_box_free()) throw NotBoxFree(a);
  const auto vs = variables(a);
  for (const auto& q : q_vars)
    if (!vs.contains(q)) throw Error("q-variable '" + q + "' does not occur in " + print_formula(a));
  if (q_vars.size() >= kMaxVariables) throw Error("too many q-variables");
  return {q_vars.begin(), q_vars.end()};
}

// The f-th function of F_m: bit j of the index, most significant first.
Assignment function_at(const std::vector<std::string>& qs, std::size_t index) {
  Assignment g;
  const std::size_t m = qs.size();
  for (std::size_t j = 0; j < m; ++j) g[qs[j]] = (index >> (m - 1 - j)) & 1U;
  return g;
}

Formula specialize(const Formula& a, const Assignment& g) {
  Substitution s;
  for (const auto& [q, bit] : g) s.emplace(q, truth_constant(bit));
  return substitute(a, s);
}

}  // namespace

ConditionCheck theorem2_condition(const Formula& a, const std::set<std::string>& q_vars) {
  const auto qs = checked_q_vars(a, q_vars);
  const std::size_t count = std::size_t{1} << qs.size();
  for (std::size_t i = 0; i < count; ++i) {
    Assignment g = function_at(qs, i);
    if (classify(specialize(a, g)) != Classification::Contingent) return {false, std::move(g)};
  }
  return {true, std::nullopt};
}

std::vector<Binding> lemma2_synthesize(const Formula& a, const std::set<std::string>& q_vars,
                                       const std::string& r) {
  const auto qs = checked_q_vars(a, q_vars);
  require_fresh(a, r);
  if (auto check = theorem2_condition(a, q_vars); !check.holds) throw ConditionFails(*check.counterexample);

  std::vector<std::string> ps;
  for (const auto& v : variables(a))
    if (!q_vars.contains(v)) ps.push_back(v);

  std::map<std::string, std::vector<Formula>> disjuncts;
  const std::size_t count = std::size_t{1} << qs.size();
  for (std::size_t i = 0; i < count; ++i) {
    const Assignment g = function_at(qs, i);
    std::vector<Formula> literals;
    for (const auto& q : qs) literals.push_back(polarity(g.at(q), Formula::var(q)));
    const Formula qf = big_and(literals);

    for (const auto& c : lemma1_synthesize(specialize(a, g), r)) {
      // With no q-variables Q^f is the empty conjunction and is left out, so
      // the result coincides with lemma1_synthesize.
      disjuncts[c.variable].push_back(qs.empty() ? c.witness : Formula::conj(c.witness, qf));
    }
  }

  std::vector<Binding> out;
  for (const auto& p : ps) out.push_back({p, big_or(disjuncts.at(p))});
  if (classify(synthesis_equivalence(a, out, r)) != Classification::Tautology)
    throw std::logic_error("lemma2_synthesize produced an unverified witness for " + print_formula(a));
  return out;
}

}  // namespace fghlab
