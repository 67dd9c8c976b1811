#include "fghlab/corpus.hpp"

#include <set>
#include <stdexcept>

namespace fghlab {

Grammar Grammar::box_free(std::vector<std::string> vars) {
  Grammar g;
  g.vars = std::move(vars);
  g.unary = {Op::Not};
  return g;
}

namespace {

std::vector<Formula> leaves(const Grammar& g) {
  std::vector<Formula> out;
  for (const auto& v : g.vars) out.push_back(Formula::var(v));
  if (g.constants) {
    out.push_back(Formula::top());
    out.push_back(Formula::bot());
  }
  return out;
}

Formula apply_unary(Op op, const Formula& f) { return op == Op::Box ? Formula::box(f) : Formula::neg(f); }

}  // namespace

std::vector<Formula> enumerate_formulas(const Grammar& g, std::size_t max_size, std::optional<unsigned> max_depth) {
  auto fits = [&](const Formula& f) { return !max_depth || f.modal_depth() <= *max_depth; };
  // by_size[s] holds the formulas of exactly s nodes; pruning by depth is safe
  // because depth never decreases when building upward.
  std::vector<std::vector<Formula>> by_size(max_size + 1);
  if (max_size >= 1)
    for (auto& f : leaves(g))
      if (fits(f)) by_size[1].push_back(f);
  for (std::size_t s = 2; s <= max_size; ++s) {
    auto& level = by_size[s];
    for (Op op : g.unary)
      for (const auto& f : by_size[s - 1])
        if (Formula u = apply_unary(op, f); fits(u)) level.push_back(std::move(u));
    for (Op op : g.binary)
      for (std::size_t i = 1; i + 1 < s; ++i)
        for (const auto& l : by_size[i])
          for (const auto& r : by_size[s - 1 - i])
            if (Formula b = Formula::binary(op, l, r); fits(b)) level.push_back(std::move(b));
  }
  std::vector<Formula> out;
  for (auto& level : by_size) out.insert(out.end(), level.begin(), level.end());
  return out;
}

Formula FormulaGenerator::leaf() {
  const std::size_t n = g_.vars.size() + (g_.constants ? 2 : 0);
  if (n == 0) throw std::invalid_argument("grammar has no leaves");
  const std::size_t i = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  if (i < g_.vars.size()) return Formula::var(g_.vars[i]);
  return i == g_.vars.size() ? Formula::top() : Formula::bot();
}

Formula FormulaGenerator::sized(std::size_t size) {
  const bool can_unary = !g_.unary.empty();
  const bool can_binary = !g_.binary.empty() && size >= 3;
  if (size <= 1 || (!can_unary && !can_binary)) return leaf();
  bool unary = can_unary;
  if (can_unary && can_binary) unary = std::bernoulli_distribution(0.4)(rng_);
  if (unary) {
    const Op op = g_.unary[std::uniform_int_distribution<std::size_t>(0, g_.unary.size() - 1)(rng_)];
    return apply_unary(op, sized(size - 1));
  }
  const Op op = g_.binary[std::uniform_int_distribution<std::size_t>(0, g_.binary.size() - 1)(rng_)];
  const std::size_t left = std::uniform_int_distribution<std::size_t>(1, size - 2)(rng_);
  Formula l = sized(left);
  return Formula::binary(op, std::move(l), sized(size - 1 - left));
}

Formula FormulaGenerator::next(std::size_t max_size) {
  return sized(std::uniform_int_distribution<std::size_t>(1, std::max<std::size_t>(1, max_size))(rng_));
}

std::vector<Formula> FormulaGenerator::distinct(std::size_t count, std::size_t max_size,
                                                std::optional<unsigned> max_depth) {
  std::set<Formula> seen;
  std::vector<Formula> out;
  // Small grammars may not have `count` distinct members.
  for (std::size_t tries = 0; out.size() < count && tries < count * 1000; ++tries) {
    Formula f = next(max_size);
    if (max_depth && f.modal_depth() > *max_depth) continue;
    if (seen.insert(f).second) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace fghlab
