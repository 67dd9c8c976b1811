#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fghlab/formula.hpp"

namespace fghlab {

struct Grammar {
  std::vector<std::string> vars{"p", "q"};
  bool constants = true;  // #t and #f as leaves
  std::vector<Op> unary{Op::Not, Op::Box};
  std::vector<Op> binary{Op::And, Op::Or, Op::Imp};

  static Grammar box_free(std::vector<std::string> vars);
};

/// Every formula of the grammar with 1..max_size AST nodes, grouped by size
/// and in generation order within a size. max_depth caps the modal depth.
std::vector<Formula> enumerate_formulas(const Grammar& g, std::size_t max_size,
                                        std::optional<unsigned> max_depth = std::nullopt);

/// Formulas drawn from the same grammar with 1..max_size nodes.
class FormulaGenerator {
 public:
  FormulaGenerator(Grammar g, std::uint64_t seed) : g_(std::move(g)), rng_(seed) {}

  Formula next(std::size_t max_size);
  /// `count` distinct formulas meeting the depth cap.
  std::vector<Formula> distinct(std::size_t count, std::size_t max_size, std::optional<unsigned> max_depth = {});

 private:
  Formula sized(std::size_t size);
  Formula leaf();

  Grammar g_;
  std::mt19937_64 rng_;
};

}  // namespace fghlab
