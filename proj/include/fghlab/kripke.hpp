#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fghlab/error.hpp"
#include "fghlab/formula.hpp"

namespace fghlab {

using WorldId = int;
using Relation = std::set<std::pair<WorldId, WorldId>>;
using Valuation = std::map<WorldId, std::map<std::string, bool>>;

/// Finite rooted model. Variables missing from `val` are false.
struct KripkeModel {
  std::vector<WorldId> worlds;  // sorted, unique
  Relation rel;
  WorldId root = 0;
  Valuation val;

  bool holds(WorldId w, const std::string& var) const;
  std::vector<WorldId> successors(WorldId w) const;

  friend bool operator==(const KripkeModel&, const KripkeModel&) = default;
};

struct Violation {
  enum class Kind { EmptyWorlds, DuplicateWorld, RootMissing, UnknownWorld, Reflexive, NotTransitive, Cycle, RootNotBelow };
  Kind kind;
  std::vector<WorldId> witness;

  std::string describe() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Every violated frame condition; empty means the model is a GL-model.
std::vector<Violation> validate_frame(const KripkeModel& m);

Relation transitive_closure(const Relation& rel);

class InvalidModel : public Error {
 public:
  explicit InvalidModel(const std::vector<Violation>& violations);
};

class UnknownWorld : public Error {
 public:
  explicit UnknownWorld(WorldId w);
};

/// Evaluates formulas over one validated model. Construction validates the
/// frame and throws InvalidModel on failure.
class ModelChecker {
 public:
  explicit ModelChecker(const KripkeModel& m);

  const KripkeModel& model() const noexcept { return model_; }
  bool forces(WorldId w, const Formula& f) const;
  /// Truth value of f at every world, indexed like model().worlds.
  std::vector<char> extension(const Formula& f) const;
  std::size_t index_of(WorldId w) const;
  /// Length of the longest ⊏-chain starting at w.
  std::size_t height(WorldId w) const;

 private:
  KripkeModel model_;
  std::map<WorldId, std::size_t> index_;
  std::vector<std::vector<std::size_t>> succ_;
};

bool forces(const KripkeModel& m, WorldId w, const Formula& f);
bool model_forces_at_root(const KripkeModel& m, const Formula& f);
bool model_valid(const KripkeModel& m, const Formula& f);

/// Visits every rooted transitive irreflexive model with 1..max_worlds
/// worlds over `vars`, one representative per isomorphism class. The root
/// is world 0 and worlds are numbered so that x ⊏ y implies x < y. The
/// visitor returns false to stop early.
void enumerate_models(unsigned max_worlds, const std::set<std::string>& vars,
                      const std::function<bool(const KripkeModel&)>& visit);
std::vector<KripkeModel> all_models(unsigned max_worlds, const std::set<std::string>& vars);

/// A formula compiled against a fixed list of models, for checking many
/// formulas over the same enumeration.
class ModelCorpus {
 public:
  ModelCorpus(unsigned max_worlds, const std::set<std::string>& vars);

  std::size_t size() const noexcept { return models_.size(); }
  const std::vector<KripkeModel>& models() const noexcept { return models_; }
  /// Index of the first model whose root refutes f, if any.
  std::optional<std::size_t> first_refuting(const Formula& f) const;

 private:
  struct Compact {
    std::size_t n;
    std::vector<std::uint64_t> succ;  // bitmask of successors per world
    std::map<std::string, std::uint64_t> truth;  // worlds where a variable holds
  };
  std::vector<KripkeModel> models_;
  std::vector<Compact> compact_;
};

}  // namespace fghlab
