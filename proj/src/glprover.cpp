#include "fghlab/glprover.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>

namespace fghlab {

ResourceLimitExceeded::ResourceLimitExceeded(std::size_t budget)
    : Error("prover node budget of " + std::to_string(budget) + " expansions exceeded"), budget_(budget) {}

namespace {

// The tableau works over the closure Sub(A), indexed in the size-first
// formula order so every node comes after its parts. A world is a truth
// assignment to the closure; variables and boxed formulas are the decision
// points and everything else is computed from them.
class Tableau {
 public:
  Tableau(const Formula& goal, const ProverOptions& opts) : budget_(opts.node_budget) {
    const FormulaSet subs = subformulas(goal);
    closure_.assign(subs.begin(), subs.end());
    nodes_.reserve(closure_.size());
    for (const Formula& g : closure_) {
      Node n{g.op()};
      if (g.op() == Op::Not || g.op() == Op::Box) n.a = index_of(g.lhs());
      if (g.is_binary()) {
        n.a = index_of(g.lhs());
        n.b = index_of(g.rhs());
      }
      if (g.op() == Op::Var || g.op() == Op::Box) decisions_.push_back(nodes_.size());
      if (g.op() == Op::Box) boxes_.push_back(nodes_.size());
      nodes_.push_back(n);
    }
    goal_ = closure_.size() - 1;
  }

  std::size_t closure_size() const { return closure_.size(); }
  std::size_t box_count() const { return boxes_.size(); }
  std::size_t expansions() const { return spent_; }
  std::size_t worlds_tried() const { return memo_.size(); }

  struct World {
    std::vector<signed char> value;
    std::vector<std::shared_ptr<const World>> children;
  };
  using WorldPtr = std::shared_ptr<const World>;

  WorldPtr refute_goal() {
    Seed seed(closure_.size(), kFree);
    seed[goal_] = 0;
    return satisfy(seed);
  }

  const std::vector<Formula>& closure() const { return closure_; }

 private:
  static constexpr signed char kFree = -1;
  using Seed = std::vector<signed char>;  // required value per closure node, or kFree

  struct Node {
    Op op;
    std::size_t a = 0;
    std::size_t b = 0;
  };

  std::size_t index_of(const Formula& g) const {
    return static_cast<std::size_t>(std::lower_bound(closure_.begin(), closure_.end(), g) - closure_.begin());
  }

  void tick() {
    if (++spent_ > budget_) throw ResourceLimitExceeded(budget_);
  }

  // Three-valued evaluation of every non-decision node from the current
  // partial assignment of decision nodes.
  void propagate(std::vector<signed char>& v) const {
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const Node& n = nodes_[i];
      const signed char x = v[n.a];
      const signed char y = v[n.b];
      switch (n.op) {
        case Op::Var:
        case Op::Box: break;
        case Op::Top: v[i] = 1; break;
        case Op::Bot: v[i] = 0; break;
        case Op::Not: v[i] = x == kFree ? kFree : static_cast<signed char>(!x); break;
        case Op::And:
          v[i] = (x == 0 || y == 0) ? 0 : (x == 1 && y == 1) ? 1 : kFree;
          break;
        case Op::Or:
          v[i] = (x == 1 || y == 1) ? 1 : (x == 0 && y == 0) ? 0 : kFree;
          break;
        case Op::Imp:
          v[i] = (x == 0 || y == 1) ? 1 : (x == 1 && y == 0) ? 0 : kFree;
          break;
        case Op::Iff:
          v[i] = (x == kFree || y == kFree) ? kFree : static_cast<signed char>(x == y);
          break;
      }
    }
  }

  static bool require(Seed& seed, std::size_t i, signed char value) {
    if (seed[i] != kFree && seed[i] != value) return false;
    seed[i] = value;
    return true;
  }

  static bool consistent(const std::vector<signed char>& v, const Seed& seed) {
    for (std::size_t i = 0; i < seed.size(); ++i)
      if (seed[i] != kFree && v[i] != kFree && v[i] != seed[i]) return false;
    return true;
  }

  // Finds a world satisfying `seed` together with witnesses for each of its
  // false boxes, or nullptr when none exists.
  WorldPtr satisfy(const Seed& seed) {
    if (auto it = memo_.find(seed); it != memo_.end()) return it->second;
    memo_.emplace(seed, nullptr);
    WorldPtr result;
    std::vector<signed char> v(closure_.size(), kFree);
    search(seed, v, 0, result);
    memo_[seed] = result;
    return result;
  }

  bool search(const Seed& seed, std::vector<signed char>& v, std::size_t depth, WorldPtr& out) {
    tick();
    propagate(v);
    if (!consistent(v, seed)) return false;
    if (depth == decisions_.size()) return expand(seed, v, out);

    const std::size_t d = decisions_[depth];
    // Boxes true first (fewer successors), variables false first.
    const bool is_box = nodes_[d].op == Op::Box;
    signed char order[2] = {static_cast<signed char>(is_box ? 1 : 0), static_cast<signed char>(is_box ? 0 : 1)};
    if (seed[d] != kFree) order[0] = order[1] = seed[d];
    for (int k = 0; k < (order[0] == order[1] ? 1 : 2); ++k) {
      std::vector<signed char> next = v;
      next[d] = order[k];
      if (search(seed, next, depth + 1, out)) return true;
    }
    return false;
  }

  bool expand(const Seed&, const std::vector<signed char>& v, WorldPtr& out) {
    auto world = std::make_shared<World>();
    world->value = v;
    for (std::size_t box : boxes_) {
      if (v[box] != 0) continue;
      const std::size_t body = nodes_[box].a;
      bool witnessed = std::any_of(world->children.begin(), world->children.end(),
                                   [&](const WorldPtr& c) { return c->value[body] == 0; });
      if (witnessed) continue;
      // Successor for ![]B: !B and []B, plus []C and C for every true []C.
      Seed child(closure_.size(), kFree);
      child[body] = 0;
      child[box] = 1;
      for (std::size_t other : boxes_) {
        if (v[other] != 1) continue;
        if (!require(child, other, 1) || !require(child, nodes_[other].a, 1)) return false;
      }
      WorldPtr w = satisfy(child);
      if (!w) return false;
      world->children.push_back(std::move(w));
    }
    out = std::move(world);
    return true;
  }

  std::vector<Formula> closure_;
  std::vector<Node> nodes_;
  std::vector<std::size_t> decisions_;
  std::vector<std::size_t> boxes_;
  std::size_t goal_ = 0;
  std::size_t budget_;
  std::size_t spent_ = 0;
  std::map<Seed, WorldPtr> memo_;
};

void build_model(const Tableau::World& w, const std::vector<Formula>& closure, std::vector<WorldId>& ancestors,
                 KripkeModel& m) {
  const WorldId id = static_cast<WorldId>(m.worlds.size());
  m.worlds.push_back(id);
  for (WorldId a : ancestors) m.rel.emplace(a, id);
  auto& row = m.val[id];
  for (std::size_t i = 0; i < closure.size(); ++i)
    if (closure[i].op() == Op::Var) row[closure[i].name()] = w.value[i] == 1;
  ancestors.push_back(id);
  for (const auto& c : w.children) build_model(*c, closure, ancestors, m);
  ancestors.pop_back();
}

}  // namespace

Verdict gl_proves(const Formula& f, const ProverOptions& opts) {
  Tableau t(f, opts);
  auto world = t.refute_goal();
  if (!world) return Verdict::proved({t.expansions(), t.closure_size(), t.box_count(), t.worlds_tried()});

  KripkeModel m;
  m.root = 0;
  std::vector<WorldId> ancestors;
  build_model(*world, t.closure(), ancestors, m);

  const ModelChecker checker(m);
  if (checker.forces(m.root, f) || !checker.forces(m.root, box_n(cx(f) + 1, Formula::bot())))
    throw std::logic_error("tableau countermodel failed verification for " + print_formula(f));
  return Verdict::refuted(std::move(m));
}

bool gl_proves_brute(const Formula& f, unsigned max_worlds) {
  return gl_proves_brute(f, ModelCorpus(max_worlds, variables(f)));
}

bool gl_proves_brute(const Formula& f, const ModelCorpus& corpus) { return !corpus.first_refuting(f).has_value(); }

}  // namespace fghlab
