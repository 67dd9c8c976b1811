#include "fghlab/kripke.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

namespace fghlab {

bool KripkeModel::holds(WorldId w, const std::string& var) const {
  auto it = val.find(w);
  if (it == val.end()) return false;
  auto jt = it->second.find(var);
  return jt != it->second.end() && jt->second;
}

std::vector<WorldId> KripkeModel::successors(WorldId w) const {
  std::vector<WorldId> out;
  for (auto it = rel.lower_bound({w, std::numeric_limits<WorldId>::min()}); it != rel.end() && it->first == w; ++it)
    out.push_back(it->second);
  return out;
}

std::string Violation::describe() const {
  std::ostringstream os;
  auto list = [&] {
    os << '(';
    for (std::size_t i = 0; i < witness.size(); ++i) os << (i ? "," : "") << witness[i];
    os << ')';
  };
  switch (kind) {
    case Kind::EmptyWorlds: os << "model has no worlds"; break;
    case Kind::DuplicateWorld: os << "world listed twice "; list(); break;
    case Kind::RootMissing: os << "root is not a world "; list(); break;
    case Kind::UnknownWorld: os << "relation or valuation mentions an unknown world "; list(); break;
    case Kind::Reflexive: os << "reflexive pair "; list(); break;
    case Kind::NotTransitive: os << "transitivity fails for "; list(); break;
    case Kind::Cycle: os << "irreflexivity of the transitive closure fails at "; list(); break;
    case Kind::RootNotBelow: os << "root does not precede world "; list(); break;
  }
  return os.str();
}

Relation transitive_closure(const Relation& rel) {
  Relation out = rel;
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<WorldId, WorldId>> add;
    for (const auto& [a, b] : out)
      for (auto it = out.lower_bound({b, std::numeric_limits<WorldId>::min()}); it != out.end() && it->first == b; ++it)
        if (!out.contains({a, it->second})) add.emplace_back(a, it->second);
    for (const auto& p : add) changed |= out.insert(p).second;
  }
  return out;
}

std::vector<Violation> validate_frame(const KripkeModel& m) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  if (m.worlds.empty()) {
    out.push_back({K::EmptyWorlds, {}});
    return out;
  }
  std::set<WorldId> ws;
  for (WorldId w : m.worlds)
    if (!ws.insert(w).second) out.push_back({K::DuplicateWorld, {w}});
  if (!ws.contains(m.root)) out.push_back({K::RootMissing, {m.root}});
  for (const auto& [a, b] : m.rel) {
    if (!ws.contains(a)) out.push_back({K::UnknownWorld, {a}});
    if (!ws.contains(b)) out.push_back({K::UnknownWorld, {b}});
    if (a == b) out.push_back({K::Reflexive, {a, a}});
  }
  for (const auto& [w, _] : m.val)
    if (!ws.contains(w)) out.push_back({K::UnknownWorld, {w}});

  for (const auto& [a, b] : m.rel)
    for (auto it = m.rel.lower_bound({b, std::numeric_limits<WorldId>::min()}); it != m.rel.end() && it->first == b; ++it)
      if (!m.rel.contains({a, it->second})) out.push_back({K::NotTransitive, {a, b, it->second}});

  const Relation closure = transitive_closure(m.rel);
  for (WorldId w : ws)
    if (closure.contains({w, w}) && !m.rel.contains({w, w})) out.push_back({K::Cycle, {w, w}});

  if (ws.contains(m.root))
    for (WorldId w : ws)
      if (w != m.root && !m.rel.contains({m.root, w})) out.push_back({K::RootNotBelow, {w}});
  return out;
}

namespace {

std::string join_violations(const std::vector<Violation>& vs) {
  std::string s = "invalid GL-model:";
  for (const auto& v : vs) s += " " + v.describe() + ";";
  return s;
}

}  // namespace

InvalidModel::InvalidModel(const std::vector<Violation>& violations) : Error(join_violations(violations)) {}

UnknownWorld::UnknownWorld(WorldId w) : Error("unknown world " + std::to_string(w)) {}

ModelChecker::ModelChecker(const KripkeModel& m) : model_(m) {
  if (auto v = validate_frame(model_); !v.empty()) throw InvalidModel(v);
  for (std::size_t i = 0; i < model_.worlds.size(); ++i) index_[model_.worlds[i]] = i;
  succ_.resize(model_.worlds.size());
  for (const auto& [a, b] : model_.rel) succ_[index_.at(a)].push_back(index_.at(b));
}

std::size_t ModelChecker::index_of(WorldId w) const {
  auto it = index_.find(w);
  if (it == index_.end()) throw UnknownWorld(w);
  return it->second;
}

std::vector<char> ModelChecker::extension(const Formula& f) const {
  const std::size_t n = model_.worlds.size();
  std::vector<char> out(n, 0);
  switch (f.op()) {
    case Op::Var:
      for (std::size_t i = 0; i < n; ++i) out[i] = model_.holds(model_.worlds[i], f.name());
      return out;
    case Op::Top: std::fill(out.begin(), out.end(), 1); return out;
    case Op::Bot: return out;
    case Op::Not: {
      auto a = extension(f.lhs());
      for (std::size_t i = 0; i < n; ++i) out[i] = !a[i];
      return out;
    }
    case Op::Box: {
      auto a = extension(f.lhs());
      for (std::size_t i = 0; i < n; ++i)
        out[i] = std::all_of(succ_[i].begin(), succ_[i].end(), [&](std::size_t j) { return a[j] != 0; });
      return out;
    }
    default: break;
  }
  auto a = extension(f.lhs());
  auto b = extension(f.rhs());
  for (std::size_t i = 0; i < n; ++i) {
    switch (f.op()) {
      case Op::And: out[i] = a[i] && b[i]; break;
      case Op::Or: out[i] = a[i] || b[i]; break;
      case Op::Imp: out[i] = !a[i] || b[i]; break;
      case Op::Iff: out[i] = (a[i] != 0) == (b[i] != 0); break;
      default: break;
    }
  }
  return out;
}

bool ModelChecker::forces(WorldId w, const Formula& f) const {
  const std::size_t i = index_of(w);
  return extension(f)[i] != 0;
}

std::size_t ModelChecker::height(WorldId w) const {
  // Worlds form a DAG; memoized longest path.
  std::vector<std::size_t> memo(succ_.size(), static_cast<std::size_t>(-1));
  std::function<std::size_t(std::size_t)> go = [&](std::size_t i) -> std::size_t {
    if (memo[i] != static_cast<std::size_t>(-1)) return memo[i];
    std::size_t best = 0;
    for (std::size_t j : succ_[i]) best = std::max(best, go(j) + 1);
    return memo[i] = best;
  };
  return go(index_of(w));
}

bool forces(const KripkeModel& m, WorldId w, const Formula& f) { return ModelChecker(m).forces(w, f); }

bool model_forces_at_root(const KripkeModel& m, const Formula& f) { return forces(m, m.root, f); }

bool model_valid(const KripkeModel& m, const Formula& f) {
  auto ext = ModelChecker(m).extension(f);
  return std::all_of(ext.begin(), ext.end(), [](char c) { return c != 0; });
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct Frame {
  unsigned k;
  std::vector<std::uint64_t> up;  // up[i]: bitmask of j with i ⊏ j
};

std::uint64_t encode_rel(const Frame& f) {
  std::uint64_t code = 0;
  unsigned bit = 0;
  for (unsigned i = 1; i < f.k; ++i)
    for (unsigned j = i + 1; j < f.k; ++j, ++bit)
      if ((f.up[i] >> j) & 1U) code |= std::uint64_t{1} << bit;
  return code;
}

// Relabelings of the non-root worlds that keep x ⊏ y => x < y.
std::vector<std::vector<unsigned>> natural_relabelings(const Frame& f) {
  std::vector<unsigned> perm(f.k);
  std::iota(perm.begin(), perm.end(), 0U);
  std::vector<std::vector<unsigned>> out;
  do {
    bool ok = true;
    for (unsigned i = 1; i < f.k && ok; ++i)
      for (unsigned j = 1; j < f.k && ok; ++j)
        if (((f.up[i] >> j) & 1U) && perm[i] > perm[j]) ok = false;
    if (ok) out.push_back(perm);
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return out;
}

Frame relabel(const Frame& f, const std::vector<unsigned>& perm) {
  Frame g{f.k, std::vector<std::uint64_t>(f.k, 0)};
  for (unsigned i = 0; i < f.k; ++i)
    for (unsigned j = 0; j < f.k; ++j)
      if ((f.up[i] >> j) & 1U) g.up[perm[i]] |= std::uint64_t{1} << perm[j];
  return g;
}

std::vector<Frame> frames_with(unsigned k) {
  std::vector<std::pair<unsigned, unsigned>> pairs;
  for (unsigned i = 1; i < k; ++i)
    for (unsigned j = i + 1; j < k; ++j) pairs.emplace_back(i, j);
  std::vector<Frame> out;
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t s = 0; s < total; ++s) {
    Frame f{k, std::vector<std::uint64_t>(k, 0)};
    for (unsigned j = 1; j < k; ++j) f.up[0] |= std::uint64_t{1} << j;
    for (std::size_t b = 0; b < pairs.size(); ++b)
      if ((s >> b) & 1U) f.up[pairs[b].first] |= std::uint64_t{1} << pairs[b].second;
    bool transitive = true;
    for (unsigned i = 0; i < k && transitive; ++i)
      for (unsigned j = 0; j < k && transitive; ++j)
        if ((f.up[i] >> j) & 1U)
          if ((f.up[j] & ~f.up[i]) != 0) transitive = false;
    if (transitive) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

void enumerate_models(unsigned max_worlds, const std::set<std::string>& vars,
                      const std::function<bool(const KripkeModel&)>& visit) {
  if (max_worlds > 7) throw Error("enumerate_models supports at most 7 worlds");
  if (vars.size() > 8) throw Error("enumerate_models supports at most 8 variables");
  const std::vector<std::string> names(vars.begin(), vars.end());
  const std::uint32_t labels = std::uint32_t{1} << names.size();

  for (unsigned k = 1; k <= max_worlds; ++k) {
    for (const Frame& frame : frames_with(k)) {
      const std::uint64_t code = encode_rel(frame);
      std::vector<std::vector<unsigned>> automorphisms;
      bool canonical = true;
      for (const auto& perm : natural_relabelings(frame)) {
        const std::uint64_t other = encode_rel(relabel(frame, perm));
        if (other < code) {
          canonical = false;
          break;
        }
        if (other == code) automorphisms.push_back(perm);
      }
      if (!canonical) continue;

      std::vector<std::uint32_t> val(k, 0);
      while (true) {
        bool least = true;
        for (const auto& perm : automorphisms) {
          std::vector<std::uint32_t> moved(k);
          for (unsigned w = 0; w < k; ++w) moved[perm[w]] = val[w];
          if (moved < val) {
            least = false;
            break;
          }
        }
        if (least) {
          KripkeModel m;
          m.root = 0;
          for (unsigned w = 0; w < k; ++w) {
            m.worlds.push_back(static_cast<WorldId>(w));
            for (unsigned u = 0; u < k; ++u)
              if ((frame.up[w] >> u) & 1U) m.rel.emplace(static_cast<WorldId>(w), static_cast<WorldId>(u));
            auto& row = m.val[static_cast<WorldId>(w)];
            for (std::size_t v = 0; v < names.size(); ++v) row[names[v]] = (val[w] >> v) & 1U;
          }
          if (!visit(m)) return;
        }
        // Odometer over per-world labels, last world fastest.
        int pos = static_cast<int>(k) - 1;
        while (pos >= 0 && ++val[static_cast<unsigned>(pos)] == labels) val[static_cast<unsigned>(pos--)] = 0;
        if (pos < 0) break;
      }
    }
  }
}

std::vector<KripkeModel> all_models(unsigned max_worlds, const std::set<std::string>& vars) {
  std::vector<KripkeModel> out;
  enumerate_models(max_worlds, vars, [&](const KripkeModel& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

ModelCorpus::ModelCorpus(unsigned max_worlds, const std::set<std::string>& vars)
    : models_(all_models(max_worlds, vars)) {
  compact_.reserve(models_.size());
  for (const auto& m : models_) {
    Compact c{m.worlds.size(), std::vector<std::uint64_t>(m.worlds.size(), 0), {}};
    for (const auto& [a, b] : m.rel) c.succ[static_cast<std::size_t>(a)] |= std::uint64_t{1} << b;
    for (const auto& v : vars) {
      std::uint64_t mask = 0;
      for (WorldId w : m.worlds)
        if (m.holds(w, v)) mask |= std::uint64_t{1} << w;
      c.truth[v] = mask;
    }
    compact_.push_back(std::move(c));
  }
}

std::optional<std::size_t> ModelCorpus::first_refuting(const Formula& f) const {
  const FormulaSet subs = subformulas(f);
  const std::vector<Formula> order(subs.begin(), subs.end());
  struct Step {
    Op op;
    int a = -1;
    int b = -1;
    const std::string* var = nullptr;
  };
  std::vector<Step> steps;
  steps.reserve(order.size());
  auto index = [&](const Formula& g) {
    return static_cast<int>(std::lower_bound(order.begin(), order.end(), g) - order.begin());
  };
  for (const auto& g : order) {
    Step s{g.op()};
    if (g.op() == Op::Var) s.var = &g.name();
    else if (g.op() == Op::Not || g.op() == Op::Box) s.a = index(g.lhs());
    else if (g.is_binary()) {
      s.a = index(g.lhs());
      s.b = index(g.rhs());
    }
    steps.push_back(s);
  }

  std::vector<std::uint64_t> ext(steps.size());
  for (std::size_t mi = 0; mi < compact_.size(); ++mi) {
    const Compact& c = compact_[mi];
    const std::uint64_t all = c.n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << c.n) - 1;
    for (std::size_t i = 0; i < steps.size(); ++i) {
      const Step& s = steps[i];
      std::uint64_t x = 0;
      switch (s.op) {
        case Op::Var: {
          auto it = c.truth.find(*s.var);
          x = it == c.truth.end() ? 0 : it->second;
          break;
        }
        case Op::Top: x = all; break;
        case Op::Bot: x = 0; break;
        case Op::Not: x = all & ~ext[static_cast<std::size_t>(s.a)]; break;
        case Op::Box: {
          const std::uint64_t body = ext[static_cast<std::size_t>(s.a)];
          for (std::size_t w = 0; w < c.n; ++w)
            if ((c.succ[w] & ~body) == 0) x |= std::uint64_t{1} << w;
          break;
        }
        case Op::And: x = ext[static_cast<std::size_t>(s.a)] & ext[static_cast<std::size_t>(s.b)]; break;
        case Op::Or: x = ext[static_cast<std::size_t>(s.a)] | ext[static_cast<std::size_t>(s.b)]; break;
        case Op::Imp: x = all & (~ext[static_cast<std::size_t>(s.a)] | ext[static_cast<std::size_t>(s.b)]); break;
        case Op::Iff: x = all & ~(ext[static_cast<std::size_t>(s.a)] ^ ext[static_cast<std::size_t>(s.b)]); break;
      }
      ext[i] = x;
    }
    if ((ext.back() & 1U) == 0) return mi;
  }
  return std::nullopt;
}

}  // namespace fghlab
