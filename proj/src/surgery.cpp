#include "fghlab/surgery.hpp"

#include <algorithm>
#include <set>

namespace fghlab {

ClaimFail::ClaimFail(Claim claim)
    : Error("claim failed at " + claim.label + " (world " + std::to_string(claim.world) + "): expected " +
            (claim.expected ? "" : "not ") + "to force " + print_formula(claim.formula)),
      claim_(std::move(claim)) {}

std::string pair_label(WorldId w) {
  if (w == 0) return "0";
  return "<" + std::to_string(pair_branch(w)) + "," + std::to_string(pair_level(w)) + ">";
}

namespace {

std::set<std::string> model_variables(const KripkeModel& m) {
  std::set<std::string> out;
  for (const auto& [w, row] : m.val)
    for (const auto& [v, b] : row) out.insert(v);
  return out;
}

void require_root(const KripkeModel& m, const Formula& f, const std::string& what) {
  if (auto bad = validate_frame(m); !bad.empty()) throw InvalidModel(bad);
  if (!model_forces_at_root(m, f)) throw PreconditionFail("root of " + what + " does not force " + print_formula(f));
}

// Worlds of m with the root first and the rest ascending.
std::vector<WorldId> root_first(const KripkeModel& m) {
  std::vector<WorldId> out{m.root};
  for (WorldId w : m.worlds)
    if (w != m.root) out.push_back(w);
  return out;
}

class ClaimChecker {
 public:
  explicit ClaimChecker(MergeCertificate& cert) : cert_(cert), checker_(cert.model) {}

  void check(WorldId w, const std::string& label, const Formula& f, bool expected) {
    Claim c{w, label, f, expected, checker_.forces(w, f)};
    cert_.checked_claims.push_back(c);
    if (c.actual != c.expected) throw ClaimFail(std::move(c));
  }

  bool forces(WorldId w, const Formula& f) const { return checker_.forces(w, f); }

 private:
  MergeCertificate& cert_;
  ModelChecker checker_;
};

Formula box_a_not_a(const Formula& a) { return Formula::conj(Formula::box(a), Formula::neg(a)); }

Formula rf_box_a(const Formula& a) { return Formula::conj(big_and(rf(Formula::box(a))), Formula::box(a)); }

void copy_row(KripkeModel& out, WorldId to, const KripkeModel& from, WorldId w, const std::set<std::string>& vars) {
  auto& row = out.val[to];
  for (const auto& v : vars) row[v] = from.holds(w, v);
}

}  // namespace

MergeCertificate merge_nontrifling(const KripkeModel& m, const KripkeModel& m0, const Formula& a,
                                   unsigned chain_len) {
  require_root(m, box_a_not_a(a), "m");
  require_root(m0, rf_box_a(a), "m0");

  std::set<std::string> vars = variables(a);
  vars.merge(model_variables(m));
  vars.merge(model_variables(m0));

  const WorldId L = static_cast<WorldId>(chain_len);
  std::map<WorldId, WorldId> in_m, in_m0;
  WorldId next = L + 1;
  for (WorldId w : root_first(m)) in_m[w] = next++;
  for (WorldId w : root_first(m0)) in_m0[w] = next++;

  MergeCertificate cert;
  KripkeModel& out = cert.model;
  out.root = 0;
  for (WorldId w = 0; w < next; ++w) out.worlds.push_back(w);

  const WorldId r = in_m.at(m.root);
  const WorldId r0 = in_m0.at(m0.root);
  auto chain = [&](WorldId i) { return i == 0 ? r0 : i; };

  Relation rel;
  for (const auto& [x, y] : m.rel) rel.emplace(in_m.at(x), in_m.at(y));
  for (const auto& [x, y] : m0.rel) rel.emplace(in_m0.at(x), in_m0.at(y));
  for (WorldId i = 1; i <= L; ++i)
    for (WorldId j = 0; j < i; ++j) rel.emplace(chain(i), chain(j));
  for (WorldId i = 0; i <= L; ++i) rel.emplace(0, chain(i));
  rel.emplace(0, r);
  out.rel = transitive_closure(rel);

  for (const auto& [w, id] : in_m) copy_row(out, id, m, w, vars);
  for (const auto& [w, id] : in_m0) copy_row(out, id, m0, w, vars);
  for (WorldId i = 0; i <= L; ++i) copy_row(out, i, m0, m0.root, vars);  // r* and the chain

  if (auto bad = validate_frame(out); !bad.empty()) throw std::logic_error("merged frame is not a GL-frame");

  cert.landmarks["r*"] = 0;
  cert.landmarks["r"] = r;
  cert.landmarks["r_0"] = r0;
  for (WorldId i = 1; i <= L; ++i) cert.landmarks["r_" + std::to_string(i)] = i;

  ClaimChecker check(cert);
  const Formula box_a = Formula::box(a);
  check.check(r, "r", box_a_not_a(a), true);
  check.check(r0, "r_0", rf_box_a(a), true);
  for (WorldId i = 1; i <= L; ++i)
    for (const Formula& b : subformulas(box_a))
      check.check(i, "r_" + std::to_string(i), b, check.forces(r0, b));
  check.check(0, "r*", Formula::box(box_a), true);
  check.check(0, "r*", box_a, false);
  check.check(0, "r*", diamond_n(chain_len, Formula::top()), true);
  check.check(0, "r*", Formula::imp(Formula::box(box_a), box_a), false);
  return cert;
}

namespace {

MergeCertificate two_branch(const KripkeModel& m0, const KripkeModel& m1, const std::set<std::string>& extra_vars) {
  std::set<std::string> vars = extra_vars;
  vars.merge(model_variables(m0));
  vars.merge(model_variables(m1));

  MergeCertificate cert;
  KripkeModel& out = cert.model;
  out.root = 0;
  std::set<WorldId> ids{0};
  Relation rel;

  const KripkeModel* parts[2] = {&m0, &m1};
  for (int i = 0; i < 2; ++i) {
    const KripkeModel& mi = *parts[i];
    std::map<WorldId, WorldId> code;
    int j = 1;
    for (WorldId w : root_first(mi)) code[w] = pair_id(i, j++);
    const WorldId base = pair_id(i, 0);
    ids.insert(base);
    rel.emplace(0, base);
    for (const auto& [w, id] : code) {
      ids.insert(id);
      rel.emplace(0, id);
      rel.emplace(base, id);
      copy_row(out, id, mi, w, vars);
    }
    for (const auto& [x, y] : mi.rel) rel.emplace(code.at(x), code.at(y));
    copy_row(out, base, mi, mi.root, vars);
    cert.landmarks[pair_label(base)] = base;
    cert.landmarks[pair_label(pair_id(i, 1))] = pair_id(i, 1);
  }
  for (const auto& v : vars) out.val[0][v] = true;
  out.worlds.assign(ids.begin(), ids.end());
  out.rel = transitive_closure(rel);
  cert.landmarks["0"] = 0;
  if (auto bad = validate_frame(out); !bad.empty()) throw std::logic_error("merged frame is not a GL-frame");
  return cert;
}

}  // namespace

MergeCertificate merge_mt(const KripkeModel& m0, const KripkeModel& m1, const Formula& a) {
  const Formula low = Formula::conj(box_n(cx(a) + 1, Formula::bot()), Formula::neg(a));
  const Formula high = Formula::conj(big_and(rf(Formula::neg(Formula::box(a)))), Formula::box(a));
  require_root(m0, low, "m0");
  require_root(m1, high, "m1");

  MergeCertificate cert = two_branch(m0, m1, variables(a));
  ClaimChecker check(cert);
  check.check(pair_id(0, 1), "<0,1>", low, true);
  check.check(pair_id(1, 1), "<1,1>", high, true);
  return cert;
}

MergeCertificate merge_mt4(const KripkeModel& m0, const KripkeModel& m1, const Formula& a, unsigned s) {
  const Formula height = Formula::conj(box_n(s + 1, Formula::bot()), diamond_n(s, Formula::top()));
  const Formula low = Formula::conj(height, Formula::neg(Formula::box(a)));
  const Formula high = Formula::conj(height, Formula::box(a));
  require_root(m0, low, "m0");
  require_root(m1, high, "m1");

  MergeCertificate cert = two_branch(m0, m1, variables(a));
  ClaimChecker check(cert);
  check.check(pair_id(0, 1), "<0,1>", low, true);
  check.check(pair_id(1, 1), "<1,1>", high, true);
  return cert;
}

KripkeModel chain_extend(const KripkeModel& m, unsigned target_s) {
  const ModelChecker checker(m);
  const unsigned d = static_cast<unsigned>(checker.height(m.root));
  if (d > target_s)
    throw ImpossibleExtension("root already has height " + std::to_string(d) + " > " + std::to_string(target_s));

  KripkeModel out = m;
  const std::set<std::string> vars = model_variables(m);
  std::vector<WorldId> above = m.worlds;
  WorldId fresh = m.worlds.empty() ? 0 : *std::max_element(m.worlds.begin(), m.worlds.end()) + 1;
  for (unsigned k = d; k < target_s; ++k) {
    const WorldId w = fresh++;
    for (WorldId x : above) out.rel.emplace(w, x);
    copy_row(out, w, m, m.root, vars);
    out.worlds.push_back(w);
    above.push_back(w);
    out.root = w;
  }

  const Formula want = Formula::conj(box_n(target_s + 1, Formula::bot()), diamond_n(target_s, Formula::top()));
  if (!model_forces_at_root(out, want)) throw std::logic_error("chain_extend result fails its height claim");
  return out;
}

}  // namespace fghlab
