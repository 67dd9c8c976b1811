#include "fghlab/fghsim.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include <boost/container/small_vector.hpp>

#include "fghlab/surgery.hpp"

namespace fghlab {

bool wc_preceq(Position mu_phi, Position mu_psi) noexcept {
  return mu_phi.has_value() && (!mu_psi.has_value() || *mu_phi <= *mu_psi);
}

bool wc_prec(Position mu_phi, Position mu_psi) noexcept {
  return mu_phi.has_value() && (!mu_psi.has_value() || *mu_phi < *mu_psi);
}

std::string to_string(Position p) { return p ? std::to_string(*p) : "ABSENT"; }

const char* to_string(Trigger::Kind k) noexcept {
  switch (k) {
    case Trigger::Kind::None: return "none";
    case Trigger::Kind::Case1: return "case1";
    case Trigger::Kind::Case2: return "case2";
  }
  return "?";
}

// ---------------------------------------------------------------------------

namespace {

void require_two_branch(const KripkeModel& m) {
  if (auto bad = validate_frame(m); !bad.empty()) throw InvalidModel(bad);
  auto has = [&](WorldId w) { return std::binary_search(m.worlds.begin(), m.worlds.end(), w); };
  if (m.root != 0 || !has(pair_id(0, 0)) || !has(pair_id(1, 0)))
    throw InvalidScenario("model lacks the root 0 and the worlds <0,0>, <1,0>");
  for (WorldId w : m.worlds) {
    if (w < 0) throw InvalidScenario("negative world id " + std::to_string(w));
    if (w != 0 && !m.rel.contains({0, w})) throw InvalidScenario("root 0 is not below " + pair_label(w));
  }
  for (const auto& [x, y] : m.rel)
    if (x != 0 && pair_branch(x) != pair_branch(y))
      throw InvalidScenario("relation crosses branches: " + pair_label(x) + " -> " + pair_label(y));
}

Position clip(Position p, unsigned horizon) { return p && *p < horizon ? p : std::nullopt; }

// Truth of b when `c` is taken to be the limit of h: a variable holds iff
// the limit forces it, and []B holds iff B holds under every limit the
// current one can still climb to.
bool limit_shadow(const KripkeModel& m, const Formula& b, WorldId c) {
  switch (b.op()) {
    case Op::Var: return m.holds(c, b.name());
    case Op::Top: return true;
    case Op::Bot: return false;
    case Op::Not: return !limit_shadow(m, b.lhs(), c);
    case Op::And: return limit_shadow(m, b.lhs(), c) && limit_shadow(m, b.rhs(), c);
    case Op::Or: return limit_shadow(m, b.lhs(), c) || limit_shadow(m, b.rhs(), c);
    case Op::Imp: return !limit_shadow(m, b.lhs(), c) || limit_shadow(m, b.rhs(), c);
    case Op::Iff: return limit_shadow(m, b.lhs(), c) == limit_shadow(m, b.rhs(), c);
    case Op::Box:
      for (auto it = m.rel.lower_bound({c, std::numeric_limits<WorldId>::min()}); it != m.rel.end() && it->first == c;
           ++it)
        if (!limit_shadow(m, b.lhs(), it->second)) return false;
      return true;
  }
  return false;
}

}  // namespace

SolovayRun solovay_run(const KripkeModel& model, Position sigma_pos, Position fa_proof_pos,
                       const std::map<unsigned, WorldId>& neg_lambda_proofs, unsigned horizon) {
  require_two_branch(model);
  for (const auto& [x, a] : neg_lambda_proofs)
    if (!std::binary_search(model.worlds.begin(), model.worlds.end(), a)) throw UnknownWorld(a);

  SolovayRun run;
  run.trajectory.assign(horizon + 1, 0);
  const unsigned window = static_cast<unsigned>(model.worlds.size());
  Position fire;
  if (sigma_pos || fa_proof_pos) fire = std::min(sigma_pos.value_or(~0U), fa_proof_pos.value_or(~0U));

  for (unsigned x = 0; x < horizon; ++x) {
    WorldId& next = run.trajectory[x + 1];
    const WorldId cur = run.trajectory[x];
    if (run.trigger.kind == Trigger::Kind::None) {
      if (fire && *fire == x) {
        // A proof at x wins over a sigma witness at the same stage.
        const bool case1 = fa_proof_pos && *fa_proof_pos == x;
        run.trigger = {case1 ? Trigger::Kind::Case1 : Trigger::Kind::Case2, x};
        next = pair_id(case1 ? 0 : 1, 0);
      } else {
        next = 0;
      }
      continue;
    }
    next = cur;
    if (auto it = neg_lambda_proofs.find(x); it != neg_lambda_proofs.end() && model.rel.contains({cur, it->second})) {
      next = it->second;
      if (x + window >= horizon) run.unstable = true;
    }
  }
  run.limit = run.trajectory.back();
  return run;
}

CheckReport solovay_check(const SolovayRun& run, const KripkeModel& model, const Formula& a, Position sigma_pos,
                          Position fa_proof_pos, unsigned horizon) {
  CheckReport report;
  const WorldId w = run.limit;
  const bool in0 = w != 0 && pair_branch(w) == 0;
  const bool in1 = w != 0 && pair_branch(w) == 1;
  const bool case1 = run.trigger.kind == Trigger::Kind::Case1;
  const bool case2 = run.trigger.kind == Trigger::Kind::Case2;
  const std::string where = "limit " + pair_label(w) + ", trigger " + to_string(run.trigger.kind);

  report.add("branch0_iff_case1", in0 == case1 ? CheckStatus::Pass : CheckStatus::Fail, where);
  report.add("branch1_iff_case2", in1 == case2 ? CheckStatus::Pass : CheckStatus::Fail, where);

  const Position s = clip(sigma_pos, horizon);
  const Position f = clip(fa_proof_pos, horizon);
  const bool order_ok = case1 == wc_preceq(f, s) && case2 == wc_prec(s, f);
  report.add("trigger_witness_order", order_ok ? CheckStatus::Pass : CheckStatus::Fail,
             "sigma " + to_string(s) + ", proof " + to_string(f));

  if (w == 0 || pair_level(w) < 1) {
    report.add("limit_forcing", CheckStatus::Pass, "limit at level 0");
  } else if (run.unstable) {
    report.add("limit_forcing", CheckStatus::Inconclusive, "trajectory still moving near the horizon");
  } else {
    const ModelChecker checker(model);
    std::string bad;
    for (const Formula& b : subformulas(Formula::box(a)))
      if (checker.forces(w, b) != limit_shadow(model, b, w)) {
        bad = print_formula(b);
        break;
      }
    report.add("limit_forcing", bad.empty() ? CheckStatus::Pass : CheckStatus::Fail,
               bad.empty() ? where : "disagrees on " + bad);
  }
  return report;
}

// ---------------------------------------------------------------------------

std::string to_string(Tag t) {
  switch (t.kind) {
    case Tag::Kind::Phi: return "PHI";
    case Tag::Kind::NotPhi: return "NOT_PHI";
    case Tag::Kind::Fa: return "FA";
    case Tag::Kind::Other: return "OTHER(" + std::to_string(t.other) + ")";
  }
  return "?";
}

Tag parse_tag(const std::string& text) {
  if (text == "PHI") return Tag::phi();
  if (text == "NOT_PHI") return Tag::not_phi();
  if (text == "FA") return Tag::fa();
  if (text.size() > 7 && text.starts_with("OTHER(") && text.back() == ')') {
    const std::string digits = text.substr(6, text.size() - 7);
    if (std::all_of(digits.begin(), digits.end(), [](unsigned char c) { return std::isdigit(c); }) &&
        digits.size() < 10)
      return Tag::other_k(static_cast<unsigned>(std::stoul(digits)));
  }
  throw InvalidScenario("unknown proof tag '" + text + "'");
}

namespace {

// Multiplicity of each distinct tag; streams use a handful of tags.
class TagCounts {
 public:
  void add(Tag t) {
    for (auto& [u, n] : counts_)
      if (u == t) {
        ++n;
        return;
      }
    counts_.emplace_back(t, 1U);
  }
  unsigned operator[](Tag t) const noexcept {
    for (const auto& [u, n] : counts_)
      if (u == t) return n;
    return 0;
  }
  auto begin() const noexcept { return counts_.begin(); }
  auto end() const noexcept { return counts_.end(); }

 private:
  boost::container::small_vector<std::pair<Tag, unsigned>, 8> counts_;
};

TagCounts proved_tags(const ProofStream& s) {
  TagCounts c;
  for (const auto& e : s.events)
    if (e) c.add(*e);
  return c;
}

}  // namespace

bool ProofStream::satisfies_repetition() const noexcept {
  const TagCounts c = proved_tags(*this);
  return std::all_of(c.begin(), c.end(), [](const auto& e) { return e.second >= 2; });
}

void ProofStream::validate() const {
  if (events.size() != horizon)
    throw InvalidScenario("stream has " + std::to_string(events.size()) + " slots for horizon " +
                          std::to_string(horizon));
  if (infinite_proofs && !satisfies_repetition())
    throw InvalidScenario("infinite-proofs mode needs every proved tag to be proved at least twice");
}

BothSigmaTrue::BothSigmaTrue() : Error("tau0 and tau1 are both witnessed; the two sentences must be exclusive") {}

void rosser_run_into(const ProofStream& stream, Position tau0_pos, Position tau1_pos, RosserRun& out) {
  if (tau0_pos && tau1_pos) throw BothSigmaTrue();
  stream.validate();
  out.outputs.clear();
  out.pr_rosser_phi = out.pr_rosser_not_phi = false;
  out.gate_stage.reset();
  out.gated_tag.reset();

  for (unsigned m = 0; m < stream.horizon; ++m) {
    const auto& ev = stream.events[m];
    if (!ev) continue;
    if (!ev->is_phi_pair() || out.gate_stage) {
      out.outputs.push_back(*ev);
      continue;
    }
    if (tau0_pos && *tau0_pos <= m) {
      out.outputs.push_back(Tag::phi());
    } else if (tau1_pos && *tau1_pos <= m) {
      out.outputs.push_back(Tag::not_phi());
    } else {
      continue;  // deferred
    }
    out.gate_stage = m;
    out.gated_tag = *ev;
  }
  for (const Tag& t : out.outputs) {
    if (!t.is_phi_pair()) continue;
    out.pr_rosser_phi = t.kind == Tag::Kind::Phi;
    out.pr_rosser_not_phi = t.kind == Tag::Kind::NotPhi;
    break;
  }
}

RosserRun rosser_run(const ProofStream& stream, Position tau0_pos, Position tau1_pos) {
  RosserRun out;
  rosser_run_into(stream, tau0_pos, tau1_pos, out);
  return out;
}

bool MtrVerdict::any(CheckStatus s) const noexcept {
  return equivalence_phi == s || equivalence_not_phi == s || outputs_sound == s || outputs_complete == s || exclusion == s;
}

namespace {

CheckStatus equivalence(bool sigma, bool bit, bool gate_open) {
  if (sigma == bit) return CheckStatus::Pass;
  // A witnessed sigma whose effect lies past the horizon.
  if (sigma && !gate_open) return CheckStatus::Inconclusive;
  return CheckStatus::Fail;
}

}  // namespace

MtrVerdict mtr_evaluate(const RosserRun& run, const ProofStream& stream, Position tau0_pos, Position tau1_pos) {
  MtrVerdict v;
  const bool open = run.gate_stage.has_value();
  v.equivalence_phi = equivalence(tau0_pos.has_value(), run.pr_rosser_phi, open);
  v.equivalence_not_phi = equivalence(tau1_pos.has_value(), run.pr_rosser_not_phi, open);
  v.exclusion = run.pr_rosser_phi && run.pr_rosser_not_phi ? CheckStatus::Fail : CheckStatus::Pass;

  // Output of the gate stage, if any.
  std::optional<Tag> gate_out;
  for (const Tag& t : run.outputs)
    if (t.is_phi_pair()) {
      gate_out = t;
      break;
    }

  // Outputs must be proofs, except that the gate may emit a tag the stream
  // never proves.
  const TagCounts proved = proved_tags(stream);
  TagCounts output;
  for (const Tag& t : run.outputs) output.add(t);
  unsigned excess = 0;
  bool excess_is_gate = true;
  for (const auto& [t, n] : output) {
    const unsigned p = proved[t];
    if (n > p) {
      excess += n - p;
      excess_is_gate = excess_is_gate && gate_out == t;
    }
  }
  v.outputs_sound = excess == 0 ? CheckStatus::Pass
               : excess == 1 && excess_is_gate ? CheckStatus::Inconclusive
                                                : CheckStatus::Fail;

  if (!stream.infinite_proofs || !open) {
    v.outputs_complete = CheckStatus::Inconclusive;
    return v;
  }
  for (const Tag t : {Tag::phi(), Tag::not_phi()}) {
    if (t == gate_out || proved[t] == 0) continue;
    bool later = false;
    for (unsigned m = *run.gate_stage + 1; m < stream.horizon && !later; ++m) later = stream.events[m] == t;
    if (!later) {
      v.outputs_complete = CheckStatus::Inconclusive;
      return v;
    }
  }
  v.outputs_complete = CheckStatus::Pass;
  for (const auto& [t, n] : proved)
    if (output[t] == 0) v.outputs_complete = CheckStatus::Fail;
  return v;
}

CheckReport mtr_check(const RosserRun& run, const ProofStream& stream, Position tau0_pos, Position tau1_pos) {
  const MtrVerdict v = mtr_evaluate(run, stream, tau0_pos, tau1_pos);
  const std::string bits = std::string("pr_rosser_phi=") + (run.pr_rosser_phi ? "1" : "0") +
                           ", pr_rosser_not_phi=" + (run.pr_rosser_not_phi ? "1" : "0");
  const std::string gate = run.gate_stage ? "gate at stage " + std::to_string(*run.gate_stage) : "gate never opened";

  CheckReport r;
  r.add("sigma0_iff_pr_rosser_phi", v.equivalence_phi, "tau0 " + to_string(tau0_pos) + ", " + bits + ", " + gate);
  r.add("sigma1_iff_pr_rosser_not_phi", v.equivalence_not_phi,
        "tau1 " + to_string(tau1_pos) + ", " + bits + ", " + gate);
  r.add("outputs_are_proofs", v.outputs_sound,
        v.outputs_sound == CheckStatus::Inconclusive ? "gate output is not proved inside the horizon" : "");
  std::string complete;
  if (v.outputs_complete == CheckStatus::Inconclusive)
    complete = !stream.infinite_proofs ? "infinite-proofs mode off"
               : !run.gate_stage       ? gate
                                       : "a PHI/NOT_PHI proof has no repeat after the gate";
  r.add("proofs_are_output", v.outputs_complete, complete);
  r.add("mutual_exclusion", v.exclusion, bits);
  return r;
}

}  // namespace fghlab
