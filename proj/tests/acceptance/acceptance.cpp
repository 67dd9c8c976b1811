// One line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "fghlab/classical.hpp"
#include "fghlab/corpus.hpp"
#include "fghlab/extensions.hpp"
#include "fghlab/fghsim.hpp"
#include "fghlab/glprover.hpp"
#include "fghlab/surgery.hpp"
#include "support/oracles.hpp"

using namespace fghlab;

namespace {

constexpr double kProverSeconds = 120.0;   // criterion 1
constexpr double kRosserSeconds = 180.0;   // criterion 8
constexpr std::size_t kMinNontriflingCorpus = 300;
constexpr std::uint64_t kCorpusSeed = 20240917;

constexpr unsigned kSolovayHorizon = 16;
constexpr unsigned kClimbStages = 10;  // climbs scheduled at stages 0..9
constexpr unsigned kMaxClimbs = 3;

const Position kAbsent = std::nullopt;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::string secs(double s) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(1) << s << "s";
  return o.str();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::vector<Position> positions(unsigned hi) {
  std::vector<Position> out;
  for (unsigned i = 0; i <= hi; ++i) out.emplace_back(i);
  out.push_back(kAbsent);
  return out;
}

Grammar full_grammar(std::vector<std::string> vars) {
  Grammar g;
  g.vars = std::move(vars);
  g.binary.push_back(Op::Iff);
  return g;
}

// Shared between criteria 1 and 2.
struct ProverCorpus {
  std::vector<Formula> formulas;
  std::vector<Verdict> verdicts;
};

const ProverCorpus& prover_corpus() {
  static const ProverCorpus pc = [] {
    ProverCorpus c;
    c.formulas = enumerate_formulas(full_grammar({"p", "q"}), 7, 2);
    c.verdicts.reserve(c.formulas.size());
    for (const auto& f : c.formulas) c.verdicts.push_back(gl_proves(f));
    return c;
  }();
  return pc;
}

Outcome prover_vs_brute() {
  const auto t = Clock::now();
  const ProverCorpus& pc = prover_corpus();
  const ModelCorpus models(4, {"p", "q"});
  std::size_t proved = 0, disagree = 0, inexact = 0, largest = 0;
  for (std::size_t i = 0; i < pc.formulas.size(); ++i) {
    const Verdict& v = pc.verdicts[i];
    const bool brute = gl_proves_brute(pc.formulas[i], models);
    if (v.is_proved()) {
      ++proved;
      if (!brute) ++disagree;
      continue;
    }
    const std::size_t w = v.countermodel().worlds.size();
    largest = std::max(largest, w);
    // Brute force misses only countermodels larger than its bound.
    if (brute) (w <= 4 ? disagree : inexact)++;
  }
  const double elapsed = since(t);
  std::ostringstream d;
  d << pc.formulas.size() << " formulas vs " << models.size() << " models (<=4 worlds): " << proved << " proved, "
    << disagree << " disagreements, " << inexact << " beyond the brute-force bound, largest countermodel " << largest
    << " worlds, " << secs(elapsed) << " (limit " << secs(kProverSeconds) << ")";
  return {disagree == 0 && elapsed < kProverSeconds, d.str()};
}

Outcome countermodel_bound() {
  const ProverCorpus& pc = prover_corpus();
  std::size_t refuted = 0, bad = 0;
  for (std::size_t i = 0; i < pc.formulas.size(); ++i) {
    const Verdict& v = pc.verdicts[i];
    if (v.is_proved()) continue;
    ++refuted;
    const Formula& f = pc.formulas[i];
    const KripkeModel& m = v.countermodel();
    const bool ok = validate_frame(m).empty() && oracle::is_gl_model(m) && !oracle::forces(m, m.root, f) &&
                    oracle::forces(m, m.root, box_n(cx(f) + 1, Formula::bot()));
    if (!ok) ++bad;
  }
  std::ostringstream d;
  d << refuted << " refuted instances, " << refuted - bad << " with a valid countermodel forcing []^{cx+1}#f";
  return {bad == 0 && refuted > 0, d.str()};
}

std::vector<Formula> nontrifling_corpus() {
  FormulaGenerator gen(Grammar{}, kCorpusSeed);
  auto fs = gen.distinct(400, 8, 2);
  const auto small = enumerate_formulas(Grammar{}, 4, 2);
  fs.insert(fs.end(), small.begin(), small.end());
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  return fs;
}

Outcome characterizations_agree() {
  const auto fs = nontrifling_corpus();
  std::size_t disagree = 0, nontriv = 0, probe_contradicts = 0;
  for (const auto& a : fs) {
    const NontriflingReport r = nontrifling(a);
    if (!r.consistent()) ++disagree;
    if (r.verdict) ++nontriv;
    // A bounded proof of [][]a -> []a means a is trifling.
    if (r.char1_bounded.proved() && r.verdict) ++probe_contradicts;
    if (r.char4.s_used != cx(a) + 1) ++disagree;
  }
  std::ostringstream d;
  d << fs.size() << " formulas (" << nontriv << " nontrifling): " << disagree << " disagreements among the four "
    << "characterizations, " << probe_contradicts << " contradicted by the bounded probe";
  return {fs.size() >= kMinNontriflingCorpus && disagree == 0 && probe_contradicts == 0, d.str()};
}

Outcome contingent_iff_nontrifling() {
  const auto t = Clock::now();
  Grammar g = Grammar::box_free({"p", "q"});
  g.binary.push_back(Op::Iff);
  const auto fs = enumerate_formulas(g, 8);
  std::size_t disagree = 0, contingent = 0;
  for (const auto& f : fs) {
    const bool c = oracle::contingent(f);
    contingent += c;
    if (c != nontrifling(f).verdict) ++disagree;
  }
  std::ostringstream d;
  d << fs.size() << " box-free formulas over {p,q} up to size 8 (" << contingent << " contingent): " << disagree
    << " disagreements, " << secs(since(t));
  return {disagree == 0, d.str()};
}

std::map<std::string, Formula> as_map(const std::vector<Binding>& bs) {
  std::map<std::string, Formula> m;
  for (const auto& b : bs) m.emplace(b.variable, b.witness);
  return m;
}

Outcome synthesizers_verify() {
  const auto t = Clock::now();
  Grammar g1 = Grammar::box_free({"p", "q", "s"});
  g1.constants = false;
  g1.binary.push_back(Op::Iff);
  std::size_t n1 = 0, bad1 = 0;
  for (const auto& a : enumerate_formulas(g1, 9)) {
    if (!oracle::contingent(a)) continue;
    ++n1;
    if (!oracle::synthesis_holds(a, as_map(lemma1_synthesize(a, "r")), {}, "r")) ++bad1;
  }

  Grammar g2 = Grammar::box_free({"p", "q", "s", "t"});
  g2.binary.push_back(Op::Iff);
  std::size_t n2 = 0, bad2 = 0, rejected = 0;
  for (const auto& a : enumerate_formulas(g2, 7)) {
    const auto vars = variables(a);
    const std::vector<std::string> vs(vars.begin(), vars.end());
    for (unsigned mask = 0; mask < (1u << vs.size()); ++mask) {
      std::set<std::string> q;
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (mask >> i & 1u) q.insert(vs[i]);
      const std::size_t np = vs.size() - q.size();
      if (np == 0 || np > 2 || q.size() > 2) continue;
      // Qualifying: contingent under every constant assignment to q.
      bool qualifies = true;
      for (const auto& qa : oracle::assignments(q)) {
        Substitution sub;
        for (const auto& [v, bit] : qa) sub.emplace(v, truth_constant(bit));
        if (!oracle::contingent(substitute(a, sub))) {
          qualifies = false;
          break;
        }
      }
      if (qualifies != theorem2_condition(a, q).holds) ++bad2;
      if (!qualifies) {
        ++rejected;
        continue;
      }
      ++n2;
      if (!oracle::synthesis_holds(a, as_map(lemma2_synthesize(a, q, "r")), q, "r")) ++bad2;
    }
  }
  std::ostringstream d;
  d << n1 << " contingent formulas over <=3 variables (size <=9): " << n1 - bad1 << " verified; " << n2
    << " qualifying (formula, q-split) pairs over <=2+2 variables (size <=7): " << n2 - bad2 << " verified, "
    << rejected << " splits correctly rejected; " << secs(since(t));
  return {bad1 == 0 && bad2 == 0 && n1 > 0 && n2 > 0, d.str()};
}

KripkeModel dead_end(bool p) { return {{0}, {}, 0, {{0, {{"p", p}}}}}; }
KripkeModel two_chain(bool p_top) { return {{0, 1}, {{0, 1}}, 0, {{0, {{"p", false}}}, {1, {{"p", p_top}}}}}; }

struct CertTally {
  std::size_t certificates = 0, claims = 0, bad = 0;

  void check(const std::function<MergeCertificate()>& make) {
    ++certificates;
    try {
      const MergeCertificate c = make();
      if (!validate_frame(c.model).empty() || !oracle::is_gl_model(c.model) || c.checked_claims.empty()) ++bad;
      for (const auto& cl : c.checked_claims) {
        ++claims;
        if (cl.expected != cl.actual || oracle::forces(c.model, cl.world, cl.formula) != cl.expected) ++bad;
      }
    } catch (const Error&) {
      ++bad;
    }
  }
};

Outcome surgery_certificates() {
  CertTally tally;
  std::size_t tlem = 0, tlem_bad = 0;
  const Formula a = parse_formula("[]p -> p");
  for (unsigned len = 0; len <= 5; ++len) {
    tally.check([&] { return merge_nontrifling(two_chain(true), dead_end(true), a, len); });
    // Every r_i agrees with r_0 on Sub([]a).
    const auto c = merge_nontrifling(two_chain(true), dead_end(true), a, len);
    const WorldId r0 = c.landmarks.at("r_0");
    for (unsigned i = 1; i <= len; ++i) {
      const WorldId ri = c.landmarks.at("r_" + std::to_string(i));
      for (const auto& b : subformulas(Formula::box(a))) {
        ++tlem;
        if (oracle::forces(c.model, ri, b) != oracle::forces(c.model, r0, b)) ++tlem_bad;
      }
    }
  }
  tally.check([&] { return merge_mt(two_chain(true), dead_end(true), a); });
  tally.check([&] { return merge_mt4(two_chain(false), two_chain(true), parse_formula("p"), 1); });

  std::size_t inputs = 0;
  for (const auto& f : nontrifling_corpus()) {
    if (!nontrifling(f).verdict) continue;
    ++inputs;
    const Formula box = Formula::box(f);
    const Verdict refute_a = gl_proves(f);
    const Verdict refute_reflection = gl_proves(Formula::imp(box, f));
    const Verdict refute_rf = gl_proves(Formula::imp(big_and(rf(box)), Formula::neg(box)));
    if (refute_a.is_proved() || refute_reflection.is_proved() || refute_rf.is_proved()) {
      ++tally.bad;
      continue;
    }
    tally.check([&] { return merge_mt(refute_a.countermodel(), refute_rf.countermodel(), f); });
    for (unsigned len = 0; len <= 5; ++len)
      tally.check([&] { return merge_nontrifling(refute_reflection.countermodel(), refute_rf.countermodel(), f, len); });

    const unsigned s = static_cast<unsigned>(cx(f)) + 1;
    const Formula height = Formula::conj(box_n(s + 1, Formula::bot()), diamond_n(s, Formula::top()));
    const Verdict m0 = gl_proves(Formula::imp(height, box));
    const Verdict m1 = gl_proves(Formula::imp(height, Formula::neg(box)));
    if (m0.is_proved() || m1.is_proved()) {
      ++tally.bad;
      continue;
    }
    tally.check([&] { return merge_mt4(m0.countermodel(), m1.countermodel(), f, s); });
  }
  std::ostringstream d;
  d << tally.certificates << " certificates (" << inputs << " nontrifling formulas as prover-fed inputs), "
    << tally.claims << " claims, " << tally.bad << " failures; chain agreement " << tlem - tlem_bad << "/" << tlem
    << " for chain lengths 0-5";
  return {tally.bad == 0 && tlem_bad == 0 && inputs > 0, d.str()};
}

Outcome witness_comparison_laws() {
  std::size_t configs = 0, ok = 0;
  for (Position x : positions(5))
    for (Position y : positions(5)) {
      ++configs;
      const bool not_both = !(wc_preceq(x, y) && wc_prec(y, x));
      const bool total = (!x && !y) || wc_preceq(x, y) || wc_prec(y, x);
      ok += not_both && total;
    }
  std::ostringstream d;
  d << ok << "/" << configs << " configurations satisfy both laws";
  return {configs == 49 && ok == configs, d.str()};
}

Outcome rosser_equivalence() {
  const auto t = Clock::now();
  const std::optional<Tag> alphabet[] = {std::nullopt, Tag::phi(), Tag::not_phi(), Tag::other_k(0)};
  std::vector<std::pair<Position, Position>> taus;
  for (Position t0 : positions(6))
    for (Position t1 : positions(6))
      if (!(t0 && t1)) taus.emplace_back(t0, t1);

  std::size_t runs = 0, fails = 0, guarded = 0, guarded_pass = 0, eq_inconclusive = 0;
  std::size_t disciplined = 0, agree_pass = 0, agree_inconclusive = 0;
  RosserRun run;
  for (unsigned h = 1; h <= 12; ++h) {
    ProofStream s(h);
    std::size_t total = 1;
    for (unsigned i = 0; i < h; ++i) total *= 4;
    for (std::size_t code = 0; code < total; ++code) {
      std::size_t c = code;
      for (unsigned i = 0; i < h; ++i, c /= 4) s.events[i] = alphabet[c % 4];
      s.infinite_proofs = false;
      s.infinite_proofs = s.satisfies_repetition();
      for (const auto& [t0, t1] : taus) {
        rosser_run_into(s, t0, t1, run);
        const MtrVerdict v = mtr_evaluate(run, s, t0, t1);
        ++runs;
        if (v.any(CheckStatus::Fail)) ++fails;
        const bool eq_pass = v.equivalence_phi == CheckStatus::Pass && v.equivalence_not_phi == CheckStatus::Pass;
        if (run.gate_stage || (!t0 && !t1)) {
          ++guarded;
          guarded_pass += eq_pass;
        } else if (!eq_pass) {
          ++eq_inconclusive;
        }
        if (s.infinite_proofs) {
          ++disciplined;
          const bool agree = v.outputs_sound == CheckStatus::Pass && v.outputs_complete == CheckStatus::Pass;
          agree_pass += agree;
          agree_inconclusive += !agree && v.outputs_sound != CheckStatus::Fail && v.outputs_complete != CheckStatus::Fail;
        }
      }
    }
  }
  const double elapsed = since(t);
  std::ostringstream d;
  d << runs << " runs (horizon 1-12, " << taus.size() << " tau configurations): " << fails << " failures; "
    << "equivalence " << guarded_pass << "/" << guarded << " where the gate decides, " << eq_inconclusive
    << " undecided within the horizon; output/proof agreement on " << disciplined << " disciplined runs: " << agree_pass << " pass, "
    << agree_inconclusive << " undecided; " << secs(elapsed) << " (limit " << secs(kRosserSeconds) << ")";
  return {fails == 0 && guarded_pass == guarded && elapsed < kRosserSeconds, d.str()};
}

// Every map from at most kMaxClimbs stages in [0, kClimbStages) to worlds.
void climb_schedules(const std::vector<WorldId>& worlds, const std::function<void(const std::map<unsigned, WorldId>&)>& f) {
  std::map<unsigned, WorldId> sched;
  std::function<void(unsigned)> rec = [&](unsigned from) {
    f(sched);
    if (sched.size() == kMaxClimbs) return;
    for (unsigned st = from; st < kClimbStages; ++st)
      for (WorldId w : worlds) {
        sched[st] = w;
        rec(st + 1);
        sched.erase(st);
      }
  };
  rec(0);
}

Outcome solovay_simulation() {
  const auto t = Clock::now();
  const Formula a = parse_formula("[]p -> p");
  const KripkeModel m = merge_mt(two_chain(true), dead_end(true), a).model;
  std::size_t runs = 0, fails = 0, inconclusive = 0, schedules = 0;
  climb_schedules(m.worlds, [&](const auto&) { ++schedules; });
  for (Position sigma : positions(6))
    for (Position fa : positions(6))
      climb_schedules(m.worlds, [&](const std::map<unsigned, WorldId>& sched) {
        const SolovayRun run = solovay_run(m, sigma, fa, sched, kSolovayHorizon);
        const CheckReport rep = solovay_check(run, m, a, sigma, fa, kSolovayHorizon);
        ++runs;
        fails += rep.count(CheckStatus::Fail) > 0;
        inconclusive += rep.count(CheckStatus::Inconclusive) > 0;
      });
  std::ostringstream d;
  d << runs << " runs (64 trigger configurations x " << schedules << " climb schedules, horizon " << kSolovayHorizon
    << "): " << fails << " with failures, " << inconclusive << " with an unsettled limit; " << secs(since(t));
  return {fails == 0 && m.worlds.size() == 6, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria = {
      {"GL prover agrees with brute force", prover_vs_brute},
      {"countermodels are GL-models of bounded height", countermodel_bound},
      {"nontrifling characterizations agree", characterizations_agree},
      {"contingent iff nontrifling on box-free formulas", contingent_iff_nontrifling},
      {"synthesized witnesses verify", synthesizers_verify},
      {"merge certificates hold", surgery_certificates},
      {"witness comparison laws", witness_comparison_laws},
      {"Rosser reordering equivalence", rosser_equivalence},
      {"Solovay limit checks", solovay_simulation},
  };
  const auto t = Clock::now();
  bool all = true;
  int n = 0;
  for (const auto& [name, fn] : criteria) {
    ++n;
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << ": " << name << ": " << o.detail << std::endl;
  }
  std::cout << (all ? "all criteria pass" : "some criteria fail") << " (" << secs(since(t)) << ")" << std::endl;
  return all ? 0 : 1;
}
