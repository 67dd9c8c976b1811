#include "fghlab/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fghlab/classical.hpp"
#include "fghlab/corpus.hpp"
#include "fghlab/extensions.hpp"
#include "fghlab/fghsim.hpp"
#include "fghlab/glprover.hpp"
#include "fghlab/json_io.hpp"
#include "fghlab/kripke.hpp"
#include "fghlab/surgery.hpp"

namespace fghlab::cli {

namespace {

struct Options {
  bool json = false;
  std::uint64_t seed = 0;
  std::size_t node_budget = 0;  // 0: default or FGHLAB_NODE_BUDGET

  std::string formula;
  std::string r = "r";
  std::vector<std::string> q_vars;
  unsigned s = 0;
  unsigned chain_len = 3;
  std::string model_a, model_b, scenario, output;
  unsigned max_worlds = 3;
  std::vector<std::string> vars;
  bool count_only = false;
  std::size_t size = 5;
  std::size_t count = 10;
  int depth = -1;
};

ProverOptions prover_options(const Options& o) {
  ProverOptions p;
  if (o.node_budget != 0) {
    p.node_budget = o.node_budget;
  } else if (const char* env = std::getenv("FGHLAB_NODE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) throw InvalidInput("FGHLAB_NODE_BUDGET must be a positive integer");
    p.node_budget = static_cast<std::size_t>(v);
  }
  return p;
}

void print(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void print_report(std::ostream& out, const CheckReport& r) {
  for (const auto& e : r.entries) {
    out << to_string(e.status) << "  " << e.name;
    if (!e.detail.empty()) out << "  (" << e.detail << ")";
    out << "\n";
  }
}

void cmd_classify(const Options& o, std::ostream& out) {
  const Formula f = parse_formula(o.formula);
  const Classification c = classify(f);
  if (o.json)
    print(out, {{"formula", print_formula(f)}, {"classification", to_string(c)}});
  else
    out << to_string(c) << "\n";
}

void cmd_synthesize(const Options& o, bool lemma2, std::ostream& out) {
  const Formula a = parse_formula(o.formula);
  const std::set<std::string> qs(o.q_vars.begin(), o.q_vars.end());
  const auto bindings = lemma2 ? lemma2_synthesize(a, qs, o.r) : lemma1_synthesize(a, o.r);
  const Formula eq = synthesis_equivalence(a, bindings, o.r);
  const bool verified = classify(eq) == Classification::Tautology;
  if (o.json) {
    Json bs = Json::array();
    for (const auto& b : bindings) bs.push_back({{"variable", b.variable}, {"witness", print_formula(b.witness)}});
    print(out, {{"formula", print_formula(a)},
                {"fresh", o.r},
                {"bindings", std::move(bs)},
                {"equivalence", print_formula(eq)},
                {"verified", verified}});
    return;
  }
  for (const auto& b : bindings) out << b.variable << " := " << print_formula(b.witness) << "\n";
  out << "verified: " << yes_no(verified) << "\n";
}

void cmd_decide(const Options& o, const std::string& logic, std::ostream& out) {
  const Formula f = parse_formula(o.formula);
  const ProverOptions p = prover_options(o);
  if (logic == "gl") {
    const Verdict v = gl_proves(f, p);
    if (o.json) {
      print(out, verdict_to_json(f, v));
    } else if (v.is_proved()) {
      out << "PROVED\n";
    } else {
      out << "REFUTED\n";
      print(out, model_to_json(v.countermodel()));
    }
    return;
  }
  bool proved = false;
  if (logic == "gls") proved = gls_proves(f, p);
  else if (logic == "glw-box") proved = glw_proves_box(f, p);
  else if (logic == "glw-negbox") proved = glw_proves_negbox(f, p);
  else proved = glnfs_proves(o.s, f, p);

  if (o.json) {
    Json j{{"logic", logic}, {"formula", print_formula(f)}, {"proved", proved}};
    if (logic == "gl-nfs") j["s"] = o.s;
    print(out, j);
  } else {
    out << (proved ? "PROVED" : "NOT PROVED") << "\n";
  }
}

void cmd_nontrifling(const Options& o, std::ostream& out) {
  const Formula a = parse_formula(o.formula);
  const NontriflingReport r = nontrifling(a, prover_options(o));
  if (o.json) {
    print(out, nontrifling_to_json(a, r));
    return;
  }
  out << "nontrifling: " << yes_no(r.verdict) << "\n";
  out << "  GL_omega |- []A: " << yes_no(r.char2.glw_box) << "\n";
  out << "  GL_omega |- ![]A: " << yes_no(r.char2.glw_negbox) << "\n";
  out << "  GLS |- []A: " << yes_no(r.char3.gls_box) << ", GLS |- ![]A: " << yes_no(r.char3.gls_negbox) << "\n";
  out << "  GL+!F_" << r.char4.s_used << " |- []A: " << yes_no(r.char4.nfs_box) << ", |- ![]A: " << yes_no(r.char4.nfs_negbox)
      << "\n";
  out << "  GL |- A: " << yes_no(r.char5.gl_a) << ", GL |- /\\Rf([]A) -> ![]A: " << yes_no(r.char5.gl_rf_negbox) << "\n";
  out << "  [][]A -> []A bounded probe: ";
  if (r.char1_bounded.k)
    out << "proved with k=" << *r.char1_bounded.k << "\n";
  else
    out << "unknown up to k=" << r.char1_bounded.k_max << "\n";
}

void cmd_merge(const Options& o, const std::string& kind, std::ostream& out) {
  const KripkeModel a = read_model_file(o.model_a);
  const KripkeModel b = read_model_file(o.model_b);
  const Formula f = parse_formula(o.formula);
  MergeCertificate c = kind == "nontrifling" ? merge_nontrifling(a, b, f, o.chain_len)
                       : kind == "mt"        ? merge_mt(a, b, f)
                                             : merge_mt4(a, b, f, o.s);
  if (!o.output.empty()) {
    std::ofstream file(o.output);
    if (!file) throw InvalidInput("cannot write " + o.output);
    file << model_to_json(c.model).dump(2) << "\n";
  }
  if (o.json) {
    print(out, certificate_to_json(c));
    return;
  }
  for (const auto& cl : c.checked_claims)
    out << (cl.expected ? "forces     " : "refutes    ") << cl.label << "  " << print_formula(cl.formula) << "\n";
  out << c.checked_claims.size() << " claims checked\n";
  if (o.output.empty()) print(out, model_to_json(c.model));
}

void cmd_simulate(const Options& o, const std::string& kind, std::ostream& out) {
  const Json j = read_json_file(o.scenario);
  if (kind == "solovay") {
    const SolovayScenario s = solovay_scenario_from_json(j);
    const SolovayRun run = solovay_run(s.model, s.sigma_pos, s.fa_proof_pos, s.neg_lambda_proofs, s.horizon);
    const CheckReport rep = solovay_check(run, s.model, s.formula, s.sigma_pos, s.fa_proof_pos, s.horizon);
    if (o.json) {
      print(out, {{"run", solovay_run_to_json(run)}, {"report", report_to_json(rep)}});
      return;
    }
    out << "trajectory:";
    for (WorldId w : run.trajectory) out << " " << pair_label(w);
    out << "\nlimit: " << pair_label(run.limit) << (run.unstable ? " (unstable)" : "") << "\n";
    out << "trigger: " << to_string(run.trigger.kind);
    if (run.trigger.kind != Trigger::Kind::None) out << " at stage " << run.trigger.stage;
    out << "\n";
    print_report(out, rep);
    return;
  }
  const RosserScenario s = rosser_scenario_from_json(j);
  const RosserRun run = rosser_run(s.stream, s.tau0_pos, s.tau1_pos);
  const CheckReport rep = mtr_check(run, s.stream, s.tau0_pos, s.tau1_pos);
  if (o.json) {
    print(out, {{"run", rosser_run_to_json(run)}, {"report", report_to_json(rep)}});
    return;
  }
  out << "outputs:";
  for (const Tag& t : run.outputs) out << " " << to_string(t);
  out << "\npr_rosser_phi: " << (run.pr_rosser_phi ? 1 : 0) << "\npr_rosser_not_phi: " << (run.pr_rosser_not_phi ? 1 : 0)
      << "\n";
  print_report(out, rep);
}

void cmd_enumerate(const Options& o, std::ostream& out) {
  if (o.max_worlds > 7) throw InvalidInput("--max-worlds is limited to 7");
  const std::set<std::string> vars(o.vars.begin(), o.vars.end());
  for (const auto& v : vars) (void)Formula::var(v);
  std::size_t n = 0;
  Json models = Json::array();
  enumerate_models(o.max_worlds, vars, [&](const KripkeModel& m) {
    ++n;
    if (!o.count_only) models.push_back(model_to_json(m));
    return true;
  });
  if (o.count_only) {
    if (o.json)
      print(out, {{"count", n}});
    else
      out << n << "\n";
    return;
  }
  if (o.json) {
    print(out, models);
    return;
  }
  for (const auto& m : models) out << m.dump() << "\n";
}

void cmd_corpus(const Options& o, std::ostream& out) {
  Grammar g;
  if (!o.vars.empty()) g.vars = o.vars;
  for (const auto& v : g.vars) (void)Formula::var(v);
  FormulaGenerator gen(g, o.seed);
  const std::optional<unsigned> depth = o.depth < 0 ? std::nullopt : std::optional<unsigned>(o.depth);
  const auto fs = gen.distinct(o.count, o.size, depth);
  if (o.json) {
    Json arr = Json::array();
    for (const auto& f : fs) arr.push_back(print_formula(f));
    print(out, {{"seed", o.seed}, {"formulas", std::move(arr)}});
    return;
  }
  for (const auto& f : fs) out << print_formula(f) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Provability-logic toolkit: GL deciders, model surgery and Solovay/Rosser stream simulations",
               "fghlab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", o.json, "Emit JSON");
  app.add_option("--seed", o.seed, "Seed for randomized corpora");
  app.add_option("--node-budget", o.node_budget, "Prover expansion budget (overrides FGHLAB_NODE_BUDGET)")
      ->check(CLI::PositiveNumber);

  auto* classify_cmd = app.add_subcommand("classify", "Tautology / unsatisfiable / contingent");
  classify_cmd->add_option("formula", o.formula)->required();

  auto* synth = app.add_subcommand("synthesize", "Witness formulas making A equivalent to a fresh variable");
  synth->require_subcommand(1);
  auto* l1 = synth->add_subcommand("lemma1", "Contingent A");
  l1->add_option("formula", o.formula)->required();
  l1->add_option("--fresh", o.r, "Fresh variable");
  auto* l2 = synth->add_subcommand("lemma2", "A contingent under every assignment to the q-variables");
  l2->add_option("formula", o.formula)->required();
  l2->add_option("--q", o.q_vars, "Parameter variables")->delimiter(',');
  l2->add_option("--fresh", o.r, "Fresh variable");

  auto* decide = app.add_subcommand("decide", "Decide provability");
  decide->require_subcommand(1);
  std::map<CLI::App*, std::string> logics;
  for (const char* name : {"gl", "gls", "glw-box", "glw-negbox", "gl-nfs"}) {
    auto* c = decide->add_subcommand(name);
    c->add_option("formula", o.formula)->required();
    if (std::string(name) == "gl-nfs") c->add_option("--s", o.s, "Height parameter")->required();
    logics[c] = name;
  }
  decide->get_subcommand("gl")->description("GL, with a countermodel on failure");
  decide->get_subcommand("gls")->description("GL plus reflection");
  decide->get_subcommand("glw-box")->description("GL_omega |- []A");
  decide->get_subcommand("glw-negbox")->description("GL_omega |- ![]A");
  decide->get_subcommand("gl-nfs")->description("GL + !F_s");

  auto* nontriv = app.add_subcommand("nontrifling", "Decide GL_omega |/- [][]A -> []A with all characterizations");
  nontriv->add_option("formula", o.formula)->required();

  auto* merge = app.add_subcommand("merge", "Merge two models and check the forcing claims");
  merge->require_subcommand(1);
  std::map<CLI::App*, std::string> merges;
  for (const char* name : {"nontrifling", "mt", "mt4"}) {
    auto* c = merge->add_subcommand(name);
    c->add_option("model_a", o.model_a, "First model file")->required()->check(CLI::ExistingFile);
    c->add_option("model_b", o.model_b, "Second model file")->required()->check(CLI::ExistingFile);
    c->add_option("formula", o.formula)->required();
    c->add_option("-o,--output", o.output, "Write the merged model here");
    if (std::string(name) == "nontrifling") c->add_option("--chain-len", o.chain_len, "Chain length")->capture_default_str();
    if (std::string(name) == "mt4") c->add_option("--s", o.s, "Height parameter")->required();
    merges[c] = name;
  }

  auto* sim = app.add_subcommand("simulate", "Run a stream simulation from a scenario file");
  sim->require_subcommand(1);
  std::map<CLI::App*, std::string> sims;
  for (const char* name : {"solovay", "rosser"}) {
    auto* c = sim->add_subcommand(name);
    c->add_option("scenario", o.scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
    sims[c] = name;
  }

  auto* enumerate = app.add_subcommand("enumerate-models", "List rooted GL-models up to isomorphism");
  enumerate->add_option("--max-worlds", o.max_worlds, "Largest model size")->capture_default_str();
  enumerate->add_option("--vars", o.vars, "Variables")->delimiter(',');
  enumerate->add_flag("--count", o.count_only, "Only print the number of models");

  auto* corpus = app.add_subcommand("corpus", "Random distinct formulas (uses --seed)");
  corpus->add_option("--size", o.size, "Largest formula size")->capture_default_str();
  corpus->add_option("--count", o.count, "Number of formulas")->capture_default_str();
  corpus->add_option("--depth", o.depth, "Modal depth cap");
  corpus->add_option("--vars", o.vars, "Variables")->delimiter(',');

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (classify_cmd->parsed()) cmd_classify(o, out);
    else if (l1->parsed()) cmd_synthesize(o, false, out);
    else if (l2->parsed()) cmd_synthesize(o, true, out);
    else if (nontriv->parsed()) cmd_nontrifling(o, out);
    else if (enumerate->parsed()) cmd_enumerate(o, out);
    else if (corpus->parsed()) cmd_corpus(o, out);
    else {
      for (auto& [c, name] : logics)
        if (c->parsed()) cmd_decide(o, name, out);
      for (auto& [c, name] : merges)
        if (c->parsed()) cmd_merge(o, name, out);
      for (auto& [c, name] : sims)
        if (c->parsed()) cmd_simulate(o, name, out);
    }
  } catch (const ResourceLimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kResourceLimit;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}

}  // namespace fghlab::cli
