#include "fghlab/json_io.hpp"

#include <fstream>
#include <sstream>

namespace fghlab {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

unsigned natural(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw InvalidInput(std::string(what) + " must be a non-negative integer");
  return j.get<unsigned>();
}

WorldId world_id(const Json& j) {
  if (!j.is_number_integer()) throw InvalidInput("world ids must be integers");
  return j.get<WorldId>();
}

WorldId world_key(const std::string& key) {
  std::size_t used = 0;
  WorldId w = 0;
  try {
    w = std::stoi(key, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != key.size() || key.empty()) throw InvalidInput("valuation key '" + key + "' is not a world id");
  return w;
}

bool bit(const Json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer() && (j.get<int>() == 0 || j.get<int>() == 1)) return j.get<int>() == 1;
  throw InvalidInput("truth values must be 0, 1, true or false");
}

Position position(const Json& j, const char* what) {
  if (j.is_null()) return std::nullopt;
  return natural(j, what);
}

Formula formula_field(const Json& j, const char* key) {
  const Json& f = field(j, key);
  if (!f.is_string()) throw InvalidInput(std::string(key) + " must be a formula string");
  return parse_formula(f.get<std::string>());
}

}  // namespace

Json model_to_json(const KripkeModel& m) {
  Json j;
  j["worlds"] = m.worlds;
  Json rel = Json::array();
  for (const auto& [a, b] : m.rel) rel.push_back({a, b});
  j["rel"] = std::move(rel);
  j["root"] = m.root;
  Json val = Json::object();
  for (const auto& [w, row] : m.val) {
    Json r = Json::object();
    for (const auto& [v, b] : row) r[v] = b ? 1 : 0;
    val[std::to_string(w)] = std::move(r);
  }
  j["val"] = std::move(val);
  return j;
}

KripkeModel model_from_json(const Json& j) {
  KripkeModel m;
  const Json& worlds = field(j, "worlds");
  if (!worlds.is_array()) throw InvalidInput("worlds must be an array");
  for (const auto& w : worlds) m.worlds.push_back(world_id(w));
  std::sort(m.worlds.begin(), m.worlds.end());

  const Json& rel = field(j, "rel");
  if (!rel.is_array()) throw InvalidInput("rel must be an array of pairs");
  for (const auto& p : rel) {
    if (!p.is_array() || p.size() != 2) throw InvalidInput("rel must be an array of pairs");
    m.rel.emplace(world_id(p[0]), world_id(p[1]));
  }
  m.root = world_id(field(j, "root"));

  if (j.contains("val")) {
    const Json& val = j.at("val");
    if (!val.is_object()) throw InvalidInput("val must be an object");
    for (const auto& [key, row] : val.items()) {
      if (!row.is_object()) throw InvalidInput("val entries must be objects");
      auto& out = m.val[world_key(key)];
      for (const auto& [v, b] : row.items()) {
        (void)Formula::var(v);
        out[v] = bit(b);
      }
    }
  }
  return m;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

KripkeModel read_model_file(const std::string& path) { return model_from_json(read_json_file(path)); }

Json verdict_to_json(const Formula& f, const Verdict& v) {
  Json j;
  j["formula"] = print_formula(f);
  if (v.is_proved()) {
    j["verdict"] = "PROVED";
    const auto& t = v.trace();
    j["trace"] = {{"expansions", t.expansions},
                  {"closure_size", t.closure_size},
                  {"boxed", t.boxed},
                  {"worlds_tried", t.worlds_tried}};
  } else {
    j["verdict"] = "REFUTED";
    j["countermodel"] = model_to_json(v.countermodel());
  }
  return j;
}

Json report_to_json(const CheckReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) entries.push_back({{"name", e.name}, {"status", to_string(e.status)}, {"detail", e.detail}});
  return {{"ok", r.ok()}, {"entries", std::move(entries)}};
}

Json certificate_to_json(const MergeCertificate& c) {
  Json claims = Json::array();
  for (const auto& cl : c.checked_claims)
    claims.push_back({{"world", cl.world},
                      {"label", cl.label},
                      {"formula", print_formula(cl.formula)},
                      {"expected", cl.expected},
                      {"actual", cl.actual}});
  Json landmarks = Json::object();
  for (const auto& [k, w] : c.landmarks) landmarks[k] = w;
  return {{"model", model_to_json(c.model)}, {"landmarks", std::move(landmarks)}, {"checked_claims", std::move(claims)}};
}

Json bounded_to_json(const BoundedResult& r) {
  if (r.k) return {{"result", "proved"}, {"k", *r.k}, {"k_max", r.k_max}};
  return {{"result", "unknown"}, {"k_max", r.k_max}};
}

Json nontrifling_to_json(const Formula& a, const NontriflingReport& r) {
  Json j;
  j["formula"] = print_formula(a);
  j["verdict"] = r.verdict;
  j["char2"] = {{"glw_box", r.char2.glw_box}, {"glw_negbox", r.char2.glw_negbox}};
  j["char3"] = {{"gls_box", r.char3.gls_box}, {"gls_negbox", r.char3.gls_negbox}};
  j["char4"] = {{"s_used", r.char4.s_used}, {"nfs_box", r.char4.nfs_box}, {"nfs_negbox", r.char4.nfs_negbox}};
  j["char5"] = {{"gl_a", r.char5.gl_a}, {"gl_rf_negbox", r.char5.gl_rf_negbox}};
  j["char1_bounded"] = bounded_to_json(r.char1_bounded);
  j["consistent"] = r.consistent();
  return j;
}

Json position_to_json(Position p) { return p ? Json(*p) : Json(nullptr); }

Json solovay_run_to_json(const SolovayRun& run) {
  Json j;
  j["trajectory"] = run.trajectory;
  j["limit"] = run.limit;
  j["limit_label"] = pair_label(run.limit);
  j["trigger"] = {{"kind", to_string(run.trigger.kind)}};
  if (run.trigger.kind != Trigger::Kind::None) j["trigger"]["stage"] = run.trigger.stage;
  j["unstable"] = run.unstable;
  return j;
}

Json rosser_run_to_json(const RosserRun& run) {
  Json outs = Json::array();
  for (const Tag& t : run.outputs) outs.push_back(to_string(t));
  Json j;
  j["outputs"] = std::move(outs);
  j["pr_rosser_phi"] = run.pr_rosser_phi;
  j["pr_rosser_not_phi"] = run.pr_rosser_not_phi;
  j["gate_stage"] = run.gate_stage ? Json(*run.gate_stage) : Json(nullptr);
  j["gated_tag"] = run.gated_tag ? Json(to_string(*run.gated_tag)) : Json(nullptr);
  return j;
}

SolovayScenario solovay_scenario_from_json(const Json& j) {
  SolovayScenario s;
  s.model = model_from_json(field(j, "model"));
  s.formula = formula_field(j, "formula");
  s.sigma_pos = position(field(j, "sigma_pos"), "sigma_pos");
  s.fa_proof_pos = position(field(j, "fa_proof_pos"), "fa_proof_pos");
  s.horizon = natural(field(j, "horizon"), "horizon");
  if (j.contains("neg_lambda_proofs")) {
    const Json& n = j.at("neg_lambda_proofs");
    if (!n.is_object()) throw InvalidInput("neg_lambda_proofs must map stages to worlds");
    for (const auto& [stage, w] : n.items()) {
      const WorldId x = world_key(stage);
      if (x < 0) throw InvalidInput("stages must be non-negative");
      s.neg_lambda_proofs[static_cast<unsigned>(x)] = world_id(w);
    }
  }
  return s;
}

Json solovay_scenario_to_json(const SolovayScenario& s) {
  Json neg = Json::object();
  for (const auto& [x, w] : s.neg_lambda_proofs) neg[std::to_string(x)] = w;
  return {{"model", model_to_json(s.model)},
          {"formula", print_formula(s.formula)},
          {"sigma_pos", position_to_json(s.sigma_pos)},
          {"fa_proof_pos", position_to_json(s.fa_proof_pos)},
          {"neg_lambda_proofs", std::move(neg)},
          {"horizon", s.horizon}};
}

RosserScenario rosser_scenario_from_json(const Json& j) {
  RosserScenario s;
  s.stream = ProofStream(natural(field(j, "horizon"), "horizon"));
  s.tau0_pos = position(field(j, "tau0_pos"), "tau0_pos");
  s.tau1_pos = position(field(j, "tau1_pos"), "tau1_pos");
  if (j.contains("infinite_proofs")) {
    if (!j.at("infinite_proofs").is_boolean()) throw InvalidInput("infinite_proofs must be a boolean");
    s.stream.infinite_proofs = j.at("infinite_proofs").get<bool>();
  }
  if (j.contains("events")) {
    const Json& ev = j.at("events");
    if (!ev.is_object()) throw InvalidInput("events must map stages to tags");
    for (const auto& [stage, tag] : ev.items()) {
      const WorldId m = world_key(stage);
      if (m < 0 || static_cast<unsigned>(m) >= s.stream.horizon)
        throw InvalidInput("event stage " + stage + " is outside the horizon");
      if (!tag.is_string()) throw InvalidInput("event tags must be strings");
      s.stream.events[static_cast<unsigned>(m)] = parse_tag(tag.get<std::string>());
    }
  }
  return s;
}

Json rosser_scenario_to_json(const RosserScenario& s) {
  Json ev = Json::object();
  for (unsigned m = 0; m < s.stream.events.size(); ++m)
    if (s.stream.events[m]) ev[std::to_string(m)] = to_string(*s.stream.events[m]);
  return {{"horizon", s.stream.horizon},
          {"events", std::move(ev)},
          {"tau0_pos", position_to_json(s.tau0_pos)},
          {"tau1_pos", position_to_json(s.tau1_pos)},
          {"infinite_proofs", s.stream.infinite_proofs}};
}

}  // namespace fghlab
