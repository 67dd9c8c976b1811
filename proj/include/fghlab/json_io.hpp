#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "fghlab/error.hpp"
#include "fghlab/extensions.hpp"
#include "fghlab/fghsim.hpp"
#include "fghlab/glprover.hpp"
#include "fghlab/kripke.hpp"
#include "fghlab/report.hpp"
#include "fghlab/surgery.hpp"

namespace fghlab {

using Json = nlohmann::ordered_json;

class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// {"worlds":[...],"rel":[[a,b],...],"root":r,"val":{"w":{"var":bit}}}
Json model_to_json(const KripkeModel& m);
/// Accepts 0/1 or booleans for bits. Throws InvalidInput on shape errors;
/// frame conditions are left to validate_frame.
KripkeModel model_from_json(const Json& j);
KripkeModel read_model_file(const std::string& path);

Json verdict_to_json(const Formula& f, const Verdict& v);
Json report_to_json(const CheckReport& r);
Json certificate_to_json(const MergeCertificate& c);
Json nontrifling_to_json(const Formula& a, const NontriflingReport& r);
Json bounded_to_json(const BoundedResult& r);
Json position_to_json(Position p);
Json solovay_run_to_json(const SolovayRun& run);
Json rosser_run_to_json(const RosserRun& run);

struct SolovayScenario {
  KripkeModel model;
  Formula formula = Formula::top();
  Position sigma_pos;
  Position fa_proof_pos;
  std::map<unsigned, WorldId> neg_lambda_proofs;
  unsigned horizon = 0;
};

struct RosserScenario {
  ProofStream stream;
  Position tau0_pos;
  Position tau1_pos;
};

SolovayScenario solovay_scenario_from_json(const Json& j);
Json solovay_scenario_to_json(const SolovayScenario& s);
RosserScenario rosser_scenario_from_json(const Json& j);
Json rosser_scenario_to_json(const RosserScenario& s);

Json read_json_file(const std::string& path);

}  // namespace fghlab
