// One-shot reproduction experiments and their records.
//
// Every experiment takes a flat JSON object of parameters (defaults below,
// overridable from a config file or the command line) and returns a record
// whose measured and bound values are exact "num/den" strings.

#ifndef ORDMATCH_REPRODUCE_H_
#define ORDMATCH_REPRODUCE_H_

#include <string>
#include <vector>

#include "ordmatch/json_io.h"

namespace ordmatch {

struct ReproductionRecord {
  std::string experiment;
  Json params = Json::object();
  std::string measured;
  std::string bound;
  bool pass = false;
  double wall_ms = 0;
  Json details = Json::object();

  friend bool operator==(const ReproductionRecord&, const ReproductionRecord&) = default;
};

// Experiment ids in a fixed order.
const std::vector<std::string>& experiment_ids();

// Built-in parameter defaults, keyed by experiment id.
Json default_reproduce_config();

// Defaults overlaid with `config[id]` and then with `overrides`. Throws
// InvalidInput on an unknown id or an unknown parameter name.
Json experiment_params(const std::string& id, const Json& config, const Json& overrides);

ReproductionRecord run_experiment(const std::string& id, const Json& params);

Json record_to_json(const ReproductionRecord& r);
ReproductionRecord record_from_json(const Json& j);

// Header row plus one row per record. Columns:
// experiment,params,measured,bound,pass,wall_ms
std::string records_to_csv(const std::vector<ReproductionRecord>& records);
std::string records_to_json_text(const std::vector<ReproductionRecord>& records);

}  // namespace ordmatch

#endif  // ORDMATCH_REPRODUCE_H_
