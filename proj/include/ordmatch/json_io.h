// JSON encodings of the domain types. Rationals are always "num/den"
// strings.
//
//   instance   {"n": 3, "prefs": [[0, 1, 2], ...]}
//   metric     {"n": 3, "dist": [["0/1", "1/2", ...], ...]}   (2n x 2n)
//   matching   {"n": 3, "assign": {"0": 2, "1": 0, ...}}      ("n" optional)
//   fractional {"n": 3, "p": [["1/2", ...], ...]}

#ifndef ORDMATCH_JSON_IO_H_
#define ORDMATCH_JSON_IO_H_

#include <string>

#include "json.hpp"
#include "ordmatch/core.h"
#include "ordmatch/distortion.h"
#include "ordmatch/thin.h"

namespace ordmatch {

using Json = nlohmann::ordered_json;

Json to_json(const Instance& inst);
Json to_json(const Metric& d);
Json to_json(const Matching& m);
Json to_json(const FractionalMatching& p);
Json to_json(const DistortionReport& r);
Json to_json(const ThinnessReport& r);
Json to_json(const BvnDecomposition& b);

Instance instance_from_json(const Json& j);
Metric metric_from_json(const Json& j);
// `n` sizes the matching when the document has no "n" field.
Matching matching_from_json(const Json& j, int n = -1);
FractionalMatching fractional_from_json(const Json& j);

Rational rational_from_json(const Json& j);

// Throws std::runtime_error with the path on I/O or parse failure.
Json read_json_file(const std::string& path);
// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace ordmatch

#endif  // ORDMATCH_JSON_IO_H_
