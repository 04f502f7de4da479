#include "ordmatch/json_io.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ordmatch {
namespace {

Json rational_matrix(int rows, int cols, const auto& at) {
  Json out = Json::array();
  for (int i = 0; i < rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < cols; ++j) row.push_back(at(i, j).str());
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::vector<Rational>> matrix_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw InvalidInput(std::string(what) + " must be an array of rows");
  std::vector<std::vector<Rational>> out;
  for (const auto& row : j) {
    if (!row.is_array()) throw InvalidInput(std::string(what) + " rows must be arrays");
    std::vector<Rational> r;
    for (const auto& v : row) r.push_back(rational_from_json(v));
    out.push_back(std::move(r));
  }
  return out;
}

int size_field(const Json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer()) throw InvalidInput("missing integer field n");
  const int n = j["n"].get<int>();
  if (n < 1) throw InvalidInput("n must be positive");
  return n;
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw InvalidInput("rationals must be \"num/den\" strings or integers");
}

Json to_json(const Instance& inst) { return Json{{"n", inst.n()}, {"prefs", inst.prefs()}}; }

Json to_json(const Metric& d) {
  return Json{{"n", d.n()},
              {"dist", rational_matrix(d.points(), d.points(),
                                       [&](int x, int y) -> const Rational& { return d.at(x, y); })}};
}

Json to_json(const Matching& m) {
  Json assign = Json::object();
  for (int i = 0; i < m.n(); ++i) {
    if (m.matched(i)) assign[std::to_string(i)] = m.item_of(i);
  }
  return Json{{"n", m.n()}, {"assign", std::move(assign)}};
}

Json to_json(const FractionalMatching& p) {
  return Json{{"n", p.n()},
              {"p", rational_matrix(p.n(), p.n(),
                                    [&](int i, int j) -> const Rational& { return p.at(i, j); })}};
}

Json to_json(const DistortionReport& r) {
  Json out{{"value", r.value.str()},
           {"mechanism_cost", r.mechanism_cost.str()},
           {"opt_cost", r.opt_cost.str()},
           {"witness_opt", to_json(r.witness_opt)},
           {"witness_metric", to_json(r.witness_metric)},
           {"lps_solved", r.lps_solved}};
  if (r.strict_margin) out["strict_margin"] = r.strict_margin->str();
  return out;
}

Json to_json(const ThinnessReport& r) {
  Json cut = Json::array();
  for (std::size_t x = 0; x < r.witness_cut.size(); ++x) {
    if (r.witness_cut[x]) cut.push_back(x);
  }
  return Json{{"beta", r.beta.str()},
              {"witness_cut", std::move(cut)},
              {"crossing_edges", r.crossing_edges},
              {"crossing_weight", r.crossing_weight.str()},
              {"fundamental_cuts_only", r.fundamental_cuts_only},
              {"cuts_examined", r.cuts_examined}};
}

Json to_json(const BvnDecomposition& b) {
  Json terms = Json::array();
  for (const auto& t : b.terms) {
    terms.push_back(Json{{"weight", t.weight.str()}, {"matching", to_json(t.matching)}});
  }
  return Json{{"terms", std::move(terms)}};
}

Instance instance_from_json(const Json& j) {
  const int n = size_field(j);
  auto prefs = j.at("prefs").get<std::vector<std::vector<int>>>();
  if (static_cast<int>(prefs.size()) != n) throw InvalidInput("prefs must have n lists");
  return Instance(std::move(prefs));
}

Metric metric_from_json(const Json& j) {
  const int n = size_field(j);
  return Metric::from_matrix(n, matrix_from_json(j.at("dist"), "dist"));
}

Matching matching_from_json(const Json& j, int n) {
  if (j.contains("n")) n = size_field(j);
  const Json& assign = j.at("assign");
  if (!assign.is_object()) throw InvalidInput("assign must be an object");
  if (n < 0) n = static_cast<int>(assign.size());
  std::vector<int> items(n, Matching::kUnmatched);
  for (const auto& [key, value] : assign.items()) {
    std::size_t used = 0;
    int agent = -1;
    try {
      agent = std::stoi(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || agent < 0 || agent >= n) {
      throw InvalidInput("bad agent key in assign: " + key);
    }
    items[agent] = value.get<int>();
  }
  return Matching(std::move(items));
}

FractionalMatching fractional_from_json(const Json& j) {
  const int n = size_field(j);
  auto p = matrix_from_json(j.at("p"), "p");
  if (static_cast<int>(p.size()) != n) throw InvalidInput("p must have n rows");
  return FractionalMatching(std::move(p));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot replace " + path + ": " + ec.message());
  }
}

}  // namespace ordmatch
