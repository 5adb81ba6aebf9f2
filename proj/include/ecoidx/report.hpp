#pragma once

#include <cstdint>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ecoidx/error.hpp"
#include "ecoidx/formulas.hpp"
#include "ecoidx/metrics.hpp"
#include "ecoidx/synthgen.hpp"

namespace ecoidx::report {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "0.1.0";

// Reports carry 12 significant digits so that reruns diff cleanly.
inline double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline std::string format12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline Json number_or_null(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return round12(*v);
}

// FNV-1a over the serialized text.
inline std::string config_hash(const Json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline Json to_json(const MetricsBundle& b) {
  Json j;
  j["n_nodes"] = b.n_nodes;
  j["n_edges"] = b.n_edges;
  j["avg_shortest_path"] = number_or_null(b.avg_shortest_path);
  j["central_point_dominance"] = number_or_null(b.central_point_dominance);
  j["clustering"] = number_or_null(b.clustering);
  j["density"] = number_or_null(b.density);
  j["global_efficiency"] = number_or_null(b.global_efficiency);
  j["avg_eccentricity"] = number_or_null(b.avg_eccentricity);
  j["avg_degree"] = number_or_null(b.avg_degree);
  j["modularity"] = number_or_null(b.modularity);
  j["avg_edge_weight"] = number_or_null(b.avg_edge_weight);
  j["transitivity"] = number_or_null(b.transitivity);
  j["rich_club"] = number_or_null(b.rich_club);
  j["core_ratio"] = number_or_null(b.core_ratio);
  j["avg_collaborations"] = number_or_null(b.avg_collaborations);
  if (b.rich_club_k) j["rich_club_k"] = *b.rich_club_k;
  else j["rich_club_k"] = nullptr;
  j["avg_collaborations_fallback"] = b.avg_collaborations_fallback;
  return j;
}

namespace detail {

inline std::optional<double> opt_number(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number()) throw Error(ErrorCode::ParseError, std::string("field '") + key + "' is not a number");
  return j.at(key).get<double>();
}

inline Json parse_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, what + ": " + e.what());
  }
}

}  // namespace detail

// Missing or null fields stay empty; formulas needing them report MissingField.
inline MetricsBundle bundle_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::ParseError, "bundle must be a JSON object");
  MetricsBundle b;
  try {
    b.n_nodes = j.value("n_nodes", std::size_t{0});
    b.n_edges = j.value("n_edges", std::size_t{0});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bundle counts: ") + e.what());
  }
  b.avg_shortest_path = detail::opt_number(j, "avg_shortest_path");
  b.central_point_dominance = detail::opt_number(j, "central_point_dominance");
  b.clustering = detail::opt_number(j, "clustering");
  b.density = detail::opt_number(j, "density");
  b.global_efficiency = detail::opt_number(j, "global_efficiency");
  b.avg_eccentricity = detail::opt_number(j, "avg_eccentricity");
  b.avg_degree = detail::opt_number(j, "avg_degree");
  b.modularity = detail::opt_number(j, "modularity");
  b.avg_edge_weight = detail::opt_number(j, "avg_edge_weight");
  b.transitivity = detail::opt_number(j, "transitivity");
  b.rich_club = detail::opt_number(j, "rich_club");
  b.core_ratio = detail::opt_number(j, "core_ratio");
  b.avg_collaborations = detail::opt_number(j, "avg_collaborations");
  if (auto k = detail::opt_number(j, "rich_club_k")) b.rich_club_k = static_cast<std::size_t>(*k);
  b.avg_collaborations_fallback = j.value("avg_collaborations_fallback", false);
  return b;
}

inline MetricsBundle bundle_from_text(const std::string& text) {
  auto j = detail::parse_text(text, "bundle");
  // Fixture files may wrap the bundle with a name.
  if (j.is_object() && j.contains("bundle")) return bundle_from_json(j.at("bundle"));
  return bundle_from_json(j);
}

inline Json to_json(const SurveyMeta& s) {
  Json j;
  j["respondents"] = s.respondents;
  j["max_reportable"] = s.max_reportable;
  j["avg_collaborations"] = round12(s.avg_collaborations);
  return j;
}

inline SurveyMeta survey_from_json(const Json& j) {
  try {
    SurveyMeta s;
    s.respondents = j.at("respondents").get<std::size_t>();
    s.max_reportable = j.at("max_reportable").get<std::size_t>();
    s.avg_collaborations = j.at("avg_collaborations").get<double>();
    if (!std::isfinite(s.avg_collaborations) || s.avg_collaborations < 0.0)
      throw Error(ErrorCode::ParseError, "avg_collaborations must be finite and >= 0");
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("survey meta: ") + e.what());
  }
}

inline SurveyMeta survey_from_text(const std::string& text) {
  return survey_from_json(detail::parse_text(text, "survey meta"));
}

// { "formula": "C10", "value": x, "rescaled": y|null, "warnings": [...] }
inline Json to_json(FormulaId id, const FormulaOutcome& outcome) {
  Json j;
  j["formula"] = std::string(to_string(id));
  if (outcome.value) {
    j["value"] = number_or_null(outcome.value->value);
    if (id == FormulaId::C10 && outcome.value->value >= 0.0 && outcome.value->value <= kC10Max)
      j["rescaled"] = round12(rescale_c10(outcome.value->value));
    else
      j["rescaled"] = nullptr;
    j["warnings"] = outcome.value->warnings;
  } else {
    j["value"] = nullptr;
    j["rescaled"] = nullptr;
    j["warnings"] = Json::array();
  }
  if (outcome.error) j["error"] = outcome.error->what();
  return j;
}

inline Json indices_to_json(const std::map<FormulaId, FormulaOutcome>& all) {
  Json arr = Json::array();
  for (auto id : kAllFormulas) {
    auto it = all.find(id);
    if (it != all.end()) arr.push_back(to_json(id, it->second));
  }
  return arr;
}

inline Json to_json(const IntRange& r) { return Json::array({r.lo, r.hi}); }

inline Json to_json(const GeneratorConfig& c) {
  Json j;
  j["prob_new"] = round12(c.prob_new);
  j["connections_range"] = to_json(c.connections);
  j["respondent_cap"] = c.respondent_cap;
  j["prob_resp"] = round12(c.prob_resp);
  j["nonresp_prob"] = round12(c.nonresp_prob);
  j["nonresp_edges"] = to_json(c.nonresp_edges);
  if (c.size_bounds) j["size_bounds"] = to_json(*c.size_bounds);
  else j["size_bounds"] = nullptr;
  j["seed"] = c.seed;
  j["max_attempts"] = c.max_attempts;
  j["duplicate_retries"] = c.duplicate_retries;
  j["stop_at_size_cap"] = c.stop_at_size_cap;
  return j;
}

inline GeneratorConfig config_from_json(const Json& j) {
  try {
    GeneratorConfig c;
    c.prob_new = j.at("prob_new").get<double>();
    c.connections = {j.at("connections_range").at(0).get<std::int64_t>(),
                     j.at("connections_range").at(1).get<std::int64_t>()};
    c.respondent_cap = j.at("respondent_cap").get<std::int64_t>();
    c.prob_resp = j.at("prob_resp").get<double>();
    c.nonresp_prob = j.at("nonresp_prob").get<double>();
    c.nonresp_edges = {j.at("nonresp_edges").at(0).get<std::int64_t>(),
                       j.at("nonresp_edges").at(1).get<std::int64_t>()};
    if (j.at("size_bounds").is_null()) c.size_bounds.reset();
    else c.size_bounds = IntRange{j.at("size_bounds").at(0).get<std::int64_t>(),
                                  j.at("size_bounds").at(1).get<std::int64_t>()};
    c.seed = j.at("seed").get<std::uint64_t>();
    c.max_attempts = j.value("max_attempts", std::size_t{50});
    c.duplicate_retries = j.value("duplicate_retries", std::size_t{10});
    c.stop_at_size_cap = j.value("stop_at_size_cap", true);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("generator config: ") + e.what());
  }
}

// One manifest entry per generated graph.
inline Json manifest_entry(const SyntheticGraph& g, const std::string& file) {
  Json j;
  j["k"] = g.provenance.k;
  j["file"] = file;
  if (g.provenance.family) j["family"] = std::string(to_string(*g.provenance.family));
  else j["family"] = nullptr;
  j["seed"] = g.provenance.seed;
  j["attempts"] = g.provenance.attempts;
  j["nodes"] = g.graph.num_nodes();
  j["edges"] = g.graph.num_edges();
  j["config"] = to_json(g.config);
  j["survey"] = to_json(g.survey);
  return j;
}

}  // namespace ecoidx::report
