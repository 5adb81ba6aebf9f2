#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ecoidx/ecoidx.hpp"

namespace ecoidx::cli {

namespace fs = std::filesystem;
using report::Json;

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kParse = 2,
  kPrecondition = 3,
  kGenerator = 4,
  kCorpus = 5,
};

namespace detail {

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

inline void emit(const std::string& out_path, const std::string& text, std::ostream& out) {
  if (out_path.empty() || out_path == "-") out << text;
  else write_text(out_path, text);
}

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::EmptyInput:
    case ErrorCode::InvalidNodeId:
    case ErrorCode::InvalidWeight:
      return kParse;
    case ErrorCode::RetryExhausted:
    case ErrorCode::BadK:
      return kGenerator;
    case ErrorCode::MissingFamily:
    case ErrorCode::BadCorpusShape:
      return kCorpus;
    case ErrorCode::BadConfig:
      return kUsage;
    default:
      return kPrecondition;
  }
}

inline std::string csv_report(const Json& bundle, const Json& indices) {
  std::ostringstream os;
  os << "name,value\n";
  for (const auto& [key, val] : bundle.items()) {
    os << key << ',';
    if (!val.is_null()) os << val.dump();
    os << '\n';
  }
  for (const auto& entry : indices) {
    os << entry["formula"].get<std::string>() << ',';
    if (!entry["value"].is_null()) os << entry["value"].dump();
    os << '\n';
    if (!entry["rescaled"].is_null()) os << entry["formula"].get<std::string>() << "_rescaled," << entry["rescaled"].dump() << '\n';
  }
  return os.str();
}

inline std::string render(const Json& report, const std::string& format) {
  if (format == "csv") return csv_report(report.at("bundle"), report.at("indices"));
  return report.dump(2) + "\n";
}

}  // namespace detail

struct MetricsArgs {
  std::string input;
  std::string nodes;
  std::string survey;
  std::size_t m = 24;
  std::string out;
  std::string format = "json";
  std::size_t core_k = 2;
  std::optional<std::size_t> rich_club_k;
};

inline int cmd_metrics(const MetricsArgs& a, std::ostream& out, std::ostream& err) {
  Json config;
  config["command"] = "metrics";
  config["input"] = a.input;
  config["nodes"] = a.nodes;
  config["survey"] = a.survey;
  config["m"] = a.m;
  config["core_k"] = a.core_k;
  if (a.rich_club_k) config["rich_club_k"] = *a.rich_club_k;
  else config["rich_club_k"] = nullptr;

  BuildResult built;
  std::optional<SurveyMeta> survey;
  try {
    auto entries = io::read_edge_list_file(a.input);
    std::vector<std::string> declared;
    if (!a.nodes.empty()) declared = io::read_node_list_file(a.nodes);
    built = from_edge_list(entries, declared);
    if (!a.survey.empty()) survey = report::survey_from_text(detail::read_text(a.survey));
  } catch (const Error& e) {
    err << "error: " << a.input << ": " << e.what() << '\n';
    return detail::exit_code_for(e.code());
  }
  if (built.loops_dropped || built.duplicates_merged)
    err << "warning: dropped " << built.loops_dropped << " self-loops, merged " << built.duplicates_merged
        << " duplicate edges\n";

  MetricsBundle bundle;
  try {
    bundle = compute_bundle(built.graph, survey, {a.core_k, a.rich_club_k});
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kPrecondition;
  }
  if (bundle.avg_collaborations_fallback)
    err << "warning: no survey metadata; avg_collaborations falls back to avg_degree\n";

  Json rep;
  rep["report"] = "metrics";
  rep["provenance"] = {{"input", a.input},
                       {"m", a.m},
                       {"tool_version", report::kToolVersion},
                       {"config_hash", report::config_hash(config)}};
  rep["build"] = {{"loops_dropped", built.loops_dropped}, {"duplicates_merged", built.duplicates_merged}};
  rep["bundle"] = report::to_json(bundle);
  rep["indices"] = report::indices_to_json(evaluate_all({bundle, a.m}));
  try {
    detail::emit(a.out, detail::render(rep, a.format), out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

struct IndexArgs {
  std::string bundle;
  std::size_t m = 24;
  std::string out;
  std::string format = "json";
};

// Evaluates every formula on a stored bundle (e.g. a published fixture).
inline int cmd_index(const IndexArgs& a, std::ostream& out, std::ostream& err) {
  MetricsBundle bundle;
  try {
    bundle = report::bundle_from_text(detail::read_text(a.bundle));
  } catch (const Error& e) {
    err << "error: " << a.bundle << ": " << e.what() << '\n';
    return kParse;
  }
  Json config;
  config["command"] = "index";
  config["bundle"] = a.bundle;
  config["m"] = a.m;

  Json rep;
  rep["report"] = "index";
  rep["provenance"] = {{"input", a.bundle},
                       {"m", a.m},
                       {"tool_version", report::kToolVersion},
                       {"config_hash", report::config_hash(config)}};
  rep["bundle"] = report::to_json(bundle);
  rep["indices"] = report::indices_to_json(evaluate_all({bundle, a.m}));
  try {
    detail::emit(a.out, detail::render(rep, a.format), out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

inline std::string graph_file_name(int k) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "k%03d.csv", k);
  return buf;
}

inline Json corpus_manifest(Family family, std::uint64_t seed, const Json& graphs) {
  Json m;
  m["family"] = std::string(to_string(family));
  m["master_seed"] = seed;
  m["tool_version"] = report::kToolVersion;
  m["graphs"] = graphs;
  return m;
}

struct SynthArgs {
  std::string family;
  int k = 100;
  std::uint64_t seed = 0;
  std::string out;
  bool literal_resp_base = false;
};

// One sweep graph plus a one-entry manifest.
inline int cmd_synth(const SynthArgs& a, std::ostream& out, std::ostream& err) {
  auto family = parse_family(a.family);
  if (!family) {
    err << "error: unknown family '" << a.family << "'\n";
    return kUsage;
  }
  if (a.k < 1 || a.k > kCorpusSize) {
    err << "error: --k must be in [1, 200]\n";
    return kUsage;
  }
  try {
    auto g = generate_sweep_graph(*family, a.k, a.seed, {a.literal_resp_base});
    const auto file = graph_file_name(a.k);
    const fs::path dir(a.out);
    detail::write_text(dir / file, io::edge_list_string(g.graph));
    detail::write_text(dir / "manifest.json",
                       corpus_manifest(*family, a.seed, Json::array({report::manifest_entry(g, file)})).dump(2) + "\n");
    out << "wrote " << (dir / file).string() << " (" << g.graph.num_nodes() << " nodes, " << g.graph.num_edges()
        << " edges)\n";
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return detail::exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

struct SweepArgs {
  std::vector<std::string> families;
  std::uint64_t seed = 0;
  std::string out;
  bool literal_resp_base = false;
};

// Full 200-graph corpora, one subdirectory per family.
inline int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<Family> families;
  if (a.families.empty()) families.assign(kAllFamilies.begin(), kAllFamilies.end());
  for (const auto& name : a.families) {
    auto f = parse_family(name);
    if (!f) {
      err << "error: unknown family '" << name << "'\n";
      return kUsage;
    }
    families.push_back(*f);
  }
  try {
    for (auto f : families) {
      auto corpus = generate_corpus(f, a.seed, {a.literal_resp_base});
      const fs::path dir = fs::path(a.out) / std::string(to_string(f));
      Json entries = Json::array();
      for (const auto& g : corpus) {
        const auto file = graph_file_name(g.provenance.k);
        detail::write_text(dir / file, io::edge_list_string(g.graph));
        entries.push_back(report::manifest_entry(g, file));
      }
      detail::write_text(dir / "manifest.json", corpus_manifest(f, a.seed, entries).dump(2) + "\n");
      out << "wrote " << corpus.size() << " graphs to " << dir.string() << '\n';
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return detail::exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kOk;
}

// Reads <dir>/<family>/manifest.json and its edge lists.
inline std::vector<SyntheticGraph> load_corpus(const fs::path& dir, Family family) {
  const auto manifest_path = dir / std::string(to_string(family)) / "manifest.json";
  if (!fs::exists(manifest_path))
    throw Error(ErrorCode::MissingFamily, "no manifest at '" + manifest_path.string() + "'");
  Json manifest;
  try {
    manifest = Json::parse(detail::read_text(manifest_path.string()));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, manifest_path.string() + ": " + e.what());
  }
  std::vector<SyntheticGraph> corpus;
  try {
    for (const auto& entry : manifest.at("graphs")) {
      SyntheticGraph g;
      const auto file = manifest_path.parent_path() / entry.at("file").get<std::string>();
      g.graph = from_edge_list(io::read_edge_list_file(file.string())).graph;
      g.survey = report::survey_from_json(entry.at("survey"));
      g.config = report::config_from_json(entry.at("config"));
      g.provenance.family = family;
      g.provenance.k = entry.at("k").get<int>();
      g.provenance.seed = entry.at("seed").get<std::uint64_t>();
      g.provenance.attempts = entry.at("attempts").get<std::size_t>();
      corpus.push_back(std::move(g));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, manifest_path.string() + ": " + e.what());
  }
  if (corpus.empty()) throw Error(ErrorCode::MissingFamily, "manifest '" + manifest_path.string() + "' lists no graphs");
  return corpus;
}

struct EvaluateArgs {
  std::string corpus;
  std::vector<std::string> formulas;
  std::vector<std::string> families;
  std::optional<std::size_t> m;
  std::string out;
};

inline Json evaluation_to_json(const CorpusEvaluation& ev) {
  Json j;
  j["m"] = ev.m;
  j["winner"] = std::string(to_string(ev.winner));
  j["aggregate"] = "mean_auc";
  Json rows = Json::array();
  for (auto id : ev.formulas) {
    Json row;
    row["formula"] = std::string(to_string(id));
    row["metric_count"] = formula_metric_count(id);
    row["mean_auc"] = report::round12(ev.mean_auc.at(id));
    Json cells;
    for (auto f : ev.families) {
      const auto& s = ev.score(id, f);
      Json cell;
      cell["auc"] = report::round12(s.auc);
      cell["kendall_tau_b"] = report::round12(s.kendall_tau_b);
      cell["spearman"] = report::round12(s.spearman);
      if (auto ref = reference_effectiveness(id, f)) cell["reference"] = *ref;
      else cell["reference"] = nullptr;
      cells[std::string(to_string(f))] = cell;
    }
    row["families"] = cells;
    rows.push_back(row);
  }
  j["scores"] = rows;
  return j;
}

inline std::string evaluation_to_csv(const CorpusEvaluation& ev) {
  std::ostringstream os;
  os << "formula";
  for (auto f : ev.families) os << ',' << to_string(f);
  os << '\n';
  for (auto id : ev.formulas) {
    os << to_string(id);
    for (auto f : ev.families) os << ',' << report::format12(ev.score(id, f).auc);
    os << '\n';
  }
  return os.str();
}

inline int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  std::vector<FormulaId> formulas;
  if (a.formulas.empty()) formulas.assign(kTournamentFormulas.begin(), kTournamentFormulas.end());
  for (const auto& name : a.formulas) {
    auto id = parse_formula_id(name);
    if (!id) {
      err << "error: unknown formula '" << name << "'\n";
      return kUsage;
    }
    formulas.push_back(*id);
  }
  std::vector<Family> families;
  if (a.families.empty()) families.assign(kAllFamilies.begin(), kAllFamilies.end());
  for (const auto& name : a.families) {
    auto f = parse_family(name);
    if (!f) {
      err << "error: unknown family '" << name << "'\n";
      return kUsage;
    }
    families.push_back(*f);
  }
  if (a.m && *a.m < 1) {
    err << "error: --m must be >= 1\n";
    return kUsage;
  }

  CorpusMap corpora;
  try {
    for (auto f : families) corpora[f] = load_corpus(a.corpus, f);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::ParseError ? kParse : kCorpus;
  }

  CorpusEvaluation ev;
  try {
    ev = evaluate_corpus(corpora, formulas, a.m, families);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return detail::exit_code_for(e.code());
  }

  try {
    const fs::path dir(a.out);
    detail::write_text(dir / "table2.csv", evaluation_to_csv(ev));
    detail::write_text(dir / "table2.json", evaluation_to_json(ev).dump(2) + "\n");
    for (const auto& [key, values] : ev.series) {
      std::ostringstream os;
      os << "k,value\n";
      for (const auto& rv : values) os << rv.k << ',' << report::format12(rv.value) << '\n';
      const auto name = "series_" + std::string(to_string(key.first)) + "_" + std::string(to_string(key.second)) + ".csv";
      detail::write_text(dir / name, os.str());
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  out << "winner: " << to_string(ev.winner) << " (mean auc " << report::format12(ev.mean_auc.at(ev.winner))
      << ", m = " << ev.m << ")\n";
  return kOk;
}

// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Collaboration-structure indices for simple undirected graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", report::kToolVersion);

  MetricsArgs metrics;
  auto* m_cmd = app.add_subcommand("metrics", "Compute the metric bundle and all indices for an edge list");
  m_cmd->add_option("input,--input", metrics.input, "Edge-list CSV (source,target[,weight])")->required();
  m_cmd->add_option("--nodes", metrics.nodes, "Node-list file declaring isolated nodes");
  m_cmd->add_option("--survey", metrics.survey, "Survey metadata JSON");
  m_cmd->add_option("--m", metrics.m, "Maximum reportable collaborations")->check(CLI::PositiveNumber);
  m_cmd->add_option("--out", metrics.out, "Output path (stdout when omitted)");
  m_cmd->add_option("--format", metrics.format)->check(CLI::IsMember({"json", "csv"}));
  m_cmd->add_option("--core-k", metrics.core_k, "k of the core ratio")->check(CLI::PositiveNumber);
  m_cmd->add_option("--rich-club-k", metrics.rich_club_k, "Degree threshold of the rich club");

  IndexArgs index;
  auto* i_cmd = app.add_subcommand("index", "Evaluate all indices on a stored metric bundle");
  i_cmd->add_option("bundle,--bundle", index.bundle, "Bundle JSON")->required();
  i_cmd->add_option("--m", index.m, "Maximum reportable collaborations")->check(CLI::PositiveNumber);
  i_cmd->add_option("--out", index.out, "Output path (stdout when omitted)");
  i_cmd->add_option("--format", index.format)->check(CLI::IsMember({"json", "csv"}));

  SynthArgs synth;
  auto* s_cmd = app.add_subcommand("synth", "Generate one sweep graph");
  s_cmd->add_option("--family", synth.family)
      ->required()
      ->check(CLI::IsMember({"new-connections", "num-responses", "respondent-range", "respondents"}));
  s_cmd->add_option("--k", synth.k)->required()->check(CLI::Range(1, kCorpusSize));
  s_cmd->add_option("--seed", synth.seed);
  s_cmd->add_option("--out", synth.out, "Output directory")->required();
  s_cmd->add_flag("--literal-resp-base", synth.literal_resp_base, "Respondent probability base 0.04");

  SweepArgs sweep;
  auto* w_cmd = app.add_subcommand("sweep", "Generate the 200-graph corpora");
  w_cmd->add_option("--families", sweep.families, "Families (default: all four)")
      ->check(CLI::IsMember({"new-connections", "num-responses", "respondent-range", "respondents"}));
  w_cmd->add_option("--seed", sweep.seed);
  w_cmd->add_option("--out", sweep.out, "Output directory")->required();
  w_cmd->add_flag("--literal-resp-base", sweep.literal_resp_base, "Respondent probability base 0.04");

  EvaluateArgs evaluate;
  auto* e_cmd = app.add_subcommand("evaluate", "Score formulas on sweep corpora");
  e_cmd->add_option("corpus,--corpus", evaluate.corpus, "Corpus directory written by sweep")->required();
  e_cmd->add_option("--formulas", evaluate.formulas, "Formula ids (default: C0..C14)");
  e_cmd->add_option("--families", evaluate.families, "Families (default: all four)");
  e_cmd->add_option("--m", evaluate.m, "Maximum reportable collaborations (default: corpus maximum)");
  e_cmd->add_option("--out", evaluate.out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kUsage;
  }

  if (m_cmd->parsed()) return cmd_metrics(metrics, out, err);
  if (i_cmd->parsed()) return cmd_index(index, out, err);
  if (s_cmd->parsed()) return cmd_synth(synth, out, err);
  if (w_cmd->parsed()) return cmd_sweep(sweep, out, err);
  if (e_cmd->parsed()) return cmd_evaluate(evaluate, out, err);
  return kUsage;
}

}  // namespace ecoidx::cli
