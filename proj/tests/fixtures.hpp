#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "ecoidx/metrics.hpp"
#include "ecoidx/report.hpp"

#ifndef ECOIDX_DATA_DIR
#error "ECOIDX_DATA_DIR must point at the data/ directory"
#endif

namespace ecoidx::fixtures {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// sao_paulo, mexico_city or valencia
inline MetricsBundle city(const std::string& name) {
  return report::bundle_from_text(read_file(std::string(ECOIDX_DATA_DIR) + "/table3/" + name + ".json"));
}

// Every field drawn inside its metric range, with avg_collaborations <= m.
template <class Engine>
MetricsBundle random_bundle(Engine& eng, std::size_t m) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> mod(-0.5, 1.0);
  std::uniform_real_distribution<double> exc(1.0, 30.0);
  std::uniform_real_distribution<double> avg(0.0, static_cast<double>(m));
  MetricsBundle b;
  b.n_nodes = 100;
  b.n_edges = 300;
  b.global_efficiency = unit(eng);
  b.transitivity = unit(eng);
  b.clustering = unit(eng);
  b.modularity = mod(eng);
  b.core_ratio = unit(eng);
  b.avg_eccentricity = exc(eng);
  b.avg_shortest_path = std::min(*b.avg_eccentricity, exc(eng));
  b.central_point_dominance = unit(eng);
  b.rich_club = unit(eng);
  b.density = unit(eng);
  b.avg_degree = 6.0;
  b.avg_edge_weight = 1.0;
  b.avg_collaborations = avg(eng);
  return b;
}

}  // namespace ecoidx::fixtures
