#pragma once

// Brute-force reference implementations used to validate the engine.
// They share only the domain types with the library code.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "roadstress/corridor_graph.hpp"

namespace oracle {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  double w = 0.0;
  std::size_t corridor = 0;
};

struct Graph {
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::vector<bool> hospital;
  std::vector<std::int64_t> population;
  std::size_t corridor_count = 0;
};

/// Plain edge list of the network with removed corridors left out.
Graph graph_of(const roadstress::CorridorNetwork& net, const roadstress::DeletionMask* mask = nullptr);

using Matrix = std::vector<std::vector<double>>;

inline constexpr std::size_t kMaxAllPairsNodes = 500;
inline constexpr std::size_t kMaxEnumerationNodes = 12;

/// Floyd-Warshall; infinity for disconnected pairs. Throws std::length_error
/// above kMaxAllPairsNodes.
Matrix all_pairs_distances(const Graph& g);

struct Nearest {
  std::vector<double> distance;
  std::vector<std::optional<std::size_t>> hospital;
};
/// Nearest hospital per node read off the matrix; ties go to the lower index.
Nearest nearest_hospitals(const Graph& g, const Matrix& d);
Nearest nearest_hospitals(const Graph& g);

/// Trapezoid area under the cumulative population curve on [first sample, upper],
/// flat after the last sample at or below `upper`.
double trapezoid_area(const std::vector<double>& distance, const std::vector<std::int64_t>& population,
                      double upper);
double largest_finite(const std::vector<double>& distance);
double acis(const Graph& base, const Graph& stressed);

/// Population-weighted mean of pop/d over non-hospital nodes.
double ha_total(const Graph& g, const std::vector<double>& distance);

/// Sum over (node s, hospital t) pairs with d(s,t) within the cutoff of the
/// fraction of shortest s-t paths using each corridor, by enumerating every
/// simple path. Throws std::length_error above kMaxEnumerationNodes.
std::vector<double> betweenness(const Graph& g, double cutoff_km);

/// Area under the right-continuous step function of reachable population.
double step_integral(const std::vector<double>& distance, const std::vector<std::int64_t>& population,
                     double upper);

struct OracleReport {
  std::string case_id;
  double engine = 0.0;
  double oracle = 0.0;
  double abs_dev = 0.0;
  double rel_dev = 0.0;
  double scale = 0.0;

  bool within(double tolerance) const;
};

/// `scale` is a floor on the magnitude used for the relative test, for
/// quantities that are differences of larger numbers.
OracleReport compare(std::string case_id, double engine, double oracle, double scale = 0.0);

}  // namespace oracle
