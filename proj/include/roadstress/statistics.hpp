#pragma once

// Ranking and comparison machinery over per-corridor scores.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "roadstress/corridor_graph.hpp"

namespace roadstress {

/// Corridors ordered by (score desc, corridor index asc). Because corridor
/// indices follow canonical id order, the tie-break is by corridor id.
struct RankTable {
  std::string measure;
  std::vector<CorridorIndex> order;
  std::vector<double> scores;  // indexed by corridor

  /// 1-based rank of corridor `c`.
  std::size_t rank_of(CorridorIndex c) const;
  std::vector<std::size_t> ranks() const;
};

RankTable make_rank_table(std::string measure, std::vector<double> scores);

/// Average ranks (1-based); tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson correlation of average ranks. Inputs are aligned by position.
/// Throws InputError for fewer than two entries or mismatched sizes.
/// Returns NaN when either side is constant.
double spearman_rho(std::span<const double> x, std::span<const double> y);
double spearman_rho(const std::map<std::string, double>& x, const std::map<std::string, double>& y);

struct TopkOverlap {
  double fraction = 0.0;
  std::size_t k_requested = 0;
  std::size_t k_effective = 0;
  bool clamped() const { return k_effective != k_requested; }
};

TopkOverlap topk_overlap(const RankTable& a, const RankTable& b, std::size_t k = 100);

struct CcdfPoint {
  double value;
  double fraction;  // empirical P(X >= value)

  bool operator==(const CcdfPoint&) const = default;
};

/// Throws InputError on an empty sample.
std::vector<CcdfPoint> ccdf_points(std::span<const double> scores);

/// Nearest-rank percentile: ascending sort, 1-based index ceil(q * n).
double percentile_nearest_rank(std::vector<double> values, double q);

}  // namespace roadstress
