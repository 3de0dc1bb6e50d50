#pragma once

// Result artifacts. Column orders are fixed; every number goes through
// format_number so reruns are byte-identical.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "roadstress/hospital_impact.hpp"
#include "roadstress/statistics.hpp"
#include "roadstress/stress_engine.hpp"

namespace roadstress::io {

/// The three single-deletion rank tables (acis, ha, betweenness).
struct SingleRankings {
  RankTable acis;
  RankTable ha;
  RankTable betweenness;
};

SingleRankings rank_single_sweep(std::span<const SingleDeletionResult> sweep);

/// Rows follow `row_order` (a rank table's order).
void write_corridor_rankings(const std::filesystem::path& path, const CorridorNetwork& net,
                             std::span<const SingleDeletionResult> sweep, const SingleRankings& ranks,
                             const RankTable& row_order);

void write_neighborhood_rankings(const std::filesystem::path& path, const CorridorNetwork& net,
                                 std::span<const NeighborhoodResult> results);

void write_ccdf(const std::filesystem::path& path, std::span<const double> scores);

void write_travel_time_impacts(const std::filesystem::path& path, const CorridorNetwork& net,
                               std::span<const SingleDeletionResult> sweep);

void write_hospital_impact(const std::filesystem::path& path, const CorridorNetwork& net,
                           std::span<const HospitalImpactRecord> records);

void write_hospital_frequency(const std::filesystem::path& path, const CorridorNetwork& net,
                              std::span<const HospitalFrequency> frequencies);

void write_hospital_loads(const std::filesystem::path& path, const CorridorNetwork& net, const LoadSummary& loads);

void write_baseline_field(const std::filesystem::path& path, const CorridorNetwork& net, const Baseline& baseline,
                          double speed_kmh);

/// A named per-corridor score vector that takes part in pairwise comparison.
struct ComparedMeasure {
  std::string name;
  RankTable table;
};

void write_comparison(const std::filesystem::path& path, std::span<const ComparedMeasure> measures, std::size_t k);

/// FeatureCollection: a LineString per corridor carrying its scores (when a
/// sweep is given) and a Point per municipality with its baseline distance.
void write_overlay_geojson(const std::filesystem::path& path, const CorridorNetwork& net, const Baseline& baseline,
                           std::span<const SingleDeletionResult> sweep, const SingleRankings* ranks);

}  // namespace roadstress::io
