#pragma once

// Single-corridor and neighbourhood deletion sweeps.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "roadstress/accessibility.hpp"
#include "roadstress/corridor_graph.hpp"

namespace roadstress {

struct CorridorScore {
  CorridorIndex corridor = kNoIndex;
  double acis = 0.0;
  double ha_impact_pct = 0.0;
  double betweenness = 0.0;
};

struct MunicipalityDelta {
  MunicipalityIndex municipality;
  double old_distance_km;
  double new_distance_km;  // kUnreachable when reachability was lost
};

/// A municipality whose assigned hospital differs from the baseline.
struct CatchmentChange {
  MunicipalityIndex municipality;
  MunicipalityIndex from_hospital;  // kNoIndex if previously unassigned
  MunicipalityIndex to_hospital;    // kNoIndex if now unreachable
};

struct SingleDeletionResult {
  CorridorIndex corridor = kNoIndex;
  CorridorScore score;
  double stressed_ha = 0.0;
  /// Population whose nearest hospital changed, including to "none".
  std::int64_t affected_population = 0;
  ThresholdCrossings crossings;
  std::int64_t newly_unreachable = 0;
  std::vector<MunicipalityDelta> deltas;
  std::vector<CatchmentChange> catchment_changes;
};

struct SweepOptions {
  std::size_t workers = 1;
  double speed_kmh = kDefaultSpeedKmh;
  std::vector<double> thresholds_minutes = default_thresholds_minutes();
  double betweenness_cutoff_km = kDefaultBetweennessCutoffKm;
  bool compute_betweenness = true;
};

/// Quantities of the undisturbed network shared read-only by all scenarios.
struct Baseline {
  DistanceField field;
  AccessCurve curve;
  std::vector<std::int64_t> populations;
  /// Aggregate hospital accessibility; 0 when undefined (no population
  /// outside hospital towns), in which case every HA impact is reported as 0.
  double ha = 0.0;
  bool ha_defined = false;
  std::vector<double> betweenness;  // empty unless requested
};

Baseline compute_baseline(const CorridorNetwork& net, const SweepOptions& options = {});

/// Scores one deletion scenario against the baseline. `workspace` and
/// `scratch` are caller-owned so that a worker can reuse them.
SingleDeletionResult evaluate_scenario(const CorridorNetwork& net, const Baseline& baseline,
                                       const DeletionMask& mask, const SweepOptions& options,
                                       FieldWorkspace& workspace, DistanceField& scratch);

/// ACIS only; the hot path of the neighbourhood sweep.
double scenario_acis(const CorridorNetwork& net, const Baseline& baseline, const DeletionMask& mask,
                     FieldWorkspace& workspace, DistanceField& scratch);

std::vector<SingleDeletionResult> run_single_sweep(const CorridorNetwork& net, const Baseline& baseline,
                                                   const SweepOptions& options = {});
std::vector<SingleDeletionResult> run_single_sweep(const CorridorNetwork& net,
                                                   const SweepOptions& options = {});

struct NeighborhoodConfig {
  std::vector<double> probabilities{0.1, 0.25, 0.5, 0.75};
  std::size_t replicates = 100;
  std::uint64_t global_seed = 0;
  bool keep_replicates = false;

  /// Throws InputError unless every p lies in (0, 1) and replicates >= 1.
  void validate() const;
};

struct NeighborhoodResult {
  CorridorIndex corridor = kNoIndex;
  double probability = 0.0;
  double acis_mean = 0.0;
  double acis_p90 = 0.0;
  std::size_t replicate_count = 0;
  std::vector<double> replicate_acis;  // filled when keep_replicates is set
};

/// The focal corridor plus each neighbour independently with probability p.
/// Every inclusion draw is keyed by (seed, focal id, p, replicate, neighbour
/// position), so a mask never depends on execution order.
DeletionMask replicate_mask(const CorridorNetwork& net, CorridorIndex focal, double p,
                            std::uint64_t global_seed, std::uint64_t replicate_index);

/// One result per (corridor, probability), corridor-major.
std::vector<NeighborhoodResult> run_neighborhood_sweep(const CorridorNetwork& net, const Baseline& baseline,
                                                       const NeighborhoodConfig& config,
                                                       const SweepOptions& options = {});

/// Runs body(task, worker) for every task in [0, count) on `workers` threads.
/// Callers write results by task index, which keeps output order fixed.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t task, std::size_t worker)>& body);

}  // namespace roadstress
