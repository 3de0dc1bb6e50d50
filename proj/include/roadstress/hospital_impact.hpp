#pragma once

// Hospital catchments and how corridor deletions shift them.

#include <cstdint>
#include <span>
#include <vector>

#include "roadstress/accessibility.hpp"
#include "roadstress/corridor_graph.hpp"
#include "roadstress/stress_engine.hpp"

namespace roadstress {

/// Assigned (nearest) hospital per municipality, kNoIndex when unreachable.
struct CatchmentAssignment {
  std::vector<MunicipalityIndex> hospital;

  bool operator==(const CatchmentAssignment&) const = default;
};

CatchmentAssignment catchment(const DistanceField& field);

/// Population of municipalities whose assigned hospital changed.
std::int64_t affected_population(const CatchmentAssignment& base, const CatchmentAssignment& stressed,
                                 std::span<const std::int64_t> populations);

struct HospitalLoad {
  MunicipalityIndex hospital = kNoIndex;
  std::int64_t beds = 0;
  std::int64_t catchment_population = 0;
  double people_per_bed = 0.0;
};

struct LoadSummary {
  std::vector<HospitalLoad> loads;  // one per hospital, ascending id
  std::int64_t unassigned_population = 0;
};

/// Throws InputError if a municipality is assigned to one without beds.
LoadSummary hospital_loads(const CatchmentAssignment& assignment, const CorridorNetwork& net);

/// Catchment flows between a baseline and a stressed assignment. Every
/// hospital's inbound and outbound population, plus the population that
/// lost all hospital access.
struct CatchmentFlows {
  std::vector<std::int64_t> inbound;   // indexed by municipality; nonzero only for hospitals
  std::vector<std::int64_t> outbound;
  std::int64_t newly_unassigned = 0;
  std::int64_t newly_assigned = 0;

  std::int64_t total_inbound() const;
  std::int64_t total_outbound() const;
  /// Outbound population either lands at another hospital or becomes
  /// unassigned; inbound population left another hospital or was unassigned.
  bool balanced() const { return total_outbound() + newly_assigned == total_inbound() + newly_unassigned; }
};

CatchmentFlows catchment_flows(std::size_t municipality_count, std::span<const CatchmentChange> changes,
                               std::span<const std::int64_t> populations);

struct HospitalImpactRecord {
  MunicipalityIndex hospital = kNoIndex;
  CorridorIndex corridor = kNoIndex;
  double ppb_initial = 0.0;
  double ppb_stressed = 0.0;
  double change_pct = 0.0;  // infinite when the initial catchment was empty
  double change_ppb = 0.0;
  std::int64_t inbound_population = 0;
  std::int64_t outbound_population = 0;
};

/// One record per (hospital, deleted corridor) whose catchment saw any
/// inflow or outflow, ordered by |change_pct| descending, then hospital id,
/// then corridor id.
std::vector<HospitalImpactRecord> hospital_impact_table(const CorridorNetwork& net, const Baseline& baseline,
                                                        std::span<const SingleDeletionResult> sweep);

struct HospitalFrequency {
  MunicipalityIndex hospital = kNoIndex;
  std::size_t affecting_deletions = 0;
  double fraction = 0.0;
};

/// Share of single deletions that change each hospital's catchment.
std::vector<HospitalFrequency> hospital_affect_frequency(const CorridorNetwork& net,
                                                         std::span<const SingleDeletionResult> sweep);

}  // namespace roadstress
