#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "roadstress/corridor_graph.hpp"

namespace roadstress {

inline constexpr double kUnreachable = std::numeric_limits<double>::infinity();
inline constexpr double kDefaultSpeedKmh = 50.0;
inline constexpr double kDefaultBetweennessCutoffKm = 100.0;

/// Per-municipality distance to, and identity of, the nearest hospital.
struct DistanceField {
  std::vector<double> distance_km;                 // kUnreachable if no hospital is reachable
  std::vector<MunicipalityIndex> nearest_hospital;  // kNoIndex if unreachable

  std::size_t size() const { return distance_km.size(); }
  bool reachable(MunicipalityIndex m) const { return nearest_hospital[m] != kNoIndex; }
  /// Largest finite distance, 0 when nothing is reachable.
  double max_finite_distance() const;

  bool operator==(const DistanceField&) const = default;
};

/// Scratch space for repeated shortest-path runs; one per worker thread.
class FieldWorkspace {
 public:
  struct HeapEntry {
    double distance;
    MunicipalityIndex hospital;
    MunicipalityIndex node;
  };
  std::vector<HeapEntry> heap;
};

/// Multi-source Dijkstra from every hospital. Ties in distance go to the
/// hospital with the smallest id.
DistanceField nearest_hospital_field(const MaskedView& view);
void nearest_hospital_field(const MaskedView& view, FieldWorkspace& workspace, DistanceField& out);

struct CurvePoint {
  double distance_km;
  std::int64_t cumulative_population;

  bool operator==(const CurvePoint&) const = default;
};

/// Cumulative population with a hospital within x km, sampled at every
/// distinct finite distance of the field.
struct AccessCurve {
  std::vector<CurvePoint> points;
  std::int64_t total_population_considered = 0;
};

AccessCurve access_curve(const DistanceField& field, std::span<const std::int64_t> populations);

/// Trapezoid integral over [0, upper] of the piecewise-linear curve through
/// the sample points. The tail is closed with a flat segment at the last
/// sample value not beyond `upper`. Throws InputError if upper < 0.
double integrate_curve(const AccessCurve& curve, double upper_km);

/// Baseline integral minus stressed integral, both up to the largest
/// baseline distance.
double acis(const AccessCurve& base, const AccessCurve& stressed);

/// Population over nearest-hospital distance. nullopt for hospital
/// municipalities (distance 0), which never enter the aggregate; 0 when
/// unreachable.
std::optional<double> ha_municipality(std::int64_t population, double distance_km);

/// Population-weighted mean of ha_municipality over non-hospital
/// municipalities. Throws InputError when there is no non-hospital
/// population to normalise by.
double ha_total(const DistanceField& field, const CorridorNetwork& net);

/// Percent drop of aggregate accessibility. Throws InputError if base <= 0.
double ha_impact(double base_ha, double stressed_ha);

/// Relative tolerance used when comparing shortest-path lengths.
inline constexpr double kPathTieTolerance = 1e-9;

/// Edge betweenness restricted to (municipality, hospital) pairs no more than
/// `cutoff_km` apart, counting every shortest path.
std::vector<double> edge_betweenness_hospital(const CorridorNetwork& net,
                                              double cutoff_km = kDefaultBetweennessCutoffKm);

double travel_minutes(double distance_km, double speed_kmh = kDefaultSpeedKmh);

struct ThresholdCrossings {
  std::vector<double> thresholds_minutes;
  std::vector<std::int64_t> crossing_population;  // parallel to thresholds_minutes
  std::int64_t newly_unreachable = 0;
};

inline const std::vector<double>& default_thresholds_minutes() {
  static const std::vector<double> kThresholds{15.0, 30.0, 60.0};
  return kThresholds;
}

/// Population pushed from under each travel-time threshold to at or above it
/// (or out of reach).
ThresholdCrossings threshold_crossings(const DistanceField& base, const DistanceField& stressed,
                                       std::span<const std::int64_t> populations,
                                       std::span<const double> thresholds_minutes,
                                       double speed_kmh = kDefaultSpeedKmh);

}  // namespace roadstress
