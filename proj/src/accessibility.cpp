#include "roadstress/accessibility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include "roadstress/errors.hpp"

namespace roadstress {
namespace {

// Min-heap order on (distance, hospital, node).
struct HeapAfter {
  bool operator()(const FieldWorkspace::HeapEntry& l, const FieldWorkspace::HeapEntry& r) const {
    if (l.distance != r.distance) return l.distance > r.distance;
    if (l.hospital != r.hospital) return l.hospital > r.hospital;
    return l.node > r.node;
  }
};

bool within_tolerance(double x, double y) {
  return std::abs(x - y) <= kPathTieTolerance * std::max(x, y);
}

}  // namespace

double DistanceField::max_finite_distance() const {
  double out = 0.0;
  for (double d : distance_km) {
    if (d != kUnreachable) out = std::max(out, d);
  }
  return out;
}

DistanceField nearest_hospital_field(const MaskedView& view) {
  FieldWorkspace workspace;
  DistanceField out;
  nearest_hospital_field(view, workspace, out);
  return out;
}

void nearest_hospital_field(const MaskedView& view, FieldWorkspace& workspace, DistanceField& out) {
  const auto& net = view.network();
  const std::size_t n = net.municipality_count();
  out.distance_km.assign(n, kUnreachable);
  out.nearest_hospital.assign(n, kNoIndex);

  auto& heap = workspace.heap;
  heap.clear();
  const HeapAfter after;
  for (const auto h : net.hospitals()) {
    out.distance_km[h] = 0.0;
    out.nearest_hospital[h] = h;
    heap.push_back({0.0, h, h});
  }
  std::make_heap(heap.begin(), heap.end(), after);

  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), after);
    const auto top = heap.back();
    heap.pop_back();
    if (top.distance != out.distance_km[top.node] || top.hospital != out.nearest_hospital[top.node]) {
      continue;  // stale
    }
    view.for_each_arc(top.node, [&](const CorridorNetwork::Arc& arc) {
      const double nd = top.distance + arc.length_km;
      double& dist = out.distance_km[arc.to];
      auto& nearest = out.nearest_hospital[arc.to];
      if (nd < dist || (nd == dist && top.hospital < nearest)) {
        dist = nd;
        nearest = top.hospital;
        heap.push_back({nd, top.hospital, arc.to});
        std::push_heap(heap.begin(), heap.end(), after);
      }
    });
  }
}

AccessCurve access_curve(const DistanceField& field, std::span<const std::int64_t> populations) {
  if (populations.size() != field.size()) {
    throw InputError("access_curve: populations and distance field differ in size");
  }
  std::vector<std::pair<double, std::int64_t>> reached;
  reached.reserve(field.size());
  AccessCurve curve;
  for (std::size_t m = 0; m < field.size(); ++m) {
    curve.total_population_considered += populations[m];
    if (field.distance_km[m] != kUnreachable) reached.emplace_back(field.distance_km[m], populations[m]);
  }
  std::sort(reached.begin(), reached.end());
  std::int64_t cumulative = 0;
  for (const auto& [distance, population] : reached) {
    cumulative += population;
    if (!curve.points.empty() && curve.points.back().distance_km == distance) {
      curve.points.back().cumulative_population = cumulative;
    } else {
      curve.points.push_back({distance, cumulative});
    }
  }
  return curve;
}

double integrate_curve(const AccessCurve& curve, double upper_km) {
  if (!(upper_km >= 0.0)) throw InputError("integrate_curve: upper limit must be >= 0");
  const auto& pts = curve.points;
  if (pts.empty() || pts.front().distance_km > upper_km) return 0.0;

  double area = 0.0;
  std::size_t i = 0;
  for (; i + 1 < pts.size() && pts[i + 1].distance_km <= upper_km; ++i) {
    const double width = pts[i + 1].distance_km - pts[i].distance_km;
    area += 0.5 * width *
            static_cast<double>(pts[i].cumulative_population + pts[i + 1].cumulative_population);
  }
  // Flat closing segment out to the upper limit.
  area += (upper_km - pts[i].distance_km) * static_cast<double>(pts[i].cumulative_population);
  return area;
}

double acis(const AccessCurve& base, const AccessCurve& stressed) {
  const double dist_max = base.points.empty() ? 0.0 : base.points.back().distance_km;
  return integrate_curve(base, dist_max) - integrate_curve(stressed, dist_max);
}

std::optional<double> ha_municipality(std::int64_t population, double distance_km) {
  if (distance_km == 0.0) return std::nullopt;
  if (distance_km == kUnreachable) return 0.0;
  return static_cast<double>(population) / distance_km;
}

double ha_total(const DistanceField& field, const CorridorNetwork& net) {
  if (field.size() != net.municipality_count()) {
    throw InputError("ha_total: distance field does not match the network");
  }
  std::int64_t outside_population = 0;
  double weighted = 0.0;
  bool any_outside = false;
  for (MunicipalityIndex m = 0; m < net.municipality_count(); ++m) {
    const auto& rec = net.municipality(m);
    if (rec.has_hospital()) continue;
    any_outside = true;
    outside_population += rec.population;
    const auto ha = ha_municipality(rec.population, field.distance_km[m]);
    if (ha) weighted += *ha * static_cast<double>(rec.population);
  }
  if (!any_outside) throw InputError("ha_total: every municipality hosts a hospital");
  if (outside_population == 0) throw InputError("ha_total: municipalities without a hospital have zero population");
  return weighted / static_cast<double>(outside_population);
}

double ha_impact(double base_ha, double stressed_ha) {
  if (!(base_ha > 0.0)) throw InputError("ha_impact: baseline accessibility must be positive");
  return (base_ha - stressed_ha) / base_ha * 100.0;
}

std::vector<double> edge_betweenness_hospital(const CorridorNetwork& net, double cutoff_km) {
  const std::size_t n = net.municipality_count();
  std::vector<double> score(net.corridor_count(), 0.0);
  if (!(cutoff_km >= 0.0)) throw InputError("betweenness cutoff must be >= 0");
  const double reach = cutoff_km * (1.0 + kPathTieTolerance);

  struct Pred {
    MunicipalityIndex node;
    CorridorIndex corridor;
  };
  std::vector<double> dist(n);
  std::vector<double> sigma(n);
  std::vector<double> delta(n);
  std::vector<std::vector<Pred>> preds(n);
  std::vector<MunicipalityIndex> settled;
  std::vector<bool> done(n);
  using Entry = std::pair<double, MunicipalityIndex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;

  for (const auto source : net.hospitals()) {
    std::fill(dist.begin(), dist.end(), kUnreachable);
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(done.begin(), done.end(), false);
    for (auto& p : preds) p.clear();
    settled.clear();

    dist[source] = 0.0;
    sigma[source] = 1.0;
    queue.push({0.0, source});
    while (!queue.empty()) {
      const auto [d, v] = queue.top();
      queue.pop();
      if (done[v] || d != dist[v]) continue;
      done[v] = true;
      settled.push_back(v);
      for (const auto& arc : net.arcs(v)) {
        const double nd = d + arc.length_km;
        if (nd > reach) continue;  // pairs beyond the cutoff never qualify
        const MunicipalityIndex w = arc.to;
        if (done[w]) continue;
        if (dist[w] == kUnreachable || (nd < dist[w] && !within_tolerance(nd, dist[w]))) {
          dist[w] = nd;
          sigma[w] = sigma[v];
          preds[w].assign(1, Pred{v, arc.corridor});
          queue.push({nd, w});
        } else if (within_tolerance(nd, dist[w])) {
          sigma[w] += sigma[v];
          preds[w].push_back(Pred{v, arc.corridor});
          if (nd < dist[w]) {
            dist[w] = nd;
            queue.push({nd, w});
          }
        }
      }
    }

    for (auto it = settled.rbegin(); it != settled.rend(); ++it) {
      const MunicipalityIndex w = *it;
      if (w == source) continue;
      const double carried = (dist[w] <= reach ? 1.0 : 0.0) + delta[w];
      for (const auto& p : preds[w]) {
        const double share = sigma[p.node] / sigma[w] * carried;
        score[p.corridor] += share;
        delta[p.node] += share;
      }
    }
  }
  return score;
}

double travel_minutes(double distance_km, double speed_kmh) {
  if (distance_km == kUnreachable) return kUnreachable;
  return distance_km / speed_kmh * 60.0;
}

ThresholdCrossings threshold_crossings(const DistanceField& base, const DistanceField& stressed,
                                       std::span<const std::int64_t> populations,
                                       std::span<const double> thresholds_minutes,
                                       double speed_kmh) {
  if (base.size() != stressed.size() || base.size() != populations.size()) {
    throw InputError("threshold_crossings: inputs cover different municipality sets");
  }
  ThresholdCrossings out;
  out.thresholds_minutes.assign(thresholds_minutes.begin(), thresholds_minutes.end());
  out.crossing_population.assign(thresholds_minutes.size(), 0);
  for (std::size_t m = 0; m < base.size(); ++m) {
    const double before = travel_minutes(base.distance_km[m], speed_kmh);
    const double after = travel_minutes(stressed.distance_km[m], speed_kmh);
    if (base.reachable(static_cast<MunicipalityIndex>(m)) &&
        !stressed.reachable(static_cast<MunicipalityIndex>(m))) {
      out.newly_unreachable += populations[m];
    }
    for (std::size_t t = 0; t < thresholds_minutes.size(); ++t) {
      const double tau = thresholds_minutes[t];
      if (before < tau && after >= tau) out.crossing_population[t] += populations[m];
    }
  }
  return out;
}

}  // namespace roadstress
