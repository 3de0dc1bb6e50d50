#include "roadstress/hospital_impact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <tuple>

#include "roadstress/errors.hpp"

namespace roadstress {

CatchmentAssignment catchment(const DistanceField& field) { return CatchmentAssignment{field.nearest_hospital}; }

std::int64_t affected_population(const CatchmentAssignment& base, const CatchmentAssignment& stressed,
                                 std::span<const std::int64_t> populations) {
  if (base.hospital.size() != stressed.hospital.size() || base.hospital.size() != populations.size()) {
    throw InputError("affected_population: assignments cover different municipality sets");
  }
  std::int64_t total = 0;
  for (std::size_t m = 0; m < populations.size(); ++m) {
    if (base.hospital[m] != stressed.hospital[m]) total += populations[m];
  }
  return total;
}

LoadSummary hospital_loads(const CatchmentAssignment& assignment, const CorridorNetwork& net) {
  if (assignment.hospital.size() != net.municipality_count()) {
    throw InputError("hospital_loads: assignment does not match the network");
  }
  std::vector<std::int64_t> catchment_population(net.municipality_count(), 0);
  LoadSummary out;
  for (MunicipalityIndex m = 0; m < net.municipality_count(); ++m) {
    const auto h = assignment.hospital[m];
    const auto pop = net.municipality(m).population;
    if (h == kNoIndex) {
      out.unassigned_population += pop;
      continue;
    }
    if (h >= net.municipality_count() || net.municipality(h).beds <= 0) {
      throw InputError("hospital_loads: municipality '" + net.municipality(m).id +
                       "' is assigned to a municipality without beds");
    }
    catchment_population[h] += pop;
  }
  for (const auto h : net.hospitals()) {
    const auto beds = net.municipality(h).beds;
    out.loads.push_back({h, beds, catchment_population[h],
                         static_cast<double>(catchment_population[h]) / static_cast<double>(beds)});
  }
  return out;
}

std::int64_t CatchmentFlows::total_inbound() const {
  return std::accumulate(inbound.begin(), inbound.end(), std::int64_t{0});
}

std::int64_t CatchmentFlows::total_outbound() const {
  return std::accumulate(outbound.begin(), outbound.end(), std::int64_t{0});
}

CatchmentFlows catchment_flows(std::size_t municipality_count, std::span<const CatchmentChange> changes,
                               std::span<const std::int64_t> populations) {
  CatchmentFlows flows;
  flows.inbound.assign(municipality_count, 0);
  flows.outbound.assign(municipality_count, 0);
  for (const auto& change : changes) {
    const auto pop = populations[change.municipality];
    if (change.from_hospital == kNoIndex) {
      flows.newly_assigned += pop;
    } else {
      flows.outbound[change.from_hospital] += pop;
    }
    if (change.to_hospital == kNoIndex) {
      flows.newly_unassigned += pop;
    } else {
      flows.inbound[change.to_hospital] += pop;
    }
  }
  return flows;
}

std::vector<HospitalImpactRecord> hospital_impact_table(const CorridorNetwork& net, const Baseline& baseline,
                                                        std::span<const SingleDeletionResult> sweep) {
  const auto initial = hospital_loads(catchment(baseline.field), net);
  std::vector<HospitalImpactRecord> records;
  for (const auto& result : sweep) {
    if (result.catchment_changes.empty()) continue;
    const auto flows = catchment_flows(net.municipality_count(), result.catchment_changes, baseline.populations);
    if (!flows.balanced()) {
      throw InvariantError("catchment flows out of balance for corridor '" +
                           net.corridor(result.corridor).id.str() + "'");
    }
    for (const auto& load : initial.loads) {
      const auto in = flows.inbound[load.hospital];
      const auto out = flows.outbound[load.hospital];
      if (in == 0 && out == 0) continue;
      HospitalImpactRecord rec;
      rec.hospital = load.hospital;
      rec.corridor = result.corridor;
      rec.inbound_population = in;
      rec.outbound_population = out;
      rec.ppb_initial = load.people_per_bed;
      rec.ppb_stressed =
          static_cast<double>(load.catchment_population + in - out) / static_cast<double>(load.beds);
      rec.change_ppb = rec.ppb_stressed - rec.ppb_initial;
      if (rec.ppb_initial > 0.0) {
        rec.change_pct = rec.change_ppb / rec.ppb_initial * 100.0;
      } else {
        rec.change_pct = rec.change_ppb > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
      }
      records.push_back(rec);
    }
  }
  std::stable_sort(records.begin(), records.end(), [](const auto& l, const auto& r) {
    const double al = std::abs(l.change_pct);
    const double ar = std::abs(r.change_pct);
    if (al != ar) return al > ar;
    return std::tie(l.hospital, l.corridor) < std::tie(r.hospital, r.corridor);
  });
  return records;
}

std::vector<HospitalFrequency> hospital_affect_frequency(const CorridorNetwork& net,
                                                         std::span<const SingleDeletionResult> sweep) {
  std::vector<std::size_t> hits(net.municipality_count(), 0);
  std::vector<bool> touched(net.municipality_count(), false);
  for (const auto& result : sweep) {
    std::fill(touched.begin(), touched.end(), false);
    for (const auto& change : result.catchment_changes) {
      if (net.municipality(change.municipality).population == 0) continue;
      if (change.from_hospital != kNoIndex) touched[change.from_hospital] = true;
      if (change.to_hospital != kNoIndex) touched[change.to_hospital] = true;
    }
    for (const auto h : net.hospitals()) {
      if (touched[h]) ++hits[h];
    }
  }
  std::vector<HospitalFrequency> out;
  const double total = static_cast<double>(net.corridor_count());
  for (const auto h : net.hospitals()) {
    out.push_back({h, hits[h], total > 0.0 ? static_cast<double>(hits[h]) / total : 0.0});
  }
  return out;
}

}  // namespace roadstress
