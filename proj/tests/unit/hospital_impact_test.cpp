#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "oracles/oracles.hpp"
#include "oracles/random_networks.hpp"
#include "roadstress/errors.hpp"
#include "roadstress/hospital_impact.hpp"
#include "roadstress/synth.hpp"

using namespace roadstress;
using namespace testing_helpers;

namespace {

// H1 - m1 - m2 - H2; m1 belongs to H1, m2 to H2
CorridorNetwork line(std::int64_t m1_pop, double m2_h2_km) {
  const std::vector<MunicipalityRecord> munis{{"H1", "h1", 100, 10, 0, 0},
                                              {"H2", "h2", 200, 20, 0, 0},
                                              {"m1", "m1", m1_pop, 0, 0, 0},
                                              {"m2", "m2", 30, 0, 0, 0}};
  const std::vector<RoadSegment> roads{{"1", "H1", "m1", 1}, {"2", "m1", "m2", 1}, {"3", "m2", "H2", m2_h2_km}};
  return CorridorNetwork::build(munis, roads);
}

}  // namespace

TEST(Catchment, T1AllToA) {
  const auto net = t1();
  const auto assign = catchment(nearest_hospital_field(unmasked(net)));
  for (const auto h : assign.hospital) EXPECT_EQ(h, net.municipality_index("A"));
}

TEST(Catchment, UnreachableIsNone) {
  const auto net = t1();
  const auto mask = mask_of(net, {{"C", "D"}});
  const auto assign = catchment(nearest_hospital_field(apply_mask(net, mask)));
  EXPECT_EQ(assign.hospital[net.municipality_index("D")], kNoIndex);
}

TEST(Catchment, HospitalsServeThemselves) {
  const auto net = line(10, 1.5);
  const auto assign = catchment(nearest_hospital_field(unmasked(net)));
  for (const auto h : net.hospitals()) EXPECT_EQ(assign.hospital[h], h);
}

TEST(AffectedPopulation, Examples) {
  const std::vector<std::int64_t> pops{10, 30, 5};
  const CatchmentAssignment a{{0, 0, 0}};
  EXPECT_EQ(affected_population(a, a, pops), 0);
  const CatchmentAssignment b{{0, 2, 0}};
  EXPECT_EQ(affected_population(a, b, pops), 30);
  const CatchmentAssignment c{{0, 0, kNoIndex}};
  EXPECT_EQ(affected_population(a, c, pops), 5);
}

TEST(AffectedPopulation, LineCutMovesM2) {
  // m2 is 2 km from H1 and 5 km from H2
  const auto net = line(10, 5.0);
  const auto base = catchment(nearest_hospital_field(unmasked(net)));
  const auto mask = mask_of(net, {{"m1", "m2"}});
  const auto cut = catchment(nearest_hospital_field(apply_mask(net, mask)));
  EXPECT_EQ(base.hospital[net.municipality_index("m2")], net.municipality_index("H1"));
  EXPECT_EQ(cut.hospital[net.municipality_index("m2")], net.municipality_index("H2"));
  EXPECT_EQ(affected_population(base, cut, net.populations()), 30);
}

TEST(HospitalLoads, T1) {
  const auto net = t1();
  const auto loads = hospital_loads(catchment(nearest_hospital_field(unmasked(net))), net);
  ASSERT_EQ(loads.loads.size(), 1u);
  EXPECT_EQ(loads.loads[0].catchment_population, 200);
  EXPECT_EQ(loads.loads[0].beds, 10);
  EXPECT_EQ(loads.loads[0].people_per_bed, 20.0);
  EXPECT_EQ(loads.unassigned_population, 0);
}

TEST(HospitalLoads, HospitalServingOnlyItself) {
  const std::vector<MunicipalityRecord> munis{{"H", "h", 100, 10, 0, 0}, {"G", "g", 50, 5, 0, 0}, {"X", "x", 7, 0, 0, 0}};
  const auto net = CorridorNetwork::build(munis, {{"r", "G", "X", 2}, {"s", "H", "X", 9}});
  const auto loads = hospital_loads(catchment(nearest_hospital_field(unmasked(net))), net);
  EXPECT_EQ(loads.loads[net.municipality_index("H") == loads.loads[0].hospital ? 0 : 1].people_per_bed, 10.0);
}

TEST(HospitalLoads, RejectsAssignmentToTownWithoutBeds) {
  const auto net = t1();
  const CatchmentAssignment bad{{0, 1, 0, 0}};
  EXPECT_THROW(hospital_loads(bad, net), InputError);
}

TEST(HospitalLoads, PopulationConserved) {
  std::mt19937_64 rng(4);
  for (int g = 0; g < 40; ++g) {
    const auto net = oracle::random_network(rng, {});
    const auto mask = oracle::random_mask(rng, net, 0.3);
    const auto loads = hospital_loads(catchment(nearest_hospital_field(apply_mask(net, mask))), net);
    std::int64_t total = loads.unassigned_population;
    for (const auto& l : loads.loads) total += l.catchment_population;
    EXPECT_EQ(total, net.total_population());
  }
}

TEST(HospitalImpact, T1Records) {
  const auto net = t1();
  const auto base = compute_baseline(net);
  const auto sweep = run_single_sweep(net, base);
  const auto table = hospital_impact_table(net, base, sweep);
  // only cutting C-D changes a catchment: D (20 people) loses access
  ASSERT_EQ(table.size(), 1u);
  EXPECT_EQ(net.corridor(table[0].corridor).id.str(), "C|D");
  EXPECT_EQ(table[0].ppb_initial, 20.0);
  EXPECT_EQ(table[0].ppb_stressed, 18.0);
  EXPECT_EQ(table[0].change_pct, -10.0);
  EXPECT_EQ(table[0].inbound_population, 0);
  EXPECT_EQ(table[0].outbound_population, 20);
}

TEST(HospitalImpact, NoChangeMeansEmptyTable) {
  const std::vector<MunicipalityRecord> munis{
      {"A", "a", 10, 5, 0, 0}, {"B", "b", 10, 0, 0, 0}, {"C", "c", 10, 0, 0, 0}};
  const auto net = CorridorNetwork::build(munis, {{"1", "A", "B", 1}, {"2", "B", "C", 1}, {"3", "A", "C", 1}});
  const auto base = compute_baseline(net);
  EXPECT_TRUE(hospital_impact_table(net, base, run_single_sweep(net, base)).empty());
}

TEST(HospitalImpact, LineCutGivesDonorAndReceiver) {
  const auto net = line(10, 5.0);
  const auto base = compute_baseline(net);
  const auto sweep = run_single_sweep(net, base);
  const auto cut = net.corridor_index(CorridorId::canonical("m1", "m2"));
  std::vector<HospitalImpactRecord> for_cut;
  for (const auto& r : hospital_impact_table(net, base, sweep))
    if (r.corridor == cut) for_cut.push_back(r);
  ASSERT_EQ(for_cut.size(), 2u);
  std::int64_t gains = 0;
  std::int64_t losses = 0;
  for (const auto& r : for_cut) {
    gains += r.inbound_population;
    losses += r.outbound_population;
    EXPECT_DOUBLE_EQ(r.change_pct, (r.ppb_stressed - r.ppb_initial) / r.ppb_initial * 100.0);
  }
  EXPECT_EQ(gains, 30);
  EXPECT_EQ(losses, 30);
}

TEST(HospitalImpact, SortedByAbsoluteChange) {
  synth::Params params;
  params.municipalities = 300;
  const auto g = synth::generate_valley_grid(params);
  const auto net = CorridorNetwork::build(g.municipalities, g.roads);
  const auto base = compute_baseline(net);
  const auto table = hospital_impact_table(net, base, run_single_sweep(net, base));
  ASSERT_FALSE(table.empty());
  for (std::size_t i = 1; i < table.size(); ++i)
    EXPECT_GE(std::abs(table[i - 1].change_pct), std::abs(table[i].change_pct));
}

TEST(CatchmentFlows, BalanceOnRandomSweeps) {
  std::mt19937_64 rng(12);
  for (int g = 0; g < 30; ++g) {
    const auto net = oracle::random_network(rng, {});
    const auto base = compute_baseline(net);
    const auto pops = net.populations();
    for (const auto& r : run_single_sweep(net, base)) {
      const auto flows = catchment_flows(net.municipality_count(), r.catchment_changes, pops);
      EXPECT_TRUE(flows.balanced());
      EXPECT_EQ(flows.newly_assigned, 0);
      EXPECT_EQ(flows.total_outbound(), flows.total_inbound() + flows.newly_unassigned);
      // affected population from an independent diff of the oracle's assignments
      DeletionMask mask(net);
      mask.remove(r.corridor);
      const auto before = oracle::nearest_hospitals(oracle::graph_of(net));
      const auto after = oracle::nearest_hospitals(oracle::graph_of(net, &mask));
      std::int64_t changed = 0;
      for (std::size_t m = 0; m < net.municipality_count(); ++m)
        if (before.hospital[m] != after.hospital[m]) changed += pops[m];
      EXPECT_EQ(r.affected_population, changed);
    }
  }
}

TEST(HospitalFrequency, LineWithOneShiftingCut) {
  // m1 is empty, so only cutting m2-H2 moves people (m2 over to H1)
  const std::vector<MunicipalityRecord> munis{
      {"H1", "h1", 100, 10, 0, 0}, {"H2", "h2", 200, 20, 0, 0}, {"m1", "m1", 0, 0, 0, 0}, {"m2", "m2", 30, 0, 0, 0}};
  const auto net = CorridorNetwork::build(munis, {{"1", "H1", "m1", 1}, {"2", "m1", "m2", 5}, {"3", "m2", "H2", 1}});
  const auto freq = hospital_affect_frequency(net, run_single_sweep(net));
  ASSERT_EQ(freq.size(), 2u);
  for (const auto& f : freq) {
    EXPECT_EQ(f.affecting_deletions, 1u);
    EXPECT_DOUBLE_EQ(f.fraction, 1.0 / 3.0);
  }
}

TEST(HospitalFrequency, NeverAndAlways) {
  const std::vector<MunicipalityRecord> munis{{"H", "h", 1, 5, 0, 0}, {"X", "x", 40, 0, 0, 0}, {"G", "g", 1, 5, 0, 0}};
  const auto net = CorridorNetwork::build(munis, {{"r", "H", "X", 8}});
  const auto freq = hospital_affect_frequency(net, run_single_sweep(net));
  EXPECT_EQ(freq[0].fraction, 0.0);  // G, isolated
  EXPECT_EQ(freq[1].fraction, 1.0);  // H
}
