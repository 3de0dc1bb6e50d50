#pragma once

// Synthetic "valley/grid" test networks: a jittered grid of well-connected
// municipalities with pendant chains of valley municipalities hanging off it.
// Hospitals sit on the grid only, so valley chains depend on single corridors.

#include <cstdint>
#include <vector>

#include "roadstress/corridor_graph.hpp"

namespace roadstress::synth {

struct Params {
  std::size_t municipalities = 1600;
  double hospital_fraction = 0.05;
  /// Share of municipalities placed on pendant chains.
  double chain_fraction = 0.25;
  /// Chain lengths are skewed towards the minimum.
  std::size_t min_chain_length = 2;
  std::size_t max_chain_length = 30;
  /// Probability that a grid cell gets a diagonal corridor.
  double diagonal_probability = 0.45;
  double grid_spacing_km = 6.0;
  std::uint64_t seed = 1;
};

struct Network {
  std::vector<MunicipalityRecord> municipalities;
  std::vector<RoadSegment> roads;
};

/// Deterministic for a given Params on every platform. Throws InputError
/// for fewer than 4 municipalities or a hospital fraction outside (0, 1].
Network generate_valley_grid(const Params& params);

}  // namespace roadstress::synth
