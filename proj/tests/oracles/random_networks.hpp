#pragma once

#include <cstdint>
#include <random>

#include "roadstress/corridor_graph.hpp"
#include "roadstress/stress_engine.hpp"

namespace oracle {

struct RandomNetworkSpec {
  std::size_t min_nodes = 2;  // at least 2
  std::size_t max_nodes = 30;
  double edge_probability = 0.2;
  double hospital_probability = 0.15;
  double min_length = 1.0;
  double max_length = 100.0;
  bool integer_lengths = false;
};

/// Connected-ish random network: a random spanning tree plus extra edges,
/// at least one hospital and one non-hospital municipality with people.
roadstress::CorridorNetwork random_network(std::mt19937_64& rng, const RandomNetworkSpec& spec);

/// Each corridor removed independently with probability p.
roadstress::DeletionMask random_mask(std::mt19937_64& rng, const roadstress::CorridorNetwork& net, double p);

/// `base` plus extra corridors removed with probability p.
roadstress::DeletionMask grow_mask(std::mt19937_64& rng, const roadstress::DeletionMask& base, double p);

}  // namespace oracle
