#include "roadstress/stress_engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "roadstress/counter_rng.hpp"
#include "roadstress/errors.hpp"
#include "roadstress/statistics.hpp"

namespace roadstress {

void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    for (std::size_t task = 0; task < count; ++task) body(task, 0);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (;;) {
        const std::size_t task = next.fetch_add(1);
        if (task >= count) return;
        try {
          body(task, w);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next.store(count);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

Baseline compute_baseline(const CorridorNetwork& net, const SweepOptions& options) {
  Baseline base;
  base.populations = net.populations();
  base.field = nearest_hospital_field(unmasked(net));
  base.curve = access_curve(base.field, base.populations);
  try {
    base.ha = ha_total(base.field, net);
    base.ha_defined = base.ha > 0.0;
  } catch (const InputError&) {
    base.ha = 0.0;
    base.ha_defined = false;
  }
  if (options.compute_betweenness) {
    base.betweenness = edge_betweenness_hospital(net, options.betweenness_cutoff_km);
  }
  return base;
}

double scenario_acis(const CorridorNetwork& net, const Baseline& baseline, const DeletionMask& mask,
                     FieldWorkspace& workspace, DistanceField& scratch) {
  nearest_hospital_field(apply_mask(net, mask), workspace, scratch);
  return acis(baseline.curve, access_curve(scratch, baseline.populations));
}

SingleDeletionResult evaluate_scenario(const CorridorNetwork& net, const Baseline& baseline,
                                       const DeletionMask& mask, const SweepOptions& options,
                                       FieldWorkspace& workspace, DistanceField& scratch) {
  nearest_hospital_field(apply_mask(net, mask), workspace, scratch);
  const DistanceField& stressed = scratch;

  SingleDeletionResult r;
  r.score.acis = acis(baseline.curve, access_curve(stressed, baseline.populations));
  if (baseline.ha_defined) {
    r.stressed_ha = ha_total(stressed, net);
    r.score.ha_impact_pct = ha_impact(baseline.ha, r.stressed_ha);
  }
  r.crossings = threshold_crossings(baseline.field, stressed, baseline.populations,
                                    options.thresholds_minutes, options.speed_kmh);
  r.newly_unreachable = r.crossings.newly_unreachable;

  for (MunicipalityIndex m = 0; m < stressed.size(); ++m) {
    const double before = baseline.field.distance_km[m];
    const double after = stressed.distance_km[m];
    if (after > before) r.deltas.push_back({m, before, after});
    const auto from = baseline.field.nearest_hospital[m];
    const auto to = stressed.nearest_hospital[m];
    if (from != to) {
      r.catchment_changes.push_back({m, from, to});
      r.affected_population += baseline.populations[m];
    }
  }
  return r;
}

std::vector<SingleDeletionResult> run_single_sweep(const CorridorNetwork& net, const Baseline& baseline,
                                                   const SweepOptions& options) {
  const std::size_t count = net.corridor_count();
  std::vector<SingleDeletionResult> results(count);
  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  std::vector<FieldWorkspace> workspaces(workers);
  std::vector<DistanceField> scratch(workers);

  parallel_for(count, workers, [&](std::size_t task, std::size_t w) {
    const auto c = static_cast<CorridorIndex>(task);
    DeletionMask mask(net);
    mask.remove(c);
    auto r = evaluate_scenario(net, baseline, mask, options, workspaces[w], scratch[w]);
    r.corridor = c;
    r.score.corridor = c;
    if (!baseline.betweenness.empty()) r.score.betweenness = baseline.betweenness[c];
    results[task] = std::move(r);
  });
  return results;
}

std::vector<SingleDeletionResult> run_single_sweep(const CorridorNetwork& net, const SweepOptions& options) {
  return run_single_sweep(net, compute_baseline(net, options), options);
}

void NeighborhoodConfig::validate() const {
  if (probabilities.empty()) throw InputError("neighbourhood sweep needs at least one probability");
  for (const double p : probabilities) {
    if (!(p > 0.0 && p < 1.0)) throw InputError("neighbourhood probability must lie in (0, 1)");
  }
  if (replicates < 1) throw InputError("neighbourhood sweep needs at least one replicate");
}

namespace {

std::uint64_t corridor_key(const CorridorNetwork& net, CorridorIndex c) {
  return rng::fnv1a64(net.corridor(c).id.str());
}

// Inclusion flags for the focal corridor's neighbours, in canonical order.
std::vector<bool> draw_neighbors(std::uint64_t focal_key, std::size_t neighbor_count, double p,
                                 std::uint64_t global_seed, std::uint64_t replicate_index) {
  std::vector<bool> take(neighbor_count);
  const std::uint64_t p_bits = rng::double_bits(p);
  for (std::size_t k = 0; k < neighbor_count; ++k) {
    const double u = rng::to_unit(rng::hash_key({global_seed, focal_key, p_bits, replicate_index, k}));
    take[k] = u < p;
  }
  return take;
}

}  // namespace

DeletionMask replicate_mask(const CorridorNetwork& net, CorridorIndex focal, double p,
                            std::uint64_t global_seed, std::uint64_t replicate_index) {
  if (focal >= net.corridor_count()) throw InputError("replicate_mask: unknown focal corridor");
  const auto neighbors = net.neighbors_of_corridor(focal);
  const auto take = draw_neighbors(corridor_key(net, focal), neighbors.size(), p, global_seed, replicate_index);
  DeletionMask mask(net);
  mask.remove(focal);
  for (std::size_t k = 0; k < neighbors.size(); ++k) {
    if (take[k]) mask.remove(neighbors[k]);
  }
  return mask;
}

std::vector<NeighborhoodResult> run_neighborhood_sweep(const CorridorNetwork& net, const Baseline& baseline,
                                                       const NeighborhoodConfig& config,
                                                       const SweepOptions& options) {
  config.validate();
  const std::size_t corridors = net.corridor_count();
  const std::size_t per_focal = config.probabilities.size();
  std::vector<NeighborhoodResult> results(corridors * per_focal);
  const std::size_t workers = std::max<std::size_t>(1, options.workers);
  std::vector<FieldWorkspace> workspaces(workers);
  std::vector<DistanceField> scratch(workers);

  parallel_for(corridors, workers, [&](std::size_t task, std::size_t w) {
    const auto focal = static_cast<CorridorIndex>(task);
    const auto neighbors = net.neighbors_of_corridor(focal);
    const auto focal_key = corridor_key(net, focal);
    // ACIS is a pure function of the mask, so replicates drawing the same
    // neighbour subset share one evaluation.
    std::map<std::vector<bool>, double> memo;

    for (std::size_t pi = 0; pi < per_focal; ++pi) {
      const double p = config.probabilities[pi];
      std::vector<double> values;
      values.reserve(config.replicates);
      for (std::uint64_t rep = 0; rep < config.replicates; ++rep) {
        auto take = draw_neighbors(focal_key, neighbors.size(), p, config.global_seed, rep);
        auto it = memo.find(take);
        if (it == memo.end()) {
          DeletionMask mask(net);
          mask.remove(focal);
          for (std::size_t k = 0; k < neighbors.size(); ++k) {
            if (take[k]) mask.remove(neighbors[k]);
          }
          const double value = scenario_acis(net, baseline, mask, workspaces[w], scratch[w]);
          it = memo.emplace(std::move(take), value).first;
        }
        values.push_back(it->second);
      }

      NeighborhoodResult& r = results[task * per_focal + pi];
      r.corridor = focal;
      r.probability = p;
      r.replicate_count = values.size();
      // Summed in replicate order so the mean is independent of scheduling.
      r.acis_mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
      r.acis_p90 = percentile_nearest_rank(values, 0.9);
      if (config.keep_replicates) r.replicate_acis = std::move(values);
    }
  });
  return results;
}

}  // namespace roadstress
