#include "roadstress/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "roadstress/counter_rng.hpp"
#include "roadstress/errors.hpp"

namespace roadstress::synth {
namespace {

// Only +, *, / and sqrt below, all correctly rounded under IEEE 754, so the
// output does not depend on the platform's libm.

constexpr double kKmPerDegreeLat = 110.574;
constexpr double kKmPerDegreeLon = 111.32 * 0.6820;  // at ~47 deg N

struct Point {
  double x;
  double y;
};

double distance(const Point& p, const Point& q) {
  const double dx = p.x - q.x;
  const double dy = p.y - q.y;
  return std::sqrt(dx * dx + dy * dy);
}

std::string padded(const char* prefix, std::size_t n, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, n);
  return buf;
}

}  // namespace

Network generate_valley_grid(const Params& params) {
  if (params.municipalities < 4) throw InputError("synthetic network needs at least 4 municipalities");
  if (!(params.hospital_fraction > 0.0 && params.hospital_fraction <= 1.0)) {
    throw InputError("hospital fraction must lie in (0, 1]");
  }
  if (params.min_chain_length < 1 || params.max_chain_length < params.min_chain_length) {
    throw InputError("chain lengths must satisfy 1 <= min <= max");
  }
  if (!(params.chain_fraction >= 0.0 && params.chain_fraction < 1.0)) {
    throw InputError("chain fraction must lie in [0, 1)");
  }
  rng::SplitMix64 gen(rng::hash_key({params.seed, 0x5157a11e7ULL}));
  const std::size_t n = params.municipalities;
  const auto chain_nodes = static_cast<std::size_t>(static_cast<double>(n) * params.chain_fraction);
  const std::size_t grid_nodes = n - chain_nodes;
  const auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(grid_nodes))));
  const double s = params.grid_spacing_km;

  Network net;
  std::vector<Point> pos(n);
  auto id_of = [](std::size_t i) { return padded("M", i, 5); };
  std::size_t road_seq = 0;
  auto add_corridor = [&](std::size_t a, std::size_t b, double base_length) {
    const double u = gen.uniform();
    const std::size_t roads = u < 0.55 ? 1 : u < 0.80 ? 2 : u < 0.92 ? 3 : gen.between(4, 8);
    for (std::size_t k = 0; k < roads; ++k) {
      const double length = k == 0 ? base_length : base_length * gen.uniform(1.0, 1.3);
      net.roads.push_back({padded("R", ++road_seq, 7), id_of(a), id_of(b), length});
    }
  };

  for (std::size_t i = 0; i < grid_nodes; ++i) {
    const std::size_t r = i / cols;
    const std::size_t c = i % cols;
    pos[i] = {static_cast<double>(c) * s + gen.uniform(-0.25, 0.25) * s,
              static_cast<double>(r) * s + gen.uniform(-0.25, 0.25) * s};
  }
  auto grid_link = [&](std::size_t a, std::size_t b) { add_corridor(a, b, distance(pos[a], pos[b]) * gen.uniform(1.05, 1.45)); };
  for (std::size_t i = 0; i < grid_nodes; ++i) {
    const std::size_t c = i % cols;
    const bool has_right = c + 1 < cols && i + 1 < grid_nodes;
    const bool has_down = i + cols < grid_nodes;
    if (has_right) grid_link(i, i + 1);
    if (has_down) grid_link(i, i + cols);
    if (has_right && has_down && i + cols + 1 < grid_nodes && gen.uniform() < params.diagonal_probability) {
      if (gen.uniform() < 0.5) {
        grid_link(i, i + cols + 1);
      } else {
        grid_link(i + 1, i + cols);
      }
    }
  }

  // Valley chains hanging off random grid municipalities.
  std::size_t next = grid_nodes;
  while (next < n) {
    // mostly short spurs, occasionally a long valley
    const double u = gen.uniform();
    const auto drawn = params.min_chain_length +
                       static_cast<std::size_t>(static_cast<double>(params.max_chain_length - params.min_chain_length) * u * u * u);
    const std::size_t length = std::min<std::size_t>(drawn, n - next);
    const std::size_t anchor = gen.between(0, grid_nodes - 1);
    Point dir{0.0, 0.0};
    double norm = 0.0;
    do {
      dir = {gen.uniform(-1.0, 1.0), gen.uniform(-1.0, 1.0)};
      norm = std::sqrt(dir.x * dir.x + dir.y * dir.y);
    } while (norm > 1.0 || norm < 0.1);
    dir = {dir.x / norm, dir.y / norm};
    std::size_t prev = anchor;
    for (std::size_t k = 0; k < length; ++k, ++next) {
      const double step = gen.uniform(3.0, 9.0);
      pos[next] = {pos[prev].x + dir.x * step, pos[prev].y + dir.y * step};
      add_corridor(prev, next, step * gen.uniform(1.1, 1.6));
      prev = next;
    }
  }

  // Hospitals on distinct grid municipalities (partial Fisher-Yates).
  const auto wanted = static_cast<std::size_t>(static_cast<double>(n) * params.hospital_fraction + 0.5);
  const std::size_t hospital_count = std::clamp<std::size_t>(wanted, 1, grid_nodes);
  std::vector<std::size_t> order(grid_nodes);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<bool> is_hospital(n, false);
  for (std::size_t k = 0; k < hospital_count; ++k) {
    std::swap(order[k], order[gen.between(k, grid_nodes - 1)]);
    is_hospital[order[k]] = true;
  }

  std::size_t valley_seq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    MunicipalityRecord m;
    m.id = id_of(i);
    const double u = gen.uniform();
    if (i < grid_nodes) {
      m.name = "Grid " + std::to_string(i / cols) + "-" + std::to_string(i % cols);
      m.population = 150 + static_cast<std::int64_t>(20000.0 * u * u * u * u * u);
    } else {
      m.name = "Valley " + std::to_string(++valley_seq);
      m.population = 40 + static_cast<std::int64_t>(3000.0 * u * u * u);
    }
    if (is_hospital[i]) {
      m.population *= 3;
      m.beds = static_cast<std::int64_t>(gen.between(50, 800));
    }
    m.lat = 47.0 + pos[i].y / kKmPerDegreeLat;
    m.lon = 13.0 + pos[i].x / kKmPerDegreeLon;
    net.municipalities.push_back(std::move(m));
    // Occasional segment internal to one municipality; dropped on ingestion.
    if (gen.uniform() < 0.03) net.roads.push_back({padded("R", ++road_seq, 7), id_of(i), id_of(i), gen.uniform(0.5, 3.0)});
  }
  return net;
}

}  // namespace roadstress::synth
