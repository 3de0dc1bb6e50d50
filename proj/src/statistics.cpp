#include "roadstress/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "roadstress/errors.hpp"

namespace roadstress {

std::size_t RankTable::rank_of(CorridorIndex c) const {
  const auto it = std::find(order.begin(), order.end(), c);
  if (it == order.end()) throw InputError("corridor not present in rank table");
  return static_cast<std::size_t>(it - order.begin()) + 1;
}

std::vector<std::size_t> RankTable::ranks() const {
  std::vector<std::size_t> out(order.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) out[order[pos]] = pos + 1;
  return out;
}

RankTable make_rank_table(std::string measure, std::vector<double> scores) {
  RankTable table;
  table.measure = std::move(measure);
  table.order.resize(scores.size());
  std::iota(table.order.begin(), table.order.end(), CorridorIndex{0});
  std::stable_sort(table.order.begin(), table.order.end(), [&](CorridorIndex l, CorridorIndex r) {
    if (scores[l] != scores[r]) return scores[l] > scores[r];
    return l < r;
  });
  table.scores = std::move(scores);
  return table;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double mean_rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[idx[t]] = mean_rank;
    i = j + 1;
  }
  return ranks;
}

double spearman_rho(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("spearman_rho: inputs differ in length");
  if (x.size() < 2) throw InputError("spearman_rho: need at least two entries");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(rx.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

double spearman_rho(const std::map<std::string, double>& x, const std::map<std::string, double>& y) {
  if (x.size() != y.size()) throw InputError("spearman_rho: key sets differ");
  std::vector<double> xs;
  std::vector<double> ys;
  auto iy = y.begin();
  for (const auto& [key, value] : x) {
    if (iy->first != key) throw InputError("spearman_rho: key sets differ at '" + key + "'");
    xs.push_back(value);
    ys.push_back(iy->second);
    ++iy;
  }
  return spearman_rho(xs, ys);
}

TopkOverlap topk_overlap(const RankTable& a, const RankTable& b, std::size_t k) {
  if (k < 1) throw InputError("topk_overlap: k must be >= 1");
  if (a.order.size() != b.order.size()) throw InputError("topk_overlap: tables cover different corridor sets");
  TopkOverlap out;
  out.k_requested = k;
  out.k_effective = std::min(k, a.order.size());
  if (out.k_effective == 0) return out;
  std::vector<CorridorIndex> top_a(a.order.begin(), a.order.begin() + static_cast<std::ptrdiff_t>(out.k_effective));
  std::vector<CorridorIndex> top_b(b.order.begin(), b.order.begin() + static_cast<std::ptrdiff_t>(out.k_effective));
  std::sort(top_a.begin(), top_a.end());
  std::sort(top_b.begin(), top_b.end());
  std::vector<CorridorIndex> common;
  std::set_intersection(top_a.begin(), top_a.end(), top_b.begin(), top_b.end(), std::back_inserter(common));
  out.fraction = static_cast<double>(common.size()) / static_cast<double>(out.k_effective);
  return out;
}

std::vector<CcdfPoint> ccdf_points(std::span<const double> scores) {
  if (scores.empty()) throw InputError("ccdf_points: empty sample");
  std::vector<double> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<CcdfPoint> out;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (i > 0 && sorted[i] == sorted[i - 1]) continue;
    out.push_back({sorted[i], static_cast<double>(sorted.size() - i) / n});
  }
  return out;
}

double percentile_nearest_rank(std::vector<double> values, double q) {
  if (values.empty()) throw InputError("percentile of an empty sample");
  if (!(q > 0.0 && q <= 1.0)) throw InputError("percentile level must lie in (0, 1]");
  std::sort(values.begin(), values.end());
  // Shave off representation error so that e.g. 0.9 * 100 lands on 90.
  const double exact = q * static_cast<double>(values.size());
  const auto rank = static_cast<std::size_t>(std::ceil(exact - 1e-9 * exact));
  return values[std::max<std::size_t>(rank, 1) - 1];
}

}  // namespace roadstress
