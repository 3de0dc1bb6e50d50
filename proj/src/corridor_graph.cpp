#include "roadstress/corridor_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>
#include <utility>

#include "roadstress/errors.hpp"

namespace roadstress {

CorridorId CorridorId::canonical(std::string x, std::string y) {
  if (y < x) std::swap(x, y);
  return CorridorId{std::move(x), std::move(y)};
}

std::string CorridorId::str() const { return a + "|" + b; }

CorridorId CorridorId::parse(std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos || text.find('|', bar + 1) != std::string_view::npos) {
    throw InputError("corridor id must have the form A|B: '" + std::string(text) + "'");
  }
  return canonical(std::string(text.substr(0, bar)), std::string(text.substr(bar + 1)));
}

std::vector<MunicipalityRecord> CorridorNetwork::validated(
    std::vector<MunicipalityRecord> municipalities) {
  if (municipalities.empty()) throw InputError("network has no municipalities");
  std::sort(municipalities.begin(), municipalities.end(),
            [](const auto& l, const auto& r) { return l.id < r.id; });
  bool any_hospital = false;
  for (std::size_t i = 0; i < municipalities.size(); ++i) {
    const auto& m = municipalities[i];
    if (m.id.empty()) throw InputError("municipality with empty id");
    if (i > 0 && municipalities[i - 1].id == m.id) {
      throw InputError("duplicate municipality id '" + m.id + "'");
    }
    if (m.population < 0) throw InputError("negative population for municipality '" + m.id + "'");
    if (m.beds < 0) throw InputError("negative bed count for municipality '" + m.id + "'");
    any_hospital = any_hospital || m.has_hospital();
  }
  if (!any_hospital) throw InputError("network has no hospitals (no municipality with beds > 0)");
  return municipalities;
}

CorridorNetwork CorridorNetwork::build(std::vector<MunicipalityRecord> municipalities,
                                       const std::vector<RoadSegment>& roads,
                                       BuildReport* report) {
  CorridorNetwork net;
  net.municipalities_ = validated(std::move(municipalities));

  struct Bundle {
    double length_km;
    std::int64_t road_count;
  };
  std::map<std::pair<MunicipalityIndex, MunicipalityIndex>, Bundle> bundles;
  BuildReport rep;
  rep.input_segments = roads.size();
  for (const auto& road : roads) {
    const auto a = net.find_municipality(road.muni_a);
    const auto b = net.find_municipality(road.muni_b);
    if (!a || !b) {
      throw InputError("road '" + road.road_id + "' references unknown municipality '" +
                       (a ? road.muni_b : road.muni_a) + "'");
    }
    if (!(road.length_km > 0.0) || !std::isfinite(road.length_km)) {
      throw InputError("road '" + road.road_id + "' has non-positive or non-finite length");
    }
    if (*a == *b) {
      ++rep.intra_municipality_dropped;
      continue;
    }
    const auto key = std::minmax(*a, *b);
    auto [it, inserted] = bundles.try_emplace({key.first, key.second}, Bundle{road.length_km, 1});
    if (!inserted) {
      it->second.length_km = std::min(it->second.length_km, road.length_km);
      ++it->second.road_count;
    }
    ++rep.bundled_segments;
  }

  net.corridors_.reserve(bundles.size());
  for (const auto& [key, bundle] : bundles) {
    Corridor c;
    c.a = key.first;
    c.b = key.second;
    c.id = CorridorId{net.municipalities_[c.a].id, net.municipalities_[c.b].id};
    c.length_km = bundle.length_km;
    c.road_count = bundle.road_count;
    rep.max_road_count = std::max(rep.max_road_count, c.road_count);
    if (c.road_count > 1) ++rep.multi_road_corridors;
    net.corridors_.push_back(std::move(c));
  }
  rep.corridors = net.corridors_.size();
  net.finalize();
  if (report != nullptr) *report = rep;
  return net;
}

CorridorNetwork CorridorNetwork::from_corridors(std::vector<MunicipalityRecord> municipalities,
                                                const std::vector<AggregatedCorridor>& corridors) {
  CorridorNetwork net;
  net.municipalities_ = validated(std::move(municipalities));
  net.corridors_.reserve(corridors.size());
  for (const auto& row : corridors) {
    const auto a = net.find_municipality(row.muni_a);
    const auto b = net.find_municipality(row.muni_b);
    const std::string label = row.muni_a + "|" + row.muni_b;
    if (!a || !b) {
      throw InputError("corridor '" + label + "' references unknown municipality '" +
                       (a ? row.muni_b : row.muni_a) + "'");
    }
    if (*a == *b) throw InputError("corridor '" + label + "' connects a municipality to itself");
    if (!(row.length_km > 0.0) || !std::isfinite(row.length_km)) {
      throw InputError("corridor '" + label + "' has non-positive or non-finite length");
    }
    if (row.road_count < 1) throw InputError("corridor '" + label + "' has road_count < 1");
    Corridor c;
    std::tie(c.a, c.b) = std::minmax(*a, *b);
    c.id = CorridorId{net.municipalities_[c.a].id, net.municipalities_[c.b].id};
    c.length_km = row.length_km;
    c.road_count = row.road_count;
    net.corridors_.push_back(std::move(c));
  }
  std::sort(net.corridors_.begin(), net.corridors_.end(),
            [](const Corridor& l, const Corridor& r) { return std::tie(l.a, l.b) < std::tie(r.a, r.b); });
  for (std::size_t i = 1; i < net.corridors_.size(); ++i) {
    if (net.corridors_[i].a == net.corridors_[i - 1].a &&
        net.corridors_[i].b == net.corridors_[i - 1].b) {
      throw InputError("duplicate corridor '" + net.corridors_[i].id.str() + "'");
    }
  }
  net.finalize();
  return net;
}

void CorridorNetwork::finalize() {
  const std::size_t n = municipalities_.size();
  hospitals_.clear();
  total_population_ = 0;
  for (MunicipalityIndex m = 0; m < n; ++m) {
    if (municipalities_[m].has_hospital()) hospitals_.push_back(m);
    total_population_ += municipalities_[m].population;
  }

  offsets_.assign(n + 1, 0);
  for (const auto& c : corridors_) {
    ++offsets_[c.a + 1];
    ++offsets_[c.b + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  arcs_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (CorridorIndex ci = 0; ci < corridors_.size(); ++ci) {
    const auto& c = corridors_[ci];
    arcs_[cursor[c.a]++] = Arc{ci, c.b, c.length_km};
    arcs_[cursor[c.b]++] = Arc{ci, c.a, c.length_km};
  }
}

std::optional<MunicipalityIndex> CorridorNetwork::find_municipality(std::string_view id) const {
  const auto it = std::lower_bound(municipalities_.begin(), municipalities_.end(), id,
                                   [](const MunicipalityRecord& m, std::string_view key) { return m.id < key; });
  if (it == municipalities_.end() || it->id != id) return std::nullopt;
  return static_cast<MunicipalityIndex>(it - municipalities_.begin());
}

std::optional<CorridorIndex> CorridorNetwork::find_corridor(const CorridorId& id) const {
  const auto it = std::lower_bound(corridors_.begin(), corridors_.end(), id,
                                   [](const Corridor& c, const CorridorId& key) { return c.id < key; });
  if (it == corridors_.end() || it->id != id) return std::nullopt;
  return static_cast<CorridorIndex>(it - corridors_.begin());
}

MunicipalityIndex CorridorNetwork::municipality_index(std::string_view id) const {
  if (auto m = find_municipality(id)) return *m;
  throw InputError("unknown municipality '" + std::string(id) + "'");
}

CorridorIndex CorridorNetwork::corridor_index(const CorridorId& id) const {
  if (auto c = find_corridor(id)) return *c;
  throw InputError("unknown corridor '" + id.str() + "'");
}

std::vector<CorridorIndex> CorridorNetwork::neighbors_of_corridor(CorridorIndex c) const {
  if (c >= corridors_.size()) throw InputError("corridor index out of range");
  const auto& focal = corridors_[c];
  std::vector<CorridorIndex> out;
  for (const auto endpoint : {focal.a, focal.b}) {
    for (const auto& arc : arcs(endpoint)) {
      if (arc.corridor != c) out.push_back(arc.corridor);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<CorridorIndex> CorridorNetwork::neighbors_of_corridor(const CorridorId& id) const {
  return neighbors_of_corridor(corridor_index(id));
}

std::vector<std::int64_t> CorridorNetwork::populations() const {
  std::vector<std::int64_t> out;
  out.reserve(municipalities_.size());
  for (const auto& m : municipalities_) out.push_back(m.population);
  return out;
}

DeletionMask DeletionMask::from_ids(const CorridorNetwork& net, std::span<const CorridorId> ids) {
  DeletionMask mask(net);
  for (const auto& id : ids) mask.remove(net.corridor_index(id));
  return mask;
}

DeletionMask DeletionMask::all(const CorridorNetwork& net) {
  DeletionMask mask(net);
  for (CorridorIndex c = 0; c < net.corridor_count(); ++c) mask.remove(c);
  return mask;
}

void DeletionMask::remove(CorridorIndex c) {
  if (c >= removed_.size()) throw InputError("deletion mask references unknown corridor index");
  if (!removed_[c]) {
    removed_[c] = true;
    ++count_;
  }
}

std::vector<CorridorIndex> DeletionMask::removed_list() const {
  std::vector<CorridorIndex> out;
  out.reserve(count_);
  for (CorridorIndex c = 0; c < removed_.size(); ++c) {
    if (removed_[c]) out.push_back(c);
  }
  return out;
}

std::size_t MaskedView::degree(MunicipalityIndex m) const {
  std::size_t d = 0;
  for_each_arc(m, [&](const CorridorNetwork::Arc&) { ++d; });
  return d;
}

MaskedView unmasked(const CorridorNetwork& net) { return MaskedView(net, nullptr); }

MaskedView apply_mask(const CorridorNetwork& net, const DeletionMask& mask) {
  if (mask.universe() != net.corridor_count()) {
    throw InputError("deletion mask does not match the network's corridor set");
  }
  return MaskedView(net, &mask);
}

}  // namespace roadstress
