#pragma once

// Coarse-grained corridor network: municipalities as nodes, one undirected
// corridor per municipality pair that shares at least one road segment.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace roadstress {

using MunicipalityIndex = std::uint32_t;
using CorridorIndex = std::uint32_t;

inline constexpr std::uint32_t kNoIndex = std::numeric_limits<std::uint32_t>::max();

struct MunicipalityRecord {
  std::string id;
  std::string name;
  std::int64_t population = 0;
  std::int64_t beds = 0;  // 0 = no hospital
  double lat = 0.0;
  double lon = 0.0;

  bool has_hospital() const { return beds > 0; }
  bool operator==(const MunicipalityRecord&) const = default;
};

struct RoadSegment {
  std::string road_id;
  std::string muni_a;
  std::string muni_b;
  double length_km = 0.0;
};

/// Row of the pre-aggregated corridor input (bundling already done upstream).
struct AggregatedCorridor {
  std::string muni_a;
  std::string muni_b;
  double length_km = 0.0;
  std::int64_t road_count = 1;
};

/// Canonical unordered municipality pair, `a < b` bytewise.
struct CorridorId {
  std::string a;
  std::string b;

  static CorridorId canonical(std::string x, std::string y);
  /// "a|b"
  std::string str() const;
  static CorridorId parse(std::string_view text);

  auto operator<=>(const CorridorId&) const = default;
  bool operator==(const CorridorId&) const = default;
};

struct Corridor {
  CorridorId id;
  MunicipalityIndex a = kNoIndex;
  MunicipalityIndex b = kNoIndex;
  double length_km = 0.0;
  std::int64_t road_count = 0;

  MunicipalityIndex other(MunicipalityIndex m) const { return m == a ? b : a; }
  bool touches(MunicipalityIndex m) const { return m == a || m == b; }
  bool operator==(const Corridor&) const = default;
};

struct BuildReport {
  std::size_t input_segments = 0;
  std::size_t intra_municipality_dropped = 0;
  std::size_t bundled_segments = 0;
  std::size_t corridors = 0;
  std::size_t multi_road_corridors = 0;
  std::int64_t max_road_count = 0;
};

/// Immutable after construction. Municipalities are stored sorted by id and
/// corridors sorted by CorridorId, so index order equals canonical id order.
class CorridorNetwork {
 public:
  struct Arc {
    CorridorIndex corridor;
    MunicipalityIndex to;
    double length_km;
  };

  static CorridorNetwork build(std::vector<MunicipalityRecord> municipalities,
                               const std::vector<RoadSegment>& roads,
                               BuildReport* report = nullptr);

  static CorridorNetwork from_corridors(std::vector<MunicipalityRecord> municipalities,
                                        const std::vector<AggregatedCorridor>& corridors);

  std::size_t municipality_count() const { return municipalities_.size(); }
  std::size_t corridor_count() const { return corridors_.size(); }

  const std::vector<MunicipalityRecord>& municipalities() const { return municipalities_; }
  const std::vector<Corridor>& corridors() const { return corridors_; }
  const MunicipalityRecord& municipality(MunicipalityIndex m) const { return municipalities_[m]; }
  const Corridor& corridor(CorridorIndex c) const { return corridors_[c]; }

  /// Hospital municipalities in ascending index (= id) order.
  const std::vector<MunicipalityIndex>& hospitals() const { return hospitals_; }

  std::optional<MunicipalityIndex> find_municipality(std::string_view id) const;
  std::optional<CorridorIndex> find_corridor(const CorridorId& id) const;
  /// Throws InputError for ids not in the network.
  MunicipalityIndex municipality_index(std::string_view id) const;
  CorridorIndex corridor_index(const CorridorId& id) const;

  std::span<const Arc> arcs(MunicipalityIndex m) const {
    return {arcs_.data() + offsets_[m], arcs_.data() + offsets_[m + 1]};
  }
  std::size_t degree(MunicipalityIndex m) const { return offsets_[m + 1] - offsets_[m]; }

  /// Corridors sharing at least one endpoint with `c`, excluding `c`, ascending.
  std::vector<CorridorIndex> neighbors_of_corridor(CorridorIndex c) const;
  std::vector<CorridorIndex> neighbors_of_corridor(const CorridorId& id) const;

  std::int64_t total_population() const { return total_population_; }

  std::vector<std::int64_t> populations() const;

  bool operator==(const CorridorNetwork& other) const {
    return municipalities_ == other.municipalities_ && corridors_ == other.corridors_;
  }

 private:
  CorridorNetwork() = default;
  static std::vector<MunicipalityRecord> validated(std::vector<MunicipalityRecord> municipalities);
  void finalize();

  std::vector<MunicipalityRecord> municipalities_;
  std::vector<Corridor> corridors_;
  std::vector<MunicipalityIndex> hospitals_;
  std::vector<std::size_t> offsets_;
  std::vector<Arc> arcs_;
  std::int64_t total_population_ = 0;
};

/// A stress scenario: the set of removed corridors, as a bitmap over the
/// network's corridor indices.
class DeletionMask {
 public:
  DeletionMask() = default;
  explicit DeletionMask(std::size_t corridor_count) : removed_(corridor_count, false) {}
  explicit DeletionMask(const CorridorNetwork& net) : DeletionMask(net.corridor_count()) {}

  static DeletionMask from_ids(const CorridorNetwork& net, std::span<const CorridorId> ids);
  static DeletionMask all(const CorridorNetwork& net);

  /// Throws InputError when `c` is outside the universe.
  void remove(CorridorIndex c);
  bool removed(CorridorIndex c) const { return removed_[c]; }
  std::size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  std::size_t universe() const { return removed_.size(); }
  std::vector<CorridorIndex> removed_list() const;

  bool operator==(const DeletionMask&) const = default;

 private:
  std::vector<bool> removed_;
  std::size_t count_ = 0;
};

/// Read-only traversal view; removed corridors are invisible to adjacency.
class MaskedView {
 public:
  MaskedView(const CorridorNetwork& net, const DeletionMask* mask) : net_(&net), mask_(mask) {}

  const CorridorNetwork& network() const { return *net_; }
  bool traversable(CorridorIndex c) const { return mask_ == nullptr || !mask_->removed(c); }

  template <typename Fn>
  void for_each_arc(MunicipalityIndex m, Fn&& fn) const {
    for (const auto& arc : net_->arcs(m)) {
      if (traversable(arc.corridor)) fn(arc);
    }
  }

  std::size_t degree(MunicipalityIndex m) const;

 private:
  const CorridorNetwork* net_;
  const DeletionMask* mask_;
};

MaskedView unmasked(const CorridorNetwork& net);
/// Throws InputError when the mask was built for a different corridor set.
MaskedView apply_mask(const CorridorNetwork& net, const DeletionMask& mask);

}  // namespace roadstress
