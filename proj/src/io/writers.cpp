#include "roadstress/io/writers.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "roadstress/errors.hpp"
#include "roadstress/io/csv.hpp"

namespace roadstress::io {
namespace {

using Row = std::vector<std::string>;

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, Row header) : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw InputError("cannot write '" + path.string() + "'");
    write_row(out_, header);
  }
  void row(const Row& fields) { write_row(out_, fields); }

 private:
  std::ofstream out_;
};

std::string num(double x) { return format_number(x); }
std::string num(std::int64_t x) { return std::to_string(x); }
std::string num(std::size_t x) { return std::to_string(x); }

const std::string& mid(const CorridorNetwork& net, MunicipalityIndex m) { return net.municipality(m).id; }

// JSON number carrying the same 6 significant digits as the CSV outputs.
nlohmann::json json_number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_number(x));
}

}  // namespace

SingleRankings rank_single_sweep(std::span<const SingleDeletionResult> sweep) {
  std::vector<double> acis;
  std::vector<double> ha;
  std::vector<double> betweenness;
  for (const auto& r : sweep) {
    acis.push_back(r.score.acis);
    ha.push_back(r.score.ha_impact_pct);
    betweenness.push_back(r.score.betweenness);
  }
  return SingleRankings{make_rank_table("acis", std::move(acis)), make_rank_table("ha", std::move(ha)),
                        make_rank_table("betweenness", std::move(betweenness))};
}

void write_corridor_rankings(const std::filesystem::path& path, const CorridorNetwork& net,
                             std::span<const SingleDeletionResult> sweep, const SingleRankings& ranks,
                             const RankTable& row_order) {
  CsvFile out(path, {"corridor_id", "muni_a", "muni_b", "road_count", "acis", "ha_impact_pct", "betweenness",
                     "rank_acis", "rank_ha", "rank_betweenness"});
  const auto rank_acis = ranks.acis.ranks();
  const auto rank_ha = ranks.ha.ranks();
  const auto rank_bc = ranks.betweenness.ranks();
  for (const auto c : row_order.order) {
    const auto& corridor = net.corridor(c);
    const auto& score = sweep[c].score;
    out.row({corridor.id.str(), corridor.id.a, corridor.id.b, num(corridor.road_count), num(score.acis),
             num(score.ha_impact_pct), num(score.betweenness), num(rank_acis[c]), num(rank_ha[c]),
             num(rank_bc[c])});
  }
}

void write_neighborhood_rankings(const std::filesystem::path& path, const CorridorNetwork& net,
                                 std::span<const NeighborhoodResult> results) {
  CsvFile out(path, {"corridor_id", "p", "acis_mean", "acis_p90"});
  for (const auto& r : results) {
    out.row({net.corridor(r.corridor).id.str(), num(r.probability), num(r.acis_mean), num(r.acis_p90)});
  }
}

void write_ccdf(const std::filesystem::path& path, std::span<const double> scores) {
  CsvFile out(path, {"value", "fraction"});
  if (scores.empty()) return;
  for (const auto& p : ccdf_points(scores)) out.row({num(p.value), num(p.fraction)});
}

void write_travel_time_impacts(const std::filesystem::path& path, const CorridorNetwork& net,
                               std::span<const SingleDeletionResult> sweep) {
  CsvFile out(path, {"corridor_id", "threshold_min", "crossing_population", "newly_unreachable"});
  for (const auto& r : sweep) {
    for (std::size_t t = 0; t < r.crossings.thresholds_minutes.size(); ++t) {
      out.row({net.corridor(r.corridor).id.str(), num(r.crossings.thresholds_minutes[t]),
               num(r.crossings.crossing_population[t]), num(r.newly_unreachable)});
    }
  }
}

void write_hospital_impact(const std::filesystem::path& path, const CorridorNetwork& net,
                           std::span<const HospitalImpactRecord> records) {
  CsvFile out(path, {"hospital_id", "corridor_id", "ppb_initial", "ppb_stressed", "change_pct", "inbound_population"});
  for (const auto& r : records) {
    out.row({mid(net, r.hospital), net.corridor(r.corridor).id.str(), num(r.ppb_initial), num(r.ppb_stressed),
             num(r.change_pct), num(r.inbound_population)});
  }
}

void write_hospital_frequency(const std::filesystem::path& path, const CorridorNetwork& net,
                              std::span<const HospitalFrequency> frequencies) {
  CsvFile out(path, {"hospital_id", "affect_fraction"});
  for (const auto& f : frequencies) out.row({mid(net, f.hospital), num(f.fraction)});
}

void write_hospital_loads(const std::filesystem::path& path, const CorridorNetwork& net, const LoadSummary& loads) {
  CsvFile out(path, {"hospital_id", "beds", "catchment_population", "people_per_bed"});
  for (const auto& l : loads.loads) {
    out.row({mid(net, l.hospital), num(l.beds), num(l.catchment_population), num(l.people_per_bed)});
  }
}

void write_baseline_field(const std::filesystem::path& path, const CorridorNetwork& net, const Baseline& baseline,
                          double speed_kmh) {
  CsvFile out(path, {"municipality_id", "population", "distance_km", "travel_min", "nearest_hospital", "ha_m"});
  for (MunicipalityIndex m = 0; m < net.municipality_count(); ++m) {
    const double d = baseline.field.distance_km[m];
    const auto h = baseline.field.nearest_hospital[m];
    const auto ha = ha_municipality(net.municipality(m).population, d);
    out.row({mid(net, m), num(net.municipality(m).population), num(d), num(travel_minutes(d, speed_kmh)),
             h == kNoIndex ? std::string{} : mid(net, h), ha ? num(*ha) : std::string{}});
  }
}

void write_comparison(const std::filesystem::path& path, std::span<const ComparedMeasure> measures, std::size_t k) {
  CsvFile out(path, {"measure_a", "measure_b", "spearman_rho", "k_requested", "k_effective", "topk_overlap"});
  for (std::size_t i = 0; i < measures.size(); ++i) {
    for (std::size_t j = i + 1; j < measures.size(); ++j) {
      const auto& a = measures[i].table;
      const auto& b = measures[j].table;
      const double rho = a.scores.size() >= 2 ? spearman_rho(a.scores, b.scores)
                                              : std::numeric_limits<double>::quiet_NaN();
      const auto overlap = topk_overlap(a, b, k);
      out.row({measures[i].name, measures[j].name, num(rho), num(overlap.k_requested), num(overlap.k_effective),
               num(overlap.fraction)});
    }
  }
}

void write_overlay_geojson(const std::filesystem::path& path, const CorridorNetwork& net, const Baseline& baseline,
                           std::span<const SingleDeletionResult> sweep, const SingleRankings* ranks) {
  using nlohmann::json;
  json features = json::array();
  std::vector<std::size_t> rank_acis;
  if (ranks != nullptr) rank_acis = ranks->acis.ranks();
  for (CorridorIndex c = 0; c < net.corridor_count(); ++c) {
    const auto& corridor = net.corridor(c);
    const auto& a = net.municipality(corridor.a);
    const auto& b = net.municipality(corridor.b);
    json props = {{"kind", "corridor"},
                  {"corridor_id", corridor.id.str()},
                  {"muni_a", corridor.id.a},
                  {"muni_b", corridor.id.b},
                  {"road_count", corridor.road_count},
                  {"length_km", json_number(corridor.length_km)}};
    if (c < sweep.size()) {
      props["acis"] = json_number(sweep[c].score.acis);
      props["ha_impact_pct"] = json_number(sweep[c].score.ha_impact_pct);
      props["betweenness"] = json_number(sweep[c].score.betweenness);
      props["affected_population"] = sweep[c].affected_population;
    }
    if (!rank_acis.empty()) props["rank_acis"] = rank_acis[c];
    features.push_back({{"type", "Feature"},
                        {"geometry",
                         {{"type", "LineString"},
                          {"coordinates", {{json_number(a.lon), json_number(a.lat)}, {json_number(b.lon), json_number(b.lat)}}}}},
                        {"properties", std::move(props)}});
  }
  for (MunicipalityIndex m = 0; m < net.municipality_count(); ++m) {
    const auto& rec = net.municipality(m);
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "Point"}, {"coordinates", {json_number(rec.lon), json_number(rec.lat)}}}},
                        {"properties",
                         {{"kind", "municipality"},
                          {"id", rec.id},
                          {"name", rec.name},
                          {"population", rec.population},
                          {"beds", rec.beds},
                          {"baseline_distance_km", json_number(baseline.field.distance_km[m])}}}});
  }
  const json doc = {{"type", "FeatureCollection"}, {"features", std::move(features)}};
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << doc.dump(1) << '\n';
}

}  // namespace roadstress::io
