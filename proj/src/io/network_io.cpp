#include "roadstress/io/network_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <set>
#include <string_view>

#include "roadstress/errors.hpp"
#include "roadstress/io/csv.hpp"

namespace roadstress::io {
namespace {

constexpr std::array<std::string_view, 6> kMunicipalityHeader{"id", "name", "population", "beds", "lat", "lon"};
constexpr std::array<std::string_view, 4> kRoadHeader{"road_id", "muni_a", "muni_b", "length_km"};
constexpr std::array<std::string_view, 4> kCorridorHeader{"muni_a", "muni_b", "length_km", "road_count"};

// Shortest representation that parses back to the same double.
std::string exact(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  return out;
}

std::vector<std::string> header_fields(std::span<const std::string_view> header) {
  return {header.begin(), header.end()};
}

}  // namespace

std::vector<MunicipalityRecord> read_municipalities(const std::filesystem::path& path) {
  const auto table = CsvTable::read(path, kMunicipalityHeader);
  std::vector<MunicipalityRecord> out;
  std::set<std::string> seen;
  for (const auto& row : table.rows()) {
    MunicipalityRecord m;
    m.id = table.text(row, 0);
    m.name = table.text(row, 1);
    m.population = table.integer(row, 2);
    m.beds = table.integer(row, 3);
    m.lat = table.real(row, 4);
    m.lon = table.real(row, 5);
    const auto where = path.string() + ":" + std::to_string(row.line) + ": ";
    if (m.id.empty()) throw InputError(where + "column 'id': empty municipality id");
    if (m.population < 0) throw InputError(where + "column 'population': negative population");
    if (m.beds < 0) throw InputError(where + "column 'beds': negative bed count");
    if (!seen.insert(m.id).second) throw InputError(where + "column 'id': duplicate municipality id '" + m.id + "'");
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<RoadSegment> read_roads(const std::filesystem::path& path) {
  const auto table = CsvTable::read(path, kRoadHeader);
  std::vector<RoadSegment> out;
  for (const auto& row : table.rows()) {
    RoadSegment r{table.text(row, 0), table.text(row, 1), table.text(row, 2), table.real(row, 3)};
    if (!(r.length_km > 0.0)) {
      throw InputError(path.string() + ":" + std::to_string(row.line) + ": column 'length_km': length must be positive");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<AggregatedCorridor> read_corridors(const std::filesystem::path& path) {
  const auto table = CsvTable::read(path, kCorridorHeader);
  std::vector<AggregatedCorridor> out;
  for (const auto& row : table.rows()) {
    AggregatedCorridor c{table.text(row, 0), table.text(row, 1), table.real(row, 2), table.integer(row, 3)};
    const auto where = path.string() + ":" + std::to_string(row.line) + ": ";
    if (!(c.length_km > 0.0)) throw InputError(where + "column 'length_km': length must be positive");
    if (c.road_count < 1) throw InputError(where + "column 'road_count': must be >= 1");
    out.push_back(std::move(c));
  }
  return out;
}

LoadedNetwork load_network(const InputPaths& paths) {
  if (paths.municipalities.empty()) throw InputError("no municipalities file given");
  const bool have_roads = !paths.roads.empty();
  const bool have_corridors = !paths.corridors.empty();
  if (have_roads == have_corridors) throw InputError("give exactly one of a roads file or a corridors file");
  for (const auto& p : {paths.municipalities, have_roads ? paths.roads : paths.corridors}) {
    if (!std::filesystem::is_regular_file(p)) throw InputError("input file not found: '" + p.string() + "'");
  }

  auto municipalities = read_municipalities(paths.municipalities);
  if (have_roads) {
    BuildReport report;
    auto net = CorridorNetwork::build(std::move(municipalities), read_roads(paths.roads), &report);
    return LoadedNetwork{std::move(net), report, false};
  }
  const auto corridors = read_corridors(paths.corridors);
  auto net = CorridorNetwork::from_corridors(std::move(municipalities), corridors);
  BuildReport report;
  report.corridors = net.corridor_count();
  for (const auto& c : net.corridors()) {
    report.input_segments += static_cast<std::size_t>(c.road_count);
    report.max_road_count = std::max(report.max_road_count, c.road_count);
    if (c.road_count > 1) ++report.multi_road_corridors;
  }
  report.bundled_segments = report.input_segments;
  return LoadedNetwork{std::move(net), report, true};
}

void write_municipalities(const std::vector<MunicipalityRecord>& municipalities, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_row(out, header_fields(kMunicipalityHeader));
  for (const auto& m : municipalities) {
    write_row(out, std::vector<std::string>{m.id, m.name, std::to_string(m.population), std::to_string(m.beds),
                                            exact(m.lat), exact(m.lon)});
  }
}

void write_municipalities(const CorridorNetwork& net, const std::filesystem::path& path) {
  write_municipalities(net.municipalities(), path);
}

void write_corridors(const CorridorNetwork& net, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_row(out, header_fields(kCorridorHeader));
  for (const auto& c : net.corridors()) {
    write_row(out, std::vector<std::string>{c.id.a, c.id.b, exact(c.length_km), std::to_string(c.road_count)});
  }
}

void write_roads(const std::vector<RoadSegment>& roads, const std::filesystem::path& path) {
  auto out = open_output(path);
  write_row(out, header_fields(kRoadHeader));
  for (const auto& r : roads) {
    write_row(out, std::vector<std::string>{r.road_id, r.muni_a, r.muni_b, exact(r.length_km)});
  }
}

}  // namespace roadstress::io
