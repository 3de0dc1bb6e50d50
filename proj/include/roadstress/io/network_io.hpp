#pragma once

#include <filesystem>
#include <vector>

#include "roadstress/corridor_graph.hpp"

namespace roadstress::io {

/// municipalities.csv: id,name,population,beds,lat,lon
std::vector<MunicipalityRecord> read_municipalities(const std::filesystem::path& path);
/// roads.csv: road_id,muni_a,muni_b,length_km
std::vector<RoadSegment> read_roads(const std::filesystem::path& path);
/// corridors.csv: muni_a,muni_b,length_km,road_count
std::vector<AggregatedCorridor> read_corridors(const std::filesystem::path& path);

struct InputPaths {
  std::filesystem::path municipalities;
  std::filesystem::path roads;      // exactly one of roads / corridors
  std::filesystem::path corridors;
};

struct LoadedNetwork {
  CorridorNetwork network;
  BuildReport report;
  bool pre_aggregated = false;
};

LoadedNetwork load_network(const InputPaths& paths);

void write_municipalities(const CorridorNetwork& net, const std::filesystem::path& path);
void write_corridors(const CorridorNetwork& net, const std::filesystem::path& path);
void write_roads(const std::vector<RoadSegment>& roads, const std::filesystem::path& path);
void write_municipalities(const std::vector<MunicipalityRecord>& municipalities, const std::filesystem::path& path);

}  // namespace roadstress::io
