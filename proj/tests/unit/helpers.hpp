#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "roadstress/corridor_graph.hpp"
#include "roadstress/io/network_io.hpp"

namespace testing_helpers {

inline std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(ROADSTRESS_FIXTURES) / name; }

inline roadstress::CorridorNetwork t1() {
  roadstress::io::InputPaths paths;
  paths.municipalities = fixture("t1/municipalities.csv");
  paths.roads = fixture("t1/roads.csv");
  return roadstress::io::load_network(paths).network;
}

inline std::vector<roadstress::MunicipalityRecord> t1_municipalities() {
  return {{"A", "Alpha", 100, 10, 47.0, 13.0},
          {"B", "Bravo", 50, 0, 47.09, 13.0},
          {"C", "Charlie", 30, 0, 47.18, 13.0},
          {"D", "Delta", 20, 0, 47.27, 13.0}};
}

inline std::vector<roadstress::RoadSegment> t1_roads() {
  return {{"R1", "A", "B", 10}, {"R2", "B", "A", 12}, {"R3", "B", "C", 10}, {"R4", "C", "D", 10}, {"R5", "A", "C", 25}};
}

inline roadstress::DeletionMask mask_of(const roadstress::CorridorNetwork& net,
                                        std::initializer_list<std::pair<const char*, const char*>> ids) {
  std::vector<roadstress::CorridorId> list;
  for (const auto& [a, b] : ids) list.push_back(roadstress::CorridorId::canonical(a, b));
  return roadstress::DeletionMask::from_ids(net, list);
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void spit(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path());
  std::ofstream(path, std::ios::binary) << text;
}

/// Fresh, empty scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("roadstress_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testing_helpers
