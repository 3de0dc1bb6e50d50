#pragma once

// Command pipeline shared by the CLI and the Python module: load inputs,
// run whatever sweeps a command needs, write its artifacts and a manifest.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "roadstress/io/network_io.hpp"
#include "roadstress/stress_engine.hpp"
#include "roadstress/synth.hpp"

namespace roadstress::io {

enum class Measure { acis, ha, betweenness, all };
enum class Command { build, baseline, stress_single, stress_neighborhood, hospital_impact, report, all };

Measure parse_measure(std::string_view text);
std::string to_string(Measure m);
Command parse_command(std::string_view text);
std::string to_string(Command c);

inline constexpr const char* kToolVersion = "0.3.0";
inline constexpr const char* kOutputDirEnv = "ROADSTRESS_OUT";

struct RunConfig {
  InputPaths inputs;
  Measure measure = Measure::all;
  std::vector<double> probabilities{0.1, 0.25, 0.5, 0.75};
  std::size_t replicates = 100;
  std::uint64_t global_seed = 0;
  double speed_kmh = kDefaultSpeedKmh;
  double betweenness_cutoff_km = kDefaultBetweennessCutoffKm;
  std::vector<double> thresholds_minutes = default_thresholds_minutes();
  std::size_t top_k = 100;
  std::size_t workers = 1;
  std::filesystem::path out_dir;

  /// Throws InputError on out-of-range parameters.
  void validate() const;
  SweepOptions sweep_options() const;
  NeighborhoodConfig neighborhood_config() const;
};

/// Creates the directory if needed and checks that it accepts files.
/// Throws InputError otherwise.
void ensure_writable_directory(const std::filesystem::path& dir);

/// Runs `command` and returns the written files in the order they were
/// written; manifest.json is always last.
std::vector<std::filesystem::path> run_command(Command command, const RunConfig& config);

/// Writes municipalities.csv and roads.csv for a synthetic network.
std::vector<std::filesystem::path> run_synth(const synth::Params& params, const std::filesystem::path& out_dir);

/// Re-runs the command recorded in a manifest after checking that the
/// input hashes still match. `out_dir` and `workers` override the recorded
/// values when given.
std::vector<std::filesystem::path> rerun_manifest(const std::filesystem::path& manifest,
                                                  const std::optional<std::filesystem::path>& out_dir,
                                                  std::optional<std::size_t> workers);

/// Lower-case hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

}  // namespace roadstress::io
