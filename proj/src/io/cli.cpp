#include "roadstress/io/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <vector>

#include "roadstress/errors.hpp"
#include "roadstress/io/run.hpp"

namespace roadstress::io {
namespace {

struct CommonFlags {
  std::string municipalities;
  std::string roads;
  std::string corridors;
  std::string measure = "all";
  std::string out;
  RunConfig config;
};

void add_run_flags(CLI::App& sub, CommonFlags& f) {
  sub.add_option("--municipalities,-m", f.municipalities, "municipalities.csv (id,name,population,beds,lat,lon)")
      ->required();
  auto* roads = sub.add_option("--roads,-r", f.roads, "roads.csv (road_id,muni_a,muni_b,length_km)");
  auto* corridors =
      sub.add_option("--corridors,-c", f.corridors, "pre-aggregated corridors.csv (muni_a,muni_b,length_km,road_count)");
  roads->excludes(corridors);
  sub.add_option("--measure", f.measure, "acis | ha | betweenness | all")->capture_default_str();
  sub.add_option("--probabilities", f.config.probabilities, "neighbourhood deletion probabilities")
      ->delimiter(',')
      ->capture_default_str();
  sub.add_option("--replicates", f.config.replicates, "replicates per (corridor, p)")->capture_default_str();
  sub.add_option("--seed", f.config.global_seed, "global seed for neighbourhood draws")->capture_default_str();
  sub.add_option("--speed-kmh", f.config.speed_kmh, "constant travel speed")->capture_default_str();
  sub.add_option("--betweenness-cutoff-km", f.config.betweenness_cutoff_km, "max municipality-hospital distance")
      ->capture_default_str();
  sub.add_option("--thresholds", f.config.thresholds_minutes, "travel-time thresholds in minutes")
      ->delimiter(',')
      ->capture_default_str();
  sub.add_option("--top-k", f.config.top_k, "k for top-k overlaps")->capture_default_str();
  sub.add_option("--workers,-j", f.config.workers, "worker threads (does not change outputs)")->capture_default_str();
  sub.add_option("--out,-o", f.out, std::string("output directory (default: $") + kOutputDirEnv + " or ./out)");
}

std::filesystem::path resolve_out(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutputDirEnv); env != nullptr && *env != '\0') return env;
  return "out";
}

void report(std::ostream& out, const std::vector<std::filesystem::path>& written) {
  for (const auto& p : written) out << "wrote " << p.string() << '\n';
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stress tests of road corridor networks for hospital accessibility", "roadstress"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  CommonFlags flags;
  std::vector<std::pair<CLI::App*, Command>> run_commands;
  const std::vector<std::tuple<Command, const char*, const char*>> specs{
      {Command::build, "build", "ingest and validate inputs, emit the corridor network bundle"},
      {Command::baseline, "baseline", "nearest-hospital distances, accessibility and hospital loads"},
      {Command::stress_single, "stress-single", "delete every corridor in turn and rank them"},
      {Command::stress_neighborhood, "stress-neighborhood", "focal corridor plus random neighbour deletions"},
      {Command::hospital_impact, "hospital-impact", "catchment shifts and people-per-bed surges"},
      {Command::report, "report", "rank correlations, top-k overlaps and CCDFs"},
      {Command::all, "all", "every stage and every artifact"},
  };
  for (const auto& [command, name, help] : specs) {
    auto* sub = app.add_subcommand(name, help);
    add_run_flags(*sub, flags);
    run_commands.emplace_back(sub, command);
  }

  synth::Params synth_params;
  std::string synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "generate a synthetic valley/grid network");
  synth_cmd->add_option("--count,-n", synth_params.municipalities, "number of municipalities")->capture_default_str();
  synth_cmd->add_option("--hospital-fraction", synth_params.hospital_fraction)->capture_default_str();
  synth_cmd->add_option("--chain-fraction", synth_params.chain_fraction)->capture_default_str();
  synth_cmd->add_option("--min-chain-length", synth_params.min_chain_length)->capture_default_str();
  synth_cmd->add_option("--max-chain-length", synth_params.max_chain_length)->capture_default_str();
  synth_cmd->add_option("--diagonal-probability", synth_params.diagonal_probability)->capture_default_str();
  synth_cmd->add_option("--spacing-km", synth_params.grid_spacing_km)->capture_default_str();
  synth_cmd->add_option("--seed", synth_params.seed)->capture_default_str();
  synth_cmd->add_option("--out,-o", synth_out, "output directory");

  std::string manifest;
  std::string rerun_out;
  std::size_t rerun_workers = 0;
  auto* rerun_cmd = app.add_subcommand("rerun", "repeat a run recorded in manifest.json");
  rerun_cmd->add_option("--manifest", manifest, "manifest.json from a previous run")->required();
  rerun_cmd->add_option("--out,-o", rerun_out, "output directory (default: the manifest's directory)");
  rerun_cmd->add_option("--workers,-j", rerun_workers, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return 1;
  }

  try {
    if (synth_cmd->parsed()) {
      report(out, run_synth(synth_params, resolve_out(synth_out)));
      return 0;
    }
    if (rerun_cmd->parsed()) {
      std::optional<std::filesystem::path> dir;
      if (!rerun_out.empty()) dir = rerun_out;
      std::optional<std::size_t> workers;
      if (rerun_workers > 0) workers = rerun_workers;
      report(out, rerun_manifest(manifest, dir, workers));
      return 0;
    }
    for (const auto& [sub, command] : run_commands) {
      if (!sub->parsed()) continue;
      RunConfig config = flags.config;
      config.inputs = {flags.municipalities, flags.roads, flags.corridors};
      config.measure = parse_measure(flags.measure);
      config.out_dir = resolve_out(flags.out);
      report(out, run_command(command, config));
      return 0;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}

}  // namespace roadstress::io
