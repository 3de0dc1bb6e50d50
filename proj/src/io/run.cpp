#include "roadstress/io/run.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>
#include <nlohmann/json.hpp>

#include "roadstress/errors.hpp"
#include "roadstress/hospital_impact.hpp"
#include "roadstress/io/csv.hpp"
#include "roadstress/io/writers.hpp"

namespace roadstress::io {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::array<std::pair<Command, std::string_view>, 7> kCommands{{
    {Command::build, "build"},
    {Command::baseline, "baseline"},
    {Command::stress_single, "stress-single"},
    {Command::stress_neighborhood, "stress-neighborhood"},
    {Command::hospital_impact, "hospital-impact"},
    {Command::report, "report"},
    {Command::all, "all"},
}};

void write_json(const fs::path& path, const json& doc) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
}

// Everything a command might need, computed on first use.
class Pipeline {
 public:
  explicit Pipeline(const RunConfig& config) : config_(config), loaded_(load_network(config.inputs)) {}

  const CorridorNetwork& net() const { return loaded_.network; }
  const BuildReport& report() const { return loaded_.report; }

  const Baseline& baseline() {
    if (!baseline_) baseline_ = compute_baseline(net(), config_.sweep_options());
    return *baseline_;
  }

  const std::vector<SingleDeletionResult>& single() {
    if (!single_) single_ = run_single_sweep(net(), baseline(), config_.sweep_options());
    return *single_;
  }

  const std::vector<NeighborhoodResult>& neighborhood() {
    if (!neighborhood_) {
      neighborhood_ = run_neighborhood_sweep(net(), baseline(), config_.neighborhood_config(),
                                             config_.sweep_options());
    }
    return *neighborhood_;
  }

  const SingleRankings& rankings() {
    if (!rankings_) rankings_ = rank_single_sweep(single());
    return *rankings_;
  }

 private:
  const RunConfig& config_;
  LoadedNetwork loaded_;
  std::optional<Baseline> baseline_;
  std::optional<std::vector<SingleDeletionResult>> single_;
  std::optional<std::vector<NeighborhoodResult>> neighborhood_;
  std::optional<SingleRankings> rankings_;
};

bool wants(Measure selected, Measure m) { return selected == Measure::all || selected == m; }

json build_report_json(const BuildReport& r, bool pre_aggregated) {
  return {{"pre_aggregated", pre_aggregated},
          {"input_segments", r.input_segments},
          {"intra_municipality_dropped", r.intra_municipality_dropped},
          {"bundled_segments", r.bundled_segments},
          {"corridors", r.corridors},
          {"multi_road_corridors", r.multi_road_corridors},
          {"max_road_count", r.max_road_count}};
}

json parameters_json(const RunConfig& c) {
  return {{"measure", to_string(c.measure)},
          {"probabilities", c.probabilities},
          {"replicates", c.replicates},
          {"global_seed", c.global_seed},
          {"speed_kmh", c.speed_kmh},
          {"betweenness_cutoff_km", c.betweenness_cutoff_km},
          {"thresholds_minutes", c.thresholds_minutes},
          {"top_k", c.top_k}};
}

json input_json(const char* role, const fs::path& path) {
  const auto absolute = fs::weakly_canonical(fs::absolute(path));
  return {{"role", role}, {"path", absolute.string()}, {"sha256", sha256_file(path)}};
}

std::string p_label(double p) { return format_number(p); }

void write_baseline_outputs(Pipeline& pipe, const RunConfig& config, std::vector<fs::path>& written) {
  const auto& net = pipe.net();
  const auto& base = pipe.baseline();
  const auto loads = hospital_loads(catchment(base.field), net);
  const auto dir = config.out_dir;
  write_baseline_field(dir / "baseline_field.csv", net, base, config.speed_kmh);
  write_hospital_loads(dir / "hospital_loads.csv", net, loads);
  const double dist_max = base.field.max_finite_distance();
  write_json(dir / "baseline_summary.json",
             {{"municipalities", net.municipality_count()},
              {"corridors", net.corridor_count()},
              {"hospitals", net.hospitals().size()},
              {"total_population", net.total_population()},
              {"unassigned_population", loads.unassigned_population},
              {"dist_max_km", dist_max},
              {"baseline_integral", integrate_curve(base.curve, dist_max)},
              {"ha_total", base.ha_defined ? json(base.ha) : json(nullptr)}});
  written.insert(written.end(),
                 {dir / "baseline_field.csv", dir / "hospital_loads.csv", dir / "baseline_summary.json"});
}

void write_ccdfs(Pipeline& pipe, const RunConfig& config, std::vector<fs::path>& written) {
  const auto& ranks = pipe.rankings();
  const auto dir = config.out_dir;
  write_ccdf(dir / "ccdf_acis.csv", ranks.acis.scores);
  written.push_back(dir / "ccdf_acis.csv");
  if (wants(config.measure, Measure::ha)) {
    write_ccdf(dir / "ccdf_ha.csv", ranks.ha.scores);
    written.push_back(dir / "ccdf_ha.csv");
  }
  if (wants(config.measure, Measure::betweenness)) {
    write_ccdf(dir / "ccdf_betweenness.csv", ranks.betweenness.scores);
    written.push_back(dir / "ccdf_betweenness.csv");
  }
}

void write_single_outputs(Pipeline& pipe, const RunConfig& config, std::vector<fs::path>& written) {
  const auto& net = pipe.net();
  const auto& sweep = pipe.single();
  const auto& ranks = pipe.rankings();
  const auto dir = config.out_dir;
  const RankTable& order = config.measure == Measure::ha            ? ranks.ha
                           : config.measure == Measure::betweenness ? ranks.betweenness
                                                                    : ranks.acis;
  write_corridor_rankings(dir / "corridor_rankings.csv", net, sweep, ranks, order);
  write_travel_time_impacts(dir / "travel_time_impacts.csv", net, sweep);
  written.insert(written.end(), {dir / "corridor_rankings.csv", dir / "travel_time_impacts.csv"});
  write_ccdfs(pipe, config, written);
  write_overlay_geojson(dir / "overlay.geojson", net, pipe.baseline(), sweep, &ranks);
  written.push_back(dir / "overlay.geojson");
}

void write_neighborhood_outputs(Pipeline& pipe, const RunConfig& config, std::vector<fs::path>& written) {
  write_neighborhood_rankings(config.out_dir / "neighborhood_rankings.csv", pipe.net(), pipe.neighborhood());
  written.push_back(config.out_dir / "neighborhood_rankings.csv");
}

void write_hospital_outputs(Pipeline& pipe, const RunConfig& config, std::vector<fs::path>& written) {
  const auto& net = pipe.net();
  const auto& sweep = pipe.single();
  const auto dir = config.out_dir;
  write_hospital_impact(dir / "hospital_impact.csv", net, hospital_impact_table(net, pipe.baseline(), sweep));
  write_hospital_frequency(dir / "hospital_frequency.csv", net, hospital_affect_frequency(net, sweep));
  written.insert(written.end(), {dir / "hospital_impact.csv", dir / "hospital_frequency.csv"});
}

void write_report_outputs(Pipeline& pipe, const RunConfig& config, std::vector<fs::path>& written) {
  const auto& ranks = pipe.rankings();
  std::vector<ComparedMeasure> measures{{"acis", ranks.acis}, {"ha", ranks.ha}, {"betweenness", ranks.betweenness}};
  const auto& nbhd = pipe.neighborhood();
  const std::size_t per_focal = config.probabilities.size();
  for (std::size_t pi = 0; pi < per_focal; ++pi) {
    std::vector<double> mean;
    std::vector<double> p90;
    for (std::size_t c = 0; c < pipe.net().corridor_count(); ++c) {
      mean.push_back(nbhd[c * per_focal + pi].acis_mean);
      p90.push_back(nbhd[c * per_focal + pi].acis_p90);
    }
    const auto label = p_label(config.probabilities[pi]);
    measures.push_back({"nbhd_mean_p" + label, make_rank_table("nbhd_mean_p" + label, std::move(mean))});
    measures.push_back({"nbhd_p90_p" + label, make_rank_table("nbhd_p90_p" + label, std::move(p90))});
  }
  write_comparison(config.out_dir / "comparison.csv", measures, config.top_k);
  written.push_back(config.out_dir / "comparison.csv");
}

}  // namespace

Measure parse_measure(std::string_view text) {
  if (text == "acis") return Measure::acis;
  if (text == "ha") return Measure::ha;
  if (text == "betweenness") return Measure::betweenness;
  if (text == "all") return Measure::all;
  throw InputError("unknown measure '" + std::string(text) + "' (expected acis, ha, betweenness or all)");
}

std::string to_string(Measure m) {
  switch (m) {
    case Measure::acis: return "acis";
    case Measure::ha: return "ha";
    case Measure::betweenness: return "betweenness";
    case Measure::all: return "all";
  }
  return "all";
}

Command parse_command(std::string_view text) {
  for (const auto& [command, name] : kCommands) {
    if (name == text) return command;
  }
  throw InputError("unknown command '" + std::string(text) + "'");
}

std::string to_string(Command c) {
  for (const auto& [command, name] : kCommands) {
    if (command == c) return std::string(name);
  }
  return "all";
}

void RunConfig::validate() const {
  neighborhood_config().validate();
  if (!(speed_kmh > 0.0)) throw InputError("speed must be positive");
  if (!(betweenness_cutoff_km >= 0.0)) throw InputError("betweenness cutoff must be >= 0");
  if (top_k < 1) throw InputError("top-k must be >= 1");
  if (workers < 1) throw InputError("worker count must be >= 1");
  for (const double t : thresholds_minutes) {
    if (!(t > 0.0)) throw InputError("travel-time thresholds must be positive");
  }
}

SweepOptions RunConfig::sweep_options() const {
  SweepOptions o;
  o.workers = workers;
  o.speed_kmh = speed_kmh;
  o.thresholds_minutes = thresholds_minutes;
  o.betweenness_cutoff_km = betweenness_cutoff_km;
  return o;
}

NeighborhoodConfig RunConfig::neighborhood_config() const {
  NeighborhoodConfig n;
  n.probabilities = probabilities;
  n.replicates = replicates;
  n.global_seed = global_seed;
  return n;
}

void ensure_writable_directory(const fs::path& dir) {
  if (dir.empty()) throw InputError("no output directory given");
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError("output directory not writable: '" + dir.string() + "'");
  const auto probe = dir / ".roadstress-write-probe";
  {
    std::ofstream out(probe, std::ios::binary | std::ios::trunc);
    if (!out || !(out << "ok")) throw InputError("output directory not writable: '" + dir.string() + "'");
  }
  fs::remove(probe, ec);
}

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file '" + path.string() + "'");
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) throw InvariantError("SHA-256 unavailable");
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &len);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

std::vector<fs::path> run_command(Command command, const RunConfig& config) {
  config.validate();
  Pipeline pipe(config);
  ensure_writable_directory(config.out_dir);
  std::vector<fs::path> written;
  const auto& dir = config.out_dir;
  const bool everything = command == Command::all;

  if (command == Command::build || everything) {
    write_municipalities(pipe.net(), dir / "municipalities.csv");
    write_corridors(pipe.net(), dir / "corridors.csv");
    write_json(dir / "build_report.json", build_report_json(pipe.report(), !config.inputs.corridors.empty()));
    written.insert(written.end(), {dir / "municipalities.csv", dir / "corridors.csv", dir / "build_report.json"});
  }
  if (command == Command::baseline || everything) write_baseline_outputs(pipe, config, written);
  if (command == Command::stress_single || everything) write_single_outputs(pipe, config, written);
  if (command == Command::stress_neighborhood || everything) write_neighborhood_outputs(pipe, config, written);
  if (command == Command::hospital_impact || everything) write_hospital_outputs(pipe, config, written);
  if (command == Command::report) write_ccdfs(pipe, config, written);
  if (command == Command::report || everything) write_report_outputs(pipe, config, written);

  json inputs = json::array();
  inputs.push_back(input_json("municipalities", config.inputs.municipalities));
  if (!config.inputs.roads.empty()) inputs.push_back(input_json("roads", config.inputs.roads));
  if (!config.inputs.corridors.empty()) inputs.push_back(input_json("corridors", config.inputs.corridors));
  json outputs = json::array();
  for (const auto& p : written) outputs.push_back(p.filename().string());
  write_json(dir / "manifest.json", {{"tool", "roadstress"},
                                     {"version", kToolVersion},
                                     {"command", to_string(command)},
                                     {"inputs", std::move(inputs)},
                                     {"parameters", parameters_json(config)},
                                     {"outputs", std::move(outputs)}});
  written.push_back(dir / "manifest.json");
  return written;
}

std::vector<fs::path> run_synth(const synth::Params& params, const fs::path& out_dir) {
  ensure_writable_directory(out_dir);
  const auto net = synth::generate_valley_grid(params);
  write_municipalities(net.municipalities, out_dir / "municipalities.csv");
  write_roads(net.roads, out_dir / "roads.csv");
  write_json(out_dir / "manifest.json",
             {{"tool", "roadstress"},
              {"version", kToolVersion},
              {"command", "synth"},
              {"generator",
               {{"name", "valley-grid"},
                {"municipalities", params.municipalities},
                {"hospital_fraction", params.hospital_fraction},
                {"chain_fraction", params.chain_fraction},
                {"min_chain_length", params.min_chain_length},
                {"max_chain_length", params.max_chain_length},
                {"diagonal_probability", params.diagonal_probability},
                {"grid_spacing_km", params.grid_spacing_km},
                {"seed", params.seed}}},
              {"outputs", {"municipalities.csv", "roads.csv"}}});
  return {out_dir / "municipalities.csv", out_dir / "roads.csv", out_dir / "manifest.json"};
}

std::vector<fs::path> rerun_manifest(const fs::path& manifest, const std::optional<fs::path>& out_dir,
                                     std::optional<std::size_t> workers) {
  std::ifstream in(manifest, std::ios::binary);
  if (!in) throw InputError("cannot open manifest '" + manifest.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("manifest '" + manifest.string() + "' is not valid JSON: " + e.what());
  }
  try {
    if (doc.at("tool") != "roadstress") throw InputError("manifest was not written by roadstress");
    const std::string command = doc.at("command");
    const fs::path dir = out_dir ? *out_dir : manifest.parent_path();

    if (command == "synth") {
      const auto& g = doc.at("generator");
      synth::Params params;
      params.municipalities = g.at("municipalities");
      params.hospital_fraction = g.at("hospital_fraction");
      params.chain_fraction = g.at("chain_fraction");
      params.min_chain_length = g.at("min_chain_length");
      params.max_chain_length = g.at("max_chain_length");
      params.diagonal_probability = g.at("diagonal_probability");
      params.grid_spacing_km = g.at("grid_spacing_km");
      params.seed = g.at("seed");
      return run_synth(params, dir);
    }

    RunConfig config;
    for (const auto& input : doc.at("inputs")) {
      const std::string role = input.at("role");
      const fs::path path = input.at("path").get<std::string>();
      if (!fs::is_regular_file(path)) throw InputError("input file not found: '" + path.string() + "'");
      if (sha256_file(path) != input.at("sha256").get<std::string>()) {
        throw InputError("input file changed since the manifest was written: '" + path.string() + "'");
      }
      if (role == "municipalities") config.inputs.municipalities = path;
      else if (role == "roads") config.inputs.roads = path;
      else if (role == "corridors") config.inputs.corridors = path;
      else throw InputError("manifest lists an unknown input role '" + role + "'");
    }
    const auto& p = doc.at("parameters");
    config.measure = parse_measure(p.at("measure").get<std::string>());
    config.probabilities = p.at("probabilities").get<std::vector<double>>();
    config.replicates = p.at("replicates");
    config.global_seed = p.at("global_seed");
    config.speed_kmh = p.at("speed_kmh");
    config.betweenness_cutoff_km = p.at("betweenness_cutoff_km");
    config.thresholds_minutes = p.at("thresholds_minutes").get<std::vector<double>>();
    config.top_k = p.at("top_k");
    config.workers = workers.value_or(1);
    config.out_dir = dir;
    return run_command(parse_command(command), config);
  } catch (const json::exception& e) {
    throw InputError("manifest '" + manifest.string() + "' is missing or has malformed fields: " + e.what());
  }
}

}  // namespace roadstress::io
