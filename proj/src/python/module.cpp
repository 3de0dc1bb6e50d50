#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "roadstress/accessibility.hpp"
#include "roadstress/corridor_graph.hpp"
#include "roadstress/errors.hpp"
#include "roadstress/hospital_impact.hpp"
#include "roadstress/io/cli.hpp"
#include "roadstress/io/network_io.hpp"
#include "roadstress/statistics.hpp"
#include "roadstress/stress_engine.hpp"
#include "roadstress/synth.hpp"

namespace py = pybind11;
using namespace roadstress;

namespace {

DeletionMask mask_of(const CorridorNetwork& net, const std::vector<std::string>& removed) {
  std::vector<CorridorId> ids;
  for (const auto& text : removed) ids.push_back(CorridorId::parse(text));
  return DeletionMask::from_ids(net, ids);
}

py::object distance_or_none(double d) { return d == kUnreachable ? py::none() : py::cast(d); }

py::dict field_dict(const CorridorNetwork& net, const DistanceField& field) {
  py::dict out;
  for (MunicipalityIndex m = 0; m < net.municipality_count(); ++m) {
    const auto h = field.nearest_hospital[m];
    out[py::str(net.municipality(m).id)] =
        py::make_tuple(distance_or_none(field.distance_km[m]),
                       h == kNoIndex ? py::object(py::none()) : py::cast(net.municipality(h).id));
  }
  return out;
}

DistanceField field_for(const CorridorNetwork& net, const std::vector<std::string>& removed) {
  const auto mask = mask_of(net, removed);
  return nearest_hospital_field(apply_mask(net, mask));
}

AccessCurve curve_from(const std::vector<std::pair<double, std::int64_t>>& points) {
  AccessCurve curve;
  for (const auto& [d, p] : points) curve.points.push_back({d, p});
  return curve;
}

std::vector<std::string> corridor_ids(const CorridorNetwork& net) {
  std::vector<std::string> out;
  for (const auto& c : net.corridors()) out.push_back(c.id.str());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Corridor-deletion stress tests for hospital accessibility on road networks.";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);

  py::class_<CorridorNetwork>(m, "CorridorNetwork")
      .def_static(
          "from_files",
          [](const std::filesystem::path& municipalities, std::optional<std::filesystem::path> roads,
             std::optional<std::filesystem::path> corridors) {
            io::InputPaths paths{municipalities, roads.value_or(""), corridors.value_or("")};
            return io::load_network(paths).network;
          },
          py::arg("municipalities"), py::arg("roads") = py::none(), py::arg("corridors") = py::none())
      .def_static(
          "from_records",
          [](const std::vector<std::tuple<std::string, std::string, std::int64_t, std::int64_t, double, double>>& munis,
             const std::vector<std::tuple<std::string, std::string, std::string, double>>& roads) {
            std::vector<MunicipalityRecord> records;
            for (const auto& [id, name, pop, beds, lat, lon] : munis) records.push_back({id, name, pop, beds, lat, lon});
            std::vector<RoadSegment> segments;
            for (const auto& [rid, a, b, len] : roads) segments.push_back({rid, a, b, len});
            return CorridorNetwork::build(std::move(records), segments);
          },
          py::arg("municipalities"), py::arg("roads"),
          "municipalities: (id, name, population, beds, lat, lon); roads: (road_id, muni_a, muni_b, length_km)")
      .def_property_readonly("municipality_count", &CorridorNetwork::municipality_count)
      .def_property_readonly("corridor_count", &CorridorNetwork::corridor_count)
      .def_property_readonly("municipality_ids",
                             [](const CorridorNetwork& net) {
                               std::vector<std::string> out;
                               for (const auto& rec : net.municipalities()) out.push_back(rec.id);
                               return out;
                             })
      .def_property_readonly("corridor_ids", &corridor_ids)
      .def("road_count",
           [](const CorridorNetwork& net, const std::string& id) {
             return net.corridor(net.corridor_index(CorridorId::parse(id))).road_count;
           })
      .def("length_km",
           [](const CorridorNetwork& net, const std::string& id) {
             return net.corridor(net.corridor_index(CorridorId::parse(id))).length_km;
           })
      .def("neighbors", [](const CorridorNetwork& net, const std::string& id) {
        std::vector<std::string> out;
        for (const auto c : net.neighbors_of_corridor(CorridorId::parse(id))) out.push_back(net.corridor(c).id.str());
        return out;
      });

  m.def(
      "nearest_hospital_field",
      [](const CorridorNetwork& net, const std::vector<std::string>& removed) {
        return field_dict(net, field_for(net, removed));
      },
      py::arg("network"), py::arg("removed") = std::vector<std::string>{},
      "Map municipality id -> (distance_km or None, nearest hospital id or None).");

  m.def(
      "access_curve",
      [](const CorridorNetwork& net, const std::vector<std::string>& removed) {
        std::vector<std::pair<double, std::int64_t>> out;
        for (const auto& p : access_curve(field_for(net, removed), net.populations()).points) {
          out.emplace_back(p.distance_km, p.cumulative_population);
        }
        return out;
      },
      py::arg("network"), py::arg("removed") = std::vector<std::string>{});

  m.def(
      "integrate_curve",
      [](const std::vector<std::pair<double, std::int64_t>>& points, double upper) {
        return integrate_curve(curve_from(points), upper);
      },
      py::arg("points"), py::arg("upper_km"));

  m.def(
      "acis",
      [](const CorridorNetwork& net, const std::vector<std::string>& removed) {
        const auto pops = net.populations();
        const auto base = access_curve(nearest_hospital_field(unmasked(net)), pops);
        return acis(base, access_curve(field_for(net, removed), pops));
      },
      py::arg("network"), py::arg("removed"));

  m.def(
      "ha_total",
      [](const CorridorNetwork& net, const std::vector<std::string>& removed) {
        return ha_total(field_for(net, removed), net);
      },
      py::arg("network"), py::arg("removed") = std::vector<std::string>{});
  m.def("ha_impact", &ha_impact, py::arg("base_ha"), py::arg("stressed_ha"));

  m.def(
      "edge_betweenness",
      [](const CorridorNetwork& net, double cutoff) {
        const auto scores = edge_betweenness_hospital(net, cutoff);
        std::map<std::string, double> out;
        for (CorridorIndex c = 0; c < scores.size(); ++c) out[net.corridor(c).id.str()] = scores[c];
        return out;
      },
      py::arg("network"), py::arg("cutoff_km") = kDefaultBetweennessCutoffKm);

  m.def(
      "travel_minutes",
      [](std::optional<double> km, double speed) -> std::optional<double> {
        if (!km) return std::nullopt;
        return travel_minutes(*km, speed);
      },
      py::arg("distance_km"), py::arg("speed_kmh") = kDefaultSpeedKmh);

  m.def(
      "single_sweep",
      [](const CorridorNetwork& net, std::size_t workers) {
        SweepOptions options;
        options.workers = workers;
        py::list out;
        for (const auto& r : run_single_sweep(net, options)) {
          py::dict row;
          row["corridor_id"] = net.corridor(r.corridor).id.str();
          row["acis"] = r.score.acis;
          row["ha_impact_pct"] = r.score.ha_impact_pct;
          row["betweenness"] = r.score.betweenness;
          row["affected_population"] = r.affected_population;
          row["newly_unreachable"] = r.newly_unreachable;
          row["crossing_population"] = r.crossings.crossing_population;
          out.append(row);
        }
        return out;
      },
      py::arg("network"), py::arg("workers") = 1);

  m.def(
      "neighborhood_sweep",
      [](const CorridorNetwork& net, std::vector<double> probabilities, std::size_t replicates, std::uint64_t seed,
         std::size_t workers) {
        NeighborhoodConfig config;
        config.probabilities = std::move(probabilities);
        config.replicates = replicates;
        config.global_seed = seed;
        SweepOptions options;
        options.workers = workers;
        options.compute_betweenness = false;
        const auto base = compute_baseline(net, options);
        py::list out;
        for (const auto& r : run_neighborhood_sweep(net, base, config, options)) {
          py::dict row;
          row["corridor_id"] = net.corridor(r.corridor).id.str();
          row["p"] = r.probability;
          row["acis_mean"] = r.acis_mean;
          row["acis_p90"] = r.acis_p90;
          row["replicates"] = r.replicate_count;
          out.append(row);
        }
        return out;
      },
      py::arg("network"), py::arg("probabilities") = std::vector<double>{0.1, 0.25, 0.5, 0.75},
      py::arg("replicates") = 100, py::arg("seed") = 0, py::arg("workers") = 1);

  m.def(
      "replicate_mask",
      [](const CorridorNetwork& net, const std::string& focal, double p, std::uint64_t seed, std::uint64_t replicate) {
        const auto mask = replicate_mask(net, net.corridor_index(CorridorId::parse(focal)), p, seed, replicate);
        std::vector<std::string> out;
        for (const auto c : mask.removed_list()) out.push_back(net.corridor(c).id.str());
        return out;
      },
      py::arg("network"), py::arg("focal"), py::arg("p"), py::arg("seed"), py::arg("replicate"));

  m.def(
      "spearman_rho",
      [](const std::map<std::string, double>& x, const std::map<std::string, double>& y) { return spearman_rho(x, y); },
      py::arg("x"), py::arg("y"));

  m.def(
      "topk_overlap",
      [](std::vector<double> a, std::vector<double> b, std::size_t k) {
        return topk_overlap(make_rank_table("a", std::move(a)), make_rank_table("b", std::move(b)), k).fraction;
      },
      py::arg("a"), py::arg("b"), py::arg("k") = 100, "Scores aligned by position.");

  m.def(
      "ccdf_points",
      [](const std::vector<double>& scores) {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : ccdf_points(scores)) out.emplace_back(p.value, p.fraction);
        return out;
      },
      py::arg("scores"));

  m.def(
      "hospital_impact",
      [](const CorridorNetwork& net) {
        const auto base = compute_baseline(net);
        const auto sweep = run_single_sweep(net, base);
        py::list out;
        for (const auto& r : hospital_impact_table(net, base, sweep)) {
          py::dict row;
          row["hospital_id"] = net.municipality(r.hospital).id;
          row["corridor_id"] = net.corridor(r.corridor).id.str();
          row["ppb_initial"] = r.ppb_initial;
          row["ppb_stressed"] = r.ppb_stressed;
          row["change_pct"] = r.change_pct;
          row["inbound_population"] = r.inbound_population;
          row["outbound_population"] = r.outbound_population;
          out.append(row);
        }
        return out;
      },
      py::arg("network"));

  m.def(
      "hospital_frequency",
      [](const CorridorNetwork& net) {
        const auto sweep = run_single_sweep(net);
        std::map<std::string, double> out;
        for (const auto& f : hospital_affect_frequency(net, sweep)) out[net.municipality(f.hospital).id] = f.fraction;
        return out;
      },
      py::arg("network"));

  m.def(
      "synth_network",
      [](std::size_t count, double hospital_fraction, std::uint64_t seed) {
        synth::Params params;
        params.municipalities = count;
        params.hospital_fraction = hospital_fraction;
        params.seed = seed;
        const auto generated = synth::generate_valley_grid(params);
        std::vector<RoadSegment> roads = generated.roads;
        return CorridorNetwork::build(generated.municipalities, roads);
      },
      py::arg("count") = 1600, py::arg("hospital_fraction") = 0.05, py::arg("seed") = 1);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"roadstress"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out;
        std::ostringstream err;
        const int code = io::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line tool in-process; returns (exit_code, stdout, stderr).");
}
