#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <random>
#include <sstream>

#include "nomafran/caching.hpp"
#include "nomafran/channel.hpp"
#include "nomafran/config.hpp"
#include "nomafran/errors.hpp"
#include "nomafran/harness.hpp"
#include "nomafran/phy_noma.hpp"
#include "nomafran/power_game.hpp"
#include "nomafran/topology.hpp"

namespace py = pybind11;
using namespace nomafran;

namespace {

py::dict drop_to_dict(const DropResult& r) {
  py::dict d;
  d["seed"] = r.seed;
  d["scheme"] = r.scheme.label();
  d["q"] = r.q;
  d["total_net_utility"] = r.total_net_utility;
  d["sum_rate"] = r.sum_rate;
  d["max_mue_interference_w"] = r.max_mue_interference_w;
  d["max_intra_cell_interference_w"] = r.max_intra_cell_interference_w;
  d["game_converged"] = r.game_converged;
  d["threshold_satisfied"] = r.threshold_satisfied;
  d["final_lambda"] = r.final_lambda;
  d["inner_iterations"] = r.inner_iterations;
  d["outer_iterations"] = r.outer_iterations;
  d["proposals"] = r.proposals;
  d["matched_pairs"] = r.matched_pairs;
  d["wall_ms"] = r.wall_ms;
  return d;
}

py::tuple point(const Point& p) { return py::make_tuple(p.x, p.y); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "NOMA fog-RAN resource allocation simulator";

  py::register_exception<FeasibilityError>(m, "FeasibilityError", PyExc_RuntimeError);
  py::register_exception<InstanceTooLarge>(m, "InstanceTooLarge", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def("set", [](SimConfig& c, const std::string& key, const std::string& value) { set_config_value(c, key, value); },
           py::arg("key"), py::arg("value"))
      .def("validate", &SimConfig::validate)
      .def_property_readonly("schemes", [](const SimConfig& c) {
        std::vector<std::string> out;
        for (const auto& s : c.scheme_list()) out.push_back(s.label());
        return out;
      })
      .def_readwrite("q", &SimConfig::q)
      .def_readwrite("q_ue", &SimConfig::q_ue)
      .def_readwrite("n_drops", &SimConfig::n_drops)
      .def_readwrite("base_seed", &SimConfig::base_seed)
      .def_property(
          "n_faps", [](const SimConfig& c) { return c.geometry.n_faps; },
          [](SimConfig& c, int v) { c.geometry.n_faps = v; })
      .def_property(
          "n_fues_per_fap", [](const SimConfig& c) { return c.geometry.n_fues_per_fap; },
          [](SimConfig& c, int v) { c.geometry.n_fues_per_fap = v; })
      .def_property(
          "n_subchannels", [](const SimConfig& c) { return c.spectrum.n_subchannels; },
          [](SimConfig& c, int v) { c.spectrum.n_subchannels = v; })
      .def_property(
          "price_lambda", [](const SimConfig& c) { return c.utility.price_lambda; },
          [](SimConfig& c, double v) { c.utility.price_lambda = v; })
      .def_property_readonly("p_max_fap_w", [](const SimConfig& c) { return c.utility.p_max_fap_w; })
      .def_property_readonly("total_bandwidth_hz", [](const SimConfig& c) { return c.spectrum.total_bandwidth_hz; });

  m.def("parse_config", [](const std::string& text) { return parse_config(text); }, py::arg("text"));
  m.def("load_config", [](const std::string& path) { return load_config(path); }, py::arg("path"));
  m.def("config_keys", &config_keys);

  m.def(
      "run_drop",
      [](const SimConfig& cfg, std::uint64_t seed, const std::string& scheme) {
        py::gil_scoped_release release;
        const DropResult r = scheme.empty() ? run_drop(cfg, seed) : run_drop(cfg, parse_scheme(scheme, cfg.q), seed);
        py::gil_scoped_acquire acquire;
        return drop_to_dict(r);
      },
      py::arg("cfg"), py::arg("seed"), py::arg("scheme") = "",
      "Runs one drop; `scheme` is 'noma', 'ofdma' or 'noma-q<N>' (default: the config's own).");

  m.def(
      "run_sweep_csv",
      [](const SimConfig& cfg, unsigned threads, bool include_wall_ms) {
        std::vector<CsvRow> rows;
        {
          py::gil_scoped_release release;
          rows = run_sweep(cfg, SweepOptions{threads});
        }
        std::ostringstream out;
        write_csv(out, rows, include_wall_ms);
        return out.str();
      },
      py::arg("cfg"), py::arg("threads") = 1, py::arg("include_wall_ms") = true);

  m.def(
      "generate_topology",
      [](const SimConfig& cfg, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        const NetworkTopology t = generate_topology(cfg.geometry, rng);
        py::dict d;
        d["mrrh"] = point(t.mrrh_position);
        py::list faps, fues, mues;
        for (const auto& p : t.fap_positions) faps.append(point(p));
        for (const auto& u : t.fues) fues.append(py::make_tuple(u.fap, point(u.position)));
        for (const auto& p : t.mue_positions) mues.append(point(p));
        d["faps"] = faps;
        d["fues"] = fues;
        d["mues"] = mues;
        d["violations"] = validate_topology(t, cfg.geometry).size();
        return d;
      },
      py::arg("cfg"), py::arg("seed"));

  m.def(
      "path_loss_db",
      [](const std::string& kind, double d) {
        if (kind == "macro") return path_loss_db(LinkKind::macro_link, d);
        if (kind == "fog") return path_loss_db(LinkKind::fog_link, d);
        throw py::value_error("kind must be 'macro' or 'fog'");
      },
      py::arg("kind"), py::arg("distance_m"));
  m.def("rate", &rate, py::arg("sinr"), py::arg("subchannel_bw_hz"));
  m.def("best_response_power", &best_response_power, py::arg("rate_weight_bps"), py::arg("price_per_watt"),
        py::arg("i_over_h"), py::arg("p_max"));
  m.def("content_popularity", &content_popularity, py::arg("n_contents"), py::arg("exponent"));
  m.def("csv_header", [] { return std::string(kCsvHeader); });
}
