#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <limits>
#include <sstream>

#include "shadowpath/bench.hpp"
#include "shadowpath/corridor.hpp"
#include "shadowpath/experiment.hpp"
#include "shadowpath/io.hpp"
#include "shadowpath/render.hpp"
#include "shadowpath/report.hpp"
#include "shadowpath/search.hpp"
#include "shadowpath/terrain.hpp"

namespace py = pybind11;
using namespace shadowpath;

namespace {

std::vector<RegionId> members(const RegionSet& s) {
    std::vector<RegionId> out;
    s.for_each([&](std::size_t i) { out.push_back(static_cast<RegionId>(i)); });
    return out;
}

Algorithm algorithm_from(const std::string& id) {
    if (auto a = parse_algorithm(id)) return *a;
    throw py::value_error("unknown algorithm '" + id + "'");
}

Connectivity connectivity_from(int c) {
    if (c == 4) return Connectivity::Four;
    if (c == 8) return Connectivity::Eight;
    throw py::value_error("connectivity must be 4 or 8");
}

MapKind kind_from(const std::string& id) {
    if (id == "boxes") return MapKind::Boxes;
    if (id == "hills") return MapKind::Hills;
    throw py::value_error("map kind must be 'boxes' or 'hills'");
}

py::bytes pgm_bytes(const GrayImage& img) {
    std::ostringstream out;
    write_pgm(out, img);
    return py::bytes(out.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exposure-minimizing path planning over gridded terrain";

    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<Heightmap>(m, "Heightmap")
        .def(py::init([](const std::vector<std::vector<double>>& rows, double cell_size) {
                 return Heightmap::from_rows(rows, cell_size);
             }),
             py::arg("rows"), py::arg("cell_size") = 1.0)
        .def_readonly("width", &Heightmap::width)
        .def_readonly("height", &Heightmap::height)
        .def_readonly("cell_size", &Heightmap::cell_size)
        .def_readonly("elevations", &Heightmap::elevations)
        .def("at", py::overload_cast<std::size_t, std::size_t>(&Heightmap::at, py::const_), py::arg("row"),
             py::arg("col"))
        .def("rows",
             [](const Heightmap& h) {
                 std::vector<std::vector<double>> rows(h.height);
                 for (std::size_t r = 0; r < h.height; ++r)
                     rows[r].assign(h.elevations.begin() + static_cast<long>(r * h.width),
                                    h.elevations.begin() + static_cast<long>((r + 1) * h.width));
                 return rows;
             })
        .def(py::self == py::self)
        .def("__repr__", [](const Heightmap& h) {
            return "<Heightmap " + std::to_string(h.width) + "x" + std::to_string(h.height) + ">";
        });

    m.def("load_heightmap", &load_heightmap, py::arg("path"));
    m.def("save_heightmap", &save_heightmap, py::arg("path"), py::arg("heightmap"));
    m.def("gen_boxes", &gen_boxes, py::arg("seed"), py::arg("size"));
    m.def(
        "gen_hills", [](std::uint64_t seed, std::size_t size, double amplitude) {
            return gen_hills(seed, size, {amplitude});
        },
        py::arg("seed"), py::arg("size"), py::arg("amplitude") = 1.0);

    py::class_<TraversabilityGraph>(m, "TraversabilityGraph")
        .def("__len__", &TraversabilityGraph::size)
        .def("neighbors",
             [](const TraversabilityGraph& g, RegionId r) {
                 if (r >= g.size()) throw py::index_error("region out of range");
                 auto nb = g.neighbors(r);
                 return std::vector<RegionId>(nb.begin(), nb.end());
             })
        .def("adjacent", &TraversabilityGraph::adjacent)
        .def("reachable_from", [](const TraversabilityGraph& g, RegionId r) {
            if (r >= g.size()) throw py::index_error("region out of range");
            return members(g.reachable_from(r));
        });

    py::class_<GridEnvironment>(m, "GridEnvironment")
        .def(py::init([](Heightmap hm, double d, double max_step, int connectivity) {
                 return GridEnvironment(std::move(hm), {d, max_step, connectivity_from(connectivity)});
             }),
             py::arg("heightmap"), py::arg("d") = 1.0, py::arg("max_step") = std::numeric_limits<double>::infinity(),
             py::arg("connectivity") = 4)
        .def_property_readonly("width", &GridEnvironment::width)
        .def_property_readonly("height", &GridEnvironment::height)
        .def("__len__", &GridEnvironment::size)
        .def("index", &GridEnvironment::index, py::arg("row"), py::arg("col"))
        .def("cell", [](const GridEnvironment& e, RegionId r) { return std::make_pair(e.row(r), e.col(r)); })
        .def("line_of_sight", &GridEnvironment::line_of_sight)
        .def("traversable", &GridEnvironment::traversable)
        .def_property_readonly("graph", &GridEnvironment::graph, py::return_value_policy::reference_internal);

    py::class_<ExposureField>(m, "ExposureField")
        .def_static("compute", &ExposureField::compute, py::arg("env"), py::arg("workers") = 0,
                    py::call_guard<py::gil_scoped_release>())
        .def("__len__", &ExposureField::size)
        .def("exposure_set", [](const ExposureField& f, RegionId x) { return members(f.exposure_set(x)); })
        .def("visible",
             [](const ExposureField& f, RegionId a, RegionId b) {
                 if (a >= f.size() || b >= f.size()) throw py::index_error("region out of range");
                 return f.visible(a, b);
             })
        .def("exposure_count", [](const ExposureField& f, RegionId x) { return f.exposure_set(x).count(); })
        .def("exposure_score", &ExposureField::exposure_score)
        .def("save", [](const ExposureField& f, const std::filesystem::path& p) { save_field_cache(p, f); })
        .def_static("load", &load_field_cache, py::arg("path"))
        .def("to_bytes",
             [](const ExposureField& f) {
                 std::ostringstream out;
                 write_field_cache(out, f);
                 return py::bytes(out.str());
             })
        .def_static("from_bytes",
                    [](const std::string& data) {
                        std::istringstream in(data);
                        return read_field_cache(in);
                    })
        .def(py::self == py::self);

    py::class_<PlanResult>(m, "PlanResult")
        .def_property_readonly("status", [](const PlanResult& r) { return std::string(status_id(r.status)); })
        .def_property_readonly("found", &PlanResult::found)
        .def_readonly("path", &PlanResult::path)
        .def_readonly("cost", &PlanResult::cost)
        .def_readonly("expanded", &PlanResult::expanded)
        .def("__repr__", [](const PlanResult& r) {
            return "<PlanResult " + std::string(status_id(r.status)) + " len=" + std::to_string(r.path.size()) + ">";
        });

    m.def(
        "plan",
        [](const TraversabilityGraph& graph, const ExposureField& field, const std::string& algorithm, RegionId start,
           RegionId goal, std::uint32_t tau, double p_success, double m, std::size_t budget) {
            const auto alg = algorithm_from(algorithm);
            py::gil_scoped_release release;
            return run_planner(alg, graph, field, start, goal, {tau, p_success, m, budget});
        },
        py::arg("graph"), py::arg("field"), py::arg("algorithm"), py::arg("start"), py::arg("goal"),
        py::arg("tau") = 1, py::arg("p_success") = kDefaultSuccessProbability, py::arg("m") = 0.0,
        py::arg("budget") = kDefaultExactBudget,
        "Runs one planner. algorithm is one of shortest, exposure_score, binary, saturation, exact.");
    m.def(
        "plan_report",
        [](const TraversabilityGraph& graph, const ExposureField& field, const std::string& algorithm, RegionId start,
           RegionId goal, std::uint32_t tau, double p_success, double m, std::size_t budget) {
            const auto rep = run_plan_report(algorithm_from(algorithm), graph, field, start, goal,
                                             {tau, p_success, m, budget});
            return plan_report_json(rep);
        },
        py::arg("graph"), py::arg("field"), py::arg("algorithm"), py::arg("start"), py::arg("goal"),
        py::arg("tau") = 1, py::arg("p_success") = kDefaultSuccessProbability, py::arg("m") = 0.0,
        py::arg("budget") = kDefaultExactBudget);

    m.def("obj_bin", [](const ExposureField& f, const Path& p) { return obj_bin(f, p); });
    m.def(
        "obj_acc", [](const std::vector<std::uint32_t>& c, double p, std::uint32_t tau) { return obj_acc(c, p, tau); },
        py::arg("counts"), py::arg("p_success"), py::arg("tau"));
    m.def(
        "path_exposure_counts",
        [](const ExposureField& f, const Path& p, std::uint32_t tau) { return path_exposure_counts(f, p, tau); },
        py::arg("field"), py::arg("path"), py::arg("tau"));
    m.def("is_valid_path", [](const TraversabilityGraph& g, const Path& p, RegionId s, RegionId t) {
        return is_valid_path(g, p, s, t);
    });
    m.def("optimality_gap", &optimality_gap);

    py::class_<Corridor>(m, "Corridor")
        .def_readonly("seed_path", &Corridor::seed_path)
        .def_property_readonly("exposed", [](const Corridor& c) { return members(c.exposed); })
        .def_property_readonly("regions", [](const Corridor& c) { return members(c.regions); })
        .def_readonly("avg_width", &Corridor::avg_width);
    m.def(
        "corridor",
        [](const TraversabilityGraph& g, const ExposureField& f, const Path& p, bool reachable_only) {
            return build_corridor(g, f, p, {reachable_only});
        },
        py::arg("graph"), py::arg("field"), py::arg("path"), py::arg("reachable_only") = false);

    py::class_<FixtureGraph>(m, "FixtureGraph")
        .def_readonly("names", &FixtureGraph::names)
        .def_readonly("graph", &FixtureGraph::graph)
        .def_readonly("field", &FixtureGraph::field)
        .def("id", &FixtureGraph::id)
        .def("path", &FixtureGraph::path);
    m.def("lemma1_fixture", &lemma1_fixture);

    m.def(
        "brute_force_min_exposure",
        [](const TraversabilityGraph& g, const ExposureField& f, RegionId s, RegionId t, std::size_t max_len)
            -> py::object {
            const auto r = brute_force_min_exposure(g, f, s, t, max_len);
            if (r.status == OracleStatus::Overflow) throw std::runtime_error("enumeration limit exceeded");
            if (r.status == OracleStatus::NoPath) return py::none();
            return py::int_(r.min_exposure);
        },
        py::arg("graph"), py::arg("field"), py::arg("start"), py::arg("goal"), py::arg("max_path_len"));

    m.def(
        "bench_environment",
        [](const std::string& kind, std::uint64_t seed, std::size_t size) {
            const auto k = kind_from(kind);
            return GridEnvironment(generate_map(k, seed, size), bench_params(k));
        },
        py::arg("kind"), py::arg("seed"), py::arg("size"),
        "Generated benchmark map with the environment parameters the experiments use.");

    m.def(
        "run_experiment_jsonl",
        [](const std::string& config_text, bool include_timing) {
            const auto config = parse_experiment_config_text(config_text);
            std::vector<ExperimentRecord> records;
            {
                py::gil_scoped_release release;
                records = run_experiment(config);
            }
            std::ostringstream out;
            write_records_jsonl(out, records, include_timing);
            return out.str();
        },
        py::arg("config_text"), py::arg("include_timing") = true);

    m.def(
        "render_exposure",
        [](const GridEnvironment& env, const ExposureField& field, const Path& path, bool corridor_overlay) {
            auto img = render_exposure(env.width(), env.height(), field);
            if (!path.empty()) {
                if (corridor_overlay) overlay_corridor(img, build_corridor(env.graph(), field, path).regions);
                overlay_path(img, path);
            }
            return pgm_bytes(img);
        },
        py::arg("env"), py::arg("field"), py::arg("path") = Path{}, py::arg("corridor") = false,
        "Binary PGM bytes; darker pixels are more exposed.");
}
