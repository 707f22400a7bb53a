// Python bindings for the core pipeline: complexes, fields, Cerf
// diagrams, tracking graphs, and TV-ECC distances.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "plcerf/cerf.hpp"
#include "plcerf/io.hpp"
#include "plcerf/svg.hpp"
#include "plcerf/tvecc.hpp"
#include "plcerf/version.hpp"

namespace py = pybind11;
using namespace plcerf;

namespace {

GridSpec make_grid(const std::vector<std::uint32_t>& dims, const std::vector<bool>& periodic) {
    return GridSpec(dims, periodic.empty() ? std::vector<bool>(dims.size(), false) : periodic);
}

std::shared_ptr<SimplicialComplex> grid_complex(const std::vector<std::uint32_t>& dims,
                                                const std::vector<bool>& periodic) {
    const GridSpec spec = make_grid(dims, periodic);
    if (spec.rank() == 2) return std::make_shared<SimplicialComplex>(freudenthal_2d(spec));
    if (spec.rank() == 3) return std::make_shared<SimplicialComplex>(freudenthal_3d(spec));
    throw ConfigError("grid must be 2D or 3D");
}

TimeVaryingField field_from_array(std::shared_ptr<const SimplicialComplex> complex,
                                  py::array_t<float, py::array::c_style | py::array::forcecast> values) {
    if (values.ndim() != 2) throw DataError("values must be a (T, V) array");
    const auto T = static_cast<std::size_t>(values.shape(0));
    const auto V = static_cast<std::size_t>(values.shape(1));
    if (V != complex->vertex_count()) throw DataError("values shape mismatch with complex");
    std::vector<float> flat(static_cast<const float*>(values.data()),
                            static_cast<const float*>(values.data()) + T * V);
    return TimeVaryingField::uniform(std::move(complex), T, std::move(flat));
}

GaussianPath path_from_dict(const py::dict& d) {
    GaussianPath p;
    const std::string kind = d["kind"].cast<std::string>();
    if (kind == "static") {
        p.kind = GaussianPath::Kind::Static;
        p.a = d["at"].cast<std::vector<double>>();
    } else if (kind == "line") {
        p.kind = GaussianPath::Kind::Line;
        p.a = d["from"].cast<std::vector<double>>();
        p.b = d["to"].cast<std::vector<double>>();
    } else if (kind == "orbit") {
        p.kind = GaussianPath::Kind::Orbit;
        p.a = d["center"].cast<std::vector<double>>();
        p.radius = d["radius"].cast<double>();
        p.period_samples = d["period"].cast<double>();
        if (d.contains("phase")) p.phase = d["phase"].cast<double>();
    } else {
        throw ConfigError("gaussian kind must be static|line|orbit");
    }
    if (d.contains("amp")) p.amplitude = d["amp"].cast<double>();
    if (d.contains("sigma")) p.sigma = d["sigma"].cast<double>();
    return p;
}

py::dict class_to_dict(const VertexClass& cls) {
    py::dict d;
    d["kind"] = cls.regular() ? "regular" : (cls.simple() || cls.kind == VertexClass::Kind::Critical
                                                 ? "critical"
                                                 : "degenerate");
    std::vector<int> beta;
    for (int i = 0; i < cls.betti.size(); ++i) beta.push_back(cls.betti[i]);
    d["betti"] = beta;
    if (cls.kind == VertexClass::Kind::Critical) {
        d["index"] = cls.index;
        d["multiplicity"] = cls.multiplicity;
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_plcerf, m) {
    m.doc() = "PL Morse-Cerf descriptors of time-varying scalar fields";
    m.attr("__version__") = kVersion;

    py::register_exception<ConfigError>(m, "PlcerfConfigError", PyExc_ValueError);
    py::register_exception<DataError>(m, "PlcerfDataError", PyExc_ValueError);
    py::register_exception<NonGenericError>(m, "NonGenericError", PyExc_RuntimeError);

    py::class_<SimplicialComplex, std::shared_ptr<SimplicialComplex>>(m, "Complex")
        .def(py::init([](int dim, VertexId vertex_count, const std::vector<std::vector<VertexId>>& cells) {
                 std::vector<VertexId> flat;
                 for (const auto& cell : cells) {
                     if (static_cast<int>(cell.size()) != dim + 1)
                         throw DataError("maximal simplex arity != dim+1");
                     flat.insert(flat.end(), cell.begin(), cell.end());
                 }
                 return std::make_shared<SimplicialComplex>(dim, vertex_count, std::move(flat));
             }),
             py::arg("dim"), py::arg("vertex_count"), py::arg("maximal_simplices"))
        .def_property_readonly("dim", &SimplicialComplex::dim)
        .def_property_readonly("vertex_count", &SimplicialComplex::vertex_count)
        .def_property_readonly("cell_count", &SimplicialComplex::cell_count)
        .def("neighbors",
             [](const SimplicialComplex& c, VertexId v) {
                 c.check_vertex(v);
                 auto nb = c.neighbors(v);
                 return std::vector<VertexId>(nb.begin(), nb.end());
             })
        .def("euler_characteristic",
             [](const SimplicialComplex& c) { return euler_characteristic(c); })
        .def("validate", [](const SimplicialComplex& c, bool allow_boundary) {
            auto report = validate_manifold(c, allow_boundary);
            py::dict d;
            d["valid"] = report.valid;
            d["closed"] = report.closed;
            d["boundary_vertices"] = report.boundary_vertices;
            py::list issues;
            for (const auto& issue : report.issues) {
                py::dict e;
                e["vertex"] = issue.vertex;
                e["reason"] = issue.reason;
                issues.append(e);
            }
            d["issues"] = issues;
            return d;
        }, py::arg("allow_boundary") = true);

    m.def("freudenthal_2d",
          [](const std::vector<std::uint32_t>& dims, const std::vector<bool>& periodic) {
              if (dims.size() != 2) throw ConfigError("freudenthal_2d needs 2 dims");
              return grid_complex(dims, periodic);
          },
          py::arg("dims"), py::arg("periodic") = std::vector<bool>{});
    m.def("freudenthal_3d",
          [](const std::vector<std::uint32_t>& dims, const std::vector<bool>& periodic) {
              if (dims.size() != 3) throw ConfigError("freudenthal_3d needs 3 dims");
              return grid_complex(dims, periodic);
          },
          py::arg("dims"), py::arg("periodic") = std::vector<bool>{});
    m.def("load_complex_json", [](const std::filesystem::path& p) {
        return std::make_shared<SimplicialComplex>(load_complex_json(p));
    });

    py::class_<TimeVaryingField>(m, "Field")
        .def(py::init(&field_from_array), py::arg("complex"), py::arg("values"))
        .def_property_readonly("num_times", &TimeVaryingField::num_times)
        .def_property_readonly("times", [](const TimeVaryingField& f) { return f.times(); })
        .def_property_readonly("complex", &TimeVaryingField::complex_ptr)
        .def("value_at", &TimeVaryingField::value_at, py::arg("vertex"), py::arg("t"))
        .def("values",
             [](const TimeVaryingField& f) {
                 const auto T = f.num_times();
                 const auto V = static_cast<std::size_t>(f.complex().vertex_count());
                 py::array_t<float> out({T, V});
                 std::copy(f.raw_values().begin(), f.raw_values().end(),
                           static_cast<float*>(out.mutable_data()));
                 return out;
             })
        .def("window", &TimeVaryingField::window, py::arg("first"), py::arg("count"));

    m.def("generate_gaussians",
          [](const std::vector<std::uint32_t>& dims, const std::vector<bool>& periodic,
             const std::vector<py::dict>& paths, double sigma, std::size_t num_times) {
              std::vector<GaussianPath> ps;
              for (const auto& d : paths) ps.push_back(path_from_dict(d));
              return generate_gaussians(make_grid(dims, periodic), ps, sigma, num_times);
          },
          py::arg("dims"), py::arg("periodic"), py::arg("paths"), py::arg("sigma"),
          py::arg("num_times"));

    m.def("load_field_raw", &load_field_raw, py::arg("path"));
    m.def("save_field_raw", &save_field_raw, py::arg("field"), py::arg("path"));

    m.def("classify_vertex",
          [](const SimplicialComplex& c, const std::vector<double>& values, VertexId v) {
              return class_to_dict(classify_vertex(c, Valuation(values), v));
          });
    m.def("critical_points",
          [](const SimplicialComplex& c, const std::vector<double>& values, int threads) {
              py::list out;
              for (const auto& [v, cls] : critical_points(c, Valuation(values), threads)) {
                  py::dict d = class_to_dict(cls);
                  d["vertex"] = v;
                  out.append(d);
              }
              return out;
          },
          py::arg("complex"), py::arg("values"), py::arg("threads") = 1);
    m.def("is_pl_morse", [](const SimplicialComplex& c, const std::vector<double>& values) {
        return is_pl_morse(c, Valuation(values));
    });
    m.def("ecc_lower_star", [](const SimplicialComplex& c, const std::vector<double>& values) {
        auto f = ecc_lower_star(c, Valuation(values));
        return py::make_tuple(f.breakpoints(), f.levels());
    });

    m.def("detect_crossings",
          [](const TimeVaryingField& field, bool all_pairs, int threads) {
              auto events = detect_crossings(field,
                                             all_pairs ? CrossingScope::AllPairs
                                                       : CrossingScope::LinkAdjacentOnly,
                                             threads);
              py::list out;
              for (const auto& e : events) {
                  py::dict d;
                  d["t"] = e.t;
                  d["u"] = e.u;
                  d["v"] = e.v;
                  d["adjacent"] = e.adjacent;
                  out.append(d);
              }
              return out;
          },
          py::arg("field"), py::arg("all_pairs") = false, py::arg("threads") = 1);

    m.def("classify_crossings",
          [](const TimeVaryingField& field, bool all_pairs) {
              auto events = enforce_genericity(detect_crossings(
                  field, all_pairs ? CrossingScope::AllPairs : CrossingScope::LinkAdjacentOnly));
              auto classified = classify_crossings_post_hoc(field, events);
              py::list out;
              for (const auto& cx : classified) {
                  py::dict d;
                  d["t"] = cx.event.t;
                  d["u"] = cx.event.u;
                  d["v"] = cx.event.v;
                  d["adjacent"] = cx.event.adjacent;
                  d["kind"] = cx.kind ? to_string(*cx.kind) : "unclassifiable";
                  out.append(d);
              }
              return out;
          },
          py::arg("field"), py::arg("all_pairs") = false);

    py::class_<CerfArc>(m, "CerfArc")
        .def_readonly("t1", &CerfArc::t1)
        .def_readonly("val1", &CerfArc::val1)
        .def_readonly("t2", &CerfArc::t2)
        .def_readonly("val2", &CerfArc::val2)
        .def_readonly("vertex", &CerfArc::vertex)
        .def_property_readonly("beta",
                               [](const CerfArc& a) {
                                   std::vector<int> b;
                                   for (int i = 0; i < a.beta.size(); ++i) b.push_back(a.beta[i]);
                                   return b;
                               })
        .def("__repr__", [](const CerfArc& a) {
            return "CerfArc(t1=" + format_double(a.t1) + ", t2=" + format_double(a.t2) +
                   ", vertex=" + std::to_string(a.vertex) + ", beta=" + a.beta.to_string() + ")";
        });

    py::class_<CerfDiagram>(m, "CerfDiagram")
        .def_readonly("arcs", &CerfDiagram::arcs)
        .def_property_readonly("crossings",
                               [](const CerfDiagram& d) {
                                   py::list out;
                                   for (const auto& cx : d.crossings) {
                                       py::dict e;
                                       e["t"] = cx.event.t;
                                       e["u"] = cx.event.u;
                                       e["v"] = cx.event.v;
                                       e["kind"] = cx.kind ? to_string(*cx.kind) : "unclassifiable";
                                       e["before_u"] = class_to_dict(cx.before_u);
                                       e["before_v"] = class_to_dict(cx.before_v);
                                       e["after_u"] = class_to_dict(cx.after_u);
                                       e["after_v"] = class_to_dict(cx.after_v);
                                       out.append(e);
                                   }
                                   return out;
                               })
        .def_readonly("unclassified_count", &CerfDiagram::unclassified_count);

    m.def("compute_cerf_diagram",
          [](const TimeVaryingField& field, bool strict, int threads) {
              return compute_cerf_diagram(field, {strict, threads});
          },
          py::arg("field"), py::arg("strict") = false, py::arg("threads") = 1);

    py::class_<TrackingGraph>(m, "TrackingGraph")
        .def_property_readonly("nodes",
                               [](const TrackingGraph& g) {
                                   py::list out;
                                   for (const auto& n : g.nodes) {
                                       py::dict d;
                                       d["arc"] = n.arc;
                                       d["index"] = n.index;
                                       d["born_by_birth"] = n.born_by_birth;
                                       d["died_by_death"] = n.died_by_death;
                                       out.append(d);
                                   }
                                   return out;
                               })
        .def_property_readonly("edges", [](const TrackingGraph& g) {
            py::list out;
            for (const auto& e : g.edges) {
                py::dict d;
                d["from"] = e.from;
                d["to"] = e.to;
                d["kind"] = to_string(e.kind);
                d["t"] = e.t;
                out.append(d);
            }
            return out;
        });

    m.def("tracking_graph", &tracking_graph, py::arg("diagram"));

    py::class_<Track>(m, "Track")
        .def_readonly("arcs", &Track::arcs)
        .def_readonly("birth", &Track::birth)
        .def_readonly("death", &Track::death)
        .def_readonly("born_by_birth", &Track::born_by_birth)
        .def_readonly("died_by_death", &Track::died_by_death);

    m.def("maxima_tracks", &maxima_tracks, py::arg("graph"), py::arg("diagram"), py::arg("index"));
    m.def("seed_search",
          [](const TrackingGraph& g, const CerfDiagram& d, const TimeVaryingField& f,
             const std::vector<double>& seed, double radius, double t, bool after,
             const std::vector<Track>& tracks) {
              return seed_search(g, d, f, seed, radius, t, after, tracks);
          },
          py::arg("graph"), py::arg("diagram"), py::arg("field"), py::arg("seed"),
          py::arg("radius"), py::arg("t"), py::arg("after") = false, py::arg("tracks"));

    py::class_<StepSurface>(m, "StepSurface")
        .def("eval", &StepSurface::eval, py::arg("s"), py::arg("t"))
        .def_property_readonly("chi", &StepSurface::chi)
        .def_property_readonly("slab_count", [](const StepSurface& s) { return s.slabs().size(); });

    m.def("tvecc",
          [](const TimeVaryingField& field) { return tvecc(field); },
          py::arg("field"));

    m.def("distance",
          [](const TimeVaryingField& f, const TimeVaryingField& g, const std::string& mode,
             std::size_t n_t, std::optional<std::pair<double, double>> s_range) {
              Quadrature q;
              q.mode = mode == "exact" ? QuadratureMode::Exact : QuadratureMode::Sampled;
              q.n_t = n_t;
              return distance(f, g, q, s_range);
          },
          py::arg("f"), py::arg("g"), py::arg("mode") = "sampled", py::arg("n_t") = 0,
          py::arg("s_range") = std::nullopt);

    py::class_<DistanceMatrix>(m, "DistanceMatrix")
        .def_readonly("window", &DistanceMatrix::window)
        .def_readonly("shift", &DistanceMatrix::shift)
        .def_readonly("start", &DistanceMatrix::start)
        .def_readonly("n", &DistanceMatrix::n)
        .def("to_numpy", [](const DistanceMatrix& m) {
            py::array_t<double> out({m.n, m.n});
            std::copy(m.entries.begin(), m.entries.end(), static_cast<double*>(out.mutable_data()));
            return out;
        });

    m.def("distance_matrix",
          [](const TimeVaryingField& field, std::size_t window, std::size_t shift,
             std::size_t start, const std::string& mode, std::size_t n_t, int threads) {
              Quadrature q;
              q.mode = mode == "exact" ? QuadratureMode::Exact : QuadratureMode::Sampled;
              q.n_t = n_t;
              return distance_matrix(field, window, shift, start, q, threads);
          },
          py::arg("field"), py::arg("window"), py::arg("shift"), py::arg("start") = 0,
          py::arg("mode") = "sampled", py::arg("n_t") = 0, py::arg("threads") = 1);

    m.def("estimate_period", [](const DistanceMatrix& m) {
        auto est = estimate_period(m);
        py::dict d;
        d["found"] = est.found;
        d["period_samples"] = est.period_samples;
        d["period_time"] = est.period_time;
        d["band"] = est.band;
        return d;
    });
}
