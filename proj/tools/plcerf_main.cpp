// plcerf: PL Morse-Cerf descriptors of time-varying scalar fields.
//
// Subcommands: synth, cerf, tvecc, dist, distmat, tracks, validate.
// Exit codes: 0 ok, 2 config error, 3 data error, 4 non-generic abort.

#include <chrono>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "plcerf/cerf.hpp"
#include "plcerf/io.hpp"
#include "plcerf/parallel.hpp"
#include "plcerf/svg.hpp"
#include "plcerf/tvecc.hpp"
#include "plcerf/version.hpp"

using namespace plcerf;
using nlohmann::json;

namespace {

struct Global {
    int threads = 0;
    bool strict = false;
    std::string output_dir = ".";
    std::uint64_t seed_rng = 0;
};

struct StageTimer {
    std::map<std::string, double> ms;
    template <typename Fn>
    auto run(const std::string& name, Fn&& fn) {
        const auto start = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            ms[name] = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        } else {
            auto out = fn();
            ms[name] = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
            return out;
        }
    }
};

GridSpec parse_grid(const std::string& text, const std::string& periodic) {
    GridSpec spec;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, 'x')) {
        try {
            spec.dims.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
        } catch (...) {
            throw ConfigError("bad grid spec '" + text + "'");
        }
    }
    if (spec.dims.size() < 2 || spec.dims.size() > 3)
        throw ConfigError("grid must be 2D or 3D, got '" + text + "'");
    spec.periodic.assign(spec.dims.size(), false);
    for (char axis : periodic) {
        if (axis == ',' || axis == ' ') continue;
        const std::size_t i = static_cast<std::size_t>(axis - 'x');
        if (axis < 'x' || i >= spec.dims.size())
            throw ConfigError(std::string("bad periodic axis '") + axis + "'");
        spec.periodic[i] = true;
    }
    return spec;
}

std::map<std::string, double> parse_kv(const std::string& text) {
    std::map<std::string, double> kv;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key=value in '" + item + "'");
        try {
            kv[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
        } catch (...) {
            throw ConfigError("bad numeric value in '" + item + "'");
        }
    }
    return kv;
}

double take(std::map<std::string, double>& kv, const std::string& key, double fallback,
            bool required = false) {
    auto it = kv.find(key);
    if (it == kv.end()) {
        if (required) throw ConfigError("missing required key '" + key + "'");
        return fallback;
    }
    const double v = it->second;
    kv.erase(it);
    return v;
}

GaussianPath parse_gaussian(const std::string& text, std::size_t rank) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw ConfigError("gaussian spec needs '<kind>:k=v,...', got '" + text + "'");
    const std::string kind = text.substr(0, colon);
    auto kv = parse_kv(text.substr(colon + 1));

    GaussianPath p;
    p.amplitude = take(kv, "amp", 1.0);
    p.sigma = take(kv, "sigma", 0.0);
    if (kind == "static") {
        p.kind = GaussianPath::Kind::Static;
        p.a = {take(kv, "x", 0.0, true), take(kv, "y", 0.0, true)};
        if (rank == 3) p.a.push_back(take(kv, "z", 0.0, true));
    } else if (kind == "line") {
        p.kind = GaussianPath::Kind::Line;
        p.a = {take(kv, "x0", 0.0, true), take(kv, "y0", 0.0, true)};
        p.b = {take(kv, "x1", 0.0, true), take(kv, "y1", 0.0, true)};
        if (rank == 3) {
            p.a.push_back(take(kv, "z0", 0.0, true));
            p.b.push_back(take(kv, "z1", 0.0, true));
        }
    } else if (kind == "orbit") {
        p.kind = GaussianPath::Kind::Orbit;
        p.a = {take(kv, "cx", 0.0, true), take(kv, "cy", 0.0, true)};
        if (rank == 3) p.a.push_back(take(kv, "cz", 0.0, true));
        p.radius = take(kv, "r", 0.0, true);
        p.period_samples = take(kv, "period", 0.0, true);
        p.phase = take(kv, "phase", 0.0);
    } else {
        throw ConfigError("unknown gaussian kind '" + kind + "' (static|line|orbit)");
    }
    if (!kv.empty()) throw ConfigError("unknown gaussian key '" + kv.begin()->first + "'");
    return p;
}

std::vector<double> parse_point(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (...) {
            throw ConfigError("bad coordinate '" + tok + "'");
        }
    }
    return out;
}

std::optional<std::pair<double, double>> parse_range(const std::string& text) {
    if (text.empty()) return std::nullopt;
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ConfigError("s-range needs 'lo:hi'");
    try {
        const double lo = std::stod(text.substr(0, colon));
        const double hi = std::stod(text.substr(colon + 1));
        if (!(lo < hi)) throw ConfigError("s-range must satisfy lo < hi");
        return std::pair{lo, hi};
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        throw ConfigError("bad s-range '" + text + "'");
    }
}

Quadrature parse_quadrature(const std::string& mode, std::size_t n_t) {
    Quadrature q;
    if (mode == "exact")
        q.mode = QuadratureMode::Exact;
    else if (mode == "sampled")
        q.mode = QuadratureMode::Sampled;
    else
        throw ConfigError("quadrature must be 'exact' or 'sampled'");
    q.n_t = n_t;
    return q;
}

std::optional<std::string> sidecar_exists(const std::string& raw) {
    std::filesystem::path p(raw);
    if (p.extension() != ".raw" && p.extension() != ".bin") return std::nullopt;
    p.replace_extension(".json");
    if (!std::filesystem::exists(p)) return std::nullopt;
    return p.string();
}

TimeVaryingField load_input(const std::string& input, const std::string& complex_path,
                            json& inputs_json) {
    std::shared_ptr<const SimplicialComplex> complex;
    if (!complex_path.empty()) {
        complex = std::make_shared<SimplicialComplex>(load_complex_json(complex_path));
        inputs_json[complex_path] = {
            {"bytes", std::filesystem::file_size(complex_path)},
            {"fnv1a64", fnv1a64_file(complex_path)}};
    }
    auto field = load_field_auto(input, complex);
    inputs_json[input] = {{"bytes", std::filesystem::file_size(input)},
                          {"fnv1a64", fnv1a64_file(input)}};
    const auto side = sidecar_exists(input);
    if (side) inputs_json[*side] = {{"bytes", std::filesystem::file_size(*side)},
                                    {"fnv1a64", fnv1a64_file(*side)}};
    return field;
}

void write_manifest(const Global& g, const std::string& command, const json& config,
                    const json& inputs, const StageTimer& timer, const json& counts) {
    json j{{"tool", "plcerf"},
           {"version", kVersion},
           {"command", command},
           {"config", config},
           {"inputs", inputs},
           {"timings_ms", timer.ms},
           {"counts", counts},
           {"threads", g.threads},
           {"strict", g.strict},
           {"seed_rng", g.seed_rng}};
    write_json_atomic(j.dump(2) + "\n",
                      std::filesystem::path(g.output_dir) / (command + "_manifest.json"));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"PL Morse-Cerf descriptors of time-varying scalar fields"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Global g;
    app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
    app.add_flag("--strict", g.strict, "abort on non-generic input");
    app.add_option("--output-dir", g.output_dir, "directory for outputs");
    app.add_option("--seed-rng", g.seed_rng, "seed recorded in the manifest");

    // --- synth ---------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "generate a sum-of-Gaussians field");
    std::string sy_grid, sy_periodic, sy_out = "field.raw";
    std::size_t sy_T = 16;
    double sy_sigma = 2.0, sy_t0 = 0.0, sy_dt = 0.0;
    std::vector<std::string> sy_gaussians;
    synth->add_option("--grid", sy_grid, "grid dims, e.g. 64x64 or 32x32x32")->required();
    synth->add_option("--periodic", sy_periodic, "periodic axes, e.g. xy");
    synth->add_option("--timesteps", sy_T, "number of time samples")->required();
    synth->add_option("--sigma", sy_sigma, "default gaussian width");
    synth->add_option("--gaussian", sy_gaussians,
                      "repeatable source spec: static:x=..,y=..|line:x0=..|orbit:cx=..,r=..,period=..")
        ->required();
    synth->add_option("--out", sy_out, "output raw file name");
    synth->add_option("--t0", sy_t0, "sidecar start time");
    synth->add_option("--dt", sy_dt, "sidecar time step (0 = 1/(T-1))");

    // --- cerf ----------------------------------------------------------
    auto* cerf = app.add_subcommand("cerf", "compute the Cerf diagram and tracking graph");
    std::string cf_input, cf_complex;
    bool cf_plot = false;
    int cf_index_filter = -1;
    cerf->add_option("--input", cf_input, "field (.raw with sidecar, or .csv)")->required();
    cerf->add_option("--complex", cf_complex, "complex JSON (for csv input)");
    cerf->add_flag("--plot", cf_plot, "write cerf.svg");
    cerf->add_option("--index-filter", cf_index_filter, "emit only arcs of this critical index");

    // --- tvecc ---------------------------------------------------------
    auto* tv = app.add_subcommand("tvecc", "export the TV-ECC surface");
    std::string tv_input, tv_complex;
    tv->add_option("--input", tv_input)->required();
    tv->add_option("--complex", tv_complex);

    // --- dist ----------------------------------------------------------
    auto* dist = app.add_subcommand("dist", "distance between two fields");
    std::string di_a, di_b, di_ca, di_cb, di_quad = "sampled", di_range;
    std::size_t di_nt = 0;
    dist->add_option("--input", di_a, "first field")->required();
    dist->add_option("--input2", di_b, "second field")->required();
    dist->add_option("--complex", di_ca);
    dist->add_option("--complex2", di_cb);
    dist->add_option("--quadrature", di_quad, "exact|sampled");
    dist->add_option("--nt", di_nt, "sampled-mode time nodes (0 = auto)");
    dist->add_option("--s-range", di_range, "explicit s integration range lo:hi");

    // --- distmat -------------------------------------------------------
    auto* dm = app.add_subcommand("distmat", "sliding-window distance matrix");
    std::string dm_input, dm_complex, dm_quad = "sampled", dm_range;
    std::size_t dm_window = 50, dm_shift = 5, dm_start = 0, dm_nt = 0;
    dm->add_option("--input", dm_input)->required();
    dm->add_option("--complex", dm_complex);
    dm->add_option("--window", dm_window, "samples per window")->required();
    dm->add_option("--shift", dm_shift, "samples between window starts");
    dm->add_option("--start", dm_start, "first sample of the first window");
    dm->add_option("--quadrature", dm_quad, "exact|sampled");
    dm->add_option("--nt", dm_nt, "sampled-mode time nodes (0 = auto)");
    dm->add_option("--s-range", dm_range, "explicit s integration range lo:hi");

    // --- tracks --------------------------------------------------------
    auto* tr = app.add_subcommand("tracks", "seeded search for feature tracks");
    std::string tr_input, tr_complex, tr_seed;
    double tr_radius = 0.0, tr_time = 0.0, tr_slice = -1.0;
    bool tr_after = false;
    int tr_index = -1;
    tr->add_option("--input", tr_input)->required();
    tr->add_option("--complex", tr_complex);
    tr->add_option("--seed", tr_seed, "seed position x,y[,z]")->required();
    tr->add_option("--radius", tr_radius, "search radius")->required();
    tr->add_option("--time", tr_time, "seed time")->required();
    tr->add_flag("--after", tr_after, "also return tracks born after the seed time");
    tr->add_option("--index", tr_index, "critical index of tracked features (-1 = maxima)");
    tr->add_option("--slice-time", tr_slice, "background slice time for the overlay (-1 = seed time)");

    // --- validate ------------------------------------------------------
    auto* va = app.add_subcommand("validate", "check the combinatorial-manifold property");
    std::string va_complex, va_grid, va_periodic;
    bool va_closed = false;
    va->add_option("--complex", va_complex, "complex JSON");
    va->add_option("--grid", va_grid, "grid dims (alternative to --complex)");
    va->add_option("--periodic", va_periodic, "periodic axes for --grid");
    va->add_flag("--closed", va_closed, "require a closed manifold (no boundary)");

    // accept the global flags after the subcommand too
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        std::filesystem::create_directories(g.output_dir);
        const std::filesystem::path outdir(g.output_dir);
        StageTimer timer;
        SweepOptions sweep_opts;
        sweep_opts.strict = g.strict;
        sweep_opts.threads = resolve_threads(g.threads);

        if (*synth) {
            const GridSpec spec = parse_grid(sy_grid, sy_periodic);
            std::vector<GaussianPath> paths;
            for (const auto& s : sy_gaussians) paths.push_back(parse_gaussian(s, spec.rank()));
            auto field = timer.run("generate", [&] {
                return generate_gaussians(spec, paths, sy_sigma, sy_T);
            });
            if (sy_dt > 0.0 || sy_t0 != 0.0) {
                const double dt = sy_dt > 0.0 ? sy_dt : 1.0 / static_cast<double>(sy_T - 1);
                std::vector<double> times(sy_T);
                for (std::size_t k = 0; k < sy_T; ++k) times[k] = sy_t0 + dt * static_cast<double>(k);
                field = TimeVaryingField(field.complex_ptr(), std::move(times),
                                         std::vector<float>(field.raw_values()));
            }
            const auto raw_path = outdir / sy_out;
            timer.run("write", [&] { save_field_raw(field, raw_path); });
            json config{{"grid", sy_grid},    {"periodic", sy_periodic}, {"timesteps", sy_T},
                        {"sigma", sy_sigma},  {"gaussians", sy_gaussians}, {"out", sy_out},
                        {"t0", sy_t0},        {"dt", sy_dt}};
            write_manifest(g, "synth", config, json::object(), timer,
                           {{"vertices", field.complex().vertex_count()},
                            {"timesteps", field.num_times()}});
            std::cout << raw_path.string() << "\n";
        } else if (*cerf) {
            json inputs = json::object();
            auto field = timer.run("load", [&] { return load_input(cf_input, cf_complex, inputs); });
            auto diagram = timer.run("sweep", [&] { return compute_cerf_diagram(field, sweep_opts); });
            auto graph = timer.run("tracking_graph", [&] { return tracking_graph(diagram); });
            timer.run("write", [&] {
                std::optional<int> filter;
                if (cf_index_filter >= 0) filter = cf_index_filter;
                save_arcs_csv(diagram, field.complex().dim(), outdir / "arcs.csv", filter);
                save_crossings_csv(diagram, outdir / "crossings.csv");
                save_tracking_graph_json(graph, diagram, outdir / "tracking_graph.json");
                if (cf_plot) svg_cerf_diagram(field, diagram, outdir / "cerf.svg",
                                              cf_index_filter >= 0
                                                  ? std::optional<int>(cf_index_filter)
                                                  : std::nullopt);
            });
            json config{{"input", cf_input},
                        {"complex", cf_complex},
                        {"plot", cf_plot},
                        {"index_filter", cf_index_filter}};
            write_manifest(g, "cerf", config, inputs, timer,
                           {{"arcs", diagram.arcs.size()},
                            {"crossings", diagram.crossings.size()},
                            {"unclassified", diagram.unclassified_count}});
            std::cout << "arcs=" << diagram.arcs.size() << " crossings=" << diagram.crossings.size()
                      << " unclassified=" << diagram.unclassified_count << "\n";
        } else if (*tv) {
            json inputs = json::object();
            auto field = timer.run("load", [&] { return load_input(tv_input, tv_complex, inputs); });
            auto diagram = timer.run("sweep", [&] { return compute_cerf_diagram(field, sweep_opts); });
            auto surface = timer.run("surface", [&] { return tvecc(field, &diagram); });
            timer.run("write", [&] { save_surface_csv(surface, field, outdir / "surface.csv"); });
            write_manifest(g, "tvecc", {{"input", tv_input}, {"complex", tv_complex}}, inputs,
                           timer,
                           {{"slabs", surface.slabs().size()}, {"chi", surface.chi()}});
            std::cout << "slabs=" << surface.slabs().size() << " chi=" << surface.chi() << "\n";
        } else if (*dist) {
            json inputs = json::object();
            auto fa = timer.run("load_a", [&] { return load_input(di_a, di_ca, inputs); });
            auto fb = timer.run("load_b", [&] { return load_input(di_b, di_cb, inputs); });
            const Quadrature quad = parse_quadrature(di_quad, di_nt);
            const auto range = parse_range(di_range);
            auto sa = timer.run("surface_a", [&] { return tvecc(fa); });
            auto sb = timer.run("surface_b", [&] { return tvecc(fb); });
            const double d = timer.run("distance", [&] { return distance(sa, sb, quad, range); });
            json config{{"input", di_a},       {"input2", di_b}, {"quadrature", di_quad},
                        {"nt", di_nt},         {"s_range", di_range}};
            write_manifest(g, "dist", config, inputs, timer, json{{"distance", d}});
            std::cout << format_double(d) << "\n";
        } else if (*dm) {
            json inputs = json::object();
            auto field = timer.run("load", [&] { return load_input(dm_input, dm_complex, inputs); });
            const Quadrature quad = parse_quadrature(dm_quad, dm_nt);
            const auto range = parse_range(dm_range);
            auto m = timer.run("matrix", [&] {
                return distance_matrix(field, dm_window, dm_shift, dm_start, quad,
                                       resolve_threads(g.threads), range);
            });
            auto est = estimate_period(m);
            timer.run("write", [&] {
                save_distance_matrix_csv(m, outdir / "distmat.csv");
                svg_distance_heatmap(m, outdir / "distmat.svg");
            });
            json config{{"input", dm_input}, {"window", dm_window}, {"shift", dm_shift},
                        {"start", dm_start}, {"quadrature", dm_quad}, {"nt", dm_nt}};
            json counts{{"windows", m.n}};
            if (est.found) {
                counts["period_samples"] = est.period_samples;
                counts["period_time"] = est.period_time;
            } else {
                counts["period_samples"] = nullptr;
            }
            write_manifest(g, "distmat", config, inputs, timer, counts);
            if (est.found)
                std::cout << "windows=" << m.n << " period_samples=" << est.period_samples << "\n";
            else
                std::cout << "windows=" << m.n << " period_samples=none\n";
        } else if (*tr) {
            json inputs = json::object();
            auto field = timer.run("load", [&] { return load_input(tr_input, tr_complex, inputs); });
            const auto seed = parse_point(tr_seed);
            const auto& grid = field.complex().grid();
            if (!grid) throw DataError("tracks need a grid-backed field");
            for (std::size_t axis = 0; axis < seed.size(); ++axis)
                if (seed[axis] < 0 || seed[axis] > static_cast<double>(grid->dims[axis] - 1))
                    throw DataError("seed outside the grid domain");
            auto diagram = timer.run("sweep", [&] { return compute_cerf_diagram(field, sweep_opts); });
            auto graph = tracking_graph(diagram);
            const int index = tr_index >= 0 ? tr_index : field.complex().dim();
            auto all_tracks = maxima_tracks(graph, diagram, index);
            auto found = timer.run("search", [&] {
                return seed_search(graph, diagram, field, seed, tr_radius, tr_time, tr_after,
                                   all_tracks);
            });
            std::vector<int> labels(found.size(), 0);
            for (std::size_t i = 0; i < found.size(); ++i)
                labels[i] = found[i].birth > tr_time ? 1 : 0;
            timer.run("write", [&] {
                save_tracks_csv(found, diagram, field, outdir / "tracks.csv", &labels);
                const double slice = tr_slice >= 0 ? tr_slice : tr_time;
                svg_tracks_overlay(field, diagram, found, slice, outdir / "tracks.svg", &labels);
            });
            json config{{"input", tr_input}, {"seed", tr_seed},   {"radius", tr_radius},
                        {"time", tr_time},   {"after", tr_after}, {"index", index}};
            write_manifest(g, "tracks", config, inputs, timer, {{"tracks", found.size()}});
            std::cout << "tracks=" << found.size() << "\n";
        } else if (*va) {
            std::optional<SimplicialComplex> complex;
            json inputs = json::object();
            if (!va_complex.empty()) {
                complex = load_complex_json(va_complex);
                inputs[va_complex] = {{"bytes", std::filesystem::file_size(va_complex)},
                                      {"fnv1a64", fnv1a64_file(va_complex)}};
            } else if (!va_grid.empty()) {
                const GridSpec spec = parse_grid(va_grid, va_periodic);
                complex = spec.rank() == 2 ? freudenthal_2d(spec) : freudenthal_3d(spec);
            } else {
                throw ConfigError("validate needs --complex or --grid");
            }
            auto report = timer.run("validate", [&] {
                return validate_manifold(*complex, !va_closed);
            });
            json issues = json::array();
            for (const auto& issue : report.issues)
                issues.push_back({{"vertex", issue.vertex}, {"reason", issue.reason}});
            json out{{"valid", report.valid},
                     {"closed", report.closed},
                     {"boundary_vertices", report.boundary_vertices},
                     {"issues", issues}};
            std::cout << out.dump(2) << "\n";
            write_manifest(g, "validate", {{"complex", va_complex}, {"grid", va_grid}}, inputs,
                           timer, {{"issues", report.issues.size()}});
            return report.valid ? 0 : 3;
        }
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const NonGenericError& e) {
        std::cerr << "non-generic input: " << e.what() << "\n";
        return 4;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
