#include "plcerf/io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace plcerf {

using nlohmann::json;

std::string format_double(double x) {
    std::array<char, 64> buf{};
    auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc{}) return "0";
    return std::string(buf.data(), p);
}

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ull;
    char chunk[65536];
    while (in) {
        in.read(chunk, sizeof(chunk));
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(chunk[i]);
            h *= 0x100000001b3ull;
        }
    }
    return h;
}

namespace {

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError(path.string() + ": " + e.what());
    }
    return j;
}

std::ofstream open_out(const std::filesystem::path& path) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    return out;
}

} // namespace

void write_json_atomic(const std::string& body, const std::filesystem::path& path) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        auto out = open_out(tmp);
        out << body;
        if (!out) throw DataError("failed writing " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// Complex JSON

SimplicialComplex load_complex_json(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    if (!j.contains("d") || !j.contains("vertex_count") || !j.contains("maximal_simplices"))
        throw DataError(path.string() + ": complex JSON needs d, vertex_count, maximal_simplices");
    const int d = j.at("d").get<int>();
    const auto vcount = j.at("vertex_count").get<std::uint64_t>();
    std::vector<VertexId> flat;
    for (const auto& cell : j.at("maximal_simplices")) {
        if (static_cast<int>(cell.size()) != d + 1)
            throw DataError(path.string() + ": maximal simplex arity != d+1");
        for (const auto& v : cell) flat.push_back(v.get<VertexId>());
    }
    return SimplicialComplex(d, static_cast<VertexId>(vcount), std::move(flat));
}

void save_complex_json(const SimplicialComplex& c, const std::filesystem::path& path) {
    json cells = json::array();
    for (std::size_t i = 0; i < c.cell_count(); ++i) {
        json cell = json::array();
        for (VertexId v : c.cell(i)) cell.push_back(v);
        cells.push_back(std::move(cell));
    }
    json j{{"d", c.dim()}, {"vertex_count", c.vertex_count()}, {"maximal_simplices", cells}};
    write_json_atomic(j.dump(2) + "\n", path);
}

// ---------------------------------------------------------------------------
// Raw + sidecar fields

namespace {

std::filesystem::path sidecar_of(const std::filesystem::path& raw_path) {
    std::filesystem::path p = raw_path;
    p.replace_extension(".json");
    return p;
}

} // namespace

void save_field_raw(const TimeVaryingField& field, const std::filesystem::path& raw_path) {
    const auto& grid = field.complex().grid();
    if (!grid) throw DataError("raw field format requires a grid-backed complex");

    auto out = open_out(raw_path);
    const auto& vals = field.raw_values();
    static_assert(sizeof(float) == 4);
    out.write(reinterpret_cast<const char*>(vals.data()),
              static_cast<std::streamsize>(vals.size() * sizeof(float)));
    if (!out) throw DataError("failed writing " + raw_path.string());
    out.close();

    json side{{"grid", grid->dims},
              {"periodic", grid->periodic},
              {"timesteps", field.num_times()},
              {"t0", field.t_begin()},
              {"dt", field.dt()}};
    write_json_atomic(side.dump(2) + "\n", sidecar_of(raw_path));
}

TimeVaryingField load_field_raw(const std::filesystem::path& raw_path) {
    const json side = read_json_file(sidecar_of(raw_path));
    GridSpec spec;
    for (const auto& d : side.at("grid")) spec.dims.push_back(d.get<std::uint32_t>());
    if (side.contains("periodic"))
        for (const auto& p : side.at("periodic")) spec.periodic.push_back(p.get<bool>());
    const std::size_t T = side.at("timesteps").get<std::size_t>();
    const double t0 = side.value("t0", 0.0);
    double dt = side.value("dt", 0.0);

    std::shared_ptr<const SimplicialComplex> complex;
    if (spec.rank() == 2)
        complex = std::make_shared<SimplicialComplex>(freudenthal_2d(spec));
    else if (spec.rank() == 3)
        complex = std::make_shared<SimplicialComplex>(freudenthal_3d(spec));
    else
        throw DataError("raw sidecar grid must be 2D or 3D");

    const std::uint64_t V = spec.vertex_count();
    std::ifstream in(raw_path, std::ios::binary);
    if (!in) throw DataError("cannot open " + raw_path.string());
    std::vector<float> vals(V * T);
    in.read(reinterpret_cast<char*>(vals.data()),
            static_cast<std::streamsize>(vals.size() * sizeof(float)));
    if (static_cast<std::uint64_t>(in.gcount()) != V * T * sizeof(float))
        throw DataError(raw_path.string() + ": file shorter than V*T*4 bytes (V=" +
                        std::to_string(V) + ", T=" + std::to_string(T) + ")");

    if (dt <= 0.0) dt = T > 1 ? 1.0 / static_cast<double>(T - 1) : 1.0;
    std::vector<double> times(T);
    for (std::size_t k = 0; k < T; ++k) times[k] = t0 + dt * static_cast<double>(k);
    return TimeVaryingField(std::move(complex), std::move(times), std::move(vals));
}

// ---------------------------------------------------------------------------
// CSV fields

void save_field_csv(const TimeVaryingField& field, const std::filesystem::path& path) {
    auto out = open_out(path);
    const std::size_t T = field.num_times();
    out << "vertex";
    for (std::size_t k = 0; k < T; ++k) out << ",t" << k;
    out << "\n";
    for (VertexId v = 0; v < field.complex().vertex_count(); ++v) {
        out << v;
        for (std::size_t k = 0; k < T; ++k)
            out << "," << format_double(field.sample(v, k));
        out << "\n";
    }
}

TimeVaryingField load_field_csv(const std::filesystem::path& path,
                                std::shared_ptr<const SimplicialComplex> complex) {
    if (!complex) throw DataError("CSV field needs an explicit complex");
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw DataError(path.string() + ": empty file");
    std::size_t T = 0;
    {
        std::stringstream hdr(line);
        std::string cell;
        if (!std::getline(hdr, cell, ',') || cell != "vertex")
            throw DataError(path.string() + ":1: header must start with 'vertex'");
        while (std::getline(hdr, cell, ',')) ++T;
    }
    if (T < 2) throw DataError(path.string() + ": needs at least 2 time columns");

    const VertexId V = complex->vertex_count();
    std::vector<float> vals(static_cast<std::size_t>(V) * T);
    std::vector<bool> seen(V, false);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        if (!std::getline(row, cell, ','))
            throw DataError(path.string() + ":" + std::to_string(lineno) + ": bad row");
        VertexId v;
        try {
            v = static_cast<VertexId>(std::stoul(cell));
        } catch (...) {
            throw DataError(path.string() + ":" + std::to_string(lineno) + ": bad vertex id");
        }
        if (v >= V)
            throw DataError(path.string() + ":" + std::to_string(lineno) + ": vertex out of range");
        for (std::size_t k = 0; k < T; ++k) {
            if (!std::getline(row, cell, ','))
                throw DataError(path.string() + ":" + std::to_string(lineno) +
                                ": expected " + std::to_string(T) + " values");
            try {
                vals[k * V + v] = std::stof(cell);
            } catch (...) {
                throw DataError(path.string() + ":" + std::to_string(lineno) + ": bad value '" +
                                cell + "'");
            }
        }
        seen[v] = true;
    }
    for (VertexId v = 0; v < V; ++v)
        if (!seen[v]) throw DataError(path.string() + ": missing row for vertex " + std::to_string(v));
    return TimeVaryingField::uniform(std::move(complex), T, std::move(vals));
}

TimeVaryingField load_field_auto(const std::filesystem::path& path,
                                 std::shared_ptr<const SimplicialComplex> complex) {
    const auto ext = path.extension().string();
    if (ext == ".raw" || ext == ".bin") return load_field_raw(path);
    if (ext == ".csv") return load_field_csv(path, std::move(complex));
    throw DataError("unknown field format: " + path.string());
}

// ---------------------------------------------------------------------------
// Pipeline outputs

void save_arcs_csv(const CerfDiagram& diagram, int dim, const std::filesystem::path& path,
                   std::optional<int> index_filter) {
    auto out = open_out(path);
    out << "t1,val1,t2,val2,vertex";
    for (int i = 0; i <= dim; ++i) out << ",beta" << i;
    out << "\n";
    for (const auto& arc : diagram.arcs) {
        if (index_filter) {
            int idx = -1, mult = 0;
            if (!arc.beta.single_nonzero(idx, mult) || idx != *index_filter) continue;
        }
        out << format_double(arc.t1) << "," << format_double(arc.val1) << ","
            << format_double(arc.t2) << "," << format_double(arc.val2) << "," << arc.vertex;
        for (int i = 0; i <= dim; ++i) out << "," << (i < arc.beta.size() ? arc.beta[i] : 0);
        out << "\n";
    }
}

void save_crossings_csv(const CerfDiagram& diagram, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "t,u,v,kind\n";
    for (const auto& cx : diagram.crossings) {
        out << format_double(cx.event.t) << "," << cx.event.u << "," << cx.event.v << ","
            << (cx.kind ? to_string(*cx.kind) : "unclassifiable") << "\n";
    }
}

void save_tracking_graph_json(const TrackingGraph& g, const CerfDiagram& diagram,
                              const std::filesystem::path& path) {
    json nodes = json::array();
    for (const auto& n : g.nodes) {
        const CerfArc& arc = diagram.arcs[static_cast<std::size_t>(n.arc)];
        json beta = json::array();
        for (int i = 0; i < arc.beta.size(); ++i) beta.push_back(arc.beta[i]);
        nodes.push_back({{"arc", n.arc},
                         {"vertex", arc.vertex},
                         {"t1", arc.t1},
                         {"val1", arc.val1},
                         {"t2", arc.t2},
                         {"val2", arc.val2},
                         {"beta", beta},
                         {"index", n.index},
                         {"born_by_birth", n.born_by_birth},
                         {"died_by_death", n.died_by_death}});
    }
    json edges = json::array();
    for (const auto& e : g.edges)
        edges.push_back({{"from", e.from}, {"to", e.to}, {"kind", to_string(e.kind)}, {"t", e.t}});
    json j{{"nodes", nodes}, {"edges", edges}};
    write_json_atomic(j.dump(2) + "\n", path);
}

void save_tracks_csv(const std::vector<Track>& tracks, const CerfDiagram& diagram,
                     const TimeVaryingField& field, const std::filesystem::path& path,
                     const std::vector<int>* labels) {
    auto out = open_out(path);
    const auto& grid = field.complex().grid();
    out << "track,t,vertex";
    const std::size_t rank = grid ? grid->rank() : 0;
    for (std::size_t a = 0; a < rank; ++a) out << ",x" << a;
    out << ",value";
    if (labels) out << ",group";
    out << "\n";

    for (std::size_t ti = 0; ti < tracks.size(); ++ti) {
        const Track& tk = tracks[ti];
        for (int ai : tk.arcs) {
            const CerfArc& arc = diagram.arcs[static_cast<std::size_t>(ai)];
            // rows at every sample inside the arc plus the endpoints
            std::vector<double> ts{arc.t1};
            for (double t : field.times())
                if (t > arc.t1 && t < arc.t2) ts.push_back(t);
            if (arc.t2 > arc.t1) ts.push_back(arc.t2);
            for (double t : ts) {
                out << ti << "," << format_double(t) << "," << arc.vertex;
                if (grid) {
                    auto coords = grid->coords_of(arc.vertex);
                    for (auto x : coords) out << "," << x;
                }
                out << "," << format_double(field.value_at(arc.vertex, t));
                if (labels) out << "," << (*labels)[ti];
                out << "\n";
            }
        }
    }
}

void save_surface_csv(const StepSurface& surface, const TimeVaryingField& field,
                      const std::filesystem::path& path) {
    auto out = open_out(path);
    // s-grid: distinct thresholds at sample times; t-grid: sample times
    std::vector<double> svals;
    for (double t : field.times()) {
        const auto& slabs = surface.slabs();
        for (const auto& slab : slabs) {
            if (t < slab.t0 || t > slab.t1) continue;
            for (const auto& e : slab.entries) svals.push_back(e.c0 + e.c1 * t);
            break;
        }
    }
    std::sort(svals.begin(), svals.end());
    svals.erase(std::unique(svals.begin(), svals.end()), svals.end());

    out << "s";
    for (double t : field.times()) out << "," << format_double(t);
    out << "\n";
    for (double s : svals) {
        out << format_double(s);
        for (double t : field.times()) out << "," << surface.eval(s, t);
        out << "\n";
    }
}

void save_distance_matrix_csv(const DistanceMatrix& m, const std::filesystem::path& path) {
    auto out = open_out(path);
    out << "# window=" << m.window << " shift=" << m.shift << " start=" << m.start
        << " dt=" << format_double(m.sample_dt) << "\n";
    for (std::size_t i = 0; i < m.n; ++i) {
        for (std::size_t j = 0; j < m.n; ++j) {
            if (j) out << ",";
            out << format_double(m.at(i, j));
        }
        out << "\n";
    }
}

} // namespace plcerf
