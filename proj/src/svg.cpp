#include "plcerf/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "plcerf/io.hpp"
#include "plcerf/version.hpp"

namespace plcerf {

namespace {

constexpr const char* kIndexColors[] = {"#1f77b4", "#2ca02c", "#d62728", "#9467bd"};

const char* index_color(int idx) {
    if (idx < 0 || idx > 3) return "#7f7f7f";
    return kIndexColors[idx];
}

std::ofstream open_svg(const std::filesystem::path& path, double w, double h) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<!-- generated by plcerf " << kVersion << " -->\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
        << "\" viewBox=\"0 0 " << w << " " << h << "\">\n";
    return out;
}

std::string gray(double v01) {
    const int g = static_cast<int>(std::lround(255.0 * std::clamp(1.0 - v01, 0.0, 1.0)));
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", g, g, g);
    return buf;
}

} // namespace

void svg_cerf_diagram(const TimeVaryingField& field, const CerfDiagram& diagram,
                      const std::filesystem::path& path, std::optional<int> index_filter) {
    const double W = 960, H = 540, pad = 40;
    const double t0 = field.t_begin(), t1 = field.t_end();
    double vmin = field.min_value(), vmax = field.max_value();
    if (vmax <= vmin) vmax = vmin + 1;

    auto X = [&](double t) { return pad + (W - 2 * pad) * (t - t0) / (t1 - t0); };
    auto Y = [&](double v) { return H - pad - (H - 2 * pad) * (v - vmin) / (vmax - vmin); };

    auto out = open_svg(path, W, H);
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    // axes
    out << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << W - pad << "\" y2=\""
        << H - pad << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad << "\" y2=\"" << H - pad
        << "\" stroke=\"black\"/>\n";

    for (const auto& arc : diagram.arcs) {
        int idx = -1, mult = 0;
        arc.beta.single_nonzero(idx, mult);
        if (index_filter && idx != *index_filter) continue;
        out << "<polyline fill=\"none\" stroke=\"" << index_color(idx)
            << "\" stroke-width=\"1.2\" points=\"";
        out << X(arc.t1) << "," << Y(arc.val1) << " ";
        for (double t : field.times())
            if (t > arc.t1 && t < arc.t2)
                out << X(t) << "," << Y(field.value_at(arc.vertex, t)) << " ";
        out << X(arc.t2) << "," << Y(arc.val2);
        out << "\"/>\n";
    }

    for (const auto& cx : diagram.crossings) {
        if (!cx.kind) continue;
        const char* color = nullptr;
        switch (*cx.kind) {
        case CrossingKind::Birth: color = "#ff7f0e"; break;
        case CrossingKind::Death: color = "#000000"; break;
        case CrossingKind::CriticalRegularSwitch: color = "#17becf"; break;
        case CrossingKind::IndexSwap: color = "#e377c2"; break;
        default: break;
        }
        if (!color) continue;
        const double v = field.value_at(cx.event.u, cx.event.t);
        out << "<circle cx=\"" << X(cx.event.t) << "\" cy=\"" << Y(v)
            << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }
    out << "</svg>\n";
}

void svg_distance_heatmap(const DistanceMatrix& m, const std::filesystem::path& path) {
    const double cell = std::max(2.0, std::min(16.0, 640.0 / std::max<std::size_t>(m.n, 1)));
    const double pad = 24;
    const double W = pad * 2 + cell * static_cast<double>(m.n);
    const double H = W;

    double vmax = 0;
    for (double e : m.entries) vmax = std::max(vmax, e);
    if (vmax <= 0) vmax = 1;

    auto out = open_svg(path, W, H);
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    out << "<!-- window=" << m.window << " shift=" << m.shift << " start=" << m.start << " -->\n";
    for (std::size_t i = 0; i < m.n; ++i) {
        for (std::size_t j = 0; j < m.n; ++j) {
            out << "<rect x=\"" << pad + cell * static_cast<double>(j) << "\" y=\""
                << pad + cell * static_cast<double>(i) << "\" width=\"" << cell << "\" height=\""
                << cell << "\" fill=\"" << gray(m.at(i, j) / vmax) << "\"/>\n";
        }
    }
    out << "</svg>\n";
}

void svg_tracks_overlay(const TimeVaryingField& field, const CerfDiagram& diagram,
                        const std::vector<Track>& tracks, double slice_time,
                        const std::filesystem::path& path, const std::vector<int>* labels) {
    const auto& grid = field.complex().grid();
    if (!grid) throw DataError("tracks overlay needs a grid-backed complex");
    const std::size_t nx = grid->dims[0];
    const std::size_t ny = grid->rank() > 1 ? grid->dims[1] : 1;

    const double cell = std::max(1.0, std::min(12.0, 780.0 / static_cast<double>(nx)));
    const double pad = 16;
    const double W = pad * 2 + cell * static_cast<double>(nx);
    const double H = pad * 2 + cell * static_cast<double>(ny);

    auto out = open_svg(path, W, H);
    out << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";

    // background: scalar slice at slice_time (xy plane; z=0 slab in 3D)
    const Valuation val = field.valuation_at(slice_time);
    double vmin = val[0], vmax = val[0];
    for (VertexId v = 0; v < field.complex().vertex_count(); ++v) {
        vmin = std::min(vmin, val[v]);
        vmax = std::max(vmax, val[v]);
    }
    if (vmax <= vmin) vmax = vmin + 1;
    for (std::size_t y = 0; y < ny; ++y) {
        for (std::size_t x = 0; x < nx; ++x) {
            std::vector<std::uint32_t> coords(grid->rank(), 0);
            coords[0] = static_cast<std::uint32_t>(x);
            if (grid->rank() > 1) coords[1] = static_cast<std::uint32_t>(y);
            const VertexId v = grid->vertex_at(coords);
            const double rel = (val[v] - vmin) / (vmax - vmin);
            out << "<rect x=\"" << pad + cell * static_cast<double>(x) << "\" y=\""
                << pad + cell * static_cast<double>(ny - 1 - y) << "\" width=\"" << cell
                << "\" height=\"" << cell << "\" fill=\"" << gray(1.0 - rel) << "\"/>\n";
        }
    }

    auto PX = [&](double x) { return pad + cell * (x + 0.5); };
    auto PY = [&](double y) { return pad + cell * (static_cast<double>(ny - 1) - y + 0.5); };

    for (std::size_t ti = 0; ti < tracks.size(); ++ti) {
        const int group = labels ? (*labels)[ti] : 0;
        const char* color = group == 0 ? "#d62728" : "#1f77b4";
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (int ai : tracks[ti].arcs) {
            const CerfArc& arc = diagram.arcs[static_cast<std::size_t>(ai)];
            auto coords = grid->coords_of(arc.vertex);
            out << PX(coords[0]) << "," << PY(grid->rank() > 1 ? coords[1] : 0) << " ";
        }
        out << "\"/>\n";
    }
    out << "</svg>\n";
}

} // namespace plcerf
