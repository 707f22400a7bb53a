#include "plcerf/plmorse.hpp"

#include <algorithm>
#include <atomic>

#include "plcerf/parallel.hpp"

namespace plcerf {

VertexClass VertexClass::from_betti(const BettiVector& beta) {
    VertexClass out;
    out.betti = beta;
    if (beta.is_zero()) {
        out.kind = Kind::Regular;
        return out;
    }
    int index = -1, mult = 0;
    if (beta.single_nonzero(index, mult)) {
        out.kind = Kind::Critical;
        out.index = index;
        out.multiplicity = mult;
    } else {
        out.kind = Kind::DegenerateCritical;
    }
    return out;
}

std::string VertexClass::to_string() const {
    switch (kind) {
    case Kind::Regular:
        return "regular";
    case Kind::Critical:
        return "critical(index=" + std::to_string(index) +
               ",mult=" + std::to_string(multiplicity) + ")";
    case Kind::DegenerateCritical:
        return "degenerate" + betti.to_string();
    }
    return "?";
}

BettiVector homological_index(const SimplicialComplex& c, const Valuation& val, VertexId v) {
    c.check_vertex(v);
    return detail::lower_link_betti_f2(c, v, [&](VertexId w) { return val.below(w, v); });
}

VertexClass classify_vertex(const SimplicialComplex& c, const Valuation& val, VertexId v) {
    return VertexClass::from_betti(homological_index(c, val, v));
}

std::vector<std::pair<VertexId, VertexClass>> critical_points(const SimplicialComplex& c,
                                                              const Valuation& val, int threads) {
    std::vector<std::vector<std::pair<VertexId, VertexClass>>> partial(
        static_cast<std::size_t>(resolve_threads(threads)));
    parallel_chunks(c.vertex_count(), threads, [&](std::size_t b, std::size_t e, int tid) {
        auto& out = partial[static_cast<std::size_t>(tid)];
        for (std::size_t v = b; v < e; ++v) {
            VertexClass cls = classify_vertex(c, val, static_cast<VertexId>(v));
            if (cls.critical()) out.emplace_back(static_cast<VertexId>(v), std::move(cls));
        }
    });
    std::vector<std::pair<VertexId, VertexClass>> out;
    for (auto& p : partial)
        out.insert(out.end(), std::make_move_iterator(p.begin()), std::make_move_iterator(p.end()));
    return out;
}

bool is_pl_morse(const SimplicialComplex& c, const Valuation& val, int threads) {
    std::atomic<bool> ok{true};
    parallel_chunks(c.vertex_count(), threads, [&](std::size_t b, std::size_t e, int) {
        for (std::size_t v = b; v < e && ok.load(std::memory_order_relaxed); ++v) {
            const VertexClass cls = classify_vertex(c, val, static_cast<VertexId>(v));
            if (!cls.regular() && !cls.simple()) {
                ok.store(false, std::memory_order_relaxed);
                return;
            }
        }
    });
    return ok.load();
}

// ---------------------------------------------------------------------------
// StepFunction

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<long long> deltas,
                           long long base) {
    if (breakpoints.size() != deltas.size())
        throw DataError("StepFunction: breakpoints/deltas size mismatch");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i - 1] < breakpoints[i]))
            throw DataError("StepFunction: breakpoints must be strictly increasing");
    breaks_ = std::move(breakpoints);
    levels_.resize(breaks_.size() + 1);
    levels_[0] = base;
    for (std::size_t i = 0; i < breaks_.size(); ++i) levels_[i + 1] = levels_[i] + deltas[i];
}

long long StepFunction::operator()(double s) const {
    // index = number of breakpoints <= s, so the jump at s is included
    const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), s);
    return levels_[static_cast<std::size_t>(it - breaks_.begin())];
}

// ---------------------------------------------------------------------------
// Lower-star ECC by face counting

StepFunction ecc_lower_star(const SimplicialComplex& c, const Valuation& val) {
    if (val.size() != c.vertex_count())
        throw DataError("ecc_lower_star: valuation size mismatch");

    // Every simplex enters the sublevel complex at its tie-broken maximal
    // vertex, so chi jumps at f(v) by the alternating face count of the
    // lower star of v.
    std::vector<long long> delta(c.vertex_count(), 0);
    std::vector<std::vector<VertexId>> faces;
    std::vector<VertexId> low;
    const std::size_t stride = static_cast<std::size_t>(c.dim() + 1);

    for (VertexId v = 0; v < c.vertex_count(); ++v) {
        faces.clear();
        for (auto ci : c.star_cells(v)) {
            auto cell = c.cell(ci);
            low.clear();
            for (VertexId w : cell)
                if (w != v && val.below(w, v)) low.push_back(w);
            if (low.empty()) continue;
            const unsigned full = (1u << low.size()) - 1u;
            for (unsigned mask = 1; mask <= full; ++mask) {
                std::vector<VertexId> face;
                face.reserve(stride);
                for (std::size_t i = 0; i < low.size(); ++i)
                    if (mask & (1u << i)) face.push_back(low[i]);
                faces.push_back(std::move(face));
            }
        }
        std::sort(faces.begin(), faces.end());
        faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
        long long dv = 1; // the vertex itself
        for (const auto& f : faces) dv += (f.size() % 2 == 1) ? -1 : 1;
        delta[v] = dv;
    }

    // merge equal values: the step function breaks at distinct f-values
    std::vector<VertexId> order(c.vertex_count());
    for (VertexId v = 0; v < c.vertex_count(); ++v) order[v] = v;
    std::sort(order.begin(), order.end(),
              [&](VertexId a, VertexId b) { return val[a] < val[b]; });

    std::vector<double> breaks;
    std::vector<long long> deltas;
    for (VertexId v : order) {
        const double s = val[v];
        if (!breaks.empty() && breaks.back() == s) {
            deltas.back() += delta[v];
        } else {
            breaks.push_back(s);
            deltas.push_back(delta[v]);
        }
    }
    return StepFunction(std::move(breaks), std::move(deltas));
}

} // namespace plcerf
