#include "plcerf/cerf.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "plcerf/parallel.hpp"

namespace plcerf {

const char* to_string(CrossingKind k) {
    switch (k) {
    case CrossingKind::CriticalCritical: return "critical-critical";
    case CrossingKind::RegularRegular: return "regular-regular";
    case CrossingKind::CriticalRegular: return "critical-regular";
    case CrossingKind::CriticalRegularSwitch: return "critical-regular-switch";
    case CrossingKind::IndexSwap: return "index-swap";
    case CrossingKind::Birth: return "birth";
    case CrossingKind::Death: return "death";
    }
    return "?";
}

const char* to_string(TrackingGraph::EdgeKind k) {
    switch (k) {
    case TrackingGraph::EdgeKind::Continuation: return "continuation";
    case TrackingGraph::EdgeKind::Move: return "move";
    case TrackingGraph::EdgeKind::Swap: return "swap";
    case TrackingGraph::EdgeKind::Birth: return "birth";
    case TrackingGraph::EdgeKind::Death: return "death";
    }
    return "?";
}

std::optional<CrossingKind> classify_crossing(const VertexClass& before_u,
                                              const VertexClass& before_v,
                                              const VertexClass& after_u,
                                              const VertexClass& after_v) {
    auto clean = [](const VertexClass& x) { return x.regular() || x.simple(); };
    if (!clean(before_u) || !clean(before_v) || !clean(after_u) || !clean(after_v))
        return std::nullopt;

    const bool bu = before_u.critical(), bv = before_v.critical();
    const bool au = after_u.critical(), av = after_v.critical();

    if (!bu && !bv) {
        if (!au && !av) return CrossingKind::RegularRegular;
        if (au && av) return CrossingKind::Birth;
        return std::nullopt;
    }
    if (bu && bv) {
        if (!au && !av) return CrossingKind::Death;
        if (au && av) {
            if (after_u == before_u && after_v == before_v) return CrossingKind::CriticalCritical;
            if (after_u == before_v && after_v == before_u &&
                before_u.index != before_v.index)
                return CrossingKind::IndexSwap;
            return std::nullopt;
        }
        return std::nullopt;
    }
    // exactly one critical before
    if (bu && !bv) {
        if (au && !av) return after_u == before_u ? std::optional(CrossingKind::CriticalRegular)
                                                  : std::nullopt;
        if (!au && av) return CrossingKind::CriticalRegularSwitch;
        return std::nullopt;
    }
    // !bu && bv
    if (!au && av) return after_v == before_v ? std::optional(CrossingKind::CriticalRegular)
                                              : std::nullopt;
    if (au && !av) return CrossingKind::CriticalRegularSwitch;
    return std::nullopt;
}

bool verify_betti_update(const ClassifiedCrossing& x) {
    const long long du = x.after_u.betti.alternating_sum() - x.before_u.betti.alternating_sum();
    const long long dv = x.after_v.betti.alternating_sum() - x.before_v.betti.alternating_sum();
    return dv == -du;
}

// ---------------------------------------------------------------------------
// Sweep

namespace {

// Tie-broken order of every link-adjacent pair, maintained as one bit per
// undirected edge and flipped at each crossing event. Lower links only
// depend on these bits, so recomputing a homological index between two
// events of the same timestamp sees exactly the infinitesimally-separated
// state the genericity convention prescribes.
class EdgeOrder {
  public:
    EdgeOrder(const SimplicialComplex& c, const Valuation& initial) : c_(&c) {
        below_.resize(c.edge_count());
        for (std::size_t e = 0; e < c.edge_count(); ++e) {
            const auto [u, v] = c.edge(e);
            below_[e] = initial.below(u, v) ? 1 : 0;
        }
    }

    // is w strictly below x?
    bool is_below(VertexId w, VertexId x) const {
        const auto slot = c_->neighbor_slot(x, w);
        const std::size_t e = c_->edge_of_neighbor_slot(x, *slot);
        // bit says "smaller endpoint below larger endpoint"
        return (w < x) ? below_[e] != 0 : below_[e] == 0;
    }

    void flip(VertexId u, VertexId v) {
        const auto slot = c_->neighbor_slot(u, v);
        const std::size_t e = c_->edge_of_neighbor_slot(u, *slot);
        below_[e] ^= 1;
    }

  private:
    const SimplicialComplex* c_;
    std::vector<std::uint8_t> below_;
};

} // namespace

CerfDiagram compute_cerf_diagram(const TimeVaryingField& field, const SweepOptions& opts) {
    const SimplicialComplex& c = field.complex();
    const VertexId V = c.vertex_count();
    const double t_begin = field.t_begin();
    const double t_end = field.t_end();

    CerfDiagram out;

    // initial state at t0 under the tie-broken order
    const Valuation val0 = field.valuation_at(t_begin);
    EdgeOrder order(c, val0);

    std::vector<BettiVector> beta(V);
    parallel_chunks(V, opts.threads, [&](std::size_t b, std::size_t e, int) {
        for (std::size_t v = b; v < e; ++v)
            beta[v] = detail::lower_link_betti_f2(
                c, static_cast<VertexId>(v),
                [&](VertexId w) { return order.is_below(w, static_cast<VertexId>(v)); });
    });

    std::vector<int> open_arc(V, -1);
    auto open_new_arc = [&](VertexId v, double t) {
        CerfArc arc;
        arc.t1 = t;
        arc.val1 = field.value_at(v, t);
        arc.t2 = t;
        arc.val2 = arc.val1;
        arc.vertex = v;
        arc.beta = beta[v];
        out.arcs.push_back(arc);
        open_arc[v] = static_cast<int>(out.arcs.size()) - 1;
    };
    auto close_arc = [&](VertexId v, double t) {
        CerfArc& arc = out.arcs[static_cast<std::size_t>(open_arc[v])];
        arc.t2 = t;
        arc.val2 = field.value_at(v, t);
        const int idx = open_arc[v];
        open_arc[v] = -1;
        return idx;
    };

    for (VertexId v = 0; v < V; ++v)
        if (!beta[v].is_zero()) open_new_arc(v, t_begin);

    auto events = enforce_genericity(detect_crossings(field, CrossingScope::LinkAdjacentOnly,
                                                      opts.threads));
    out.crossings.reserve(events.size());
    out.transitions.reserve(events.size());

    for (const RawCrossing& ev : events) {
        ClassifiedCrossing cx;
        cx.event = ev;
        cx.before_u = VertexClass::from_betti(beta[ev.u]);
        cx.before_v = VertexClass::from_betti(beta[ev.v]);

        order.flip(ev.u, ev.v);

        ArcTransition tr;
        auto update_vertex = [&](VertexId x, int& closed, int& opened) {
            BettiVector nb = detail::lower_link_betti_f2(
                c, x, [&](VertexId w) { return order.is_below(w, x); });
            if (nb != beta[x]) {
                if (open_arc[x] >= 0) closed = close_arc(x, ev.t);
                beta[x] = nb;
                if (!nb.is_zero()) {
                    open_new_arc(x, ev.t);
                    opened = open_arc[x];
                }
            }
        };
        update_vertex(ev.u, tr.closed_u, tr.opened_u);
        update_vertex(ev.v, tr.closed_v, tr.opened_v);

        cx.after_u = VertexClass::from_betti(beta[ev.u]);
        cx.after_v = VertexClass::from_betti(beta[ev.v]);
        cx.kind = classify_crossing(cx.before_u, cx.before_v, cx.after_u, cx.after_v);
        if (!cx.kind) {
            ++out.unclassified_count;
            if (opts.strict)
                throw NonGenericError(
                    "unclassifiable crossing at t=" + std::to_string(ev.t) + " between vertices " +
                    std::to_string(ev.u) + " and " + std::to_string(ev.v));
        }
        out.crossings.push_back(std::move(cx));
        out.transitions.push_back(tr);
    }

    for (VertexId v = 0; v < V; ++v)
        if (open_arc[v] >= 0) close_arc(v, t_end);

    return out;
}

std::vector<ClassifiedCrossing> classify_crossings_post_hoc(const TimeVaryingField& field,
                                                            const std::vector<RawCrossing>& events) {
    const SimplicialComplex& c = field.complex();
    std::vector<double> ts;
    for (const auto& ev : events) ts.push_back(ev.t);
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

    auto classify_at = [&](VertexId v, double t) {
        const Valuation val = field.valuation_at(t);
        return VertexClass::from_betti(detail::lower_link_betti_f2(
            c, v, [&](VertexId w) { return val.below(w, v); }));
    };

    std::vector<ClassifiedCrossing> out;
    out.reserve(events.size());
    for (const auto& ev : events) {
        const auto it = std::lower_bound(ts.begin(), ts.end(), ev.t);
        const double prev = (it == ts.begin()) ? field.t_begin() : *(it - 1);
        const double next = (it + 1 == ts.end()) ? field.t_end() : *(it + 1);
        const double t_before = 0.5 * (prev + ev.t);
        const double t_after = 0.5 * (ev.t + next);

        ClassifiedCrossing cx;
        cx.event = ev;
        cx.before_u = classify_at(ev.u, t_before);
        cx.before_v = classify_at(ev.v, t_before);
        cx.after_u = classify_at(ev.u, t_after);
        cx.after_v = classify_at(ev.v, t_after);
        cx.kind = classify_crossing(cx.before_u, cx.before_v, cx.after_u, cx.after_v);
        out.push_back(std::move(cx));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tracking graph

TrackingGraph tracking_graph(const CerfDiagram& diagram) {
    TrackingGraph g;
    g.nodes.reserve(diagram.arcs.size());
    for (std::size_t i = 0; i < diagram.arcs.size(); ++i) {
        TrackingGraph::Node n;
        n.arc = static_cast<int>(i);
        int index = -1, mult = 0;
        if (diagram.arcs[i].beta.single_nonzero(index, mult))
            n.index = index;
        else
            n.index = -1;
        g.nodes.push_back(n);
    }

    using EK = TrackingGraph::EdgeKind;
    for (std::size_t i = 0; i < diagram.crossings.size(); ++i) {
        const ClassifiedCrossing& cx = diagram.crossings[i];
        const ArcTransition& tr = diagram.transitions[i];
        const double t = cx.event.t;
        if (!cx.kind) {
            // degenerate transition: keep same-vertex lineage visible
            if (tr.closed_u >= 0 && tr.opened_u >= 0)
                g.edges.push_back({tr.closed_u, tr.opened_u, EK::Continuation, t});
            if (tr.closed_v >= 0 && tr.opened_v >= 0)
                g.edges.push_back({tr.closed_v, tr.opened_v, EK::Continuation, t});
            continue;
        }
        switch (*cx.kind) {
        case CrossingKind::CriticalRegularSwitch: {
            const bool u_was_critical = cx.before_u.critical();
            const int from = u_was_critical ? tr.closed_u : tr.closed_v;
            const int to = u_was_critical ? tr.opened_v : tr.opened_u;
            if (from >= 0 && to >= 0) g.edges.push_back({from, to, EK::Move, t});
            break;
        }
        case CrossingKind::IndexSwap:
            if (tr.closed_u >= 0 && tr.opened_v >= 0)
                g.edges.push_back({tr.closed_u, tr.opened_v, EK::Swap, t});
            if (tr.closed_v >= 0 && tr.opened_u >= 0)
                g.edges.push_back({tr.closed_v, tr.opened_u, EK::Swap, t});
            break;
        case CrossingKind::Birth:
            if (tr.opened_u >= 0) g.nodes[static_cast<std::size_t>(tr.opened_u)].born_by_birth = true;
            if (tr.opened_v >= 0) g.nodes[static_cast<std::size_t>(tr.opened_v)].born_by_birth = true;
            if (tr.opened_u >= 0 && tr.opened_v >= 0)
                g.edges.push_back({tr.opened_u, tr.opened_v, EK::Birth, t});
            break;
        case CrossingKind::Death:
            if (tr.closed_u >= 0) g.nodes[static_cast<std::size_t>(tr.closed_u)].died_by_death = true;
            if (tr.closed_v >= 0) g.nodes[static_cast<std::size_t>(tr.closed_v)].died_by_death = true;
            if (tr.closed_u >= 0 && tr.closed_v >= 0)
                g.edges.push_back({tr.closed_u, tr.closed_v, EK::Death, t});
            break;
        default:
            break; // no vertex movement for the remaining kinds
        }
    }
    return g;
}

std::vector<Track> maxima_tracks(const TrackingGraph& g, const CerfDiagram& diagram, int index_d) {
    const std::size_t n = g.nodes.size();
    std::vector<int> succ(n, -1), pred(n, -1);
    using EK = TrackingGraph::EdgeKind;
    for (const auto& e : g.edges) {
        if (e.kind != EK::Move && e.kind != EK::Swap && e.kind != EK::Continuation) continue;
        if (g.nodes[static_cast<std::size_t>(e.from)].index != index_d) continue;
        if (g.nodes[static_cast<std::size_t>(e.to)].index != index_d) continue;
        succ[static_cast<std::size_t>(e.from)] = e.to;
        pred[static_cast<std::size_t>(e.to)] = e.from;
    }

    std::vector<Track> tracks;
    for (std::size_t i = 0; i < n; ++i) {
        if (g.nodes[i].index != index_d) continue;
        if (pred[i] >= 0) continue; // not a chain head
        Track tk;
        int cur = static_cast<int>(i);
        while (cur >= 0) {
            tk.arcs.push_back(g.nodes[static_cast<std::size_t>(cur)].arc);
            cur = succ[static_cast<std::size_t>(cur)];
        }
        const auto& first = diagram.arcs[static_cast<std::size_t>(tk.arcs.front())];
        const auto& last = diagram.arcs[static_cast<std::size_t>(tk.arcs.back())];
        tk.birth = first.t1;
        tk.death = last.t2;
        tk.born_by_birth = g.nodes[static_cast<std::size_t>(tk.arcs.front())].born_by_birth;
        tk.died_by_death = g.nodes[static_cast<std::size_t>(tk.arcs.back())].died_by_death;
        tracks.push_back(std::move(tk));
    }
    std::sort(tracks.begin(), tracks.end(), [](const Track& a, const Track& b) {
        if (a.birth != b.birth) return a.birth < b.birth;
        return a.arcs.front() < b.arcs.front();
    });
    return tracks;
}

std::optional<std::vector<double>> track_position(const Track& track, const CerfDiagram& diagram,
                                                  const TimeVaryingField& field, double t) {
    const auto& grid = field.complex().grid();
    if (!grid) throw DataError("track positions need a grid-backed complex");
    for (int ai : track.arcs) {
        const CerfArc& arc = diagram.arcs[static_cast<std::size_t>(ai)];
        if (t < arc.t1 || t > arc.t2) continue;
        auto coords = grid->coords_of(arc.vertex);
        return std::vector<double>(coords.begin(), coords.end());
    }
    return std::nullopt;
}

std::vector<Track> seed_search(const TrackingGraph& g, const CerfDiagram& diagram,
                               const TimeVaryingField& field, std::span<const double> seed,
                               double radius, double t, bool after_mode,
                               const std::vector<Track>& tracks) {
    if (radius <= 0.0) throw ConfigError("seed_search: radius must be positive");
    const auto& grid = field.complex().grid();
    if (!grid) throw DataError("seed_search needs a grid-backed complex");
    if (seed.size() != grid->rank()) throw ConfigError("seed_search: seed rank mismatch");

    auto near_seed = [&](const std::vector<double>& p) {
        return grid->distance(p, seed) <= radius;
    };

    std::vector<char> selected(tracks.size(), 0);
    for (std::size_t i = 0; i < tracks.size(); ++i) {
        const Track& tk = tracks[i];
        if (tk.birth <= t && t <= tk.death) {
            auto p = track_position(tk, diagram, field, t);
            if (p && near_seed(*p)) selected[i] = 1;
        } else if (after_mode && tk.birth > t) {
            auto p = track_position(tk, diagram, field, tk.birth);
            if (p && near_seed(*p)) selected[i] = 1;
        }
    }

    // transitive closure over the tracking graph, both directions
    std::vector<std::vector<int>> fwd(g.nodes.size()), bwd(g.nodes.size());
    for (const auto& e : g.edges) {
        fwd[static_cast<std::size_t>(e.from)].push_back(e.to);
        bwd[static_cast<std::size_t>(e.to)].push_back(e.from);
    }
    // arc -> node id (identity mapping by construction)
    std::vector<char> reached(g.nodes.size(), 0);
    std::deque<int> queue;
    for (std::size_t i = 0; i < tracks.size(); ++i) {
        if (!selected[i]) continue;
        for (int a : tracks[i].arcs) {
            if (!reached[static_cast<std::size_t>(a)]) {
                reached[static_cast<std::size_t>(a)] = 1;
                queue.push_back(a);
            }
        }
    }
    while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        for (int nx : fwd[static_cast<std::size_t>(cur)])
            if (!reached[static_cast<std::size_t>(nx)]) {
                reached[static_cast<std::size_t>(nx)] = 1;
                queue.push_back(nx);
            }
        for (int nx : bwd[static_cast<std::size_t>(cur)])
            if (!reached[static_cast<std::size_t>(nx)]) {
                reached[static_cast<std::size_t>(nx)] = 1;
                queue.push_back(nx);
            }
    }

    std::vector<Track> result;
    for (std::size_t i = 0; i < tracks.size(); ++i) {
        bool any = selected[i] != 0;
        if (!any) {
            for (int a : tracks[i].arcs)
                if (reached[static_cast<std::size_t>(a)]) {
                    any = true;
                    break;
                }
        }
        // after-mode keeps late-born tracks; plain mode only reports
        // tracks already alive at the seed time
        if (any && !after_mode && tracks[i].birth > t) any = false;
        if (any) result.push_back(tracks[i]);
    }
    return result;
}

} // namespace plcerf
