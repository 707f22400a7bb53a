#include "plcerf/tvecc.hpp"

#include <algorithm>
#include <cmath>

#include "plcerf/parallel.hpp"

namespace plcerf {

// ---------------------------------------------------------------------------
// Local TV-ECC

long long LocalTVECC::weight_at(double t) const {
    if (cuts.empty()) return 0;
    auto it = std::upper_bound(cuts.begin(), cuts.end(), t);
    std::size_t j = static_cast<std::size_t>(it - cuts.begin());
    if (j == 0) return weights.front();
    if (j >= weights.size() + 1) return weights.back();
    return weights[j - 1];
}

long long LocalTVECC::eval(double s, double t, const TimeVaryingField& field) const {
    return field.value_at(vertex, t) <= s ? weight_at(t) : 0;
}

LocalTVECC local_tvecc(const TimeVaryingField& field, VertexId v, const CerfDiagram* diagram) {
    field.complex().check_vertex(v);
    CerfDiagram local;
    if (!diagram) {
        local = compute_cerf_diagram(field);
        diagram = &local;
    }

    std::vector<const CerfArc*> mine;
    for (const auto& arc : diagram->arcs)
        if (arc.vertex == v && arc.t2 > arc.t1) mine.push_back(&arc);
    std::sort(mine.begin(), mine.end(),
              [](const CerfArc* a, const CerfArc* b) { return a->t1 < b->t1; });

    LocalTVECC out;
    out.vertex = v;
    double cur = field.t_begin();
    out.cuts.push_back(cur);
    for (const CerfArc* arc : mine) {
        if (arc->t1 > cur) {
            out.weights.push_back(0);
            out.cuts.push_back(arc->t1);
        }
        out.weights.push_back(arc->beta.alternating_sum());
        out.cuts.push_back(arc->t2);
        cur = arc->t2;
    }
    if (cur < field.t_end()) {
        out.weights.push_back(0);
        out.cuts.push_back(field.t_end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// StepSurface

StepSurface::StepSurface(std::vector<Slab> slabs, double t_begin, double t_end, long long chi)
    : slabs_(std::move(slabs)), t_begin_(t_begin), t_end_(t_end), chi_(chi) {}

std::size_t StepSurface::slab_of(double t) const {
    // right-continuous: the slab starting at t wins; t_end maps to last
    std::size_t lo = 0, hi = slabs_.size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (slabs_[mid].t1 <= t)
            lo = mid + 1;
        else
            hi = mid;
    }
    return std::min(lo, slabs_.size() - 1);
}

long long StepSurface::eval(double s, double t) const {
    if (slabs_.empty()) return 0;
    const Slab& slab = slabs_[slab_of(t)];
    long long acc = 0;
    for (const Entry& e : slab.entries)
        if (e.c0 + e.c1 * t <= s) acc += e.weight;
    return acc;
}

double StepSurface::min_threshold() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& slab : slabs_)
        for (const auto& e : slab.entries)
            m = std::min({m, e.c0 + e.c1 * slab.t0, e.c0 + e.c1 * slab.t1});
    return m;
}

double StepSurface::max_threshold() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& slab : slabs_)
        for (const auto& e : slab.entries)
            m = std::max({m, e.c0 + e.c1 * slab.t0, e.c0 + e.c1 * slab.t1});
    return m;
}

StepSurface tvecc(const TimeVaryingField& field, const CerfDiagram* diagram) {
    CerfDiagram local;
    if (!diagram) {
        local = compute_cerf_diagram(field);
        diagram = &local;
    }

    // slab boundaries: sample times plus every arc endpoint
    std::vector<double> bounds(field.times());
    for (const auto& arc : diagram->arcs) {
        bounds.push_back(arc.t1);
        bounds.push_back(arc.t2);
    }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    // arcs sorted by start; sweep an active set across slabs
    std::vector<std::size_t> by_start(diagram->arcs.size());
    for (std::size_t i = 0; i < by_start.size(); ++i) by_start[i] = i;
    std::sort(by_start.begin(), by_start.end(), [&](std::size_t a, std::size_t b) {
        return diagram->arcs[a].t1 < diagram->arcs[b].t1;
    });

    std::vector<StepSurface::Slab> slabs;
    std::vector<std::size_t> active;
    std::size_t next_arc = 0;
    long long chi = 0;
    bool chi_set = false;

    for (std::size_t bi = 0; bi + 1 < bounds.size(); ++bi) {
        const double ta = bounds[bi], tb = bounds[bi + 1];
        while (next_arc < by_start.size() && diagram->arcs[by_start[next_arc]].t1 <= ta)
            active.push_back(by_start[next_arc++]);
        active.erase(std::remove_if(active.begin(), active.end(),
                                    [&](std::size_t ai) { return diagram->arcs[ai].t2 <= ta; }),
                     active.end());

        // threshold lines within the enclosing sample interval
        const double tm = 0.5 * (ta + tb);
        const std::size_t k = field.interval_of(tm);
        const double t0 = field.times()[k], t1 = field.times()[k + 1];

        std::vector<StepSurface::Entry> entries;
        long long wsum = 0;
        for (std::size_t ai : active) {
            const CerfArc& arc = diagram->arcs[ai];
            const long long w = arc.beta.alternating_sum();
            wsum += w;
            if (w == 0) continue;
            const double f0 = field.sample(arc.vertex, k);
            const double f1 = field.sample(arc.vertex, k + 1);
            const double c1 = (f1 - f0) / (t1 - t0);
            const double c0 = f0 - c1 * t0;
            entries.push_back({arc.vertex, w, c0, c1});
        }
        if (!chi_set && !active.empty()) {
            chi = wsum;
            chi_set = true;
        }

        // refine until threshold order is fixed inside every sub-slab
        std::vector<double> cuts{ta, tb};
        for (std::size_t i = 0; i < entries.size(); ++i) {
            for (std::size_t j = i + 1; j < entries.size(); ++j) {
                const double dc1 = entries[i].c1 - entries[j].c1;
                if (dc1 == 0.0) continue;
                const double tx = (entries[j].c0 - entries[i].c0) / dc1;
                if (tx > ta && tx < tb) cuts.push_back(tx);
            }
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        for (std::size_t ci = 0; ci + 1 < cuts.size(); ++ci) {
            StepSurface::Slab slab;
            slab.t0 = cuts[ci];
            slab.t1 = cuts[ci + 1];
            slab.entries = entries;
            const double mid = 0.5 * (slab.t0 + slab.t1);
            std::sort(slab.entries.begin(), slab.entries.end(),
                      [&](const StepSurface::Entry& a, const StepSurface::Entry& b) {
                          const double sa = a.c0 + a.c1 * mid, sb = b.c0 + b.c1 * mid;
                          if (sa != sb) return sa < sb;
                          return a.vertex < b.vertex;
                      });
            slabs.push_back(std::move(slab));
        }
    }

    return StepSurface(std::move(slabs), field.t_begin(), field.t_end(), chi);
}

// ---------------------------------------------------------------------------
// Distance

namespace {

struct SignedEntry {
    double threshold;
    long long weight;
};

// Integral over s of |sum of weights at thresholds <= s|, optionally
// clamped to [lo, hi]. Entries need not be sorted.
double integrate_abs_levels(std::vector<SignedEntry>& es, long long tail_level,
                            const std::optional<std::pair<double, double>>& s_range) {
    std::sort(es.begin(), es.end(), [](const SignedEntry& a, const SignedEntry& b) {
        return a.threshold < b.threshold;
    });
    double acc = 0.0;
    long long cum = 0;
    if (!s_range) {
        // difference vanishes outside the hull of the thresholds
        (void)tail_level;
        double prev = es.empty() ? 0.0 : es.front().threshold;
        for (const auto& e : es) {
            if (e.threshold > prev) {
                acc += std::abs(static_cast<double>(cum)) * (e.threshold - prev);
                prev = e.threshold;
            }
            cum += e.weight;
        }
        return acc;
    }
    const auto [lo, hi] = *s_range;
    double prev = lo;
    for (const auto& e : es) {
        if (e.threshold <= lo) {
            cum += e.weight;
            continue;
        }
        if (e.threshold >= hi) break;
        if (e.threshold > prev) {
            acc += std::abs(static_cast<double>(cum)) * (e.threshold - prev);
            prev = e.threshold;
        }
        cum += e.weight;
    }
    if (hi > prev) {
        // cum here includes everything below hi; beyond the last
        // threshold the level settles at tail_level
        long long level = cum;
        acc += std::abs(static_cast<double>(level)) * (hi - prev);
    }
    return acc;
}

// entries of one surface at time t (slab located by binary search)
void gather_entries(const StepSurface& surf, double t, long long sign,
                    std::vector<SignedEntry>& out) {
    const auto& slabs = surf.slabs();
    if (slabs.empty()) return;
    std::size_t lo = 0, hi = slabs.size();
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (slabs[mid].t1 <= t)
            lo = mid + 1;
        else
            hi = mid;
    }
    const auto& slab = slabs[std::min(lo, slabs.size() - 1)];
    for (const auto& e : slab.entries)
        out.push_back({e.c0 + e.c1 * t, sign * e.weight});
}

double integrand_at(const StepSurface& f, const StepSurface& g, double t,
                    const std::optional<std::pair<double, double>>& s_range) {
    std::vector<SignedEntry> es;
    gather_entries(f, t, +1, es);
    gather_entries(g, t, -1, es);
    return integrate_abs_levels(es, f.chi() - g.chi(), s_range);
}

} // namespace

double distance(const StepSurface& f, const StepSurface& g, const Quadrature& quad,
                std::optional<std::pair<double, double>> s_range) {
    if (std::abs(f.t_begin() - g.t_begin()) > 1e-12 || std::abs(f.t_end() - g.t_end()) > 1e-12)
        throw DataError("distance: surfaces live on different time intervals");
    if (!s_range && f.chi() != g.chi())
        throw DataError("distance: Euler characteristics differ (" + std::to_string(f.chi()) +
                        " vs " + std::to_string(g.chi()) +
                        "); the s-integral diverges without an explicit s-range");

    if (quad.mode == QuadratureMode::Sampled) {
        std::size_t n = quad.n_t;
        if (n == 0) n = 16 * (f.slabs().size() + g.slabs().size());
        n = std::max<std::size_t>(n, 2);
        const double a = f.t_begin(), b = f.t_end();
        double acc = 0.0;
        double prev = integrand_at(f, g, a, s_range);
        for (std::size_t i = 1; i < n; ++i) {
            const double t = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
            const double cur = integrand_at(f, g, t, s_range);
            acc += 0.5 * (prev + cur) * ((b - a) / static_cast<double>(n - 1));
            prev = cur;
        }
        return acc;
    }

    // Exact mode: split time into slabs with fixed merged threshold order;
    // the inner integral is linear in t on each, so the midpoint rule is
    // exact.
    std::vector<double> bounds;
    for (const auto& s : f.slabs()) {
        bounds.push_back(s.t0);
        bounds.push_back(s.t1);
    }
    for (const auto& s : g.slabs()) {
        bounds.push_back(s.t0);
        bounds.push_back(s.t1);
    }
    std::sort(bounds.begin(), bounds.end());
    bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

    double acc = 0.0;
    std::vector<SignedEntry> es;
    for (std::size_t bi = 0; bi + 1 < bounds.size(); ++bi) {
        const double ta = bounds[bi], tb = bounds[bi + 1];
        const double tm = 0.5 * (ta + tb);

        // cross-surface threshold crossings subdivide the coarse slab
        std::vector<StepSurface::Entry> lines;
        {
            const auto collect = [&](const StepSurface& s, long long sign) {
                const auto& slabs = s.slabs();
                std::size_t lo = 0, hi = slabs.size();
                while (lo < hi) {
                    const std::size_t mid = (lo + hi) / 2;
                    if (slabs[mid].t1 <= tm)
                        lo = mid + 1;
                    else
                        hi = mid;
                }
                if (slabs.empty()) return;
                const auto& slab = slabs[std::min(lo, slabs.size() - 1)];
                for (auto e : slab.entries) {
                    e.weight *= sign;
                    lines.push_back(e);
                }
            };
            collect(f, +1);
            collect(g, -1);
        }

        std::vector<double> cuts{ta, tb};
        for (std::size_t i = 0; i < lines.size(); ++i) {
            for (std::size_t j = i + 1; j < lines.size(); ++j) {
                const double dc1 = lines[i].c1 - lines[j].c1;
                if (dc1 == 0.0) continue;
                const double tx = (lines[j].c0 - lines[i].c0) / dc1;
                if (tx > ta && tx < tb) cuts.push_back(tx);
            }
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        for (std::size_t ci = 0; ci + 1 < cuts.size(); ++ci) {
            const double mid = 0.5 * (cuts[ci] + cuts[ci + 1]);
            es.clear();
            for (const auto& ln : lines) es.push_back({ln.c0 + ln.c1 * mid, ln.weight});
            const double integrand = integrate_abs_levels(es, f.chi() - g.chi(), s_range);
            acc += integrand * (cuts[ci + 1] - cuts[ci]);
        }
    }
    return acc;
}

double distance(const TimeVaryingField& f, const TimeVaryingField& g, const Quadrature& quad,
                std::optional<std::pair<double, double>> s_range) {
    return distance(tvecc(f), tvecc(g), quad, s_range);
}

// ---------------------------------------------------------------------------
// Distance matrix and period estimation

DistanceMatrix distance_matrix(const TimeVaryingField& field, std::size_t window,
                               std::size_t shift, std::size_t start, const Quadrature& quad,
                               int threads, std::optional<std::pair<double, double>> s_range) {
    const std::size_t T = field.num_times();
    if (window < 2 || window > T) throw ConfigError("distance_matrix: window out of range");
    if (shift < 1) throw ConfigError("distance_matrix: shift must be >= 1");
    if (start + window > T) throw ConfigError("distance_matrix: start window exceeds data");

    std::size_t n = 0;
    while (start + n * shift + window <= T) ++n;

    DistanceMatrix m;
    m.window = window;
    m.shift = shift;
    m.start = start;
    m.sample_dt = field.dt();
    m.n = n;
    m.entries.assign(n * n, 0.0);

    // surfaces per window (each window re-parameterized to [0,1])
    std::vector<StepSurface> surfaces(n);
    parallel_items(n, threads, [&](std::size_t i) {
        const TimeVaryingField w = field.window(start + i * shift, window);
        surfaces[i] = tvecc(w);
    });

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    parallel_items(pairs.size(), threads, [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        const double d = distance(surfaces[i], surfaces[j], quad, s_range);
        m.entries[i * n + j] = d;
        m.entries[j * n + i] = d;
    });
    return m;
}

PeriodEstimate estimate_period(const DistanceMatrix& m) {
    PeriodEstimate out;
    const std::size_t n = m.n;
    if (n < 4) throw ConfigError("estimate_period: matrix must be at least 4x4");

    out.band.assign(n, 0.0);
    for (std::size_t lag = 1; lag < n; ++lag) {
        double acc = 0.0;
        for (std::size_t i = 0; i + lag < n; ++i) acc += std::abs(m.at(i, i + lag));
        out.band[lag] = acc / static_cast<double>(n - lag);
    }

    // Only lags whose windows no longer overlap can witness a repetition;
    // shorter lags are trivially similar. Lags with fewer than 2 entries
    // are too noisy to trust.
    std::size_t lag_min = 1;
    while (lag_min * m.shift < m.window) ++lag_min;
    const std::size_t lag_max = n >= 2 ? n - 2 : 0;
    if (lag_min > lag_max) return out; // not enough windows

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t lag = lag_min; lag <= lag_max; ++lag) {
        lo = std::min(lo, out.band[lag]);
        hi = std::max(hi, out.band[lag]);
    }
    if (hi - lo <= 1e-9 * std::max(hi, 1e-30) + 1e-12) return out; // flat profile

    for (std::size_t lag = lag_min; lag <= lag_max; ++lag) {
        if (out.band[lag] <= lo * (1.0 + 1e-9) + 1e-12) {
            out.found = true;
            out.period_samples = static_cast<double>(lag * m.shift);
            out.period_time = out.period_samples * m.sample_dt;
            break;
        }
    }
    return out;
}

} // namespace plcerf
