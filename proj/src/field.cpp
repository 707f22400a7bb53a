#include "plcerf/field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "plcerf/parallel.hpp"

namespace plcerf {

TimeVaryingField::TimeVaryingField(std::shared_ptr<const SimplicialComplex> complex,
                                   std::vector<double> times,
                                   std::vector<float> values_time_major)
    : complex_(std::move(complex)), times_(std::move(times)), values_(std::move(values_time_major)) {
    if (!complex_) throw DataError("field: null complex");
    if (times_.size() < 2) throw DataError("field: needs at least 2 time samples");
    for (std::size_t k = 1; k < times_.size(); ++k)
        if (!(times_[k - 1] < times_[k])) throw DataError("field: times must be increasing");
    if (values_.size() != times_.size() * complex_->vertex_count())
        throw DataError("field: value count != V*T");
    for (float x : values_)
        if (!std::isfinite(x)) throw DataError("field: non-finite sample");
}

TimeVaryingField TimeVaryingField::uniform(std::shared_ptr<const SimplicialComplex> complex,
                                           std::size_t num_times,
                                           std::vector<float> values_time_major) {
    // same affine construction the raw loader uses, so a save/load cycle
    // reproduces the sample times bitwise
    const double dt = num_times > 1 ? 1.0 / static_cast<double>(num_times - 1) : 1.0;
    std::vector<double> times(num_times);
    for (std::size_t k = 0; k < num_times; ++k) times[k] = dt * static_cast<double>(k);
    return TimeVaryingField(std::move(complex), std::move(times), std::move(values_time_major));
}

std::size_t TimeVaryingField::interval_of(double t) const {
    const auto it = std::upper_bound(times_.begin(), times_.end(), t);
    std::size_t k = static_cast<std::size_t>(it - times_.begin());
    if (k == 0) return 0;
    if (k >= times_.size()) return times_.size() - 2;
    return k - 1;
}

double TimeVaryingField::value_at(VertexId v, double t) const {
    if (t <= times_.front()) return sample(v, 0);
    if (t >= times_.back()) return sample(v, times_.size() - 1);
    const std::size_t k = interval_of(t);
    const double t0 = times_[k], t1 = times_[k + 1];
    const double f0 = sample(v, k), f1 = sample(v, k + 1);
    return f0 + (f1 - f0) * ((t - t0) / (t1 - t0));
}

Valuation TimeVaryingField::valuation_at(double t) const {
    std::vector<double> vals(complex_->vertex_count());
    if (t <= times_.front() || t >= times_.back() ||
        std::binary_search(times_.begin(), times_.end(), t)) {
        std::size_t k;
        if (t <= times_.front())
            k = 0;
        else if (t >= times_.back())
            k = times_.size() - 1;
        else
            k = static_cast<std::size_t>(
                std::lower_bound(times_.begin(), times_.end(), t) - times_.begin());
        auto slice = time_slice(k);
        for (VertexId v = 0; v < complex_->vertex_count(); ++v) vals[v] = slice[v];
        return Valuation(std::move(vals));
    }
    const std::size_t k = interval_of(t);
    const double t0 = times_[k], t1 = times_[k + 1];
    const double w = (t - t0) / (t1 - t0);
    auto s0 = time_slice(k), s1 = time_slice(k + 1);
    for (VertexId v = 0; v < complex_->vertex_count(); ++v)
        vals[v] = static_cast<double>(s0[v]) + (static_cast<double>(s1[v]) - s0[v]) * w;
    return Valuation(std::move(vals));
}

std::vector<std::pair<double, double>> TimeVaryingField::vertex_curve(VertexId v) const {
    std::vector<std::pair<double, double>> curve(times_.size());
    for (std::size_t k = 0; k < times_.size(); ++k) curve[k] = {times_[k], sample(v, k)};
    return curve;
}

double TimeVaryingField::min_value() const {
    double m = std::numeric_limits<double>::infinity();
    for (float x : values_) m = std::min(m, static_cast<double>(x));
    return m;
}

double TimeVaryingField::max_value() const {
    double m = -std::numeric_limits<double>::infinity();
    for (float x : values_) m = std::max(m, static_cast<double>(x));
    return m;
}

TimeVaryingField TimeVaryingField::window(std::size_t first, std::size_t count) const {
    if (count < 2 || first + count > times_.size())
        throw ConfigError("field window out of range");
    const std::size_t V = complex_->vertex_count();
    std::vector<float> vals(count * V);
    std::copy(values_.begin() + static_cast<std::ptrdiff_t>(first * V),
              values_.begin() + static_cast<std::ptrdiff_t>((first + count) * V), vals.begin());
    return uniform(complex_, count, std::move(vals));
}

double TimeVaryingField::dt() const {
    return times_.size() > 1 ? times_[1] - times_[0] : 0.0;
}

// ---------------------------------------------------------------------------
// Crossing detection

namespace {

// Tie-broken sign of f(u) - f(v) with u < v: ties resolve to "u below".
inline int order_sign(double du_minus_dv, VertexId u, VertexId v) {
    if (du_minus_dv > 0) return 1;
    if (du_minus_dv < 0) return -1;
    return u < v ? -1 : 1;
}

void pair_crossings(const TimeVaryingField& field, VertexId u, VertexId v, bool adjacent,
                    std::vector<RawCrossing>& out) {
    const auto& times = field.times();
    const std::size_t T = times.size();
    double du = field.sample(u, 0), dv = field.sample(v, 0);
    double d_prev = du - dv;
    int s_prev = order_sign(d_prev, u, v);
    for (std::size_t k = 1; k < T; ++k) {
        const double d_cur = field.sample(u, k) - field.sample(v, k);
        const int s_cur = order_sign(d_cur, u, v);
        if (s_cur != s_prev) {
            double t;
            if (d_prev == 0.0) {
                t = times[k - 1];
            } else if (d_cur == 0.0) {
                t = times[k];
            } else {
                const double frac = d_prev / (d_prev - d_cur);
                t = times[k - 1] + (times[k] - times[k - 1]) * frac;
                t = std::clamp(t, times[k - 1], times[k]);
            }
            out.push_back({t, u, v, adjacent});
        }
        d_prev = d_cur;
        s_prev = s_cur;
    }
}

} // namespace

std::vector<RawCrossing> detect_crossings(const TimeVaryingField& field, CrossingScope scope,
                                          int threads) {
    const SimplicialComplex& c = field.complex();
    std::vector<RawCrossing> events;

    if (scope == CrossingScope::LinkAdjacentOnly) {
        const std::size_t ne = c.edge_count();
        std::vector<std::vector<RawCrossing>> partial(
            static_cast<std::size_t>(resolve_threads(threads)));
        parallel_chunks(ne, threads, [&](std::size_t b, std::size_t e, int tid) {
            auto& out = partial[static_cast<std::size_t>(tid)];
            for (std::size_t i = b; i < e; ++i) {
                const auto [u, v] = c.edge(i);
                pair_crossings(field, u, v, true, out);
            }
        });
        for (auto& p : partial)
            events.insert(events.end(), p.begin(), p.end());
    } else {
        for (VertexId u = 0; u + 1 < c.vertex_count(); ++u)
            for (VertexId v = u + 1; v < c.vertex_count(); ++v)
                pair_crossings(field, u, v, c.adjacent(u, v), events);
    }

    std::sort(events.begin(), events.end(), [](const RawCrossing& a, const RawCrossing& b) {
        if (a.t != b.t) return a.t < b.t;
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
    });
    return events;
}

std::vector<RawCrossing> enforce_genericity(std::vector<RawCrossing> events) {
    std::stable_sort(events.begin(), events.end(),
                     [](const RawCrossing& a, const RawCrossing& b) {
                         if (a.t != b.t) return a.t < b.t;
                         if (a.u != b.u) return a.u < b.u;
                         return a.v < b.v;
                     });
    return events;
}

// ---------------------------------------------------------------------------
// Synthetic Gaussians

std::vector<double> GaussianPath::center_at(double k) const {
    switch (kind) {
    case Kind::Static:
        return a;
    case Kind::Line: {
        std::vector<double> c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + (b[i] - a[i]) * k;
        return c;
    }
    case Kind::Orbit: {
        const double angle = phase + 2.0 * M_PI * k / period_samples;
        std::vector<double> c = a;
        c[0] += radius * std::cos(angle);
        if (c.size() > 1) c[1] += radius * std::sin(angle);
        return c;
    }
    }
    return a;
}

TimeVaryingField generate_gaussians(const GridSpec& spec, const std::vector<GaussianPath>& paths,
                                    double sigma, std::size_t num_times) {
    if (sigma <= 0.0) throw ConfigError("generate_gaussians: sigma must be positive");
    for (const auto& p : paths) {
        if (p.a.size() != spec.rank()) throw ConfigError("gaussian center rank mismatch");
        if (p.kind == GaussianPath::Kind::Line && p.b.size() != spec.rank())
            throw ConfigError("gaussian line endpoint rank mismatch");
        if (p.kind == GaussianPath::Kind::Orbit && p.period_samples == 0.0)
            throw ConfigError("gaussian orbit needs a non-zero period");
        if (p.sigma < 0.0) throw ConfigError("gaussian sigma must be positive");
    }
    if (num_times < 2) throw ConfigError("generate_gaussians: need at least 2 time samples");

    std::shared_ptr<const SimplicialComplex> complex;
    if (spec.rank() == 2)
        complex = std::make_shared<SimplicialComplex>(freudenthal_2d(spec));
    else if (spec.rank() == 3)
        complex = std::make_shared<SimplicialComplex>(freudenthal_3d(spec));
    else
        throw ConfigError("generate_gaussians: grid must be 2D or 3D");

    const VertexId V = complex->vertex_count();
    std::vector<float> values(num_times * V);

    // vertex positions once
    std::vector<double> pos(static_cast<std::size_t>(V) * spec.rank());
    for (VertexId v = 0; v < V; ++v) {
        auto coords = spec.coords_of(v);
        for (std::size_t axis = 0; axis < spec.rank(); ++axis)
            pos[v * spec.rank() + axis] = static_cast<double>(coords[axis]);
    }

    for (std::size_t k = 0; k < num_times; ++k) {
        // trajectory parameter: fraction of the sampled span, in "sample
        // index" coordinates for orbit periods
        const double ks = static_cast<double>(k);
        const double frac = static_cast<double>(k) / static_cast<double>(num_times - 1);
        std::vector<std::vector<double>> centers;
        centers.reserve(paths.size());
        for (const auto& p : paths)
            centers.push_back(p.kind == GaussianPath::Kind::Line ? p.center_at(frac)
                                                                 : p.center_at(ks));
        for (VertexId v = 0; v < V; ++v) {
            double f = 0.0;
            std::span<const double> pv{pos.data() + v * spec.rank(), spec.rank()};
            for (std::size_t j = 0; j < paths.size(); ++j) {
                const double s = paths[j].sigma > 0.0 ? paths[j].sigma : sigma;
                const double dist = spec.distance(pv, centers[j]);
                f += paths[j].amplitude * std::exp(-dist * dist / (2.0 * s * s));
            }
            values[k * V + v] = static_cast<float>(f);
        }
    }
    return TimeVaryingField::uniform(std::move(complex), num_times, std::move(values));
}

} // namespace plcerf
