#ifndef PLCERF_FIELD_HPP
#define PLCERF_FIELD_HPP

#include <memory>
#include <span>
#include <vector>

#include "plcerf/mesh.hpp"
#include "plcerf/types.hpp"

namespace plcerf {

// One-parameter PL family: per-vertex samples at increasing times,
// linearly interpolated in between. Samples are stored as 32-bit floats,
// matching the raw interchange format; arithmetic happens in double.
class TimeVaryingField {
  public:
    TimeVaryingField(std::shared_ptr<const SimplicialComplex> complex, std::vector<double> times,
                     std::vector<float> values_time_major);

    // Uniform times on [0, 1].
    static TimeVaryingField uniform(std::shared_ptr<const SimplicialComplex> complex,
                                    std::size_t num_times, std::vector<float> values_time_major);

    const SimplicialComplex& complex() const { return *complex_; }
    std::shared_ptr<const SimplicialComplex> complex_ptr() const { return complex_; }

    std::size_t num_times() const { return times_.size(); }
    const std::vector<double>& times() const { return times_; }
    double t_begin() const { return times_.front(); }
    double t_end() const { return times_.back(); }

    double sample(VertexId v, std::size_t k) const {
        return values_[k * complex_->vertex_count() + v];
    }
    std::span<const float> time_slice(std::size_t k) const {
        return {values_.data() + k * complex_->vertex_count(), complex_->vertex_count()};
    }
    const std::vector<float>& raw_values() const { return values_; }

    // Linear interpolation; clamps t to [t_begin, t_end].
    double value_at(VertexId v, double t) const;

    // Index k with times[k] <= t < times[k+1] (last interval for t_end).
    std::size_t interval_of(double t) const;

    Valuation valuation_at(double t) const;

    // Vertex curve of v: the sample polyline (t_k, f_k(v)).
    std::vector<std::pair<double, double>> vertex_curve(VertexId v) const;

    double min_value() const;
    double max_value() const;

    // Sub-family on sample window [first, first+count), re-parameterized
    // to uniform times on [0, 1].
    TimeVaryingField window(std::size_t first, std::size_t count) const;

    // Sample-time spacing of the original data (sidecar dt), if uniform.
    double dt() const;

  private:
    std::shared_ptr<const SimplicialComplex> complex_;
    std::vector<double> times_;
    std::vector<float> values_; // time-major: values_[k*V + v]
};

enum class CrossingScope { LinkAdjacentOnly, AllPairs };

// A degree-2 intersection of the vertex curves of u and v (u < v): the
// tie-broken order of the pair flips at time t.
struct RawCrossing {
    double t;
    VertexId u, v;
    bool adjacent;

    bool operator==(const RawCrossing&) const = default;
};

// All order flips of candidate pairs, sorted by (t, u, v). A pair crosses
// inside a sample interval when the tie-broken sign of f(u) - f(v)
// differs at its endpoints; the crossing time is the linear zero of the
// difference, which lands on the sample time when the values tie there.
std::vector<RawCrossing> detect_crossings(const TimeVaryingField& field, CrossingScope scope,
                                          int threads = 1);

// Orders simultaneous events lexicographically by (t, u, v) so that they
// are processed as if separated by infinitesimals. Count-preserving.
std::vector<RawCrossing> enforce_genericity(std::vector<RawCrossing> events);

// Moving-center Gaussian sources for synthetic fields.
struct GaussianPath {
    enum class Kind { Static, Line, Orbit };
    Kind kind = Kind::Static;
    std::vector<double> a;   // Static: position; Line: start; Orbit: center
    std::vector<double> b;   // Line: end
    double radius = 0.0;     // Orbit
    double period_samples = 0.0; // Orbit: samples per revolution, sign = direction
    double phase = 0.0;      // Orbit: initial angle (radians)
    double amplitude = 1.0;
    double sigma = 0.0;      // per-source width; 0 = use global sigma

    // Center position at sample coordinate k (possibly fractional).
    std::vector<double> center_at(double k) const;
};

// f_t(v) = sum_j a_j exp(-dist(pos(v), c_j(t))^2 / (2 sigma^2)) sampled at
// num_times uniform times; distances wrap on periodic axes.
TimeVaryingField generate_gaussians(const GridSpec& spec, const std::vector<GaussianPath>& paths,
                                    double sigma, std::size_t num_times);

} // namespace plcerf

#endif
