#ifndef PLCERF_TVECC_HPP
#define PLCERF_TVECC_HPP

#include <optional>
#include <vector>

#include "plcerf/cerf.hpp"
#include "plcerf/field.hpp"
#include "plcerf/plmorse.hpp"

namespace plcerf {

// Local TV-ECC of one vertex: the weight curve (piecewise constant,
// changing only at the vertex's crossing events) gated by the threshold
// curve t -> f_t(v).
struct LocalTVECC {
    VertexId vertex;
    // weight w_j holds on [cuts[j], cuts[j+1]); cuts front/back are the
    // family endpoints.
    std::vector<double> cuts;
    std::vector<long long> weights;

    long long weight_at(double t) const;
    // eval(s, t) = weight_at(t) if f_t(v) <= s else 0.
    long long eval(double s, double t, const TimeVaryingField& field) const;
};

LocalTVECC local_tvecc(const TimeVaryingField& field, VertexId v,
                       const CerfDiagram* diagram = nullptr);

// TV-ECC surface E(s, t) as piecewise structure: within a time slab every
// live arc contributes a constant integer weight at a linearly moving
// threshold, and slab refinement keeps the threshold order fixed.
class StepSurface {
  public:
    struct Entry {
        VertexId vertex;
        long long weight;
        double c0, c1; // threshold(t) = c0 + c1 * t
    };
    struct Slab {
        double t0, t1;
        std::vector<Entry> entries; // sorted by threshold at slab midpoint
    };

    StepSurface() = default;
    StepSurface(std::vector<Slab> slabs, double t_begin, double t_end, long long chi);

    long long eval(double s, double t) const;

    const std::vector<Slab>& slabs() const { return slabs_; }
    double t_begin() const { return t_begin_; }
    double t_end() const { return t_end_; }
    // E(s, t) for s above every threshold; equals chi of the complex.
    long long chi() const { return chi_; }

    double min_threshold() const;
    double max_threshold() const;

  private:
    std::size_t slab_of(double t) const;

    std::vector<Slab> slabs_;
    double t_begin_ = 0.0, t_end_ = 1.0;
    long long chi_ = 0;
};

// Sum of the local surfaces over all vertices. Reuses a precomputed Cerf
// diagram when given.
StepSurface tvecc(const TimeVaryingField& field, const CerfDiagram* diagram = nullptr);

enum class QuadratureMode { Exact, Sampled };

struct Quadrature {
    QuadratureMode mode = QuadratureMode::Sampled;
    // Sampled mode: number of time nodes; 0 = auto (16 * (slabs_f + slabs_g)).
    std::size_t n_t = 0;
};

// Integral over time and filtration value of |E_f - E_g|. The fields must
// share the time interval. Without an explicit s_range the integral only
// exists when both surfaces have equal chi; otherwise a DataError is
// raised.
double distance(const StepSurface& f, const StepSurface& g, const Quadrature& quad = {},
                std::optional<std::pair<double, double>> s_range = std::nullopt);

double distance(const TimeVaryingField& f, const TimeVaryingField& g, const Quadrature& quad = {},
                std::optional<std::pair<double, double>> s_range = std::nullopt);

// Pairwise distances between sliding windows of one family, each window
// re-parameterized to [0, 1].
struct DistanceMatrix {
    std::size_t window = 0; // samples per window
    std::size_t shift = 0;  // samples between window starts
    std::size_t start = 0;  // first sample of window 0
    double sample_dt = 1.0; // time units per sample in the source field
    std::size_t n = 0;      // number of windows
    std::vector<double> entries; // row-major n*n, symmetric, zero diagonal

    double at(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
};

DistanceMatrix distance_matrix(const TimeVaryingField& field, std::size_t window,
                               std::size_t shift, std::size_t start = 0,
                               const Quadrature& quad = {}, int threads = 1,
                               std::optional<std::pair<double, double>> s_range = std::nullopt);

// Dominant repetition lag read off the distance matrix: the lag whose
// off-diagonal band has the smallest mean, restricted to lags where the
// windows no longer overlap. Flat band profiles report no period.
struct PeriodEstimate {
    bool found = false;
    double period_samples = 0.0; // lag * shift
    double period_time = 0.0;    // in the source field's time units
    std::vector<double> band;    // band[l] = mean |entry(i, i+l)|, band[0] = 0
};

PeriodEstimate estimate_period(const DistanceMatrix& m);

} // namespace plcerf

#endif
