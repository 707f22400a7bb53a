#ifndef PLCERF_PLMORSE_HPP
#define PLCERF_PLMORSE_HPP

#include <string>
#include <vector>

#include "plcerf/homology.hpp"
#include "plcerf/mesh.hpp"
#include "plcerf/types.hpp"

namespace plcerf {

// Classification of a vertex by the homology of its lower link.
struct VertexClass {
    enum class Kind { Regular, Critical, DegenerateCritical };

    Kind kind = Kind::Regular;
    int index = -1;       // critical index, valid when kind == Critical
    int multiplicity = 0; // beta entry at that index
    BettiVector betti;

    bool regular() const { return kind == Kind::Regular; }
    bool critical() const { return kind != Kind::Regular; }
    // Non-degenerate in the Morse sense: one unit entry.
    bool simple() const { return kind == Kind::Critical && multiplicity == 1; }

    static VertexClass from_betti(const BettiVector& beta);

    bool operator==(const VertexClass& o) const { return betti == o.betti; }
    bool operator!=(const VertexClass& o) const { return !(*this == o); }

    std::string to_string() const;
};

// Homological index of v: reduced Betti vector of its lower link.
BettiVector homological_index(const SimplicialComplex& c, const Valuation& val, VertexId v);

VertexClass classify_vertex(const SimplicialComplex& c, const Valuation& val, VertexId v);

// All non-regular vertices with their classes, ordered by vertex id.
std::vector<std::pair<VertexId, VertexClass>> critical_points(const SimplicialComplex& c,
                                                              const Valuation& val,
                                                              int threads = 1);

// True when every critical point is non-degenerate.
bool is_pl_morse(const SimplicialComplex& c, const Valuation& val, int threads = 1);

// Integer-valued step function of a filtration value s. The value at a
// breakpoint includes its jump: eval(s) counts contributions with
// threshold <= s.
class StepFunction {
  public:
    StepFunction() = default;
    // deltas at strictly increasing breakpoints, base value before all of
    // them (normally 0).
    StepFunction(std::vector<double> breakpoints, std::vector<long long> deltas,
                 long long base = 0);

    long long operator()(double s) const;

    std::size_t breakpoint_count() const { return breaks_.size(); }
    const std::vector<double>& breakpoints() const { return breaks_; }
    // values_[j] is the value on [breaks_[j-1], breaks_[j]); values_[0]
    // applies below every breakpoint.
    const std::vector<long long>& levels() const { return levels_; }

  private:
    std::vector<double> breaks_;
    std::vector<long long> levels_;
};

// Euler characteristic curve of the lower-star filtration of val:
// ecc(s) = chi of the sublevel complex at s. Computed by direct face
// enumeration (each simplex enters at its tie-broken maximal vertex), so
// it is independent of the homology machinery.
StepFunction ecc_lower_star(const SimplicialComplex& c, const Valuation& val);

} // namespace plcerf

#endif
