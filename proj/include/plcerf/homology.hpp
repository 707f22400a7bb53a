#ifndef PLCERF_HOMOLOGY_HPP
#define PLCERF_HOMOLOGY_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "plcerf/mesh.hpp"
#include "plcerf/types.hpp"

namespace plcerf {

// Boundary matrix of one chain degree over a prime field. Rows index
// (k-1)-simplices, columns k-simplices.
class BoundaryMatrix {
  public:
    BoundaryMatrix(std::size_t rows, std::size_t cols, int prime)
        : rows_(rows), cols_(cols), p_(prime), a_(rows * cols, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    int prime() const { return p_; }

    std::uint8_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::uint8_t v) { a_[r * cols_ + c] = v; }

    // Rank by Gaussian elimination mod p (works on a copy).
    std::size_t rank() const;

    // Composition check: this(k) composed with next(k+1) vanishes mod p.
    bool composes_to_zero(const BoundaryMatrix& next) const;

  private:
    std::size_t rows_, cols_;
    int p_;
    std::vector<std::uint8_t> a_;
};

// Boundary matrices of a face-closed complex: entry k maps (k+1)-chains to
// k-chains; entry 0 is the augmentation row onto the empty simplex.
std::vector<BoundaryMatrix> boundary_matrices(const SubComplex& c, int prime = 2);

// Reduced Betti numbers packed one dimension up: entry i is the rank of
// reduced homology in dimension i-1, so the empty complex gives
// (1, 0, ..., 0). ambient_dim fixes the output length to ambient_dim + 1.
BettiVector reduced_betti(const SubComplex& c, int ambient_dim, int prime = 2);

// Alternating sum of simplex counts.
long long euler_characteristic(const SubComplex& c);
long long euler_characteristic(const SimplicialComplex& c);

// Counts of simplices per dimension, enumerating all faces of the
// maximal simplices (deduplicated).
std::vector<std::size_t> face_counts(const SimplicialComplex& c);

namespace detail {

// Reduced Betti numbers over F2 of the lower link of v, where "below" is
// any strict predicate on the neighbors of v. Fast path handles dim <= 3
// links with at most 64 simplices per dimension (every grid mesh);
// anything larger falls back to the dense generic route.
template <typename BelowPred>
BettiVector lower_link_betti_f2(const SimplicialComplex& c, VertexId v, BelowPred&& below);

// Dense fallback: builds the lower link on the given neighbor subset and
// runs the generic reduction.
BettiVector lower_link_betti_generic(const SimplicialComplex& c, VertexId v,
                                     const std::vector<VertexId>& lower_neighbors);

} // namespace detail

} // namespace plcerf

#include "plcerf/lowerlink_impl.hpp"

#endif
