#include "plcerf/homology.hpp"

#include <algorithm>
#include <numeric>

namespace plcerf {

// ---------------------------------------------------------------------------
// BoundaryMatrix

std::size_t BoundaryMatrix::rank() const {
    std::vector<std::uint8_t> m = a_;
    const int p = p_;
    std::size_t rank = 0;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        std::size_t pivot = row;
        while (pivot < rows_ && m[pivot * cols_ + col] == 0) ++pivot;
        if (pivot == rows_) continue;
        if (pivot != row) {
            for (std::size_t j = col; j < cols_; ++j)
                std::swap(m[row * cols_ + j], m[pivot * cols_ + j]);
        }
        // normalize pivot to 1 (p is prime, entry != 0)
        const int inv = [&] {
            const int a = m[row * cols_ + col];
            for (int x = 1; x < p; ++x)
                if ((a * x) % p == 1) return x;
            return 1;
        }();
        for (std::size_t j = col; j < cols_; ++j)
            m[row * cols_ + j] = static_cast<std::uint8_t>((m[row * cols_ + j] * inv) % p);
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == row) continue;
            const int f = m[r * cols_ + col];
            if (!f) continue;
            for (std::size_t j = col; j < cols_; ++j) {
                int val = m[r * cols_ + j] - f * m[row * cols_ + j];
                val %= p;
                if (val < 0) val += p;
                m[r * cols_ + j] = static_cast<std::uint8_t>(val);
            }
        }
        ++row;
        ++rank;
    }
    return rank;
}

bool BoundaryMatrix::composes_to_zero(const BoundaryMatrix& next) const {
    if (cols_ != next.rows_) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < next.cols_; ++j) {
            int acc = 0;
            for (std::size_t k = 0; k < cols_; ++k) acc += at(i, k) * next.at(k, j);
            if (acc % p_ != 0) return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------

namespace {

std::size_t find_simplex(const SubComplex& c, int dim, std::span<const VertexId> key) {
    // binary search over the sorted flat storage
    std::size_t lo = 0, hi = c.count(dim);
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        auto rec = c.simplex(dim, mid);
        if (std::lexicographical_compare(rec.begin(), rec.end(), key.begin(), key.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

} // namespace

std::vector<BoundaryMatrix> boundary_matrices(const SubComplex& c, int prime) {
    std::vector<BoundaryMatrix> out;
    const int top = c.max_dim();
    if (top < 0) return out;
    if (!c.is_face_closed()) throw DataError("boundary_matrices: complex is not face-closed");

    // augmentation: one row (empty simplex), one column per vertex
    BoundaryMatrix aug(1, c.count(0), prime);
    for (std::size_t j = 0; j < c.count(0); ++j) aug.set(0, j, 1);
    out.push_back(std::move(aug));

    for (int k = 1; k <= top; ++k) {
        BoundaryMatrix d(c.count(k - 1), c.count(k), prime);
        std::vector<VertexId> face(static_cast<std::size_t>(k));
        for (std::size_t j = 0; j < c.count(k); ++j) {
            auto s = c.simplex(k, j);
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                std::size_t w = 0;
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (i != drop) face[w++] = s[i];
                const std::size_t row = find_simplex(c, k - 1, face);
                // sign (-1)^drop reduced mod p
                const int val = (drop % 2 == 0) ? 1 : prime - 1;
                d.set(row, j, static_cast<std::uint8_t>(val));
            }
        }
        out.push_back(std::move(d));
    }
    return out;
}

BettiVector reduced_betti(const SubComplex& c, int ambient_dim, int prime) {
    if (ambient_dim < 0 || ambient_dim > kMaxDim)
        throw DataError("reduced_betti: unsupported ambient dimension");
    BettiVector beta(ambient_dim + 1);
    const int top = c.max_dim();
    if (top < 0) {
        beta[0] = 1; // reduced homology of the empty complex
        return beta;
    }
    auto mats = boundary_matrices(c, prime);
    std::vector<std::size_t> ranks(static_cast<std::size_t>(top) + 2, 0);
    for (int k = 0; k <= top; ++k) ranks[static_cast<std::size_t>(k)] = mats[static_cast<std::size_t>(k)].rank();

    beta[0] = static_cast<int>(1 - ranks[0]); // 0 for non-empty input
    for (int i = 1; i <= ambient_dim; ++i) {
        const int k = i - 1; // homology dimension
        const long long nk = (k <= top) ? static_cast<long long>(c.count(k)) : 0;
        const long long rk = (k <= top) ? static_cast<long long>(ranks[static_cast<std::size_t>(k)]) : 0;
        const long long rk1 = (k + 1 <= top) ? static_cast<long long>(ranks[static_cast<std::size_t>(k) + 1]) : 0;
        beta[i] = static_cast<int>(nk - rk - rk1);
    }
    return beta;
}

long long euler_characteristic(const SubComplex& c) {
    long long chi = 0;
    for (int k = 0; k <= c.max_dim(); ++k)
        chi += (k % 2 == 0) ? static_cast<long long>(c.count(k))
                            : -static_cast<long long>(c.count(k));
    return chi;
}

std::vector<std::size_t> face_counts(const SimplicialComplex& c) {
    const int d = c.dim();
    std::vector<std::size_t> counts(static_cast<std::size_t>(d) + 1, 0);
    counts[0] = c.vertex_count();
    if (d >= 1) counts[1] = c.edge_count();

    // higher faces: enumerate per dimension with sort+unique
    for (int k = 2; k <= d; ++k) {
        const std::size_t stride = static_cast<std::size_t>(k + 1);
        std::vector<VertexId> flat;
        std::vector<VertexId> face(stride);
        const std::size_t cell_stride = static_cast<std::size_t>(d + 1);
        for (std::size_t ci = 0; ci < c.cell_count(); ++ci) {
            auto cell = c.cell(ci);
            // all (k+1)-subsets of the cell
            const unsigned full = (1u << cell_stride) - 1u;
            for (unsigned mask = 1; mask <= full; ++mask) {
                if (static_cast<std::size_t>(__builtin_popcount(mask)) != stride) continue;
                std::size_t w = 0;
                for (std::size_t i = 0; i < cell_stride; ++i)
                    if (mask & (1u << i)) face[w++] = cell[i];
                flat.insert(flat.end(), face.begin(), face.end());
            }
        }
        // sort records
        std::vector<std::size_t> order(flat.size() / stride);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            const VertexId* pa = flat.data() + a * stride;
            const VertexId* pb = flat.data() + b * stride;
            return std::lexicographical_compare(pa, pa + stride, pb, pb + stride);
        });
        std::size_t unique = 0;
        const VertexId* prev = nullptr;
        for (std::size_t idx : order) {
            const VertexId* rec = flat.data() + idx * stride;
            if (prev && std::equal(rec, rec + stride, prev)) continue;
            ++unique;
            prev = rec;
        }
        counts[static_cast<std::size_t>(k)] = unique;
    }
    return counts;
}

long long euler_characteristic(const SimplicialComplex& c) {
    auto counts = face_counts(c);
    long long chi = 0;
    for (std::size_t k = 0; k < counts.size(); ++k)
        chi += (k % 2 == 0) ? static_cast<long long>(counts[k]) : -static_cast<long long>(counts[k]);
    return chi;
}

namespace detail {

BettiVector lower_link_betti_generic(const SimplicialComplex& c, VertexId v,
                                     const std::vector<VertexId>& lower_neighbors) {
    SubComplex lk;
    std::vector<VertexId> face;
    for (auto ci : c.star_cells(v)) {
        auto cell = c.cell(ci);
        face.clear();
        for (VertexId w : cell)
            if (w != v &&
                std::binary_search(lower_neighbors.begin(), lower_neighbors.end(), w))
                face.push_back(w);
        if (!face.empty()) lk.insert_closed(face);
    }
    lk.finalize();
    return reduced_betti(lk, c.dim(), 2);
}

} // namespace detail

} // namespace plcerf
