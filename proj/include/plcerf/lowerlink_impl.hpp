#ifndef PLCERF_LOWERLINK_IMPL_HPP
#define PLCERF_LOWERLINK_IMPL_HPP

// Implementation of the small-rank lower-link kernel. Included by
// homology.hpp; not a public interface.

#include <algorithm>
#include <array>

namespace plcerf {
namespace detail {

struct LinkScratch {
    std::vector<VertexId> verts;
    std::vector<std::array<VertexId, 2>> edges;
    std::vector<std::array<VertexId, 3>> tris;
    std::vector<std::uint64_t> cols;
    std::array<std::uint64_t, 64> pivots{};
};

inline LinkScratch& link_scratch() {
    thread_local LinkScratch s;
    return s;
}

// Rank of an F2 matrix given as column bitmasks (<= 64 rows).
inline std::size_t rank_f2_cols(std::vector<std::uint64_t>& cols,
                                std::array<std::uint64_t, 64>& pivots, int max_rows) {
    for (int i = 0; i < max_rows; ++i) pivots[static_cast<std::size_t>(i)] = 0;
    std::size_t rank = 0;
    for (std::uint64_t col : cols) {
        while (col) {
            const int h = 63 - __builtin_clzll(col);
            std::uint64_t& p = pivots[static_cast<std::size_t>(h)];
            if (p) {
                col ^= p;
            } else {
                p = col;
                ++rank;
                break;
            }
        }
    }
    return rank;
}

template <typename BelowPred>
BettiVector lower_link_betti_f2(const SimplicialComplex& c, VertexId v, BelowPred&& below) {
    const int d = c.dim();
    auto& s = link_scratch();

    if (d > 3) {
        std::vector<VertexId> lows;
        for (VertexId w : c.neighbors(v))
            if (below(w)) lows.push_back(w);
        return lower_link_betti_generic(c, v, lows);
    }

    s.verts.clear();
    s.edges.clear();
    s.tris.clear();

    std::array<VertexId, 4> low{};
    for (auto ci : c.star_cells(v)) {
        auto cell = c.cell(ci);
        int k = 0;
        for (VertexId w : cell)
            if (w != v && below(w)) low[static_cast<std::size_t>(k++)] = w;
        if (k == 0) continue;
        for (int i = 0; i < k; ++i) s.verts.push_back(low[static_cast<std::size_t>(i)]);
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                s.edges.push_back({low[static_cast<std::size_t>(i)], low[static_cast<std::size_t>(j)]});
        if (k == 3) s.tris.push_back({low[0], low[1], low[2]});
    }

    std::sort(s.verts.begin(), s.verts.end());
    s.verts.erase(std::unique(s.verts.begin(), s.verts.end()), s.verts.end());
    std::sort(s.edges.begin(), s.edges.end());
    s.edges.erase(std::unique(s.edges.begin(), s.edges.end()), s.edges.end());
    std::sort(s.tris.begin(), s.tris.end());
    s.tris.erase(std::unique(s.tris.begin(), s.tris.end()), s.tris.end());

    const std::size_t n0 = s.verts.size();
    const std::size_t n1 = s.edges.size();
    const std::size_t n2 = s.tris.size();

    if (n0 > 64 || n1 > 64) {
        std::vector<VertexId> lows(s.verts.begin(), s.verts.end());
        return lower_link_betti_generic(c, v, lows);
    }

    // rank of the augmentation C_0 -> F
    const std::size_t r0 = n0 > 0 ? 1 : 0;

    // rank of d_1: columns are edges as bitmasks over vertex slots
    std::size_t r1 = 0;
    if (n1 > 0) {
        s.cols.clear();
        for (const auto& e : s.edges) {
            const auto a = static_cast<std::uint64_t>(
                std::lower_bound(s.verts.begin(), s.verts.end(), e[0]) - s.verts.begin());
            const auto b = static_cast<std::uint64_t>(
                std::lower_bound(s.verts.begin(), s.verts.end(), e[1]) - s.verts.begin());
            s.cols.push_back((1ull << a) | (1ull << b));
        }
        r1 = rank_f2_cols(s.cols, s.pivots, static_cast<int>(n0));
    }

    // rank of d_2: columns are triangles as bitmasks over edge slots
    std::size_t r2 = 0;
    if (n2 > 0) {
        s.cols.clear();
        auto edge_slot = [&](VertexId a, VertexId b) {
            const std::array<VertexId, 2> key{a, b};
            return static_cast<std::uint64_t>(
                std::lower_bound(s.edges.begin(), s.edges.end(), key) - s.edges.begin());
        };
        for (const auto& t : s.tris) {
            std::uint64_t m = 0;
            m |= 1ull << edge_slot(t[0], t[1]);
            m |= 1ull << edge_slot(t[0], t[2]);
            m |= 1ull << edge_slot(t[1], t[2]);
            s.cols.push_back(m);
        }
        r2 = rank_f2_cols(s.cols, s.pivots, static_cast<int>(n1));
    }

    BettiVector beta(d + 1);
    beta[0] = static_cast<int>(1 - r0);
    const std::size_t n[3] = {n0, n1, n2};
    const std::size_t r[4] = {r0, r1, r2, 0};
    for (int i = 1; i <= d; ++i) {
        const std::size_t nk = static_cast<std::size_t>(i - 1) < 3 ? n[i - 1] : 0;
        beta[i] = static_cast<int>(static_cast<long long>(nk) -
                                   static_cast<long long>(r[i - 1]) -
                                   static_cast<long long>(r[i]));
    }
    return beta;
}

} // namespace detail
} // namespace plcerf

#endif
