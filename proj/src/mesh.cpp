#include "plcerf/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "plcerf/homology.hpp"

namespace plcerf {

VertexId GridSpec::vertex_at(std::span<const std::uint32_t> coords) const {
    std::uint64_t idx = 0, stride = 1;
    for (std::size_t axis = 0; axis < dims.size(); ++axis) {
        idx += static_cast<std::uint64_t>(coords[axis]) * stride;
        stride *= dims[axis];
    }
    return static_cast<VertexId>(idx);
}

std::vector<std::uint32_t> GridSpec::coords_of(VertexId v) const {
    std::vector<std::uint32_t> coords(dims.size());
    std::uint64_t rest = v;
    for (std::size_t axis = 0; axis < dims.size(); ++axis) {
        coords[axis] = static_cast<std::uint32_t>(rest % dims[axis]);
        rest /= dims[axis];
    }
    return coords;
}

double GridSpec::distance(std::span<const double> a, std::span<const double> b) const {
    double sq = 0.0;
    for (std::size_t axis = 0; axis < dims.size(); ++axis) {
        double d = std::abs(a[axis] - b[axis]);
        if (axis < periodic.size() && periodic[axis]) {
            const double n = static_cast<double>(dims[axis]);
            d = std::fmod(d, n);
            d = std::min(d, n - d);
        }
        sq += d * d;
    }
    return std::sqrt(sq);
}

// ---------------------------------------------------------------------------
// SubComplex

std::size_t SubComplex::total_count() const {
    std::size_t n = 0;
    for (int k = 0; k <= max_dim(); ++k) n += count(k);
    return n;
}

namespace {

// Lexicographic comparison of two fixed-stride records.
struct FlatLess {
    std::size_t stride;
    const VertexId* base;
    bool operator()(std::size_t ia, std::size_t ib) const {
        const VertexId* a = base + ia * stride;
        const VertexId* b = base + ib * stride;
        return std::lexicographical_compare(a, a + stride, b, b + stride);
    }
};

void sort_unique_flat(std::vector<VertexId>& flat, std::size_t stride) {
    const std::size_t n = flat.size() / stride;
    if (n < 2) return;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), FlatLess{stride, flat.data()});
    std::vector<VertexId> out;
    out.reserve(flat.size());
    const VertexId* prev = nullptr;
    for (std::size_t i : order) {
        const VertexId* rec = flat.data() + i * stride;
        if (prev && std::equal(rec, rec + stride, prev)) continue;
        out.insert(out.end(), rec, rec + stride);
        prev = out.data() + out.size() - stride;
    }
    flat = std::move(out);
}

bool flat_contains(const std::vector<VertexId>& flat, std::size_t stride,
                   std::span<const VertexId> key) {
    const std::size_t n = flat.size() / stride;
    std::size_t lo = 0, hi = n;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        const VertexId* rec = flat.data() + mid * stride;
        if (std::lexicographical_compare(rec, rec + stride, key.data(), key.data() + stride))
            lo = mid + 1;
        else
            hi = mid;
    }
    if (lo == n) return false;
    const VertexId* rec = flat.data() + lo * stride;
    return std::equal(rec, rec + stride, key.data());
}

} // namespace

bool SubComplex::contains(std::span<const VertexId> simplex) const {
    const int k = static_cast<int>(simplex.size()) - 1;
    if (k < 0 || k > max_dim()) return false;
    return flat_contains(by_dim_[static_cast<std::size_t>(k)], simplex.size(), simplex);
}

void SubComplex::insert_closed(std::span<const VertexId> simplex) {
    const std::size_t n = simplex.size();
    if (n == 0) return;
    if (by_dim_.size() < n) by_dim_.resize(n);
    // enumerate all non-empty subsets; vertices stay sorted
    const unsigned full = (1u << n) - 1u;
    for (unsigned mask = 1; mask <= full; ++mask) {
        auto& flat = by_dim_[static_cast<std::size_t>(__builtin_popcount(mask)) - 1];
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) flat.push_back(simplex[i]);
    }
    finalized_ = false;
}

void SubComplex::finalize() {
    for (std::size_t k = 0; k < by_dim_.size(); ++k) sort_unique_flat(by_dim_[k], k + 1);
    while (!by_dim_.empty() && by_dim_.back().empty()) by_dim_.pop_back();
    finalized_ = true;
}

std::vector<VertexId> SubComplex::vertex_set() const {
    std::vector<VertexId> vs;
    if (!by_dim_.empty()) vs = by_dim_[0];
    return vs;
}

bool SubComplex::is_face_closed() const {
    for (int k = 1; k <= max_dim(); ++k) {
        for (std::size_t i = 0; i < count(k); ++i) {
            auto s = simplex(k, i);
            std::vector<VertexId> face(s.size() - 1);
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                std::size_t w = 0;
                for (std::size_t j = 0; j < s.size(); ++j)
                    if (j != drop) face[w++] = s[j];
                if (!contains(face)) return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// SimplicialComplex

SimplicialComplex::SimplicialComplex(int dim, VertexId vertex_count,
                                     std::vector<VertexId> cells_flat)
    : dim_(dim), vertex_count_(vertex_count), cells_(std::move(cells_flat)) {
    if (dim_ < 0 || dim_ > kMaxDim) throw DataError("unsupported complex dimension");
    const std::size_t stride = static_cast<std::size_t>(dim_ + 1);
    if (cells_.size() % stride != 0)
        throw DataError("maximal simplex list length not divisible by dim+1");
    for (std::size_t i = 0; i < cells_.size(); i += stride) {
        for (std::size_t j = 0; j + 1 < stride; ++j)
            if (cells_[i + j] >= cells_[i + j + 1])
                throw DataError("maximal simplex vertices must be strictly increasing");
        if (cells_[i + stride - 1] >= vertex_count_)
            throw DataError("maximal simplex references vertex out of range");
    }
    build_indices();
}

void SimplicialComplex::build_indices() {
    const std::size_t stride = static_cast<std::size_t>(dim_ + 1);
    const std::size_t ncells = cells_.size() / stride;

    star_offsets_.assign(vertex_count_ + 1, 0);
    for (VertexId v : cells_) ++star_offsets_[v + 1];
    for (std::size_t v = 0; v < vertex_count_; ++v) star_offsets_[v + 1] += star_offsets_[v];
    star_cells_.resize(cells_.size());
    {
        std::vector<std::size_t> cursor(star_offsets_.begin(), star_offsets_.end() - 1);
        for (std::size_t ci = 0; ci < ncells; ++ci)
            for (std::size_t j = 0; j < stride; ++j)
                star_cells_[cursor[cells_[ci * stride + j]]++] = static_cast<std::uint32_t>(ci);
    }

    // adjacency: gather, sort, dedup per vertex
    adj_offsets_.assign(vertex_count_ + 1, 0);
    std::vector<VertexId> scratch;
    std::vector<std::vector<VertexId>> per_vertex(vertex_count_);
    for (std::size_t ci = 0; ci < ncells; ++ci) {
        auto c = cell(ci);
        for (std::size_t a = 0; a < stride; ++a)
            for (std::size_t b = 0; b < stride; ++b)
                if (a != b) per_vertex[c[a]].push_back(c[b]);
    }
    for (VertexId v = 0; v < vertex_count_; ++v) {
        auto& nb = per_vertex[v];
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        adj_offsets_[v + 1] = adj_offsets_[v] + nb.size();
    }
    adj_.resize(adj_offsets_[vertex_count_]);
    for (VertexId v = 0; v < vertex_count_; ++v)
        std::copy(per_vertex[v].begin(), per_vertex[v].end(), adj_.begin() + adj_offsets_[v]);

    // undirected edge list in (u, v) lexicographic order with u < v
    edges_.clear();
    adj_edge_.assign(adj_.size(), 0);
    std::uint32_t eidx = 0;
    for (VertexId u = 0; u < vertex_count_; ++u) {
        for (std::size_t s = adj_offsets_[u]; s < adj_offsets_[u + 1]; ++s) {
            const VertexId v = adj_[s];
            if (u < v) {
                edges_.push_back(u);
                edges_.push_back(v);
                adj_edge_[s] = eidx++;
            }
        }
    }
    // second pass fills the mirrored half
    for (VertexId u = 0; u < vertex_count_; ++u) {
        for (std::size_t s = adj_offsets_[u]; s < adj_offsets_[u + 1]; ++s) {
            const VertexId v = adj_[s];
            if (u > v) {
                auto pos = neighbor_slot(v, u);
                adj_edge_[s] = adj_edge_[adj_offsets_[v] + *pos];
            }
        }
    }
}

bool SimplicialComplex::adjacent(VertexId u, VertexId v) const {
    if (u == v) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<std::size_t> SimplicialComplex::neighbor_slot(VertexId v, VertexId w) const {
    auto nb = neighbors(v);
    auto it = std::lower_bound(nb.begin(), nb.end(), w);
    if (it == nb.end() || *it != w) return std::nullopt;
    return static_cast<std::size_t>(it - nb.begin());
}

std::optional<std::size_t> SimplicialComplex::edge_index(VertexId u, VertexId v) const {
    if (u > v) std::swap(u, v);
    auto slot = neighbor_slot(u, v);
    if (!slot) return std::nullopt;
    return adj_edge_[adj_offsets_[u] + *slot];
}

// ---------------------------------------------------------------------------
// Freudenthal triangulations

namespace {

void require_axes(const GridSpec& spec, std::size_t n) {
    if (spec.dims.size() != n)
        throw ConfigError("grid spec must have " + std::to_string(n) + " axes");
    if (!spec.periodic.empty() && spec.periodic.size() != n)
        throw ConfigError("periodic flags must match grid rank");
    for (std::size_t axis = 0; axis < n; ++axis) {
        const bool per = axis < spec.periodic.size() && spec.periodic[axis];
        if (spec.dims[axis] < 2) throw ConfigError("grid axis needs at least 2 vertices");
        if (per && spec.dims[axis] < 3)
            throw ConfigError("periodic axis needs at least 3 vertices");
    }
}

} // namespace

SimplicialComplex freudenthal_2d(const GridSpec& spec) {
    require_axes(spec, 2);
    const std::uint32_t nx = spec.dims[0], ny = spec.dims[1];
    const bool px = !spec.periodic.empty() && spec.periodic[0];
    const bool py = !spec.periodic.empty() && spec.periodic[1];
    const std::uint32_t cx = px ? nx : nx - 1;
    const std::uint32_t cy = py ? ny : ny - 1;

    auto vid = [&](std::uint32_t x, std::uint32_t y) {
        return static_cast<VertexId>((x % nx) + static_cast<std::uint64_t>(nx) * (y % ny));
    };

    std::vector<VertexId> cells;
    cells.reserve(static_cast<std::size_t>(cx) * cy * 6);
    std::array<VertexId, 3> tri{};
    for (std::uint32_t y = 0; y < cy; ++y) {
        for (std::uint32_t x = 0; x < cx; ++x) {
            const VertexId a = vid(x, y), b = vid(x + 1, y);
            const VertexId c = vid(x, y + 1), d = vid(x + 1, y + 1);
            // split along the a-d diagonal
            tri = {a, b, d};
            std::sort(tri.begin(), tri.end());
            cells.insert(cells.end(), tri.begin(), tri.end());
            tri = {a, c, d};
            std::sort(tri.begin(), tri.end());
            cells.insert(cells.end(), tri.begin(), tri.end());
        }
    }
    SimplicialComplex out(2, static_cast<VertexId>(static_cast<std::uint64_t>(nx) * ny),
                          std::move(cells));
    out.grid_ = spec;
    return out;
}

SimplicialComplex freudenthal_3d(const GridSpec& spec) {
    require_axes(spec, 3);
    const std::uint32_t nx = spec.dims[0], ny = spec.dims[1], nz = spec.dims[2];
    const bool px = !spec.periodic.empty() && spec.periodic[0];
    const bool py = !spec.periodic.empty() && spec.periodic[1];
    const bool pz = !spec.periodic.empty() && spec.periodic[2];
    const std::uint32_t cx = px ? nx : nx - 1;
    const std::uint32_t cy = py ? ny : ny - 1;
    const std::uint32_t cz = pz ? nz : nz - 1;

    auto vid = [&](std::uint32_t x, std::uint32_t y, std::uint32_t z) {
        return static_cast<VertexId>((x % nx) +
                                     static_cast<std::uint64_t>(nx) *
                                         ((y % ny) + static_cast<std::uint64_t>(ny) * (z % nz)));
    };

    // Kuhn subdivision: walk from (0,0,0) to (1,1,1) one axis at a time;
    // the 6 axis orders give 6 tetrahedra sharing the main diagonal.
    static constexpr int kOrders[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                          {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

    std::vector<VertexId> cells;
    cells.reserve(static_cast<std::size_t>(cx) * cy * cz * 24);
    std::array<VertexId, 4> tet{};
    for (std::uint32_t z = 0; z < cz; ++z) {
        for (std::uint32_t y = 0; y < cy; ++y) {
            for (std::uint32_t x = 0; x < cx; ++x) {
                for (const auto& ord : kOrders) {
                    std::uint32_t cur[3] = {x, y, z};
                    tet[0] = vid(cur[0], cur[1], cur[2]);
                    for (int step = 0; step < 3; ++step) {
                        ++cur[ord[step]];
                        tet[static_cast<std::size_t>(step) + 1] = vid(cur[0], cur[1], cur[2]);
                    }
                    std::sort(tet.begin(), tet.end());
                    cells.insert(cells.end(), tet.begin(), tet.end());
                }
            }
        }
    }
    SimplicialComplex out(
        3, static_cast<VertexId>(static_cast<std::uint64_t>(nx) * ny * nz), std::move(cells));
    out.grid_ = spec;
    return out;
}

// ---------------------------------------------------------------------------
// Links

SubComplex link(const SimplicialComplex& c, VertexId v) {
    c.check_vertex(v);
    SubComplex out;
    std::vector<VertexId> face;
    for (auto ci : c.star_cells(v)) {
        auto cell = c.cell(ci);
        face.clear();
        for (VertexId w : cell)
            if (w != v) face.push_back(w);
        out.insert_closed(face);
    }
    out.finalize();
    return out;
}

SubComplex lower_link(const SimplicialComplex& c, VertexId v, const Valuation& val) {
    c.check_vertex(v);
    SubComplex out;
    std::vector<VertexId> face;
    for (auto ci : c.star_cells(v)) {
        auto cell = c.cell(ci);
        face.clear();
        for (VertexId w : cell)
            if (w != v && val.below(w, v)) face.push_back(w);
        if (!face.empty()) out.insert_closed(face);
    }
    out.finalize();
    return out;
}

// ---------------------------------------------------------------------------
// Manifold validation

namespace {

// Betti vector (reduced, shifted) of the (d-1)-sphere in ambient dim d:
// single 1 in the top entry.
bool is_sphere_betti(const BettiVector& beta, int d) {
    for (int i = 0; i < beta.size(); ++i) {
        const int want = (i == d) ? 1 : 0;
        if (beta[i] != want) return false;
    }
    return true;
}

bool is_disk_betti(const BettiVector& beta) { return beta.is_zero(); }

} // namespace

ValidationReport validate_manifold(const SimplicialComplex& c, bool allow_boundary) {
    ValidationReport report;
    const int d = c.dim();

    if (d > 3) {
        report.valid = false;
        report.issues.push_back({kInvalidVertex, "validation supports dimension <= 3 only"});
        return report;
    }

    for (VertexId v = 0; v < c.vertex_count(); ++v) {
        if (c.star_cells(v).empty()) {
            report.valid = false;
            report.issues.push_back({v, "isolated vertex"});
            continue;
        }
        SubComplex lk = link(c, v);

        // pseudomanifold degree check on the link: every (d-2)-face of a
        // (d-1)-simplex lies in exactly 2 of them (1 allowed on boundary)
        bool boundary_here = false;
        if (d >= 2) {
            const int top = d - 1;
            std::vector<std::pair<std::vector<VertexId>, int>> counts;
            for (std::size_t i = 0; i < lk.count(top); ++i) {
                auto s = lk.simplex(top, i);
                for (std::size_t drop = 0; drop < s.size(); ++drop) {
                    std::vector<VertexId> face;
                    for (std::size_t j = 0; j < s.size(); ++j)
                        if (j != drop) face.push_back(s[j]);
                    auto it = std::find_if(counts.begin(), counts.end(),
                                           [&](const auto& p) { return p.first == face; });
                    if (it == counts.end())
                        counts.push_back({face, 1});
                    else
                        ++it->second;
                }
            }
            for (const auto& [face, n] : counts) {
                if (n == 1) boundary_here = true;
                if (n > 2) {
                    report.valid = false;
                    report.issues.push_back({v, "link face shared by more than 2 top simplices"});
                }
            }
        } else {
            // d == 1: the link is 1 or 2 points
            const std::size_t pts = lk.count(0);
            if (pts == 1) boundary_here = true;
            if (pts == 0 || pts > 2) {
                report.valid = false;
                report.issues.push_back({v, "link of a curve vertex must be 1 or 2 points"});
            }
        }

        const BettiVector beta = reduced_betti(lk, d);
        if (boundary_here) {
            if (!allow_boundary) {
                report.valid = false;
                report.issues.push_back({v, "boundary vertex in closed mode"});
            } else if (!is_disk_betti(beta)) {
                report.valid = false;
                report.issues.push_back({v, "boundary link is not contractible: " + beta.to_string()});
            }
            ++report.boundary_vertices;
            report.closed = false;
        } else {
            if (!is_sphere_betti(beta, d)) {
                report.valid = false;
                report.issues.push_back({v, "interior link has wrong homology: " + beta.to_string()});
            }
        }
    }
    return report;
}

} // namespace plcerf
