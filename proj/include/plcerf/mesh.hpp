#ifndef PLCERF_MESH_HPP
#define PLCERF_MESH_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "plcerf/types.hpp"

namespace plcerf {

// Regular grid description. dims are vertex counts per axis; a periodic
// axis wraps its last vertex onto the first.
struct GridSpec {
    std::vector<std::uint32_t> dims;
    std::vector<bool> periodic;

    GridSpec() = default;
    GridSpec(std::vector<std::uint32_t> d, std::vector<bool> p)
        : dims(std::move(d)), periodic(std::move(p)) {}

    std::size_t rank() const { return dims.size(); }
    std::uint64_t vertex_count() const {
        std::uint64_t n = 1;
        for (auto d : dims) n *= d;
        return n;
    }
    VertexId vertex_at(std::span<const std::uint32_t> coords) const;
    std::vector<std::uint32_t> coords_of(VertexId v) const;

    // Euclidean distance with wrap-around on periodic axes.
    double distance(std::span<const double> a, std::span<const double> b) const;
};

// A face-closed set of simplices grouped by dimension. Within each
// dimension the flat storage is lexicographically sorted and unique.
class SubComplex {
  public:
    SubComplex() = default;

    int max_dim() const { return static_cast<int>(by_dim_.size()) - 1; }
    bool empty() const { return by_dim_.empty(); }

    std::size_t count(int dim) const {
        if (dim < 0 || dim > max_dim()) return 0;
        return by_dim_[static_cast<std::size_t>(dim)].size() / static_cast<std::size_t>(dim + 1);
    }
    std::size_t total_count() const;

    std::span<const VertexId> simplex(int dim, std::size_t i) const {
        const auto& flat = by_dim_[static_cast<std::size_t>(dim)];
        return {flat.data() + i * static_cast<std::size_t>(dim + 1),
                static_cast<std::size_t>(dim + 1)};
    }

    bool contains(std::span<const VertexId> simplex) const;

    // Inserts a simplex together with all of its faces.
    void insert_closed(std::span<const VertexId> simplex);
    void finalize(); // sort + dedup; called once after batch insertion

    std::vector<VertexId> vertex_set() const;
    bool is_face_closed() const;

  private:
    // by_dim_[k] holds k-simplices flattened with stride k+1.
    std::vector<std::vector<VertexId>> by_dim_;
    bool finalized_ = true;
};

struct ValidationIssue {
    VertexId vertex;
    std::string reason;
};

struct ValidationReport {
    bool valid = true;
    bool closed = true;                  // no boundary found
    std::size_t boundary_vertices = 0;   // vertices whose link is a disk
    std::vector<ValidationIssue> issues; // per-vertex failures
};

// Combinatorial manifold triangulation stored by maximal simplices with a
// per-vertex star index. Immutable after construction and safe to share
// across threads.
class SimplicialComplex {
  public:
    // cells_flat lists maximal simplices with stride dim+1, each sorted
    // increasing. Throws DataError on malformed input.
    SimplicialComplex(int dim, VertexId vertex_count, std::vector<VertexId> cells_flat);

    int dim() const { return dim_; }
    VertexId vertex_count() const { return vertex_count_; }
    std::size_t cell_count() const { return cells_.size() / static_cast<std::size_t>(dim_ + 1); }

    std::span<const VertexId> cell(std::size_t i) const {
        return {cells_.data() + i * static_cast<std::size_t>(dim_ + 1),
                static_cast<std::size_t>(dim_ + 1)};
    }

    // Indices of maximal simplices incident to v.
    std::span<const std::uint32_t> star_cells(VertexId v) const {
        return {star_cells_.data() + star_offsets_[v], star_cells_.data() + star_offsets_[v + 1]};
    }

    // Sorted 1-ring of v.
    std::span<const VertexId> neighbors(VertexId v) const {
        return {adj_.data() + adj_offsets_[v], adj_.data() + adj_offsets_[v + 1]};
    }

    bool adjacent(VertexId u, VertexId v) const;

    // Undirected edges (u < v) in lexicographic order.
    std::size_t edge_count() const { return edges_.size() / 2; }
    std::pair<VertexId, VertexId> edge(std::size_t e) const {
        return {edges_[2 * e], edges_[2 * e + 1]};
    }
    // Index of edge {u, v} in the edge list, if present.
    std::optional<std::size_t> edge_index(VertexId u, VertexId v) const;
    // Position of neighbor w inside neighbors(v); kInvalidVertex-safe.
    std::optional<std::size_t> neighbor_slot(VertexId v, VertexId w) const;
    std::size_t adjacency_offset(VertexId v) const { return adj_offsets_[v]; }
    // Edge index for the k-th neighbor of v.
    std::size_t edge_of_neighbor_slot(VertexId v, std::size_t slot) const {
        return adj_edge_[adj_offsets_[v] + slot];
    }

    // Geometric grid this complex triangulates, when applicable.
    const std::optional<GridSpec>& grid() const { return grid_; }

    void check_vertex(VertexId v) const {
        if (v >= vertex_count_) throw DataError("invalid vertex id " + std::to_string(v));
    }

  private:
    friend SimplicialComplex freudenthal_2d(const GridSpec&);
    friend SimplicialComplex freudenthal_3d(const GridSpec&);

    void build_indices();

    int dim_ = 0;
    VertexId vertex_count_ = 0;
    std::vector<VertexId> cells_;
    std::vector<std::size_t> star_offsets_;
    std::vector<std::uint32_t> star_cells_;
    std::vector<std::size_t> adj_offsets_;
    std::vector<VertexId> adj_;
    std::vector<std::uint32_t> adj_edge_; // parallel to adj_: undirected edge index
    std::vector<VertexId> edges_;         // flattened (u, v) pairs, u < v
    std::optional<GridSpec> grid_;
};

// Freudenthal triangulation of a 2D grid: each unit quad is split along
// the (+1,+1) diagonal. Periodic axes need at least 3 vertices.
SimplicialComplex freudenthal_2d(const GridSpec& spec);

// Kuhn subdivision of a 3D grid: each unit cube splits into the 6
// tetrahedra sharing the main diagonal.
SimplicialComplex freudenthal_3d(const GridSpec& spec);

// Full link of v as a face-closed subcomplex.
SubComplex link(const SimplicialComplex& c, VertexId v);

// Link restricted to vertices strictly below v in the tie-broken order.
SubComplex lower_link(const SimplicialComplex& c, VertexId v, const Valuation& val);

// Checks that every vertex link looks like a sphere (or a disk, when
// allow_boundary). The homeomorphism test is replaced by the
// pseudomanifold + Betti-vector check, exact for dim <= 3.
ValidationReport validate_manifold(const SimplicialComplex& c, bool allow_boundary = true);

} // namespace plcerf

#endif
