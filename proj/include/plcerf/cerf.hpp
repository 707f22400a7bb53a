#ifndef PLCERF_CERF_HPP
#define PLCERF_CERF_HPP

#include <optional>
#include <string>
#include <vector>

#include "plcerf/field.hpp"
#include "plcerf/plmorse.hpp"
#include "plcerf/types.hpp"

namespace plcerf {

// One arc of the Cerf diagram: vertex v is critical with constant
// homological index beta on (t1, t2).
struct CerfArc {
    double t1, val1;
    double t2, val2;
    VertexId vertex;
    BettiVector beta;
};

// The seven crossing types of a PL Morse family.
enum class CrossingKind {
    CriticalCritical,
    RegularRegular,
    CriticalRegular,
    CriticalRegularSwitch,
    IndexSwap,
    Birth,
    Death,
};

const char* to_string(CrossingKind k);

// A crossing with the classification evidence: classes and Betti vectors
// of both vertices immediately before and after. kind is empty when the
// transition matches none of the seven patterns (non-generic input).
struct ClassifiedCrossing {
    RawCrossing event;
    std::optional<CrossingKind> kind;
    VertexClass before_u, before_v;
    VertexClass after_u, after_v;

    const BettiVector& betti_before(bool of_u) const {
        return of_u ? before_u.betti : before_v.betti;
    }
    const BettiVector& betti_after(bool of_u) const {
        return of_u ? after_u.betti : after_v.betti;
    }
    bool unclassifiable() const { return !kind.has_value(); }
};

// Arc bookkeeping per crossing: which arcs closed / opened for u and v
// (-1 when none). Drives the tracking graph.
struct ArcTransition {
    int closed_u = -1, opened_u = -1;
    int closed_v = -1, opened_v = -1;
};

struct SweepOptions {
    bool strict = false; // abort on unclassifiable crossings
    int threads = 1;
};

struct CerfDiagram {
    std::vector<CerfArc> arcs;
    std::vector<ClassifiedCrossing> crossings;
    std::vector<ArcTransition> transitions; // parallel to crossings
    std::size_t unclassified_count = 0;
};

// Sweeps the crossing events of the family in (t, u, v) order,
// maintaining the tie-broken order of every link-adjacent pair and
// recomputing the homological indices of the two vertices at each event.
CerfDiagram compute_cerf_diagram(const TimeVaryingField& field, const SweepOptions& opts = {});

// Classifies a single crossing from the before/after classes of the two
// vertices. Empty result = unclassifiable (non-generic family).
std::optional<CrossingKind> classify_crossing(const VertexClass& before_u,
                                              const VertexClass& before_v,
                                              const VertexClass& after_u,
                                              const VertexClass& after_v);

// Balance check: the alternating Betti change of v is minus that of u.
bool verify_betti_update(const ClassifiedCrossing& x);

// Classifies an event list from scratch, probing each vertex pair at the
// midpoints toward the neighboring distinct event times. Covers the
// AllPairs scope: non-adjacent crossings leave both lower links unchanged
// and land in the no-transition kinds. Independent of the sweep state, so
// it doubles as a small-instance oracle for generic (distinct-time)
// event lists.
std::vector<ClassifiedCrossing> classify_crossings_post_hoc(const TimeVaryingField& field,
                                                            const std::vector<RawCrossing>& events);

// Features-over-time graph: nodes are Cerf arcs, edges the transitions
// induced by the crossing taxonomy.
struct TrackingGraph {
    enum class EdgeKind { Continuation, Move, Swap, Birth, Death };

    struct Node {
        int arc;
        int index;          // critical index when the arc state is simple, else -1
        bool born_by_birth = false;
        bool died_by_death = false;
    };
    struct Edge {
        int from, to;
        EdgeKind kind;
        double t;
    };

    std::vector<Node> nodes; // nodes[i] describes arcs[i]
    std::vector<Edge> edges;
};

const char* to_string(TrackingGraph::EdgeKind k);

TrackingGraph tracking_graph(const CerfDiagram& diagram);

// A chain of arcs connected by continuation/move/swap edges.
struct Track {
    std::vector<int> arcs; // in time order
    double birth, death;
    bool born_by_birth = false;
    bool died_by_death = false;
};

// Chains of index-d features (maxima when d = dim of the manifold).
std::vector<Track> maxima_tracks(const TrackingGraph& g, const CerfDiagram& diagram, int index_d);

// Tracks near a seed position: tracks alive at time t within radius of
// seed, and (in after mode) tracks born after t whose birth position is
// within radius; closed under tracking-graph reachability.
std::vector<Track> seed_search(const TrackingGraph& g, const CerfDiagram& diagram,
                               const TimeVaryingField& field, std::span<const double> seed,
                               double radius, double t, bool after_mode,
                               const std::vector<Track>& tracks);

// Grid position of a track at time t (nearest sample of the covering
// arc's vertex); empty when the track is not alive at t.
std::optional<std::vector<double>> track_position(const Track& track, const CerfDiagram& diagram,
                                                  const TimeVaryingField& field, double t);

} // namespace plcerf

#endif
