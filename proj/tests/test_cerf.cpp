#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "plcerf/cerf.hpp"

using namespace plcerf;

namespace {

std::shared_ptr<const SimplicialComplex> circle(VertexId n) {
    std::vector<VertexId> cells;
    for (VertexId i = 0; i < n; ++i) {
        const VertexId a = i, b = (i + 1) % n;
        cells.push_back(std::min(a, b));
        cells.push_back(std::max(a, b));
    }
    return std::make_shared<SimplicialComplex>(1, n, std::move(cells));
}

TimeVaryingField make_field(std::shared_ptr<const SimplicialComplex> c,
                            const std::vector<std::vector<float>>& curves) {
    const std::size_t V = c->vertex_count();
    const std::size_t T = curves[0].size();
    std::vector<float> vals(V * T);
    for (std::size_t v = 0; v < V; ++v)
        for (std::size_t k = 0; k < T; ++k) vals[k * V + v] = curves[v][k];
    return TimeVaryingField::uniform(std::move(c), T, std::move(vals));
}

TimeVaryingField random_field(std::shared_ptr<const SimplicialComplex> c, std::size_t T,
                              std::mt19937& rng) {
    std::uniform_real_distribution<float> uni(0, 1);
    std::vector<float> vals(c->vertex_count() * T);
    for (auto& x : vals) x = uni(rng);
    return TimeVaryingField::uniform(std::move(c), T, std::move(vals));
}

VertexClass regular_class(int d) { return VertexClass::from_betti(BettiVector(d + 1)); }

VertexClass critical_class(int d, int index, int mult = 1) {
    BettiVector b(d + 1);
    b[index] = mult;
    return VertexClass::from_betti(b);
}

// sorted simplex-set view of a SubComplex
std::set<std::vector<VertexId>> simplex_set(const SubComplex& c) {
    std::set<std::vector<VertexId>> out;
    for (int k = 0; k <= c.max_dim(); ++k)
        for (std::size_t i = 0; i < c.count(k); ++i) {
            auto s = c.simplex(k, i);
            out.insert(std::vector<VertexId>(s.begin(), s.end()));
        }
    return out;
}

// midpoints between consecutive distinct event times, plus one point
// before the first and after the last event
std::vector<double> event_midpoints(const TimeVaryingField& field,
                                    const std::vector<ClassifiedCrossing>& crossings) {
    std::vector<double> ts{field.t_begin()};
    for (const auto& cx : crossings) ts.push_back(cx.event.t);
    ts.push_back(field.t_end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    std::vector<double> mids;
    for (std::size_t i = 0; i + 1 < ts.size(); ++i) mids.push_back(0.5 * (ts[i] + ts[i + 1]));
    return mids;
}

} // namespace

TEST_CASE("classify_crossing: the seven kinds") {
    const int d = 2;
    const auto R = regular_class(d);
    const auto Min = critical_class(d, 0);
    const auto Sad = critical_class(d, 1);
    const auto Max = critical_class(d, 2);

    CHECK(classify_crossing(R, R, R, R) == CrossingKind::RegularRegular);
    CHECK(classify_crossing(Sad, Max, Sad, Max) == CrossingKind::CriticalCritical);
    CHECK(classify_crossing(Max, R, Max, R) == CrossingKind::CriticalRegular);
    CHECK(classify_crossing(R, Min, R, Min) == CrossingKind::CriticalRegular);
    CHECK(classify_crossing(Max, R, R, Max) == CrossingKind::CriticalRegularSwitch);
    CHECK(classify_crossing(R, Sad, Sad, R) == CrossingKind::CriticalRegularSwitch);
    CHECK(classify_crossing(Min, Sad, Sad, Min) == CrossingKind::IndexSwap);
    CHECK(classify_crossing(Max, Sad, Sad, Max) == CrossingKind::IndexSwap);
    CHECK(classify_crossing(R, R, Sad, Max) == CrossingKind::Birth);
    CHECK(classify_crossing(Max, Sad, R, R) == CrossingKind::Death);

    // non-generic transitions refuse to classify
    CHECK_FALSE(classify_crossing(R, R, Sad, R).has_value());
    CHECK_FALSE(classify_crossing(Max, R, Sad, R).has_value());
    CHECK_FALSE(classify_crossing(Max, Min, Min, Sad).has_value());
    const auto Monkey = critical_class(d, 1, 2);
    CHECK_FALSE(classify_crossing(Monkey, R, Monkey, R).has_value());
    BettiVector deg(d + 1);
    deg[0] = 1;
    deg[2] = 1;
    CHECK_FALSE(classify_crossing(VertexClass::from_betti(deg), R, R, R).has_value());
}

TEST_CASE("sweep: time-constant field keeps full-span arcs and no crossings") {
    auto c = circle(6);
    auto f = make_field(c, {{3, 3}, {1, 1}, {4, 4}, {1, 1}, {5, 5}, {0, 0}});
    auto diagram = compute_cerf_diagram(f);
    CHECK(diagram.crossings.empty());
    // criticals of (3,1,4,1,5,0) on the 6-cycle: max 4 (nbrs 1,1)?? ->
    // compare against a from-scratch classification
    auto crit = critical_points(f.complex(), f.valuation_at(0.0));
    CHECK(diagram.arcs.size() == crit.size());
    for (const auto& arc : diagram.arcs) {
        CHECK(arc.t1 == 0.0);
        CHECK(arc.t2 == 1.0);
    }
    auto g = tracking_graph(diagram);
    CHECK(g.edges.empty());
    CHECK(g.nodes.size() == diagram.arcs.size());
}

TEST_CASE("sweep: rotating maximum on a 4-cycle produces one switch") {
    auto c = circle(4);
    auto f = make_field(c, {{0, 0}, {1, 3}, {3, 1}, {0.5, 0.5}});
    auto diagram = compute_cerf_diagram(f);

    REQUIRE(diagram.crossings.size() == 1);
    const auto& cx = diagram.crossings[0];
    CHECK(cx.event.t == doctest::Approx(0.5));
    CHECK(cx.event.u == 1);
    CHECK(cx.event.v == 2);
    REQUIRE(cx.kind.has_value());
    CHECK(*cx.kind == CrossingKind::CriticalRegularSwitch);
    CHECK(verify_betti_update(cx));
    // the hand computation: delta(v2) = +1, delta(v1) = -1
    CHECK(cx.after_v.betti.alternating_sum() - cx.before_v.betti.alternating_sum() == 1);
    CHECK(cx.after_u.betti.alternating_sum() - cx.before_u.betti.alternating_sum() == -1);

    // v2's max arc closes at 0.5; v1's opens there
    const auto& tr = diagram.transitions[0];
    REQUIRE(tr.closed_v >= 0);
    REQUIRE(tr.opened_u >= 0);
    CHECK(diagram.arcs[static_cast<std::size_t>(tr.closed_v)].vertex == 2);
    CHECK(diagram.arcs[static_cast<std::size_t>(tr.closed_v)].t2 == doctest::Approx(0.5));
    CHECK(diagram.arcs[static_cast<std::size_t>(tr.opened_u)].vertex == 1);
    CHECK(diagram.arcs[static_cast<std::size_t>(tr.opened_u)].t1 == doctest::Approx(0.5));

    // the tracking graph chains the two max arcs through one move edge
    auto g = tracking_graph(diagram);
    std::size_t moves = 0;
    for (const auto& e : g.edges)
        if (e.kind == TrackingGraph::EdgeKind::Move) ++moves;
    CHECK(moves == 1);
    auto tracks = maxima_tracks(g, diagram, 1);
    REQUIRE(tracks.size() == 1);
    CHECK(tracks[0].arcs.size() == 2);
    CHECK(tracks[0].birth == 0.0);
    CHECK(tracks[0].death == 1.0);
}

TEST_CASE("sweep: oracle equivalence on random fields") {
    std::mt19937 rng(101);
    for (int rep = 0; rep < 6; ++rep) {
        std::shared_ptr<const SimplicialComplex> c;
        if (rep % 3 == 0)
            c = std::make_shared<SimplicialComplex>(
                freudenthal_2d(GridSpec({5, 4}, {rep % 2 == 0, false})));
        else if (rep % 3 == 1)
            c = std::make_shared<SimplicialComplex>(
                freudenthal_3d(GridSpec({3, 3, 3}, {false, false, false})));
        else
            c = circle(7);
        auto f = random_field(c, 6, rng);
        auto diagram = compute_cerf_diagram(f);

        // every adjacent crossing satisfies the betti-update relation
        for (const auto& cx : diagram.crossings) CHECK(verify_betti_update(cx));

        // at sample times and event midpoints the arc-derived critical set
        // matches a from-scratch classification
        std::vector<double> probes = event_midpoints(f, diagram.crossings);
        for (double t : f.times()) probes.push_back(t);
        for (double t : probes) {
            std::map<VertexId, BettiVector> from_arcs;
            for (const auto& arc : diagram.arcs) {
                if (arc.t1 <= t && t < arc.t2) from_arcs[arc.vertex] = arc.beta;
                else if (arc.t2 == t && t == f.t_end()) from_arcs[arc.vertex] = arc.beta;
            }
            auto scratch = critical_points(f.complex(), f.valuation_at(t));
            // skip probes that collide with an event time: the sweep state
            // is half-open there by convention
            bool at_event = false;
            for (const auto& cx : diagram.crossings) at_event |= (cx.event.t == t);
            if (at_event) continue;
            REQUIRE(from_arcs.size() == scratch.size());
            for (const auto& [v, cls] : scratch) {
                REQUIRE(from_arcs.count(v));
                CHECK(from_arcs[v] == cls.betti);
            }
        }

        // each arc's beta is literally constant at its midpoint
        for (const auto& arc : diagram.arcs) {
            if (arc.t2 <= arc.t1) continue;
            const double mid = 0.5 * (arc.t1 + arc.t2);
            bool event_inside = false;
            for (const auto& cx : diagram.crossings)
                event_inside |= (cx.event.t == mid);
            if (event_inside) continue;
            CHECK(homological_index(f.complex(), f.valuation_at(mid), arc.vertex) == arc.beta);
        }
    }
}

TEST_CASE("sweep: lower-link update identity at crossings") {
    // incremental form of the lower-link update at a crossing: the lower
    // vertex gains a cone over the shared lower link, the upper one loses it
    std::mt19937 rng(103);
    for (int rep = 0; rep < 4; ++rep) {
        auto c = std::make_shared<SimplicialComplex>(
            freudenthal_2d(GridSpec({4, 4}, {false, rep % 2 == 0})));
        auto f = random_field(c, 4, rng);
        auto diagram = compute_cerf_diagram(f);

        for (std::size_t i = 0; i < diagram.crossings.size(); ++i) {
            const auto& cx = diagram.crossings[i];
            // probe strictly between neighbors in event order
            const double t = cx.event.t;
            double before_t = f.t_begin(), after_t = f.t_end();
            for (const auto& other : diagram.crossings) {
                if (other.event.t < t) before_t = std::max(before_t, other.event.t);
                if (other.event.t > t) after_t = std::min(after_t, other.event.t);
            }
            if (before_t == t || after_t == t) continue; // same-time cascade
            const double tb = 0.5 * (before_t + t);
            const double ta = 0.5 * (t + after_t);
            const Valuation vb = f.valuation_at(tb), va = f.valuation_at(ta);

            // wlog: "hi" is the vertex above before the crossing
            VertexId hi = cx.event.u, lo = cx.event.v;
            if (vb.below(hi, lo)) std::swap(hi, lo);

            auto lower_b_hi = simplex_set(lower_link(*c, hi, vb));
            auto lower_b_lo = simplex_set(lower_link(*c, lo, vb));
            auto lower_a_hi = simplex_set(lower_link(*c, hi, va));
            auto lower_a_lo = simplex_set(lower_link(*c, lo, va));

            // I = intersection of the two lower links before the crossing
            std::set<std::vector<VertexId>> inter;
            for (const auto& s : lower_b_hi)
                if (lower_b_lo.count(s)) inter.insert(s);

            // lo gains the cone hi * I; hi loses the cone lo * I
            auto expect_lo = lower_b_lo;
            expect_lo.insert({hi});
            for (const auto& s : inter) {
                std::vector<VertexId> joined(s);
                joined.push_back(hi);
                std::sort(joined.begin(), joined.end());
                expect_lo.insert(joined);
            }
            auto expect_hi = lower_b_hi;
            expect_hi.erase({lo});
            for (const auto& s : inter) {
                std::vector<VertexId> joined(s);
                joined.push_back(lo);
                std::sort(joined.begin(), joined.end());
                expect_hi.erase(joined);
            }
            CHECK(lower_a_lo == expect_lo);
            CHECK(lower_a_hi == expect_hi);
        }
    }
}

TEST_CASE("post-hoc classification: non-adjacent crossings do not transition") {
    std::mt19937 rng(107);
    auto c = std::make_shared<SimplicialComplex>(freudenthal_2d(GridSpec({4, 4}, {true, false})));
    auto f = random_field(c, 5, rng);
    auto all = enforce_genericity(detect_crossings(f, CrossingScope::AllPairs));
    auto classified = classify_crossings_post_hoc(f, all);
    REQUIRE(classified.size() == all.size());

    std::size_t non_adjacent = 0;
    for (const auto& cx : classified) {
        if (cx.event.adjacent) continue;
        ++non_adjacent;
        // lower links unchanged across the event: classes equal, only the
        // no-transition kinds can appear, and the Betti balance is 0 = -0
        CHECK(cx.before_u == cx.after_u);
        CHECK(cx.before_v == cx.after_v);
        CHECK(verify_betti_update(cx));
        if (cx.kind) {
            CHECK((*cx.kind == CrossingKind::CriticalCritical ||
                   *cx.kind == CrossingKind::RegularRegular ||
                   *cx.kind == CrossingKind::CriticalRegular));
        }
    }
    CHECK(non_adjacent > 0);

    // on distinct-time adjacent events the post-hoc oracle agrees with
    // the sweep's classification
    auto diagram = compute_cerf_diagram(f);
    std::map<double, std::size_t> time_count;
    for (const auto& cx : diagram.crossings) ++time_count[cx.event.t];
    std::vector<RawCrossing> adjacent_events;
    for (const auto& cx : diagram.crossings) adjacent_events.push_back(cx.event);
    auto oracle = classify_crossings_post_hoc(f, adjacent_events);
    for (std::size_t i = 0; i < oracle.size(); ++i) {
        if (time_count[oracle[i].event.t] != 1) continue;
        CHECK(oracle[i].kind == diagram.crossings[i].kind);
        CHECK(oracle[i].before_u == diagram.crossings[i].before_u);
        CHECK(oracle[i].after_v == diagram.crossings[i].after_v);
    }
}

TEST_CASE("strict mode aborts on degenerate transitions, lenient records them") {
    // engineered monkey-saddle flicker: center crosses three interleaved
    // neighbors simultaneously
    auto grid = std::make_shared<SimplicialComplex>(freudenthal_2d(GridSpec({5, 5}, {false, false})));
    std::vector<std::vector<float>> curves(25, {5.0f, 5.0f});
    curves[12] = {3.0f, 3.0f};
    // 13, 17, 6 dive below the center mid-way
    for (VertexId v : {13u, 17u, 6u}) curves[v] = {4.0f, 0.0f};
    const std::size_t V = 25, T = 2;
    std::vector<float> vals(V * T);
    for (std::size_t v = 0; v < V; ++v)
        for (std::size_t k = 0; k < T; ++k) vals[k * V + v] = curves[v][k];
    auto f = TimeVaryingField::uniform(grid, T, std::move(vals));

    auto lenient = compute_cerf_diagram(f);
    CHECK(lenient.unclassified_count > 0);
    SweepOptions strict;
    strict.strict = true;
    CHECK_THROWS_AS(compute_cerf_diagram(f, strict), NonGenericError);
}

TEST_CASE("seed_search: selects nearby tracks; after-mode widens the result") {
    GridSpec spec({12, 12}, {false, false});
    GaussianPath peak;
    peak.kind = GaussianPath::Kind::Static;
    peak.a = {3.0, 3.0};
    auto f = generate_gaussians(spec, {peak}, 1.4, 6);
    auto diagram = compute_cerf_diagram(f);
    auto g = tracking_graph(diagram);
    auto tracks = maxima_tracks(g, diagram, 2);
    REQUIRE(tracks.size() >= 1);

    const std::vector<double> on_peak{3.0, 3.0};
    auto hit = seed_search(g, diagram, f, on_peak, 0.75, 0.4, false, tracks);
    REQUIRE(hit.size() == 1);
    CHECK(diagram.arcs[static_cast<std::size_t>(hit[0].arcs[0])].vertex ==
          spec.vertex_at(std::array<std::uint32_t, 2>{3, 3}));

    const std::vector<double> far{10.0, 10.0};
    CHECK(seed_search(g, diagram, f, far, 0.6, 0.4, false, tracks).empty());
    CHECK_THROWS_AS(seed_search(g, diagram, f, on_peak, -1.0, 0.4, false, tracks), ConfigError);
}
