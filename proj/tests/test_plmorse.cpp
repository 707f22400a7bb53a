#include <doctest.h>

#include <cmath>
#include <random>

#include "plcerf/plmorse.hpp"

using namespace plcerf;

namespace {

// 5x5 grid; center vertex 12 has the 6-ring
// 13=(3,2), 18=(3,3), 17=(2,3), 11=(1,2), 6=(1,1), 7=(2,1).
SimplicialComplex grid5() { return freudenthal_2d(GridSpec({5, 5}, {false, false})); }

// 1D cycle on n vertices.
SimplicialComplex circle(VertexId n) {
    std::vector<VertexId> cells;
    for (VertexId i = 0; i < n; ++i) {
        const VertexId a = i, b = (i + 1) % n;
        cells.push_back(std::min(a, b));
        cells.push_back(std::max(a, b));
    }
    return SimplicialComplex(1, n, std::move(cells));
}

} // namespace

TEST_CASE("homological_index: minimum, maximum, saddle") {
    auto c = grid5();
    std::vector<double> vals(25, 1.0);

    vals[12] = 0.0;
    auto bmin = homological_index(c, Valuation(vals), 12);
    CHECK(bmin[0] == 1);
    CHECK(bmin[1] == 0);
    CHECK(bmin[2] == 0);

    vals[12] = 2.0;
    auto bmax = homological_index(c, Valuation(vals), 12);
    CHECK(bmax[0] == 0);
    CHECK(bmax[1] == 0);
    CHECK(bmax[2] == 1);

    // two opposite lower neighbors: two isolated points in the link
    std::fill(vals.begin(), vals.end(), 5.0);
    vals[12] = 3.0;
    vals[13] = 1.0; // (3,2)
    vals[11] = 1.0; // (1,2)
    auto bsad = homological_index(c, Valuation(vals), 12);
    CHECK(bsad[0] == 0);
    CHECK(bsad[1] == 1);
    CHECK(bsad[2] == 0);
}

TEST_CASE("classify_vertex: regular, monkey saddle, minimum") {
    auto c = grid5();
    std::vector<double> vals(25, 5.0);
    vals[12] = 3.0;

    SUBCASE("one contiguous lower arc is regular") {
        vals[13] = 1.0;
        vals[18] = 1.0;
        vals[17] = 1.0;
        auto cls = classify_vertex(c, Valuation(vals), 12);
        CHECK(cls.regular());
    }
    SUBCASE("three interleaved lower arcs form a monkey saddle") {
        vals[13] = 1.0; // (3,2)
        vals[17] = 1.0; // (2,3)
        vals[6] = 1.0;  // (1,1)
        auto cls = classify_vertex(c, Valuation(vals), 12);
        CHECK(cls.kind == VertexClass::Kind::Critical);
        CHECK(cls.index == 1);
        CHECK(cls.multiplicity == 2);
        CHECK_FALSE(cls.simple());
    }
    SUBCASE("minimum") {
        vals[12] = 0.0;
        auto cls = classify_vertex(c, Valuation(vals), 12);
        CHECK(cls.kind == VertexClass::Kind::Critical);
        CHECK(cls.index == 0);
        CHECK(cls.multiplicity == 1);
        CHECK(cls.simple());
    }
}

TEST_CASE("critical_points: Morse counts balance chi") {
    auto torus = freudenthal_2d(GridSpec({4, 4}, {true, true}));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uni(0, 1);
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<double> vals(torus.vertex_count());
        for (auto& x : vals) x = uni(rng);
        auto crit = critical_points(torus, Valuation(vals));
        long long sum = 0;
        bool has_min = false, has_max = false;
        for (const auto& [v, cls] : crit) {
            sum += cls.betti.alternating_sum();
            if (cls.kind == VertexClass::Kind::Critical && cls.index == 0) has_min = true;
            if (cls.kind == VertexClass::Kind::Critical && cls.index == 2) has_max = true;
        }
        CHECK(sum == 0); // chi of the torus
        CHECK(has_min);
        CHECK(has_max);
    }
}

TEST_CASE("critical_points: constant field on a circle leaves only tie-break extremes") {
    auto c = circle(8);
    std::vector<double> vals(8, 1.0);
    auto crit = critical_points(c, Valuation(vals));
    REQUIRE(crit.size() == 2);
    CHECK(crit[0].first == 0);
    CHECK(crit[0].second.index == 0); // id 0 is the tie-broken minimum
    CHECK(crit[1].first == 7);
    CHECK(crit[1].second.index == 1); // id 7 the maximum
    CHECK(is_pl_morse(c, Valuation(vals)));
}

TEST_CASE("is_pl_morse: detects the monkey saddle") {
    auto c = grid5();
    std::vector<double> vals(25, 5.0);
    vals[12] = 3.0;
    vals[13] = 1.0;
    vals[17] = 1.0;
    vals[6] = 1.0;
    CHECK_FALSE(is_pl_morse(c, Valuation(vals)));
}

TEST_CASE("classification is invariant under monotone reparametrization") {
    auto c = freudenthal_2d(GridSpec({5, 4}, {true, false}));
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(-1, 1);
    std::vector<double> vals(c.vertex_count());
    for (auto& x : vals) x = uni(rng);
    std::vector<double> mapped(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) mapped[i] = std::exp(2.0 * vals[i]) + 1.0;
    for (VertexId v = 0; v < c.vertex_count(); ++v)
        CHECK(classify_vertex(c, Valuation(vals), v).betti ==
              classify_vertex(c, Valuation(mapped), v).betti);
}

TEST_CASE("ecc_lower_star: 3-cycle staircase") {
    auto c = circle(3);
    std::vector<double> vals{1.0, 2.0, 3.0};
    auto ecc = ecc_lower_star(c, Valuation(vals));
    CHECK(ecc(0.5) == 0);
    CHECK(ecc(1.0) == 1); // point
    CHECK(ecc(2.5) == 1); // arc
    CHECK(ecc(3.0) == 0); // full circle
    CHECK(ecc(99.0) == 0);
}

TEST_CASE("ecc_lower_star: saturation equals chi of the manifold") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> uni(0, 1);

    auto disk = freudenthal_2d(GridSpec({5, 5}, {false, false}));
    std::vector<double> v1(disk.vertex_count());
    for (auto& x : v1) x = uni(rng);
    CHECK(ecc_lower_star(disk, Valuation(v1))(2.0) == 1);

    auto torus = freudenthal_2d(GridSpec({4, 5}, {true, true}));
    std::vector<double> v2(torus.vertex_count());
    for (auto& x : v2) x = uni(rng);
    CHECK(ecc_lower_star(torus, Valuation(v2))(2.0) == 0);
}

TEST_CASE("ecc_lower_star agrees with explicit sublevel counting") {
    // independent oracle: chi of the sublevel complex by brute-force
    // enumeration over all faces at a few thresholds
    auto c = freudenthal_2d(GridSpec({4, 4}, {true, false}));
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> uni(0, 1);
    std::vector<double> vals(c.vertex_count());
    for (auto& x : vals) x = uni(rng);
    Valuation val(vals);
    auto ecc = ecc_lower_star(c, val);

    SubComplex all;
    for (std::size_t ci = 0; ci < c.cell_count(); ++ci) all.insert_closed(c.cell(ci));
    all.finalize();
    auto chi_sublevel = [&](double s) {
        long long chi = 0;
        for (int k = 0; k <= all.max_dim(); ++k) {
            for (std::size_t i = 0; i < all.count(k); ++i) {
                auto simplex = all.simplex(k, i);
                double entry = -1e300;
                for (VertexId v : simplex) entry = std::max(entry, val[v]);
                if (entry <= s) chi += (k % 2 == 0) ? 1 : -1;
            }
        }
        return chi;
    };

    for (double s : {0.05, 0.2, 0.35, 0.5, 0.61, 0.8, 0.95, 1.2})
        CHECK(ecc(s) == chi_sublevel(s));
    for (VertexId v = 0; v < c.vertex_count(); ++v)
        CHECK(ecc(vals[v]) == chi_sublevel(vals[v]));
}

TEST_CASE("morse relation: total alternating index equals chi") {
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> uni(0, 1);
    auto torus = freudenthal_2d(GridSpec({5, 4}, {true, true}));
    auto box = freudenthal_3d(GridSpec({3, 3, 4}, {false, false, false}));
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<double> v1(torus.vertex_count()), v2(box.vertex_count());
        for (auto& x : v1) x = uni(rng);
        for (auto& x : v2) x = uni(rng);
        long long s1 = 0, s2 = 0;
        for (VertexId v = 0; v < torus.vertex_count(); ++v)
            s1 += homological_index(torus, Valuation(v1), v).alternating_sum();
        for (VertexId v = 0; v < box.vertex_count(); ++v)
            s2 += homological_index(box, Valuation(v2), v).alternating_sum();
        CHECK(s1 == 0);
        CHECK(s2 == 1);
    }
}

TEST_CASE("StepFunction: jump included at the breakpoint") {
    StepFunction f({1.0, 2.0}, {5, -3});
    CHECK(f(0.99) == 0);
    CHECK(f(1.0) == 5);
    CHECK(f(1.5) == 5);
    CHECK(f(2.0) == 2);
    CHECK(f(3.0) == 2);
    CHECK_THROWS_AS(StepFunction({2.0, 1.0}, {1, 1}), DataError);
}
