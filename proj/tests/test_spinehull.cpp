#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <lenspine/spinehull.hpp>

using lenspine::OrbitConfig;

TEST_CASE("orbit_points: unit norm, distinct, first point explicit") {
    OrbitConfig cfg{5, 2};
    auto pts = lenspine::orbit_points(cfg);
    REQUIRE(pts.size() == 5);
    for (const auto& x : pts) {
        double n = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3];
        CHECK(n == Catch::Approx(1.0).epsilon(1e-12));
    }
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            double d = 0;
            for (int c = 0; c < 4; ++c) d += (pts[i][c] - pts[j][c]) * (pts[i][c] - pts[j][c]);
            CHECK(d > 1e-6);
        }

    double ct = std::cos(cfg.theta), st = std::sin(cfg.theta);
    CHECK(pts[0][0] == Catch::Approx(ct * std::cos(cfg.phi1)));
    CHECK(pts[0][1] == Catch::Approx(ct * std::sin(cfg.phi1)));
    CHECK(pts[0][2] == Catch::Approx(st * std::cos(cfg.phi2)));
    CHECK(pts[0][3] == Catch::Approx(st * std::sin(cfg.phi2)));

    CHECK_THROWS_AS(lenspine::orbit_points(OrbitConfig{5, 2, 0.0, 0, 0}), std::invalid_argument);
    // Core-circle base point on request: a planar regular p-gon.
    auto flat = lenspine::orbit_points(OrbitConfig{5, 1, 1e-9, 0, 0}, true);
    CHECK(flat.size() == 5);
}

TEST_CASE("hull of the (5,2) orbit is the 4-simplex") {
    auto hull = lenspine::convex_hull_4d(OrbitConfig{5, 2}.evaluator());
    CHECK(hull.facets.size() == 5);
    CHECK(hull.all_simplicial);
    auto brute = lenspine::convex_hull_4d_bruteforce(OrbitConfig{5, 2}.evaluator());
    CHECK(brute.facet_sets() == hull.facet_sets());
    CHECK(lenspine::euler_characteristic_is_zero(hull));
}

TEST_CASE("hull of the (7,2) orbit has 14 facets") {
    auto hull = lenspine::convex_hull_4d(OrbitConfig{7, 2}.evaluator());
    CHECK(hull.facets.size() == 14);
    CHECK(hull.all_simplicial);
    auto brute = lenspine::convex_hull_4d_bruteforce(OrbitConfig{7, 2}.evaluator());
    CHECK(brute.facet_sets() == hull.facet_sets());
}

TEST_CASE("hull of an even-p orbit (centrally symmetric, exact incidences)") {
    auto eval = OrbitConfig{8, 3}.evaluator();
    auto hull = lenspine::convex_hull_4d(eval);
    CHECK(hull.facets.size() == 16); // 8 * (E(8,3) - 3)
    CHECK(hull.all_simplicial);
    auto brute = lenspine::convex_hull_4d_bruteforce(eval);
    CHECK(brute.all_simplicial);
    CHECK(brute.facet_sets() == hull.facet_sets());
    CHECK(lenspine::euler_characteristic_is_zero(hull));
}

TEST_CASE("hull rejects the flat q = 1 orbit as lower-dimensional") {
    CHECK_THROWS_AS(lenspine::convex_hull_4d(OrbitConfig{7, 1}.evaluator()),
                    lenspine::DegenerateInput);
    CHECK_THROWS_AS(lenspine::convex_hull_4d_bruteforce(OrbitConfig{6, 5}.evaluator()),
                    lenspine::DegenerateInput);
}

TEST_CASE("hull facet normals point outward") {
    auto eval = OrbitConfig{7, 3}.evaluator();
    auto hull = lenspine::convex_hull_4d(eval);
    for (const auto& f : hull.facets) {
        auto a = eval.approx(f.vertices[0]);
        for (int x = 0; x < 7; ++x) {
            auto px = eval.approx(x);
            double side = 0;
            for (int c = 0; c < 4; ++c) side += f.outward_normal[c] * (px[c] - a[c]);
            CHECK(side < 1e-9);
        }
    }
}

TEST_CASE("spine_summary anchors") {
    auto s52 = lenspine::spine_summary(OrbitConfig{5, 2});
    CHECK(s52.facet_count == 5);
    CHECK(s52.spine_vertex_count == 1);
    CHECK(s52.monodromy_r == 3);
    CHECK(s52.action_invariant);
    CHECK(s52.action_free);

    auto s72 = lenspine::spine_summary(OrbitConfig{7, 2});
    CHECK(s72.spine_vertex_count == 2);
    CHECK(s72.monodromy_r == 4);

    CHECK_THROWS_AS(lenspine::spine_summary(OrbitConfig{7, 1}), lenspine::DegenerateInput);
    CHECK_THROWS_AS(lenspine::spine_summary(OrbitConfig{7, 6}), lenspine::DegenerateInput);
    CHECK_THROWS_AS(lenspine::spine_summary(OrbitConfig{6, 3}), std::invalid_argument);
}

TEST_CASE("spine vertex count equals E(p,q) - 3 on a sample") {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{7, 3}, {8, 3}, {11, 3}, {12, 5}, {13, 5}}) {
        auto s = lenspine::spine_summary(OrbitConfig{p, q});
        long long target = lenspine::euclid_subtractive(p, q).convert_to<long long>() - 3;
        CHECK(s.facet_count == p * target);
        CHECK(s.spine_vertex_count == target);
        CHECK((s.monodromy_r * q) % p == 1);
    }
}

TEST_CASE("basepoint invariance") {
    CHECK(lenspine::basepoint_invariance(7, 2, 5));
    CHECK(lenspine::basepoint_invariance(11, 3, 3));
    CHECK_THROWS_AS(lenspine::basepoint_invariance(7, 2, 1), std::invalid_argument);
}

TEST_CASE("sphere vs ambient Voronoi nearest agree") {
    auto pts = lenspine::orbit_points(OrbitConfig{5, 2});
    auto rep = lenspine::sphere_voronoi_restriction_check(pts, 10000);
    CHECK(rep.all_agree);
    CHECK(rep.ties == 0);

    // Antipodal pair on an embedded S^1: chord and arc orders agree; the
    // sample at angle pi/4 is equidistant from neither.
    std::vector<std::array<double, 4>> two = {{1, 0, 0, 0}, {-1, 0, 0, 0}};
    auto r2 = lenspine::sphere_voronoi_restriction_check(two, 32, 7);
    CHECK(r2.all_agree);

    // A direction equidistant from two sites is reported as a tie.
    std::vector<std::array<double, 4>> sym = {{1, 0, 0, 0}, {0, 1, 0, 0}};
    int tie_seen = 0;
    for (unsigned seed = 0; seed < 4; ++seed) {
        auto r = lenspine::sphere_voronoi_restriction_check(sym, 2000, seed);
        tie_seen += r.ties;
        CHECK(r.all_agree);
    }
    CHECK(tie_seen == 0); // random directions avoid the bisector almost surely
}

TEST_CASE("explicit bisector direction ties") {
    std::vector<std::array<double, 4>> sym = {{1, 0, 0, 0}, {0, 1, 0, 0}};
    // Direct check of the tie route via a handcrafted sampler is not exposed;
    // instead verify the underlying quantities: the midpoint direction is
    // equidistant in both metrics.
    std::array<double, 4> mid = {std::sqrt(0.5), std::sqrt(0.5), 0, 0};
    double d0 = 0, d1 = 0;
    for (int c = 0; c < 4; ++c) {
        d0 += (mid[c] - sym[0][c]) * (mid[c] - sym[0][c]);
        d1 += (mid[c] - sym[1][c]) * (mid[c] - sym[1][c]);
    }
    CHECK(d0 == Catch::Approx(d1));
}
