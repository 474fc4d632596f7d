#include <catch2/catch_amalgamated.hpp>

#include <lenspine/construct.hpp>

using lenspine::Diagonal;
using lenspine::Triangulation;

TEST_CASE("fan_flip_sequence anchors") {
    auto s3 = lenspine::fan_flip_sequence(3);
    CHECK(s3.length() == 0);

    auto s4 = lenspine::fan_flip_sequence(4);
    CHECK(s4.length() == 1);
    CHECK(s4.end() == Triangulation::from_diagonals(4, {{1, 3}}));

    auto s6 = lenspine::fan_flip_sequence(6);
    CHECK(s6.length() == 3);
    CHECK(s6.end() == Triangulation::fan(6, 1));
}

TEST_CASE("fan_flip_sequence: length p-3, valid intermediates, k-th flip creates {1, k+3}") {
    for (int p = 4; p <= 20; ++p) {
        auto seq = lenspine::fan_flip_sequence(p);
        CHECK(static_cast<int>(seq.length()) == p - 3);
        Triangulation cur = seq.start;
        int k = 0;
        for (const auto& d : seq.flips) {
            Triangulation next = lenspine::flip(cur, d); // throws if d is absent
            CHECK(next.contains(Diagonal(1, (k + 3) % p)));
            cur = next;
            ++k;
        }
        CHECK(cur == lenspine::rotate(seq.start, 1));
    }
}

TEST_CASE("perturbed_points anchors") {
    auto pts = lenspine::perturbed_points(34, 13, 0.007);
    CHECK(pts.convex_position);
    CHECK(pts.coords[0][0] == Catch::Approx(1.0));
    CHECK(pts.coords[0][1] == Catch::Approx(0.0).margin(1e-15));

    auto flat = lenspine::perturbed_points(12, 5, 0.0);
    CHECK(flat.convex_position); // circle points are strictly convex
    for (auto& c : flat.coords)
        CHECK(c[0] * c[0] + c[1] * c[1] == Catch::Approx(1.0));

    // Large eccentricity breaks convex position.
    auto wild = lenspine::perturbed_points(16, 7, 0.9);
    CHECK_FALSE(wild.convex_position);
}

TEST_CASE("delaunay of the regular p-gon reports cocircular degeneracy") {
    // All p points on one circle: every incircle test ties, which the result
    // reports; the returned triangulation is one of the (all Delaunay) ones.
    auto flat = lenspine::perturbed_points(8, 3, 0.0);
    auto res = lenspine::delaunay_of_convex_points(flat);
    CHECK(res.had_ties);
    CHECK(res.triangulation.polygon_size() == 8);
}

TEST_CASE("delaunay on a perturbed square picks the separating diagonal") {
    // Point 2 pushed outward: {1,3} becomes the Delaunay diagonal.
    std::vector<std::array<double, 2>> sq = {{0, 0}, {1, 0}, {1.2, 1.2}, {0, 1}};
    auto res = lenspine::delaunay_of_convex_points(sq);
    CHECK_FALSE(res.had_ties);
    CHECK(res.triangulation == Triangulation::from_diagonals(4, {{1, 3}}));

    // Exact square: cocircular tie reported, triangulation still returned.
    std::vector<std::array<double, 2>> exact_sq = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    auto tie = lenspine::delaunay_of_convex_points(exact_sq);
    CHECK(tie.had_ties);
}

TEST_CASE("optimal_triangulation: fan cases") {
    auto r41 = lenspine::optimal_triangulation(4, 1);
    CHECK(r41.witness.length() == 1);
    CHECK(r41.witness.end() == lenspine::rotate(r41.triangulation, 1));

    auto r43 = lenspine::optimal_triangulation(4, 3);
    CHECK(r43.witness.length() == 1);
    CHECK(r43.witness.end() == lenspine::rotate(r43.triangulation, 3));

    auto r61 = lenspine::optimal_triangulation(6, 1);
    CHECK(r61.witness.length() == 3);

    auto r31 = lenspine::optimal_triangulation(3, 1);
    CHECK(r31.witness.length() == 0);
}

TEST_CASE("optimal_triangulation (7,2): two-flip witness with extremal profile") {
    auto r = lenspine::optimal_triangulation(7, 2);
    CHECK(r.witness.length() == 2);
    CHECK(r.certificate.destroyed_total == 2);
    CHECK(r.certificate.extremal);
    CHECK(r.witness.end() == lenspine::rotate(r.triangulation, 2));
    // The sine-height Delaunay is not optimal for this pair; the certified
    // enumeration fallback provides the triangulation and the grid failures
    // stay visible in the diagnostics.
    CHECK(r.from_exhaustive);
    CHECK_FALSE(r.diagnostics.empty());
}

TEST_CASE("optimal_triangulation (34,13): the Fig. 6 instance") {
    auto r = lenspine::optimal_triangulation(34, 13);
    CHECK(r.witness.length() == 5);
    CHECK(r.certificate.destroyed_total == 5);
    CHECK(r.certificate.extremal);
    CHECK(r.certificate.profile == lenspine::LengthProfile{{0, 2, 3, 5, 8, 13}});
    CHECK(r.witness.end() == lenspine::rotate(r.triangulation, 13));
    CHECK(r.eccentricity == 0.007); // 0.02 and 0.01 leave convex position
    CHECK_FALSE(r.from_exhaustive);
    // Per-group destruction is exactly s_i / p_{i-1} on the optimal triangulation.
    for (std::size_t i = 0; i < r.certificate.per_group_bound.size(); ++i)
        CHECK(r.certificate.per_group_destroyed[i] == r.certificate.per_group_bound[i]);
}

TEST_CASE("optimal witness length equals the exhaustive minimum, p <= 12") {
    for (int p = 3; p <= 12; ++p)
        for (int q = 1; q < p; ++q) {
            if (lenspine::gcd(p, q) != 1) continue;
            auto r = lenspine::optimal_triangulation(p, q);
            auto [dmin, argmin] = lenspine::min_rotation_distance(p, q);
            CHECK(static_cast<int>(r.witness.length()) == dmin);
            CHECK(r.witness.end() == lenspine::rotate(r.triangulation, q));
            // Rotation destroys exactly ceil(s_i / p_{i-1}) diagonals of each
            // length group on the certified optimal triangulation.
            for (std::size_t i = 0; i < r.certificate.per_group_bound.size(); ++i)
                CHECK(r.certificate.per_group_destroyed[i] == r.certificate.per_group_bound[i]);
        }
}

TEST_CASE("optimal_triangulation rejects bad input") {
    CHECK_THROWS_AS(lenspine::optimal_triangulation(6, 2), std::invalid_argument);
    CHECK_THROWS_AS(lenspine::optimal_triangulation(6, 0), std::invalid_argument);
}

TEST_CASE("points_csv shape") {
    auto pts = lenspine::perturbed_points(5, 2, 0.01);
    auto csv = lenspine::points_csv(pts);
    CHECK(csv.rfind("k,x,y\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6); // header + 5 rows
}
