#include <catch2/catch_amalgamated.hpp>

#include <lenspine/bounds.hpp>

using lenspine::EuclidTrace;
using lenspine::Int;
using lenspine::LengthProfile;
using lenspine::Triangulation;

TEST_CASE("long_diagonal_lower_bound anchors") {
    CHECK(lenspine::long_diagonal_lower_bound(12, 3) == 1);
    CHECK(lenspine::long_diagonal_lower_bound(6, 2) == 0);
    CHECK(lenspine::long_diagonal_lower_bound(34, 13) == 0); // ceil(34/13) = 3
    CHECK(lenspine::long_diagonal_lower_bound(6, 3) == -1);  // vacuous
    CHECK_THROWS_AS(lenspine::long_diagonal_lower_bound(12, 1), std::invalid_argument);
    CHECK_THROWS_AS(lenspine::long_diagonal_lower_bound(12, 7), std::invalid_argument);
}

TEST_CASE("profile_ceiling_sum anchors") {
    auto t34 = lenspine::euclid_trace(34, 13);
    CHECK(lenspine::profile_ceiling_sum(LengthProfile{{0, 2, 3, 5, 8, 13}}, t34) == 5);

    auto t7 = lenspine::euclid_trace(7, 1);
    CHECK(lenspine::profile_ceiling_sum(LengthProfile{{4}}, t7) == 4); // k=1: bare sum

    auto t5 = lenspine::euclid_trace(5, 2);
    CHECK(lenspine::profile_ceiling_sum(LengthProfile{{0, 2}}, t5) == 1);

    CHECK_THROWS_AS(lenspine::profile_ceiling_sum(LengthProfile{{1}}, t5), std::invalid_argument);
}

TEST_CASE("extremal_profile anchors") {
    CHECK(lenspine::extremal_profile(lenspine::euclid_trace(34, 13)) ==
          LengthProfile{{0, 2, 3, 5, 8, 13}});
    CHECK(lenspine::extremal_profile(lenspine::euclid_trace(5, 2)) == LengthProfile{{0, 2}});
    CHECK(lenspine::extremal_profile(lenspine::euclid_trace(7, 2)) == LengthProfile{{1, 3}});
    CHECK_THROWS_AS(lenspine::extremal_profile(lenspine::euclid_trace(7, 1)), std::invalid_argument);
    CHECK_THROWS_AS(lenspine::extremal_profile(lenspine::euclid_trace(7, 5)), std::invalid_argument);
}

TEST_CASE("extremal_profile sums to p-3") {
    for (int p = 5; p <= 200; ++p)
        for (int q = 2; 2 * q < p; ++q) {
            if (lenspine::gcd(p, q) != 1) continue;
            auto prof = lenspine::extremal_profile(lenspine::euclid_trace(p, q));
            CHECK(prof.total() == p - 3);
        }
}

TEST_CASE("profile oracle anchors") {
    auto r5 = lenspine::min_profile_ceiling_sum(lenspine::euclid_trace(5, 2));
    CHECK(r5.minimum == 1);
    CHECK(r5.unique);
    CHECK(r5.argmin == LengthProfile{{0, 2}});

    auto r9 = lenspine::min_profile_ceiling_sum(lenspine::euclid_trace(9, 1));
    CHECK(r9.minimum == 6);
    CHECK(r9.unique);
    CHECK(r9.argmin == LengthProfile{{6}});

    auto r34 = lenspine::min_profile_ceiling_sum(lenspine::euclid_trace(34, 13));
    CHECK(r34.minimum == 5);
    CHECK(r34.unique);
    CHECK(r34.argmin == LengthProfile{{0, 2, 3, 5, 8, 13}});

    CHECK_THROWS_AS(lenspine::min_profile_ceiling_sum(lenspine::euclid_trace(1000, 999)),
                    std::invalid_argument);
}

TEST_CASE("profile oracle equals E-3 with the extremal minimizer on a sample") {
    for (int p = 4; p <= 40; ++p)
        for (int q = 2; 2 * q < p; ++q) {
            if (lenspine::gcd(p, q) != 1) continue;
            Int e = lenspine::euclid_subtractive(p, q);
            if (e > lenspine::kDefaultProfileOracleCap) continue;
            auto trace = lenspine::euclid_trace(p, q);
            auto r = lenspine::min_profile_ceiling_sum(trace);
            CHECK(r.minimum == e.convert_to<long long>() - 3);
            CHECK(r.unique);
            CHECK(r.argmin == lenspine::extremal_profile(trace));
        }
}

TEST_CASE("raising the sum target by d*p_{k-1} raises the oracle minimum by d") {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{5, 2}, {7, 2}, {12, 5}, {34, 13}}) {
        auto trace = lenspine::euclid_trace(p, q);
        auto base = lenspine::min_profile_ceiling_sum(trace);
        auto st_k = trace.length();
        for (long long d = 1; d <= 3; ++d) {
            auto shifted = lenspine::min_profile_ceiling_sum(trace, d);
            CHECK(shifted.minimum == base.minimum + d);
            CHECK(shifted.unique);
            // Equality profile: only the last entry grows, by d*p_{k-1}.
            auto expect = lenspine::extremal_profile(trace);
            expect.counts[st_k - 1] +=
                d * trace.convergents_num[st_k - 1].convert_to<long long>();
            CHECK(shifted.argmin == expect);
        }
    }
}

TEST_CASE("certify anchors") {
    auto square = Triangulation::from_diagonals(4, {{0, 2}});
    auto c1 = lenspine::certify(square, 1);
    CHECK(c1.bound_value == 1);
    CHECK(c1.target == 1);
    CHECK(c1.extremal);
    CHECK(c1.destroyed_total == 1);

    auto fan6 = Triangulation::fan(6);
    auto c2 = lenspine::certify(fan6, 1);
    CHECK(c2.bound_value == 3);
    CHECK(c2.target == 3);

    CHECK_THROWS_AS(lenspine::certify(fan6, 2), std::invalid_argument);
    CHECK_THROWS_AS(lenspine::certify(fan6, 0), std::invalid_argument);
}

TEST_CASE("certify: bound_value >= target whenever the profile is admissible") {
    for (int p = 4; p <= 10; ++p) {
        auto all = lenspine::all_triangulations(p);
        for (int q = 1; q < p; ++q) {
            if (lenspine::gcd(p, q) != 1) continue;
            for (const auto& t : all) {
                auto cert = lenspine::certify(t, q);
                bool admissible = std::all_of(cert.partial_sum_ok.begin(),
                                              cert.partial_sum_ok.end(),
                                              [](bool b) { return b; });
                CHECK(admissible); // (3_i) holds for every real triangulation
                CHECK(cert.bound_value >= cert.target);
                CHECK(cert.destroyed_meets_target());
            }
        }
    }
}

TEST_CASE("certify normalization: mirror(t) with p-q gives the same bound") {
    for (int p = 5; p <= 9; ++p) {
        auto all = lenspine::all_triangulations(p);
        for (int q = 1; q < p; ++q) {
            if (lenspine::gcd(p, q) != 1) continue;
            for (std::size_t i = 0; i < all.size(); i += 4) {
                auto a = lenspine::certify(all[i], q);
                auto b = lenspine::certify(lenspine::mirror(all[i]), p - q);
                CHECK(a.bound_value == b.bound_value);
                CHECK(a.destroyed_total == b.destroyed_total);
                CHECK(a.profile == b.profile);
            }
        }
    }
}
