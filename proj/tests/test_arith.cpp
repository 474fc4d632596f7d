#include <catch2/catch_amalgamated.hpp>

#include <lenspine/arith.hpp>

using lenspine::Int;

namespace {

// Independent oracle: run the subtractive algorithm literally, one
// subtraction at a time, on the unordered pair.
Int subtractive_steps_literal(Int a, Int b) {
    Int count = 0;
    while (a != 0 && b != 0) {
        if (a < b) std::swap(a, b);
        a -= b;
        ++count;
    }
    return count;
}

} // namespace

TEST_CASE("euclid_subtractive matches the literal subtraction count") {
    for (int p = 1; p <= 120; ++p)
        for (int q = 0; q <= p; ++q)
            CHECK(lenspine::euclid_subtractive(p, q) == subtractive_steps_literal(p, q));
}

TEST_CASE("euclid_subtractive anchor values") {
    CHECK(lenspine::euclid_subtractive(5, 1) == 5);
    CHECK(lenspine::euclid_subtractive(7, 0) == 0);
    CHECK(lenspine::euclid_subtractive(34, 13) == 8);
    // Unordered-pair normalization.
    CHECK(lenspine::euclid_subtractive(13, 34) == 8);
    // Non-coprime pairs terminate at (gcd, 0).
    CHECK(lenspine::euclid_subtractive(6, 4) == subtractive_steps_literal(6, 4));
    CHECK_THROWS_AS(lenspine::euclid_subtractive(0, 0), std::invalid_argument);
}

TEST_CASE("continued_fraction canonical coefficients") {
    auto cf = lenspine::continued_fraction(34, 13);
    CHECK(cf.coefficients == std::vector<Int>{2, 1, 1, 1, 1, 2});
    CHECK(cf.sum() == 8);

    CHECK(lenspine::continued_fraction(5, 1).coefficients == std::vector<Int>{5});
    CHECK(lenspine::continued_fraction(5, 2).coefficients == std::vector<Int>{2, 2});

    CHECK_THROWS_AS(lenspine::continued_fraction(5, 5), std::invalid_argument);
    CHECK_THROWS_AS(lenspine::continued_fraction(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(lenspine::continued_fraction(6, 4), std::invalid_argument);
}

TEST_CASE("continued_fraction reconstructs p/q and has canonical tail") {
    for (int p = 2; p <= 150; ++p) {
        for (int q = 1; q < p; ++q) {
            if (lenspine::gcd(p, q) != 1) continue;
            auto cf = lenspine::continued_fraction(p, q);
            auto [num, den] = cf.reconstruct();
            CHECK(num == p);
            CHECK(den == q);
            if (cf.length() > 1) CHECK(cf.coefficients.back() >= 2);
            CHECK(cf.sum() == lenspine::euclid_subtractive(p, q));
        }
    }
}

TEST_CASE("euclid_trace anchor sequences") {
    auto t = lenspine::euclid_trace(34, 13);
    CHECK(t.remainders == std::vector<Int>{34, 13, 8, 5, 3, 2, 1, 0});
    CHECK(t.convergents_num == std::vector<Int>{1, 2, 3, 5, 8, 13, 34});

    auto t2 = lenspine::euclid_trace(5, 2);
    CHECK(t2.remainders == std::vector<Int>{5, 2, 1, 0});
    CHECK(t2.convergents_num == std::vector<Int>{1, 2, 5});

    auto t3 = lenspine::euclid_trace(11, 1);
    CHECK(t3.remainders == std::vector<Int>{11, 1, 0});
    CHECK(t3.convergents_num == std::vector<Int>{1, 11});
}

TEST_CASE("euclid_trace invariants hold across a range") {
    for (int p = 2; p <= 120; ++p) {
        for (int q = 1; q < p; ++q) {
            if (lenspine::gcd(p, q) != 1) continue;
            auto t = lenspine::euclid_trace(p, q);
            const std::size_t k = t.length();
            REQUIRE(t.remainders.size() == k + 2);
            REQUIRE(t.convergents_num.size() == k + 1);
            // r_{i-1} = n_i r_i + r_{i+1}, 0 <= r_{i+1} < r_i
            for (std::size_t i = 1; i <= k; ++i) {
                CHECK(t.remainders[i - 1] ==
                      t.coefficients[i - 1] * t.remainders[i] + t.remainders[i + 1]);
                CHECK(t.remainders[i + 1] >= 0);
                CHECK(t.remainders[i + 1] < t.remainders[i]);
            }
            // p_i = n_i p_{i-1} + p_{i-2}
            for (std::size_t i = 2; i <= k; ++i)
                CHECK(t.convergents_num[i] ==
                      t.coefficients[i - 1] * t.convergents_num[i - 1] + t.convergents_num[i - 2]);
            // p = p_i r_i + p_{i-1} r_{i+1} for 1 <= i <= k-1
            for (std::size_t i = 1; i + 1 <= k; ++i)
                CHECK(Int(p) == t.convergents_num[i] * t.remainders[i] +
                                    t.convergents_num[i - 1] * t.remainders[i + 1]);
            CHECK(t.convergents_num[k] == p);
            CHECK(t.convergents_den[k] == q);
        }
    }
}

TEST_CASE("mod_inverse anchors and range") {
    CHECK(lenspine::mod_inverse(13, 34) == 21);
    CHECK(lenspine::mod_inverse(1, 7) == 1);
    CHECK(lenspine::mod_inverse(2, 5) == 3);
    CHECK_THROWS_AS(lenspine::mod_inverse(6, 4), std::invalid_argument);
    for (int p = 2; p <= 80; ++p)
        for (int q = 1; q < p; ++q) {
            if (lenspine::gcd(p, q) != 1) continue;
            Int r = lenspine::mod_inverse(q, p);
            CHECK(r > 0);
            CHECK(r < p);
            CHECK((r * q) % p == 1);
        }
}

TEST_CASE("complement and inverse identities of E on a sample range") {
    for (int p = 2; p <= 150; ++p)
        for (int q = 1; q < p; ++q) {
            if (lenspine::gcd(p, q) != 1) continue;
            CHECK(lenspine::euclid_subtractive(p, q) == lenspine::euclid_subtractive(p, p - q));
            Int r = lenspine::mod_inverse(q, p);
            CHECK(lenspine::euclid_subtractive(p, q) == lenspine::euclid_subtractive(Int(p), r));
        }
}

TEST_CASE("convergent congruence p_i q == (-1)^i r_{i+1} mod p") {
    for (int p = 2; p <= 120; ++p)
        for (int q = 1; q < p; ++q) {
            if (lenspine::gcd(p, q) != 1) continue;
            auto t = lenspine::euclid_trace(p, q);
            for (std::size_t i = 0; i <= t.length(); ++i) {
                Int lhs = (t.convergents_num[i] * q) % p;
                Int rhs = (i % 2 == 0 ? t.remainders[i + 1] : p - t.remainders[i + 1]) % p;
                CHECK(lhs == rhs);
            }
        }
}

TEST_CASE("coefficient-convergent sum identity in both forms") {
    for (int p = 3; p <= 120; ++p)
        for (int q = 1; q < p; ++q) {
            if (lenspine::gcd(p, q) != 1) continue;
            auto t = lenspine::euclid_trace(p, q);
            const std::size_t k = t.length();
            for (std::size_t j = 1; j <= k; ++j) {
                Int s = 0;
                for (std::size_t i = 1; i <= j; ++i)
                    s += t.convergents_num[i - 1] * t.coefficients[i - 1];
                CHECK(s == t.convergents_num[j] + t.convergents_num[j - 1] - 1);
            }
            for (std::size_t j = 2; j <= k; ++j) {
                Int s = t.coefficients[0] - 2;
                for (std::size_t i = 2; i + 1 <= j; ++i)
                    s += t.convergents_num[i - 1] * t.coefficients[i - 1];
                s += t.convergents_num[j - 1] * (t.coefficients[j - 1] - 1);
                CHECK(s == t.convergents_num[j] - 3);
            }
        }
}

TEST_CASE("p / r_i > p_i for i = 1..k-1") {
    for (int p = 3; p <= 120; ++p)
        for (int q = 1; q < p; ++q) {
            if (lenspine::gcd(p, q) != 1) continue;
            auto t = lenspine::euclid_trace(p, q);
            for (std::size_t i = 1; i + 1 <= t.length(); ++i)
                CHECK(Int(p) > t.convergents_num[i] * t.remainders[i]);
        }
}

TEST_CASE("Reversed continued fraction represents p/s with s == (-1)^{k-1} r mod p") {
    for (int p = 3; p <= 150; ++p)
        for (int q = 2; 2 * q < p; ++q) {
            if (lenspine::gcd(p, q) != 1) continue;
            auto cf = lenspine::continued_fraction(p, q);
            lenspine::ContinuedFraction rev;
            rev.coefficients.assign(cf.coefficients.rbegin(), cf.coefficients.rend());
            auto [num, den] = rev.reconstruct();
            CHECK(num == p);
            Int r = lenspine::mod_inverse(q, p);
            Int expect = (cf.length() % 2 == 1) ? r : (p - r) % p;
            CHECK(den % p == expect);
        }
}
