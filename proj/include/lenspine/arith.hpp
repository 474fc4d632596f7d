// Exact integer arithmetic for the subtractive Euclid algorithm:
// step counts, continued fractions, convergents, remainders, modular inverses.
#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace lenspine {

using Int = boost::multiprecision::cpp_int;

inline Int gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

// Ceiling of a/b for b > 0.
inline Int ceil_div(const Int& a, const Int& b) {
    if (b <= 0) throw std::invalid_argument("ceil_div: denominator must be positive");
    Int q = a / b;
    if (a % b != 0 && a > 0) ++q;
    return q;
}

// Continued fraction p/q = n1 + 1/(n2 + 1/(... + 1/nk)).
// Canonical form: all coefficients positive, nk >= 2 when k > 1.
struct ContinuedFraction {
    std::vector<Int> coefficients;

    std::size_t length() const { return coefficients.size(); }

    // Sum of coefficients; equals the subtractive Euclid step count.
    Int sum() const {
        Int s = 0;
        for (const Int& n : coefficients) s += n;
        return s;
    }

    // Folds the coefficients back into a reduced fraction (num, den).
    std::pair<Int, Int> reconstruct() const {
        if (coefficients.empty())
            throw std::domain_error("ContinuedFraction: empty coefficient list");
        Int num = coefficients.back();
        Int den = 1;
        for (auto it = coefficients.rbegin() + 1; it != coefficients.rend(); ++it) {
            // x -> n + 1/x
            std::swap(num, den);
            num += *it * den;
        }
        return {num, den};
    }
};

// Remainders and convergents of the Euclid algorithm on (p, q):
//   r0 = p, r1 = q, r_{i-1} = n_i r_i + r_{i+1}, r_{k+1} = 0,
//   p0 = 1, q0 = 0, p_i = n_i p_{i-1} + p_{i-2}, same recurrence for q_i.
struct EuclidTrace {
    Int p, q;
    std::vector<Int> coefficients;    // n1..nk
    std::vector<Int> remainders;      // r0..r_{k+1}, size k+2
    std::vector<Int> convergents_num; // p0..pk, size k+1
    std::vector<Int> convergents_den; // q0..qk, size k+1

    std::size_t length() const { return coefficients.size(); }
};

namespace detail {

inline void check_cf_preconditions(const Int& p, const Int& q, const char* where) {
    if (q <= 0) throw std::invalid_argument(std::string(where) + ": q must be positive");
    if (q >= p) throw std::invalid_argument(std::string(where) + ": requires 0 < q < p");
    if (gcd(p, q) != 1) throw std::invalid_argument(std::string(where) + ": p and q must be coprime");
}

} // namespace detail

// Number of subtraction steps taking the unordered pair (p, q) to (gcd, 0).
// Computed as the quotient sum of the division-form Euclid algorithm, which
// counts exactly the subtractions of the subtractive form.
inline Int euclid_subtractive(Int p, Int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("euclid_subtractive: arguments must be nonnegative");
    if (p == 0 && q == 0) throw std::invalid_argument("euclid_subtractive: (0,0) is undefined");
    if (p < q) std::swap(p, q); // unordered pair
    Int count = 0;
    while (q != 0) {
        count += p / q;
        p %= q;
        std::swap(p, q);
    }
    return count;
}

inline ContinuedFraction continued_fraction(Int p, Int q) {
    detail::check_cf_preconditions(p, q, "continued_fraction");
    ContinuedFraction cf;
    while (q != 0) {
        cf.coefficients.push_back(p / q);
        p %= q;
        std::swap(p, q);
    }
    // Division-form coefficients are automatically canonical: the final
    // remainder before 0 is 1, so nk = r_{k-1} >= 2 whenever k > 1.
    return cf;
}

inline EuclidTrace euclid_trace(const Int& p, const Int& q) {
    detail::check_cf_preconditions(p, q, "euclid_trace");
    EuclidTrace t;
    t.p = p;
    t.q = q;
    t.coefficients = continued_fraction(p, q).coefficients;
    t.remainders = {p, q};
    t.convergents_num = {1};
    t.convergents_den = {0};
    // p_i = n_i p_{i-1} + p_{i-2} with p0 = 1, q0 = 0: seed the recurrence
    // one step back (p_{-1} = 0, q_{-1} = 1) so the loop emits p1..pk.
    Int pm2 = 0, pm1 = 1;
    Int qm2 = 1, qm1 = 0;
    for (const Int& n : t.coefficients) {
        Int pi = n * pm1 + pm2;
        Int qi = n * qm1 + qm2;
        t.convergents_num.push_back(pi);
        t.convergents_den.push_back(qi);
        pm2 = pm1; pm1 = pi;
        qm2 = qm1; qm1 = qi;
        const Int& r_prev = t.remainders[t.remainders.size() - 2];
        const Int& r_cur = t.remainders.back();
        t.remainders.push_back(r_prev - n * r_cur);
    }
    return t;
}

// r in (0, p) with r*q == 1 (mod p).
inline Int mod_inverse(const Int& q, const Int& p) {
    if (p < 2) throw std::invalid_argument("mod_inverse: modulus must be at least 2");
    if (q <= 0) throw std::invalid_argument("mod_inverse: q must be positive");
    if (gcd(p, q) != 1) throw std::invalid_argument("mod_inverse: arguments must be coprime");
    // Extended Euclid on (q mod p, p).
    Int a = q % p, b = p;
    Int x0 = 1, x1 = 0; // coefficients of a in the Bezout identity
    while (b != 0) {
        Int k = a / b;
        a -= k * b;
        std::swap(a, b);
        x0 -= k * x1;
        std::swap(x0, x1);
    }
    Int r = x0 % p;
    if (r < 0) r += p;
    return r;
}

} // namespace lenspine
