// Certified-sign geometric predicates: ball arithmetic (value + error radius)
// evaluated in double, then escalating binary floating precision until the
// sign is certain. Point sets defined by trigonometric recipes keep their
// exact parameters so every level re-evaluates from scratch; raw double
// point sets fall back to exact rational arithmetic, where a true zero is
// decidable.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace lenspine {

// Sign ambiguous at the maximum supported precision.
struct GeometricDegeneracy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input of lower affine dimension than the operation requires.
struct DegenerateInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Rational = boost::multiprecision::cpp_rational;

namespace prec {
using f50 = boost::multiprecision::cpp_bin_float_50;
using f100 = boost::multiprecision::cpp_bin_float_100;
using f200 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;
} // namespace prec

// Midpoint-radius interval ("ball"). The radius tracks absolute error from
// both input uncertainty and rounding; every operation inflates it by a few
// ulps beyond the first-order bound, which stays conservative because the
// escalation ladder retries with a much smaller epsilon anyway.
template <typename Real>
struct Ball {
    Real value{};
    Real radius{};

    static Real eps() { return std::numeric_limits<Real>::epsilon(); }

    // Rounding slack for one operation producing v; the denorm term covers
    // results in the subnormal range where eps*|v| underestimates the ulp.
    static Real slack(const Real& v) {
        using std::abs;
        return eps() * abs(v) + std::numeric_limits<Real>::denorm_min();
    }

    static Ball exact(Real v) { return {v, Real(0)}; }
    static Ball of_int(long long v) { return {Real(v), Real(0)}; }

    friend Ball operator+(const Ball& a, const Ball& b) {
        Real v = a.value + b.value;
        Real r = a.radius + b.radius + slack(v);
        return {v, r * (Real(1) + Real(8) * eps())};
    }
    friend Ball operator-(const Ball& a, const Ball& b) {
        Real v = a.value - b.value;
        Real r = a.radius + b.radius + slack(v);
        return {v, r * (Real(1) + Real(8) * eps())};
    }
    friend Ball operator-(const Ball& a) { return {-a.value, a.radius}; }
    friend Ball operator*(const Ball& a, const Ball& b) {
        using std::abs;
        Real v = a.value * b.value;
        Real r = abs(a.value) * b.radius + abs(b.value) * a.radius + a.radius * b.radius +
                 slack(v);
        return {v, r * (Real(1) + Real(8) * eps())};
    }
    friend Ball operator/(const Ball& a, const Ball& b) {
        using std::abs;
        Real denom = abs(b.value) - b.radius;
        if (!(denom > 0)) throw GeometricDegeneracy("ball division by a possibly-zero interval");
        Real v = a.value / b.value;
        Real r = (a.radius + abs(v) * b.radius) / denom + slack(v);
        return {v, r * (Real(1) + Real(8) * eps())};
    }

    // Certified sign, when the interval excludes zero.
    std::optional<int> sign() const {
        if (value - radius > 0) return 1;
        if (value + radius < 0) return -1;
        return std::nullopt;
    }
};

template <typename Real>
Ball<Real> ball_pi() {
    if constexpr (std::is_same_v<Real, double>) {
        return {3.14159265358979323846, 4 * std::numeric_limits<double>::epsilon()};
    } else {
        return {boost::math::constants::pi<Real>(), Real(4) * std::numeric_limits<Real>::epsilon()};
    }
}

template <typename Real>
Ball<Real> ball_sin(const Ball<Real>& a) {
    using std::sin;
    Real v = sin(a.value);
    // |sin'| <= 1 transfers the input radius; a few ulps cover evaluation error.
    Real r = a.radius + Real(8) * Ball<Real>::eps();
    return {v, r};
}

template <typename Real>
Ball<Real> ball_cos(const Ball<Real>& a) {
    using std::cos;
    Real v = cos(a.value);
    Real r = a.radius + Real(8) * Ball<Real>::eps();
    return {v, r};
}

namespace detail {

// Per-evaluator memo of ball coordinates, one map per precision level; the
// escalation ladder re-derives every coordinate from the exact recipe, and
// the trigonometric evaluations dominate at high precision.
template <int Dim>
struct CoordCache {
    template <typename Real>
    using Map = std::map<int, std::array<Ball<Real>, Dim>>;
    mutable Map<double> lvl_double;
    mutable Map<prec::f50> lvl_f50;
    mutable Map<prec::f100> lvl_f100;
    mutable Map<prec::f200> lvl_f200;

    template <typename Real>
    Map<Real>& level() const {
        if constexpr (std::is_same_v<Real, double>) return lvl_double;
        else if constexpr (std::is_same_v<Real, prec::f50>) return lvl_f50;
        else if constexpr (std::is_same_v<Real, prec::f100>) return lvl_f100;
        else return lvl_f200;
    }

    template <typename Real, typename Fn>
    std::array<Ball<Real>, Dim> get(int k, Fn&& compute) const {
        auto& m = level<Real>();
        auto it = m.find(k);
        if (it != m.end()) return it->second;
        auto value = compute();
        m.emplace(k, value);
        return value;
    }
};

template <typename T>
T det3(const std::array<std::array<T, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

template <typename T>
T det4(const std::array<std::array<T, 4>, 4>& m) {
    T result{};
    for (int col = 0; col < 4; ++col) {
        std::array<std::array<T, 3>, 3> minor;
        for (int r = 1; r < 4; ++r) {
            int cc = 0;
            for (int c = 0; c < 4; ++c) {
                if (c == col) continue;
                minor[r - 1][cc++] = m[r][c];
            }
        }
        T term = m[0][col] * det3(minor);
        if (col == 0) result = term;
        else if (col % 2 == 0) result = result + term;
        else result = result - term;
    }
    return result;
}

} // namespace detail

// --- point evaluators -------------------------------------------------------
//
// An evaluator exposes, for each precision level Real,
//     template <Real> std::array<Ball<Real>, Dim> coords(int index) const;
// and states whether an exact rational fallback exists via
//     static constexpr bool has_exact; std::array<Rational, Dim> coords_exact(int) const;

// Planar points (1 + e sin(2 pi k q / p)) (cos(2 pi k / p), sin(2 pi k / p)).
struct TrigCirclePoints {
    static constexpr int dim = 2;
    static constexpr bool has_exact = false;
    int p;
    int q;
    double eccentricity;
    detail::CoordCache<2> cache{};

    int size() const { return p; }

    template <typename Real>
    std::array<Ball<Real>, 2> coords(int k) const {
        return cache.get<Real>(k, [&] {
            auto pi = ball_pi<Real>();
            auto angle_of = [&](long long m) {
                // 2 pi (m mod p) / p, with the integer part reduced exactly.
                long long mm = ((m % p) + p) % p;
                return pi * Ball<Real>::of_int(2 * mm) / Ball<Real>::of_int(p);
            };
            Ball<Real> a = angle_of(k);
            Ball<Real> b = angle_of(static_cast<long long>(k) * q);
            Ball<Real> radial = Ball<Real>::of_int(1) +
                                Ball<Real>::exact(Real(eccentricity)) * ball_sin(b);
            return std::array<Ball<Real>, 2>{radial * ball_cos(a), radial * ball_sin(a)};
        });
    }

    std::array<double, 2> approx(int k) const {
        auto c = coords<double>(k);
        return {c[0].value, c[1].value};
    }
};

// Raw planar points; doubles are binary rationals, so exact signs exist.
struct ExactPlanarPoints {
    static constexpr int dim = 2;
    static constexpr bool has_exact = true;
    std::vector<std::array<double, 2>> pts;

    int size() const { return static_cast<int>(pts.size()); }

    template <typename Real>
    std::array<Ball<Real>, 2> coords(int k) const {
        return {Ball<Real>::exact(Real(pts[k][0])), Ball<Real>::exact(Real(pts[k][1]))};
    }

    std::array<Rational, 2> coords_exact(int k) const {
        return {Rational(pts[k][0]), Rational(pts[k][1])};
    }
};

// Z_p-orbit of (cos t e^{i f1}, sin t e^{i f2}) on the unit sphere in C^2,
// realized in R^4; point k rotates the first factor by 2 pi k / p and the
// second by 2 pi k q / p.
struct OrbitPoints {
    static constexpr int dim = 4;
    static constexpr bool has_exact = false;
    int p;
    int q;
    double theta;
    double phi1;
    double phi2;
    detail::CoordCache<4> cache{};

    int size() const { return p; }

    template <typename Real>
    std::array<Ball<Real>, 4> coords(int k) const {
        return cache.get<Real>(k, [&] {
            auto pi = ball_pi<Real>();
            auto angle_of = [&](long long m, double base) {
                long long mm = ((m % p) + p) % p;
                return Ball<Real>::exact(Real(base)) +
                       pi * Ball<Real>::of_int(2 * mm) / Ball<Real>::of_int(p);
            };
            Ball<Real> a = angle_of(k, phi1);
            Ball<Real> b = angle_of(static_cast<long long>(k) * q, phi2);
            Ball<Real> t = Ball<Real>::exact(Real(theta));
            Ball<Real> ct = ball_cos(t), st = ball_sin(t);
            return std::array<Ball<Real>, 4>{ct * ball_cos(a), ct * ball_sin(a),
                                             st * ball_cos(b), st * ball_sin(b)};
        });
    }

    std::array<double, 4> approx(int k) const {
        auto c = coords<double>(k);
        return {c[0].value, c[1].value, c[2].value, c[3].value};
    }
};

// Raw 4D points with exact fallback.
struct ExactPoints4 {
    static constexpr int dim = 4;
    static constexpr bool has_exact = true;
    std::vector<std::array<double, 4>> pts;

    int size() const { return static_cast<int>(pts.size()); }

    template <typename Real>
    std::array<Ball<Real>, 4> coords(int k) const {
        std::array<Ball<Real>, 4> out;
        for (int i = 0; i < 4; ++i) out[i] = Ball<Real>::exact(Real(pts[k][i]));
        return out;
    }

    std::array<Rational, 4> coords_exact(int k) const {
        std::array<Rational, 4> out;
        for (int i = 0; i < 4; ++i) out[i] = Rational(pts[k][i]);
        return out;
    }
};

namespace detail {

// Run a ball evaluation through the precision ladder; fall back to exact
// rationals when the evaluator supports it (then a result of 0 is a true
// geometric degeneracy, e.g. cocircular or cohyperplanar points).
template <typename BallEval, typename ExactEval>
int certified_sign(const BallEval& ball_eval, const ExactEval& exact_eval, bool has_exact,
                   const char* what) {
    if (auto s = ball_eval.template operator()<double>()) return *s;
    if (auto s = ball_eval.template operator()<prec::f50>()) return *s;
    if (auto s = ball_eval.template operator()<prec::f100>()) return *s;
    if (auto s = ball_eval.template operator()<prec::f200>()) return *s;
    if (has_exact) return exact_eval();
    throw GeometricDegeneracy(std::string(what) + ": sign ambiguous at maximum precision");
}

template <typename T>
int rational_sign(const T& x) {
    if (x > 0) return 1;
    if (x < 0) return -1;
    return 0;
}

} // namespace detail

// Orientation of the planar triple (a, b, c): +1 counterclockwise, -1
// clockwise, 0 collinear (exact inputs only).
template <typename E>
int orient2d_sign(const E& pts, int a, int b, int c) {
    auto ball_eval = [&]<typename Real>() -> std::optional<int> {
        auto A = pts.template coords<Real>(a);
        auto B = pts.template coords<Real>(b);
        auto C = pts.template coords<Real>(c);
        auto det = (B[0] - A[0]) * (C[1] - A[1]) - (B[1] - A[1]) * (C[0] - A[0]);
        return det.sign();
    };
    auto exact_eval = [&]() -> int {
        if constexpr (E::has_exact) {
            auto A = pts.coords_exact(a);
            auto B = pts.coords_exact(b);
            auto C = pts.coords_exact(c);
            Rational det = (B[0] - A[0]) * (C[1] - A[1]) - (B[1] - A[1]) * (C[0] - A[0]);
            return detail::rational_sign(det);
        } else {
            return 0;
        }
    };
    return detail::certified_sign(ball_eval, exact_eval, E::has_exact, "orient2d");
}

// Incircle test: for (a, b, c) counterclockwise, +1 iff d lies strictly
// inside their circumcircle, -1 strictly outside, 0 cocircular (exact only).
template <typename E>
int incircle_sign(const E& pts, int a, int b, int c, int d) {
    auto ball_eval = [&]<typename Real>() -> std::optional<int> {
        auto A = pts.template coords<Real>(a);
        auto B = pts.template coords<Real>(b);
        auto C = pts.template coords<Real>(c);
        auto D = pts.template coords<Real>(d);
        std::array<std::array<Ball<Real>, 3>, 3> m;
        auto row = [&](const std::array<Ball<Real>, 2>& P, int r) {
            auto dx = P[0] - D[0];
            auto dy = P[1] - D[1];
            m[r] = {dx, dy, dx * dx + dy * dy};
        };
        row(A, 0);
        row(B, 1);
        row(C, 2);
        return detail::det3(m).sign();
    };
    auto exact_eval = [&]() -> int {
        if constexpr (E::has_exact) {
            auto A = pts.coords_exact(a);
            auto B = pts.coords_exact(b);
            auto C = pts.coords_exact(c);
            auto D = pts.coords_exact(d);
            std::array<std::array<Rational, 3>, 3> m;
            auto row = [&](const std::array<Rational, 2>& P, int r) {
                Rational dx = P[0] - D[0];
                Rational dy = P[1] - D[1];
                m[r] = {dx, dy, dx * dx + dy * dy};
            };
            row(A, 0);
            row(B, 1);
            row(C, 2);
            return detail::rational_sign(detail::det3(m));
        } else {
            return 0;
        }
    };
    return detail::certified_sign(ball_eval, exact_eval, E::has_exact, "incircle");
}

// Orientation of x against the hyperplane spanned by (a, b, c, d) in R^4:
// sign of det[b-a, c-a, d-a, x-a]; 0 means cohyperplanar (exact only).
template <typename E>
int orient4d_sign(const E& pts, int a, int b, int c, int d, int x) {
    auto ball_eval = [&]<typename Real>() -> std::optional<int> {
        auto A = pts.template coords<Real>(a);
        std::array<std::array<Ball<Real>, 4>, 4> m;
        int row = 0;
        for (int idx : {b, c, d, x}) {
            auto P = pts.template coords<Real>(idx);
            for (int col = 0; col < 4; ++col) m[row][col] = P[col] - A[col];
            ++row;
        }
        return detail::det4(m).sign();
    };
    auto exact_eval = [&]() -> int {
        if constexpr (E::has_exact) {
            auto A = pts.coords_exact(a);
            std::array<std::array<Rational, 4>, 4> m;
            int row = 0;
            for (int idx : {b, c, d, x}) {
                auto P = pts.coords_exact(idx);
                for (int col = 0; col < 4; ++col) m[row][col] = P[col] - A[col];
                ++row;
            }
            return detail::rational_sign(detail::det4(m));
        } else {
            return 0;
        }
    };
    return detail::certified_sign(ball_eval, exact_eval, E::has_exact, "orient4d");
}

} // namespace lenspine
