// Exact navigation of the Farey tessellation of the hyperbolic plane:
// edge predicate, mediant neighbors, modular-group action, Farey sequences,
// and geodesic triangle-crossing counts.
#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <lenspine/arith.hpp>

namespace lenspine {

// Boundary point of the hyperbolic plane: a reduced fraction num/den with
// den >= 0, where infinity is canonically 1/0 (and -1/0 is identified with it).
struct ExtendedRational {
    Int num = 0;
    Int den = 1;

    ExtendedRational() = default;
    ExtendedRational(Int n, Int d) : num(std::move(n)), den(std::move(d)) { canonicalize(); }

    void canonicalize() {
        if (num == 0 && den == 0)
            throw std::invalid_argument("ExtendedRational: 0/0 is not a point");
        if (den == 0) { num = 1; return; }
        if (den < 0) { num = -num; den = -den; }
        Int g = gcd(abs(num), den);
        if (g > 1) { num /= g; den /= g; }
    }

    bool is_infinity() const { return den == 0; }

    friend bool operator==(const ExtendedRational&, const ExtendedRational&) = default;

    friend std::ostream& operator<<(std::ostream& os, const ExtendedRational& x) {
        if (x.is_infinity()) return os << "inf";
        if (x.den == 1) return os << x.num;
        return os << x.num << "/" << x.den;
    }
};

// num(x) den(y) - den(x) num(y); zero iff x == y.
inline Int farey_cross(const ExtendedRational& x, const ExtendedRational& y) {
    return x.num * y.den - x.den * y.num;
}

// Linear order on canonical boundary points with infinity largest.
inline bool farey_less(const ExtendedRational& x, const ExtendedRational& y) {
    return farey_cross(x, y) < 0;
}

// x and y span an edge of the tessellation iff |num(x) den(y) - den(x) num(y)| = 1.
inline bool is_farey_edge(const ExtendedRational& x, const ExtendedRational& y) {
    Int c = farey_cross(x, y);
    return c == 1 || c == -1;
}

// Third vertices of the two triangles incident to an edge: the mediant
// (m+p)/(n+q) and the difference (m-p)/(n-q).
inline std::pair<ExtendedRational, ExtendedRational>
farey_neighbors(const ExtendedRational& x, const ExtendedRational& y) {
    if (!is_farey_edge(x, y))
        throw std::invalid_argument("farey_neighbors: not a Farey edge");
    return {ExtendedRational(x.num + y.num, x.den + y.den),
            ExtendedRational(x.num - y.num, x.den - y.den)};
}

// Vertices in [0,1] after `depth` reflection rounds of the tessellation
// construction: each round inserts the mediant of every consecutive pair.
inline std::vector<ExtendedRational> farey_sequence(int depth) {
    if (depth < 0) throw std::invalid_argument("farey_sequence: depth must be nonnegative");
    std::vector<ExtendedRational> seq = {ExtendedRational(0, 1), ExtendedRational(1, 1)};
    for (int step = 0; step < depth; ++step) {
        std::vector<ExtendedRational> next;
        next.reserve(2 * seq.size() - 1);
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            next.push_back(seq[i]);
            next.push_back(ExtendedRational(seq[i].num + seq[i + 1].num,
                                            seq[i].den + seq[i + 1].den));
        }
        next.push_back(seq.back());
        seq = std::move(next);
    }
    return seq;
}

enum class Orientation { preserving, reversing };

// Fractional linear map z -> (az+b)/(cz+d), or its conjugate-composed form
// z -> (a z̄ + b)/(c z̄ + d) when orientation-reversing. On boundary points the
// two act identically; the flag records the determinant sign ad - bc = ±1.
// Maps are identified up to the global sign of (a,b,c,d).
struct ModularMap {
    Int a, b, c, d;
    Orientation orientation;

    ModularMap(Int a_, Int b_, Int c_, Int d_)
        : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)) {
        Int det = a * d - b * c;
        if (det == 1) orientation = Orientation::preserving;
        else if (det == -1) orientation = Orientation::reversing;
        else throw std::invalid_argument("ModularMap: determinant must be +1 or -1");
    }

    static ModularMap identity() { return {1, 0, 0, 1}; }
    // T: z -> z + 1
    static ModularMap translation() { return {1, 1, 0, 1}; }
    // S: z -> -1/z
    static ModularMap inversion() { return {0, -1, 1, 0}; }

    ModularMap compose(const ModularMap& other) const {
        return {a * other.a + b * other.c, a * other.b + b * other.d,
                c * other.a + d * other.c, c * other.b + d * other.d};
    }

    friend bool operator==(const ModularMap& f, const ModularMap& g) {
        if (f.a == g.a && f.b == g.b && f.c == g.c && f.d == g.d) return true;
        return f.a == -g.a && f.b == -g.b && f.c == -g.c && f.d == -g.d;
    }
};

inline ExtendedRational apply_modular(const ModularMap& map, const ExtendedRational& x) {
    // Conjugation fixes real boundary points, so the formula is orientation-free.
    return ExtendedRational(map.a * x.num + map.b * x.den,
                            map.c * x.num + map.d * x.den);
}

namespace detail {

// b lies strictly between a and c in the cyclic order on the boundary circle
// (the real line compactified by infinity).
inline bool cyclically_ordered(const ExtendedRational& a, const ExtendedRational& b,
                               const ExtendedRational& c) {
    const bool ab = farey_less(a, b), bc = farey_less(b, c), ca = farey_less(c, a);
    return (ab && bc) || (bc && ca) || (ca && ab);
}

// Strict transversal crossing of the geodesics (s,t) and (u,v): exactly one
// of u, v lies in each open arc bounded by s and t. Shared endpoints do not
// count as crossings.
inline bool geodesics_cross(const ExtendedRational& s, const ExtendedRational& t,
                            const ExtendedRational& u, const ExtendedRational& v) {
    if (u == s || u == t || v == s || v == t) return false;
    return cyclically_ordered(s, u, t) != cyclically_ordered(s, v, t);
}

} // namespace detail

// Dual-tree walk: descend the infinite binary tree dual to the tessellation
// by mediant bisection, counting the triangles on the path from the base
// edge (0, infinity) to the target vertex.
inline Int crossing_count_tree(Int p, Int q) {
    if (q <= 0) throw std::invalid_argument("crossing_count: q must be positive");
    if (gcd(abs(p), q) != 1) throw std::invalid_argument("crossing_count: p, q must be coprime");
    bool negative = p < 0;
    if (negative) p = -p; // the reflection z -> -z̄ fixes the base edge
    if (p == 0) return 0; // endpoint is a vertex of the base edge
    ExtendedRational lo(0, 1), hi(1, 0), target(p, q);
    Int count = 0;
    for (;;) {
        ExtendedRational med(lo.num + hi.num, lo.den + hi.den);
        ++count;
        if (med == target) return count;
        if (farey_less(target, med)) hi = med; else lo = med;
    }
}

// Geometric walk: follow the geodesic from the cusp 0 to p/q (requires
// |p| > |q|) from triangle to triangle, testing edge crossings with the
// exact-rational interleaving criterion.
inline Int crossing_count_geodesic(const Int& p, const Int& q) {
    if (q <= 0) throw std::invalid_argument("crossing_count: q must be positive");
    if (gcd(abs(p), q) != 1) throw std::invalid_argument("crossing_count: p, q must be coprime");
    if (abs(p) <= q)
        throw std::invalid_argument("crossing_count_geodesic: requires |p| > |q|");
    const ExtendedRational start(0, 1), target(p, q);
    // Fan triangle at the cusp 0 whose opposite edge the geodesic crosses
    // first. The invariant below is that (u, v) is the entry edge of the
    // current triangle and w its third vertex; for the initial triangle the
    // edges meeting the start cusp cannot be crossed transversally, so the
    // same exit-edge scan applies.
    ExtendedRational u(0, 1);
    ExtendedRational v = (p > 0) ? ExtendedRational(1, 1) : ExtendedRational(1, 0);
    ExtendedRational w = (p > 0) ? ExtendedRational(1, 0) : ExtendedRational(-1, 1);
    Int count = 1;
    while (u != target && v != target && w != target) {
        // Exit through whichever of the two non-entry edges the geodesic cuts.
        ExtendedRational ea, eb, inner;
        if (detail::geodesics_cross(start, target, v, w)) { ea = v; eb = w; inner = u; }
        else if (detail::geodesics_cross(start, target, u, w)) { ea = u; eb = w; inner = v; }
        else throw std::logic_error("crossing_count_geodesic: no exit edge found");
        auto [med, dif] = farey_neighbors(ea, eb);
        ExtendedRational next = (med == inner) ? dif : med;
        u = ea; v = eb; w = next;
        ++count;
    }
    return count;
}

// Number of Farey triangles whose interior meets the geodesic from the base
// edge (0, infinity) to p/q. The dual-tree walk is authoritative; when the
// geodesic form applies (|p| > |q|) both are run and must agree.
inline Int crossing_count(const Int& p, const Int& q) {
    Int tree = crossing_count_tree(p, q);
    if (abs(p) > q) {
        Int geo = crossing_count_geodesic(p, q);
        if (geo != tree)
            throw std::logic_error("crossing_count: tree walk and geodesic walk disagree for " +
                                   p.str() + "/" + q.str());
    }
    return tree;
}

} // namespace lenspine
