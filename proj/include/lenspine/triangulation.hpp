// Triangulations of a convex p-gon: diagonal sets, flips, the rotation
// action, arc-length bookkeeping, exhaustive enumeration, and the text format.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <lenspine/arith.hpp>

namespace lenspine {

inline constexpr int kDefaultEnumerationCap = 13;

// Unordered vertex pair with a < b.
struct Diagonal {
    int a = 0;
    int b = 0;

    Diagonal() = default;
    Diagonal(int x, int y) : a(std::min(x, y)), b(std::max(x, y)) {}

    friend bool operator==(const Diagonal&, const Diagonal&) = default;
    friend auto operator<=>(const Diagonal&, const Diagonal&) = default;

    friend std::ostream& operator<<(std::ostream& os, const Diagonal& d) {
        return os << d.a << "-" << d.b;
    }
};

// Number of polygon sides in the shorter arc between the endpoints.
inline int diagonal_length(int p, const Diagonal& d) {
    if (d.a < 0 || d.b >= p) throw std::invalid_argument("diagonal_length: vertex out of range");
    int arc = d.b - d.a;
    int len = std::min(arc, p - arc);
    if (len < 2) throw std::invalid_argument("diagonal_length: sides and degenerate pairs have no length");
    return len;
}

inline bool diagonals_cross(const Diagonal& x, const Diagonal& y) {
    if (x.a == y.a || x.a == y.b || x.b == y.a || x.b == y.b) return false;
    // Strict interleaving of endpoints around the polygon.
    const bool a_in = x.a < y.a && y.a < x.b;
    const bool b_in = x.a < y.b && y.b < x.b;
    return a_in != b_in;
}

// Maximal non-crossing diagonal set of a convex p-gon, stored sorted so the
// byte image doubles as a hash/canonical key.
class Triangulation {
public:
    static Triangulation from_diagonals(int p, std::vector<Diagonal> diagonals) {
        if (p < 3) throw std::invalid_argument("Triangulation: p must be at least 3");
        std::sort(diagonals.begin(), diagonals.end());
        Triangulation t;
        t.p_ = p;
        t.diagonals_ = std::move(diagonals);
        t.validate();
        return t;
    }

    // Fan triangulation at a vertex: diagonals {apex, apex+2..apex+p-2}.
    static Triangulation fan(int p, int apex = 0) {
        std::vector<Diagonal> d;
        d.reserve(p > 3 ? p - 3 : 0);
        for (int i = 2; i <= p - 2; ++i) d.emplace_back(apex % p, (apex + i) % p);
        return from_diagonals(p, std::move(d));
    }

    int polygon_size() const { return p_; }
    const std::vector<Diagonal>& diagonals() const { return diagonals_; }

    bool contains(const Diagonal& d) const {
        return std::binary_search(diagonals_.begin(), diagonals_.end(), d);
    }

    friend bool operator==(const Triangulation&, const Triangulation&) = default;
    friend auto operator<=>(const Triangulation&, const Triangulation&) = default;

    // Compact byte key for hashing; one byte per endpoint (p <= 255).
    std::string key() const {
        std::string k;
        k.reserve(2 * diagonals_.size());
        for (const auto& d : diagonals_) {
            k.push_back(static_cast<char>(d.a));
            k.push_back(static_cast<char>(d.b));
        }
        return k;
    }

private:
    friend Triangulation flip(const Triangulation&, const Diagonal&);
    friend Triangulation rotate(const Triangulation&, int);
    friend Triangulation mirror(const Triangulation&);

    void validate() const {
        if (static_cast<int>(diagonals_.size()) != p_ - 3)
            throw std::invalid_argument("Triangulation: expected p-3 diagonals");
        for (std::size_t i = 0; i < diagonals_.size(); ++i) {
            const auto& d = diagonals_[i];
            if (d.a < 0 || d.b >= p_ || d.a == d.b)
                throw std::invalid_argument("Triangulation: vertex out of range");
            int arc = d.b - d.a;
            if (arc == 1 || arc == p_ - 1)
                throw std::invalid_argument("Triangulation: polygon sides are not diagonals");
            if (i > 0 && diagonals_[i - 1] == d)
                throw std::invalid_argument("Triangulation: duplicate diagonal");
            for (std::size_t j = i + 1; j < diagonals_.size(); ++j)
                if (diagonals_cross(d, diagonals_[j]))
                    throw std::invalid_argument("Triangulation: crossing diagonals");
        }
    }

    int p_ = 3;
    std::vector<Diagonal> diagonals_;
};

namespace detail {

// Adjacency of the triangulation graph (polygon sides plus diagonals) as
// per-vertex bitmasks; p <= 64 covers every exhaustive and constructive use.
struct AdjacencyMask {
    int p;
    std::vector<std::uint64_t> mask;

    explicit AdjacencyMask(const Triangulation& t) : p(t.polygon_size()), mask(p, 0) {
        if (p > 64) throw std::invalid_argument("AdjacencyMask: p > 64 unsupported");
        auto link = [&](int a, int b) {
            mask[a] |= std::uint64_t(1) << b;
            mask[b] |= std::uint64_t(1) << a;
        };
        for (int v = 0; v < p; ++v) link(v, (v + 1) % p);
        for (const auto& d : t.diagonals()) link(d.a, d.b);
    }

    // The unique vertex c strictly inside the arc (a, b) adjacent to both.
    int apex_in_arc(int a, int b) const {
        std::uint64_t arc = 0;
        for (int v = (a + 1) % p; v != b; v = (v + 1) % p) arc |= std::uint64_t(1) << v;
        std::uint64_t hits = mask[a] & mask[b] & arc;
        if (hits == 0) throw std::logic_error("AdjacencyMask: no apex in arc");
        return std::countr_zero(hits);
    }
};

// The quadrilateral around a diagonal: apexes of the two incident triangles.
inline std::pair<int, int> flip_apexes(const AdjacencyMask& adj, const Diagonal& d) {
    return {adj.apex_in_arc(d.a, d.b), adj.apex_in_arc(d.b, d.a)};
}

} // namespace detail

// Replace d by the opposite diagonal of the quadrilateral formed by the two
// triangles incident to d. Involution.
inline Triangulation flip(const Triangulation& t, const Diagonal& d) {
    if (!t.contains(d)) throw std::invalid_argument("flip: diagonal not present");
    detail::AdjacencyMask adj(t);
    auto [c1, c2] = detail::flip_apexes(adj, d);
    Triangulation out = t;
    auto& diag = out.diagonals_;
    diag.erase(std::lower_bound(diag.begin(), diag.end(), d));
    Diagonal nd(c1, c2);
    diag.insert(std::upper_bound(diag.begin(), diag.end(), nd), nd);
    return out;
}

// Index shift v -> v + q (mod p); q may be any integer.
inline Triangulation rotate(const Triangulation& t, int q) {
    const int p = t.polygon_size();
    q = ((q % p) + p) % p;
    Triangulation out = t;
    for (auto& d : out.diagonals_) d = Diagonal((d.a + q) % p, (d.b + q) % p);
    std::sort(out.diagonals_.begin(), out.diagonals_.end());
    return out;
}

// Reflection v -> -v (mod p); conjugates rotation by q into rotation by p-q.
inline Triangulation mirror(const Triangulation& t) {
    const int p = t.polygon_size();
    Triangulation out = t;
    for (auto& d : out.diagonals_) d = Diagonal((p - d.a) % p, (p - d.b) % p);
    std::sort(out.diagonals_.begin(), out.diagonals_.end());
    return out;
}

// |diagonals(t) \ diagonals(rotate(t, q))|.
inline int destroyed_count(const Triangulation& t, int q) {
    Triangulation r = rotate(t, q);
    const auto& a = t.diagonals();
    const auto& b = r.diagonals();
    int surviving = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) { ++surviving; ++i; ++j; }
        else if (a[i] < b[j]) ++i;
        else ++j;
    }
    return static_cast<int>(a.size()) - surviving;
}

// Number of diagonals strictly longer than x; 2 <= x <= p/2.
inline int long_diagonal_count(const Triangulation& t, int x) {
    const int p = t.polygon_size();
    if (x < 2 || 2 * x > p) throw std::invalid_argument("long_diagonal_count: x out of range");
    int n = 0;
    for (const auto& d : t.diagonals())
        if (diagonal_length(p, d) > x) ++n;
    return n;
}

// Diagonal counts by Euclid-remainder length group: counts[i-1] = s_i is the
// number of diagonals with length in (r_i, r_{i-1}].
struct LengthProfile {
    std::vector<long long> counts;

    long long total() const {
        long long s = 0;
        for (long long c : counts) s += c;
        return s;
    }

    friend bool operator==(const LengthProfile&, const LengthProfile&) = default;
};

inline LengthProfile length_profile(const Triangulation& t, int q) {
    const int p = t.polygon_size();
    if (q <= 0 || q >= p || gcd(p, q) != 1)
        throw std::invalid_argument("length_profile: requires coprime 0 < q < p");
    EuclidTrace trace = euclid_trace(p, q);
    const std::size_t k = trace.length();
    LengthProfile profile;
    profile.counts.assign(k, 0);
    for (const auto& d : t.diagonals()) {
        Int len = diagonal_length(p, d);
        for (std::size_t i = 1; i <= k; ++i) {
            if (len > trace.remainders[i] && len <= trace.remainders[i - 1]) {
                ++profile.counts[i - 1];
                break;
            }
        }
    }
    return profile;
}

// Visits every triangulation of the p-gon exactly once (Catalan(p-2) total).
inline void enumerate_all(int p, const std::function<void(const Triangulation&)>& visit,
                          int cap = kDefaultEnumerationCap) {
    if (p < 3) throw std::invalid_argument("enumerate_all: p must be at least 3");
    if (p > cap) throw std::invalid_argument("enumerate_all: p exceeds the enumeration cap");
    std::vector<Diagonal> acc;
    acc.reserve(p - 3);
    // Recurse on boundary arcs: the chord (lo, hi) closes the region, and each
    // choice of apex for the triangle on that chord splits the arc in two.
    // Continuation style keeps the accumulator shared across both halves.
    std::function<void(int, int, const std::function<void()>&)> build =
        [&](int lo, int hi, const std::function<void()>& done) {
            if (hi - lo < 2) { done(); return; }
            for (int apex = lo + 1; apex < hi; ++apex) {
                std::size_t pushed = 0;
                if (apex - lo > 1) { acc.emplace_back(lo, apex); ++pushed; }
                if (hi - apex > 1) { acc.emplace_back(apex, hi); ++pushed; }
                build(lo, apex, [&] { build(apex, hi, done); });
                acc.resize(acc.size() - pushed);
            }
        };
    build(0, p - 1, [&] { visit(Triangulation::from_diagonals(p, acc)); });
}

inline std::vector<Triangulation> all_triangulations(int p, int cap = kDefaultEnumerationCap) {
    std::vector<Triangulation> out;
    enumerate_all(p, [&](const Triangulation& t) { out.push_back(t); }, cap);
    return out;
}

inline Int catalan(int n) {
    Int num = 1, den = 1;
    for (int i = 0; i < n; ++i) {
        num *= 2 * n - i;
        den *= i + 1;
    }
    return num / den / (n + 1);
}

// --- text format: "p=<n>" then one "a-b" line per diagonal ---

inline std::string to_text(const Triangulation& t) {
    std::ostringstream os;
    os << "p=" << t.polygon_size() << "\n";
    for (const auto& d : t.diagonals()) os << d.a << "-" << d.b << "\n";
    return os.str();
}

inline Triangulation triangulation_from_text(std::istream& in) {
    std::string line;
    int p = -1;
    std::vector<Diagonal> diagonals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("p=", 0) == 0) {
            p = std::stoi(line.substr(2));
            continue;
        }
        auto dash = line.find('-');
        if (dash == std::string::npos)
            throw std::invalid_argument("triangulation_from_text: expected 'a-b' line, got '" + line + "'");
        diagonals.emplace_back(std::stoi(line.substr(0, dash)), std::stoi(line.substr(dash + 1)));
    }
    if (p < 0) throw std::invalid_argument("triangulation_from_text: missing 'p=<n>' header");
    return Triangulation::from_diagonals(p, std::move(diagonals));
}

inline Triangulation triangulation_from_text(const std::string& text) {
    std::istringstream in(text);
    return triangulation_from_text(in);
}

} // namespace lenspine
