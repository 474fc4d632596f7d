// Convex hulls of Z_p-orbits on the unit sphere in C^2 and the dual spine
// combinatorics: facet counts, the Z_p action on facets, monodromy, base
// point invariance, and the sphere-vs-ambient Voronoi restriction check.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include <lenspine/arith.hpp>
#include <lenspine/geometry.hpp>

namespace lenspine {

// Base point (theta, phi1, phi2) for the orbit of
// (cos theta e^{i phi1}, sin theta e^{i phi2}); theta strictly inside
// (0, pi/2) keeps the point off the core circles.
struct OrbitConfig {
    int p = 0;
    int q = 0;
    double theta = 1.0172219678978514; // atan(golden ratio)
    double phi1 = 0.1;
    double phi2 = 0.2;

    OrbitPoints evaluator() const { return {p, q, theta, phi1, phi2, {}}; }

    // Deterministic perturbation used when a base point turns out degenerate.
    OrbitConfig reseeded(int attempt) const {
        OrbitConfig c = *this;
        c.theta = std::atan(1.6180339887498949 + 0.01 * attempt);
        c.phi1 = phi1 + 0.013 * attempt;
        c.phi2 = phi2 + 0.017 * attempt;
        return c;
    }
};

inline std::vector<std::array<double, 4>> orbit_points(const OrbitConfig& config,
                                                       bool allow_core_circle = false) {
    if (config.p < 3) throw std::invalid_argument("orbit_points: p must be at least 3");
    const double half_pi = 1.5707963267948966;
    if (!allow_core_circle && (config.theta <= 0 || config.theta >= half_pi))
        throw std::invalid_argument("orbit_points: theta must lie strictly inside (0, pi/2)");
    OrbitPoints eval = config.evaluator();
    std::vector<std::array<double, 4>> out;
    out.reserve(config.p);
    for (int k = 0; k < config.p; ++k) out.push_back(eval.approx(k));
    return out;
}

struct HullFacet {
    std::vector<int> vertices; // sorted; size 4 when simplicial
    std::array<double, 4> outward_normal{};
};

struct HullResult {
    std::vector<HullFacet> facets;
    bool all_simplicial = true;

    std::set<std::vector<int>> facet_sets() const {
        std::set<std::vector<int>> s;
        for (const auto& f : facets) s.insert(f.vertices);
        return s;
    }
};

namespace detail {

// Five affinely independent indices, or DegenerateInput when the points span
// a lower-dimensional flat (within certification). Greedy span growth with
// certified minors keeps the degenerate case cheap.
template <typename E>
std::array<int, 5> affine_basis_5(const E& pts) {
    const int n = pts.size();
    if (n < 5) throw DegenerateInput("convex_hull_4d: need at least 5 points");
    std::vector<int> basis = {0};
    for (int j = 1; j < n && basis.size() < 5; ++j) {
        std::vector<int> candidate = basis;
        candidate.push_back(j);
        const std::size_t m = candidate.size() - 1; // vectors spanned
        // Certified rank test: some m x m minor of the difference matrix.
        bool extends = false;
        std::vector<std::array<int, 4>> column_sets;
        {
            std::array<int, 4> cols{};
            std::vector<int> idx(m);
            // enumerate m-element column subsets of {0,1,2,3}
            std::function<void(std::size_t, int)> gen = [&](std::size_t pos, int start) {
                if (extends) return;
                if (pos == m) {
                    for (std::size_t t = 0; t < m; ++t) cols[t] = idx[t];
                    column_sets.push_back(cols);
                    return;
                }
                for (int c = start; c < 4; ++c) {
                    idx[pos] = c;
                    gen(pos + 1, c + 1);
                }
            };
            gen(0, 0);
        }
        for (const auto& cols : column_sets) {
            auto ball_eval = [&]<typename Real>() -> std::optional<int> {
                auto base = pts.template coords<Real>(candidate[0]);
                std::array<std::array<Ball<Real>, 4>, 4> mat;
                for (std::size_t r = 0; r < m; ++r) {
                    auto P = pts.template coords<Real>(candidate[r + 1]);
                    for (std::size_t c = 0; c < m; ++c)
                        mat[r][c] = P[cols[c]] - base[cols[c]];
                }
                // Pad to a full 4x4 with the identity so det4 applies uniformly.
                for (std::size_t r = m; r < 4; ++r)
                    for (std::size_t c = 0; c < 4; ++c)
                        mat[r][c] = (r == c) ? Ball<Real>::of_int(1) : Ball<Real>::of_int(0);
                for (std::size_t r = 0; r < m; ++r)
                    for (std::size_t c = m; c < 4; ++c) mat[r][c] = Ball<Real>::of_int(0);
                return det4(mat).sign();
            };
            try {
                auto exact_eval = []() -> int { return 0; };
                int s = detail::certified_sign(ball_eval, exact_eval, false, "affine rank");
                if (s != 0) { extends = true; break; }
            } catch (const GeometricDegeneracy&) {
                continue; // this minor is (certifiably close to) zero; try the next
            }
        }
        if (extends) basis.push_back(j);
    }
    if (basis.size() < 5)
        throw DegenerateInput("convex_hull_4d: points span a flat of affine dimension " +
                              std::to_string(basis.size() - 1) + " (q = +-1 orbits are planar)");
    return {basis[0], basis[1], basis[2], basis[3], basis[4]};
}

// Outward normal (double precision, reporting only) of the hyperplane
// through four points, oriented away from `inner`.
template <typename E>
std::array<double, 4> facet_normal(const E& pts, const std::array<int, 4>& f, int inner) {
    auto coord = [&](int idx) {
        auto c = pts.template coords<double>(idx);
        return std::array<double, 4>{c[0].value, c[1].value, c[2].value, c[3].value};
    };
    auto a = coord(f[0]);
    std::array<std::array<double, 3>, 3> rows;
    std::array<double, 4> normal{};
    auto fill = [&](int skip) {
        for (int r = 0; r < 3; ++r) {
            auto v = coord(f[r + 1]);
            int cc = 0;
            for (int c = 0; c < 4; ++c) {
                if (c == skip) continue;
                rows[r][cc++] = v[c] - a[c];
            }
        }
    };
    for (int c = 0; c < 4; ++c) {
        fill(c);
        double minor = rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1]) -
                       rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0]) +
                       rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]);
        normal[c] = (c % 2 == 0 ? 1.0 : -1.0) * minor;
    }
    auto inn = coord(inner);
    double side = 0;
    for (int c = 0; c < 4; ++c) side += normal[c] * (inn[c] - a[c]);
    if (side > 0)
        for (auto& v : normal) v = -v;
    double len = std::sqrt(normal[0] * normal[0] + normal[1] * normal[1] +
                           normal[2] * normal[2] + normal[3] * normal[3]);
    if (len > 0)
        for (auto& v : normal) v /= len;
    return normal;
}

} // namespace detail

namespace detail {

// Orientation with a third outcome: an ambiguity that survives the whole
// precision ladder is read as exact incidence. Orbits of even p are
// centrally symmetric (x_{k+p/2} = -x_k), which forces exact affine
// relations no base point avoids, so "on the hyperplane" is a real state
// the hull algorithms must handle, not an error.
template <typename E>
int orient_or_zero(const E& pts, const std::array<int, 4>& f, int x) {
    try {
        return orient4d_sign(pts, f[0], f[1], f[2], f[3], x);
    } catch (const GeometricDegeneracy&) {
        return 0;
    }
}

// Do the four points span a full hyperplane (affine rank 3)?
template <typename E>
bool spans_hyperplane(const E& pts, int a, int b, int c, int d) {
    for (int skip = 0; skip < 4; ++skip) {
        auto ball_eval = [&]<typename Real>() -> std::optional<int> {
            auto A = pts.template coords<Real>(a);
            std::array<std::array<Ball<Real>, 3>, 3> m;
            int row = 0;
            for (int idx : {b, c, d}) {
                auto P = pts.template coords<Real>(idx);
                int col = 0;
                for (int cc = 0; cc < 4; ++cc) {
                    if (cc == skip) continue;
                    m[row][col++] = P[cc] - A[cc];
                }
                ++row;
            }
            return det3(m).sign();
        };
        try {
            auto no_exact = []() -> int { return 0; };
            if (certified_sign(ball_eval, no_exact, false, "affine rank") != 0) return true;
        } catch (const GeometricDegeneracy&) {
            continue;
        }
    }
    return false;
}

} // namespace detail

// Incremental (beneath-beyond) convex hull of a full-dimensional point set
// in R^4 with certified orientation predicates. Points exactly on a facet
// hyperplane during insertion are treated as beyond it (the point is always
// strictly outside the partial hull here: distinct unit vectors are extreme),
// which resolves the incidence the way an outward perturbation would; the
// temporarily coplanar facets this creates lie on hyperplanes through the
// origin and are destroyed by later insertions.
template <typename E>
HullResult convex_hull_4d(const E& pts) {
    const int n = pts.size();
    auto init = detail::affine_basis_5(pts);

    struct F {
        std::array<int, 4> v;   // sorted
        int ref;                // certified inner reference point
        int ref_sign;           // orient sign of ref against v
    };
    std::vector<F> facets;

    auto make_facet = [&](std::array<int, 4> v, const std::vector<char>& inserted) {
        std::sort(v.begin(), v.end());
        for (int r = 0; r < n; ++r) {
            if (!inserted[r] || r == v[0] || r == v[1] || r == v[2] || r == v[3]) continue;
            int s = detail::orient_or_zero(pts, v, r);
            if (s != 0) return F{v, r, s};
        }
        throw GeometricDegeneracy("convex_hull_4d: no reference point off a facet hyperplane");
    };

    std::vector<char> inserted(n, 0);
    for (int i : init) inserted[i] = 1;
    for (int skip = 0; skip < 5; ++skip) {
        std::array<int, 4> v{};
        int c = 0;
        for (int i = 0; i < 5; ++i)
            if (i != skip) v[c++] = init[i];
        facets.push_back(make_facet(v, inserted));
    }

    for (int x = 0; x < n; ++x) {
        if (inserted[x]) continue;
        // Facets visible from x: strictly beyond, or exactly on the facet
        // hyperplane (x is strictly outside the partial hull, so incidence
        // means the facet is about to stop being one).
        std::vector<char> is_visible(facets.size(), 0);
        bool any = false;
        for (std::size_t i = 0; i < facets.size(); ++i) {
            int s = detail::orient_or_zero(pts, facets[i].v, x);
            if (s == 0 || s != facets[i].ref_sign) {
                is_visible[i] = 1;
                any = true;
            }
        }
        inserted[x] = 1;
        if (!any) continue;

        // Horizon ridges (triangles of visible facets shared with no other
        // visible facet) must span a hyperplane together with x; when x lies
        // exactly in a ridge's plane, the facet behind that ridge is weakly
        // visible as well, so grow the visible patch and retry.
        std::map<std::array<int, 3>, int> ridge_count;
        auto collect_ridges = [&] {
            ridge_count.clear();
            for (std::size_t i = 0; i < facets.size(); ++i) {
                if (!is_visible[i]) continue;
                const auto& v = facets[i].v;
                for (int skip = 0; skip < 4; ++skip) {
                    std::array<int, 3> r{};
                    int c = 0;
                    for (int j = 0; j < 4; ++j)
                        if (j != skip) r[c++] = v[j];
                    ++ridge_count[r];
                }
            }
        };
        for (;;) {
            collect_ridges();
            std::optional<std::array<int, 3>> flat_ridge;
            for (const auto& [ridge, count] : ridge_count)
                if (count == 1 && !detail::spans_hyperplane(pts, ridge[0], ridge[1], ridge[2], x)) {
                    flat_ridge = ridge;
                    break;
                }
            if (!flat_ridge) break;
            bool grew = false;
            for (std::size_t i = 0; i < facets.size() && !grew; ++i) {
                if (is_visible[i]) continue;
                const auto& v = facets[i].v;
                int present = 0;
                for (int j = 0; j < 4; ++j)
                    if (v[j] == (*flat_ridge)[0] || v[j] == (*flat_ridge)[1] ||
                        v[j] == (*flat_ridge)[2])
                        ++present;
                if (present == 3) {
                    is_visible[i] = 1;
                    grew = true;
                }
            }
            if (!grew)
                throw GeometricDegeneracy("convex_hull_4d: degenerate horizon ridge "
                                          "without a hidden neighbor");
        }

        std::vector<F> next;
        for (std::size_t i = 0; i < facets.size(); ++i)
            if (!is_visible[i]) next.push_back(facets[i]);
        for (const auto& [ridge, count] : ridge_count) {
            if (count == 1)
                next.push_back(make_facet({ridge[0], ridge[1], ridge[2], x}, inserted));
        }
        facets = std::move(next);
    }

    HullResult out;
    out.all_simplicial = true;
    for (const auto& f : facets) {
        HullFacet hf;
        hf.vertices.assign(f.v.begin(), f.v.end());
        hf.outward_normal = detail::facet_normal(pts, f.v, f.ref);
        out.facets.push_back(hf);
    }
    std::sort(out.facets.begin(), out.facets.end(),
              [](const HullFacet& a, const HullFacet& b) { return a.vertices < b.vertices; });
    return out;
}

// Brute-force oracle: a 4-subset spans a facet hyperplane iff it is affinely
// nondegenerate and every other point lies weakly on one side; points exactly
// on the hyperplane join the facet, making it non-simplicial.
template <typename E>
HullResult convex_hull_4d_bruteforce(const E& pts) {
    const int n = pts.size();
    (void)detail::affine_basis_5(pts); // dimension guard

    std::set<std::vector<int>> facet_sets;
    HullResult out;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            for (int c = b + 1; c < n; ++c)
                for (int d = c + 1; d < n; ++d) {
                    int pos = 0, neg = 0;
                    std::vector<int> coplanar;
                    bool rank_checked = false;
                    bool skip_subset = false;
                    for (int x = 0; x < n; ++x) {
                        if (x == a || x == b || x == c || x == d) continue;
                        int s = detail::orient_or_zero(pts, {a, b, c, d}, x);
                        if (s > 0) ++pos;
                        else if (s < 0) ++neg;
                        else {
                            // Exact incidence is meaningful only when the
                            // subset actually spans a hyperplane.
                            if (!rank_checked) {
                                rank_checked = true;
                                if (!detail::spans_hyperplane(pts, a, b, c, d)) {
                                    skip_subset = true;
                                    break;
                                }
                            }
                            coplanar.push_back(x);
                        }
                        if (pos && neg) break;
                    }
                    if (skip_subset || (pos && neg) || (!pos && !neg)) continue;
                    std::vector<int> verts = {a, b, c, d};
                    verts.insert(verts.end(), coplanar.begin(), coplanar.end());
                    std::sort(verts.begin(), verts.end());
                    if (!facet_sets.insert(verts).second) continue;
                    HullFacet f;
                    f.vertices = verts;
                    if (verts.size() > 4) out.all_simplicial = false;
                    // Orient the normal away from some strictly inner point.
                    int inner = -1;
                    for (int x = 0; x < n && inner < 0; ++x)
                        if (std::find(verts.begin(), verts.end(), x) == verts.end()) inner = x;
                    f.outward_normal = detail::facet_normal(pts, {a, b, c, d}, inner);
                    out.facets.push_back(f);
                }
    std::sort(out.facets.begin(), out.facets.end(),
              [](const HullFacet& a, const HullFacet& b) { return a.vertices < b.vertices; });
    return out;
}

// V - E + F - C over the boundary complex; zero for a 4-polytope boundary.
inline bool euler_characteristic_is_zero(const HullResult& hull) {
    std::set<int> verts;
    std::set<std::pair<int, int>> edges;
    std::set<std::array<int, 3>> triangles;
    for (const auto& f : hull.facets) {
        const auto& v = f.vertices;
        for (std::size_t i = 0; i < v.size(); ++i) {
            verts.insert(v[i]);
            for (std::size_t j = i + 1; j < v.size(); ++j) {
                edges.insert({v[i], v[j]});
                for (std::size_t k = j + 1; k < v.size(); ++k)
                    triangles.insert({v[i], v[j], v[k]});
            }
        }
    }
    long long chi = static_cast<long long>(verts.size()) - static_cast<long long>(edges.size()) +
                    static_cast<long long>(triangles.size()) -
                    static_cast<long long>(hull.facets.size());
    return chi == 0;
}

struct SpineSummary {
    int p = 0;
    int q = 0;
    long long facet_count = 0;
    bool all_facets_simplicial = false;
    bool action_invariant = false; // facet set closed under k -> k+1
    bool action_free = false;      // no facet fixed by a nontrivial shift
    long long spine_vertex_count = -1; // facet_count / p when free and simplicial
    long long monodromy_r = 0;         // q^{-1} mod p
    int reseeds = 0;
    OrbitConfig config;
};

namespace detail {

inline std::vector<int> shifted_facet(const std::vector<int>& f, int shift, int p) {
    std::vector<int> out;
    out.reserve(f.size());
    for (int v : f) out.push_back((v + shift) % p);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace detail

inline SpineSummary spine_summary(OrbitConfig config, int max_reseeds = 6) {
    const int p = config.p;
    int q = ((config.q % p) + p) % p;
    if (p < 3) throw std::invalid_argument("spine_summary: p must be at least 3");
    if (q == 0 || gcd(p, q) != 1)
        throw std::invalid_argument("spine_summary: p and q must be coprime");
    if (q == 1 || q == p - 1)
        throw DegenerateInput("spine_summary: q = +-1 mod p makes the orbit a flat regular "
                              "p-gon; the cut locus cannot be a simple spine");

    SpineSummary s;
    s.p = p;
    s.q = q;
    s.monodromy_r = mod_inverse(q, p).convert_to<long long>();

    HullResult hull;
    int attempt = 0;
    for (;;) {
        try {
            hull = convex_hull_4d(config.evaluator());
            break;
        } catch (const GeometricDegeneracy&) {
            if (++attempt > max_reseeds) throw;
            config = config.reseeded(attempt);
            ++s.reseeds;
        }
    }
    s.config = config;
    s.facet_count = static_cast<long long>(hull.facets.size());
    s.all_facets_simplicial = hull.all_simplicial;

    auto sets = hull.facet_sets();
    s.action_invariant = true;
    s.action_free = true;
    for (const auto& f : sets) {
        if (!sets.count(detail::shifted_facet(f, 1, p))) s.action_invariant = false;
        for (int shift = 1; shift < p && s.action_free; ++shift)
            if (detail::shifted_facet(f, shift, p) == f) s.action_free = false;
        if (!s.action_invariant) break;
    }
    if (s.action_invariant && s.action_free && s.all_facets_simplicial &&
        s.facet_count % p == 0)
        s.spine_vertex_count = s.facet_count / p;
    return s;
}

// Base-point invariance experiment: hulls of `trials` random generic base
// points must have
// the same combinatorial type, compared modulo the cyclic relabeling.
inline bool basepoint_invariance(int p, int q, int trials, unsigned seed = 20240817,
                                 int max_resamples = 40) {
    if (trials < 2) throw std::invalid_argument("basepoint_invariance: need at least 2 trials");
    q = ((q % p) + p) % p;
    if (q <= 1 || q >= p - 1 || gcd(p, q) != 1)
        throw std::invalid_argument("basepoint_invariance: requires coprime 1 < q < p-1");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> utheta(0.15, 1.42);
    std::uniform_real_distribution<double> uangle(0.0, 6.283185307179586);

    // Canonical form: the least facet-set image over all index rotations.
    auto canonical = [&](const HullResult& hull) {
        std::set<std::vector<int>> best;
        for (int shift = 0; shift < p; ++shift) {
            std::set<std::vector<int>> image;
            for (const auto& f : hull.facet_sets())
                image.insert(detail::shifted_facet(f, shift, p));
            if (shift == 0 || image < best) best = image;
        }
        return best;
    };

    std::optional<std::set<std::vector<int>>> reference;
    int done = 0, resamples = 0;
    while (done < trials) {
        OrbitConfig cfg{p, q, utheta(rng), uangle(rng), uangle(rng)};
        HullResult hull;
        try {
            hull = convex_hull_4d(cfg.evaluator());
        } catch (const GeometricDegeneracy&) {
            if (++resamples > max_resamples)
                throw GeometricDegeneracy("basepoint_invariance: resample cap exhausted");
            continue;
        }
        auto canon = canonical(hull);
        if (!reference) reference = canon;
        else if (*reference != canon) return false;
        ++done;
    }
    return true;
}

struct VoronoiRestrictionReport {
    bool all_agree = true;
    int ties = 0;
    int samples = 0;
};

// Restriction check: nearest site under geodesic (arc) distance vs nearest under
// ambient Euclidean distance, over random unit directions in R^4.
inline VoronoiRestrictionReport
sphere_voronoi_restriction_check(const std::vector<std::array<double, 4>>& points, int samples,
                                 unsigned seed = 20240817) {
    if (samples < 1) throw std::invalid_argument("sphere_voronoi_restriction_check: samples >= 1");
    if (points.empty()) throw std::invalid_argument("sphere_voronoi_restriction_check: no points");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    VoronoiRestrictionReport rep;
    rep.samples = samples;
    constexpr double tie_eps = 1e-12;
    for (int s = 0; s < samples; ++s) {
        std::array<double, 4> dir{};
        double norm = 0;
        do {
            norm = 0;
            for (auto& v : dir) {
                v = gauss(rng);
                norm += v * v;
            }
        } while (norm < 1e-12);
        norm = std::sqrt(norm);
        for (auto& v : dir) v /= norm;

        int best_euclid = -1, best_geo = -1;
        constexpr double inf = std::numeric_limits<double>::infinity();
        double de = inf, dg = inf, de2 = inf, dg2 = inf;
        for (std::size_t i = 0; i < points.size(); ++i) {
            double dist2 = 0, dot = 0;
            for (int c = 0; c < 4; ++c) {
                double diff = dir[c] - points[i][c];
                dist2 += diff * diff;
                dot += dir[c] * points[i][c];
            }
            double arc = std::acos(std::clamp(dot, -1.0, 1.0));
            if (dist2 < de) {
                de2 = de;
                de = dist2;
                best_euclid = static_cast<int>(i);
            } else if (dist2 < de2) {
                de2 = dist2;
            }
            if (arc < dg) {
                dg2 = dg;
                dg = arc;
                best_geo = static_cast<int>(i);
            } else if (arc < dg2) {
                dg2 = arc;
            }
        }
        bool tie = (points.size() > 1) && (de2 - de < tie_eps || dg2 - dg < tie_eps);
        if (tie) {
            ++rep.ties;
            continue;
        }
        if (best_euclid != best_geo) rep.all_agree = false;
    }
    return rep;
}

} // namespace lenspine
