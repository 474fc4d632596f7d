// The acceptance suite: one entry per criterion, each returning a pass/fail
// verdict with a short account of what was covered. The CLI selftest command
// and the acceptance binary both drive this.
#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <lenspine/bounds.hpp>
#include <lenspine/construct.hpp>
#include <lenspine/farey.hpp>
#include <lenspine/flipdist.hpp>
#include <lenspine/report.hpp>
#include <lenspine/spinehull.hpp>

namespace lenspine {

struct SelftestOptions {
    int max_p_euclid = 500;     // criterion 1
    int max_p_farey = 200;      // criterion 2
    int max_p_exhaustive = 12;  // criteria 3 and 9
    long long max_cf_sum = 14;  // criterion 4
    int max_p_hull = 20;        // criterion 6
    int voronoi_samples = 10000; // criterion 8
    unsigned seed = 20240817;
};

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double elapsed_ms = 0;
};

namespace selftest_detail {

struct Failure {
    std::ostringstream os;
    long long count = 0;

    void note(const std::string& msg) {
        if (count < 5) os << (count ? "; " : "") << msg;
        ++count;
    }
    bool any() const { return count > 0; }
    std::string text() const {
        std::string s = os.str();
        if (count > 5) s += "; ... (" + std::to_string(count) + " failures total)";
        return s;
    }
};

template <typename Fn>
CriterionResult run(int index, const std::string& name, Fn&& fn) {
    CriterionResult res;
    res.index = index;
    res.name = name;
    Stopwatch sw;
    Failure fail;
    long long covered = 0;
    try {
        fn(fail, covered);
        res.pass = !fail.any();
        res.detail = res.pass ? (std::to_string(covered) + " checks") : fail.text();
    } catch (const std::exception& ex) {
        res.pass = false;
        res.detail = std::string("exception: ") + ex.what();
    }
    res.elapsed_ms = sw.ms();
    return res;
}

inline std::string pq(int p, int q) {
    return "(" + std::to_string(p) + "," + std::to_string(q) + ")";
}

} // namespace selftest_detail

// 1. The complement and inverse identities of E, the convergent congruence
//    p_i q = (-1)^i r_{i+1} (mod p), and the coefficient-convergent sum
//    identity, for all coprime pairs with p <= cap.
inline CriterionResult criterion_euclid_identities(const SelftestOptions& opt) {
    using namespace selftest_detail;
    return run(1, "euclid complement/inverse/congruence identities, p <= " +
                      std::to_string(opt.max_p_euclid),
               [&](Failure& fail, long long& covered) {
        for (int p = 2; p <= opt.max_p_euclid; ++p) {
            for (int q = 1; q < p; ++q) {
                if (gcd(p, q) != 1) continue;
                Int e = euclid_subtractive(p, q);
                if (e != euclid_subtractive(p, p - q)) fail.note("T1a fails at " + pq(p, q));
                Int r = mod_inverse(q, p);
                if (e != euclid_subtractive(Int(p), r)) fail.note("T1b fails at " + pq(p, q));
                auto t = euclid_trace(p, q);
                const std::size_t k = t.length();
                for (std::size_t i = 0; i <= k; ++i) {
                    Int lhs = (t.convergents_num[i] * q) % p;
                    Int rhs = (i % 2 == 0 ? t.remainders[i + 1] : p - t.remainders[i + 1]) % p;
                    if (lhs != rhs) fail.note("convergent congruence fails at " + pq(p, q));
                }
                Int acc = 0;
                for (std::size_t j = 1; j <= k; ++j) {
                    acc += t.convergents_num[j - 1] * t.coefficients[j - 1];
                    if (acc != t.convergents_num[j] + t.convergents_num[j - 1] - 1)
                        fail.note("coefficient-convergent identity fails at " + pq(p, q));
                }
                covered += 3 + k;
            }
        }
    });
}

// 2. crossing_count agrees with E(p,q) and with itself across both walk
//    algorithms, for all coprime pairs with p <= cap.
inline CriterionResult criterion_farey_crossings(const SelftestOptions& opt) {
    using namespace selftest_detail;
    return run(2, "farey crossing counts equal E(p,q), p <= " + std::to_string(opt.max_p_farey),
               [&](Failure& fail, long long& covered) {
        for (int p = 1; p <= opt.max_p_farey; ++p)
            for (int q = 1; q < p; ++q) {
                if (gcd(p, q) != 1) continue;
                Int tree = crossing_count_tree(p, q);
                if (tree != euclid_subtractive(p, q))
                    fail.note("tree count != E at " + pq(p, q));
                if (p > q && crossing_count_geodesic(p, q) != tree)
                    fail.note("geodesic walk disagrees at " + pq(p, q));
                covered += 2;
            }
    });
}

// 3. Exhaustive check that the minimum rotation distance is
//    max(0, E-3) for every q, and destroyed_count >= E-3 for coprime q.
inline CriterionResult criterion_exhaustive_minimum(const SelftestOptions& opt) {
    using namespace selftest_detail;
    return run(3, "exhaustive rotation-distance minimum, 3 <= p <= " +
                      std::to_string(opt.max_p_exhaustive),
               [&](Failure& fail, long long& covered) {
        for (int p = 3; p <= opt.max_p_exhaustive; ++p) {
            for (int q = 0; q < p; ++q) {
                long long target =
                    q == 0 ? 0
                           : std::max<long long>(
                                 0, euclid_subtractive(p, q).convert_to<long long>() - 3);
                auto [dmin, argmin] = min_rotation_distance(p, q, opt.max_p_exhaustive);
                if (dmin != target)
                    fail.note("min distance " + std::to_string(dmin) + " != " +
                              std::to_string(target) + " at " + pq(p, q));
                ++covered;
            }
            enumerate_all(p, [&](const Triangulation& t) {
                for (int q = 1; q < p; ++q) {
                    if (gcd(p, q) != 1) continue;
                    long long target = euclid_subtractive(p, q).convert_to<long long>() - 3;
                    if (destroyed_count(t, q) < target)
                        fail.note("destroyed_count below E-3 at " + pq(p, q));
                    ++covered;
                }
            }, opt.max_p_exhaustive);
        }
    });
}

// 4. Profile oracle: brute-force minimization over admissible profiles.
inline CriterionResult criterion_profile_oracle(const SelftestOptions& opt) {
    using namespace selftest_detail;
    return run(4, "ceiling-sum profile oracle, sum of coefficients <= " +
                      std::to_string(opt.max_cf_sum),
               [&](Failure& fail, long long& covered) {
        // Coprime pairs with E(p,q) <= cap are exactly the canonical
        // coefficient strings (positive entries, last >= 2 unless length 1)
        // with that sum; enumerate the strings and fold up the continuants.
        auto consider = [&](const std::vector<long long>& coeffs) {
            long long p = coeffs.back(), q = 1;
            for (auto it = coeffs.rbegin() + 1; it != coeffs.rend(); ++it) {
                std::swap(p, q);
                p += *it * q;
            }
            if (p < 3) return;
            auto trace = euclid_trace(p, q);
            auto r = min_profile_ceiling_sum(trace, 0, std::nullopt, opt.max_cf_sum);
            Int e = euclid_subtractive(p, q);
            long long target = e.convert_to<long long>() - 3;
            if (r.minimum != target) fail.note("oracle min != E-3 at " + pq(p, q));
            if (2 * q < p) {
                if (!r.unique) fail.note("minimizer not unique at " + pq(p, q));
                if (trace.length() >= 2 && !(r.argmin == extremal_profile(trace)))
                    fail.note("minimizer differs from the extremal profile at " + pq(p, q));
                if (trace.length() == 1 && !(r.argmin == LengthProfile{{p - 3}}))
                    fail.note("k = 1 minimizer is not [p-3] at " + pq(p, q));
            }
            covered += 2;
        };
        std::vector<long long> coeffs;
        std::function<void(long long)> gen = [&](long long remaining) {
            if (!coeffs.empty() && coeffs.back() >= 2) consider(coeffs);
            for (long long n = 1; n <= remaining; ++n) {
                coeffs.push_back(n);
                gen(remaining - n);
                coeffs.pop_back();
            }
        };
        gen(opt.max_cf_sum);
    });
}

// 5. The (34,13) construction: certificate and five-flip witness.
inline CriterionResult criterion_headline_instance(const SelftestOptions&) {
    using namespace selftest_detail;
    return run(5, "optimal triangulation for (34,13)", [&](Failure& fail, long long& covered) {
        auto r = optimal_triangulation(34, 13);
        if (r.certificate.destroyed_total != 5) fail.note("destroyed != 5");
        if (!(r.certificate.profile == LengthProfile{{0, 2, 3, 5, 8, 13}}))
            fail.note("length profile is not [0,2,3,5,8,13]");
        if (!r.certificate.extremal) fail.note("profile not extremal");
        if (r.witness.length() != 5) fail.note("witness length != 5");
        if (!(r.witness.end() == rotate(r.triangulation, 13)))
            fail.note("witness does not reach the rotated triangulation");
        if (r.from_exhaustive) fail.note("construction did not come from the eccentricity grid");
        covered += 6;
    });
}

// 6. Spine counts via hulls: facet_count = p (E(p,q) - 3), simplicial facets,
//    incremental hull equal to the brute-force oracle, Euler relation.
inline CriterionResult criterion_spine_counts(const SelftestOptions& opt) {
    using namespace selftest_detail;
    return run(6, "spine vertex counts from 4D hulls, p <= " + std::to_string(opt.max_p_hull),
               [&](Failure& fail, long long& covered) {
        for (int p = 5; p <= opt.max_p_hull; ++p) {
            for (int q = 2; q < p - 1; ++q) {
                if (gcd(p, q) != 1) continue;
                long long target = euclid_subtractive(p, q).convert_to<long long>() - 3;
                auto summary = spine_summary(OrbitConfig{p, q});
                if (summary.facet_count != p * target)
                    fail.note("facet count != p(E-3) at " + pq(p, q));
                if (!summary.all_facets_simplicial) fail.note("non-simplicial facets at " + pq(p, q));
                if (summary.spine_vertex_count != target)
                    fail.note("spine vertex count != E-3 at " + pq(p, q));
                if ((summary.monodromy_r * q) % p != 1) fail.note("monodromy wrong at " + pq(p, q));
                auto eval = summary.config.evaluator();
                auto hull = convex_hull_4d(eval);
                auto brute = convex_hull_4d_bruteforce(eval);
                if (hull.facet_sets() != brute.facet_sets())
                    fail.note("incremental and brute-force hulls differ at " + pq(p, q));
                if (!euler_characteristic_is_zero(hull))
                    fail.note("Euler relation fails at " + pq(p, q));
                covered += 6;
            }
        }
        // Anchors from the hull oracle.
        if (convex_hull_4d(OrbitConfig{5, 2}.evaluator()).facets.size() != 5)
            fail.note("(5,2) hull is not the 4-simplex");
        if (convex_hull_4d(OrbitConfig{7, 2}.evaluator()).facets.size() != 14)
            fail.note("(7,2) hull does not have 14 facets");
        covered += 2;
    });
}

// 7. Base-point invariance experiments.
inline CriterionResult criterion_basepoint_invariance(const SelftestOptions& opt) {
    using namespace selftest_detail;
    return run(7, "base-point invariance of the hull type", [&](Failure& fail, long long& covered) {
        if (!basepoint_invariance(7, 2, 5, opt.seed)) fail.note("(7,2) hull types differ");
        if (!basepoint_invariance(11, 3, 3, opt.seed)) fail.note("(11,3) hull types differ");
        covered += 2;
    });
}

// 8. Voronoi restriction spot check on the (5,2) orbit.
inline CriterionResult criterion_voronoi_restriction(const SelftestOptions& opt) {
    using namespace selftest_detail;
    return run(8, "sphere vs ambient Voronoi nearest sites, " +
                      std::to_string(opt.voronoi_samples) + " samples",
               [&](Failure& fail, long long& covered) {
        auto pts = orbit_points(OrbitConfig{5, 2});
        auto rep = sphere_voronoi_restriction_check(pts, opt.voronoi_samples, opt.seed);
        if (!rep.all_agree) fail.note("nearest-site disagreement on the (5,2) orbit");
        covered += rep.samples - rep.ties;
    });
}

// 9. Property suites: flip involution, rotation equivariance, the
//    long-diagonal bound, strict prefix-sum inequalities, metric axioms on
//    sampled triples.
inline CriterionResult criterion_property_suites(const SelftestOptions& opt) {
    using namespace selftest_detail;
    return run(9, "flip/rotation/profile property suites, p <= " +
                      std::to_string(opt.max_p_exhaustive),
               [&](Failure& fail, long long& covered) {
        std::mt19937_64 rng(opt.seed);
        for (int p = 4; p <= opt.max_p_exhaustive; ++p) {
            const bool full = p <= 9;
            long long index = 0;
            enumerate_all(p, [&](const Triangulation& t) {
                ++index;
                if (!full && index % 97 != 1) return; // sampled above p = 9
                // Flip involution and single-diagonal change.
                for (const auto& d : t.diagonals()) {
                    auto u = flip(t, d);
                    if (detail::set_difference_count(t, u) != 1)
                        fail.note("flip changes more than one diagonal");
                    std::vector<Diagonal> fresh;
                    std::set_difference(u.diagonals().begin(), u.diagonals().end(),
                                        t.diagonals().begin(), t.diagonals().end(),
                                        std::back_inserter(fresh));
                    if (fresh.size() != 1 || !(flip(u, fresh.front()) == t))
                        fail.note("flip is not an involution");
                    ++covered;
                }
                // Rotation equivariance.
                int q = static_cast<int>(rng() % p);
                const auto& ds = t.diagonals();
                if (!ds.empty()) {
                    const Diagonal d = ds[rng() % ds.size()];
                    Diagonal dq((d.a + q) % p, (d.b + q) % p);
                    if (!(flip(rotate(t, q), dq) == rotate(flip(t, d), q)))
                        fail.note("rotate does not commute with flip");
                    ++covered;
                }
                // Long-diagonal bound for every admissible threshold.
                for (int x = 2; 2 * x <= p; ++x) {
                    if (long_diagonal_count(t, x) < long_diagonal_lower_bound(p, x))
                        fail.note("long-diagonal bound fails");
                    ++covered;
                }
                // Strict prefix-sum inequalities of the length profile.
                for (int q2 = 1; q2 < p; ++q2) {
                    if (gcd(p, q2) != 1) continue;
                    auto trace = euclid_trace(p, q2);
                    auto prof = length_profile(t, q2);
                    long long prefix = 0;
                    for (std::size_t i = 1; i < trace.length(); ++i) {
                        prefix += prof.counts[i - 1];
                        if (prefix <= trace.convergents_num[i].convert_to<long long>() - 3)
                            fail.note("prefix-sum inequality fails at " + pq(p, q2));
                        ++covered;
                    }
                }
            }, opt.max_p_exhaustive);
        }
        // Metric axioms on sampled triples.
        for (int p = 5; p <= std::min(8, opt.max_p_exhaustive); ++p) {
            auto all = all_triangulations(p, opt.max_p_exhaustive);
            std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
            for (int trial = 0; trial < 6; ++trial) {
                const auto& a = all[pick(rng)];
                const auto& b = all[pick(rng)];
                const auto& c = all[pick(rng)];
                int ab = distance_bfs(a, b, opt.max_p_exhaustive).first;
                int ba = distance_bfs(b, a, opt.max_p_exhaustive).first;
                int bc = distance_bfs(b, c, opt.max_p_exhaustive).first;
                int ac = distance_bfs(a, c, opt.max_p_exhaustive).first;
                if (ab != ba) fail.note("distance not symmetric");
                if (ac > ab + bc) fail.note("triangle inequality fails");
                if ((ab == 0) != (a == b)) fail.note("identity axiom fails");
                covered += 3;
            }
        }
    });
}

inline std::vector<CriterionResult> run_acceptance(const SelftestOptions& opt,
                                                   std::ostream* progress = nullptr) {
    std::vector<CriterionResult> results;
    auto emit = [&](CriterionResult r) {
        if (progress)
            *progress << "[" << r.index << "/9] " << r.name << " ... "
                      << (r.pass ? "PASS" : "FAIL") << " (" << static_cast<long long>(r.elapsed_ms)
                      << " ms" << (r.pass ? ", " + r.detail : "") << ")"
                      << (r.pass ? "" : "\n      " + r.detail) << std::endl;
        results.push_back(std::move(r));
    };
    emit(criterion_euclid_identities(opt));
    emit(criterion_farey_crossings(opt));
    emit(criterion_exhaustive_minimum(opt));
    emit(criterion_profile_oracle(opt));
    emit(criterion_headline_instance(opt));
    emit(criterion_spine_counts(opt));
    emit(criterion_basepoint_invariance(opt));
    emit(criterion_voronoi_restriction(opt));
    emit(criterion_property_suites(opt));
    return results;
}

} // namespace lenspine
