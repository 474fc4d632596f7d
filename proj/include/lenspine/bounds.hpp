// Certificate engine for the rotation-distance lower bound: per-length-group
// diagonal counts, the ceiling inequality with its equality profile, and a
// brute-force minimizer over admissible profiles.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include <lenspine/flipdist.hpp>
#include <lenspine/triangulation.hpp>

namespace lenspine {

inline constexpr long long kDefaultProfileOracleCap = 14; // max sum of cf coefficients

// ceil(p/x) - 3; may be negative, in which case the bound is vacuous.
inline long long long_diagonal_lower_bound(int p, int x) {
    if (x < 2 || 2 * x > p) throw std::invalid_argument("long_diagonal_lower_bound: x out of range");
    return (p + x - 1) / x - 3;
}

namespace detail {

// Trace data narrowed to machine integers (everything is bounded by p).
struct SmallTrace {
    long long p = 0, q = 0;
    std::vector<long long> n;  // coefficients n1..nk
    std::vector<long long> pi; // convergent numerators p0..pk
    std::vector<long long> r;  // remainders r0..r_{k+1}
};

inline SmallTrace small_trace(const EuclidTrace& t) {
    SmallTrace s;
    s.p = t.p.convert_to<long long>();
    s.q = t.q.convert_to<long long>();
    for (const auto& x : t.coefficients) s.n.push_back(x.convert_to<long long>());
    for (const auto& x : t.convergents_num) s.pi.push_back(x.convert_to<long long>());
    for (const auto& x : t.remainders) s.r.push_back(x.convert_to<long long>());
    return s;
}

inline long long ceil_ll(long long a, long long b) { return (a + b - 1) / b; }

} // namespace detail

// s1 + sum_{i>=2} ceil(s_i / p_{i-1}).
inline long long profile_ceiling_sum(const LengthProfile& profile, const EuclidTrace& trace) {
    if (profile.counts.size() != trace.length())
        throw std::invalid_argument("profile_ceiling_sum: profile length must equal trace length");
    auto t = detail::small_trace(trace);
    long long v = 0;
    for (std::size_t i = 0; i < profile.counts.size(); ++i)
        v += detail::ceil_ll(profile.counts[i], t.pi[i]);
    return v;
}

// The unique equality profile: s1 = n1-2, s_l = p_{l-1} n_l for 1 < l < k,
// s_k = p_{k-1}(n_k - 1). Requires k >= 2 and the p > 2q normalization.
inline LengthProfile extremal_profile(const EuclidTrace& trace) {
    const std::size_t k = trace.length();
    if (k < 2) throw std::invalid_argument("extremal_profile: requires k >= 2 (q > 1)");
    if (2 * trace.q >= trace.p)
        throw std::invalid_argument("extremal_profile: requires the p > 2q normalization");
    auto t = detail::small_trace(trace);
    LengthProfile profile;
    profile.counts.resize(k);
    profile.counts[0] = t.n[0] - 2;
    for (std::size_t l = 2; l < k; ++l) profile.counts[l - 1] = t.pi[l - 1] * t.n[l - 1];
    profile.counts[k - 1] = t.pi[k - 1] * (t.n[k - 1] - 1);
    return profile;
}

// Exact minimum of profile_ceiling_sum over nonnegative integer profiles with
//   s_1 + ... + s_j = p_j - 3 + extra * p_{j-1}   (j = trace length by default)
//   s_1 + ... + s_i > p_i - 3 for i < j,
// together with the number of minimizers (saturated at 2) and one minimizer.
struct ProfileMinimum {
    long long minimum = 0;
    bool unique = false;
    LengthProfile argmin;
};

inline ProfileMinimum min_profile_ceiling_sum(const EuclidTrace& trace, long long extra = 0,
                                        std::optional<std::size_t> upto = std::nullopt,
                                        long long cap = kDefaultProfileOracleCap) {
    auto t = detail::small_trace(trace);
    const std::size_t k = upto.value_or(trace.length());
    if (k < 1 || k > trace.length())
        throw std::invalid_argument("min_profile_ceiling_sum: bad prefix length");
    long long coeff_sum = 0;
    for (std::size_t i = 0; i < trace.length(); ++i) coeff_sum += t.n[i];
    if (coeff_sum > cap)
        throw std::invalid_argument("min_profile_ceiling_sum: continued fraction exceeds the oracle cap");
    if (extra < 0) throw std::invalid_argument("min_profile_ceiling_sum: extra must be nonnegative");

    const long long target = t.pi[k] - 3 + extra * t.pi[k - 1];
    if (target < 0) throw std::invalid_argument("min_profile_ceiling_sum: empty profile space");
    const long long S = target;

    constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
    // f[sigma] = minimal partial objective over feasible prefixes summing to
    // sigma; cnt saturates at 2; choice[] records one optimal s_i per state
    // for argmin reconstruction.
    std::vector<long long> f(S + 1, kInf), g;
    std::vector<unsigned char> cnt(S + 1, 0), cnt_next;
    std::vector<std::vector<long long>> choice(k, std::vector<long long>(S + 1, -1));
    f[0] = 0;
    cnt[0] = 1;
    for (std::size_t i = 0; i < k; ++i) {
        g.assign(S + 1, kInf);
        cnt_next.assign(S + 1, 0);
        const long long div = t.pi[i]; // p_{i-1} in paper indexing
        for (long long sigma = 0; sigma <= S; ++sigma) {
            if (f[sigma] == kInf) continue;
            for (long long s = 0; sigma + s <= S; ++s) {
                long long ns = sigma + s;
                long long val = f[sigma] + detail::ceil_ll(s, div);
                if (val < g[ns]) {
                    g[ns] = val;
                    cnt_next[ns] = cnt[sigma];
                    choice[i][ns] = s;
                } else if (val == g[ns]) {
                    int c = cnt_next[ns] + cnt[sigma];
                    cnt_next[ns] = static_cast<unsigned char>(std::min(c, 2));
                }
            }
        }
        f = g;
        cnt = cnt_next;
        // Enforce the strict prefix-sum constraint for i < k: states with
        // s_1 + ... + s_i <= p_i - 3 are infeasible.
        if (i + 1 < k) {
            long long lower = t.pi[i + 1] - 3; // p_i - 3 in paper indexing
            for (long long sigma = 0; sigma <= std::min(lower, S); ++sigma) {
                f[sigma] = kInf;
                cnt[sigma] = 0;
            }
        }
    }
    if (f[S] == kInf) throw std::logic_error("min_profile_ceiling_sum: no feasible profile");

    ProfileMinimum out;
    out.minimum = f[S];
    out.unique = cnt[S] == 1;
    out.argmin.counts.assign(k, 0);
    // Walk the recorded choices backwards.
    {
        long long sigma = S;
        for (std::size_t i = k; i-- > 0;) {
            long long s = choice[i][sigma];
            if (s < 0) throw std::logic_error("min_profile_ceiling_sum: reconstruction failed");
            out.argmin.counts[i] = s;
            sigma -= s;
        }
    }
    return out;
}

// Full destroyed-diagonal certificate for one triangulation and rotation step.
struct BoundCertificate {
    int p = 0;
    int q = 0;            // as given
    int q_normalized = 0; // min(q, p-q); groups are computed in this frame
    bool mirrored = false;
    EuclidTrace trace;    // trace of (p, q_normalized)
    LengthProfile profile;
    std::vector<bool> partial_sum_ok;        // strict prefix sums, i = 1..k-1
    std::vector<long long> per_group_bound;  // ceil(s_i / p_{i-1})
    std::vector<long long> per_group_destroyed;
    std::vector<bool> per_group_ok;          // destroyed_i >= bound_i
    long long bound_value = 0;               // s1 + sum ceil(s_i / p_{i-1})
    long long target = 0;                    // E(p,q) - 3
    bool extremal = false;                   // profile is the unique equality profile
    long long destroyed_total = 0;

    bool destroyed_meets_bound() const { return destroyed_total >= bound_value; }
    bool destroyed_meets_target() const { return destroyed_total >= target; }
};

inline BoundCertificate certify(const Triangulation& t, int q) {
    const int p = t.polygon_size();
    q = ((q % p) + p) % p;
    if (q == 0 || gcd(p, q) != 1)
        throw std::invalid_argument("certify: requires coprime 0 < q < p");

    BoundCertificate cert;
    cert.p = p;
    cert.q = q;
    // Normalize to q < p/2 by reflecting the polygon: a clockwise rotation by
    // 2*pi*q/p is a counterclockwise rotation by 2*pi*(p-q)/p.
    cert.mirrored = 2 * q > p;
    cert.q_normalized = cert.mirrored ? p - q : q;
    Triangulation tn = cert.mirrored ? mirror(t) : t;

    cert.trace = euclid_trace(p, cert.q_normalized);
    auto st = detail::small_trace(cert.trace);
    const std::size_t k = cert.trace.length();
    cert.profile = length_profile(tn, cert.q_normalized);
    cert.target = euclid_subtractive(p, q).convert_to<long long>() - 3;

    long long prefix = 0;
    for (std::size_t i = 1; i < k; ++i) {
        prefix += cert.profile.counts[i - 1];
        cert.partial_sum_ok.push_back(prefix > st.pi[i] - 3);
    }

    cert.bound_value = profile_ceiling_sum(cert.profile, cert.trace);

    if (k == 1) {
        cert.extremal = cert.profile.counts[0] == st.p - 3;
    } else {
        cert.extremal = cert.profile == extremal_profile(cert.trace);
    }

    // Observed destruction, grouped by diagonal length.
    Triangulation rotated = rotate(tn, cert.q_normalized);
    cert.per_group_destroyed.assign(k, 0);
    for (const auto& d : tn.diagonals()) {
        if (rotated.contains(d)) continue;
        long long len = diagonal_length(p, d);
        for (std::size_t i = 1; i <= k; ++i)
            if (len > st.r[i] && len <= st.r[i - 1]) {
                ++cert.per_group_destroyed[i - 1];
                break;
            }
    }
    for (std::size_t i = 0; i < k; ++i) {
        cert.per_group_bound.push_back(detail::ceil_ll(cert.profile.counts[i], st.pi[i]));
        cert.per_group_ok.push_back(cert.per_group_destroyed[i] >= cert.per_group_bound[i]);
        cert.destroyed_total += cert.per_group_destroyed[i];
    }
    return cert;
}

} // namespace lenspine
