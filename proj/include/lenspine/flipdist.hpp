// Exact rotation distance on the flip graph: bidirectional breadth-first
// search for small p, budgeted iterative deepening with an admissible
// heuristic for targeted instances.
#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include <lenspine/triangulation.hpp>

namespace lenspine {

inline constexpr int kDefaultFlipSearchCap = 13;

// A start triangulation and an ordered list of flipped diagonals; each listed
// diagonal must be present at the time of its flip.
struct FlipSequence {
    Triangulation start;
    std::vector<Diagonal> flips;

    std::size_t length() const { return flips.size(); }

    Triangulation end() const {
        Triangulation cur = start;
        for (const auto& d : flips) cur = flip(cur, d);
        return cur;
    }

    FlipSequence mirrored() const {
        FlipSequence out{mirror(start), {}};
        const int p = start.polygon_size();
        out.flips.reserve(flips.size());
        for (const auto& d : flips)
            out.flips.emplace_back((p - d.a) % p, (p - d.b) % p);
        return out;
    }
};

namespace detail {

inline std::vector<Triangulation> flip_neighbors(const Triangulation& t) {
    std::vector<Triangulation> out;
    out.reserve(t.diagonals().size());
    for (const auto& d : t.diagonals()) out.push_back(flip(t, d));
    return out;
}

// Distances from `source` to every triangulation within `limit` flips.
inline std::unordered_map<std::string, int> bfs_distances(const Triangulation& source, int limit) {
    std::unordered_map<std::string, int> dist;
    std::vector<Triangulation> frontier = {source};
    dist[source.key()] = 0;
    for (int depth = 0; depth < limit && !frontier.empty(); ++depth) {
        std::vector<Triangulation> next;
        for (const auto& t : frontier)
            for (const auto& u : flip_neighbors(t)) {
                auto [it, inserted] = dist.try_emplace(u.key(), depth + 1);
                if (inserted) next.push_back(u);
            }
        frontier = std::move(next);
    }
    return dist;
}

inline void require_same_polygon(const Triangulation& a, const Triangulation& b, const char* where) {
    if (a.polygon_size() != b.polygon_size())
        throw std::invalid_argument(std::string(where) + ": polygon sizes differ");
}

// Admissible heuristic: each flip changes exactly one diagonal, so the
// number of diagonals not yet in place bounds the remaining distance.
inline int set_difference_count(const Triangulation& a, const Triangulation& b) {
    const auto& x = a.diagonals();
    const auto& y = b.diagonals();
    int common = 0;
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i] == y[j]) { ++common; ++i; ++j; }
        else if (x[i] < y[j]) ++i;
        else ++j;
    }
    return static_cast<int>(x.size()) - common;
}

} // namespace detail

// Exact flip-graph geodesic distance with a deterministic witness: after the
// bidirectional length computation, the witness greedily descends the
// distance field from t1 choosing the lexicographically least neighbor.
inline std::pair<int, FlipSequence> distance_bfs(const Triangulation& t1, const Triangulation& t2,
                                                 int cap = kDefaultFlipSearchCap) {
    detail::require_same_polygon(t1, t2, "distance_bfs");
    if (t1.polygon_size() > cap)
        throw std::invalid_argument("distance_bfs: p exceeds the exhaustive search cap");
    if (t1 == t2) return {0, FlipSequence{t1, {}}};

    // Bidirectional search, expanding the smaller frontier first.
    std::unordered_map<std::string, int> da{{t1.key(), 0}}, db{{t2.key(), 0}};
    std::vector<Triangulation> fa = {t1}, fb = {t2};
    int depth_a = 0, depth_b = 0;
    std::optional<int> found;
    // Keep expanding full levels until the completed depths certify that no
    // undiscovered meeting vertex can beat the best total seen so far.
    while (!found || depth_a + depth_b < *found) {
        bool expand_a = fa.size() <= fb.size();
        auto& frontier = expand_a ? fa : fb;
        auto& mine = expand_a ? da : db;
        auto& theirs = expand_a ? db : da;
        int& my_depth = expand_a ? depth_a : depth_b;
        if (frontier.empty())
            throw std::logic_error("distance_bfs: flip graph is connected; frontiers cannot die out");
        std::vector<Triangulation> next;
        for (const auto& t : frontier)
            for (const auto& u : detail::flip_neighbors(t)) {
                auto key = u.key();
                if (mine.try_emplace(key, my_depth + 1).second) {
                    if (auto it = theirs.find(key); it != theirs.end()) {
                        int total = my_depth + 1 + it->second;
                        if (!found || total < *found) found = total;
                    }
                    next.push_back(u);
                }
            }
        frontier = std::move(next);
        ++my_depth;
    }

    const int d = *found;
    auto dist_to_goal = detail::bfs_distances(t2, d);
    FlipSequence witness{t1, {}};
    Triangulation cur = t1;
    for (int step = d; step > 0; --step) {
        bool advanced = false;
        for (const auto& diag : cur.diagonals()) {
            Triangulation u = flip(cur, diag);
            auto it = dist_to_goal.find(u.key());
            if (it != dist_to_goal.end() && it->second == step - 1) {
                witness.flips.push_back(diag);
                cur = u;
                advanced = true;
                break; // diagonals are sorted, so this is the least choice
            }
        }
        if (!advanced) throw std::logic_error("distance_bfs: witness reconstruction failed");
    }
    return {d, witness};
}

// Geodesic of length <= budget if one exists (iterative deepening A* with
// the set-difference heuristic); returns the exact distance when found.
inline std::optional<std::pair<int, FlipSequence>>
distance_bounded(const Triangulation& t1, const Triangulation& t2, int budget) {
    detail::require_same_polygon(t1, t2, "distance_bounded");
    if (budget < 0) throw std::invalid_argument("distance_bounded: budget must be nonnegative");
    if (t1 == t2) return {{0, FlipSequence{t1, {}}}};

    std::vector<Diagonal> path;
    // Depth-first search bounded by threshold on f = g + h; returns true when
    // t2 is reached. Never undoes the flip just made (a geodesic cannot
    // revisit the grandparent state).
    std::function<bool(const Triangulation&, int, int, std::optional<Diagonal>)> dfs =
        [&](const Triangulation& cur, int g, int threshold,
            std::optional<Diagonal> created) -> bool {
            int h = detail::set_difference_count(cur, t2);
            if (g + h > threshold) return false;
            if (h == 0) return true;
            detail::AdjacencyMask adj(cur);
            for (const auto& d : cur.diagonals()) {
                if (created && d == *created) continue;
                auto [c1, c2] = detail::flip_apexes(adj, d);
                path.push_back(d);
                if (dfs(flip(cur, d), g + 1, threshold, Diagonal(c1, c2))) return true;
                path.pop_back();
            }
            return false;
        };

    int h0 = detail::set_difference_count(t1, t2);
    for (int threshold = h0; threshold <= budget; ++threshold) {
        path.clear();
        if (dfs(t1, 0, threshold, std::nullopt))
            return {{static_cast<int>(path.size()), FlipSequence{t1, path}}};
    }
    return std::nullopt;
}

// Minimum of d(t, rotate(t, q)) over all triangulations of the p-gon, with a
// minimizing triangulation. Works on rotation-orbit representatives (the
// distance is rotation invariant) and prunes with the exact lower bound
// d >= destroyed_count.
inline std::pair<int, Triangulation> min_rotation_distance(int p, int q,
                                                           int cap = kDefaultFlipSearchCap) {
    if (p < 3 || p > cap)
        throw std::invalid_argument("min_rotation_distance: p out of range (cap " +
                                    std::to_string(cap) + ")");
    q = ((q % p) + p) % p;

    // Orbit representatives under rotation, ordered by the destroyed-diagonal
    // lower bound so likely minimizers come first.
    std::vector<std::pair<int, Triangulation>> reps;
    {
        std::unordered_map<std::string, bool> seen;
        enumerate_all(p, [&](const Triangulation& t) {
            std::string canon = t.key();
            for (int j = 1; j < p; ++j) {
                std::string k = rotate(t, j).key();
                if (k < canon) canon = k;
            }
            if (seen.try_emplace(std::move(canon), true).second)
                reps.emplace_back(destroyed_count(t, q), t);
        }, cap);
    }
    std::stable_sort(reps.begin(), reps.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });

    int best = distance_bfs(reps.front().second, rotate(reps.front().second, q), cap).first;
    Triangulation argmin = reps.front().second;
    for (std::size_t i = 1; i < reps.size() && best > 0; ++i) {
        if (reps[i].first >= best) continue; // d >= destroyed >= best
        if (auto r = distance_bounded(reps[i].second, rotate(reps[i].second, q), best - 1)) {
            best = r->first;
            argmin = reps[i].second;
        }
    }
    return {best, argmin};
}

} // namespace lenspine
