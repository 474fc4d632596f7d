// SVG rendering of a triangulated point set with an optional Voronoi overlay,
// in the style of the optimal-triangulation figures: red triangulation edges
// over a gray Voronoi diagram, clipped to a fixed viewport.
#pragma once

#include <array>
#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <lenspine/triangulation.hpp>

namespace lenspine {

namespace detail {

using Vec2 = std::array<double, 2>;

// The p-2 triangles of the triangulation, by recursive apex splitting.
inline std::vector<std::array<int, 3>> triangle_list(const Triangulation& t) {
    AdjacencyMask adj(t);
    std::vector<std::array<int, 3>> out;
    std::function<void(int, int)> split = [&](int lo, int hi) {
        if (hi - lo < 2) return;
        int apex = adj.apex_in_arc(lo, hi);
        out.push_back({lo, apex, hi});
        split(lo, apex);
        split(apex, hi);
    };
    split(0, t.polygon_size() - 1);
    return out;
}

inline Vec2 circumcenter(const Vec2& a, const Vec2& b, const Vec2& c) {
    double d = 2 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]));
    double ux = ((a[0] * a[0] + a[1] * a[1]) * (b[1] - c[1]) +
                 (b[0] * b[0] + b[1] * b[1]) * (c[1] - a[1]) +
                 (c[0] * c[0] + c[1] * c[1]) * (a[1] - b[1])) / d;
    double uy = ((a[0] * a[0] + a[1] * a[1]) * (c[0] - b[0]) +
                 (b[0] * b[0] + b[1] * b[1]) * (a[0] - c[0]) +
                 (c[0] * c[0] + c[1] * c[1]) * (b[0] - a[0])) / d;
    return {ux, uy};
}

// Largest s >= 0 keeping origin + s * dir inside the box |x|,|y| <= limit.
inline double clip_scale(const Vec2& origin, const Vec2& dir, double limit) {
    double s = 1e9;
    for (int c = 0; c < 2; ++c) {
        if (dir[c] > 1e-15) s = std::min(s, (limit - origin[c]) / dir[c]);
        else if (dir[c] < -1e-15) s = std::min(s, (-limit - origin[c]) / dir[c]);
    }
    return std::max(0.0, s);
}

} // namespace detail

struct FigureOptions {
    bool voronoi_overlay = true;
    double viewport = 1.2; // matches the plot range of the source figure
    int size_px = 640;
};

// SVG with the polygon boundary, its p-3 diagonals (class "diagonal"), its p
// vertices (class "vertex"), and optionally the Voronoi diagram of the point
// set (group class "voronoi").
inline std::string render_svg(const Triangulation& t,
                              const std::vector<std::array<double, 2>>& pts,
                              const FigureOptions& opts = {}) {
    const int p = t.polygon_size();
    if (static_cast<int>(pts.size()) != p)
        throw std::invalid_argument("render_svg: point count must equal polygon size");

    std::ostringstream os;
    os.precision(6);
    const double v = opts.viewport;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.size_px << "\" height=\""
       << opts.size_px << "\" viewBox=\"" << -v << " " << -v << " " << 2 * v << " " << 2 * v
       << "\">\n";
    // y flips so the mathematical orientation matches the screen.
    auto X = [&](int k) { return pts[k][0]; };
    auto Y = [&](int k) { return -pts[k][1]; };

    if (opts.voronoi_overlay) {
        os << "  <g class=\"voronoi\" stroke=\"#888888\" stroke-width=\"0.006\" fill=\"none\">\n";
        auto tris = detail::triangle_list(t);
        std::vector<detail::Vec2> centers;
        centers.reserve(tris.size());
        std::map<std::pair<int, int>, std::vector<std::size_t>> edge_tris;
        for (std::size_t i = 0; i < tris.size(); ++i) {
            centers.push_back(detail::circumcenter(pts[tris[i][0]], pts[tris[i][1]], pts[tris[i][2]]));
            for (int e = 0; e < 3; ++e) {
                int a = tris[i][e], b = tris[i][(e + 1) % 3];
                edge_tris[{std::min(a, b), std::max(a, b)}].push_back(i);
            }
        }
        for (const auto& [edge, owners] : edge_tris) {
            if (owners.size() == 2) {
                const auto& c1 = centers[owners[0]];
                const auto& c2 = centers[owners[1]];
                os << "    <line x1=\"" << c1[0] << "\" y1=\"" << -c1[1] << "\" x2=\"" << c2[0]
                   << "\" y2=\"" << -c2[1] << "\"/>\n";
            } else if (owners.size() == 1) {
                // Unbounded cell edge: follow the side's perpendicular
                // bisector outward from the circumcenter to the viewport.
                const auto& cc = centers[owners[0]];
                detail::Vec2 mid = {(pts[edge.first][0] + pts[edge.second][0]) / 2,
                                    (pts[edge.first][1] + pts[edge.second][1]) / 2};
                detail::Vec2 dir = {mid[0] - cc[0], mid[1] - cc[1]};
                double len = std::hypot(dir[0], dir[1]);
                if (len < 1e-12) {
                    dir = {mid[0], mid[1]};
                    len = std::hypot(dir[0], dir[1]);
                }
                if (len < 1e-12) continue;
                dir = {dir[0] / len, dir[1] / len};
                if (dir[0] * mid[0] + dir[1] * mid[1] < 0) dir = {-dir[0], -dir[1]};
                double s = detail::clip_scale(cc, dir, v);
                os << "    <line x1=\"" << cc[0] << "\" y1=\"" << -cc[1] << "\" x2=\""
                   << cc[0] + s * dir[0] << "\" y2=\"" << -(cc[1] + s * dir[1]) << "\"/>\n";
            }
        }
        os << "  </g>\n";
    }

    os << "  <g class=\"triangulation\" stroke=\"#cc2222\" stroke-width=\"0.01\" fill=\"none\">\n";
    os << "    <polygon class=\"boundary\" points=\"";
    for (int k = 0; k < p; ++k) os << X(k) << "," << Y(k) << (k + 1 < p ? " " : "");
    os << "\"/>\n";
    for (const auto& d : t.diagonals())
        os << "    <line class=\"diagonal\" x1=\"" << X(d.a) << "\" y1=\"" << Y(d.a) << "\" x2=\""
           << X(d.b) << "\" y2=\"" << Y(d.b) << "\"/>\n";
    os << "  </g>\n";

    os << "  <g class=\"points\" fill=\"#000000\">\n";
    for (int k = 0; k < p; ++k)
        os << "    <circle class=\"vertex\" cx=\"" << X(k) << "\" cy=\"" << Y(k)
           << "\" r=\"0.018\"/>\n";
    os << "  </g>\n</svg>\n";
    return os.str();
}

} // namespace lenspine
