#include <catch2/catch_amalgamated.hpp>

#include <lenspine/construct.hpp>
#include <lenspine/figure.hpp>
#include <lenspine/report.hpp>

namespace {

std::size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    std::size_t n = 0;
    for (std::size_t pos = haystack.find(needle); pos != std::string::npos;
         pos = haystack.find(needle, pos + needle.size()))
        ++n;
    return n;
}

} // namespace

TEST_CASE("svg contains p vertices, p-3 diagonals, and the voronoi layer") {
    auto pts = lenspine::perturbed_points(7, 2, 0.01);
    auto del = lenspine::delaunay_of_convex_points(pts);
    auto svg = lenspine::render_svg(del.triangulation, pts.coords);

    CHECK(count_occurrences(svg, "class=\"vertex\"") == 7);
    CHECK(count_occurrences(svg, "class=\"diagonal\"") == 4);
    CHECK(count_occurrences(svg, "class=\"voronoi\"") == 1);
    CHECK(count_occurrences(svg, "<svg") == 1);
    CHECK(count_occurrences(svg, "</svg>") == 1);
    CHECK(count_occurrences(svg, "<g ") == count_occurrences(svg, "</g>"));

    lenspine::FigureOptions plain;
    plain.voronoi_overlay = false;
    auto bare = lenspine::render_svg(del.triangulation, pts.coords, plain);
    CHECK(count_occurrences(bare, "class=\"voronoi\"") == 0);

    CHECK_THROWS_AS(lenspine::render_svg(del.triangulation, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("svg of the (34,13) construction") {
    auto r = lenspine::optimal_triangulation(34, 13);
    auto pts = lenspine::perturbed_points(34, 13, r.eccentricity);
    auto svg = lenspine::render_svg(r.triangulation, pts.coords);
    CHECK(count_occurrences(svg, "class=\"vertex\"") == 34);
    CHECK(count_occurrences(svg, "class=\"diagonal\"") == 31);
}

TEST_CASE("run report json shape") {
    lenspine::RunReport rep;
    rep.command = "euclid";
    rep.inputs = {{"p", 34}, {"q", 13}};
    rep.outputs["E"] = 8;
    rep.check("sum", true);
    rep.check("broken", false, "expected");
    auto j = rep.to_json();
    CHECK(j["command"] == "euclid");
    CHECK(j["checks"].size() == 2);
    CHECK(j["ok"] == false);
    CHECK_FALSE(rep.ok());
}

TEST_CASE("certificate json carries the profile and groups") {
    auto r = lenspine::optimal_triangulation(5, 2);
    auto j = lenspine::to_json(r.certificate);
    CHECK(j["profile"] == lenspine::Json::array({0, 2}));
    CHECK(j["target"] == 1);
    CHECK(j["extremal"] == true);
}
