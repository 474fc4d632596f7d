// Command-line surface: subtractive-Euclid reports, Farey crossing counts,
// rotation distances, bound certificates, optimal triangulations with SVG
// output, lens-space spine summaries, and the acceptance selftest.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include <lenspine/bounds.hpp>
#include <lenspine/construct.hpp>
#include <lenspine/farey.hpp>
#include <lenspine/figure.hpp>
#include <lenspine/flipdist.hpp>
#include <lenspine/report.hpp>
#include <lenspine/selftest.hpp>
#include <lenspine/spinehull.hpp>

namespace {

using lenspine::Json;
using lenspine::RunReport;
using lenspine::Stopwatch;

int env_cap(const char* name, int fallback) {
    if (const char* v = std::getenv(name)) {
        int parsed = std::atoi(v);
        if (parsed >= 3) return parsed;
    }
    return fallback;
}

int finish(RunReport& rep, const Stopwatch& sw, bool json) {
    rep.elapsed_ms = sw.ms();
    if (json) std::cout << rep.to_json().dump(2) << "\n";
    else rep.print_text(std::cout);
    return rep.ok() ? 0 : 1;
}

lenspine::Triangulation load_triangulation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open triangulation file: " + path);
    return lenspine::triangulation_from_text(in);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << content;
}

std::string witness_text(const lenspine::FlipSequence& seq) {
    std::ostringstream os;
    for (std::size_t i = 0; i < seq.flips.size(); ++i)
        os << (i ? " " : "") << seq.flips[i];
    return os.str();
}

int cmd_euclid(long long p, long long q, bool json) {
    Stopwatch sw;
    RunReport rep;
    rep.command = "euclid";
    rep.inputs = {{"p", p}, {"q", q}};
    lenspine::Int e = lenspine::euclid_subtractive(p, q);
    rep.outputs["E"] = e.convert_to<long long>();
    lenspine::Int g = lenspine::gcd(lenspine::Int(p), lenspine::Int(q));
    rep.outputs["gcd"] = g.convert_to<long long>();
    if (q > 0 && q < p && g == 1) {
        auto trace = lenspine::euclid_trace(p, q);
        Json cf = Json::array(), pi = Json::array(), qi = Json::array(), r = Json::array();
        for (const auto& n : trace.coefficients) cf.push_back(n.convert_to<long long>());
        for (const auto& n : trace.convergents_num) pi.push_back(n.convert_to<long long>());
        for (const auto& n : trace.convergents_den) qi.push_back(n.convert_to<long long>());
        for (const auto& n : trace.remainders) r.push_back(n.convert_to<long long>());
        rep.outputs["continued_fraction"] = cf;
        rep.outputs["convergent_numerators"] = pi;
        rep.outputs["convergent_denominators"] = qi;
        rep.outputs["remainders"] = r;
        lenspine::Int inv = lenspine::mod_inverse(q, p);
        rep.outputs["q_inverse_mod_p"] = inv.convert_to<long long>();
        rep.check("cf_sum_equals_E", lenspine::ContinuedFraction{trace.coefficients}.sum() == e);
        rep.check("E(p,q) == E(p,p-q)", lenspine::euclid_subtractive(p, p - q) == e);
        rep.check("E(p,q) == E(p, q^-1 mod p)",
                  lenspine::euclid_subtractive(lenspine::Int(p), inv) == e);
    } else {
        rep.outputs["note"] = "pair is not coprime with 0 < q < p; E terminates at (gcd, 0)";
    }
    return finish(rep, sw, json);
}

int cmd_farey(long long p, long long q, std::optional<int> sequence_depth, bool json) {
    Stopwatch sw;
    RunReport rep;
    rep.command = "farey";
    if (sequence_depth) {
        rep.inputs = {{"depth", *sequence_depth}};
        auto seq = lenspine::farey_sequence(*sequence_depth);
        Json arr = Json::array();
        for (const auto& x : seq) {
            std::ostringstream os;
            os << x;
            arr.push_back(os.str());
        }
        rep.outputs["sequence"] = arr;
        rep.outputs["size"] = seq.size();
        bool edges = true;
        for (std::size_t i = 0; i + 1 < seq.size(); ++i)
            edges = edges && lenspine::is_farey_edge(seq[i], seq[i + 1]);
        rep.check("consecutive_pairs_are_edges", edges);
        return finish(rep, sw, json);
    }
    rep.inputs = {{"p", p}, {"q", q}};
    lenspine::Int tree = lenspine::crossing_count_tree(p, q);
    rep.outputs["crossing_count"] = tree.convert_to<long long>();
    const long long abs_p = p < 0 ? -p : p;
    if (abs_p > q) {
        lenspine::Int geo = lenspine::crossing_count_geodesic(p, q);
        rep.outputs["crossing_count_geodesic"] = geo.convert_to<long long>();
        rep.check("walks_agree", geo == tree);
    }
    lenspine::Int e = lenspine::euclid_subtractive(abs_p, q);
    rep.outputs["E"] = e.convert_to<long long>();
    rep.check("crossing_count_equals_E", tree == e);
    return finish(rep, sw, json);
}

int cmd_distance(int p, int q, bool exhaustive, const std::string& file,
                 std::optional<int> budget, int cap, bool json) {
    Stopwatch sw;
    RunReport rep;
    rep.command = "distance";
    rep.inputs = {{"p", p}, {"q", q}, {"cap", cap}};
    lenspine::Int e = lenspine::euclid_subtractive(p, q);
    long long target = std::max<long long>(0, e.convert_to<long long>() - 3);
    rep.outputs["E"] = e.convert_to<long long>();
    rep.outputs["max(0,E-3)"] = target;
    if (exhaustive) {
        if (p > cap) {
            rep.outputs["error"] = "p exceeds the exhaustive cap " + std::to_string(cap) +
                                   "; raise it with --max-p or LENSPINE_MAX_P, or use "
                                   "--triangulation FILE for a single instance";
            rep.check("within_cap", false);
            return finish(rep, sw, json);
        }
        auto [dmin, argmin] = lenspine::min_rotation_distance(p, q, cap);
        rep.outputs["min_rotation_distance"] = dmin;
        rep.outputs["minimizer"] = lenspine::to_text(argmin);
        rep.check("min_equals_max(0,E-3)", dmin == target);
    } else {
        auto t = load_triangulation(file);
        if (t.polygon_size() != p)
            throw std::runtime_error("triangulation file is for p = " +
                                     std::to_string(t.polygon_size()));
        auto rotated = lenspine::rotate(t, q);
        if (p <= cap) {
            auto [d, witness] = lenspine::distance_bfs(t, rotated, cap);
            rep.outputs["distance"] = d;
            rep.outputs["witness"] = witness_text(witness);
            rep.check("distance_at_least_E-3",
                      lenspine::gcd(p, q) != 1 || d >= target);
        } else if (budget) {
            if (auto r = lenspine::distance_bounded(t, rotated, *budget)) {
                rep.outputs["distance"] = r->first;
                rep.outputs["witness"] = witness_text(r->second);
            } else {
                rep.outputs["distance"] = "greater than budget " + std::to_string(*budget);
            }
        } else {
            rep.outputs["error"] = "p exceeds the exact-search cap " + std::to_string(cap) +
                                   "; pass --budget B for a bounded search";
            rep.check("within_cap", false);
        }
    }
    return finish(rep, sw, json);
}

int cmd_bound(int p, int q, const std::string& file, bool oracle, bool json) {
    Stopwatch sw;
    RunReport rep;
    rep.command = "bound";
    rep.inputs = {{"p", p}, {"q", q}};
    if (!file.empty()) {
        auto t = load_triangulation(file);
        auto cert = lenspine::certify(t, q);
        rep.outputs["certificate"] = lenspine::to_json(cert);
        rep.check("bound_value_at_least_target", cert.bound_value >= cert.target);
        rep.check("destroyed_at_least_bound", cert.destroyed_meets_bound());
        rep.check("destroyed_at_least_target", cert.destroyed_meets_target());
        return finish(rep, sw, json);
    }
    auto trace = lenspine::euclid_trace(p, ((q % p) + p) % p > p / 2 ? p - q : q);
    lenspine::Int e = lenspine::euclid_subtractive(p, q);
    rep.outputs["E"] = e.convert_to<long long>();
    rep.outputs["target"] = e.convert_to<long long>() - 3;
    if (trace.length() >= 2) {
        auto prof = lenspine::extremal_profile(trace);
        rep.outputs["extremal_profile"] = prof.counts;
        rep.outputs["profile_ceiling_sum"] = lenspine::profile_ceiling_sum(prof, trace);
        rep.check("profile_ceiling_sum_equals_target",
                  lenspine::profile_ceiling_sum(prof, trace) == e.convert_to<long long>() - 3);
    } else {
        rep.outputs["extremal_profile"] = Json::array({p - 3});
    }
    if (oracle) {
        auto r = lenspine::min_profile_ceiling_sum(trace);
        rep.outputs["oracle_minimum"] = r.minimum;
        rep.outputs["oracle_unique"] = r.unique;
        rep.outputs["oracle_argmin"] = r.argmin.counts;
        rep.check("oracle_min_equals_target", r.minimum == e.convert_to<long long>() - 3);
    }
    return finish(rep, sw, json);
}

int cmd_construct(int p, int q, const std::string& svg_path, const std::string& out_path,
                  const std::string& points_path, bool json) {
    Stopwatch sw;
    RunReport rep;
    rep.command = "construct";
    rep.inputs = {{"p", p}, {"q", q}};
    auto r = lenspine::optimal_triangulation(p, q);
    rep.outputs["triangulation"] = lenspine::to_text(r.triangulation);
    rep.outputs["witness"] = lenspine::to_json(r.witness);
    rep.outputs["certificate"] = lenspine::to_json(r.certificate);
    rep.outputs["eccentricity"] = r.eccentricity;
    rep.outputs["from_exhaustive_search"] = r.from_exhaustive;
    if (!r.diagnostics.empty()) rep.outputs["grid_diagnostics"] = r.diagnostics;
    rep.check("destroyed_equals_target",
              r.certificate.destroyed_total == r.certificate.target);
    rep.check("profile_extremal", r.certificate.extremal);
    rep.check("witness_length_equals_target",
              static_cast<long long>(r.witness.length()) ==
                  std::max<long long>(0, r.certificate.target));
    if (!out_path.empty()) write_file(out_path, lenspine::to_text(r.triangulation));
    if (!points_path.empty() || !svg_path.empty()) {
        double e = r.eccentricity > 0 ? r.eccentricity : 0.007;
        auto pts = lenspine::perturbed_points(p, q, e);
        if (!points_path.empty()) write_file(points_path, lenspine::points_csv(pts));
        if (!svg_path.empty()) {
            write_file(svg_path, lenspine::render_svg(r.triangulation, pts.coords));
            rep.outputs["svg"] = svg_path;
        }
    }
    return finish(rep, sw, json);
}

int cmd_spine(int p, int q, std::optional<double> theta, std::optional<double> phi1,
              std::optional<double> phi2, int trials, int samples,
              const std::string& points_path, const std::string& facets_path, bool json) {
    Stopwatch sw;
    RunReport rep;
    rep.command = "spine";
    rep.inputs = {{"p", p}, {"q", q}};
    lenspine::OrbitConfig cfg{p, q};
    if (theta) cfg.theta = *theta;
    if (phi1) cfg.phi1 = *phi1;
    if (phi2) cfg.phi2 = *phi2;
    auto summary = lenspine::spine_summary(cfg);
    lenspine::Int e = lenspine::euclid_subtractive(p, q);
    long long target = e.convert_to<long long>() - 3;
    rep.outputs["facet_count"] = summary.facet_count;
    rep.outputs["spine_vertex_count"] = summary.spine_vertex_count;
    rep.outputs["E_minus_3"] = target;
    rep.outputs["monodromy_r"] = summary.monodromy_r;
    rep.outputs["reseeds"] = summary.reseeds;
    rep.check("all_facets_simplicial", summary.all_facets_simplicial);
    rep.check("action_invariant", summary.action_invariant);
    rep.check("action_free", summary.action_free);
    rep.check("spine_vertices_equal_E_minus_3", summary.spine_vertex_count == target);
    rep.check("monodromy_inverse", (summary.monodromy_r * q) % p == 1);
    if (trials >= 2)
        rep.check("basepoint_invariance", lenspine::basepoint_invariance(p, q, trials));
    if (samples >= 1) {
        auto pts = lenspine::orbit_points(summary.config);
        auto vr = lenspine::sphere_voronoi_restriction_check(pts, samples);
        rep.outputs["voronoi_restriction_ties"] = vr.ties;
        rep.check("voronoi_restriction_agrees", vr.all_agree);
    }
    if (!points_path.empty()) {
        auto pts = lenspine::orbit_points(summary.config);
        std::ostringstream os;
        os.precision(17);
        os << "k,x1,x2,x3,x4\n";
        for (std::size_t k = 0; k < pts.size(); ++k)
            os << k << "," << pts[k][0] << "," << pts[k][1] << "," << pts[k][2] << ","
               << pts[k][3] << "\n";
        write_file(points_path, os.str());
    }
    if (!facets_path.empty()) {
        auto hull = lenspine::convex_hull_4d(summary.config.evaluator());
        Json jf = Json::array();
        for (const auto& f : hull.facets)
            jf.push_back({{"vertices", f.vertices}, {"normal", f.outward_normal}});
        write_file(facets_path, Json{{"facets", jf}}.dump(2) + "\n");
    }
    return finish(rep, sw, json);
}

int cmd_render(int p, int q, const std::string& file, const std::string& svg_path,
               std::optional<double> eccentricity, bool voronoi, bool json) {
    Stopwatch sw;
    RunReport rep;
    rep.command = "render";
    rep.inputs = {{"p", p}, {"q", q}};
    lenspine::Triangulation t = lenspine::Triangulation::fan(3);
    double e = eccentricity.value_or(0.007);
    if (!file.empty()) {
        t = load_triangulation(file);
        if (t.polygon_size() != p)
            throw std::runtime_error("triangulation file is for p = " +
                                     std::to_string(t.polygon_size()));
    } else {
        auto r = lenspine::optimal_triangulation(p, q);
        t = r.triangulation;
        if (r.eccentricity > 0) e = r.eccentricity;
    }
    auto pts = lenspine::perturbed_points(p, q, e);
    lenspine::FigureOptions opts;
    opts.voronoi_overlay = voronoi;
    write_file(svg_path, lenspine::render_svg(t, pts.coords, opts));
    rep.outputs["svg"] = svg_path;
    rep.outputs["eccentricity"] = e;
    rep.check("points_in_convex_position", pts.convex_position);
    return finish(rep, sw, json);
}

int cmd_selftest(const lenspine::SelftestOptions& opt, bool json) {
    Stopwatch sw;
    auto results = lenspine::run_acceptance(opt, json ? nullptr : &std::cout);
    bool ok = true;
    for (const auto& r : results) ok = ok && r.pass;
    if (json) {
        Json arr = Json::array();
        for (const auto& r : results)
            arr.push_back({{"index", r.index},
                           {"name", r.name},
                           {"pass", r.pass},
                           {"detail", r.detail},
                           {"elapsed_ms", r.elapsed_ms}});
        std::cout << Json{{"command", "selftest"}, {"criteria", arr}, {"ok", ok},
                          {"elapsed_ms", sw.ms()}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << (ok ? "all criteria passed" : "FAILURES present") << "\n";
    }
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Subtractive-Euclid complexity, Farey navigation, rotation distances,\n"
                 "optimal triangulations, and lens-space spine counts"};
    app.require_subcommand(1);
    app.fallthrough(); // allow --json after the subcommand
    bool json = false;
    app.add_flag("--json", json, "emit a structured JSON report");

    const int default_cap = env_cap("LENSPINE_MAX_P", lenspine::kDefaultFlipSearchCap);

    long long p_ll = 0, q_ll = 0;
    auto* euclid = app.add_subcommand("euclid", "E(p,q), continued fraction, identity checks");
    euclid->add_option("p", p_ll)->required();
    euclid->add_option("q", q_ll)->required();

    std::optional<int> farey_depth;
    long long fp = 0, fq = 1;
    auto* farey = app.add_subcommand("farey", "crossing counts or the Farey sequence");
    farey->add_option("p", fp);
    farey->add_option("q", fq);
    farey->add_option("--sequence", farey_depth, "print the depth-N Farey sequence instead");

    int dp = 0, dq = 0, dcap = default_cap;
    bool exhaustive = false;
    std::string dfile;
    std::optional<int> budget;
    auto* distance = app.add_subcommand("distance", "rotation distance on the flip graph");
    distance->add_option("p", dp)->required();
    distance->add_option("q", dq)->required();
    distance->add_flag("--exhaustive", exhaustive, "minimum over all triangulations");
    distance->add_option("--triangulation", dfile, "triangulation file for a single instance");
    distance->add_option("--budget", budget, "bounded search budget for large p");
    distance->add_option("--max-p", dcap, "exhaustive/BFS cap (default from LENSPINE_MAX_P)");

    int bp = 0, bq = 0;
    std::string bfile;
    bool boracle = false;
    auto* bound = app.add_subcommand("bound", "destroyed-diagonal certificates and the profile oracle");
    bound->add_option("p", bp)->required();
    bound->add_option("q", bq)->required();
    bound->add_option("--triangulation", bfile, "certify this triangulation");
    bound->add_flag("--oracle", boracle, "run the brute-force profile minimization");

    int cp = 0, cq = 0;
    std::string svg_path, out_path, points_path;
    auto* construct = app.add_subcommand("construct", "optimal triangulation with certificate");
    construct->add_option("p", cp)->required();
    construct->add_option("q", cq)->required();
    construct->add_option("--svg", svg_path, "write the figure (triangulation + Voronoi)");
    construct->add_option("--out", out_path, "write the triangulation text file");
    construct->add_option("--points", points_path, "write the perturbed point set as CSV");

    int sp = 0, sq = 0, trials = 0, samples = 0;
    std::optional<double> theta, phi1, phi2;
    std::string spine_points, spine_facets;
    auto* spine = app.add_subcommand("spine", "4D hull facet and spine vertex counts");
    spine->add_option("p", sp)->required();
    spine->add_option("q", sq)->required();
    spine->add_option("--theta", theta, "base point polar angle in (0, pi/2)");
    spine->add_option("--phi1", phi1, "first phase");
    spine->add_option("--phi2", phi2, "second phase");
    spine->add_option("--trials", trials, "base-point invariance trials (needs >= 2)");
    spine->add_option("--samples", samples, "Voronoi restriction samples");
    spine->add_option("--points", spine_points, "write the orbit as CSV");
    spine->add_option("--facets", spine_facets, "write the facet list as JSON");

    int rp = 0, rq = 0;
    std::string rfile, rsvg = "figure.svg";
    std::optional<double> recc;
    bool no_voronoi = false;
    auto* render = app.add_subcommand("render", "SVG figure of a triangulation");
    render->add_option("p", rp)->required();
    render->add_option("q", rq)->required();
    render->add_option("--triangulation", rfile, "render this file instead of constructing");
    render->add_option("--svg", rsvg, "output path");
    render->add_option("--eccentricity", recc, "perturbation for the vertex placement");
    render->add_flag("--no-voronoi", no_voronoi, "omit the Voronoi overlay");

    lenspine::SelftestOptions st;
    auto* selftest = app.add_subcommand("selftest", "run the acceptance criteria");
    selftest->add_option("--max-p", st.max_p_exhaustive, "exhaustive flip-graph cap");
    selftest->add_option("--max-p-hull", st.max_p_hull, "hull sweep cap");
    selftest->add_option("--max-p-euclid", st.max_p_euclid, "euclid identity cap");
    selftest->add_option("--max-p-farey", st.max_p_farey, "farey crossing cap");

    CLI11_PARSE(app, argc, argv);

    try {
        if (euclid->parsed()) return cmd_euclid(p_ll, q_ll, json);
        if (farey->parsed()) {
            if (!farey_depth && farey->count("p") == 0)
                throw CLI::ValidationError("farey", "give p q or --sequence N");
            return cmd_farey(fp, fq, farey_depth, json);
        }
        if (distance->parsed()) {
            if (!exhaustive && dfile.empty())
                throw CLI::ValidationError("distance", "pick --exhaustive or --triangulation FILE");
            return cmd_distance(dp, dq, exhaustive, dfile, budget, dcap, json);
        }
        if (bound->parsed()) return cmd_bound(bp, bq, bfile, boracle, json);
        if (construct->parsed())
            return cmd_construct(cp, cq, svg_path, out_path, points_path, json);
        if (spine->parsed())
            return cmd_spine(sp, sq, theta, phi1, phi2, trials, samples, spine_points,
                             spine_facets, json);
        if (render->parsed()) return cmd_render(rp, rq, rfile, rsvg, recc, !no_voronoi, json);
        if (selftest->parsed()) return cmd_selftest(st, json);
    } catch (const lenspine::DegenerateInput& ex) {
        std::cerr << "degenerate input: " << ex.what() << "\n";
        return 1;
    } catch (const lenspine::ConstructionFailure& ex) {
        std::cerr << "construction failed: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
    return 0;
}
