#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "mordell/mordell.hpp"

namespace {

using namespace mordell;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw schema_error("cannot open file \"" + path + "\"");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw schema_error("invalid JSON in \"" + path + "\": " + e.what());
    }
    return j;
}

void emit_report(const BoundReport& rep, const std::string& format) {
    rep.check_replay();
    if (format == "json")
        std::cout << report_to_json(rep).dump(2) << "\n";
    else if (format == "csv")
        std::cout << render_report_csv(rep);
    else
        std::cout << render_report_table(rep);
}

struct NpOptions {
    unsigned long p = 0;
    std::string r;
    long long n0 = 0;
    bool show_violations = false;
    std::string format = "table";
};

struct BoundOptions {
    long long q = 0;
    long long e = 1;
    unsigned long p = 0;
    long long g = 0;
    long long d = 1;
    long long deg = 1;
    std::string r;
    int variant = 1;
    bool use_remark = false;
    bool leaf_free = false;
    std::string format = "table";
    unsigned precision = default_interval_precision;
};

struct GraphOptions {
    std::string file;
    std::string function;
    long long genus = 2;
    long long max_genus = 5;
    std::string format = "table";
};

struct NewtonOptions {
    std::string file;
    std::string r, r1, r2;
    std::string format = "table";
};

int run_np(const NpOptions& opt) {
    Rational r = parse_rational(opt.r);
    Int value = np_value(opt.p, r, Int(static_cast<long>(opt.n0)));
    if (opt.format == "json") {
        json j;
        j["p"] = opt.p;
        j["r"] = to_string(r);
        j["n0"] = opt.n0;
        j["value"] = to_string(value);
        if (opt.show_violations) {
            json arr = json::array();
            for (const auto& b : np_violating_blocks(opt.p, r, Int(static_cast<long>(opt.n0))))
                arr.push_back({{"block", b.k}, {"largest_violator", to_string(b.largest)}});
            j["violating_blocks"] = std::move(arr);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << to_string(value) << "\n";
        if (opt.show_violations) {
            for (const auto& b : np_violating_blocks(opt.p, r, Int(static_cast<long>(opt.n0))))
                std::cout << "block k=" << b.k << ": largest violator " << to_string(b.largest)
                          << "\n";
        }
    }
    return 0;
}

int run_graph_check(const GraphOptions& opt) {
    MetricGraph g = graph_from_json(load_json_file(opt.file));
    PLFunction f = function_from_json(load_json_file(opt.function), g);
    long long gg = genus(g);
    bool leaf_free = !has_genus_zero_leaf(g);
    bool canonical = is_canonical_section(f, g);
    long long slope = max_abs_slope(f, g);
    long long bound = leaf_free ? 2 * gg - 2 : 2 * gg - 1;
    bool bound_ok = !canonical || slope <= bound;
    if (opt.format == "json") {
        json j;
        j["genus"] = gg;
        j["leaf_free"] = leaf_free;
        j["canonical_section"] = canonical;
        j["max_abs_slope"] = slope;
        j["slope_bound"] = bound;
        j["slope_bound_holds"] = bound_ok;
        j["divisor"] = divisor_to_json(divisor_of(f, g));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "genus: " << gg << "\n"
                  << "genus-zero leaf free: " << (leaf_free ? "yes" : "no") << "\n"
                  << "canonical section: " << (canonical ? "yes" : "no") << "\n"
                  << "max |slope|: " << slope << "\n"
                  << "slope bound (" << (leaf_free ? "2g-2" : "2g-1") << "): " << bound << "\n"
                  << "slope bound holds: " << (bound_ok ? "yes" : "n/a or FAILED") << "\n";
    }
    if (canonical && !bound_ok)
        throw invariant_error("canonical section exceeded the slope bound");
    return 0;
}

int run_graph_enumerate(const GraphOptions& opt) {
    auto types = enumerate_stable_graphs(opt.genus, opt.max_genus);
    for (const auto& t : types)
        std::cout << graph_to_json(to_metric_graph(t)).dump() << "\n";
    return 0;
}

int run_graph_stats(const GraphOptions& opt) {
    MetricGraph g = graph_from_json(load_json_file(opt.file));
    StableStats s = stable_stats_check(g);
    if (opt.format == "json") {
        json j;
        j["vertices"] = {{"count", s.vertex_count}, {"bound", s.vertex_bound}};
        j["edges"] = {{"count", s.edge_count}, {"bound", s.edge_bound}};
        j["loops"] = {{"count", s.loop_count}, {"bound", s.loop_bound}};
        j["max_degree"] = {{"count", s.max_degree}, {"bound", s.degree_bound}};
        j["all_pass"] = s.all_pass;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "vertices: " << s.vertex_count << " <= " << s.vertex_bound << "\n"
                  << "edges: " << s.edge_count << " <= " << s.edge_bound << "\n"
                  << "loops: " << s.loop_count << " <= " << s.loop_bound << "\n"
                  << "max degree: " << s.max_degree << " <= " << s.degree_bound << "\n"
                  << "all pass: " << (s.all_pass ? "yes" : "NO") << "\n";
    }
    if (!s.all_pass) throw invariant_error("stable graph statistics out of bounds");
    return 0;
}

int run_newton_slopes(const NewtonOptions& opt) {
    ValuationSeries s = series_from_json(load_json_file(opt.file));
    Rational r = parse_rational(opt.r);
    Rational value = tropical_eval(s, r);
    AttainingSet a = attaining_set(s, r);
    long long inner = slope(s, r, Direction::toward_inner);
    long long outer = slope(s, r, Direction::toward_outer);
    if (opt.format == "json") {
        json j;
        j["r"] = to_string(r);
        j["value"] = to_string(value);
        j["attaining"] = {{"n_min", a.n_min}, {"n_max", a.n_max}};
        j["slope_toward_inner"] = inner;
        j["slope_toward_outer"] = outer;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "F(xi_r) = " << to_string(value) << "\n"
                  << "attaining exponents: [" << a.n_min << ", " << a.n_max << "]\n"
                  << "slope toward inner end: " << inner << "\n"
                  << "slope toward outer end: " << outer << "\n";
    }
    return 0;
}

int run_newton_zeros(const NewtonOptions& opt) {
    ValuationSeries s = series_from_json(load_json_file(opt.file));
    json j;
    if (!opt.r.empty()) {
        Rational r = parse_rational(opt.r);
        long long z = zeros_in_open_subdisc(s, r);
        if (opt.format == "json") {
            j["r"] = to_string(r);
            j["zeros_in_open_subdisc"] = z;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << z << "\n";
        }
        return 0;
    }
    if (opt.r1.empty() || opt.r2.empty())
        throw schema_error("newton zeros needs either --r or both --r1 and --r2");
    Rational r1 = parse_rational(opt.r1);
    Rational r2 = parse_rational(opt.r2);
    if (s.mode() == SeriesMode::annulus) {
        s.require_radius(r1);
        s.require_radius(r2);
    }
    long long z = zeros_in_subannulus(s, r1, r2);
    if (opt.format == "json") {
        j["r1"] = to_string(r1);
        j["r2"] = to_string(r2);
        j["zeros_in_subannulus"] = z;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << z << "\n";
    }
    return 0;
}

int run_newton_verify(const NewtonOptions& opt) {
    ValuationSeries s = series_from_json(load_json_file(opt.file));
    Rational r = parse_rational(opt.r);
    AnnularBoundReport rep = verify_annular_bound(s, r);
    if (opt.format == "json") {
        json j;
        j["r"] = to_string(r);
        j["slope_found"] = rep.slope_found;
        j["n0"] = rep.n0;
        j["bound"] = to_string(rep.bound);
        j["holds"] = rep.holds;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "slope of antiderivative: " << rep.slope_found << "\n"
                  << "end slope datum n0: " << rep.n0 << "\n"
                  << "correction bound: " << to_string(rep.bound) << "\n"
                  << "holds: " << (rep.holds ? "yes" : "NO") << "\n";
    }
    if (!rep.holds) throw invariant_error("annular slope bound failed");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact calculator for uniform rational-point and torsion bounds on curves"};
    app.require_subcommand(1);

    NpOptions np_opt;
    CLI::App* np_cmd = app.add_subcommand("np", "Evaluate the correction function N_p(r, n0)");
    np_cmd->add_option("--p", np_opt.p, "prime")->required();
    np_cmd->add_option("--r", np_opt.r, "radius, rational \"num/den\"")->required();
    np_cmd->add_option("--n0", np_opt.n0, "slope datum")->required();
    np_cmd->add_flag("--show-violations", np_opt.show_violations,
                     "list the largest violator in each block");
    np_cmd->add_option("--format", np_opt.format, "table|json");

    BoundOptions b_opt;
    CLI::App* bound_cmd = app.add_subcommand("bound", "Closed-form uniform bounds");
    bound_cmd->require_subcommand(1);

    CLI::App* rational_cmd =
        bound_cmd->add_subcommand("rational", "points mapping into a rank <= g-3 subgroup");
    rational_cmd->add_option("--q", b_opt.q, "residue field size (prime power)")->required();
    rational_cmd->add_option("--e", b_opt.e, "ramification degree")->required();
    rational_cmd->add_option("--p", b_opt.p, "residue characteristic")->required();
    rational_cmd->add_option("--g", b_opt.g, "genus")->required();
    rational_cmd->add_flag("--use-remark-bound", b_opt.use_remark,
                           "use the certified closed-form correction bound");
    rational_cmd->add_option("--format", b_opt.format, "table|json|csv");
    rational_cmd->add_option("--precision", b_opt.precision, "interval precision in bits");

    CLI::App* torsion_cmd = bound_cmd->add_subcommand("torsion", "geometric torsion bound");
    torsion_cmd->add_option("--g", b_opt.g, "genus")->required();
    torsion_cmd->add_option("--p", b_opt.p, "residue characteristic")->required();
    torsion_cmd->add_option("--e", b_opt.e, "ramification degree")->required();
    torsion_cmd->add_option("--variant", b_opt.variant, "1 or 2")->required();
    torsion_cmd->add_option("--format", b_opt.format, "table|json|csv");

    CLI::App* intro_cmd =
        bound_cmd->add_subcommand("torsion-intro", "fully explicit geometric torsion bound");
    intro_cmd->add_option("--g", b_opt.g, "genus (>= 4)")->required();
    intro_cmd->add_option("--d", b_opt.d, "number field degree")->required();
    intro_cmd->add_option("--format", b_opt.format, "table|json|csv");

    CLI::App* wide_cmd = bound_cmd->add_subcommand("wide-open", "zero bound on a wide open");
    wide_cmd->add_option("--deg", b_opt.deg, "valency of the central vertex")->required();
    wide_cmd->add_option("--r", b_opt.r, "shrinking radius")->required();
    wide_cmd->add_option("--g", b_opt.g, "genus")->required();
    wide_cmd->add_option("--p", b_opt.p, "residue characteristic")->required();
    wide_cmd->add_flag("--leaf-free", b_opt.leaf_free, "skeleton has no genus-zero leaves");
    wide_cmd->add_option("--format", b_opt.format, "table|json|csv");

    CLI::App* ann_cmd = bound_cmd->add_subcommand("annulus", "zero bound on an open annulus");
    ann_cmd->add_option("--r", b_opt.r, "shrinking radius")->required();
    ann_cmd->add_option("--g", b_opt.g, "genus")->required();
    ann_cmd->add_option("--p", b_opt.p, "residue characteristic")->required();
    ann_cmd->add_option("--format", b_opt.format, "table|json|csv");

    GraphOptions g_opt;
    CLI::App* graph_cmd = app.add_subcommand("graph", "Metric graph tools");
    graph_cmd->require_subcommand(1);
    CLI::App* check_cmd = graph_cmd->add_subcommand("check", "canonical-section and slope check");
    check_cmd->add_option("--file", g_opt.file, "graph JSON file")->required();
    check_cmd->add_option("--function", g_opt.function, "function JSON file")->required();
    check_cmd->add_option("--format", g_opt.format, "table|json");
    CLI::App* enum_cmd =
        graph_cmd->add_subcommand("enumerate", "stable combinatorial types as JSONL");
    enum_cmd->add_option("--genus", g_opt.genus, "genus (>= 2)")->required();
    enum_cmd->add_option("--max-genus", g_opt.max_genus, "enumeration cap (default 5)");
    CLI::App* stats_cmd = graph_cmd->add_subcommand("stats", "stable graph statistics vs bounds");
    stats_cmd->add_option("--file", g_opt.file, "graph JSON file")->required();
    stats_cmd->add_option("--format", g_opt.format, "table|json");

    NewtonOptions n_opt;
    CLI::App* newton_cmd = app.add_subcommand("newton", "Tropicalized series tools");
    newton_cmd->require_subcommand(1);
    CLI::App* slopes_cmd = newton_cmd->add_subcommand("slopes", "evaluation and slopes at a radius");
    slopes_cmd->add_option("--file", n_opt.file, "series JSON file")->required();
    slopes_cmd->add_option("--r", n_opt.r, "radius")->required();
    slopes_cmd->add_option("--format", n_opt.format, "table|json");
    CLI::App* zeros_cmd = newton_cmd->add_subcommand("zeros", "zero counts in subdomains");
    zeros_cmd->add_option("--file", n_opt.file, "series JSON file")->required();
    zeros_cmd->add_option("--r", n_opt.r, "subdisc radius");
    zeros_cmd->add_option("--r1", n_opt.r1, "inner radius");
    zeros_cmd->add_option("--r2", n_opt.r2, "outer radius");
    zeros_cmd->add_option("--format", n_opt.format, "table|json");
    CLI::App* verify_cmd =
        newton_cmd->add_subcommand("verify-annulus", "check the annular slope bound");
    verify_cmd->add_option("--file", n_opt.file, "integrand series JSON file")->required();
    verify_cmd->add_option("--r", n_opt.r, "radius")->required();
    verify_cmd->add_option("--format", n_opt.format, "table|json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*np_cmd) return run_np(np_opt);
        if (*rational_cmd) {
            emit_report(rational_point_bound(Int(static_cast<long>(b_opt.q)), b_opt.e, b_opt.p,
                                             b_opt.g, b_opt.use_remark, b_opt.precision),
                        b_opt.format);
            return 0;
        }
        if (*torsion_cmd) {
            if (b_opt.variant != 1 && b_opt.variant != 2)
                throw schema_error("--variant must be 1 or 2");
            emit_report(torsion_bound_theorem(b_opt.g, b_opt.p, b_opt.e,
                                              b_opt.variant == 1 ? TorsionVariant::one
                                                                 : TorsionVariant::two),
                        b_opt.format);
            return 0;
        }
        if (*intro_cmd) {
            emit_report(torsion_bound_intro(b_opt.g, b_opt.d), b_opt.format);
            return 0;
        }
        if (*wide_cmd) {
            emit_report(wide_open_zero_bound(b_opt.deg, parse_rational(b_opt.r), b_opt.g, b_opt.p,
                                             b_opt.leaf_free),
                        b_opt.format);
            return 0;
        }
        if (*ann_cmd) {
            emit_report(annulus_zero_bound(parse_rational(b_opt.r), b_opt.g, b_opt.p), b_opt.format);
            return 0;
        }
        if (*check_cmd) return run_graph_check(g_opt);
        if (*enum_cmd) return run_graph_enumerate(g_opt);
        if (*stats_cmd) return run_graph_stats(g_opt);
        if (*slopes_cmd) return run_newton_slopes(n_opt);
        if (*zeros_cmd) return run_newton_zeros(n_opt);
        if (*verify_cmd) return run_newton_verify(n_opt);
    } catch (const schema_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const invariant_error& e) {
        std::cerr << "internal invariant breach: " << e.what() << "\n";
        return 4;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
