#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "caterpack/caterpillar.hpp"
#include "caterpack/errors.hpp"
#include "caterpack/io.hpp"
#include "caterpack/layout.hpp"
#include "caterpack/oracle.hpp"
#include "caterpack/packing.hpp"
#include "caterpack/render.hpp"
#include "caterpack/verify.hpp"

namespace caterpack::cli {

// Exit codes: 0 success, 2 usage or parse problem, 3 infeasible by the
// packing conditions, 4 verification failure, 5 search budget exhausted.
enum ExitCode { exit_ok = 0, exit_usage = 2, exit_infeasible = 3, exit_verify = 4, exit_budget = 5 };

namespace detail {

struct Output {
    std::string format = "json";
    std::uint64_t seed = 0;
    std::string path;

    void deliver(const std::string& text, std::ostream& fallback) const {
        if (path.empty()) {
            fallback << text;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        if (!f) throw parameter_error("cannot open output file: " + path);
        f << text;
    }

    void deliver_json(ojson payload, std::ostream& fallback) const {
        payload["seed"] = seed;
        deliver(payload.dump(2) + "\n", fallback);
    }
};

inline std::string read_input(const std::string& path) {
    std::ostringstream buf;
    if (path == "-") {
        buf << std::cin.rdbuf();
    } else {
        std::ifstream f(path, std::ios::binary);
        if (!f) throw parameter_error("cannot open input file: " + path);
        buf << f.rdbuf();
    }
    return buf.str();
}

inline std::string report_table(const CrossingReport& rep) {
    std::ostringstream t;
    t << "k = " << rep.k << "\n";
    t << "edges = " << rep.per_edge.size() << ", crossings = " << rep.total_crossings() << "\n";
    if (!rep.multi_edges.empty()) {
        t << "multi-edges:";
        for (const auto& [a, b] : rep.multi_edges) t << " (" << a + 1 << "," << b + 1 << ")";
        t << "\n";
    }
    t << "per-edge crossings (positions as v1..vn):\n";
    for (const auto& e : rep.per_edge)
        t << "  v" << e.a + 1 << " - v" << e.b + 1 << " : " << e.count << "\n";
    return t.str();
}

inline std::vector<int> drawing_deltas(const PackingLayout& layout) {
    std::vector<int> deltas;
    for (const auto& d : layout.drawings) deltas.push_back(inferred_delta(d));
    return deltas;
}

inline ojson sheet_to_json(const BoundSheet& s, int h) {
    ojson j;
    j["pair_bound"] = s.pair_bound;
    j["placement_bound"] = s.placement_bound;
    j["mixed_bound"] = s.mixed_bound;
    j["lower_bound_general"] = rational_to_json(s.lower_general);
    j["lower_bound_trees"] = rational_to_json(s.lower_trees);
    if (h >= 3 && h <= 5) j["small_h_lower_bound"] = small_h_lower_bound(h);
    if (s.divergence_note)
        j["note"] = "placement and mixed bounds diverge on this range: the placement formula "
                    "gives 8*delta+12 (44..68 for delta 4..7) while the mixed formula gives "
                    "(delta+2)*9+8*delta (86..137); they answer different constructions";
    return j;
}

inline std::string sheet_table(const BoundSheet& s, int h) {
    std::ostringstream t;
    t << "pair_bound               = " << s.pair_bound << "\n";
    t << "placement_bound          = " << s.placement_bound << "\n";
    t << "mixed_bound              = " << s.mixed_bound << "\n";
    t << "lower_bound_general      = " << s.lower_general.str() << " (needs k >= "
      << s.lower_general.ceil() << ")\n";
    t << "lower_bound_trees        = " << s.lower_trees.str() << " (needs k >= "
      << s.lower_trees.ceil() << ")\n";
    if (h >= 3 && h <= 5) t << "small_h_lower_bound      = " << small_h_lower_bound(h) << "\n";
    if (s.divergence_note)
        t << "note: placement and mixed bounds diverge on this range (8*delta+12 = 44..68 "
             "versus (delta+2)*9+8*delta = 86..137); they answer different constructions\n";
    return t.str();
}

} // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"caterpack: k-planar placements and packings of regular caterpillars on convex point sets"};
    app.require_subcommand(1);
    app.set_help_flag("--help", "print this help message and exit");
    const auto subcommand = [&app](const char* name, const char* desc) {
        auto* s = app.add_subcommand(name, desc);
        s->set_help_flag("--help", "print this help message and exit");
        s->fallthrough();
        return s;
    };

    detail::Output output;
    app.add_option("--format", output.format, "output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--seed", output.seed, "seed recorded in outputs");
    app.add_option("--out", output.path, "write output to a file instead of stdout");

    int delta = 0, sigma = 0, h = 0, n = 0;
    bool center = false;
    auto* gen = subcommand("gen", "generate a caterpillar");
    gen->add_option("--delta", delta, "spine degree of a regular caterpillar");
    gen->add_option("--sigma", sigma, "spine length of a regular caterpillar");
    gen->add_flag("--center", center, "generate the center caterpillar instead");
    gen->add_option("--n", n, "vertex count (center caterpillar)");
    gen->add_option("--h", h, "pendant path length (center caterpillar)");

    std::string scheme = "place";
    std::vector<int> deltas;
    bool halve = false, unchecked = false;
    auto* pack = subcommand("pack", "construct a packing layout");
    pack->add_option("--scheme", scheme, "construction scheme")
        ->check(CLI::IsMember({"place", "mixed", "divisible", "three2planar"}));
    pack->add_option("--delta", delta, "spine degree");
    pack->add_option("--sigma", sigma, "spine length");
    pack->add_option("--h", h, "number of copies");
    pack->add_option("--deltas", deltas, "degree list, largest first")->delimiter(',');
    pack->add_option("--n", n, "position count for mixed/divisible schemes");
    pack->add_flag("--halve", halve, "re-route half of the drawings outside");
    pack->add_flag("--unchecked", unchecked, "emit the layout even if verification fails");

    std::string input_path;
    bool against_bounds = false;
    std::string method = "pairwise";
    auto* verify = subcommand("verify", "verify a layout file");
    verify->add_option("layout", input_path, "layout json file, - for stdin")->required();
    verify->add_flag("--against-bounds", against_bounds, "compare against the closed-form bounds");
    verify->add_option("--method", method, "crossing counter")
        ->check(CLI::IsMember({"pairwise", "sweep"}));

    auto* render = subcommand("render", "render a layout file to svg");
    render->add_option("layout", input_path, "layout json file, - for stdin")->required();

    std::vector<int> offsets;
    auto* bounds = subcommand("bounds", "evaluate the closed-form bounds");
    bounds->add_option("--n", n, "position count")->required();
    bounds->add_option("--deltas", deltas, "degree list, largest first")->delimiter(',');
    bounds->add_option("--delta", delta, "single degree, combined with --h");
    bounds->add_option("--h", h, "number of drawings");
    bounds->add_option("--offsets", offsets, "offset schedule, default 0,1,..,h-1")->delimiter(',');

    int copies = 0;
    long long budget = -1;
    bool count_solutions = false, min_k = false;
    auto* oracle = subcommand("oracle", "brute-force search oracles");
    oracle->add_option("--delta", delta, "spine degree");
    oracle->add_option("--sigma", sigma, "spine length");
    oracle->add_option("--copies", copies, "number of identical caterpillars");
    oracle->add_option("--deltas", deltas, "heterogeneous degree list")->delimiter(',');
    oracle->add_option("--n", n, "position count for --deltas");
    oracle->add_option("--budget", budget, "search node budget, unbounded if omitted");
    oracle->add_flag("--count", count_solutions, "count all solutions instead of stopping at one");
    oracle->add_flag("--min-k", min_k, "search all offset schedules for the minimum k");

    try {
        std::vector<const char*> argv;
        argv.push_back("caterpack");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (*gen) {
            Caterpillar c;
            if (center) {
                if (n <= 0 || h <= 0)
                    throw parameter_error("gen --center needs --n and --h");
                c = make_center_caterpillar(n, h);
            } else {
                if (delta <= 0 || sigma <= 0)
                    throw parameter_error("gen needs --delta and --sigma (or --center)");
                c = make_regular_caterpillar(delta, sigma);
            }
            if (output.format == "json") {
                output.deliver_json(caterpillar_to_json(c), out);
            } else {
                std::ostringstream t;
                t << "caterpillar: n = " << c.n << ", sigma = " << c.sigma();
                if (auto d = regularity_of(c)) t << ", regular with delta = " << *d;
                t << "\n";
                output.deliver(t.str(), out);
            }
            return exit_ok;
        }

        if (*pack) {
            PackingLayout layout;
            if (scheme == "place") {
                if (delta <= 0 || sigma <= 0 || h <= 0)
                    throw parameter_error("pack --scheme place needs --delta, --sigma, --h");
                layout = place_copies(delta, sigma, h, Side::inner, unchecked);
            } else if (scheme == "mixed") {
                if (deltas.empty() || n <= 0)
                    throw parameter_error("pack --scheme mixed needs --deltas and --n");
                layout = pack_mixed(deltas, n, unchecked);
            } else if (scheme == "divisible") {
                if (deltas.empty() || n <= 0)
                    throw parameter_error("pack --scheme divisible needs --deltas and --n");
                layout = pack_divisible(deltas, n, unchecked);
            } else {
                if (delta <= 0 || sigma <= 0)
                    throw parameter_error("pack --scheme three2planar needs --delta and --sigma");
                layout = place_three_2planar(delta, sigma, unchecked);
            }
            if (halve) layout = halve_by_sides(layout);

            const auto dup = has_multi_edges(layout);
            if (!dup.empty()) {
                CrossingReport rep;
                rep.multi_edges = dup;
                ojson payload;
                payload["layout"] = layout_to_json(layout);
                payload["report"] = report_to_json(rep);
                if (output.format == "json")
                    output.deliver_json(payload, out);
                else
                    output.deliver(detail::report_table(rep), out);
                err << "verification failed: layout has multiple edges\n";
                return exit_verify;
            }
            const CrossingReport rep = crossing_counts(layout);
            if (output.format == "json") {
                ojson payload;
                payload["layout"] = layout_to_json(layout);
                payload["report"] = report_to_json(rep);
                output.deliver_json(payload, out);
            } else {
                std::ostringstream t;
                t << "layout: n = " << layout.n << ", drawings = " << layout.h() << ", offsets =";
                for (int j : layout.offsets()) t << " " << j;
                t << "\n" << detail::report_table(rep);
                output.deliver(t.str(), out);
            }
            return exit_ok;
        }

        if (*verify) {
            const PackingLayout layout = parse_layout(detail::read_input(input_path));
            const auto dup = has_multi_edges(layout);
            if (!dup.empty()) {
                CrossingReport rep;
                rep.multi_edges = dup;
                if (output.format == "json")
                    output.deliver_json(report_to_json(rep), out);
                else
                    output.deliver(detail::report_table(rep), out);
                err << "verification failed: layout has multiple edges\n";
                return exit_verify;
            }
            const CrossingReport rep = crossing_counts(
                layout, method == "sweep" ? CountMethod::sweep : CountMethod::pairwise);

            bool spanning = true;
            for (const auto& d : layout.drawings)
                if (!drawing_spans(d)) spanning = false;

            ojson payload = report_to_json(rep);
            std::ostringstream t;
            t << detail::report_table(rep);
            t << "spanning: " << (spanning ? "yes" : "no") << "\n";
            payload["spanning"] = spanning;

            if (against_bounds) {
                const auto ds = detail::drawing_deltas(layout);
                auto sorted = ds;
                std::vector<int> js = layout.offsets();
                const bool orderly = std::is_sorted(sorted.rbegin(), sorted.rend()) &&
                                     std::is_sorted(js.begin(), js.end()) &&
                                     std::adjacent_find(js.begin(), js.end()) == js.end() &&
                                     !js.empty();
                if (orderly) {
                    const BoundSheet sheet = make_bound_sheet(layout.n, ds, js);
                    payload["bounds"] = detail::sheet_to_json(sheet, layout.h());
                    payload["bounds"]["measured_k"] = rep.k;
                    t << detail::sheet_table(sheet, layout.h());
                    t << "measured k               = " << rep.k << "\n";
                } else {
                    payload["bounds"] = "unavailable: drawings are not in bound-sheet order";
                    t << "bounds unavailable: drawings are not in bound-sheet order\n";
                }
            }
            if (output.format == "json")
                output.deliver_json(payload, out);
            else
                output.deliver(t.str(), out);
            if (!spanning) {
                err << "verification failed: a drawing is not spanning\n";
                return exit_verify;
            }
            return exit_ok;
        }

        if (*render) {
            const PackingLayout layout = parse_layout(detail::read_input(input_path));
            output.deliver(render_svg(layout), out);
            return exit_ok;
        }

        if (*bounds) {
            if (deltas.empty()) {
                if (delta <= 0 || h <= 0)
                    throw parameter_error("bounds needs --deltas or --delta with --h");
                deltas.assign(static_cast<std::size_t>(h), delta);
            }
            if (h <= 0) h = static_cast<int>(deltas.size());
            if (static_cast<int>(deltas.size()) != h)
                throw parameter_error("bounds: --h disagrees with --deltas length");
            if (offsets.empty())
                for (int i = 0; i < h; ++i) offsets.push_back(i);
            const BoundSheet sheet = make_bound_sheet(n, deltas, offsets);
            if (output.format == "json")
                output.deliver_json(detail::sheet_to_json(sheet, h), out);
            else
                output.deliver(detail::sheet_table(sheet, h), out);
            return exit_ok;
        }

        if (*oracle) {
            if (min_k) {
                if (delta <= 0 || sigma <= 0 || copies <= 0)
                    throw parameter_error("oracle --min-k needs --delta, --sigma, --copies");
                const auto best = min_k_over_offsets(delta, sigma, copies);
                if (output.format == "json") {
                    ojson payload;
                    payload["k"] = best.k;
                    payload["offsets"] = best.offsets;
                    output.deliver_json(payload, out);
                } else {
                    std::ostringstream t;
                    t << "minimum k = " << best.k << " at offsets";
                    for (int j : best.offsets) t << " " << j;
                    t << "\n";
                    output.deliver(t.str(), out);
                }
                return exit_ok;
            }
            SearchInstance inst;
            inst.node_budget = budget;
            inst.count_solutions = count_solutions;
            if (!deltas.empty()) {
                if (n <= 0) throw parameter_error("oracle --deltas needs --n");
                for (int d : deltas) {
                    const int s = caterpack::detail::sigma_for(d, n, "oracle");
                    inst.caterpillars.push_back(make_regular_caterpillar(d, s));
                }
            } else {
                if (delta <= 0 || sigma <= 0 || copies <= 0)
                    throw parameter_error("oracle needs --delta, --sigma, --copies or --deltas, --n");
                const Caterpillar c = make_regular_caterpillar(delta, sigma);
                for (int i = 0; i < copies; ++i) inst.caterpillars.push_back(c);
            }
            const OracleResult res = brute_force_placement_exists(inst);
            if (output.format == "json") {
                output.deliver_json(oracle_result_to_json(res), out);
            } else {
                std::ostringstream t;
                t << "verdict: "
                  << (res.status == OracleStatus::exists
                          ? "exists"
                          : res.status == OracleStatus::impossible ? "impossible" : "budget-exhausted")
                  << ", nodes = " << res.nodes << ", solutions = " << res.solutions << "\n";
                output.deliver(t.str(), out);
            }
            return res.status == OracleStatus::budget_exhausted ? exit_budget : exit_ok;
        }

        err << "no subcommand selected\n";
        return exit_usage;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const parameter_error& e) {
        err << "parameter error: " << e.what() << "\n";
        return exit_usage;
    } catch (const infeasible_error& e) {
        err << "infeasible:\n";
        for (const auto& c : e.violated) err << "  " << c << "\n";
        return exit_infeasible;
    } catch (const construction_error& e) {
        err << "construction failed: " << e.what() << "\n";
        return e.budget_exhausted ? exit_budget : exit_infeasible;
    } catch (const verification_error& e) {
        err << "verification failed: " << e.what() << "\n";
        return exit_verify;
    } catch (const structure_error& e) {
        err << "structure error: " << e.what() << "\n";
        return exit_verify;
    } catch (const geometry_error& e) {
        err << "geometry error: " << e.what() << "\n";
        return exit_verify;
    }
}

} // namespace caterpack::cli
