#pragma once

#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "atlas.hpp"
#include "certify.hpp"
#include "escape.hpp"
#include "leafjoin.hpp"
#include "ndjson.hpp"
#include "sp_poly.hpp"

namespace spz {

namespace detail {

// "RE,IM" or "RE".
inline Cx parse_cx(const std::string& s) {
    std::size_t comma = s.find(',');
    try {
        std::size_t used = 0;
        double re = std::stod(s.substr(0, comma), &used);
        if (used != (comma == std::string::npos ? s.size() : comma)) throw ArgumentError("");
        double im = 0.0;
        if (comma != std::string::npos) {
            std::string t = s.substr(comma + 1);
            im = std::stod(t, &used);
            if (used != t.size()) throw ArgumentError("");
        }
        return {re, im};
    } catch (const std::exception&) {
        throw ArgumentError("bad complex number '" + s + "', expected RE,IM");
    }
}

// "2..8" or "2,3,5".
inline std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    try {
        std::size_t dots = s.find("..");
        if (dots != std::string::npos) {
            int a = std::stoi(s.substr(0, dots)), b = std::stoi(s.substr(dots + 2));
            if (a > b) throw ArgumentError("");
            for (int i = a; i <= b; ++i) out.push_back(i);
            return out;
        }
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    } catch (const std::exception&) {
        throw ArgumentError("bad integer list '" + s + "'");
    }
    if (out.empty()) throw ArgumentError("empty integer list");
    return out;
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

}  // namespace detail

// Exit codes: 0 success, 1 domain failure, 2 usage error.
inline int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Chromatic zeros of series-parallel graphs"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    // render
    std::string r_ll = "0,-1", r_ur = "2,1", r_out, r_data, r_depths = "75,150,300";
    int r_w = 1001, r_h = 1001;
    int r_workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    double r_slack = 1e-6;
    auto* render = app.add_subcommand("render", "Render the zero / zero-free atlas to a PPM image");
    render->add_option("--ll", r_ll, "Lower-left corner RE,IM");
    render->add_option("--ur", r_ur, "Upper-right corner RE,IM");
    render->add_option("--width", r_w, "Width in pixels");
    render->add_option("--height", r_h, "Height in pixels");
    render->add_option("--depths", r_depths, "Ascending blue shading depths");
    render->add_option("--orange-slack", r_slack, "Minimum certificate slack for orange");
    render->add_option("--workers", r_workers, "Worker threads");
    render->add_option("--out", r_out, "Output PPM path")->required();
    render->add_option("--data", r_data, "Optional per-pixel NDJSON dump");

    // escape
    std::string e_q, e_depths = "75,150,300";
    std::int64_t e_budget = 300;
    double e_materialize = 0.0;
    auto* esc = app.add_subcommand("escape", "Search for an escaping (virtual) interaction");
    esc->add_option("--q", e_q, "Parameter RE,IM")->required();
    esc->add_option("--budget", e_budget, "Bound on the product of the word");
    esc->add_option("--depths", e_depths, "Shading depths");
    esc->add_option("--materialize", e_materialize, "Also find a witness graph with a zero within this radius");

    // certify
    std::string c_q, c_method = "auto";
    int c_grid = 64;
    auto* cert = app.add_subcommand("certify", "Find a zero-free disk certificate");
    cert->add_option("--q", c_q, "Parameter RE,IM")->required();
    cert->add_option("--method", c_method, "auto|real01|real3227|near1|general")
        ->check(CLI::IsMember({"auto", "real01", "real3227", "near1", "general"}));
    cert->add_option("--rho-grid", c_grid, "Grid size of the general search");

    // chromatic
    std::string ch_expr;
    bool ch_pair = false, ch_brute = false;
    auto* chrom = app.add_subcommand("chromatic", "Chromatic polynomial of a series-parallel term");
    chrom->add_option("expr", ch_expr, "Term, e.g. theta(2,2) or s(e,p(e,e))")->required();
    chrom->add_flag("--pair", ch_pair, "Also print Z^same and Z^dif");
    chrom->add_flag("--brute", ch_brute, "Cross-check by subset expansion (<= 22 edges)");

    // zeros
    std::string z_expr, z_center;
    double z_radius = 0.0;
    int z_samples = 256;
    auto* zeros = app.add_subcommand("zeros", "Count chromatic zeros inside a disk");
    zeros->add_option("expr", z_expr, "Series-parallel term")->required();
    zeros->add_option("--center", z_center, "Disk center RE,IM")->required();
    zeros->add_option("--radius", z_radius, "Disk radius")->required();
    zeros->add_option("--samples", z_samples, "Initial contour samples");

    // activity
    int a_d1 = 3, a_d2 = 2, a_grid = 720;
    auto* act = app.add_subcommand("activity", "Neutral-point search for the alternating (d1,d2) trees");
    act->add_option("--d1", a_d1, "Down degree of odd levels");
    act->add_option("--d2", a_d2, "Down degree of even levels");
    act->add_option("--theta-grid", a_grid, "Theta grid size");

    // zerohunt
    int h_d1 = 3, h_d2 = 2;
    std::string h_depths = "2..8", h_seed;
    auto* hunt = app.add_subcommand("zerohunt", "Newton hunt for zeros of alternating leaf-joined trees");
    hunt->add_option("--d1", h_d1, "Down degree of odd levels");
    hunt->add_option("--d2", h_d2, "Down degree of even levels");
    hunt->add_option("--depths", h_depths, "Depths, e.g. 2..8");
    hunt->add_option("--seed", h_seed, "Seed RE,IM (default: activity point)");

    // table
    int t_min = 4, t_max = 45, t_grid = 720;
    auto* table = app.add_subcommand("table", "CSV sweep of activity points by maximum degree");
    table->add_option("--delta-min", t_min, "Smallest maximum degree (>= 4)");
    table->add_option("--delta-max", t_max, "Largest maximum degree (<= 45)");
    table->add_option("--theta-grid", t_grid, "Theta grid size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        if (*render) {
            RenderSpec spec;
            spec.lower_left = detail::parse_cx(r_ll);
            spec.upper_right = detail::parse_cx(r_ur);
            spec.width_px = r_w;
            spec.height_px = r_h;
            spec.blue_depths = detail::parse_int_list(r_depths);
            spec.orange_slack = r_slack;
            spec.workers = r_workers;
            if (!(spec.upper_right.real() > spec.lower_left.real() && spec.upper_right.imag() > spec.lower_left.imag()))
                throw ArgumentError("upper-right corner must lie above and right of lower-left");
            validate(spec);
            std::ofstream data;
            if (!r_data.empty()) {
                data.open(r_data);
                if (!data) throw IoError("cannot open " + r_data + " for writing");
            }
            RenderResult res = render_pixels(spec, r_data.empty() ? std::function<void(int, const std::vector<PixelVerdict>&)>{}
                                                                  : [&](int y, const std::vector<PixelVerdict>& row) {
                                                                        for (int x = 0; x < static_cast<int>(row.size()); ++x)
                                                                            data << to_json(row[static_cast<std::size_t>(x)], x, y).dump() << '\n';
                                                                    });
            if (data.is_open() && !data) throw IoError("write failed for " + r_data);
            write_file(r_out, encode_ppm(res.pixels, spec.width_px, spec.height_px));
            err << "rendered " << spec.width_px << "x" << spec.height_px << " in " << std::fixed << std::setprecision(2)
                << res.summary.wall_seconds << " s on " << spec.workers << " workers\n";
            detail::emit(out, to_json(res.summary));
            return 0;
        }
        if (*esc) {
            Cx q = detail::parse_cx(e_q);
            if (e_budget < 1) throw ArgumentError("budget must be >= 1");
            auto depths = detail::parse_int_list(e_depths);
            EscapeVerdict v = escape_search(q, e_budget, depths);
            Json j = to_json(v, q);
            if (e_materialize > 0.0 && v.witness) {
                auto mz = materialize_zero(*v.witness, q, e_materialize);
                if (mz) {
                    Json m;
                    m["n"] = mz->member.n;
                    m["m"] = mz->member.m;
                    m["terminal_edge"] = mz->member.terminal_edge;
                    m["zeros"] = mz->zeros;
                    m["radius"] = e_materialize;
                    j["materialized"] = m;
                } else {
                    j["materialized"] = nullptr;
                }
            }
            detail::emit(out, j);
            return 0;
        }
        if (*cert) {
            Cx q = detail::parse_cx(c_q);
            if (c_method == "auto") {
                double slack = 0.0;
                auto c = certify_auto(q, kDelta, &slack);
                detail::emit(out, c ? to_json(*c) : not_found_json(q, slack));
                return 0;
            }
            if (c_method == "general") {
                GeneralSearch s = certify_general_search(q, c_grid);
                detail::emit(out, s.cert ? to_json(*s.cert) : not_found_json(q, s.best_slack));
                return 0;
            }
            if (c_method == "near1") {
                detail::emit(out, to_json(certify_near_one(q)));
                return 0;
            }
            if (!is_real(q)) throw DomainError("method " + c_method + " needs real q");
            detail::emit(out, to_json(c_method == "real01" ? certify_real_01(q.real()) : certify_real_3227(q.real())));
            return 0;
        }
        if (*chrom) {
            SpExpr g = parse_expr(ch_expr);
            PolyPair p = pair_polys(g);
            IntPoly z = p.same + p.dif;
            Json j;
            j["expr"] = ch_expr;
            j["edges"] = g.edge_count();
            j["vertices"] = g.vertex_count();
            j["z"] = z.to_string();
            j["coefficients"] = z.coeff_strings();
            if (ch_pair) {
                j["same"] = p.same.to_string();
                j["dif"] = p.dif.to_string();
            }
            if (ch_brute) j["brute_force_agrees"] = brute_force_z(g) == z;
            detail::emit(out, j);
            return 0;
        }
        if (*zeros) {
            SpExpr g = parse_expr(z_expr);
            Cx c = detail::parse_cx(z_center);
            Json j;
            j["expr"] = z_expr;
            j["center"] = cx_json(c);
            j["radius"] = z_radius;
            j["zeros"] = count_zeros_in_disk(g, c, z_radius, z_samples);
            detail::emit(out, j);
            return 0;
        }
        if (*act) {
            if (!(2 <= a_d2 && a_d2 <= a_d1)) throw ArgumentError("need 2 <= d2 <= d1");
            detail::emit(out, to_json(activity_search(a_d1, a_d2, a_grid)));
            return 0;
        }
        if (*hunt) {
            if (!(2 <= h_d2 && h_d2 <= h_d1)) throw ArgumentError("need 2 <= d2 <= d1");
            Cx seed = h_seed.empty() ? activity_search(h_d1, h_d2).q : detail::parse_cx(h_seed);
            for (const auto& r : zero_hunt_leafjoined(h_d1, h_d2, detail::parse_int_list(h_depths), seed))
                detail::emit(out, to_json(r));
            return 0;
        }
        if (*table) {
            if (!(4 <= t_min && t_min <= t_max && t_max <= 45)) throw ArgumentError("need 4 <= delta-min <= delta-max <= 45");
            out << "Delta,re_q,im_q,d1,d2,re_q_over_Delta\n";
            out << std::setprecision(6) << std::fixed;
            for (int D = t_min; D <= t_max; ++D) {
                auto [d1, d2] = table_type(D);
                ActivityPoint a = activity_search(d1, d2, t_grid);
                out << D << ',' << a.q.real() << ',' << a.q.imag() << ',' << d1 << ',' << d2 << ','
                    << a.q.real() / D << '\n';
            }
            return 0;
        }
    } catch (const ArgumentError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace spz
