// Command-line front end: parse function/weight specs, run the library
// operations and emit deterministic JSON/CSV reports.
//
// Exit codes: 0 holds/success, 1 fails, 2 inconclusive, 64 usage error,
// 65 spec-file error.  Diagnostics go to stderr as single-line JSON.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "bindex/io.hpp"

using namespace bindex;

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;
constexpr int kExitSpecFile = 65;

int verdict_exit(Verdict v) {
    switch (v) {
        case Verdict::Holds: return kExitHolds;
        case Verdict::Fails: return kExitFails;
        case Verdict::Inconclusive: return kExitInconclusive;
    }
    return kExitUsage;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw SpecParseError("cannot open output file: " + out_path);
    out << text << '\n';
}

void diagnostic(const std::string& type, const std::string& message) {
    JsonWriter w;
    w.begin_object();
    w.key("error").value(type);
    w.key("message").value(message);
    w.end_object();
    std::cerr << w.str() << '\n';
}

BidiscPoint parse_center(const std::vector<double>& vals) {
    if (vals.size() == 4) return {{vals[0], vals[1]}, {vals[2], vals[3]}};
    if (vals.size() == 2) return {{vals[0], 0.0}, {vals[1], 0.0}};
    throw DomainViolation("--center takes RE IM RE IM (or RE RE with zero imaginary parts)");
}

DiscGrid parse_grid(const std::string& spec, double r_max) {
    int n_r = 0, n_theta = 0;
    char x = 0;
    std::istringstream ss(spec);
    if (!(ss >> n_r >> x >> n_theta) || x != 'x' || n_r < 0 || n_theta < 1)
        throw DomainViolation("--grid expects NxM (radial x angular counts)");
    return {n_r, n_theta, r_max};
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::istringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw DomainViolation("expected a comma-separated list of numbers");
    return out;
}

// batch mode: one report per grid point as JSON lines, then a summary line
int emit_batch(const std::vector<BidiscPoint>& grid,
               const std::function<CriterionReport(const std::vector<BidiscPoint>&)>& check,
               const std::string& out_path) {
    std::ostringstream os;
    long long holds = 0, fails = 0, inconclusive = 0;
    for (const auto& z : grid) {
        CriterionReport rep = check({z});
        os << report_to_json(rep) << '\n';
        switch (rep.verdict) {
            case Verdict::Holds: ++holds; break;
            case Verdict::Fails: ++fails; break;
            case Verdict::Inconclusive: ++inconclusive; break;
        }
    }
    JsonWriter w;
    w.begin_object();
    w.key("summary").begin_object();
    w.key("holds").value(holds);
    w.key("fails").value(fails);
    w.key("inconclusive").value(inconclusive);
    w.end_object();
    w.end_object();
    os << w.str();
    emit(os.str(), out_path);
    if (fails > 0) return kExitFails;
    if (inconclusive > 0) return kExitInconclusive;
    return kExitHolds;
}

int run_profile(const AnalyticFunction& F, const WeightField& L, const std::string& grid,
                const std::string& levels_csv, int cap, double tol,
                const std::string& format, const std::string& out_path,
                bool canned_example) {
    DiscGrid shape = parse_grid(grid, 1.0);
    auto levels = parse_list(levels_csv);
    auto profile = index_profile(F, L, levels, cap, shape, tol);

    if (format == "csv") {
        std::ostringstream os;
        dump_profile_csv(profile, os);
        std::string text = os.str();
        text.pop_back();  // emit() appends the trailing newline
        emit(text, out_path);
    } else {
        emit(profile_to_json(profile), out_path);
    }
    if (canned_example) {
        bool clean = profile.sup_n0 == 0 && profile.unbounded == 0 &&
                     double(profile.inconclusive) <= 0.01 * double(profile.total_points);
        return clean ? kExitHolds : kExitFails;
    }
    return kExitHolds;
}

int dispatch(int argc, char** argv) {
    CLI::App app{
        "joint-variable index computations for analytic functions on the unit bidisc"};
    app.name("bindex");

    std::string fn_path, weight_path, out_path, format = "json";
    std::string grid_spec = "4x8", profile_grid = "8x8", levels_csv = "0.5,0.7,0.9,0.95", a_csv;
    bool per_point = false;
    std::vector<double> center_vals, radii_vals, rprime_vals, rsecond_vals;
    double r_max = 0.95, tol = 1e-9, d_param = 1.0, beta = 2.0, c_param = 1.0;
    int cap = 12, order = 8, samples = 64, n_param = 0, k0_param = 0, p_param = 0;
    int refine = 0;
    std::string method = "auto";

    auto add_fn = [&](CLI::App* cmd) {
        cmd->add_option("--fn", fn_path, "function spec (JSON, or CSV coefficient table)")
            ->required();
    };
    auto add_weight = [&](CLI::App* cmd) {
        cmd->add_option("--weight", weight_path, "weight spec JSON")->required();
    };
    auto add_center = [&](CLI::App* cmd) {
        cmd->add_option("--center", center_vals, "expansion point RE IM RE IM")
            ->expected(2, 4)
            ->required();
    };
    auto add_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
    };

    auto* vw = app.add_subcommand("validate-weight", "check the admissibility margin on a grid");
    add_weight(vw);
    add_out(vw);
    vw->add_option("--grid", grid_spec, "outer grid NxM per coordinate");
    vw->add_option("--rmax", r_max, "outer grid max radius");

    auto* lam = app.add_subcommand("lambda", "polydisc ratio bounds of the weight");
    add_weight(lam);
    add_out(lam);
    lam->add_option("--radii", radii_vals, "R1 R2")->expected(2)->required();
    lam->add_option("--grid", grid_spec, "outer grid NxM per coordinate");
    lam->add_option("--rmax", r_max, "outer grid max radius");
    lam->add_option("--refine", refine, "double the grids this many times");

    auto* co = app.add_subcommand("coeffs", "truncated Taylor table at a point");
    add_fn(co);
    add_center(co);
    add_out(co);
    co->add_option("--order", order, "max total degree")->required();
    co->add_option("--method", method, "auto | closed | cauchy")
        ->check(CLI::IsMember({"auto", "closed", "cauchy"}));
    co->add_option("--radii", radii_vals, "extraction radii (cauchy)")->expected(2);
    co->add_option("--samples", samples, "skeleton samples per axis (cauchy)");

    auto* li = app.add_subcommand("local-index", "local index at a point");
    add_fn(li);
    add_weight(li);
    add_center(li);
    add_out(li);
    li->add_option("--cap", cap, "scan cap on the total degree");
    li->add_option("--tol", tol, "relative dominance slack");

    auto* ip = app.add_subcommand("index-profile", "index over exhaustion grids");
    add_fn(ip);
    add_weight(ip);
    add_out(ip);
    ip->add_option("--levels", levels_csv, "comma list of exhaustion radii");
    ip->add_option("--cap", cap, "scan cap");
    ip->add_option("--grid", profile_grid, "per-level grid NxM per coordinate");
    ip->add_option("--tol", tol, "relative dominance slack");

    auto* mm = app.add_subcommand("maxmod", "maximum modulus on a polydisc skeleton");
    add_fn(mm);
    add_center(mm);
    add_out(mm);
    mm->add_option("--radii", radii_vals, "R1 R2")->expected(2)->required();
    mm->add_option("--samples", samples, "samples per axis");

    auto* ra = app.add_subcommand("ratio", "two-radius max-modulus ratio");
    add_fn(ra);
    add_weight(ra);
    add_out(ra);
    ra->add_option("--rprime", rprime_vals, "R'1 R'2")->expected(2)->required();
    ra->add_option("--rsecond", rsecond_vals, "R''1 R''2")->expected(2)->required();
    ra->add_option("--grid", grid_spec, "center grid NxM per coordinate");
    ra->add_option("--rmax", r_max, "center grid max radius");
    ra->add_option("--samples", samples, "skeleton samples per axis");
    ra->add_flag("--per-point", per_point, "one report per grid point (JSON lines)");

    auto* hy = app.add_subcommand("hayman", "band p+1 against bands <= p");
    add_fn(hy);
    add_weight(hy);
    add_out(hy);
    hy->add_option("--p", p_param, "band order")->required();
    hy->add_option("--grid", grid_spec, "center grid NxM per coordinate");
    hy->add_option("--rmax", r_max, "center grid max radius");
    hy->add_option("--index", n_param, "measured index for the factorial bound note");
    hy->add_flag("--per-point", per_point, "one report per grid point (JSON lines)");

    auto* ta = app.add_subcommand("tail", "head sum against the series tail");
    add_fn(ta);
    add_weight(ta);
    add_out(ta);
    ta->add_option("--N", n_param, "head degree")->required();
    ta->add_option("--c", c_param, "tail factor")->required();
    ta->add_option("--cap", cap, "tail truncation degree");
    ta->add_option("--grid", grid_spec, "center grid NxM per coordinate");
    ta->add_option("--rmax", r_max, "center grid max radius");
    ta->add_flag("--per-point", per_point, "one report per grid point (JSON lines)");

    auto* mp = app.add_subcommand("main-poly", "dominant-band radius search");
    add_out(mp);
    mp->add_option("--a", a_csv, "diagonal sequence a_0,a_1,... (linear values)")->required();
    mp->add_option("--N", n_param, "index premise")->required();
    mp->add_option("--d", d_param, "search scale in (0, beta]");
    mp->add_option("--beta", beta, "admissibility constant");

    auto* vmp = app.add_subcommand("verify-main-poly", "is the degree-k0 band dominant?");
    add_fn(vmp);
    add_weight(vmp);
    add_center(vmp);
    add_out(vmp);
    vmp->add_option("--radii", radii_vals, "R1 R2 (divided by L(z0))")->expected(2)->required();
    vmp->add_option("--k0", k0_param, "band degree")->required();
    vmp->add_option("--order", order, "table order");
    vmp->add_option("--samples", samples, "skeleton samples per axis");

    auto* ex = app.add_subcommand("example1",
                                  "canned pipeline: the boundary-singular exponential "
                                  "against its admissible power weight");
    add_out(ex);
    ex->add_option("--levels", levels_csv, "exhaustion radii");
    ex->add_option("--cap", cap, "scan cap");
    ex->add_option("--grid", profile_grid, "per-level grid NxM per coordinate");
    ex->add_option("--tol", tol, "relative dominance slack");

    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        diagnostic("usage", e.what());
        return kExitUsage;
    }

    try {
        if (vw->parsed()) {
            auto L = load_weight_file(weight_path);
            DiscGrid g = parse_grid(grid_spec, r_max);
            auto rep = validate_weight(L, {g, g});
            emit(validation_to_json(rep), out_path);
            return rep.admissible_fraction == 1.0 ? kExitHolds : kExitFails;
        }
        if (lam->parsed()) {
            auto L = load_weight_file(weight_path);
            DiscGrid g = parse_grid(grid_spec, r_max);
            BidiscGrid outer{g, g};
            DiscGrid inner = default_lambda_inner();
            for (int i = 1; i < refine; ++i) {
                outer = outer.doubled();
                inner = inner.doubled();
            }
            // with --refine the interval variant doubles once more and
            // reports how far the doubling moved the estimates
            auto est = refine > 0
                           ? lambda_bounds_interval(L, {radii_vals[0], radii_vals[1]},
                                                    outer, inner)
                           : lambda_bounds(L, {radii_vals[0], radii_vals[1]}, outer, inner);
            emit(lambda_to_json(est), out_path);
            return est.q2_consistent ? kExitHolds : kExitInconclusive;
        }
        if (co->parsed()) {
            auto F = load_function_file(fn_path);
            BidiscPoint z0 = parse_center(center_vals);
            CoeffTable table;
            if (method == "cauchy" || (method == "auto" && !F.has_exact_derivatives())) {
                Radii rho = radii_vals.size() == 2 ? Radii{radii_vals[0], radii_vals[1]}
                                                   : default_extraction_radii(z0);
                table = taylor_cauchy(F, z0, rho, samples, order);
            } else {
                table = taylor_closed_form(F, z0, order);
            }
            if (format == "csv") {
                std::ostringstream os;
                dump_coeff_csv(table, os);
                std::string text = os.str();
                text.pop_back();
                emit(text, out_path);
            } else {
                emit(coeff_table_to_poly_json(table), out_path);
            }
            return kExitHolds;
        }
        if (li->parsed()) {
            auto F = load_function_file(fn_path);
            auto L = load_weight_file(weight_path);
            BidiscPoint z0 = parse_center(center_vals);
            auto res = local_index(F, L, z0, cap, tol);
            emit(local_index_to_json(z0, res), out_path);
            switch (res.status) {
                case IndexStatus::Ok: return kExitHolds;
                case IndexStatus::Unbounded: return kExitFails;
                case IndexStatus::Inconclusive: return kExitInconclusive;
            }
        }
        if (ip->parsed()) {
            return run_profile(load_function_file(fn_path), load_weight_file(weight_path),
                               profile_grid, levels_csv, cap, tol, format, out_path, false);
        }
        if (mm->parsed()) {
            auto F = load_function_file(fn_path);
            auto res = max_modulus(F, parse_center(center_vals),
                                   {radii_vals[0], radii_vals[1]}, samples);
            emit(max_modulus_to_json(res), out_path);
            return kExitHolds;
        }
        if (ra->parsed()) {
            auto F = load_function_file(fn_path);
            auto L = load_weight_file(weight_path);
            DiscGrid g = parse_grid(grid_spec, r_max);
            Radii rp{rprime_vals[0], rprime_vals[1]};
            Radii rs{rsecond_vals[0], rsecond_vals[1]};
            if (per_point)
                return emit_batch(
                    BidiscGrid{g, g}.points(),
                    [&](const std::vector<BidiscPoint>& pts) {
                        return check_modulus_ratio(F, L, pts, rp, rs, samples);
                    },
                    out_path);
            auto rep = check_modulus_ratio(F, L, BidiscGrid{g, g}.points(), rp, rs, samples);
            if (rep.verdict == Verdict::Holds && rprime_vals[0] < 1.0 &&
                rprime_vals[1] < 1.0 && rsecond_vals[0] > 1.0 && rsecond_vals[1] > 1.0)
                rep.witness["index_bound"] = index_bound_from_ratio(
                    {rprime_vals[0], rprime_vals[1]},
                    {rsecond_vals[0], rsecond_vals[1]}, rep.witness.at("p1"));
            emit(report_to_json(rep), out_path);
            return verdict_exit(rep.verdict);
        }
        if (hy->parsed()) {
            auto F = load_function_file(fn_path);
            auto L = load_weight_file(weight_path);
            DiscGrid g = parse_grid(grid_spec, r_max);
            std::optional<int> idx;
            if (hy->count("--index")) idx = n_param;
            if (per_point)
                return emit_batch(
                    BidiscGrid{g, g}.points(),
                    [&](const std::vector<BidiscPoint>& pts) {
                        return check_hayman(F, L, pts, p_param, idx);
                    },
                    out_path);
            auto rep = check_hayman(F, L, BidiscGrid{g, g}.points(), p_param, idx);
            emit(report_to_json(rep), out_path);
            return verdict_exit(rep.verdict);
        }
        if (ta->parsed()) {
            auto F = load_function_file(fn_path);
            auto L = load_weight_file(weight_path);
            DiscGrid g = parse_grid(grid_spec, r_max);
            if (per_point)
                return emit_batch(
                    BidiscGrid{g, g}.points(),
                    [&](const std::vector<BidiscPoint>& pts) {
                        return check_tail_dominance(F, L, pts, n_param, c_param, cap);
                    },
                    out_path);
            auto rep = check_tail_dominance(F, L, BidiscGrid{g, g}.points(), n_param,
                                            c_param, cap);
            emit(report_to_json(rep), out_path);
            return verdict_exit(rep.verdict);
        }
        if (mp->parsed()) {
            std::vector<double> log_a;
            for (double v : parse_list(a_csv))
                log_a.push_back(v > 0.0 ? std::log(v) : kNegInf);
            auto res = find_main_polynomial(log_a, n_param, d_param, beta);
            emit(main_poly_to_json(res), out_path);
            return kExitHolds;
        }
        if (vmp->parsed()) {
            auto F = load_function_file(fn_path);
            auto L = load_weight_file(weight_path);
            BidiscPoint z0 = parse_center(center_vals);
            auto table = taylor_any(F, z0, order);
            auto rep = verify_main_polynomial(table, L, z0, {radii_vals[0], radii_vals[1]},
                                              k0_param, samples);
            emit(report_to_json(rep), out_path);
            return verdict_exit(rep.verdict);
        }
        if (ex->parsed()) {
            auto F = AnalyticFunction::exp_reciprocal();
            auto L = WeightField::example_weight(2.0, 4.0);  // sigma = 2*beta
            return run_profile(F, L, profile_grid, levels_csv, cap, tol, format,
                               out_path, true);
        }
    } catch (const SpecParseError& e) {
        diagnostic("spec_file", e.what());
        return kExitSpecFile;
    } catch (const Error& e) {
        diagnostic("usage", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        diagnostic("internal", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return dispatch(argc, argv); }
