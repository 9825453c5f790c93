#include "bindex/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

namespace bindex {

using nlohmann::json;

namespace {

Complex parse_complex(const json& j, const char* what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw SpecParseError(std::string(what) + ": expected a number or [re, im]");
}

json parse_json(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw SpecParseError("invalid JSON");
    return j;
}

}  // namespace

AnalyticFunction parse_function_spec(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object() || !j.contains("family"))
        throw SpecParseError("function spec: missing \"family\"");
    std::string family = j.at("family").get<std::string>();
    if (family == "exp_reciprocal") return AnalyticFunction::exp_reciprocal();
    if (family == "rational_geom") return AnalyticFunction::rational_geom();
    if (family == "poly") {
        if (!j.contains("coeffs") || !j.at("coeffs").is_array())
            throw SpecParseError("poly spec: missing \"coeffs\" array");
        std::vector<PolyTerm> terms;
        for (const auto& row : j.at("coeffs")) {
            if (!row.is_array() || row.size() != 4)
                throw SpecParseError("poly spec: each entry must be [j1, j2, re, im]");
            int j1 = row[0].get<int>(), j2 = row[1].get<int>();
            if (j1 < 0 || j2 < 0) throw SpecParseError("poly spec: negative index");
            terms.push_back({{j1, j2}, {row[2].get<double>(), row[3].get<double>()}});
        }
        return AnalyticFunction::poly(std::move(terms));
    }
    if (family == "exp_linear")
        return AnalyticFunction::exp_linear(parse_complex(j.at("a"), "exp_linear a"),
                                            parse_complex(j.at("b"), "exp_linear b"));
    if (family == "reciprocal_product")
        return AnalyticFunction::reciprocal_product(
            parse_complex(j.at("a1"), "reciprocal_product a1"),
            parse_complex(j.at("a2"), "reciprocal_product a2"));
    throw SpecParseError("function spec: unknown family \"" + family + "\"");
}

WeightField parse_weight_spec(const std::string& text) {
    json j = parse_json(text);
    if (!j.is_object() || !j.contains("family"))
        throw SpecParseError("weight spec: missing \"family\"");
    std::string family = j.at("family").get<std::string>();
    double beta = j.value("beta", 2.0);
    if (family == "constant") {
        if (!j.contains("values") || !j.at("values").is_array() || j.at("values").size() != 2)
            throw SpecParseError("constant weight: \"values\" must be [c1, c2]");
        return WeightField::constant(beta, j.at("values")[0].get<double>(),
                                     j.at("values")[1].get<double>());
    }
    if (family == "boundary_power") {
        if (!j.contains("exponents") || !j.at("exponents").is_array() ||
            j.at("exponents").size() != 2)
            throw SpecParseError("boundary_power weight: \"exponents\" must be [[a1,g1],[a2,g2]]");
        std::array<std::array<double, 2>, 2> e{};
        for (int row = 0; row < 2; ++row) {
            const auto& r = j.at("exponents")[std::size_t(row)];
            if (!r.is_array() || r.size() != 2)
                throw SpecParseError("boundary_power weight: exponent rows are pairs");
            e[std::size_t(row)] = {r[0].get<double>(), r[1].get<double>()};
        }
        return WeightField::boundary_power(beta, e, j.value("scale", 1.0));
    }
    throw SpecParseError("weight spec: unknown family \"" + family + "\"");
}

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecParseError("cannot open spec file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

AnalyticFunction load_function_file(const std::string& path) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
        std::ifstream in(path);
        if (!in) throw SpecParseError("cannot open spec file: " + path);
        return load_poly_csv(in);
    }
    return parse_function_spec(slurp(path));
}

WeightField load_weight_file(const std::string& path) {
    return parse_weight_spec(slurp(path));
}

// --- JsonWriter ----------------------------------------------------------------

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void JsonWriter::comma() {
    if (!need_comma_.empty() && need_comma_.back() && !pending_key_) out_ << ',';
    if (!need_comma_.empty() && !pending_key_) need_comma_.back() = true;
    pending_key_ = false;
}

JsonWriter& JsonWriter::begin_object() {
    comma();
    out_ << '{';
    need_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    out_ << '}';
    need_comma_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    comma();
    out_ << '[';
    need_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    out_ << ']';
    need_comma_.pop_back();
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
    comma();
    out_ << '"';
    for (char c : k) {
        if (c == '"' || c == '\\') out_ << '\\';
        out_ << c;
    }
    out_ << "\":";
    pending_key_ = true;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    comma();
    if (std::isfinite(v))
        out_ << format_double(v);
    else
        out_ << '"' << format_double(v) << '"';
    return *this;
}

JsonWriter& JsonWriter::value(long long v) {
    comma();
    out_ << v;
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& s) {
    comma();
    out_ << '"';
    for (char c : s) {
        switch (c) {
            case '"': out_ << "\\\""; break;
            case '\\': out_ << "\\\\"; break;
            case '\n': out_ << "\\n"; break;
            case '\t': out_ << "\\t"; break;
            default: out_ << c;
        }
    }
    out_ << '"';
    return *this;
}

JsonWriter& JsonWriter::value(bool b) {
    comma();
    out_ << (b ? "true" : "false");
    return *this;
}

JsonWriter& JsonWriter::raw(const std::string& fragment) {
    comma();
    out_ << fragment;
    return *this;
}

// --- serialization ---------------------------------------------------------------

namespace {

void write_point(JsonWriter& w, const BidiscPoint& z) {
    w.begin_array()
        .value(z.z1.real())
        .value(z.z1.imag())
        .value(z.z2.real())
        .value(z.z2.imag())
        .end_array();
}

void write_map(JsonWriter& w, const std::map<std::string, double>& m) {
    w.begin_object();
    for (const auto& [k, v] : m) {
        w.key(k);
        w.value(v);
    }
    w.end_object();
}

}  // namespace

std::string report_to_json(const CriterionReport& rep) {
    JsonWriter w;
    w.begin_object();
    w.key("theorem_id").value(to_string(rep.theorem_id));
    w.key("verdict").value(to_string(rep.verdict));
    w.key("witness");
    write_map(w, rep.witness);
    w.key("sampling");
    write_map(w, rep.sampling);
    if (!rep.notes.empty()) {
        w.key("notes").begin_object();
        for (const auto& [k, v] : rep.notes) w.key(k).value(v);
        w.end_object();
    }
    if (rep.worst_point) {
        w.key("worst_point");
        write_point(w, *rep.worst_point);
    }
    w.end_object();
    return w.str();
}

std::string lambda_to_json(const LambdaEstimate& est) {
    JsonWriter w;
    w.begin_object();
    w.key("r").begin_array().value(est.r.r1).value(est.r.r2).end_array();
    w.key("lambda1").begin_array().value(est.lambda1[0]).value(est.lambda1[1]).end_array();
    w.key("lambda2").begin_array().value(est.lambda2[0]).value(est.lambda2[1]).end_array();
    w.key("outer_grid").begin_object();
    w.key("n_r").value(est.outer_grid.d1.n_r);
    w.key("n_theta").value(est.outer_grid.d1.n_theta);
    w.key("r_max").value(est.outer_grid.d1.r_max);
    w.end_object();
    w.key("inner_grid").begin_object();
    w.key("n_r").value(est.inner_grid.n_r);
    w.key("n_theta").value(est.inner_grid.n_theta);
    w.end_object();
    w.key("clipped").value(est.clipped);
    w.key("q2_consistent").value(est.q2_consistent);
    if (est.has_delta) {
        w.key("refine_delta1").begin_array().value(est.delta1[0]).value(est.delta1[1]).end_array();
        w.key("refine_delta2").begin_array().value(est.delta2[0]).value(est.delta2[1]).end_array();
    }
    w.end_object();
    return w.str();
}

std::string validation_to_json(const WeightValidation& val) {
    JsonWriter w;
    w.begin_object();
    w.key("admissible_fraction").value(val.admissible_fraction);
    w.key("worst_margin").value(val.worst_margin);
    w.key("worst_point");
    write_point(w, val.worst_point);
    w.key("grid_points").value(val.grid_points);
    w.end_object();
    return w.str();
}

std::string comparability_to_json(const ComparabilityWitness& cw) {
    JsonWriter w;
    w.begin_object();
    const char* v = cw.verdict == Comparability::Comparable      ? "comparable"
                    : cw.verdict == Comparability::NotComparable ? "not_comparable"
                                                                 : "inconclusive";
    w.key("verdict").value(v);
    w.key("theta_low").begin_array().value(cw.theta_low[0]).value(cw.theta_low[1]).end_array();
    w.key("theta_high").begin_array().value(cw.theta_high[0]).value(cw.theta_high[1]).end_array();
    w.key("finest_spread").value(cw.finest_spread);
    w.end_object();
    return w.str();
}

namespace {

void write_local_index(JsonWriter& w, const BidiscPoint& z0, const LocalIndexResult& res) {
    w.begin_object();
    w.key("z0");
    write_point(w, z0);
    const char* status = res.status == IndexStatus::Ok          ? "ok"
                         : res.status == IndexStatus::Unbounded ? "unbounded"
                                                                : "inconclusive";
    w.key("status").value(status);
    if (res.n0)
        w.key("n0").value(*res.n0);
    w.key("cap").value(res.cap);
    w.key("argmax").begin_array().value(res.argmax_index.k1).value(res.argmax_index.k2).end_array();
    w.key("dominating_log").value(res.dominating_value.log_abs);
    w.key("slack").value(res.slack);
    w.key("tail_indicator").value(res.tail_indicator);
    if (!res.reason.empty()) w.key("reason").value(res.reason);
    w.end_object();
}

}  // namespace

std::string local_index_to_json(const BidiscPoint& z0, const LocalIndexResult& res) {
    JsonWriter w;
    write_local_index(w, z0, res);
    return w.str();
}

std::string profile_to_json(const IndexProfile& profile) {
    JsonWriter w;
    w.begin_object();
    w.key("sup_n0").value(profile.sup_n0);
    w.key("total_points").value(profile.total_points);
    w.key("inconclusive").value(profile.inconclusive);
    w.key("unbounded").value(profile.unbounded);
    w.key("levels").begin_array();
    for (const auto& lvl : profile.levels) {
        w.begin_object();
        w.key("max_radius").value(lvl.max_radius);
        w.key("sup_n0").value(lvl.sup_n0);
        w.key("running_sup").value(lvl.running_sup);
        w.key("points").value(lvl.points.size());
        w.key("inconclusive").value(lvl.inconclusive);
        w.key("unbounded").value(lvl.unbounded);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

std::string maximal_term_to_json(const MaximalTermResult& res) {
    JsonWriter w;
    w.begin_object();
    w.key("log_mu").value(res.mu.log_abs);
    w.key("mu").value(res.mu.to_linear());
    w.key("nu_set").begin_array();
    for (const auto& k : res.nu_set)
        w.begin_array().value(k.k1).value(k.k2).end_array();
    w.end_array();
    w.key("nu_norm").value(res.nu_norm);
    w.end_object();
    return w.str();
}

std::string max_modulus_to_json(const MaxModulusResult& res) {
    JsonWriter w;
    w.begin_object();
    w.key("m").value(res.m);
    w.key("log_m").value(res.log_m);
    w.key("argmax");
    write_point(w, res.argmax);
    w.end_object();
    return w.str();
}

std::string main_poly_to_json(const MainPolySearchResult& res) {
    JsonWriter w;
    w.begin_object();
    w.key("m0").value(res.m0);
    w.key("k0").value(res.k0);
    w.key("log_r").value(res.r_log.log_abs);
    w.key("r").value(res.r_log.to_linear());
    w.key("log_c").value(res.c_log.log_abs);
    w.key("c").value(res.c_log.to_linear());
    w.key("d").value(res.d);
    w.key("log_eta").value(res.eta_log.log_abs);
    w.key("within_guarantee").value(res.within_guarantee);
    w.key("scan_note").value(res.scan_note);
    w.key("trace").begin_array();
    for (const auto& s : res.trace) {
        w.begin_object();
        w.key("m").value(s.m);
        w.key("log_r").value(s.log_r);
        w.key("log_mu").value(s.log_mu);
        w.key("s").value(s.s);
        w.key("log_mu_star").value(s.log_mu_star);
        if (s.s_star) w.key("s_star").value(*s.s_star);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

// --- CSV -------------------------------------------------------------------------

void dump_coeff_csv(const CoeffTable& table, std::ostream& os) {
    os << "j1,j2,log_abs,phase\n";
    for (const auto& k : degree_enumerate(table.order)) {
        const auto& e = table.at(k);
        os << k.k1 << ',' << k.k2 << ',' << format_double(e.log_abs) << ','
           << format_double(e.phase.value_or(0.0)) << '\n';
    }
}

AnalyticFunction load_poly_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw SpecParseError("coefficient CSV: empty input");
    std::vector<PolyTerm> terms;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        int j1 = 0, j2 = 0;
        char la[64] = {0}, ph[64] = {0};
        if (std::sscanf(line.c_str(), "%d,%d,%63[^,],%63s", &j1, &j2, la, ph) != 4)
            throw SpecParseError("coefficient CSV: bad row: " + line);
        double log_abs = std::strtod(la, nullptr);
        double phase = std::strtod(ph, nullptr);
        if (log_abs == kNegInf) continue;
        terms.push_back({{j1, j2}, std::polar(std::exp(log_abs), phase)});
    }
    return AnalyticFunction::poly(std::move(terms), "csv");
}

std::string coeff_table_to_poly_json(const CoeffTable& table) {
    JsonWriter w;
    w.begin_object();
    w.key("family").value("poly");
    w.key("center");
    write_point(w, table.center);
    w.key("coeffs").begin_array();
    for (const auto& k : degree_enumerate(table.order)) {
        Complex c = table.coeff(k);
        if (c == Complex{0.0, 0.0}) continue;
        w.begin_array().value(k.k1).value(k.k2).value(c.real()).value(c.imag()).end_array();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

void dump_profile_csv(const IndexProfile& profile, std::ostream& os) {
    os << "re(z1),im(z1),re(z2),im(z2),n0,argmax_j1,argmax_j2,slack\n";
    for (const auto& lvl : profile.levels) {
        for (const auto& p : lvl.points) {
            int n0 = p.res.status == IndexStatus::Ok          ? *p.res.n0
                     : p.res.status == IndexStatus::Unbounded ? -1
                                                              : -2;
            os << format_double(p.z.z1.real()) << ',' << format_double(p.z.z1.imag()) << ','
               << format_double(p.z.z2.real()) << ',' << format_double(p.z.z2.imag()) << ','
               << n0 << ',' << p.res.argmax_index.k1 << ',' << p.res.argmax_index.k2 << ','
               << format_double(p.res.slack) << '\n';
        }
    }
}

}  // namespace bindex
