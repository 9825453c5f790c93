#pragma once

#include <iosfwd>
#include <sstream>

#include "bindex/criteria.hpp"

// Spec-file parsing (function and weight JSON), report serialization and the
// CSV table formats.  All floating-point output uses 17 significant digits
// so dumps round-trip bit-exactly; emission order is fixed, so identical
// inputs produce byte-identical reports.

namespace bindex {

AnalyticFunction parse_function_spec(const std::string& json_text);
WeightField parse_weight_spec(const std::string& json_text);
AnalyticFunction load_function_file(const std::string& path);
WeightField load_weight_file(const std::string& path);

// --- minimal deterministic JSON writer ---------------------------------------

class JsonWriter {
public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);           // %.17g; non-finite as strings
    JsonWriter& value(long long v);
    JsonWriter& value(int v) { return value((long long)v); }
    JsonWriter& value(std::size_t v) { return value((long long)v); }
    JsonWriter& value(const std::string& s);
    JsonWriter& value(const char* s) { return value(std::string(s)); }
    JsonWriter& value(bool b);
    JsonWriter& raw(const std::string& fragment);

    std::string str() const { return out_.str(); }

private:
    void comma();
    std::ostringstream out_;
    std::vector<bool> need_comma_;
    bool pending_key_ = false;
};

std::string format_double(double v);  // %.17g

// --- serialization ------------------------------------------------------------

std::string report_to_json(const CriterionReport& rep);
std::string lambda_to_json(const LambdaEstimate& est);
std::string validation_to_json(const WeightValidation& val);
std::string comparability_to_json(const ComparabilityWitness& w);
std::string local_index_to_json(const BidiscPoint& z0, const LocalIndexResult& res);
std::string profile_to_json(const IndexProfile& profile);
std::string maximal_term_to_json(const MaximalTermResult& res);
std::string max_modulus_to_json(const MaxModulusResult& res);
std::string main_poly_to_json(const MainPolySearchResult& res);

// coefficient tables: CSV columns j1, j2, log_abs, phase
void dump_coeff_csv(const CoeffTable& table, std::ostream& os);
// a dumped table re-ingested as a polynomial (coefficients read at the origin)
AnalyticFunction load_poly_csv(std::istream& is);

// function spec JSON for a table (poly family, re/im pairs)
std::string coeff_table_to_poly_json(const CoeffTable& table);

// profile CSV: re(z1), im(z1), re(z2), im(z2), n0, argmax_j1, argmax_j2, slack
// (n0 = -1 for unbounded, -2 for inconclusive rows)
void dump_profile_csv(const IndexProfile& profile, std::ostream& os);

}  // namespace bindex
