#pragma once
// Deterministic serialization of reports: JSON objects with fixed key order
// and %.17g number formatting (bit-faithful round trips), plus CSV rows for
// sweep outputs.

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "explicit_formula.hpp"
#include "spectral.hpp"

namespace weil {

inline constexpr int schema_version = 1;

namespace detail {

inline std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace detail

// Ordered key/value assembler for flat JSON objects.
class JsonObject {
public:
    JsonObject& field(const std::string& k, double v) {
        return raw(k, detail::fmt_double(v));
    }
    JsonObject& field(const std::string& k, int v) {
        return raw(k, std::to_string(v));
    }
    JsonObject& field(const std::string& k, const std::string& v) {
        return raw(k, "\"" + detail::json_escape(v) + "\"");
    }
    JsonObject& field(const std::string& k, bool v) {
        return raw(k, v ? "true" : "false");
    }
    JsonObject& raw(const std::string& k, const std::string& v) {
        items_.emplace_back(k, v);
        return *this;
    }
    std::string str() const {
        std::ostringstream os;
        os << "{";
        for (std::size_t i = 0; i < items_.size(); ++i) {
            if (i) os << ",";
            os << "\"" << detail::json_escape(items_[i].first)
               << "\":" << items_[i].second;
        }
        os << "}";
        return os.str();
    }

private:
    std::vector<std::pair<std::string, std::string>> items_;
};

inline std::string report_to_json(const ExplicitFormulaReport& r) {
    JsonObject o;
    o.field("schema_version", schema_version)
        .field("variant", std::string(variant_name(r.variant)))
        .field("g_label", r.g_label)
        .field("lfunction", r.chi_id)
        .field("zero_sum_side", r.zero_sum_side)
        .field("zero_sum_tail", r.zero_sum_tail)
        .field("pole_term", r.pole_term)
        .field("prime_sum", r.prime_sum)
        .field("conductor_term", r.conductor_term)
        .field("archimedean_term", r.archimedean_term)
        .field("rhs_total", r.rhs_total)
        .field("residual", r.residual);
    return o.str();
}

inline std::string report_csv_header() {
    return "variant,g_label,lfunction,zero_sum_side,zero_sum_tail,pole_term,"
           "prime_sum,conductor_term,archimedean_term,rhs_total,residual";
}

inline std::string report_to_csv(const ExplicitFormulaReport& r) {
    std::ostringstream os;
    os << variant_name(r.variant) << ',' << detail::csv_escape(r.g_label)
       << ',' << detail::csv_escape(r.chi_id) << ','
       << detail::fmt_double(r.zero_sum_side) << ','
       << detail::fmt_double(r.zero_sum_tail) << ','
       << detail::fmt_double(r.pole_term) << ','
       << detail::fmt_double(r.prime_sum) << ','
       << detail::fmt_double(r.conductor_term) << ','
       << detail::fmt_double(r.archimedean_term) << ','
       << detail::fmt_double(r.rhs_total) << ','
       << detail::fmt_double(r.residual);
    return os.str();
}

struct SweepRow {
    double parameter = 0.0;     // T or support half-width
    double bound = 0.0;         // lower bound or min functional value
    double zero_sum = 0.0;
    double slack = 0.0;
    std::string detail;
};

inline std::string sweep_csv_header(const std::string& param_name) {
    return param_name + ",bound,zero_sum,slack,detail";
}

inline std::string sweep_row_to_csv(const SweepRow& r) {
    std::ostringstream os;
    os << detail::fmt_double(r.parameter) << ',' << detail::fmt_double(r.bound)
       << ',' << detail::fmt_double(r.zero_sum) << ','
       << detail::fmt_double(r.slack) << ',' << detail::csv_escape(r.detail);
    return os.str();
}

} // namespace weil
