#pragma once

#include <cstdio>
#include <string>
#include <vector>

namespace hatnet {

// One verification result.  `value` is the measured quantity, `bound` the
// limit it was checked against (NaN when the row is informational only).
struct ReportRow {
    std::string suite;
    std::string item;
    std::string fn;
    long n = 0;
    long k = 0;
    long m = 0;
    long r = 0;
    bool half = false;
    std::string metric;
    double value = 0.0;
    double bound = 0.0;
    bool mandatory = true;
    bool pass = true;
    double wall_ms = 0.0;
};

inline std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string csv_header() {
    return "suite,item,fn,n,k,m,r,half,metric,value,bound,mandatory,pass,wall_ms";
}

inline std::string to_csv(const ReportRow& row) {
    std::string s;
    s += row.suite + "," + row.item + "," + row.fn + ",";
    s += std::to_string(row.n) + "," + std::to_string(row.k) + ",";
    s += std::to_string(row.m) + "," + std::to_string(row.r) + ",";
    s += (row.half ? "1," : "0,");
    s += row.metric + "," + format_full(row.value) + "," + format_full(row.bound) + ",";
    s += (row.mandatory ? "1," : "0,");
    s += (row.pass ? "1," : "0,");
    s += format_full(row.wall_ms);
    return s;
}

// A mandatory row that fails makes the whole report fail.
inline bool all_mandatory_pass(const std::vector<ReportRow>& rows) {
    for (const ReportRow& r : rows)
        if (r.mandatory && !r.pass) return false;
    return true;
}

} // namespace hatnet
