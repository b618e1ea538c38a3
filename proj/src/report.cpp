#include "triadne/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace triadne {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Check& VerificationReport::add(std::string label, double lhs, double rhs, double tol, bool pass, bool hard) {
    checks.push_back({std::move(label), lhs, rhs, tol, pass, hard, anchor});
    return checks.back();
}

Check& VerificationReport::add_le(std::string label, double lhs, double rhs, double tol, bool hard) {
    bool ok = std::isfinite(lhs) && std::isfinite(rhs) && lhs <= rhs + tol;
    return add(std::move(label), lhs, rhs, tol, ok, hard);
}

Check& VerificationReport::add_close(std::string label, double lhs, double rhs, double rel_tol, bool hard) {
    double scale = std::max(1.0, std::abs(rhs));
    bool ok = std::isfinite(lhs) && std::abs(lhs - rhs) <= rel_tol * scale;
    return add(std::move(label), lhs, rhs, rel_tol, ok, hard);
}

bool VerificationReport::passed() const {
    for (const auto& c : checks)
        if (c.hard && !c.pass) return false;
    return true;
}

static json num(double v) {
    if (std::isfinite(v)) return v;
    return std::isnan(v) ? json("nan") : json(v > 0 ? "inf" : "-inf");
}

json VerificationReport::to_json() const {
    json j;
    j["schema"] = schema_tag;
    j["name"] = name;
    j["anchor"] = anchor;
    j["inputs"] = inputs;
    j["pass"] = passed();
    json cs = json::array();
    for (const auto& c : checks)
        cs.push_back({{"label", c.label},
                      {"lhs", num(c.lhs)},
                      {"rhs", num(c.rhs)},
                      {"tolerance", num(c.tolerance)},
                      {"pass", c.pass},
                      {"hard", c.hard},
                      {"anchor", c.anchor}});
    j["checks"] = cs;
    if (!data.empty()) j["data"] = data;
    if (!notes.empty()) j["notes"] = notes;
    return j;
}

static std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string o = "\"";
    for (char ch : s) {
        if (ch == '"') o += '"';
        o += ch;
    }
    return o + "\"";
}

std::string VerificationReport::to_csv() const {
    CsvTable t({"report", "label", "lhs", "rhs", "tolerance", "pass", "hard"});
    for (const auto& c : checks)
        t.row({name, c.label, fmt_double(c.lhs), fmt_double(c.rhs), fmt_double(c.tolerance), c.pass ? "1" : "0",
               c.hard ? "1" : "0"});
    return t.str();
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::row(const std::vector<std::string>& cells) { rows_.push_back(cells); }

std::string CsvTable::str() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& r) {
        for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_escape(r[i]);
        os << '\n';
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return os.str();
}

}  // namespace triadne
