#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace triadne {

using json = nlohmann::ordered_json;

inline constexpr const char* schema_tag = "triadne/1";

struct Check {
    std::string label;
    double lhs = 0;
    double rhs = 0;
    double tolerance = 0;
    bool pass = true;
    bool hard = true;  // report-only checks never fail a run
    std::string anchor;
};

struct VerificationReport {
    std::string name;
    std::string anchor;  // quoted statement the checks trace back to
    json inputs = json::object();
    std::vector<Check> checks;
    json data = json::object();
    std::vector<std::string> notes;

    Check& add(std::string label, double lhs, double rhs, double tol, bool pass, bool hard = true);
    // lhs <= rhs + tol
    Check& add_le(std::string label, double lhs, double rhs, double tol = 0, bool hard = true);
    // |lhs - rhs| <= tol * max(1, |rhs|)
    Check& add_close(std::string label, double lhs, double rhs, double rel_tol, bool hard = true);
    bool passed() const;
    json to_json() const;
    std::string to_csv() const;
};

// CSV writer with a mandatory header row
class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header);
    void row(const std::vector<std::string>& cells);
    std::string str() const;
    size_t rows() const { return rows_.size(); }

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

std::string fmt_double(double v);

}  // namespace triadne
