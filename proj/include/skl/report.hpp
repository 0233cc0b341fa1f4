#pragma once

#include <string>
#include <vector>

namespace skl {

struct ReportRow {
    std::string name;
    long long expected = 0;
    long long got = 0;
};

// A row whose degree requirement exceeds the configured cap; distinct from a
// failure.
struct SkippedRow {
    std::string name;
    int needed_cap = 0;
};

struct CheckReport {
    std::string check;
    std::string anchor; // what the claim says, in mathematical terms
    std::string params;
    std::vector<ReportRow> rows;
    std::vector<SkippedRow> skipped_rows;
    bool pass = true;
    long long ms = 0;
    std::string note;

    void add(const std::string& name, long long expected, long long got) {
        rows.push_back({name, expected, got});
        if (expected != got) pass = false;
    }
    // measured quantity with no asserted value; "observed" rows are excluded
    // from cross-configuration comparisons
    void observed(const std::string& name, long long value) {
        rows.push_back({"observed " + name, value, value});
    }
    bool skipped() const { return rows.empty() && !skipped_rows.empty(); }
};

std::string reports_to_json(const std::vector<CheckReport>& reports, bool pretty = true);
std::string reports_to_markdown(const std::vector<CheckReport>& reports);
std::string reports_to_csv(const std::vector<CheckReport>& reports);

} // namespace skl
