#include "skl/report.hpp"

#include <json.hpp>

#include <sstream>

namespace skl {

using nlohmann::json;

static json report_to_json(const CheckReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"name", row.name}, {"expected", row.expected}, {"got", row.got}});
    json skipped = json::array();
    for (const auto& s : r.skipped_rows)
        skipped.push_back({{"name", s.name}, {"needed_cap", s.needed_cap}});
    json j = {
        {"check", r.check}, {"anchor", r.anchor},   {"params", r.params},
        {"rows", rows},     {"skipped", skipped},    {"pass", r.pass},
        {"ms", r.ms},
    };
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

std::string reports_to_json(const std::vector<CheckReport>& reports, bool pretty) {
    json arr = json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    return pretty ? arr.dump(2) + "\n" : arr.dump() + "\n";
}

std::string reports_to_markdown(const std::vector<CheckReport>& reports) {
    std::ostringstream os;
    int failed = 0, skipped = 0;
    for (const auto& r : reports) {
        if (!r.pass) ++failed;
        if (r.skipped()) ++skipped;
    }
    os << "# verification report\n\n";
    os << reports.size() << " checks, " << failed << " failed, " << skipped
       << " skipped entirely\n";
    for (const auto& r : reports) {
        os << "\n## " << r.check << " : "
           << (r.skipped() ? "SKIP" : (r.pass ? "pass" : "FAIL")) << " (" << r.ms << " ms)\n\n";
        os << r.anchor << "\n\n";
        os << "params: `" << r.params << "`\n\n";
        if (!r.rows.empty()) {
            os << "| quantity | expected | got | ok |\n|---|---|---|---|\n";
            for (const auto& row : r.rows)
                os << "| " << row.name << " | " << row.expected << " | " << row.got << " | "
                   << (row.expected == row.got ? "yes" : "NO") << " |\n";
        }
        if (!r.skipped_rows.empty()) {
            os << "\nskipped (degree cap too low):\n";
            for (const auto& s : r.skipped_rows)
                os << "- " << s.name << " (needs cap " << s.needed_cap << ")\n";
        }
        if (!r.note.empty()) os << "\nnote: " << r.note << "\n";
    }
    return os.str();
}

static std::string csv_quote(const std::string& s) {
    bool need = s.find_first_of(",\"\n") != std::string::npos;
    if (!need) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
    std::ostringstream os;
    os << "check,row,expected,got,status\n";
    for (const auto& r : reports) {
        for (const auto& row : r.rows)
            os << csv_quote(r.check) << ',' << csv_quote(row.name) << ',' << row.expected << ','
               << row.got << ',' << (row.expected == row.got ? "ok" : "fail") << '\n';
        for (const auto& s : r.skipped_rows)
            os << csv_quote(r.check) << ',' << csv_quote(s.name) << ",," << ',' << "skipped\n";
    }
    return os.str();
}

} // namespace skl
