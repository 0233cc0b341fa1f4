#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skl/checks.hpp"

#include <algorithm>

#include <json.hpp>

using namespace skl;

static const Workspace& shared_ws() {
    static Workspace ws = [] {
        DeriveOptions opt;
        opt.params = {{1, 2, 3}};
        return Workspace(opt);
    }();
    return ws;
}

TEST_CASE("blowup series dimension formula") {
    // e = 0 reproduces the free Hilbert function of tripled degrees
    for (int n = 0; n <= 4; ++n)
        CHECK(blowup_series_dim(0, n) == (3 * n + 2) * (3 * n + 1) / 2);
    CHECK(blowup_series_dim(1, 1) == 9);
    CHECK(blowup_series_dim(1, 2) == 25);
    CHECK(blowup_series_dim(1, 3) == 49);
    CHECK(blowup_series_dim(2, 3) == 43);
    CHECK(blowup_series_dim(7, 1) == 3);
}

TEST_CASE("full suite passes on a generic workspace") {
    auto reports = run_suite(shared_ws(), "all");
    auto names = check_names();
    REQUIRE(reports.size() == names.size());
    REQUIRE(names.size() == 12);
    for (std::size_t i = 0; i < reports.size(); ++i) {
        CAPTURE(reports[i].check);
        CHECK(reports[i].check == names[i]);
        CHECK(reports[i].pass);
        CHECK_FALSE(reports[i].anchor.empty());
        CHECK_FALSE(reports[i].params.empty());
        for (const auto& row : reports[i].rows) {
            CAPTURE(row.name);
            CHECK(row.expected == row.got);
        }
        // cap 9 reaches everything except the three rows needing degree 12
        for (const auto& s : reports[i].skipped_rows) CHECK(s.needed_cap == 12);
    }
    std::size_t skips = 0;
    for (const auto& rep : reports) skips += rep.skipped_rows.size();
    CHECK(skips == 3);
    CHECK(all_pass(reports));
}

TEST_CASE("frozen rows appear with the pinned values") {
    auto find_row = [](const CheckReport& rep, const std::string& name) {
        for (const auto& row : rep.rows)
            if (row.name == name) return row;
        FAIL(("missing row " + name + " in " + rep.check));
        return ReportRow{};
    };
    CheckReport blowup = run_check(shared_ws(), "blowup_hilbert");
    CHECK(find_row(blowup, "e=1 dim R_2").expected == 25);
    CHECK(find_row(blowup, "e=1 dim R_2").got == 25);
    CHECK(find_row(blowup, "e=7 dim R_3").expected == 13);

    CheckReport central = run_check(shared_ws(), "central_membership");
    CHECK(find_row(central, "dim W(p) W(q) S_1").got == 8);
    CHECK(find_row(central, "g in W(p) W(s^-2 p) S_1").got == 0);

    CheckReport lines = run_check(shared_ws(), "exceptional_line");
    CHECK(find_row(lines, "dim (R/J)_2").expected == 3);
    CHECK(find_row(lines, "dim (R/J)_2").got == 3);
}

TEST_CASE("a lowered cap skips deep rows instead of failing") {
    DeriveOptions opt;
    opt.params = {{1, 2, 3}};
    opt.cap = 6;
    Workspace ws(opt);
    auto reports = run_suite(ws, "all");
    CHECK(all_pass(reports));
    std::size_t skips = 0;
    for (const auto& rep : reports) skips += rep.skipped_rows.size();
    CHECK(skips > 0);
    for (const auto& rep : reports)
        for (const auto& s : rep.skipped_rows) CHECK(s.needed_cap > 6);
}

TEST_CASE("fault injection yields a failing derive report") {
    DeriveOptions opt;
    opt.params = {{1, 2, 3}};
    PrimeField f(opt.prime);
    Presentation broken = Presentation(f, 1, 2, 3).perturbed(0, 0, f.one());
    auto reports = run_suite(opt, broken, "all");
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].check == "derive");
    CHECK_FALSE(reports[0].pass);
    CHECK_FALSE(all_pass(reports));
}

TEST_CASE("suite output is deterministic for a fixed seed") {
    DeriveOptions opt; // random params, seed 1
    opt.cap = 6;
    auto r1 = run_suite(opt, "all");
    auto r2 = run_suite(opt, "all");
    // CSV carries rows and statuses but no timings
    CHECK(reports_to_csv(r1) == reports_to_csv(r2));
    CHECK(all_pass(r1));
}

TEST_CASE("name filters") {
    auto one = run_suite(shared_ws(), "geometry");
    REQUIRE(one.size() == 1);
    CHECK(one[0].check == "geometry");

    auto two = run_suite(shared_ws(), "point_syzygy,central_membership");
    REQUIRE(two.size() == 2);

    // substring match hits every point_* check exactly once
    auto sub = run_suite(shared_ws(), "point_");
    CHECK(sub.size() == 3);

    CHECK_THROWS_AS(run_suite(shared_ws(), "nosuchcheck"), UsageError);
    CHECK_THROWS_AS(run_check(shared_ws(), "nosuchcheck"), UsageError);
}

TEST_CASE("report serialization") {
    auto reports = run_suite(shared_ws(), "geometry,blowup_hilbert");
    std::string md = reports_to_markdown(reports);
    CHECK(md.find("# verification report") != std::string::npos);
    CHECK(md.find("geometry") != std::string::npos);
    CHECK(md.find("blowup_hilbert") != std::string::npos);

    nlohmann::json parsed = nlohmann::json::parse(reports_to_json(reports));
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0]["check"] == "geometry");
    CHECK(parsed[0]["pass"] == true);
    CHECK(parsed[0]["rows"].is_array());
    CHECK(parsed[1]["rows"].size() == reports[1].rows.size());

    std::string csv = reports_to_csv(reports);
    std::size_t lines = static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
    CHECK(lines == 1 + reports[0].rows.size() + reports[1].rows.size());
}

TEST_CASE("report bookkeeping helpers") {
    CheckReport rep;
    rep.add("matches", 3, 3);
    CHECK(rep.pass);
    rep.observed("incidental quantity", 42);
    CHECK(rep.pass);
    CHECK(rep.rows.back().name == "observed incidental quantity");
    rep.add("mismatch", 3, 4);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.skipped());
    CheckReport empty;
    empty.skipped_rows.push_back({"deep row", 12});
    CHECK(empty.skipped());
}
