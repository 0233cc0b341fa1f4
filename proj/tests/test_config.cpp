#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "skl/config.hpp"

#include <cstdio>
#include <fstream>

using namespace skl;

static std::string write_temp(const std::string& name, const std::string& body) {
    std::string path = "./" + name;
    std::ofstream out(path);
    out << body;
    return path;
}

TEST_CASE("divisor grammar round trips") {
    auto empty = parse_divisor_spec("");
    CHECK(empty.empty());
    auto blank = parse_divisor_spec("   ");
    CHECK(blank.empty());

    auto one = parse_divisor_spec("base:0,offset:5,sigma:-2");
    REQUIRE(one.size() == 1);
    CHECK_FALSE(one[0].orbit_ref);
    CHECK(one[0].base == 0);
    CHECK(one[0].offset == 5);
    CHECK(one[0].sigma == -2);

    auto two = parse_divisor_spec(" base:3 , offset:7 ; orbit-of:0 , sigma:-3 ");
    REQUIRE(two.size() == 2);
    CHECK(two[0].base == 3);
    CHECK(two[0].sigma == 0);
    CHECK(two[1].orbit_ref);
    CHECK(two[1].base == 0); // entry index for orbit references
    CHECK(two[1].sigma == -3);

    auto defaults = parse_divisor_spec("base:8");
    REQUIRE(defaults.size() == 1);
    CHECK(defaults[0].offset == 0);
    CHECK(defaults[0].sigma == 0);
}

TEST_CASE("divisor grammar rejections") {
    CHECK_THROWS_AS(parse_divisor_spec("base:0,color:red"), UsageError);
    CHECK_THROWS_AS(parse_divisor_spec("offset:3"), UsageError);       // no base
    CHECK_THROWS_AS(parse_divisor_spec("base:9"), UsageError);         // inflection range
    CHECK_THROWS_AS(parse_divisor_spec("base:-1"), UsageError);
    CHECK_THROWS_AS(parse_divisor_spec("base:two"), UsageError);
    CHECK_THROWS_AS(parse_divisor_spec("orbit-of:0"), UsageError);     // no earlier entry
    CHECK_THROWS_AS(parse_divisor_spec("base:0;orbit-of:1"), UsageError);
    CHECK_THROWS_AS(parse_divisor_spec("base:0;orbit-of:0,offset:2"), UsageError);
    CHECK_THROWS_AS(parse_divisor_spec("base:0,nonsense"), UsageError); // field without ':'
}

TEST_CASE("divisor materialization matches manual group arithmetic") {
    PrimeField f(1000003);
    Presentation pres(f, 1, 2, 3);
    Rng rng(41);
    CurveContext ctx(pres, 200, rng);

    auto spec = parse_divisor_spec("base:1,offset:4,sigma:-2;orbit-of:0,sigma:-3");
    Divisor d = materialize_divisor(ctx, spec);
    REQUIRE(d.entries.size() == 2);
    ProjPoint want0 = ctx.sigma(
        ctx.add(ctx.inflections()[1], ctx.mul_int(4, ctx.translation())), -2);
    CHECK(d.entries[0].first == want0);
    CHECK(d.entries[0].second == 1);
    CHECK(d.entries[1].first == ctx.sigma(want0, -3));

    Divisor empty = materialize_divisor(ctx, {});
    CHECK(empty.degree() == 0);
}

TEST_CASE("config values apply by key") {
    Config cfg;
    apply_config_value(cfg, "prime", "1000033");
    CHECK(cfg.prime == 1000033);
    apply_config_value(cfg, "params", "1,2,3");
    REQUIRE(cfg.params.has_value());
    CHECK((*cfg.params)[2] == 3);
    apply_config_value(cfg, "params", "random");
    CHECK_FALSE(cfg.params.has_value());
    apply_config_value(cfg, "seed", "99");
    CHECK(cfg.seed == 99);
    apply_config_value(cfg, "cap", "12");
    CHECK(cfg.cap == 12);
    apply_config_value(cfg, "order-threshold", "500");
    CHECK(cfg.order_threshold == 500);
    apply_config_value(cfg, "order_threshold", "300");
    CHECK(cfg.order_threshold == 300);
    apply_config_value(cfg, "retries", "4");
    CHECK(cfg.retries == 4);
    apply_config_value(cfg, "suite", "geometry");
    CHECK(cfg.suite == "geometry");
    apply_config_value(cfg, "divisor", "base:0");
    CHECK(cfg.divisor == "base:0");
    apply_config_value(cfg, "nmax", "2");
    CHECK(cfg.nmax == 2);
    apply_config_value(cfg, "format", "json");
    CHECK(cfg.format == "json");
    apply_config_value(cfg, "out", "report.md");
    CHECK(cfg.out == "report.md");

    CHECK_THROWS_AS(apply_config_value(cfg, "colour", "blue"), UsageError);
    CHECK_THROWS_AS(apply_config_value(cfg, "params", "1,2"), UsageError);
    CHECK_THROWS_AS(apply_config_value(cfg, "params", "a,b,c"), UsageError);
    CHECK_THROWS_AS(apply_config_value(cfg, "seed", "notanumber"), UsageError);
    CHECK_THROWS_AS(apply_config_value(cfg, "nmax", "0"), UsageError);
    CHECK_THROWS_AS(apply_config_value(cfg, "nmax", "5"), UsageError);
}

TEST_CASE("key=value config files") {
    std::string path = write_temp("cfg_kv.txt",
                                  "# comment line\n"
                                  "prime = 1000033\n"
                                  "params = 1,2,3\n"
                                  "\n"
                                  "cap=6\n"
                                  "suite = geometry\n");
    Config cfg = load_config_file(path);
    CHECK(cfg.prime == 1000033);
    REQUIRE(cfg.params.has_value());
    CHECK(cfg.cap == 6);
    CHECK(cfg.suite == "geometry");
    std::remove(path.c_str());

    std::string bad = write_temp("cfg_bad.txt", "prime\n");
    CHECK_THROWS_AS(load_config_file(bad), UsageError);
    std::remove(bad.c_str());

    CHECK_THROWS_AS(load_config_file("./no_such_config_file.txt"), UsageError);
}

TEST_CASE("json config files") {
    std::string path = write_temp("cfg.json",
                                  "{\"prime\": 1000033, \"params\": [1, 2, 3],\n"
                                  " \"cap\": 7, \"suite\": \"geometry\", \"seed\": 12}");
    Config cfg = load_config_file(path);
    CHECK(cfg.prime == 1000033);
    REQUIRE(cfg.params.has_value());
    CHECK((*cfg.params)[1] == 2);
    CHECK(cfg.cap == 7);
    CHECK(cfg.seed == 12);
    std::remove(path.c_str());

    std::string strs = write_temp("cfg_str.json",
                                  "{\"params\": \"random\", \"format\": \"csv\"}");
    Config c2 = load_config_file(strs);
    CHECK_FALSE(c2.params.has_value());
    CHECK(c2.format == "csv");
    std::remove(strs.c_str());

    std::string bad = write_temp("cfg_bad.json", "{\"prime\": ");
    CHECK_THROWS_AS(load_config_file(bad), UsageError);
    std::remove(bad.c_str());

    std::string unknown = write_temp("cfg_unknown.json", "{\"colour\": 3}");
    CHECK_THROWS_AS(load_config_file(unknown), UsageError);
    std::remove(unknown.c_str());
}

TEST_CASE("config validation") {
    Config cfg;
    CHECK_NOTHROW(validate_config(cfg));

    Config low = cfg;
    low.cap = 3; // the centrality certificate needs one degree of headroom
    CHECK_THROWS_AS(validate_config(low), UsageError);
    Config high = cfg;
    high.cap = 13;
    CHECK_THROWS_AS(validate_config(high), UsageError);
    Config thr = cfg;
    thr.order_threshold = 0;
    CHECK_THROWS_AS(validate_config(thr), UsageError);
    Config fmt = cfg;
    fmt.format = "xml";
    CHECK_THROWS_AS(validate_config(fmt), UsageError);
    Config zero = cfg;
    zero.params = {{0, 1, 1}};
    CHECK_THROWS_AS(validate_config(zero), UsageError);
    Config composite = cfg;
    composite.prime = 1000004;
    CHECK_THROWS_AS(validate_config(composite), UsageError);
}

TEST_CASE("derive options inherit the config") {
    Config cfg;
    cfg.prime = 1000033;
    cfg.params = {{1000034, 2, 3}}; // reduced mod p on the way out
    cfg.seed = 7;
    cfg.cap = 11;
    cfg.order_threshold = 90;
    cfg.retries = 5;
    DeriveOptions opt = derive_options(cfg);
    CHECK(opt.prime == 1000033);
    REQUIRE(opt.params.has_value());
    CHECK((*opt.params)[0] == 1);
    CHECK(opt.seed == 7);
    CHECK(opt.cap == 11);
    CHECK(opt.order_threshold == 90);
    CHECK(opt.retries == 5);
}
