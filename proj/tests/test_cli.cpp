#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// shells out to the binary named by SKL_CLI (set by the test harness)

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string cli_path() {
    const char* p = std::getenv("SKL_CLI");
    REQUIRE_MESSAGE(p != nullptr, "SKL_CLI must point at the command line binary");
    return p;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    std::string cmd = cli_path() + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp("cli_stdout.txt");
    r.err = slurp("cli_stderr.txt");
    return r;
}

} // namespace

TEST_CASE("help and subcommand requirements") {
    CHECK(run("--help").code == 0);
    CHECK(run("derive --help").code == 0);
    RunResult none = run("");
    CHECK(none.code == 2); // a subcommand is required
    CHECK(run("explode").code == 2);
    CHECK(run("derive --bogus-flag 1").code == 2);
}

TEST_CASE("derive emits a deterministic artifact") {
    RunResult r1 = run("derive --params 1,2,3 --seed 3 --out derive_a.json");
    REQUIRE(r1.code == 0);
    RunResult r2 = run("derive --params 1,2,3 --seed 3 --out derive_b.json");
    REQUIRE(r2.code == 0);
    std::string a = slurp("derive_a.json");
    CHECK(a == slurp("derive_b.json"));

    nlohmann::json j = nlohmann::json::parse(a);
    CHECK(j["config"]["prime"] == 1000003);
    CHECK(j["config"]["params_mode"] == "fixed");
    CHECK(j["retries_used"] == 0);
    // lambda = -(a^3+b^3+c^3)/abc = -6 for (1,2,3)
    CHECK(j["hesse_lambda"] == 999997);
    CHECK(j["cubic"]["x^3"] == 1);
    CHECK(j["cubic"]["xyz"] == 999997);
    CHECK(j["basepoint"] == nlohmann::json({1, 1000002, 0}));
    CHECK(j["order_exceeds"] == 200);
    CHECK(j["central_element"].size() >= 2);

    // omitting --out prints the same artifact
    RunResult r3 = run("derive --params 1,2,3 --seed 3");
    CHECK(r3.code == 0);
    CHECK(r3.out == a);
}

TEST_CASE("verify runs a filtered suite") {
    RunResult md = run("verify --params 1,2,3 --suite geometry");
    CHECK(md.code == 0);
    CHECK(md.out.find("## geometry : pass") != std::string::npos);

    RunResult js = run("verify --params 1,2,3 --suite geometry,point_syzygy --format json");
    CHECK(js.code == 0);
    nlohmann::json parsed = nlohmann::json::parse(js.out);
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0]["check"] == "geometry");
    CHECK(parsed[0]["pass"] == true);
    CHECK(parsed[1]["check"] == "point_syzygy");

    RunResult out = run("verify --params 1,2,3 --suite geometry --out vr");
    CHECK(out.code == 0);
    CHECK(out.out.find("1 checks, 0 failed") != std::string::npos);
    CHECK(slurp("vr.md").find("# verification report") != std::string::npos);
    CHECK_FALSE(slurp("vr.json").empty());

    CHECK(run("verify --params 1,2,3 --suite nosuchcheck").code == 2);
}

TEST_CASE("hilbert prints a dimension table") {
    RunResult md = run("hilbert --params 1,2,3 --divisor base:0 --nmax 2");
    CHECK(md.code == 0);
    CHECK(md.out.find("| 1 | 9 | 8 | 9 | yes |") != std::string::npos);
    CHECK(md.out.find("| 2 | 25 | 16 | 25 | yes |") != std::string::npos);

    RunResult csv = run("hilbert --params 1,2,3 --divisor \"base:0;base:1\" --nmax 2 "
                        "--format csv");
    CHECK(csv.code == 0);
    CHECK(csv.out.find("n,dim,mod_g,predicted,match") != std::string::npos);
    CHECK(csv.out.find("1,8,7,8,yes") != std::string::npos);
    CHECK(csv.out.find("2,22,14,22,yes") != std::string::npos);

    RunResult js = run("hilbert --params 1,2,3 --nmax 1 --format json");
    CHECK(js.code == 0);
    nlohmann::json parsed = nlohmann::json::parse(js.out);
    CHECK(parsed["degree"] == 0);
    CHECK(parsed["rows"][0]["dim"] == 10);
    CHECK(parsed["rows"][0]["match"] == true);

    CHECK(run("hilbert --params 1,2,3 --divisor base:9").code == 2);
    // eight distinct points exceed the supported divisor degree
    CHECK(run("hilbert --params 1,2,3 --divisor "
              "\"base:0;base:1;base:2;base:3;base:4;base:5;base:6;base:7\"")
              .code == 2);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run("derive --prime 1000004").code == 2);
    CHECK(run("derive --cap 13").code == 2);
    CHECK(run("derive --params 0,1,1").code == 2);
    CHECK(run("verify --config no_such_file.cfg").code == 2);
    CHECK(run("verify --params 1,2,3 --format xml").code == 2);
    CHECK(run("hilbert --params 1,2,3 --nmax 4").code == 2); // needs cap 12
}

TEST_CASE("degeneracy exhaustion exits with code 3") {
    // seed 1 samples triples whose translation order sits far below this
    // threshold, so both attempts are rejected
    RunResult r = run("derive --order-threshold 900000 --retries 1 --cap 4");
    CHECK(r.code == 3);
    CHECK(r.err.find("degeneracy") != std::string::npos);
}

TEST_CASE("config files feed the commands and flags win") {
    {
        std::ofstream f("cli_cfg.txt");
        f << "params = 1,2,3\nsuite = geometry\nformat = md\n";
    }
    RunResult file_only = run("verify --config cli_cfg.txt");
    CHECK(file_only.code == 0);
    CHECK(file_only.out.find("## geometry : pass") != std::string::npos);

    RunResult overridden = run("verify --config cli_cfg.txt --suite central_membership");
    CHECK(overridden.code == 0);
    CHECK(overridden.out.find("## central_membership : pass") != std::string::npos);
    CHECK(overridden.out.find("## geometry") == std::string::npos);
}
