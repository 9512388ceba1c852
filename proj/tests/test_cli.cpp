#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "qmink/structure.hpp"

using namespace qmink;
using nlohmann::json;

namespace {

std::string fixture(const char* name) {
    return std::string(QMINK_FIXTURES) + "/" + name + ".json";
}

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string out_file = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                           "/qmink_cli_out.txt";
    std::string cmd = std::string(QMINK_CLI) + " " + args + " > " + out_file + " 2>&1";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

int count_lines(const std::string& path) {
    std::ifstream in(path);
    int lines = 0;
    std::string line;
    while (std::getline(in, line)) ++lines;
    return lines;
}

} // namespace

TEST_CASE("validate: classical passes six of six") {
    RunResult r = run_cli("validate " + fixture("classical"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("6/6 checks passed") != std::string::npos);
}

TEST_CASE("validate: star-incompatible structures exit nonzero") {
    RunResult r = run_cli("validate " + fixture("n2twist"));
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("FAIL") != std::string::npos);
    // the non-star subset passes
    RunResult r2 = run_cli("validate --no-star " + fixture("n2twist"));
    CHECK(r2.exit_code == 0);
}

TEST_CASE("validate --dump round-trips the structure") {
    for (const char* name : {"classical", "lattice1d", "epsilon", "n2twist"}) {
        RunResult r = run_cli("validate --dump " + fixture(name));
        CHECK(r.exit_code == 0);
        StructureData orig = load_structure(fixture(name));
        StructureData again = parse_structure(r.out);
        CHECK(orig == again);
    }
}

TEST_CASE("dims: the classical rank table") {
    RunResult r = run_cli("dims " + fixture("classical") + " --max-degree 5");
    CHECK(r.exit_code == 0);
    for (const char* row : {"0  1  1", "1  4  4", "2  16  6", "3  64  4", "4  256  1",
                            "5  1024  0"})
        CHECK(r.out.find(row) != std::string::npos);
}

TEST_CASE("derive prints polynomial text") {
    RunResult r = run_cli("derive " + fixture("lattice1d") + " \"x0*x0\" 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("(2)*x0 + (1/2)") != std::string::npos);
    // the gate failure aborts with a diagnostic
    RunResult bad = run_cli("derive " + fixture("n2twist") + " \"x1*x0\" 0");
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("gate") != std::string::npos);
}

TEST_CASE("dispersion writes the advertised grid") {
    std::string csv = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                      "/qmink_disp.csv";
    RunResult r = run_cli("dispersion " + fixture("epsilon") +
                          " --grid 0:2:5,0:2:5,0,0 --mass 1 --out " + csv);
    CHECK(r.exit_code == 0);
    CHECK(count_lines(csv) == 26); // header + 25 rows
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "p0,p1,p2,p3,m2,re_prop,im_prop");
    // companion plot script on request
    RunResult r2 = run_cli("dispersion " + fixture("epsilon") +
                           " --grid 0:1:2,0,0,0 --out " + csv + " --emit-gnuplot");
    CHECK(r2.exit_code == 0);
    std::ifstream gp(csv + ".gp");
    CHECK(gp.good());
}

TEST_CASE("dispersion CSV values match the closed hyperbolic form") {
    std::string csv = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                      "/qmink_disp_vals.csv";
    RunResult r = run_cli("dispersion " + fixture("epsilon") +
                          " --grid 1.3,0.8,0.2,0.4 --mass 0 --out " + csv);
    REQUIRE(r.exit_code == 0);
    std::ifstream in(csv);
    std::string header, row;
    std::getline(in, header);
    std::getline(in, row);
    std::vector<double> vals;
    std::stringstream ss(row);
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stod(cell));
    REQUIRE(vals.size() == 7);
    double eps = 0.5;
    double sh = std::sinh(eps * 0.8 / 4) / (eps * 0.8 / 4);
    double m2 = (1.3 * 1.3 - 0.4 * 0.4) * sh * sh - 0.8 * 0.8 - 0.2 * 0.2;
    CHECK(std::abs(vals[4] - m2) < 1e-12 * std::abs(m2));
    CHECK(std::abs(vals[5]) < 1e-15);              // re(i/m2) = 0
    CHECK(std::abs(vals[6] - 1.0 / m2) < 1e-12);   // im(i/m2) = 1/m2
}

TEST_CASE("json and text outputs carry the same numbers") {
    RunResult text = run_cli("dims " + fixture("classical") + " --max-degree 3");
    RunResult js = run_cli("--json dims " + fixture("classical") + " --max-degree 3");
    CHECK(js.exit_code == 0);
    json j = json::parse(js.out);
    CHECK(j["kind"] == "dims");
    for (const auto& row : j["table"]) {
        std::string line = std::to_string(row["degree"].get<int>()) + "  " +
                           std::to_string(row["dim"].get<std::size_t>()) + "  " +
                           std::to_string(row["rank"].get<std::size_t>());
        CHECK(text.out.find(line) != std::string::npos);
    }
}

TEST_CASE("usage errors exit with code 2") {
    RunResult r = run_cli("no-such-command");
    CHECK(r.exit_code == 2);
    RunResult r2 = run_cli("dispersion " + fixture("classical") + " --grid 0:1:2 --out /tmp/x.csv");
    CHECK(r2.exit_code == 2); // wrong axis count
}

TEST_CASE("missing files exit with code 3") {
    RunResult r = run_cli("validate /nonexistent.json");
    CHECK(r.exit_code == 3);
}

TEST_CASE("verify-series and fock-check succeed on the shipped fixtures") {
    CHECK(run_cli("verify-series " + fixture("classical")).exit_code == 0);
    CHECK(run_cli("verify-series " + fixture("epsilon") + " --nmax 3").exit_code == 0);
    CHECK(run_cli("fock-check " + fixture("classical") + " -n 2").exit_code == 0);
}

TEST_CASE("identities runs the suite per fixture") {
    RunResult r = run_cli("identities " + fixture("lattice1d"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("SKIP") != std::string::npos); // metric hypotheses fail there
    RunResult eps = run_cli("identities " + fixture("epsilon"));
    CHECK(eps.exit_code == 0);
}

TEST_CASE("identities accepts user-supplied gamma matrices") {
    std::string tmp = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp");
    std::string good = tmp + "/qmink_gammas_good.json";
    std::string bad = tmp + "/qmink_gammas_bad.json";
    {
        std::ofstream g(good);
        g << R"({"gammas": [[["1"]]]})"; // for the single-generator lattice, g = (1)
        std::ofstream b(bad);
        b << R"({"gammas": [[["0"]]]})";
    }
    RunResult ok = run_cli("identities " + fixture("lattice1d") + " --gammas " + good);
    CHECK(ok.exit_code == 0);
    RunResult fail = run_cli("identities " + fixture("lattice1d") + " --gammas " + bad);
    CHECK(fail.exit_code == 1);
    CHECK(fail.out.find("clifford_relation") != std::string::npos);
}
