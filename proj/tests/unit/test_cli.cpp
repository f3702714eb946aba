#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int rc = -1;
    std::string out;
};

Run run(const std::string& args) {
    std::string cmd = std::string("'") + GRAFTLAB_CLI + "' " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

using Table = std::vector<std::vector<std::string>>;

Table csv(const std::string& text) {
    Table t;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> row;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) row.push_back(cell);
        if (!line.empty() && line.back() == ',') row.emplace_back();
        t.push_back(row);
    }
    return t;
}

int column(const Table& t, const std::string& name) {
    REQUIRE(!t.empty());
    for (size_t i = 0; i < t[0].size(); ++i)
        if (t[0][i] == name) return static_cast<int>(i);
    FAIL("no column " << name);
    return -1;
}

struct TempDir {
    fs::path path;
    TempDir() {
        std::random_device rd;
        path = fs::temp_directory_path() / ("graftlab_cli_" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string scenario_path() { return std::string(GRAFTLAB_SOURCE_DIR) + "/scenarios/genus2_ray.json"; }

nlohmann::json scenario_json() {
    std::ifstream in(scenario_path());
    return nlohmann::json::parse(in);
}

void write(const std::string& file, const std::string& text) { std::ofstream(file) << text; }

}  // namespace

TEST_CASE("tau-check emits one row per trial and dimension") {
    Run r = run("--seed 5 tau-check --d-min 3 --d-max 4 --trials 7");
    CHECK(r.rc == 0);
    Table t = csv(r.out);
    REQUIRE(t.size() == 1 + 14);
    int hom = column(t, "homomorphism_error"), iso = column(t, "h2_isometry_error");
    for (size_t i = 1; i < t.size(); ++i) {
        CHECK(std::stod(t[i][hom]) < 1e-9);
        CHECK(std::stod(t[i][iso]) < 1e-8);
    }
}

TEST_CASE("an injected sign flip is caught") {
    CHECK(run("tau-check --d-min 3 --d-max 3 --trials 3 --inject-fault sign-flip").rc == 2);
}

TEST_CASE("positivity-scan verdicts") {
    Run r = run("--seed 2 positivity-scan --d-min 3 --d-max 4 --samples 10");
    CHECK(r.rc == 0);
    Table t = csv(r.out);
    int test = column(t, "test"), verdict = column(t, "verdict"), margin = column(t, "margin");
    int identity = 0, semigroup = 0, aPrime = 0;
    for (size_t i = 1; i < t.size(); ++i) {
        const auto& name = t[i][test];
        if (name == "identity") {
            ++identity;
            CHECK(t[i][verdict] == "TNN");
        }
        if (name == "a_prime_1") {
            ++aPrime;
            CHECK(t[i][verdict] == "TP");
            CHECK(std::stod(t[i][margin]) > 0.0);
        }
        if (name.rfind("semigroup", 0) == 0) {
            ++semigroup;
            CHECK(t[i][verdict] == "TP");
        }
    }
    CHECK(identity == 2);
    CHECK(aPrime == 2);
    CHECK(semigroup > 0);
}

TEST_CASE("single-piece admissible paths are geodesic") {
    Run r = run("--seed 3 admissible --pieces 1 --trials 4 --L 0 --L 3 --d 3");
    CHECK(r.rc == 0);
    Table t = csv(r.out);
    int ratio = column(t, "ratio"), defect = column(t, "defectMax");
    REQUIRE(t.size() == 1 + 2 * 5);
    for (size_t i = 1; i < t.size(); ++i) {
        CHECK(std::stod(t[i][ratio]) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(std::stod(t[i][defect])) < 1e-12);
    }
}

TEST_CASE("graft-ray on the shipped scenario") {
    Run r = run("graft-ray --scenario '" + scenario_path() + "'");
    CHECK(r.rc == 0);
    Table t = csv(r.out);
    int word = column(t, "word"), iota = column(t, "iota_plus"), lf = column(t, "lF");
    std::map<std::string, std::vector<double>> lengths;
    for (size_t i = 1; i < t.size(); ++i)
        if (t[i][iota] == "0") lengths[t[i][word]].push_back(std::stod(t[i][lf]));
    CHECK(!lengths.empty());
    for (const auto& [w, ls] : lengths)
        for (double l : ls) CHECK(l == doctest::Approx(ls.front()).epsilon(1e-6));
}

TEST_CASE("graft-ray with zero bending keeps every length") {
    TempDir dir;
    auto j = scenario_json();
    for (auto& [edge, z] : j["grafting"].items())
        for (auto& x : z) x = 0.0;
    j.erase("output_dir");
    write(dir / "flat.json", j.dump());
    Run r = run("graft-ray --scenario '" + dir / "flat.json" + "'");
    CHECK(r.rc == 0);
    Table t = csv(r.out);
    int word = column(t, "word"), lf = column(t, "lF");
    std::map<std::string, double> first;
    for (size_t i = 1; i < t.size(); ++i) {
        double l = std::stod(t[i][lf]);
        auto [it, fresh] = first.emplace(t[i][word], l);
        if (!fresh) CHECK(l == doctest::Approx(it->second).epsilon(1e-9));
    }
    CHECK(first.size() == j["words"].size());
}

TEST_CASE("scenario errors are usage errors") {
    TempDir dir;
    auto j = scenario_json();
    j["fuchsian"]["colour"] = "red";
    write(dir / "nested.json", j.dump());
    CHECK(run("graft-ray --scenario '" + dir / "nested.json" + "'").rc == 64);

    j = scenario_json();
    j["extra"] = 1;
    write(dir / "top.json", j.dump());
    CHECK(run("graft-ray --scenario '" + dir / "top.json" + "'").rc == 64);

    write(dir / "broken.json", "{ \"name\": ");
    CHECK(run("graft-ray --scenario '" + dir / "broken.json" + "'").rc == 64);
    CHECK(run("graft-ray --scenario '" + dir / "missing.json" + "'").rc == 64);
    CHECK(run("graft-ray").rc == 64);
}

TEST_CASE("bad flags are usage errors") {
    CHECK(run("tau-check --no-such-flag").rc == 64);
    CHECK(run("morse --norm taxicab").rc == 64);
    CHECK(run("diamond-selftest --dim 4").rc == 64);
    CHECK(run("tau-check --d-min 5 --d-max 3").rc == 64);
    CHECK(run("").rc == 64);
}

TEST_CASE("morse zigzags are certified") {
    Run r = run("--seed 4 morse --dim 2 --norm weyl --C 1 --trials 5");
    CHECK(r.rc == 0);
    Table t = csv(r.out);
    REQUIRE(t.size() == 6);
    int cert = column(t, "certified");
    for (size_t i = 1; i < t.size(); ++i) CHECK(t[i][cert] == "1");
}

TEST_CASE("diamond self-test in both dimensions") {
    for (int dim : {2, 3}) {
        Run r = run("--seed 9 diamond-selftest --dim " + std::to_string(dim) + " --grid 20");
        CHECK(r.rc == 0);
        CHECK(r.out.find("disagreements=0") != std::string::npos);
    }
}

TEST_CASE("output is deterministic in the seed") {
    const std::string args = "tau-check --d-min 3 --d-max 5 --trials 5";
    Run a = run("--seed 11 " + args), b = run("--seed 11 " + args), c = run("--seed 12 " + args);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);
}

TEST_CASE("--out writes a file instead of stdout") {
    TempDir dir;
    Run r = run("--out '" + dir.path.string() + "' tau-check --d-min 3 --d-max 3 --trials 2");
    CHECK(r.rc == 0);
    CHECK(r.out.empty());
    std::ifstream in(dir / "tau_check.csv");
    std::stringstream text;
    text << in.rdbuf();
    CHECK(csv(text.str()).size() == 3);
}

TEST_CASE("ledger pins are append-only unless overwritten") {
    TempDir dir;
    const std::string ledger = dir / "ledger.json";
    const std::string morse = " morse --dim 2 --C 1 --trials 5";
    CHECK(run("--seed 7 --calibrate --ledger '" + ledger + "'" + morse).rc == 0);
    auto j = nlohmann::json::parse(std::ifstream(ledger));
    const double mu = j["morse/max/dim2"]["mu"]["value"];
    CHECK(mu > 0.0);
    CHECK(j["morse/max/dim2"]["mu"]["hi"].get<double>() >= mu);

    // a second pin without --overwrite is refused and leaves the file alone
    CHECK(run("--seed 8 --calibrate --ledger '" + ledger + "'" + morse).rc == 64);
    CHECK(nlohmann::json::parse(std::ifstream(ledger)) == j);
    CHECK(run("--seed 8 --calibrate --overwrite --ledger '" + ledger + "'" + morse).rc == 0);

    // check mode: the same seed lands in its own band, a collapsed band rejects it
    CHECK(run("--seed 8 --ledger '" + ledger + "'" + morse).rc == 0);
    j = nlohmann::json::parse(std::ifstream(ledger));
    j["morse/max/dim2"]["mu"]["hi"] = 1e-6;
    write(ledger, j.dump());
    CHECK(run("--seed 8 --ledger '" + ledger + "'" + morse).rc == 2);

    // pins for other ids are missing
    CHECK(run("--seed 8 --ledger '" + ledger + "' morse --dim 3 --C 1 --trials 2").rc == 64);
    CHECK(run("--calibrate" + morse).rc == 64);
    CHECK(run("calibrate").rc == 64);
}

TEST_CASE("a malformed ledger is a usage error") {
    TempDir dir;
    write(dir / "ledger.json", "{\"morse/max/dim2\": {\"mu\": {\"value\": 1, \"bogus\": 2}}}");
    CHECK(run("--ledger '" + dir / "ledger.json" + "' morse --dim 2 --C 1 --trials 2").rc == 64);
}
