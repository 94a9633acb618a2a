#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string cli_path() {
    const char* p = std::getenv("HF_CLI_PATH");
    REQUIRE_MESSAGE(p != nullptr, "HF_CLI_PATH must point at the built binary");
    return p;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

fs::path temp_dir() {
    static fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "hullfront_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path out = temp_dir() / ("stdout_" + std::to_string(counter) + ".txt");
    const fs::path err = temp_dir() / ("stderr_" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = cli_path() + " " + args + " >" + out.string() +
                            " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string slurp_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double parse_constant(const std::string& text) {
    const auto pos = text.find("limit_constant = ");
    REQUIRE(pos != std::string::npos);
    return std::stod(text.substr(pos + 17));
}

}  // namespace

TEST_CASE("constant on the unit square prints the sandwich check") {
    const RunResult r = run_cli("constant --square");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("bound check A/5 <= C <= A: PASS") != std::string::npos);
    const double c = parse_constant(r.out);
    CHECK(c > 5.0 / 3.0);
    CHECK(c < 25.0 / 3.0);
}

TEST_CASE("constant for a regular polygon reports the log ratio") {
    const RunResult r = run_cli("constant --regular 8 --perimeter 1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("ratio M*C/log M = ") != std::string::npos);
}

TEST_CASE("acute corners are a reported hypothesis violation, strict escalates") {
    const RunResult soft = run_cli("constant --regular 3");
    CHECK(soft.exit_code == 0);
    CHECK(soft.out.find("limit_constant = ") != std::string::npos);  // still computed
    CHECK(soft.err.find("warning") != std::string::npos);

    const RunResult hard = run_cli("constant --regular 3 --strict");
    CHECK(hard.exit_code == 3);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("constant").exit_code == 2);  // no polygon source
    CHECK(run_cli("constant --square --perimeter 0").exit_code == 2);
    CHECK(run_cli("simulate --square --mode boundary").exit_code == 2);  // no --n
    CHECK(run_cli("simulate --square --mode boundary --n 64 --reps 10").exit_code == 2);
    CHECK(run_cli("cone --alpha 0 --samples 20000").exit_code == 2);
    CHECK(run_cli("cone --samples 20000").exit_code == 2);  // alpha required
    CHECK(run_cli("nonsense").exit_code == 2);

    const RunResult m3 = run_cli("mgon-sweep --m-list 3");
    CHECK(m3.exit_code == 2);
    CHECK(m3.err.find("4") != std::string::npos);
}

TEST_CASE("nonconvex polygon files are rejected with the offending vertex") {
    const fs::path bad = temp_dir() / "bad_polygon.json";
    {
        std::ofstream f(bad);
        f << R"({"vertices": [[0,0],[2,0],[1,0.2],[2,2],[0,2]]})";
    }
    const RunResult r = run_cli("constant --polygon " + bad.string());
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("vertex") != std::string::npos);
    CHECK(r.err.find("2") != std::string::npos);

    const fs::path missing = temp_dir() / "missing.json";
    CHECK(run_cli("constant --polygon " + missing.string()).exit_code == 2);
}

TEST_CASE("valid polygon file round-trips") {
    const fs::path good = temp_dir() / "pentagon.json";
    {
        std::ofstream f(good);
        f << R"({"vertices": [[0,0],[2,0],[2.5,1],[1.2,2.1],[-0.5,1.2]]})";
    }
    const RunResult r = run_cli("constant --polygon " + good.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("m=5") != std::string::npos);
}

TEST_CASE("simulate CSV output is byte-identical across reruns of the same seed") {
    const fs::path f1 = temp_dir() / "sim1.csv";
    const fs::path f2 = temp_dir() / "sim2.csv";
    const std::string args =
        " --square --mode boundary --n 16,32 --reps 100 --seed 7 --workers 2 --out ";
    CHECK(run_cli("simulate" + args + f1.string()).exit_code == 0);
    CHECK(run_cli("simulate" + args + f2.string()).exit_code == 0);
    const std::string c1 = slurp_file(f1);
    const std::string c2 = slurp_file(f2);
    CHECK(!c1.empty());
    CHECK(c1 == c2);

    // header carries schema and seed; body carries the expected columns
    CHECK(c1.find("# schema=simulate-v1 seed=7 stream=0") != std::string::npos);
    CHECK(c1.find("n,reps,mean_delta,stderr,scaled_mean,limit_value,z_gap") !=
          std::string::npos);

    // manifest sidecar exists and reproduces the invocation
    const fs::path mf = f1.string() + ".manifest.json";
    REQUIRE(fs::exists(mf));
    const json m = json::parse(slurp_file(mf));
    CHECK(m["seed"]["master_seed"] == 7);
    CHECK(m["command"] == "simulate");
    CHECK(m["config"]["reps"] == 100);
}

TEST_CASE("seed can come from the environment") {
    const fs::path f = temp_dir() / "sim_env.csv";
    const std::string cmd = "HULLFRONT_SEED=9 " + cli_path() +
                            " simulate --square --mode boundary --n 16 --reps 100 --out " +
                            f.string() + " >/dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    const json m = json::parse(slurp_file(f.string() + ".manifest.json"));
    CHECK(m["seed"]["master_seed"] == 9);
}

TEST_CASE("mgon-sweep row matches the standalone constant") {
    const fs::path f = temp_dir() / "sweep.csv";
    CHECK(run_cli("mgon-sweep --m-list 4 --out " + f.string()).exit_code == 0);
    const std::string csv = slurp_file(f);
    // data row: M,C_M,...
    const auto nl = csv.find("\nM,");
    REQUIRE(nl != std::string::npos);
    const auto row_start = csv.find('\n', nl + 1) + 1;
    std::istringstream row(csv.substr(row_start));
    std::string cell;
    std::getline(row, cell, ',');
    CHECK(cell == "4");
    std::getline(row, cell, ',');
    const double c4 = std::stod(cell);

    const RunResult c = run_cli("constant --square --perimeter 1");
    CHECK(std::fabs(parse_constant(c.out) - c4) < 1e-9);
}

TEST_CASE("cone subcommand produces pass flags against theory") {
    const fs::path f = temp_dir() / "cone.csv";
    const RunResult r = run_cli(
        "cone --alpha 1.5707963267948966 --r-grid 0.5,1 --samples 20000 --seed 3 --out " +
        f.string());
    CHECK(r.exit_code == 0);
    const std::string csv = slurp_file(f);
    CHECK(csv.find("r,empirical,q_theory,binom_3sigma,pass") != std::string::npos);
    CHECK(csv.find("true") != std::string::npos);
}

TEST_CASE("json format mirrors the csv rows") {
    const RunResult r = run_cli(
        "simulate --square --mode boundary --n 16 --reps 100 --seed 7 --format json");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["schema"] == "simulate-v1");
    REQUIRE(doc["rows"].is_array());
    REQUIRE(doc["rows"].size() == 1);
    CHECK(doc["rows"][0]["n"] == 16);
    CHECK(doc["rows"][0].contains("z_gap"));
    CHECK(doc["manifest"]["seed"]["master_seed"] == 7);
}

TEST_CASE("constant json format carries the certified error bound") {
    const RunResult r = run_cli("constant --square --format json");
    CHECK(r.exit_code == 0);
    const json doc = json::parse(r.out);
    const json row = doc["rows"][0];
    CHECK(row["limit_value"].get<double>() > 5.0 / 3.0);
    CHECK(row["limit_value"].get<double>() < 25.0 / 3.0);
    CHECK(row["abs_error_bound"].get<double>() < 1e-6);
    CHECK(row["sandwich_pass"] == true);
}
