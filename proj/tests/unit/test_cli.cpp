#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct run_result {
    int status = -1;
    std::string output;
};

// Runs the installed CLI binary (path supplied by ctest via HEATRK_CLI) with
// stderr folded into stdout.
run_result run_cli(const std::string& args) {
    const char* exe = std::getenv("HEATRK_CLI");
    REQUIRE(exe != nullptr);
    const std::string cmd = std::string(exe) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    run_result r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

std::vector<std::string> cells_of(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(cell);
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path);
    out << body;
}

std::string midpoint_control_csv(double T, int M, double value) {
    std::ostringstream out;
    out << "t,re_u,im_u\n";
    for (int k = 0; k < M; ++k) {
        out.precision(17);
        out << (k + 0.5) * T / M << "," << value << ",0\n";
    }
    return out.str();
}

}  // namespace

TEST_CASE("kernel-eval prints the expected value", "[cli]") {
    const auto r = run_cli("kernel-eval --kind half-line --T 1 --z 1 --w 1");
    REQUIRE(r.status == 0);
    const auto ls = lines_of(r.output);
    REQUIRE(ls.size() == 2);
    CHECK(ls[0] == "re_z,im_z,re_w,im_w,re_K,im_K");
    const auto cs = cells_of(ls[1]);
    REQUIRE(cs.size() == 6);
    CHECK(std::abs(std::stod(cs[4]) - 0.072399264472540442) < 1e-12);
    CHECK(std::stod(cs[5]) == 0.0);
}

TEST_CASE("kernel-eval broadcasts a single argument", "[cli]") {
    const auto r = run_cli("kernel-eval --kind left --z 0.3 --z 0.5 --w 0.7");
    REQUIRE(r.status == 0);
    CHECK(lines_of(r.output).size() == 3);

    const auto bad = run_cli("kernel-eval --kind left --z 0.3 --z 0.5 --w 0.6 --w 0.7 --w 0.8");
    CHECK(bad.status == 1);
}

TEST_CASE("gram output is byte-stable across thread counts", "[cli]") {
    const std::string base = "gram --kind plus --T 1 --grid 6 --margin 0.1";
    const auto r1 = run_cli(base + " --threads 1 --out /tmp/heatrk_cli_g1.json");
    const auto r4 = run_cli(base + " --threads 4 --out /tmp/heatrk_cli_g2.json");
    REQUIRE(r1.status == 0);
    REQUIRE(r4.status == 0);
    const std::string j1 = slurp("/tmp/heatrk_cli_g1.json");
    CHECK(j1 == slurp("/tmp/heatrk_cli_g2.json"));

    const auto parsed = nlohmann::json::parse(j1);
    CHECK(parsed.at("psd_pass").get<bool>());
    CHECK(parsed.at("entries").size() == 6);
    CHECK(parsed.at("min_eigenvalue").get<double>() > -1e-12);
}

TEST_CASE("config files merge under explicit flags", "[cli]") {
    write_text("/tmp/heatrk_cli_cfg.json",
               "{\"kind\": \"left\", \"grid\": 4, \"margin\": 0.15}");
    const auto r = run_cli("gram --config /tmp/heatrk_cli_cfg.json --out /tmp/heatrk_cli_g3.json");
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(slurp("/tmp/heatrk_cli_g3.json"));
    CHECK(j.at("points").size() == 4);

    const auto over = run_cli(
        "gram --config /tmp/heatrk_cli_cfg.json --grid 5 --out /tmp/heatrk_cli_g4.json");
    REQUIRE(over.status == 0);
    const auto jo = nlohmann::json::parse(slurp("/tmp/heatrk_cli_g4.json"));
    CHECK(jo.at("points").size() == 5);

    write_text("/tmp/heatrk_cli_bad.json", "{\"bogus\": 1}");
    const auto bad = run_cli("gram --kind left --config /tmp/heatrk_cli_bad.json");
    CHECK(bad.status == 1);
    CHECK(bad.output.find("unknown config key") != std::string::npos);
}

TEST_CASE("validation problems exit with status 1", "[cli]") {
    CHECK(run_cli("kernel-eval --kind bogus --z 1 --w 1").status == 1);
    CHECK(run_cli("kernel-eval --kind left --z 1").status == 1);
    CHECK(run_cli("frobnicate").status == 1);
    CHECK(run_cli("kernel-eval --kind left --z nope --w 1").status == 1);
    // the half-line scenario has no finite-rod reference solver
    write_text("/tmp/heatrk_cli_u.csv", midpoint_control_csv(1.0, 16, 1.0));
    CHECK(run_cli("solve --scenario half-line --control /tmp/heatrk_cli_u.csv --oracle").status ==
          1);
}

TEST_CASE("zero target synthesizes the zero control", "[cli]") {
    write_text("/tmp/heatrk_cli_zero.csv", "x,re_w,im_w\n0.3,0,0\n0.5,0,0\n0.7,0,0\n");
    const auto r = run_cli(
        "synthesize --scenario left-only --target /tmp/heatrk_cli_zero.csv --grid 16 "
        "--out /tmp/heatrk_cli_zero.json --control-out /tmp/heatrk_cli_zero_u.csv");
    REQUIRE(r.status == 0);
    const auto j = nlohmann::json::parse(slurp("/tmp/heatrk_cli_zero.json"));
    CHECK(j.at("residual").get<double>() == 0.0);
    CHECK(j.at("norm_estimate").get<double>() == 0.0);
    CHECK(j.at("control_l2_norm").get<double>() == 0.0);

    const auto ls = lines_of(slurp("/tmp/heatrk_cli_zero_u.csv"));
    REQUIRE(ls.size() == 17);
    for (std::size_t k = 1; k < ls.size(); ++k) {
        const auto cs = cells_of(ls[k]);
        CHECK(std::stod(cs[1]) == 0.0);
        CHECK(std::stod(cs[2]) == 0.0);
    }
}

TEST_CASE("solve cross-checks the grid reference and feeds synthesize", "[cli]") {
    write_text("/tmp/heatrk_cli_u.csv", midpoint_control_csv(1.0, 512, 1.0));
    const auto solve = run_cli(
        "solve --scenario left-only --control /tmp/heatrk_cli_u.csv --grid 5 --margin 0.2 "
        "--oracle --out /tmp/heatrk_cli_field.csv");
    REQUIRE(solve.status == 0);
    const auto ls = lines_of(slurp("/tmp/heatrk_cli_field.csv"));
    REQUIRE(ls.size() == 6);
    CHECK(ls[0] == "x,re_w,im_w,re_w_fd,im_w_fd,abs_diff");
    for (std::size_t i = 1; i < ls.size(); ++i) {
        CHECK(std::stod(cells_of(ls[i])[5]) < 1e-4);
    }

    const auto syn = run_cli(
        "synthesize --scenario left-only --target /tmp/heatrk_cli_field.csv --grid 512 "
        "--lambda auto --out /tmp/heatrk_cli_syn.json --control-out /tmp/heatrk_cli_rec.csv");
    REQUIRE(syn.status == 0);
    const auto j = nlohmann::json::parse(slurp("/tmp/heatrk_cli_syn.json"));
    CHECK(j.at("residual").get<double>() < 1e-2);
    // the source control has unit energy; the recovered one cannot beat it by much
    CHECK(j.at("control_l2_norm").get<double>() < 1.05);
    CHECK(j.at("lambda").get<double>() > 0.0);
    CHECK(j.at("samples").get<int>() == 512);
}

TEST_CASE("verify passes its own invariant suite", "[cli]") {
    const auto r = run_cli("verify --T 1 --seed 7");
    REQUIRE(r.status == 0);
    CHECK(r.output.find("invariants pass") != std::string::npos);
    CHECK(r.output.find("FAIL") == std::string::npos);
}

TEST_CASE("feature-dump emits the sampled feature", "[cli]") {
    const auto r = run_cli("feature-dump --scenario left-only --z 0.5 --T 1 --grid 16");
    REQUIRE(r.status == 0);
    const auto ls = lines_of(r.output);
    REQUIRE(ls.size() == 17);
    CHECK(ls[0] == "t,re_h,im_h");

    CHECK(run_cli("feature-dump --scenario both --z 0.5").status == 1);
}
