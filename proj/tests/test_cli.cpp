#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "schmidt/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace schmidt;
using namespace schmidt::cli;

namespace {

struct Table {
    std::vector<std::string> comments;
    std::string header;
    std::vector<std::vector<double>> rows;
};

Table parse_csv(const std::string& text) {
    Table t;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            t.comments.push_back(line);
        } else if (t.header.empty()) {
            t.header = line;
        } else {
            std::vector<double> row;
            std::istringstream cells(line);
            std::string cell;
            while (std::getline(cells, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
            t.rows.push_back(row);
        }
    }
    return t;
}

RunConfig config_for(Command c, std::size_t n_a, std::size_t n_b) {
    RunConfig cfg;
    cfg.command = c;
    cfg.dims = make_dims(n_a, n_b);
    return cfg;
}

int invoke(std::vector<std::string> args, std::string* captured = nullptr) {
    args.insert(args.begin(), "schmidt");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream sink;
    auto* old = std::cout.rdbuf(sink.rdbuf());
    const int code = main_entry(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(old);
    if (captured) *captured = sink.str();
    return code;
}

std::filesystem::path scratch_dir() {
    auto dir = std::filesystem::temp_directory_path() / "schmidt_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("qubit shorthand") {
    CHECK(dims_from_qubits(8, 0) == BipartiteDims(16, 16));
    CHECK(dims_from_qubits(14, 2) == BipartiteDims(32, 512));
    CHECK(dims_from_qubits(14, 4).ratio() == 1.0 / 256.0);
    CHECK(dims_from_qubits(4, 2) == BipartiteDims(1, 16));
    CHECK_THROWS_AS(dims_from_qubits(7, 0), UsageError);
    CHECK_THROWS_AS(dims_from_qubits(8, 5), UsageError);
    CHECK_THROWS_AS(dims_from_qubits(8, -1), UsageError);
}

TEST_CASE("sample command") {
    auto cfg = config_for(Command::sample, 2, 2);
    cfg.samples = 200000;
    cfg.seed = 1;
    const auto out = cmd_sample(cfg);
    const auto t = parse_csv(out.csv);
    CHECK(t.header == "index,x,mean,stderr,width");
    REQUIRE(t.rows.size() == 2);
    CHECK(std::abs(t.rows[0][2] - 0.875) < 3.0 * t.rows[0][3]);
    CHECK(out.csv.rfind("# schmidt ", 0) == 0);
    CHECK(out.csv.find("# dims=2,2 w=1 seed=1 samples=200000") != std::string::npos);

    auto qcfg = cfg;
    qcfg.dims = dims_from_qubits(8, 0);
    qcfg.qubits = QubitCut{8, 0};
    qcfg.samples = 5000;
    const auto q = parse_csv(cmd_sample(qcfg).csv);
    CHECK(q.rows.size() == 16);

    cfg.samples = 1;
    CHECK_THROWS_AS(cmd_sample(cfg), UsageError);
}

TEST_CASE("sample output is byte-identical across runs and worker counts") {
    auto cfg = config_for(Command::sample, 4, 8);
    cfg.samples = 6000;
    cfg.seed = 77;
    cfg.workers = 1;
    const auto a = cmd_sample(cfg).csv;
    const auto b = cmd_sample(cfg).csv;
    cfg.workers = 4;
    const auto c = cmd_sample(cfg).csv;
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("theory command") {
    auto cfg = config_for(Command::theory, 8, 8);
    cfg.grid = 101;
    auto t = parse_csv(cmd_theory(cfg).csv);
    CHECK(t.header == "x,f,lambda");
    REQUIRE(t.rows.size() == 101);
    CHECK(t.rows.front()[1] == 4.0);
    CHECK(t.rows.back()[1] == 0.0);
    CHECK(t.rows[50][2] == doctest::Approx(t.rows[50][1] / 8.0));

    cfg.dims = make_dims(4, 64);
    t = parse_csv(cmd_theory(cfg).csv);
    CHECK(t.rows.front()[1] == doctest::Approx(1.5625).epsilon(1e-14));
    CHECK(t.rows.back()[1] == doctest::Approx(0.5625).epsilon(1e-14));

    cfg.grid = 2;
    t = parse_csv(cmd_theory(cfg).csv);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0][0] == 0.0);
    CHECK(t.rows[1][0] == 1.0);

    cfg.grid = 1;
    CHECK_THROWS_AS(cmd_theory(cfg), UsageError);
}

TEST_CASE("eta command") {
    auto cfg = config_for(Command::eta, 16, 16);
    cfg.grid = 11;
    auto t = parse_csv(cmd_eta(cfg).csv);
    CHECK(t.header == "x,eta");
    CHECK(t.rows[0][1] == 1.0);
    CHECK(t.rows[8][0] == 0.8);
    CHECK(t.rows[8][1] <= 0.007);
    CHECK(t.rows.back()[1] == 0.0);

    cfg.dims = dims_from_qubits(14, 2);
    cfg.rescaled = true;
    cfg.retained = 0.2 * std::sqrt(32.0 * 512.0);
    const auto out = cmd_eta(cfg);
    t = parse_csv(out.csv);
    CHECK(t.header == "x,eta,y");
    CHECK(t.rows[0][1] == 1.0);
    // y = 0.2 <=> x = 0.8 at w = 1/16
    CHECK(t.rows[8][2] == doctest::Approx(0.2));
    CHECK(std::abs(t.rows[8][1] - 0.12) <= 0.02);
    CHECK(out.csv.find("# retained=") != std::string::npos);
}

TEST_CASE("compare command") {
    auto cfg = config_for(Command::compare, 2, 2);
    cfg.samples = 20000;
    const auto t = parse_csv(cmd_compare(cfg).csv);
    CHECK(t.header == "index,x,mc_mean,stderr,theory,rel_err");
    REQUIRE(t.rows.size() == 2);
    CHECK(std::abs(t.rows[0][4] - 0.875) > 0.01);
    for (const auto& row : t.rows) CHECK(std::isfinite(row[5]));
    bool has_summary = false;
    for (const auto& c : t.comments) has_summary |= c.rfind("# max_rel_err_without_last=", 0) == 0;
    CHECK(has_summary);
}

TEST_CASE("laguerre command") {
    auto t = parse_csv(cmd_laguerre(config_for(Command::laguerre, 1, 1)).csv);
    CHECK(t.header == "index,x,scaled_zero,f,rel_dev");
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0][2] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(t.rows[0][0] == 0.0);

    auto max_dev = [](const Table& table) {
        double m = 0.0;
        for (const auto& r : table.rows) {
            CHECK(std::isfinite(r[4]));
            m = std::max(m, r[4]);
        }
        return m;
    };
    const auto small = parse_csv(cmd_laguerre(config_for(Command::laguerre, 16, 64)).csv);
    const auto large = parse_csv(cmd_laguerre(config_for(Command::laguerre, 64, 256)).csv);
    CHECK(max_dev(large) < max_dev(small));
}

TEST_CASE("fixtures command passes with the default sample count") {
    RunConfig cfg;
    cfg.command = Command::fixtures;
    const auto out = cmd_fixtures(cfg);
    CHECK(out.exit_code == exit_ok);
    const auto t = parse_csv(out.csv);
    CHECK(t.header == "n_a,n_b,index,exact,mc_mean,stderr,band,status,source");
    CHECK(t.rows.size() == 7);

    cfg.seed = 12345;
    CHECK(cmd_fixtures(cfg).exit_code == exit_ok);

    cfg.samples = 1000;
    const auto coarse = cmd_fixtures(cfg);
    CHECK(coarse.csv.find("band=3*stderr") != std::string::npos);
}

TEST_CASE("svg output is deterministic and written next to the csv") {
    const auto dir = scratch_dir();
    auto cfg = config_for(Command::theory, 16, 16);
    cfg.grid = 64;
    cfg.format = Format::both;
    cfg.log_y = true;
    cfg.out = (dir / "fig1.csv").string();
    std::ostringstream out;
    std::ostringstream err;
    REQUIRE(run(cfg, out, err) == exit_ok);
    const auto svg1 = slurp(dir / "fig1.svg");
    CHECK(svg1.find("<svg") != std::string::npos);
    CHECK(svg1.find("semi-log") != std::string::npos);
    CHECK(slurp(dir / "fig1.csv").find("x,f,lambda") != std::string::npos);
    REQUIRE(run(cfg, out, err) == exit_ok);
    CHECK(slurp(dir / "fig1.svg") == svg1);
}

TEST_CASE("exit codes") {
    std::string captured;
    CHECK(invoke({"theory", "--dims", "4", "4", "--grid", "3"}, &captured) == exit_ok);
    CHECK(captured.find("x,f,lambda") != std::string::npos);

    CHECK(invoke({"theory"}) == exit_usage);
    CHECK(invoke({"theory", "--dims", "4"}) == exit_usage);
    CHECK(invoke({"theory", "--dims", "4", "4", "--qubits", "8"}) == exit_usage);
    CHECK(invoke({"theory", "--qubits", "7"}) == exit_usage);
    CHECK(invoke({"theory", "--dims", "0", "4"}) == exit_usage);
    CHECK(invoke({"bogus"}) == exit_usage);
    CHECK(invoke({"sample", "--dims", "2", "2", "--samples", "1"}) == exit_usage);
    CHECK(invoke({"theory", "--dims", "2", "2", "--format", "png"}) == exit_usage);
    CHECK(invoke({"eta", "--dims", "2", "2", "--retained", "-1"}) == exit_usage);
    CHECK(invoke({"theory", "--dims", "2", "2", "--out", "/nonexistent-dir/x.csv"}) == exit_check_failed);
    CHECK(invoke({"laguerre", "--qubits", "8", "--r", "1"}, &captured) == exit_ok);
    CHECK(captured.find("# qubits n=8 r=1") != std::string::npos);
}
