#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli_support.hpp"

#ifndef GAMMALIM_CLI_BIN
#error "GAMMALIM_CLI_BIN must point at the CLI binary"
#endif

namespace fs = std::filesystem;
using namespace gammalim;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "gammalim-cli-tests";
    fs::create_directories(dir);
    return dir;
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path dir = scratch_dir();
    const fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
    const fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    const std::string cmd = std::string("'") + GAMMALIM_CLI_BIN + "' " + args + " > '" +
                            out.string() + "' 2> '" + err.string() + "'";
    const int raw = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

// value following "<key>: " on its own line
std::string extract_line_value(const std::string& text, const std::string& key) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
    }
    return {};
}

struct CsvRow {
    double z, ratio, limit, abs_deviation;
    std::string raw[4];
};

std::vector<CsvRow> parse_csv(const std::string& text, std::string* header = nullptr) {
    std::istringstream in(text);
    std::string line;
    std::vector<CsvRow> rows;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            if (header) *header = line;
            first = false;
            continue;
        }
        if (line.empty()) continue;
        CsvRow row;
        std::istringstream ls(line);
        for (int c = 0; c < 4; ++c) {
            std::string cell;
            REQUIRE(std::getline(ls, cell, ','));
            row.raw[c] = cell;
            const auto v = cli::parse_double_full(cell);
            REQUIRE(v.has_value());
            (c == 0 ? row.z : c == 1 ? row.ratio : c == 2 ? row.limit : row.abs_deviation) = *v;
        }
        rows.push_back(row);
    }
    return rows;
}

} // namespace

TEST_CASE("parse_complex: accepted and rejected literals") {
    auto expect = [](const char* s, double re, double im) {
        const auto z = cli::parse_complex(s);
        REQUIRE_MESSAGE(z.has_value(), s);
        CHECK(z->real() == re);
        CHECK(z->imag() == im);
    };
    expect("0.5", 0.5, 0.0);
    expect("-3", -3.0, 0.0);
    expect("+2.25", 2.25, 0.0);
    expect("0.5+1i", 0.5, 1.0);
    expect("1.5-2.25i", 1.5, -2.25);
    expect("2i", 0.0, 2.0);
    expect("-i", 0.0, -1.0);
    expect("i", 0.0, 1.0);
    expect("3+i", 3.0, 1.0);
    expect("3-i", 3.0, -1.0);
    expect("1e-3-2.5e2i", 1e-3, -250.0);
    expect(" 4.5 ", 4.5, 0.0);

    for (const char* bad : {"", "abc", "1.2.3", "3+", "++2", "1i2", "2 + 3i", "0x10"}) {
        CHECK_MESSAGE(!cli::parse_complex(bad).has_value(), bad);
    }
}

TEST_CASE("format helpers: shortest round trip and 17 significant digits") {
    for (double v : {0.1, -0.25, 1.0 / 3.0, 6.02e23, 5e-324, 0.0, -17.5}) {
        const auto s = cli::format_shortest(v);
        const auto back = cli::parse_double_full(s);
        REQUIRE(back.has_value());
        CHECK(*back == v);
    }
    CHECK(cli::format_sig17(24.0) == "24");
    CHECK(cli::format_shortest(0.01) == "0.01");
}

TEST_CASE("eval: values, methods, poles, parse failures") {
    const auto r = run_cli("eval 0.5");
    CHECK(r.exit_code == 0);
    const auto v = cli::parse_double_full(r.out.substr(0, r.out.find('\n')));
    REQUIRE(v.has_value());
    CHECK(std::abs(*v - 1.7724538509055160273) <= 1e-13);

    const auto r5 = run_cli("eval 5");
    CHECK(r5.exit_code == 0);
    CHECK(std::abs(*cli::parse_double_full(r5.out.substr(0, r5.out.find('\n'))) - 24.0) <= 1e-12);

    const auto pole = run_cli("eval -3");
    CHECK(pole.exit_code == 2);
    CHECK(pole.err.find("pole at z = -3") != std::string::npos);

    CHECK(run_cli("eval not-a-number").exit_code == 1);
    CHECK(run_cli("eval").exit_code == 1);
    CHECK(run_cli("eval 1 2").exit_code == 1);

    // cross-method agreement through the CLI surface
    const auto a = run_cli("eval 0.5+1i");
    const auto b = run_cli("eval 0.5+1i --method integral --nodes 400");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    const auto za = cli::parse_complex(a.out.substr(0, a.out.find('\n')));
    const auto zb = cli::parse_complex(b.out.substr(0, b.out.find('\n')));
    REQUIRE(za.has_value());
    REQUIRE(zb.has_value());
    CHECK(std::abs(*za - *zb) / std::abs(*za) <= 1e-10);

    const auto w = run_cli("eval 2 --method product --terms 98");
    CHECK(std::abs(*cli::parse_double_full(w.out.substr(0, w.out.find('\n'))) - 0.99) <= 1e-13);

    // quadrature outside its domain is a usage error
    CHECK(run_cli("eval -1.5 --method integral").exit_code == 1);
}

TEST_CASE("limit: values, conventions, exit codes") {
    const auto r = run_cli("limit -n 100 -k 0");
    CHECK(r.exit_code == 0);
    const auto v = cli::parse_double_full(extract_line_value(r.out, "extrapolated"));
    REQUIRE(v.has_value());
    CHECK(std::abs(*v - 0.01) <= 1e-10);

    const auto r21 = run_cli("limit -n 2 -k 1");
    CHECK(r21.exit_code == 0);
    CHECK(std::abs(*cli::parse_double_full(extract_line_value(r21.out, "extrapolated")) + 0.25) <=
          1e-9);
    CHECK(r21.out.find("DISCREPANCY") == std::string::npos); // n even: conventions agree

    // odd n, odd k: paper convention is contradicted by the measurement
    const auto paper = run_cli("limit -n 3 -k 1 --convention paper");
    CHECK(paper.exit_code == 3);
    CHECK(paper.out.find("DISCREPANCY") != std::string::npos);
    CHECK(paper.out.find("closed-form (paper): -0.055") != std::string::npos);
    CHECK(paper.out.find("closed-form (residue-oracle): 0.055") != std::string::npos);
    CHECK(paper.out.find("CONTRADICTS") != std::string::npos);

    // same pair under the default residue convention: flagged but consistent
    const auto residue = run_cli("limit -n 3 -k 1");
    CHECK(residue.exit_code == 0);
    CHECK(residue.out.find("DISCREPANCY") != std::string::npos);

    CHECK(run_cli("limit -n 0 -k 1").exit_code == 1);
    CHECK(run_cli("limit -k 1").exit_code == 1);
    CHECK(run_cli("limit -n 2 -k 1 --eps0 0.5").exit_code == 1);

    // --tol tightens the extrapolant-vs-convention gate
    CHECK(run_cli("limit -n 2 -k 1 --tol 1e-12").exit_code == 0);
    CHECK(run_cli("limit -n 2 -k 1 --tol 1e-16").exit_code == 3);

    // far below double range the closed forms still print
    const auto tiny = run_cli("limit -n 100 -k 2");
    CHECK(tiny.exit_code == 0);
    CHECK(tiny.out.find("below double range") != std::string::npos);
}

TEST_CASE("check: single identities, all, unknown") {
    const auto sine = run_cli("check sine-product --n-max 1000");
    CHECK(sine.exit_code == 0);
    CHECK(sine.out.find("sine-product") != std::string::npos);
    CHECK(sine.out.find("PASS") != std::string::npos);
    CHECK(sine.out.find("FAIL") == std::string::npos);

    const auto gauss1 = run_cli("check gauss -n 1");
    CHECK(gauss1.exit_code == 0);
    CHECK(gauss1.out.find("0.000e") != std::string::npos); // degenerate n=1: residual 0
    CHECK(gauss1.out.find("PASS") != std::string::npos);

    const auto all = run_cli("check all --n-max 60");
    CHECK(all.exit_code == 0);
    int rows = 0;
    std::istringstream in(all.out);
    for (std::string line; std::getline(in, line);)
        if (line.find("PASS") != std::string::npos) ++rows;
    CHECK(rows == 6);

    CHECK(run_cli("check bogus-identity").exit_code == 1);

    // an impossible tolerance turns the exit code around
    CHECK(run_cli("check sine-product --n-max 50 --tol 1e-30").exit_code == 1);

    // json format round-trips
    const auto js = run_cli("check chord-length --n-max 40 --format json");
    CHECK(js.exit_code == 0);
    const auto doc = nlohmann::json::parse(js.out);
    REQUIRE(doc.is_array());
    REQUIRE(doc.size() == 1);
    CHECK(doc[0]["identity"] == "chord-length");
    CHECK(doc[0]["pass"] == true);
}

TEST_CASE("check: output is byte-deterministic") {
    const auto a = run_cli("check reflection");
    const auto b = run_cli("check reflection");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("sweep: csv contract around z = -1, n = 2") {
    const fs::path out = scratch_dir() / "sweep_n2.csv";
    const auto r = run_cli("sweep -n 2 --center -1 --half-width 0.02 --samples 100 "
                           "--exclude 1e-6 -o '" + out.string() + "'");
    REQUIRE(r.exit_code == 0);

    std::string header;
    const auto rows = parse_csv(slurp(out), &header);
    CHECK(header == "z,ratio,limit,abs_deviation");
    REQUIRE(!rows.empty());

    double prev_z = -1e300;
    for (const auto& row : rows) {
        CHECK(row.z > prev_z); // strictly increasing
        prev_z = row.z;
        CHECK(std::isfinite(row.ratio));
        CHECK(row.limit == rows.front().limit);
        CHECK(row.limit == doctest::Approx(-0.25).epsilon(1e-14));
        CHECK(row.abs_deviation == std::abs(row.ratio - row.limit));
        CHECK(std::abs(row.z + 1.0) >= 1e-6); // excluded band honored
        // shortest round-trip: re-rendering the parsed value reproduces the cell
        CHECK(gammalim::cli::format_shortest(row.ratio) == row.raw[1]);
    }
    // the ratio tends to -0.25 where z is nearest the pole
    double best = 1e300, best_dev = 0.0;
    for (const auto& row : rows) {
        if (std::abs(row.z + 1.0) < best) {
            best = std::abs(row.z + 1.0);
            best_dev = row.abs_deviation;
        }
    }
    CHECK(best_dev <= 2e-3);
}

TEST_CASE("sweep: n = 1 gives a ratio column of exact ones") {
    const fs::path out = scratch_dir() / "sweep_n1.csv";
    const auto r = run_cli("sweep -n 1 --center 0 --half-width 0.5 --samples 50 "
                           "--exclude 1e-3 -o '" + out.string() + "'");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(slurp(out));
    REQUIRE(!rows.empty());
    for (const auto& row : rows) {
        CHECK(row.ratio == 1.0);
        CHECK(row.raw[1] == "1");
        CHECK(row.abs_deviation == 0.0);
    }
}

TEST_CASE("sweep: identical command lines produce byte-identical files") {
    const fs::path o1 = scratch_dir() / "det1.csv";
    const fs::path o2 = scratch_dir() / "det2.csv";
    const std::string args = "sweep -n 100 --center 0 --half-width 0.05 --samples 1000 "
                             "--exclude 1e-4 -o ";
    REQUIRE(run_cli(args + "'" + o1.string() + "'").exit_code == 0);
    REQUIRE(run_cli(args + "'" + o2.string() + "'").exit_code == 0);
    CHECK(slurp(o1) == slurp(o2));
    CHECK(!slurp(o1).empty());
}

TEST_CASE("sweep: figure-1 deviation shrinks monotonically into the excluded band") {
    const fs::path out = scratch_dir() / "fig1.csv";
    const auto r = run_cli("sweep -n 100 --center 0 --half-width 0.05 --samples 1000 "
                           "--exclude 1e-4 -o '" + out.string() + "'");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(slurp(out));

    std::vector<double> left_dev, right_dev; // deviations approaching 0 from each side
    for (const auto& row : rows) {
        if (row.z < 0.0 && row.z > -0.009) left_dev.push_back(row.abs_deviation);
        if (row.z > 0.0 && row.z < 0.009) right_dev.push_back(row.abs_deviation);
    }
    REQUIRE(left_dev.size() >= 20);
    REQUIRE(right_dev.size() >= 20);
    for (std::size_t i = left_dev.size() - 20; i + 1 < left_dev.size(); ++i)
        CHECK(left_dev[i] > left_dev[i + 1]); // z increasing toward 0-
    for (std::size_t i = 0; i + 1 < 20; ++i)
        CHECK(right_dev[i] < right_dev[i + 1]); // z increasing away from 0+
}

TEST_CASE("sweep: json format carries the same four fields") {
    const fs::path out = scratch_dir() / "sweep.json";
    const auto r = run_cli("sweep -n 2 --center -1 --half-width 0.02 --samples 40 "
                           "--exclude 1e-6 --format json -o '" + out.string() + "'");
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(slurp(out));
    REQUIRE(doc.is_array());
    REQUIRE(!doc.empty());
    for (const auto& rec : doc) {
        REQUIRE(rec.size() == 4);
        REQUIRE(rec.contains("z"));
        REQUIRE(rec.contains("ratio"));
        REQUIRE(rec.contains("limit"));
        REQUIRE(rec.contains("abs_deviation"));
        CHECK(std::abs(rec["ratio"].get<double>() - rec["limit"].get<double>()) ==
              rec["abs_deviation"].get<double>());
    }
}

TEST_CASE("sweep: error paths") {
    CHECK(run_cli("sweep -n 2 --samples 1 -o /tmp/x.csv").exit_code == 1);
    CHECK(run_cli("sweep -n 2 --half-width 0.01 --exclude 0.02 -o /tmp/x.csv").exit_code == 1);
    CHECK(run_cli("sweep -n 0 -o /tmp/x.csv").exit_code == 1);
    CHECK(run_cli("sweep -n 2").exit_code == 1); // missing -o
    const auto io = run_cli("sweep -n 2 -o /nonexistent-dir-zz/x.csv");
    CHECK(io.exit_code == 4);
}

TEST_CASE("usage surface") {
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("unknown-subcommand").exit_code == 1);
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("check all --format yaml").exit_code == 1);
}
