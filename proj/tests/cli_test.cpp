#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#ifndef LCB_CLI_PATH
#error "LCB_CLI_PATH must point at the built command-line tool"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(LCB_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult res;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        res.output.append(buf.data(), got);
    const int status = ::pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::vector<std::string> cells;
        std::istringstream cur(line);
        std::string cell;
        while (std::getline(cur, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(std::move(cells));
    }
    return rows;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("figures are deterministic and carry the pinned r = 2 value") {
    const auto first = run_cli("figures");
    const auto second = run_cli("figures");
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output); // byte identical
    CHECK(first.output.find("symmetric,2,0.725791352645,1.04709558518") != std::string::npos);
}

TEST_CASE("units round-trip inside one document") {
    const auto res = run_cli("figures --units bits");
    const auto rows = parse_csv(res.output);
    REQUIRE(rows.size() > 2);
    REQUIRE(rows[0].size() == 4); // curve, r, gap_nats, gap_bits
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double nats = std::stod(rows[i][2]);
        const double bits = std::stod(rows[i][3]);
        // cells carry 12 significant digits, so the round trip is exact up
        // to one unit in the printed last place
        CHECK(std::abs(bits - nats / 0.6931471805599453) <= 1e-11 * std::max(1.0, std::abs(bits)));
    }
}

TEST_CASE("nats output omits the bits columns") {
    const auto res = run_cli("figures --units nats");
    const auto rows = parse_csv(res.output);
    CHECK(rows[0] == std::vector<std::string>{"curve", "r", "gap_nats"});
}

TEST_CASE("bounds command passes on a catalog source") {
    const auto res = run_cli("bounds --dist laplace:1.0 --p-grid 0.5:5:0.5");
    CHECK(res.exit_code == 0);
    const auto rows = parse_csv(res.output);
    REQUIRE(rows.size() == 11); // header + ten p values
    CHECK(rows[0][0] == "p");
    CHECK(rows[0][6] == "passed");
    for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][6] == "1");
}

TEST_CASE("structured text mirrors the csv") {
    const auto res = run_cli("bounds --dist uniform:2 --p-grid 1:2:1 --format structured-text");
    CHECK(res.exit_code == 0);
    CHECK(res.output.find("# bounds dist=uniform:2") != std::string::npos);
    CHECK(res.output.find("entropy_nats=0.69314718056") != std::string::npos);
}

TEST_CASE("rd-curve emits the pinned column set") {
    const auto res =
        run_cli("rd-curve --dist gaussian:1 --r 2 --d-grid 0.25:0.25:1 --grid-n 256 --units nats");
    CHECK(res.exit_code == 0);
    const auto rows = parse_csv(res.output);
    CHECK(rows[0] == std::vector<std::string>{"d", "r", "slb_nats", "ba_nats", "ub_gauss_nats",
                                              "ub_gg_nats", "ub_sym_nats", "regime"});
    REQUIRE(rows.size() == 2);
    CHECK(rows[1][7] == "positive");
}

TEST_CASE("capacity emits the pinned column set") {
    const auto res =
        run_cli("capacity --noise gaussian:1 --power-grid 1:1:1 --grid-n 256 --units nats");
    CHECK(res.exit_code == 0);
    const auto rows = parse_csv(res.output);
    CHECK(rows[0] == std::vector<std::string>{"power", "noise_spec", "lower_nats", "ba_nats",
                                              "gaussmi_nats", "upper_nats"});
}

TEST_CASE("reverse-epi reports a passing pair") {
    const auto res = run_cli("reverse-epi --dist-x uniform:1 --dist-y uniform:1 --grid-n 4096");
    CHECK(res.exit_code == 0);
    const auto rows = parse_csv(res.output);
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].back() == "1");
}

TEST_CASE("unusable arguments exit with status 2") {
    CHECK(run_cli("bounds --dist nonsense:1 --p-grid 1:2:1").exit_code == 2);
    CHECK(run_cli("bounds --dist laplace:1 --p-grid 5:1:1").exit_code == 2);
    CHECK(run_cli("bounds --dist laplace:1").exit_code == 2); // missing required flag
    CHECK(run_cli("no-such-command").exit_code == 2);
}

} // TEST_SUITE
