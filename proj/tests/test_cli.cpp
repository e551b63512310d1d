#include <doctest.h>

#include "spinstar/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace spinstar;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream s;
    s << f.rdbuf();
    return s.str();
}

std::filesystem::path tmp(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

} // namespace

TEST_CASE("help and defaults") {
    const Run help = cli({"--help"});
    CHECK(help.code == kExitOk);
    CHECK(help.out.find("--compare-oracle") != std::string::npos);

    const Run def = cli({"--steps", "50"});
    CHECK(def.code == kExitOk);
    CHECK(def.out.find("N=100") != std::string::npos);
    CHECK(def.out.find("closed: C(0)=1") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(cli({"--n", "abc"}).code == kExitUsage);
    CHECK(cli({"--bogus"}).code == kExitUsage);
    CHECK(cli({"--scenario", "thermal"}).code == kExitUsage);
    CHECK(cli({"--n", "7"}).code == kExitUsage);
    CHECK(cli({"--p", "1.5"}).code == kExitUsage);
    CHECK(cli({"--modes", "closed,fast"}).code == kExitUsage);
    const Run approx = cli({"--scenario", "coherent", "--modes", "approx"});
    CHECK(approx.code == kExitUsage);
    CHECK(approx.err.find("binomial") != std::string::npos);
    CHECK(cli({"--steps", "1"}).code == kExitUsage);
}

TEST_CASE("resource guard exits 3 before computing") {
    const auto csv = tmp("spinstar_guard.csv");
    std::filesystem::remove(csv);
    const Run r = cli({"--n", "100", "--modes", "closed,oracle", "--csv", csv.string()});
    CHECK(r.code == kExitResourceGuard);
    CHECK(r.err.find("N <= 12") != std::string::npos);
    CHECK(r.out.empty());
    CHECK_FALSE(std::filesystem::exists(csv));
    CHECK(cli({"--n", "14", "--compare-oracle"}).code == kExitResourceGuard);
}

TEST_CASE("I/O errors exit 4") {
    const Run r = cli({"--steps", "20", "--csv", "/nonexistent-dir/x.csv"});
    CHECK(r.code == kExitIo);
    CHECK(r.err.find("/nonexistent-dir/x.csv") != std::string::npos);
}

TEST_CASE("oracle comparison passes for both scenarios") {
    const Run b = cli({"--n", "6", "--p", "0.3", "--steps", "200", "--compare-oracle", "--omega", "1.5"});
    CHECK(b.code == kExitOk);
    CHECK(b.out.find("max |closed - oracle|") != std::string::npos);
    const Run c = cli({"--scenario", "coherent", "--n", "4", "--p", "0.9", "--steps", "200", "--compare-oracle"});
    CHECK(c.code == kExitOk);
    CHECK(c.out.find("printed coherent formula") != std::string::npos);
}

TEST_CASE("CSV and SVG outputs are deterministic") {
    const auto a = tmp("spinstar_a.csv"), b = tmp("spinstar_b.csv"), svg = tmp("spinstar_a.svg");
    const std::vector<std::string> base{"--n", "100", "--p", "0.5", "--modes", "closed,approx", "--report-esd"};
    auto args_a = base;
    args_a.insert(args_a.end(), {"--csv", a.string(), "--svg", svg.string()});
    auto args_b = base;
    args_b.insert(args_b.end(), {"--csv", b.string()});
    const Run ra = cli(args_a);
    const Run rb = cli(args_b);
    REQUIRE(ra.code == kExitOk);
    REQUIRE(rb.code == kExitOk);
    CHECK(ra.out.find("esd events:") != std::string::npos);
    const std::string text = slurp(a);
    CHECK(text == slurp(b));
    CHECK(text.rfind("tau,C_closed,C_approx,preclamp_closed\n", 0) == 0);
    CHECK(text.find("# esd,death_tau,birth_tau,peak_after_birth\n") != std::string::npos);
    CHECK(slurp(svg).find("<polyline") != std::string::npos);
    for (const auto& p : {a, b, svg}) std::filesystem::remove(p);
}

TEST_CASE("config file supplies defaults that flags override") {
    const auto cfg = tmp("spinstar_test.cfg");
    {
        std::ofstream f(cfg);
        f << "scenario=coherent\nn=20\np=0.9\nsteps=100\ntau-max=2\n";
    }
    const Run from_file = cli({"--config", cfg.string()});
    CHECK(from_file.code == kExitOk);
    CHECK(from_file.out.find("scenario coherent  N=20  p=0.9  points=100") != std::string::npos);

    const Run overridden = cli({"--config", cfg.string(), "--n", "30"});
    CHECK(overridden.code == kExitOk);
    CHECK(overridden.out.find("N=30") != std::string::npos);
    std::filesystem::remove(cfg);

    CHECK(cli({"--config", "/nonexistent-dir/none.cfg"}).code == kExitUsage);
}
