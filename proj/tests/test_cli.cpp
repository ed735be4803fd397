// End-to-end checks of the tvlab binary: exit-code contract, report files,
// cache behavior, determinism. The binary path comes from CMake.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <unistd.h>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef TVLAB_CLI_PATH
#error "TVLAB_CLI_PATH must be defined by the build"
#endif
#ifndef TVLAB_CONFIG_DIR
#error "TVLAB_CONFIG_DIR must be defined by the build"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("tvlab_cli_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int run(const std::string& args) {
    const std::string cmd = std::string(TVLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

std::string config(const char* name) {
    return (fs::path(TVLAB_CONFIG_DIR) / name).string();
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("exit-code contract for the assumption checker") {
    TempDir tmp;
    CHECK(run("check-assumption --config " + config("cone.cfg") + " --out " +
              (tmp.path / "a").string()) == 0);
    CHECK(run("check-assumption --config " + config("brieskorn.cfg") + " --out " +
              (tmp.path / "b").string()) == 0);
    CHECK(run("check-assumption --config " + config("product_ideal.cfg") + " --out " +
              (tmp.path / "c").string()) == 2);
    CHECK(run("check-assumption --config " + config("empty_link.cfg") + " --out " +
              (tmp.path / "d").string()) == 3);

    // failure report carries both reasons
    const auto report = json::parse(slurp(tmp.path / "c" / "check-assumption.report.json"));
    bool saw_codim = false, saw_rank = false;
    for (const auto& reason : report["results"]["reasons"]) {
        const auto text = reason.get<std::string>();
        saw_codim = saw_codim || text.find("codimension") != std::string::npos;
        saw_rank = saw_rank || text.find("rank") != std::string::npos;
    }
    CHECK(saw_codim);
    CHECK(saw_rank);
}

TEST_CASE("parameter errors exit with code 4") {
    TempDir tmp;
    // band beyond d-2
    const auto wide_band = tmp.path / "wide_band.cfg";
    std::ofstream(wide_band) << "[space]\nm = 3\ndegree = 5\n"
                             << "[spectra]\nband_lo = 0\nband_hi = 4\n";
    CHECK(run("spectra --config " + wide_band.string() + " --out " +
              (tmp.path / "x").string()) == 4);
    // unknown config key
    const auto bad = tmp.path / "bad.cfg";
    std::ofstream(bad) << "[space]\nbogus = 1\n";
    CHECK(run("norms --config " + bad.string() + " --out " + (tmp.path / "y").string()) == 4);
    // missing ideal where one is required
    CHECK(run("kernel --out " + (tmp.path / "z").string()) == 4);
}

TEST_CASE("sampling failure exits with code 3") {
    TempDir tmp;
    CHECK(run("kernel --config " + config("empty_link.cfg") + " --out " +
              (tmp.path / "k").string()) == 3);
}

TEST_CASE("spectra: report fields, CSV shape, determinism under --jobs") {
    TempDir tmp;
    const std::string base = "spectra --config " + config("cone.cfg") + " --degree 7 ";
    CHECK(run(base + "--jobs 4 --emit-gnuplot --out " + (tmp.path / "r1").string()) == 0);
    CHECK(run(base + "--jobs 1 --out " + (tmp.path / "r2").string()) == 0);

    const auto r1 = slurp(tmp.path / "r1" / "spectra.report.json");
    const auto r2 = slurp(tmp.path / "r2" / "spectra.report.json");
    CHECK(r1 == r2); // byte-identical regardless of parallelism

    const auto report = json::parse(r1);
    CHECK(report["version"] == "0.1.0");
    CHECK(report["results"]["pairs"].size() == 9);
    for (const auto& pair : report["results"]["pairs"]) {
        CHECK(pair.contains("decay_slope"));
        CHECK(pair.contains("schatten_sums"));
    }

    // CSV rows: d,band_lo,band_hi,i,j,k,sigma
    std::istringstream csv(slurp(tmp.path / "r1" / "spectra.csv"));
    std::string header;
    std::getline(csv, header);
    CHECK(header == "d,band_lo,band_hi,i,j,k,sigma");
    std::string row;
    int rows = 0;
    while (std::getline(csv, row)) {
        if (!row.empty()) ++rows;
    }
    CHECK(rows > 0);
    CHECK(fs::exists(tmp.path / "r1" / "spectra.gp"));
    CHECK(fs::exists(tmp.path / "r1" / "shell_norms.gp"));
}

TEST_CASE("spectra without an ideal runs on the full module") {
    TempDir tmp;
    CHECK(run("spectra --degree 6 --out " + (tmp.path / "f").string()) == 0);
    const auto report = json::parse(slurp(tmp.path / "f" / "spectra.report.json"));
    CHECK(report["results"]["module"] == "full");
    // sigma_1 of the self-commutator on the default band is the origin value 1/4
    bool found = false;
    for (const auto& pair : report["results"]["pairs"]) {
        if (pair["i"] == 1 && pair["j"] == 1) {
            CHECK(pair["sigma_max"].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
            CHECK(pair["decay_slope"].get<double>() < -0.8);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("kernel: cache reuse produces byte-identical reports") {
    TempDir tmp;
    const std::string base = "kernel --config " + config("cone.cfg") +
                             " --samples 1200 --degree 5 --cache " +
                             (tmp.path / "cache").string() + " --out ";
    CHECK(run(base + (tmp.path / "k1").string()) == 0);
    CHECK(run(base + (tmp.path / "k2").string()) == 0);
    CHECK(slurp(tmp.path / "k1" / "kernel.report.json") ==
          slurp(tmp.path / "k2" / "kernel.report.json"));

    const auto report = json::parse(slurp(tmp.path / "k1" / "kernel.report.json"));
    CHECK(report["results"]["dimension_gap"] == 0);
    CHECK(report["results"]["max_principal_angle"].get<double>() < 1e-3);
    // the report cross-references the cache key of the sample set it used
    const auto cache_key = report["results"]["samples"]["cache_key"].get<std::string>();
    CHECK(fs::exists(tmp.path / "cache" / cache_key));
}

TEST_CASE("jet demo reports the ideal-truncation match") {
    TempDir tmp;
    CHECK(run("kernel --config " + config("jet_demo.cfg") + " --out " +
              (tmp.path / "j").string()) == 0);
    const auto report = json::parse(slurp(tmp.path / "j" / "kernel.report.json"));
    CHECK(report["results"]["mode"] == "jet");
    CHECK(report["results"]["match"] == true);
    CHECK(report["results"]["dimension_gap"] == 0);
}

TEST_CASE("proxy emits the three-column table") {
    TempDir tmp;
    CHECK(run("proxy --config " + config("cone.cfg") + " --out " +
              (tmp.path / "p").string()) == 0);
    std::istringstream csv(slurp(tmp.path / "p" / "proxy.csv"));
    std::string header;
    std::getline(csv, header);
    CHECK(header == "n,quotient_dim,series_coeff,polynomial_value");
    std::string row;
    std::getline(csv, row);
    CHECK(row == "0,1,1,1");
    std::getline(csv, row);
    CHECK(row == "1,3,3,3");
}

TEST_CASE("report-merge combines reports in input order") {
    TempDir tmp;
    CHECK(run("proxy --config " + config("cone.cfg") + " --out " +
              (tmp.path / "p").string()) == 0);
    CHECK(run("norms --degree 3 --out " + (tmp.path / "n").string()) == 0);
    CHECK(run("report-merge " + (tmp.path / "p" / "proxy.report.json").string() + " " +
              (tmp.path / "n" / "norms.report.json").string() + " --out " +
              (tmp.path / "m").string()) == 0);
    const auto merged = json::parse(slurp(tmp.path / "m" / "merged.report.json"));
    REQUIRE(merged["reports"].size() == 2);
    CHECK(merged["reports"][0]["command"] == "proxy");
    CHECK(merged["reports"][1]["command"] == "norms");
}

TEST_CASE("timings live in the sidecar, not the canonical report") {
    TempDir tmp;
    CHECK(run("norms --degree 3 --out " + (tmp.path / "n").string()) == 0);
    const auto report = json::parse(slurp(tmp.path / "n" / "norms.report.json"));
    CHECK_FALSE(report.contains("timings"));
    CHECK(fs::exists(tmp.path / "n" / "norms.timings.json"));
}
