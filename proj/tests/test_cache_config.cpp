#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <unistd.h>
#include <fstream>

#include <tvlab/config.hpp>
#include <tvlab/errors.hpp>
#include <tvlab/sample_cache.hpp>

using namespace tvlab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("tvlab_test_" + std::to_string(::getpid()) + "_" +
                std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

Ideal cone_ideal() { return Ideal({Polynomial::parse("z1^2+z2^2+z3^2", 3)}); }

} // namespace

TEST_CASE("sample cache round-trips bit for bit") {
    TempDir tmp;
    VarietyConfig cfg(cone_ideal(), 1.0, 31337);
    const auto fresh = sample_variety(cfg, 150, 1.0);
    const SampleCacheKey key{ideal_hash(cfg.ideal), cfg.radius, 1.0, 150, cfg.seed};
    const auto file = tmp.path / key.file_name();
    save_samples(file, key, fresh);

    const auto loaded = load_samples(file, key);
    REQUIRE(loaded.has_value());
    REQUIRE(loaded->size() == fresh.size());
    for (std::size_t j = 0; j < fresh.size(); ++j) {
        CHECK((*loaded)[j].z == fresh[j].z); // bitwise doubles
        CHECK((*loaded)[j].weight == fresh[j].weight);
        CHECK((*loaded)[j].residual == fresh[j].residual);
        CHECK((*loaded)[j].on_boundary == fresh[j].on_boundary);
    }
}

TEST_CASE("cached_sample_variety: miss computes and stores, hit is bit-identical") {
    TempDir tmp;
    VarietyConfig cfg(cone_ideal(), 1.0, 808);
    const auto first = cached_sample_variety(tmp.path, cfg, 120, 1.0);
    const SampleCacheKey key{ideal_hash(cfg.ideal), cfg.radius, 1.0, 120, cfg.seed};
    CHECK(fs::exists(tmp.path / key.file_name()));
    const auto second = cached_sample_variety(tmp.path, cfg, 120, 1.0);
    REQUIRE(first.size() == second.size());
    for (std::size_t j = 0; j < first.size(); ++j) {
        CHECK(first[j].z == second[j].z);
        CHECK(first[j].weight == second[j].weight);
    }
}

TEST_CASE("cache file starts with the TVLB1 magic") {
    TempDir tmp;
    VarietyConfig cfg(cone_ideal(), 1.0, 9);
    const auto samples = sample_variety(cfg, 20, 1.0);
    const SampleCacheKey key{ideal_hash(cfg.ideal), cfg.radius, 1.0, 20, cfg.seed};
    const auto file = tmp.path / key.file_name();
    save_samples(file, key, samples);
    std::ifstream is(file, std::ios::binary);
    char magic[5];
    is.read(magic, 5);
    CHECK(std::string(magic, 5) == "TVLB1");
}

TEST_CASE("cache key mismatch and corruption are input errors") {
    TempDir tmp;
    VarietyConfig cfg(cone_ideal(), 1.0, 11);
    const auto samples = sample_variety(cfg, 20, 1.0);
    const SampleCacheKey key{ideal_hash(cfg.ideal), cfg.radius, 1.0, 20, cfg.seed};
    const auto file = tmp.path / key.file_name();
    save_samples(file, key, samples);

    SampleCacheKey other = key;
    other.seed = 12;
    CHECK_THROWS_AS((void)load_samples(file, other), input_error);

    std::ofstream(file, std::ios::binary) << "garbage";
    CHECK_THROWS_AS((void)load_samples(file, key), input_error);

    CHECK_FALSE(load_samples(tmp.path / "missing.tvlb", key).has_value());
}

TEST_CASE("ideal hash distinguishes ideals and radii keys") {
    const auto h1 = ideal_hash(cone_ideal());
    const auto h2 = ideal_hash(Ideal({Polynomial::parse("z1^2+z2^2", 3)}));
    CHECK(h1 != h2);
    const SampleCacheKey k1{h1, 1.0, 1.0, 100, 5};
    const SampleCacheKey k2{h1, 0.5, 1.0, 100, 5};
    CHECK(k1.file_name() != k2.file_name());
}

TEST_CASE("config parsing: sections, repeats, overrides of defaults") {
    TempDir tmp;
    const auto file = tmp.path / "exp.cfg";
    std::ofstream(file) << R"cfg(
# cone experiment
[space]
m = 3
weight = 0
degree = 8

[ideal]
generator = z1^2+z2^2+z3^2

[variety]
radius = 1.0
samples = 2000
seed = 42

[tolerances]
solve = 1e-10
rank = 1e-10
kernel = 1e-6

[spectra]
band_lo = 0
band_hi = 6
schatten_p = 1, 2, 3

[run]
jobs = 2
emit_gnuplot = true
)cfg";
    const auto cfg = ExperimentConfig::from_file(file);
    CHECK(cfg.m == 3);
    CHECK(cfg.degree == 8);
    CHECK(cfg.generators.size() == 1);
    CHECK(cfg.samples == 2000);
    CHECK(cfg.seed == 42);
    CHECK(cfg.band_hi == 6);
    CHECK(cfg.schatten_p == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(cfg.jobs == 2);
    CHECK(cfg.emit_gnuplot);
    cfg.validate();

    const auto ideal = cfg.make_ideal();
    CHECK(ideal.homogeneous);
    CHECK(ideal.max_degree() == 2);
}

TEST_CASE("config rejects unknown keys and inconsistent values") {
    TempDir tmp;
    const auto bad_key = tmp.path / "bad.cfg";
    std::ofstream(bad_key) << "[space]\nmm = 3\n";
    CHECK_THROWS_AS((void)ExperimentConfig::from_file(bad_key), parameter_error);

    const auto bad_value = tmp.path / "bad2.cfg";
    std::ofstream(bad_value) << "[space]\nm = three\n";
    CHECK_THROWS_AS((void)ExperimentConfig::from_file(bad_value), parameter_error);

    ExperimentConfig cfg;
    cfg.degree = 1;
    cfg.generators = {"z1^2+z2^2+z3^2"};
    CHECK_THROWS_AS(cfg.validate(), parameter_error);
}

TEST_CASE("canonical config text is stable and hashes deterministically") {
    ExperimentConfig a;
    a.generators = {"z1^2+z2^2+z3^2"};
    ExperimentConfig b = a;
    CHECK(a.canonical_text() == b.canonical_text());
    CHECK(a.hash() == b.hash());
    b.seed += 1;
    CHECK(a.hash() != b.hash());
}
