#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tvlab/variety.hpp"

namespace tvlab {

std::uint64_t fnv1a64(std::string_view text);
std::uint64_t ideal_hash(const Ideal& ideal);

/// Cache identity: sample sets are keyed by (ideal hash, radius, s, n, seed).
struct SampleCacheKey {
    std::uint64_t ideal;
    double radius;
    double s_weight;
    std::int64_t count;
    std::uint64_t seed;

    std::string file_name() const; // samples_<16 hex digits>.tvlb
};

/// Columnar little-endian binary, magic "TVLB1". A cache hit reproduces the
/// sampler output bit for bit.
void save_samples(const std::filesystem::path& file, const SampleCacheKey& key,
                  std::span<const SamplePoint> samples);
std::optional<std::vector<SamplePoint>> load_samples(const std::filesystem::path& file,
                                                     const SampleCacheKey& key);

/// Sample with a cache directory: loads on hit, computes and stores on miss.
/// An empty cache_dir disables caching.
std::vector<SamplePoint> cached_sample_variety(const std::filesystem::path& cache_dir,
                                               const VarietyConfig& cfg, int n,
                                               double s_weight,
                                               const SampleOptions& opts = {});

} // namespace tvlab
