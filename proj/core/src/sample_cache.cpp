#include "tvlab/sample_cache.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "tvlab/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "cache files are little-endian; this build targets LE hosts");

namespace tvlab {

namespace {

constexpr char kMagic[5] = {'T', 'V', 'L', 'B', '1'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v;
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

} // namespace

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t ideal_hash(const Ideal& ideal) {
    std::string canon = "m=" + std::to_string(ideal.dim);
    for (const auto& g : ideal.generators) canon += ";" + g.to_string();
    return fnv1a64(canon);
}

std::string SampleCacheKey::file_name() const {
    std::string canon = "ideal=" + std::to_string(ideal) + ";eps=" + format_double(radius) +
                        ";s=" + format_double(s_weight) + ";n=" + std::to_string(count) +
                        ";seed=" + std::to_string(seed);
    const std::uint64_t h = fnv1a64(canon);
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string("samples_") + buf + ".tvlb";
}

void save_samples(const std::filesystem::path& file, const SampleCacheKey& key,
                  std::span<const SamplePoint> samples) {
    std::ofstream os(file, std::ios::binary | std::ios::trunc);
    if (!os) throw input_error("cannot open cache file for writing: " + file.string());
    os.write(kMagic, sizeof(kMagic));
    put(os, kVersion);
    put(os, key.ideal);
    put(os, key.radius);
    put(os, key.s_weight);
    put(os, key.count);
    put(os, key.seed);
    const std::int64_t n = static_cast<std::int64_t>(samples.size());
    const std::int64_t m = n > 0 ? static_cast<std::int64_t>(samples[0].z.size()) : 0;
    put(os, n);
    put(os, m);
    // columnar payload: per variable all re then all im, then weights,
    // residuals, boundary flags
    for (std::int64_t j = 0; j < m; ++j) {
        for (std::int64_t p = 0; p < n; ++p)
            put(os, samples[static_cast<std::size_t>(p)].z(static_cast<Eigen::Index>(j)).real());
        for (std::int64_t p = 0; p < n; ++p)
            put(os, samples[static_cast<std::size_t>(p)].z(static_cast<Eigen::Index>(j)).imag());
    }
    for (std::int64_t p = 0; p < n; ++p) put(os, samples[static_cast<std::size_t>(p)].weight);
    for (std::int64_t p = 0; p < n; ++p) put(os, samples[static_cast<std::size_t>(p)].residual);
    for (std::int64_t p = 0; p < n; ++p)
        put(os, static_cast<std::uint8_t>(samples[static_cast<std::size_t>(p)].on_boundary));
    if (!os) throw input_error("cache write failed: " + file.string());
}

std::optional<std::vector<SamplePoint>> load_samples(const std::filesystem::path& file,
                                                     const SampleCacheKey& key) {
    std::ifstream is(file, std::ios::binary);
    if (!is) return std::nullopt;
    char magic[5];
    is.read(magic, sizeof(magic));
    if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw input_error("bad cache magic in " + file.string());
    if (get<std::uint32_t>(is) != kVersion)
        throw input_error("unsupported cache version in " + file.string());
    if (get<std::uint64_t>(is) != key.ideal || get<double>(is) != key.radius ||
        get<double>(is) != key.s_weight || get<std::int64_t>(is) != key.count ||
        get<std::uint64_t>(is) != key.seed)
        throw input_error("cache key mismatch in " + file.string());

    const std::int64_t n = get<std::int64_t>(is);
    const std::int64_t m = get<std::int64_t>(is);
    std::vector<SamplePoint> samples(static_cast<std::size_t>(n));
    for (auto& sp : samples) sp.z = Eigen::VectorXcd(m);
    for (std::int64_t j = 0; j < m; ++j) {
        std::vector<double> re(static_cast<std::size_t>(n)), im(static_cast<std::size_t>(n));
        for (auto& v : re) v = get<double>(is);
        for (auto& v : im) v = get<double>(is);
        for (std::int64_t p = 0; p < n; ++p)
            samples[static_cast<std::size_t>(p)].z(static_cast<Eigen::Index>(j)) =
                Complex(re[static_cast<std::size_t>(p)], im[static_cast<std::size_t>(p)]);
    }
    for (auto& sp : samples) sp.weight = get<double>(is);
    for (auto& sp : samples) sp.residual = get<double>(is);
    for (auto& sp : samples) sp.on_boundary = get<std::uint8_t>(is) != 0;
    if (!is) throw input_error("cache file truncated: " + file.string());
    return samples;
}

std::vector<SamplePoint> cached_sample_variety(const std::filesystem::path& cache_dir,
                                               const VarietyConfig& cfg, int n,
                                               double s_weight, const SampleOptions& opts) {
    if (cache_dir.empty()) return sample_variety(cfg, n, s_weight, opts);
    const SampleCacheKey key{ideal_hash(cfg.ideal), cfg.radius, s_weight, n, cfg.seed};
    const auto file = cache_dir / key.file_name();
    if (auto hit = load_samples(file, key)) return std::move(*hit);
    auto samples = sample_variety(cfg, n, s_weight, opts);
    std::filesystem::create_directories(cache_dir);
    save_samples(file, key, samples);
    return samples;
}

} // namespace tvlab
