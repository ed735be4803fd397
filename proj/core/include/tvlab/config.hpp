#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tvlab/polynomial.hpp"

namespace tvlab {

/// One experiment: space, ideal, sampling, tolerances, bands, output.
/// Parsed from flat `key = value` text with [section] headers; CLI flags
/// override file keys.
struct ExperimentConfig {
    // [space]
    int m = 3;
    double weight = 0.0;
    int degree = 6;
    // [ideal] generator = ... (repeatable)
    std::vector<std::string> generators;
    // [variety]
    double radius = 1.0;
    int samples = 4000;
    std::uint64_t seed = 1;
    int boundary_samples = 64;
    // [tolerances]
    double solve_tol = 1e-10;
    double rank_tol = 1e-10;
    double kernel_tol = 1e-6;
    // [spectra]
    int band_lo = -1; // -1: detect [0, degree-2]
    int band_hi = -1;
    std::vector<double> schatten_p = {1.0, 2.0, 3.0};
    // [extend]
    std::vector<int> degree_sweep; // empty: just `degree`
    // [proxy]
    int proxy_lo = 0;
    int proxy_hi = -1; // -1: degree
    // [jet]
    int jet_variable = 0;      // 1-based; 0 disables the jet path
    int jet_orders = 2;
    // [run]
    int jobs = 1;
    std::string out_dir = ".";
    std::string cache_dir;
    bool emit_gnuplot = false;

    static ExperimentConfig from_file(const std::filesystem::path& path);

    /// Sorted canonical key=value echo; hashing and report determinism use it.
    std::string canonical_text() const;
    std::uint64_t hash() const;

    Ideal make_ideal() const; // throws input_error when no generators are set
    int effective_band_lo() const { return band_lo < 0 ? 0 : band_lo; }
    int effective_band_hi() const { return band_hi < 0 ? degree - 2 : band_hi; }
    std::vector<int> effective_degree_sweep() const;
    void validate() const; // throws parameter_error on inconsistent settings
};

} // namespace tvlab
