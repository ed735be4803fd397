// tvlab: numerical experiments on weighted Bergman spaces, polynomial zero
// varieties, and their truncated Hilbert modules.
//
// Commands: check-assumption, norms, spectra, kernel, extend, proxy,
// report-merge. Exit codes: 0 ok, 2 assumption fail, 3 sampling failure,
// 4 parameter error, 5 conditioning error.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include <tvlab/ball_space.hpp>
#include <tvlab/config.hpp>
#include <tvlab/errors.hpp>
#include <tvlab/hilbert_module.hpp>
#include <tvlab/hilbert_series.hpp>
#include <tvlab/linalg.hpp>
#include <tvlab/restriction.hpp>
#include <tvlab/sample_cache.hpp>
#include <tvlab/variety.hpp>
#include <tvlab/version.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace tvlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssumptionFail = 2;
constexpr int kExitSampling = 3;
constexpr int kExitParameter = 4;
constexpr int kExitConditioning = 5;

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

struct Timings {
    std::vector<std::pair<std::string, double>> entries;
    std::chrono::steady_clock::time_point mark = std::chrono::steady_clock::now();

    void lap(const std::string& name) {
        const auto now = std::chrono::steady_clock::now();
        entries.emplace_back(name,
                             std::chrono::duration<double>(now - mark).count());
        mark = now;
    }
};

// The canonical report file is byte-stable for a fixed (config, seed, version):
// wall times go to a sidecar so they cannot perturb it.
void write_reports(const ExperimentConfig& cfg, const std::string& command,
                   const json& results, const Timings& timings) {
    fs::create_directories(cfg.out_dir);
    json report;
    report["command"] = command;
    report["config"] = cfg.canonical_text();
    report["config_hash"] = hex64(cfg.hash());
    report["results"] = results;
    report["version"] = tvlab::version;
    {
        std::ofstream os(fs::path(cfg.out_dir) / (command + ".report.json"));
        os << report.dump(2) << "\n";
    }
    json side;
    for (const auto& [name, seconds] : timings.entries) side[name] = seconds;
    std::ofstream os(fs::path(cfg.out_dir) / (command + ".timings.json"));
    os << side.dump(2) << "\n";
}

void write_text(const fs::path& file, const std::string& content) {
    std::ofstream os(file);
    os << content;
}

std::string gnuplot_preamble(const std::string& title) {
    return "set datafile separator ','\nset key outside\nset title '" + title + "'\n";
}

json sample_meta(const ExperimentConfig& cfg, const SampleCacheKey& key) {
    json meta;
    meta["cache_key"] = key.file_name();
    meta["ideal_hash"] = hex64(key.ideal);
    meta["radius"] = key.radius;
    meta["weight"] = key.s_weight;
    meta["count"] = key.count;
    meta["seed"] = key.seed;
    meta["cache_dir"] = cfg.cache_dir;
    return meta;
}

std::vector<SamplePoint> obtain_samples(const ExperimentConfig& cfg, const Ideal& ideal,
                                        double s_weight, SampleCacheKey* key_out) {
    VarietyConfig vcfg(ideal, cfg.radius, cfg.seed);
    SampleOptions opts;
    opts.solve_tol = cfg.solve_tol;
    const SampleCacheKey key{ideal_hash(ideal), cfg.radius, s_weight, cfg.samples, cfg.seed};
    if (key_out) *key_out = key;
    return cached_sample_variety(cfg.cache_dir, vcfg, cfg.samples, s_weight, opts);
}

// ---------------------------------------------------------------- commands

int cmd_check_assumption(const ExperimentConfig& cfg) {
    Timings timings;
    const Ideal ideal = cfg.make_ideal();
    VarietyConfig vcfg(ideal, cfg.radius, cfg.seed);
    CheckOptions opts;
    opts.solve_tol = cfg.solve_tol;
    const auto report = check_assumption(vcfg, cfg.boundary_samples, opts);
    timings.lap("check_assumption");

    json results;
    results["pass"] = report.pass;
    results["codim_ok"] = report.codim_ok;
    results["empty_link"] = report.empty_link;
    results["boundary_points"] = report.boundary_points;
    results["min_jacobian_sv"] = report.min_jacobian_sv;
    results["transversality_margin"] = report.transversality_margin;
    results["reasons"] = report.reasons;
    write_reports(cfg, "check-assumption", results, timings);

    std::cout << "assumption check: " << (report.pass ? "pass" : "FAIL") << "\n"
              << "  codimension ok      : " << (report.codim_ok ? "yes" : "no") << "\n"
              << "  boundary points     : " << report.boundary_points << "\n"
              << "  min Jacobian sv     : " << format_double(report.min_jacobian_sv) << "\n"
              << "  transversal margin  : " << format_double(report.transversality_margin)
              << "\n";
    for (const auto& reason : report.reasons) std::cout << "  reason: " << reason << "\n";

    if (report.empty_link) return kExitSampling;
    return report.pass ? kExitOk : kExitAssumptionFail;
}

int cmd_norms(const ExperimentConfig& cfg) {
    Timings timings;
    const TruncatedSpace space(WeightedBall(cfg.m, cfg.weight), cfg.degree);
    std::string csv = "monomial,degree,norm2\n";
    json rows = json::array();
    for (int a = 0; a < space.dim(); ++a) {
        const auto& mono = space.monomial(a);
        const double n2 = space.norm(a) * space.norm(a);
        std::string label;
        for (int j = 0; j < cfg.m; ++j) {
            if (mono[j] == 0) continue;
            if (!label.empty()) label += "*";
            label += "z" + std::to_string(j + 1);
            if (mono[j] > 1) label += "^" + std::to_string(mono[j]);
        }
        if (label.empty()) label = "1";
        csv += label + "," + std::to_string(mono.degree()) + "," + format_double(n2) + "\n";
        rows.push_back({{"monomial", label}, {"degree", mono.degree()}, {"norm2", n2}});
    }
    timings.lap("norms");
    fs::create_directories(cfg.out_dir);
    write_text(fs::path(cfg.out_dir) / "norms.csv", csv);
    if (cfg.emit_gnuplot)
        write_text(fs::path(cfg.out_dir) / "norms.gp",
                   gnuplot_preamble("monomial norms") + "set logscale y\n" +
                       "plot 'norms.csv' using 2:3 skip 1 with points title 'norm2'\n");

    json results;
    results["dim"] = space.dim();
    results["rows"] = rows;
    write_reports(cfg, "norms", results, timings);
    std::cout << "norms: " << space.dim() << " basis monomials, degree <= " << cfg.degree
              << " (norms.csv written)\n";
    return kExitOk;
}

int cmd_spectra(const ExperimentConfig& cfg) {
    Timings timings;
    const TruncatedSpace space(WeightedBall(cfg.m, cfg.weight), cfg.degree);
    const int band_lo = cfg.effective_band_lo();
    const int band_hi = cfg.effective_band_hi();

    TruncatedModule module =
        cfg.generators.empty() ? full_module(space)
                               : quotient_module(cfg.make_ideal(), space, cfg.rank_tol);
    const auto actions = module_actions(module);
    timings.lap("module");

    struct PairResult {
        int i = 0, j = 0;
        SpectrumReport band_report;
        std::vector<std::pair<int, double>> shell_norms;
        double slope = 0.0;
    };
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < cfg.m; ++i)
        for (int j = 0; j < cfg.m; ++j) pairs.emplace_back(i, j);

    auto run_pair = [&](int i, int j) {
        PairResult res;
        res.i = i;
        res.j = j;
        res.band_report = commutator_spectrum(module, actions, i, j, {band_lo, band_hi},
                                              cfg.schatten_p);
        std::vector<double> xs, ys;
        for (int n = std::max(band_lo, 1); n <= band_hi; ++n) {
            const auto shell = commutator_spectrum(module, actions, i, j, {n, n}, {});
            if (shell.singular_values.size() == 0) continue;
            const double top = shell.singular_values(0);
            res.shell_norms.emplace_back(n, top);
            if (top > 0.0) {
                xs.push_back(std::log(n + cfg.m + cfg.weight + 1.0));
                ys.push_back(std::log(top));
            }
        }
        if (xs.size() >= 2) res.slope = fit_slope(xs, ys);
        return res;
    };

    std::vector<PairResult> results_by_pair(pairs.size());
    if (cfg.jobs > 1) {
        std::vector<std::future<PairResult>> futures;
        futures.reserve(pairs.size());
        for (auto [i, j] : pairs)
            futures.push_back(std::async(std::launch::async, run_pair, i, j));
        for (std::size_t p = 0; p < pairs.size(); ++p) results_by_pair[p] = futures[p].get();
    } else {
        for (std::size_t p = 0; p < pairs.size(); ++p)
            results_by_pair[p] = run_pair(pairs[p].first, pairs[p].second);
    }
    timings.lap("spectra");

    std::string csv = "d,band_lo,band_hi,i,j,k,sigma\n";
    std::string shell_csv = "d,i,j,n,sigma1\n";
    json summary = json::array();
    for (const auto& res : results_by_pair) {
        const auto& sv = res.band_report.singular_values;
        for (Eigen::Index k = 0; k < sv.size(); ++k)
            csv += std::to_string(cfg.degree) + "," + std::to_string(band_lo) + "," +
                   std::to_string(band_hi) + "," + std::to_string(res.i + 1) + "," +
                   std::to_string(res.j + 1) + "," + std::to_string(k) + "," +
                   format_double(sv(k)) + "\n";
        for (const auto& [n, top] : res.shell_norms)
            shell_csv += std::to_string(cfg.degree) + "," + std::to_string(res.i + 1) + "," +
                         std::to_string(res.j + 1) + "," + std::to_string(n) + "," +
                         format_double(top) + "\n";
        json entry;
        entry["i"] = res.i + 1;
        entry["j"] = res.j + 1;
        entry["sigma_max"] = sv.size() ? sv(0) : 0.0;
        entry["decay_slope"] = res.slope;
        json sums;
        for (const auto& [p, sum] : res.band_report.schatten_sums)
            sums[format_double(p)] = sum;
        entry["schatten_sums"] = sums;
        summary.push_back(entry);
    }

    fs::create_directories(cfg.out_dir);
    write_text(fs::path(cfg.out_dir) / "spectra.csv", csv);
    write_text(fs::path(cfg.out_dir) / "shell_norms.csv", shell_csv);
    if (cfg.emit_gnuplot) {
        write_text(fs::path(cfg.out_dir) / "spectra.gp",
                   gnuplot_preamble("commutator singular values") + "set logscale y\n" +
                       "plot 'spectra.csv' using 6:7 skip 1 with points title 'sigma_k'\n");
        write_text(fs::path(cfg.out_dir) / "shell_norms.gp",
                   gnuplot_preamble("band norms by degree") + "set logscale xy\n" +
                       "plot 'shell_norms.csv' using 4:5 skip 1 with linespoints title "
                       "'sigma1(n)'\n");
    }

    json results;
    results["module"] = cfg.generators.empty() ? "full" : "quotient";
    results["filtered"] = module.filtered;
    results["rank_warning"] = module.rank_warning;
    results["band"] = {band_lo, band_hi};
    results["pairs"] = summary;
    write_reports(cfg, "spectra", results, timings);

    std::cout << "spectra: " << pairs.size() << " pairs on band [" << band_lo << ","
              << band_hi << "], module=" << (cfg.generators.empty() ? "full" : "quotient")
              << "\n";
    for (const auto& res : results_by_pair)
        std::cout << "  [" << res.i + 1 << "," << res.j + 1
                  << "] sigma_max=" << format_double(res.band_report.singular_values.size()
                                                         ? res.band_report.singular_values(0)
                                                         : 0.0)
                  << " decay_slope=" << format_double(res.slope) << "\n";
    return kExitOk;
}

int cmd_kernel(const ExperimentConfig& cfg) {
    Timings timings;
    const Ideal ideal = cfg.make_ideal();
    const TruncatedSpace space(WeightedBall(cfg.m, cfg.weight), cfg.degree);

    json results;
    if (cfg.jet_variable > 0) {
        // jet path: kernel of the jet map against the ideal truncation
        const int var = cfg.jet_variable - 1;
        int kernel_dim = 0;
        for (int a = 0; a < space.dim(); ++a) {
            const auto jets = jet_restriction(
                space.from_coordinates(Eigen::VectorXcd::Unit(space.dim(), a)), var,
                cfg.jet_orders);
            bool vanishes = true;
            for (const auto& jet : jets) vanishes = vanishes && jet.is_zero();
            kernel_dim += vanishes ? 1 : 0;
        }
        const auto imod = ideal_truncation(ideal, space, cfg.rank_tol);
        timings.lap("jet_kernel");
        results["mode"] = "jet";
        results["jet_variable"] = cfg.jet_variable;
        results["jet_orders"] = cfg.jet_orders;
        results["dim_kernel"] = kernel_dim;
        results["dim_ideal"] = imod.rank();
        results["dimension_gap"] = kernel_dim - imod.rank();
        results["match"] = kernel_dim == imod.rank();
        write_reports(cfg, "kernel", results, timings);
        std::cout << "jet kernel: dim " << kernel_dim << " vs ideal truncation "
                  << imod.rank() << (kernel_dim == imod.rank() ? " (match)" : " (GAP)")
                  << "\n";
        return kExitOk;
    }

    const double s_variety = static_cast<double>(ideal.generator_count());
    SampleCacheKey key{};
    const auto samples = obtain_samples(cfg, ideal, s_variety, &key);
    timings.lap("sampling");

    const auto rest = restriction_matrix(space, samples, cfg.rank_tol, s_variety);
    const auto ker = kernel_of_R(rest, space, cfg.kernel_tol);
    const auto imod = ideal_truncation(ideal, space, cfg.rank_tol);
    const auto angles = principal_angles(ker.frame, imod.frame);
    timings.lap("kernel");

    results["mode"] = "restriction";
    results["samples"] = sample_meta(cfg, key);
    results["rank_R"] = rest.rank;
    results["restriction_norm"] = rest.norm();
    results["dim_kernel"] = ker.rank();
    results["dim_ideal"] = imod.rank();
    results["dimension_gap"] = ker.rank() - imod.rank();
    results["max_principal_angle"] = angles.empty() ? 0.0 : angles.back();
    results["kernel_ambiguity_warning"] = ker.rank_warning;
    json angle_list = json::array();
    for (double a : angles) angle_list.push_back(a);
    results["principal_angles"] = angle_list;
    write_reports(cfg, "kernel", results, timings);

    std::cout << "kernel of R: dim " << ker.rank() << " vs ideal truncation " << imod.rank()
              << ", gap " << ker.rank() - imod.rank() << ", max angle "
              << format_double(angles.empty() ? 0.0 : angles.back()) << "\n";
    return kExitOk;
}

int cmd_extend(const ExperimentConfig& cfg) {
    Timings timings;
    const Ideal ideal = cfg.make_ideal();
    const double s_variety = static_cast<double>(ideal.generator_count());
    SampleCacheKey key{};
    const auto samples = obtain_samples(cfg, ideal, s_variety, &key);
    timings.lap("sampling");

    json sweep = json::array();
    std::vector<double> norms;
    for (int d : cfg.effective_degree_sweep()) {
        const TruncatedSpace space(WeightedBall(cfg.m, cfg.weight), d);
        const auto rest = restriction_matrix(space, samples, cfg.rank_tol, s_variety);
        const auto ext = extension_pinv(rest);
        const Eigen::MatrixXcd er = ext.E * rest.R;
        json entry;
        entry["degree"] = d;
        entry["rank_R"] = rest.rank;
        entry["re_defect"] = ext.re_defect;
        entry["er_hermitian_defect"] = (er - er.adjoint()).cwiseAbs().maxCoeff();
        entry["er_idempotent_defect"] = (er * er - er).cwiseAbs().maxCoeff();
        entry["extension_norm"] = ext.norm;
        sweep.push_back(entry);
        norms.push_back(ext.norm);
    }
    timings.lap("extension");

    double mean = 0.0;
    for (double v : norms) mean += v;
    mean /= static_cast<double>(norms.size());
    double max_dev = 0.0;
    for (double v : norms) max_dev = std::max(max_dev, std::abs(v - mean) / mean);

    json results;
    results["samples"] = sample_meta(cfg, key);
    results["sweep"] = sweep;
    results["extension_norm_mean"] = mean;
    results["extension_norm_max_rel_dev"] = max_dev;
    write_reports(cfg, "extend", results, timings);

    std::cout << "extension sweep over " << norms.size() << " degrees: ||E|| mean "
              << format_double(mean) << ", max rel dev " << format_double(max_dev) << "\n";
    for (const auto& entry : sweep)
        std::cout << "  d=" << entry["degree"] << " rank=" << entry["rank_R"]
                  << " RE defect=" << format_double(entry["re_defect"].get<double>())
                  << " ||E||=" << format_double(entry["extension_norm"].get<double>())
                  << "\n";
    return kExitOk;
}

int cmd_proxy(const ExperimentConfig& cfg) {
    Timings timings;
    std::optional<Ideal> ideal;
    std::vector<int> degrees;
    if (!cfg.generators.empty()) {
        ideal = cfg.make_ideal();
        degrees = ideal->degrees;
    }
    const int hi = cfg.proxy_hi < 0 ? cfg.degree : cfg.proxy_hi;
    const auto report =
        euler_proxy_check(ideal, cfg.m, degrees, cfg.proxy_lo, hi, cfg.degree);
    timings.lap("proxy");

    std::string csv = "n,quotient_dim,series_coeff,polynomial_value\n";
    json rows = json::array();
    for (const auto& row : report.rows) {
        csv += std::to_string(row.n) + "," + std::to_string(row.quotient_dim) + "," +
               std::to_string(row.series_coeff) + "," + std::to_string(row.polynomial_value) +
               "\n";
        rows.push_back({{"n", row.n},
                        {"quotient_dim", row.quotient_dim},
                        {"series_coeff", row.series_coeff},
                        {"polynomial_value", row.polynomial_value}});
    }
    fs::create_directories(cfg.out_dir);
    write_text(fs::path(cfg.out_dir) / "proxy.csv", csv);
    if (cfg.emit_gnuplot)
        write_text(fs::path(cfg.out_dir) / "proxy.gp",
                   gnuplot_preamble("graded dimensions") +
                       "plot 'proxy.csv' using 1:2 skip 1 with linespoints title 'quotient',"
                       " 'proxy.csv' using 1:3 skip 1 with points title 'series',"
                       " 'proxy.csv' using 1:4 skip 1 with points title 'polynomial'\n");

    json results;
    results["pass"] = report.pass;
    results["regularity"] = report.regularity;
    results["rows"] = rows;
    write_reports(cfg, "proxy", results, timings);

    std::cout << "euler proxy: " << (report.pass ? "pass" : "MISMATCH") << ", regularity "
              << report.regularity << "\n";
    std::cout << "  n | quotient | series | polynomial\n";
    for (const auto& row : report.rows)
        std::cout << "  " << row.n << " | " << row.quotient_dim << " | " << row.series_coeff
                  << " | " << row.polynomial_value << "\n";
    return kExitOk;
}

int cmd_report_merge(const ExperimentConfig& cfg, const std::vector<std::string>& files) {
    Timings timings;
    json merged;
    merged["version"] = tvlab::version;
    merged["reports"] = json::array();
    for (const auto& file : files) {
        std::ifstream is(file);
        if (!is) throw input_error("cannot open report file: " + file);
        json j;
        is >> j;
        merged["reports"].push_back(j);
    }
    timings.lap("merge");
    fs::create_directories(cfg.out_dir);
    std::ofstream os(fs::path(cfg.out_dir) / "merged.report.json");
    os << merged.dump(2) << "\n";
    std::cout << "merged " << files.size() << " reports\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"truncated Hilbert-module laboratory on weighted Bergman spaces"};
    app.require_subcommand(1);

    std::string config_path;
    ExperimentConfig overrides;

    // flags shared by every subcommand; they override config-file keys
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "experiment config file")
            ->check(CLI::ExistingFile);
        sub->add_option("--seed", overrides.seed, "RNG seed");
        sub->add_option("--degree", overrides.degree, "truncation degree");
        sub->add_option("--weight", overrides.weight, "ball weight exponent s");
        sub->add_option("--samples", overrides.samples, "variety sample count");
        sub->add_option("--jobs", overrides.jobs, "parallel jobs for independent spectra");
        sub->add_option("--cache", overrides.cache_dir, "sample cache directory");
        sub->add_option("--out", overrides.out_dir, "report output directory");
        sub->add_flag("--emit-gnuplot", overrides.emit_gnuplot, "write gnuplot scripts");
    };

    auto* c_check = app.add_subcommand("check-assumption",
                                       "verify rank/transversality/codimension");
    auto* c_norms = app.add_subcommand("norms", "monomial norm table");
    auto* c_spectra = app.add_subcommand("spectra", "commutator spectra and decay slopes");
    auto* c_kernel = app.add_subcommand("kernel", "kernel of R vs ideal truncation");
    auto* c_extend = app.add_subcommand("extend", "minimal-norm extension diagnostics");
    auto* c_proxy = app.add_subcommand("proxy", "graded-dimension proxy table");
    auto* c_merge = app.add_subcommand("report-merge", "merge report JSON files");
    std::vector<std::string> merge_files;
    c_merge->add_option("files", merge_files, "report files to merge")->required();
    for (auto* sub : {c_check, c_norms, c_spectra, c_kernel, c_extend, c_proxy, c_merge})
        add_common(sub);

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig cfg;
        bool has_config = false;
        if (!config_path.empty()) {
            cfg = ExperimentConfig::from_file(config_path);
            has_config = true;
        }
        // apply only flags the user actually passed
        auto* sub = app.get_subcommands().front();
        if (sub->count("--seed")) cfg.seed = overrides.seed;
        if (sub->count("--degree")) cfg.degree = overrides.degree;
        if (sub->count("--weight")) cfg.weight = overrides.weight;
        if (sub->count("--samples")) cfg.samples = overrides.samples;
        if (sub->count("--jobs")) cfg.jobs = overrides.jobs;
        if (sub->count("--cache")) cfg.cache_dir = overrides.cache_dir;
        if (sub->count("--out")) cfg.out_dir = overrides.out_dir;
        if (sub->count("--emit-gnuplot")) cfg.emit_gnuplot = true;
        if (!has_config && (sub == c_check || sub == c_kernel || sub == c_extend))
            throw parameter_error("this command requires --config with an ideal");
        cfg.validate();

        if (sub == c_check) return cmd_check_assumption(cfg);
        if (sub == c_norms) return cmd_norms(cfg);
        if (sub == c_spectra) return cmd_spectra(cfg);
        if (sub == c_kernel) return cmd_kernel(cfg);
        if (sub == c_extend) return cmd_extend(cfg);
        if (sub == c_proxy) return cmd_proxy(cfg);
        if (sub == c_merge) return cmd_report_merge(cfg, merge_files);
        return kExitParameter;
    } catch (const parameter_error& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const tvlab::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const sampling_error& e) {
        std::cerr << "sampling error: " << e.what() << "\n";
        return kExitSampling;
    } catch (const conditioning_error& e) {
        std::cerr << "conditioning error: " << e.what() << "\n";
        return kExitConditioning;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParameter;
    }
}
