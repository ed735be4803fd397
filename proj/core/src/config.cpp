#include "tvlab/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "tvlab/errors.hpp"
#include "tvlab/sample_cache.hpp"

namespace tvlab {

namespace {

std::string trim(std::string s) {
    const auto notspace = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), notspace));
    s.erase(std::find_if(s.rbegin(), s.rend(), notspace).base(), s.end());
    return s;
}

template <typename T>
T parse_number(const std::string& value, const std::string& key) {
    T out{};
    const std::string v = trim(value);
    auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw parameter_error("config key '" + key + "' has malformed value '" + value + "'");
    return out;
}

bool parse_bool(const std::string& value, const std::string& key) {
    const std::string v = trim(value);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw parameter_error("config key '" + key + "' expects a boolean, got '" + value + "'");
}

template <typename T>
std::vector<T> parse_list(const std::string& value, const std::string& key) {
    std::vector<T> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_number<T>(item, key));
    }
    return out;
}

} // namespace

ExperimentConfig ExperimentConfig::from_file(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw input_error("cannot open config file: " + path.string());
    ExperimentConfig cfg;
    std::string line, section;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw parameter_error("config line " + std::to_string(line_no) +
                                      ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw parameter_error("config line " + std::to_string(line_no) +
                                  ": expected key = value");
        const std::string key = section + "." + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        if (key == "space.m") cfg.m = parse_number<int>(value, key);
        else if (key == "space.weight") cfg.weight = parse_number<double>(value, key);
        else if (key == "space.degree") cfg.degree = parse_number<int>(value, key);
        else if (key == "ideal.generator") cfg.generators.push_back(value);
        else if (key == "variety.radius") cfg.radius = parse_number<double>(value, key);
        else if (key == "variety.samples") cfg.samples = parse_number<int>(value, key);
        else if (key == "variety.seed") cfg.seed = parse_number<std::uint64_t>(value, key);
        else if (key == "variety.boundary_samples")
            cfg.boundary_samples = parse_number<int>(value, key);
        else if (key == "tolerances.solve") cfg.solve_tol = parse_number<double>(value, key);
        else if (key == "tolerances.rank") cfg.rank_tol = parse_number<double>(value, key);
        else if (key == "tolerances.kernel") cfg.kernel_tol = parse_number<double>(value, key);
        else if (key == "spectra.band_lo") cfg.band_lo = parse_number<int>(value, key);
        else if (key == "spectra.band_hi") cfg.band_hi = parse_number<int>(value, key);
        else if (key == "spectra.schatten_p") cfg.schatten_p = parse_list<double>(value, key);
        else if (key == "extend.degrees") cfg.degree_sweep = parse_list<int>(value, key);
        else if (key == "proxy.lo") cfg.proxy_lo = parse_number<int>(value, key);
        else if (key == "proxy.hi") cfg.proxy_hi = parse_number<int>(value, key);
        else if (key == "jet.variable") cfg.jet_variable = parse_number<int>(value, key);
        else if (key == "jet.orders") cfg.jet_orders = parse_number<int>(value, key);
        else if (key == "run.jobs") cfg.jobs = parse_number<int>(value, key);
        else if (key == "run.out") cfg.out_dir = value;
        else if (key == "run.cache") cfg.cache_dir = value;
        else if (key == "run.emit_gnuplot") cfg.emit_gnuplot = parse_bool(value, key);
        else
            throw parameter_error("config line " + std::to_string(line_no) +
                                  ": unknown key '" + key + "'");
    }
    return cfg;
}

std::string ExperimentConfig::canonical_text() const {
    std::string s;
    auto kv = [&s](const std::string& k, const std::string& v) { s += k + "=" + v + "\n"; };
    kv("extend.degrees", [&] {
        std::string t;
        for (int d : degree_sweep) t += std::to_string(d) + ",";
        return t;
    }());
    for (const auto& g : generators) kv("ideal.generator", g);
    kv("jet.orders", std::to_string(jet_orders));
    kv("jet.variable", std::to_string(jet_variable));
    kv("proxy.hi", std::to_string(proxy_hi));
    kv("proxy.lo", std::to_string(proxy_lo));
    kv("space.degree", std::to_string(degree));
    kv("space.m", std::to_string(m));
    kv("space.weight", format_double(weight));
    kv("spectra.band_hi", std::to_string(band_hi));
    kv("spectra.band_lo", std::to_string(band_lo));
    kv("spectra.schatten_p", [&] {
        std::string t;
        for (double p : schatten_p) t += format_double(p) + ",";
        return t;
    }());
    kv("tolerances.kernel", format_double(kernel_tol));
    kv("tolerances.rank", format_double(rank_tol));
    kv("tolerances.solve", format_double(solve_tol));
    kv("variety.boundary_samples", std::to_string(boundary_samples));
    kv("variety.radius", format_double(radius));
    kv("variety.samples", std::to_string(samples));
    kv("variety.seed", std::to_string(seed));
    return s;
}

std::uint64_t ExperimentConfig::hash() const { return fnv1a64(canonical_text()); }

Ideal ExperimentConfig::make_ideal() const {
    if (generators.empty()) throw input_error("config defines no ideal generators");
    std::vector<Polynomial> gens;
    gens.reserve(generators.size());
    for (const auto& text : generators) gens.push_back(Polynomial::parse(text, m));
    return Ideal(std::move(gens));
}

std::vector<int> ExperimentConfig::effective_degree_sweep() const {
    return degree_sweep.empty() ? std::vector<int>{degree} : degree_sweep;
}

void ExperimentConfig::validate() const {
    if (m < 1) throw parameter_error("space.m must be >= 1");
    if (!(weight > -1.0)) throw parameter_error("space.weight must be > -1");
    if (degree < 0) throw parameter_error("space.degree must be >= 0");
    if (!(radius > 0.0)) throw parameter_error("variety.radius must be positive");
    if (!(solve_tol > 0.0 && rank_tol > 0.0 && kernel_tol > 0.0))
        throw parameter_error("all tolerances must be positive");
    if (jobs < 1) throw parameter_error("run.jobs must be >= 1");
    if (!generators.empty()) {
        const Ideal ideal = make_ideal();
        if (ideal.max_degree() > degree)
            throw parameter_error("space.degree is below the maximal generator degree");
    }
}

} // namespace tvlab
