#include <benchmark/benchmark.h>

#include <tvlab/ball_space.hpp>
#include <tvlab/hilbert_module.hpp>
#include <tvlab/hilbert_series.hpp>
#include <tvlab/restriction.hpp>
#include <tvlab/variety.hpp>

using namespace tvlab;

namespace {

Ideal cone_ideal() { return Ideal({Polynomial::parse("z1^2+z2^2+z3^2", 3)}); }

void BM_ShiftMatrix(benchmark::State& state) {
    const TruncatedSpace space(WeightedBall(3, 0.0), static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto t = shift_matrix(space, 0);
        benchmark::DoNotOptimize(t.mat.data());
    }
    state.SetComplexityN(space.dim());
}
BENCHMARK(BM_ShiftMatrix)->Arg(6)->Arg(10)->Arg(14)->Complexity();

void BM_IdealTruncation(benchmark::State& state) {
    const Ideal ideal = cone_ideal();
    const TruncatedSpace space(WeightedBall(3, 0.0), static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto mod = ideal_truncation(ideal, space);
        benchmark::DoNotOptimize(mod.frame.data());
    }
}
BENCHMARK(BM_IdealTruncation)->Arg(6)->Arg(10)->Arg(14);

void BM_CommutatorSpectrum(benchmark::State& state) {
    const Ideal ideal = cone_ideal();
    const int d = static_cast<int>(state.range(0));
    const TruncatedSpace space(WeightedBall(3, 0.0), d);
    const auto q = quotient_module(ideal, space);
    const auto actions = module_actions(q);
    for (auto _ : state) {
        auto rep = commutator_spectrum(q, actions, 0, 1, {0, d - 2});
        benchmark::DoNotOptimize(rep.singular_values.data());
    }
}
BENCHMARK(BM_CommutatorSpectrum)->Arg(8)->Arg(12);

void BM_SampleVariety(benchmark::State& state) {
    const Ideal ideal = cone_ideal();
    const VarietyConfig cfg(ideal, 1.0, 99);
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto samples = sample_variety(cfg, n, 1.0);
        benchmark::DoNotOptimize(samples.data());
    }
    state.SetComplexityN(n);
}
BENCHMARK(BM_SampleVariety)->Arg(250)->Arg(1000)->Arg(4000)->Complexity();

void BM_RestrictionMatrix(benchmark::State& state) {
    const Ideal ideal = cone_ideal();
    const VarietyConfig cfg(ideal, 1.0, 99);
    const auto samples = sample_variety(cfg, 2000, 1.0);
    const TruncatedSpace space(WeightedBall(3, 0.0), static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto rest = restriction_matrix(space, samples);
        benchmark::DoNotOptimize(rest.R.data());
    }
}
BENCHMARK(BM_RestrictionMatrix)->Arg(4)->Arg(6);

void BM_HilbertFunctionNumeric(benchmark::State& state) {
    const Ideal ideal = cone_ideal();
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(hilbert_function_numeric(ideal, n));
    }
}
BENCHMARK(BM_HilbertFunctionNumeric)->Arg(6)->Arg(10)->Arg(14);

void BM_PolynomialEval(benchmark::State& state) {
    const auto p = Polynomial::parse("z1^2+z2^2+z3^2+z4^3+z5^5", 5);
    const std::vector<Complex> z{0.1, {0.2, 0.1}, 0.05, {0.0, 0.2}, 0.15};
    for (auto _ : state) {
        benchmark::DoNotOptimize(p.eval(z));
    }
}
BENCHMARK(BM_PolynomialEval);

} // namespace

BENCHMARK_MAIN();
