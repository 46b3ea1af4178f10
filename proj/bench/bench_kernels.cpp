// Parallel kernels against their serial references.

#include "fltz/ccc.hpp"
#include "fltz/euler.hpp"
#include "fltz/microlocal.hpp"
#include "fltz/parallel.hpp"

#include <benchmark/benchmark.h>

using namespace fltz;

namespace {

Fan p2() { return Fan::from_max_cones(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}}); }

void BM_TwistSum(benchmark::State& state) {
    Fan F = p2();
    Divisor O{{0, 0, 0}}, D{{state.range(0), 0, 0}};
    for (auto _ : state) benchmark::DoNotOptimize(hom_nonequivariant(F, O, D));
}
BENCHMARK(BM_TwistSum)->Arg(2)->Arg(6)->Arg(10);

void BM_TwistSumSerial(benchmark::State& state) {
    Fan F = p2();
    Divisor O{{0, 0, 0}}, D{{state.range(0), 0, 0}};
    for (auto _ : state) benchmark::DoNotOptimize(hom_nonequivariant_serial(F, O, D));
}
BENCHMARK(BM_TwistSumSerial)->Arg(2)->Arg(6)->Arg(10);

struct ConvolutionInput {
    std::shared_ptr<const StrataPoset> S;
    ConstructibleFunction a, b;
};

ConvolutionInput convolution_input() {
    Fan F = p2();
    Divisor D1{{1, 0, 0}}, D2{{1, 1, 0}};
    auto S = std::make_shared<const StrataPoset>(fltz_arrangement(F, morelli_window(F, {{D1 + D2, 1}})));
    return {S, morelli_map(F, {{D1, 1}}, S), morelli_map(F, {{D2, 1}}, S)};
}

void BM_Convolution(benchmark::State& state) {
    auto in = convolution_input();
    for (auto _ : state) benchmark::DoNotOptimize(euler_convolution(in.a, in.b, in.S));
}
BENCHMARK(BM_Convolution)->Unit(benchmark::kMillisecond);

void BM_ConvolutionSerial(benchmark::State& state) {
    auto in = convolution_input();
    for (auto _ : state) benchmark::DoNotOptimize(euler_convolution_serial(in.a, in.b, in.S));
}
BENCHMARK(BM_ConvolutionSerial)->Unit(benchmark::kMillisecond);

void BM_Microsupport(benchmark::State& state) {
    Fan F = p2();
    auto S = std::make_shared<const StrataPoset>(fltz_arrangement(F, Window::cube(2, Rat(-3), Rat(4))));
    auto K = kappa_line_bundle(F, Divisor{{1, 1, 1}}, S);
    auto T = test_fan(F);
    for (auto _ : state) benchmark::DoNotOptimize(microsupport_at(K, {Rat(0), Rat(0)}, T));
}
BENCHMARK(BM_Microsupport)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
    configure_threads();
    benchmark::Initialize(&argc, argv);
    benchmark::RunSpecifiedBenchmarks();
    benchmark::Shutdown();
    return 0;
}
