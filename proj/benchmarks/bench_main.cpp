#include <numbers>
#include <string>

#include <benchmark/benchmark.h>

#include "atri/geometry.hpp"
#include "atri/lp.hpp"
#include "atri/native_format.hpp"
#include "atri/solver.hpp"

namespace
{

atri::NativeDocument fixture(const std::string& name)
{
    return atri::read_document(std::string(ATRI_FIXTURE_DIR) + "/" + name + ".atri");
}

const char* const kNames[] = {"fig8", "sister", "m006", "whitehead"};

void BM_Solve(benchmark::State& state)
{
    const auto doc = fixture(kNames[state.range(0)]);
    const auto per = atri::peripheral_curves(doc.triangulation, doc.peripheral);
    for (auto _ : state) benchmark::DoNotOptimize(atri::solve({doc.triangulation, per, {}}).volume);
    state.SetLabel(kNames[state.range(0)]);
}
BENCHMARK(BM_Solve)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_SolveFilled(benchmark::State& state)
{
    const auto doc = fixture("fig8");
    const auto per = atri::peripheral_curves(doc.triangulation, doc.peripheral);
    for (auto _ : state) benchmark::DoNotOptimize(atri::solve({doc.triangulation, per, {{0, 5, 1}}}).volume);
}
BENCHMARK(BM_SolveFilled)->Unit(benchmark::kMicrosecond);

void BM_Lobachevsky(benchmark::State& state)
{
    double x = -std::numbers::pi;
    for (auto _ : state) {
        benchmark::DoNotOptimize(atri::lobachevsky(x));
        x += 1e-3;
        if (x > std::numbers::pi) x = -std::numbers::pi;
    }
}
BENCHMARK(BM_Lobachevsky);

void BM_InitialPoint(benchmark::State& state)
{
    const auto doc = fixture(kNames[state.range(0)]);
    const auto cs = atri::build_constraints(doc.triangulation);
    for (auto _ : state) benchmark::DoNotOptimize(atri::initial_point(cs).margin);
    state.SetLabel(kNames[state.range(0)]);
}
BENCHMARK(BM_InitialPoint)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_SimplexDense(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0)), n = 3 * m;
    Eigen::MatrixXd A = Eigen::MatrixXd::Random(m, n).cwiseAbs();
    const Eigen::VectorXd b = A * Eigen::VectorXd::Ones(n);
    const Eigen::VectorXd c = Eigen::VectorXd::Random(n);
    for (auto _ : state) benchmark::DoNotOptimize(atri::lp::maximize(c, A, b).objective);
}
BENCHMARK(BM_SimplexDense)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
