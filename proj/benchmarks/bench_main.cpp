#include <benchmark/benchmark.h>

#include "relcone/cone.hpp"
#include "relcone/cyclotomic.hpp"
#include "relcone/series.hpp"

using relcone::Cyclotomic;
using relcone::Rational;
using relcone::Series;

namespace {

relcone::Branch germ(const std::string& label, std::initializer_list<const char*> coords) {
    std::vector<Series> s;
    for (const char* c : coords) s.push_back(Series::parse(c));
    return relcone::make_branch(label, std::move(s));
}

void BM_cyclotomic_multiply(benchmark::State& state) {
    const long n = state.range(0);
    const Cyclotomic a = Cyclotomic(Rational(3, 7)) + Cyclotomic::root_of_unity(n, 1);
    const Cyclotomic b = Cyclotomic(Rational(-2, 5)) * Cyclotomic::root_of_unity(n, 3) + Cyclotomic(1);
    for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_cyclotomic_multiply)->Arg(4)->Arg(12)->Arg(60)->Arg(120);

void BM_kth_root(benchmark::State& state) {
    const Series s = Series::parse("1 + 2*t - 1/3*t^2 + z3^1*t^5 + t^7");
    for (auto _ : state) benchmark::DoNotOptimize(relcone::kth_root(s, 3, state.range(0)));
}
BENCHMARK(BM_kth_root)->Arg(30)->Arg(60);

void BM_revert(benchmark::State& state) {
    const Series f = Series::parse("t + 1/2*t^2 - t^3 + z4^1*t^6");
    for (auto _ : state) benchmark::DoNotOptimize(relcone::revert(f, state.range(0)));
}
BENCHMARK(BM_revert)->Arg(30)->Arg(60);

void BM_cone_cusp_pair(benchmark::State& state) {
    const auto x = germ("X", {"t^2", "t^3", "0"});
    const auto y = germ("Y", {"t^2", "0", "t^3"});
    for (auto _ : state) benchmark::DoNotOptimize(relcone::cone_pair(x, y));
}
BENCHMARK(BM_cone_cusp_pair);

void BM_cone_higher_multiplicity(benchmark::State& state) {
    const auto x = germ("X", {"t^4", "t^6 + t^7", "t^9"});
    const auto y = germ("Y", {"t^3", "t^5", "t^4 + t^7"});
    for (auto _ : state) benchmark::DoNotOptimize(relcone::cone_pair(x, y));
}
BENCHMARK(BM_cone_higher_multiplicity);

}  // namespace
BENCHMARK_MAIN();
