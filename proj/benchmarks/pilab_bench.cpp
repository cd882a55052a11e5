#include <benchmark/benchmark.h>

#include <random>

#include "pilab/catalog.hpp"
#include "pilab/codim.hpp"
#include "pilab/grassmann.hpp"
#include "pilab/tideal.hpp"
#include "pilab/witnesses.hpp"

using namespace pilab;

namespace {

struct EvalCase {
  std::shared_ptr<const SuperAlgebra> B;
  MultilinearPoly f;
  std::vector<Vector> elems;
  std::vector<int> parities;
};

EvalCase eval_case(int n) {
  EvalCase c{catalog_algebra("A_6"), MultilinearPoly::from_general(parse_poly("St" + std::to_string(n)), n), {}, {}};
  std::mt19937_64 rng(n);
  for (int i = 0; i < n; ++i) {
    Vector v = c.B->zero();
    int q = static_cast<int>(rng() % 2);
    for (std::size_t k = 0; k < c.B->dim(); ++k)
      if (c.B->parity(k) == q) v[k] = Rational(static_cast<long>(rng() % 5) - 2);
    c.elems.push_back(std::move(v));
    c.parities.push_back(q);
  }
  return c;
}

}  // namespace

static void BM_SignRule(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto c = eval_case(n);
  EnvelopeContext ctx{c.B.get(), n, EnvelopeContext::Mode::SignRule};
  for (auto _ : state) benchmark::DoNotOptimize(sign_rule_evaluate(ctx, c.f, c.parities, c.elems));
}
BENCHMARK(BM_SignRule)->DenseRange(3, 5);

static void BM_TruncatedModel(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto c = eval_case(n);
  auto model = build_envelope_model(*c.B, n);
  for (auto _ : state) benchmark::DoNotOptimize(model_evaluate(*c.B, model, c.f, c.parities, c.elems));
}
BENCHMARK(BM_TruncatedModel)->DenseRange(3, 5);

static void BM_CodimExact(benchmark::State& state) {
  Target t = Catalog::builtin().target("A_3");
  CodimOptions o;
  o.mode = CodimOptions::Mode::Exact;
  for (auto _ : state) benchmark::DoNotOptimize(codimensions(t, static_cast<int>(state.range(0)), o));
}
BENCHMARK(BM_CodimExact)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_CodimModular(benchmark::State& state) {
  Target t = Catalog::builtin().target("A_3");
  CodimOptions o;
  o.mode = CodimOptions::Mode::Modular;
  for (auto _ : state) benchmark::DoNotOptimize(codimensions(t, static_cast<int>(state.range(0)), o));
}
BENCHMARK(BM_CodimModular)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);

static void BM_TSpan(benchmark::State& state) {
  TSpanOptions o;
  o.enumeration = state.range(1) ? TSpanOptions::Enumeration::Full : TSpanOptions::Enumeration::Reduced;
  for (auto _ : state)
    benchmark::DoNotOptimize(tideal_multilinear_span(std::vector<std::string>{"[x1,x2,x3]x4"}, static_cast<int>(state.range(0)), o));
}
BENCHMARK(BM_TSpan)->ArgsProduct({{4, 5}, {0, 1}})->Unit(benchmark::kMillisecond);

static void BM_Classify(benchmark::State& state) {
  Target t = Catalog::builtin().target("A_4");
  for (auto _ : state) benchmark::DoNotOptimize(classify(t, "[x1,x2][x3,x4][x5,x6][x7,x8]"));
}
BENCHMARK(BM_Classify)->Unit(benchmark::kMillisecond);

static void BM_Detect(benchmark::State& state) {
  auto B = catalog_algebra("A_7");
  for (auto _ : state) benchmark::DoNotOptimize(detect_patterns(*B));
}
BENCHMARK(BM_Detect)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
