#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "knnsum/similarity.hpp"
#include "knnsum/summarizer.hpp"
#include "knnsum/triple_store.hpp"

using namespace knnsum;

namespace {

void BM_LogLikelihoodRatio(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<std::uint64_t> cell(0, 5000);
  std::vector<ContingencyTable> tables(1024);
  for (auto& t : tables) t = {cell(rng) + 1, cell(rng), cell(rng), cell(rng) * 100};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_likelihood_ratio(tables[i++ & 1023]));
  }
}
BENCHMARK(BM_LogLikelihoodRatio);

// Skewed popularity over a catalog of range(0) items.
UsageMatrix synthetic_usage(std::size_t users, std::size_t items, std::size_t per_user) {
  std::mt19937_64 rng(2);
  std::vector<double> popularity(items);
  for (std::size_t i = 0; i < items; ++i) popularity[i] = 1.0 / (i + 5.0);
  std::discrete_distribution<std::size_t> pick(popularity.begin(), popularity.end());
  std::vector<std::pair<std::string, std::string>> log;
  for (std::size_t u = 0; u < users; ++u) {
    for (std::size_t n = 0; n < per_user; ++n) {
      log.emplace_back("u" + std::to_string(u), "i" + std::to_string(pick(rng)));
    }
  }
  return UsageMatrix::from_pairs(log);
}

void BM_AllPairsKnn(benchmark::State& state) {
  const auto m = synthetic_usage(500, static_cast<std::size_t>(state.range(0)), 40);
  for (auto _ : state) {
    benchmark::DoNotOptimize(all_pairs_knn(m, 20, 1));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.item_count()));
}
BENCHMARK(BM_AllPairsKnn)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

// Films linked to neighbors, each with a few performance nodes pointing at
// a shared actor pool.
TripleStore performance_graph(std::size_t films) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::size_t> actor(0, films / 4);
  std::uniform_int_distribution<std::size_t> film(0, films - 1);
  const auto iri = [](const std::string& s) { return Term::iri("http://example.org/" + s); };
  const Term type = Term::iri(kRdfType);
  const Term film_type = iri("Film");
  TripleStore s;
  for (std::size_t f = 0; f < films; ++f) {
    const auto e = iri("film" + std::to_string(f));
    s.insert({e, type, film_type});
    for (int p = 0; p < 5; ++p) {
      const auto node = Term::blank("p" + std::to_string(f) + "_" + std::to_string(p));
      s.insert({e, iri("performance"), node});
      s.insert({node, iri("actor"), iri("actor" + std::to_string(actor(rng)))});
    }
    for (int k = 0; k < 20; ++k) {
      s.insert({e, iri("knn"), iri("film" + std::to_string(film(rng)))});
    }
  }
  return s;
}

void BM_TwoHopFeatures(benchmark::State& state) {
  const auto s = performance_graph(static_cast<std::size_t>(state.range(0)));
  const Term e = Term::iri("http://example.org/film0");
  const Term knn = Term::iri("http://example.org/knn");
  const Term film = Term::iri("http://example.org/Film");
  for (auto _ : state) {
    benchmark::DoNotOptimize(shared_two_hop_features(s, e, knn, film));
  }
}
BENCHMARK(BM_TwoHopFeatures)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
