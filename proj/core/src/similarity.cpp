#include "knnsum/similarity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

namespace knnsum {

namespace {

double xlogx(std::uint64_t x) {
  if (x == 0) return 0.0;
  const double d = static_cast<double>(x);
  return d * std::log(d);
}

// Unnormalized entropy N*H of a pair of counts.
double entropy(std::uint64_t a, std::uint64_t b) {
  return xlogx(a + b) - (xlogx(a) + xlogx(b));
}

struct Candidate {
  ItemIndex item;
  double score;
};

bool candidate_before(const Candidate& a, const Candidate& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.item < b.item;  // index order is lexicographic id order
}

// Scans co-used items of one center at a time; reusable across centers.
class CooccurrenceScanner {
 public:
  explicit CooccurrenceScanner(const UsageMatrix& m)
      : m_(m), counts_(m.item_count(), 0) {}

  NeighborList run(ItemIndex center, const Neighborhood& spec) {
    touched_.clear();
    for (const UserIndex u : m_.raters(center)) {
      for (const ItemIndex j : m_.items_of(u)) {
        if (j == center) continue;
        if (counts_[j]++ == 0) touched_.push_back(j);
      }
    }

    const std::uint64_t center_raters = m_.raters(center).size();
    const std::uint64_t total = m_.total_users();
    std::vector<Candidate> candidates;
    candidates.reserve(touched_.size());
    for (const ItemIndex j : touched_) {
      ContingencyTable t;
      t.k11 = counts_[j];
      t.k12 = center_raters - t.k11;
      t.k21 = m_.raters(j).size() - t.k11;
      t.k22 = total - t.k11 - t.k12 - t.k21;
      counts_[j] = 0;
      const double score = similarity_score(t);
      if (score <= 0.0) continue;
      if (spec.mode == Neighborhood::Mode::threshold && !(score > spec.tau)) {
        continue;
      }
      candidates.push_back({j, score});
    }

    if (spec.mode == Neighborhood::Mode::fixed_k && candidates.size() > spec.k) {
      std::partial_sort(candidates.begin(),
                        candidates.begin() + static_cast<std::ptrdiff_t>(spec.k),
                        candidates.end(), candidate_before);
      candidates.resize(spec.k);
    } else {
      std::sort(candidates.begin(), candidates.end(), candidate_before);
    }

    NeighborList list;
    list.center = m_.item_id(center);
    list.neighbors.reserve(candidates.size());
    for (const auto& c : candidates) {
      list.neighbors.push_back({m_.item_id(c.item), c.score});
    }
    return list;
  }

 private:
  const UsageMatrix& m_;
  std::vector<std::uint32_t> counts_;
  std::vector<ItemIndex> touched_;
};

}  // namespace

double log_likelihood_ratio(const ContingencyTable& t) {
  if (t.total() == 0) {
    throw InvalidArgument("log-likelihood ratio of an all-zero table");
  }
  const double row = entropy(t.k11 + t.k12, t.k21 + t.k22);
  const double col = entropy(t.k11 + t.k21, t.k12 + t.k22);
  // k12 and k21 are added first so that swapping them is bit-exact.
  const double cells =
      (xlogx(t.k11) + (xlogx(t.k12) + xlogx(t.k21))) + xlogx(t.k22);
  const double matrix = xlogx(t.total()) - cells;
  const double llr = 2.0 * (row + col - matrix);
  return llr > 0.0 ? llr : 0.0;
}

double similarity_from_llr(double llr) { return 1.0 - 1.0 / (1.0 + llr); }

double similarity_score(const ContingencyTable& t) {
  return similarity_from_llr(log_likelihood_ratio(t));
}

Neighborhood Neighborhood::fixed(std::size_t k) {
  Neighborhood n;
  n.mode = Mode::fixed_k;
  n.k = k;
  return n;
}

Neighborhood Neighborhood::above(double tau) {
  Neighborhood n;
  n.mode = Mode::threshold;
  n.tau = tau;
  return n;
}

void Neighborhood::validate() const {
  if (mode == Mode::fixed_k && k == 0) {
    throw InvalidArgument("neighborhood size k must be at least 1");
  }
  if (mode == Mode::threshold && !(tau >= 0.0 && tau < 1.0)) {
    throw InvalidArgument("similarity threshold must lie in [0, 1)");
  }
}

NeighborList neighbors(const UsageMatrix& m, std::string_view item,
                       const Neighborhood& spec) {
  spec.validate();
  const ItemIndex center = m.item_index(item);
  CooccurrenceScanner scanner(m);
  return scanner.run(center, spec);
}

NeighborList k_nearest_neighbors(const UsageMatrix& m, std::string_view item,
                                 std::size_t k) {
  return neighbors(m, item, Neighborhood::fixed(k));
}

NeighborList neighbors_above_threshold(const UsageMatrix& m,
                                       std::string_view item, double tau) {
  return neighbors(m, item, Neighborhood::above(tau));
}

NeighborMap all_pairs_neighbors(const UsageMatrix& m, const Neighborhood& spec,
                                unsigned threads) {
  spec.validate();
  const std::size_t n = m.item_count();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));

  std::vector<NeighborList> lists(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    CooccurrenceScanner scanner(m);
    for (std::size_t i = next++; i < n; i = next++) {
      lists[i] = scanner.run(static_cast<ItemIndex>(i), spec);
    }
  };

  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }

  NeighborMap result;
  for (auto& list : lists) {
    auto key = list.center;
    result.emplace_hint(result.end(), std::move(key), std::move(list));
  }
  return result;
}

NeighborMap all_pairs_knn(const UsageMatrix& m, std::size_t k,
                          unsigned threads) {
  return all_pairs_neighbors(m, Neighborhood::fixed(k), threads);
}

void write_neighbors_tsv(std::ostream& out, const NeighborList& list) {
  char score[32];
  for (const auto& nb : list.neighbors) {
    std::snprintf(score, sizeof score, "%.6f", nb.score);
    out << list.center << '\t' << nb.item << '\t' << score << '\n';
  }
}

}  // namespace knnsum
