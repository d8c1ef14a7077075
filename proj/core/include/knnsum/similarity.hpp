#pragma once

#include <cstddef>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "knnsum/usage_matrix.hpp"

namespace knnsum {

// Dunning's log-likelihood ratio (G^2) for a 2x2 contingency table, in the
// unnormalized-entropy form 2 * (H_row + H_col - H_matrix) with natural
// logarithms. Symmetric bit-for-bit under swapping k12 and k21. Negative
// results from cancellation are clamped to 0.
// Throws InvalidArgument for the all-zero table.
double log_likelihood_ratio(const ContingencyTable& t);

// Maps an LLR onto [0, 1): 1 - 1 / (1 + llr).
double similarity_from_llr(double llr);
double similarity_score(const ContingencyTable& t);

struct Neighbor {
  std::string item;
  double score = 0.0;

  bool operator==(const Neighbor&) const = default;
};

// Neighbors of `center`, ordered by descending score, then ascending item id.
struct NeighborList {
  std::string center;
  std::vector<Neighbor> neighbors;

  bool operator==(const NeighborList&) const = default;
};

// How a neighborhood is formed: the k best items, or every item whose score
// exceeds a threshold.
struct Neighborhood {
  enum class Mode { fixed_k, threshold };

  Mode mode = Mode::fixed_k;
  std::size_t k = 20;
  double tau = 0.95;

  static Neighborhood fixed(std::size_t k);
  static Neighborhood above(double tau);

  // Throws InvalidArgument for k == 0 or tau outside [0, 1).
  void validate() const;

  bool operator==(const Neighborhood&) const = default;
};

// Candidates are restricted to items co-used with the center by at least one
// user (k11 >= 1); items with score exactly 0 never qualify.
NeighborList k_nearest_neighbors(const UsageMatrix& m, std::string_view item,
                                 std::size_t k);
NeighborList neighbors_above_threshold(const UsageMatrix& m,
                                       std::string_view item, double tau);
NeighborList neighbors(const UsageMatrix& m, std::string_view item,
                       const Neighborhood& spec);

using NeighborMap = std::map<std::string, NeighborList>;

// One neighbor list per item of m. `threads` == 0 uses the hardware
// concurrency; the result does not depend on the thread count.
NeighborMap all_pairs_neighbors(const UsageMatrix& m, const Neighborhood& spec,
                                unsigned threads = 0);
NeighborMap all_pairs_knn(const UsageMatrix& m, std::size_t k,
                          unsigned threads = 0);

// `center <TAB> neighbor <TAB> score` with six decimals, one row per neighbor.
void write_neighbors_tsv(std::ostream& out, const NeighborList& list);

}  // namespace knnsum
