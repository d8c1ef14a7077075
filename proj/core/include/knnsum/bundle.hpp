#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "knnsum/similarity.hpp"

namespace knnsum {

// Reloadable output of a build: matrix shape and digest, the neighborhood
// parameters and every neighbor list.
struct IndexBundle {
  std::size_t users = 0;
  std::size_t items = 0;
  std::size_t events = 0;
  std::uint64_t digest = 0;
  Neighborhood neighborhood;
  std::string knn_predicate;
  std::size_t knn_triples = 0;
  NeighborMap neighbors;

  bool operator==(const IndexBundle&) const = default;
};

// JSON document. Scores round-trip exactly.
void save_bundle(std::ostream& out, const IndexBundle& bundle);
IndexBundle load_bundle(std::istream& in);  // throws IoError on bad input
void save_bundle_file(const std::string& path, const IndexBundle& bundle);
IndexBundle load_bundle_file(const std::string& path);

}  // namespace knnsum
