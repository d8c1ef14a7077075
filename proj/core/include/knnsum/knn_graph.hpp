#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "knnsum/link_map.hpp"
#include "knnsum/similarity.hpp"
#include "knnsum/triple_store.hpp"

namespace knnsum {

struct MaterializeResult {
  std::size_t added = 0;
  std::vector<std::string> skipped;  // one message per unresolvable id
};

// Inserts (iri(center), predicate, iri(neighbor)) for every resolvable pair.
// An id resolves when the link map has it and its entity is a subject in the
// store. Duplicate entities collapse and self-loops are dropped. The predicate
// is marked synthetic in the store.
MaterializeResult materialize_knn(TripleStore& store, const NeighborMap& lists,
                                  const EntityLinkMap& links,
                                  const Term& predicate);

// The neighbor entities materialize_knn would attach to `entity`: the union
// over every item linked to it, resolved through the link map, without
// self-loops.
std::set<Term> linked_neighbor_entities(const TripleStore& store,
                                        const NeighborMap& lists,
                                        const EntityLinkMap& links,
                                        const Term& entity);

}  // namespace knnsum
