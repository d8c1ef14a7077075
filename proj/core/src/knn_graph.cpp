#include "knnsum/knn_graph.hpp"

namespace knnsum {

namespace {

// Entity IRI of an item when it is linked and present as a store subject.
std::optional<Term> resolve(const TripleStore& store, const EntityLinkMap& links,
                            const std::string& item, std::string& why) {
  const auto iri = links.entity_of(item);
  if (!iri) {
    why = "item '" + item + "' has no entity link";
    return std::nullopt;
  }
  Term entity = Term::iri(*iri);
  if (!store.has_subject(entity)) {
    why = "entity '" + *iri + "' (item '" + item + "') is not in the store";
    return std::nullopt;
  }
  return entity;
}

}  // namespace

MaterializeResult materialize_knn(TripleStore& store, const NeighborMap& lists,
                                  const EntityLinkMap& links,
                                  const Term& predicate) {
  MaterializeResult result;
  std::vector<Triple> pending;
  std::string why;
  for (const auto& [item, list] : lists) {
    const auto center = resolve(store, links, item, why);
    if (!center) {
      if (!list.neighbors.empty()) result.skipped.push_back("center " + why);
      continue;
    }
    for (const auto& nb : list.neighbors) {
      const auto neighbor = resolve(store, links, nb.item, why);
      if (!neighbor) {
        result.skipped.push_back("neighbor " + why);
        continue;
      }
      if (*neighbor == *center) continue;
      pending.push_back({*center, predicate, *neighbor});
    }
  }
  // Resolution looks at subjects only, so inserting afterwards cannot change
  // which ids resolved.
  store.mark_synthetic(predicate);
  for (const auto& t : pending) {
    if (store.insert(t)) ++result.added;
  }
  return result;
}

std::set<Term> linked_neighbor_entities(const TripleStore& store,
                                        const NeighborMap& lists,
                                        const EntityLinkMap& links,
                                        const Term& entity) {
  std::set<Term> out;
  if (!store.has_subject(entity)) return out;
  std::string why;
  for (const auto& item : links.items_of(entity.lexical)) {
    const auto it = lists.find(item);
    if (it == lists.end()) continue;
    for (const auto& nb : it->second.neighbors) {
      const auto neighbor = resolve(store, links, nb.item, why);
      if (neighbor && *neighbor != entity) out.insert(*neighbor);
    }
  }
  return out;
}

}  // namespace knnsum
