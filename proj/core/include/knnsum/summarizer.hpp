#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "knnsum/link_map.hpp"
#include "knnsum/similarity.hpp"
#include "knnsum/triple_store.hpp"
#include "knnsum/usage_matrix.hpp"

namespace knnsum {

// A ranked feature. `path` holds one property for a plain property-value
// pair and two for a composite (p, q, t) feature.
struct WeightedFeature {
  std::vector<Term> path;
  Term value;
  std::size_t neighbor_support = 0;  // |A|: neighbors sharing the feature
  std::size_t global_support = 0;    // |B|: typed entities holding it, e included
  double weight = 0.0;

  bool operator==(const WeightedFeature&) const = default;
};

// neighbor_support * ln(universe_size / global_support).
double feature_weight(std::size_t neighbor_support, std::size_t global_support,
                      std::size_t universe_size);

// Descending weight, then descending neighbor support, then ascending
// (property path, value).
bool ranks_before(const WeightedFeature& a, const WeightedFeature& b);
void rank_features(std::vector<WeightedFeature>& features);

// Subjects carrying `rdf:type type_filter`.
std::set<Term> entity_universe(const TripleStore& store, const Term& type_filter);

// Weighted features of e shared with its typed knn neighbors, in rank order.
// Throws InvalidArgument when e is not in the universe.
std::vector<WeightedFeature> feature_weights(const TripleStore& store,
                                             const Term& entity,
                                             const std::set<Term>& universe,
                                             const Term& knn_predicate,
                                             const Term& type_filter);
std::vector<WeightedFeature> two_hop_feature_weights(
    const TripleStore& store, const Term& entity, const std::set<Term>& universe,
    const Term& knn_predicate, const Term& type_filter);

// Weighting from precomputed witness sets; the global support is counted over
// entities typed `type_filter`.
std::vector<WeightedFeature> weigh(const TripleStore& store,
                                   const WitnessMap& witnesses,
                                   std::size_t universe_size,
                                   const Term& type_filter);
std::vector<WeightedFeature> weigh(const TripleStore& store,
                                   const TwoHopWitnessMap& witnesses,
                                   std::size_t universe_size,
                                   const Term& type_filter);

// Typed entities with at least one path e -p-> * -q-> t.
std::set<Term> entities_with_path(const TripleStore& store,
                                  const TwoHopFeature& f,
                                  const std::optional<Term>& type_filter = {});

struct SummaryOptions {
  Neighborhood neighborhood;
  std::size_t n = 10;
  bool two_hop = false;
  Term knn_predicate = Term::iri("urn:knnsum:knn");
  Term type_filter = Term::iri("http://rdf.freebase.com/ns/film.film");

  void validate() const;
};

struct Summary {
  std::string entity;
  SummaryOptions options;
  std::vector<WeightedFeature> features;
  std::string status = "ok";
};

// Truncates ranked features to the n best.
Summary make_summary(std::string entity, const SummaryOptions& options,
                     std::vector<WeightedFeature> ranked);

// End to end: resolve `id` (item id or entity IRI), form the neighborhood of
// every item linked to the entity, weigh the shared features and keep the n
// best. Throws LookupError naming the failing stage when `id` cannot be
// resolved. An entity without usage data yields an empty summary whose status
// says so.
Summary summarize(const TripleStore& store, const UsageMatrix& matrix,
                  const EntityLinkMap& links, std::string_view id,
                  const SummaryOptions& options);

// Same, with neighbor lists computed ahead of time (e.g. loaded from a bundle).
Summary summarize(const TripleStore& store, const NeighborMap& lists,
                  const EntityLinkMap& links, std::string_view id,
                  const SummaryOptions& options);

// Resolves an item id or entity IRI to an entity of the universe.
// Throws LookupError naming the failing stage.
Term resolve_entity(const TripleStore& store, const EntityLinkMap& links,
                    std::string_view id, const Term& type_filter);

std::string path_label(const std::vector<Term>& path);

// `rank <TAB> weight <TAB> property <TAB> value`, weight with two decimals,
// preceded by one `# entity ...` comment line.
void write_summary_tsv(std::ostream& out, const Summary& summary);
// JSON array with one object per summary, including supports.
void write_summaries_structured(std::ostream& out,
                                const std::vector<Summary>& summaries);

}  // namespace knnsum
