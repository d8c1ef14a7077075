#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "knnsum/errors.hpp"
#include "knnsum/term.hpp"

namespace knnsum {

using TermId = std::uint32_t;

// In-memory set of triples with three sorted access paths:
//   SPO  subject   -> predicate -> objects
//   POS  predicate -> object    -> subjects
//   OSP  object    -> subject   -> predicates
// Terms are interned into dense ids. Mutation (insert) must be
// single-threaded; const queries are safe to run concurrently.
class TripleStore {
 public:
  using Key = std::array<TermId, 3>;

  // Returns true when the triple was not already present. Throws
  // InvalidArgument for a non-IRI predicate or a literal subject.
  bool insert(const Triple& t);
  bool contains(const Triple& t) const;
  std::size_t size() const { return spo_.size(); }
  bool empty() const { return spo_.empty(); }

  std::optional<TermId> find(const Term& t) const;
  const Term& term(TermId id) const { return terms_.at(id); }
  bool has_term(const Term& t) const { return find(t).has_value(); }
  // True when t is the subject of at least one triple.
  bool has_subject(const Term& t) const;

  // Predicates recorded as synthetic (e.g. materialized neighbor edges);
  // they are never reported as entity features.
  void mark_synthetic(const Term& predicate);
  bool is_synthetic(TermId predicate) const {
    return synthetic_.contains(predicate);
  }

  // All triples, SPO order.
  std::vector<Triple> triples() const;

  // (predicate, object) pairs of a subject, SPO order.
  std::vector<std::pair<TermId, TermId>> outgoing(TermId subject) const;
  std::vector<TermId> objects(TermId subject, TermId predicate) const;
  // Subjects s with (s, predicate, object), ascending id.
  std::vector<TermId> subjects(TermId predicate, TermId object) const;
  // (subject, predicate) pairs pointing at an object, OSP order.
  std::vector<std::pair<TermId, TermId>> incoming(TermId object) const;
  bool contains(TermId s, TermId p, TermId o) const {
    return spo_.contains(Key{s, p, o});
  }

  // Subjects carrying `rdf:type type`.
  std::vector<TermId> typed(TermId type) const;
  std::vector<TermId> typed(const Term& type) const;
  bool has_type(TermId subject, TermId type) const;

  // Raw index views for consistency checks.
  const std::set<Key>& spo_index() const { return spo_; }
  const std::set<Key>& pos_index() const { return pos_; }
  const std::set<Key>& osp_index() const { return osp_; }

  bool operator==(const TripleStore& other) const;

 private:
  TermId intern(const Term& t);

  std::vector<Term> terms_;
  std::unordered_map<Term, TermId, TermHash> ids_;
  std::set<Key> spo_;
  std::set<Key> pos_;
  std::set<Key> osp_;
  std::set<TermId> synthetic_;
  std::optional<TermId> rdf_type_;
};

// Property-value pairs of entity e. Predicates in `excluded` and synthetic
// predicates are skipped. An unknown entity yields the empty set.
std::set<Feature> feature_set(const TripleStore& store, const Term& entity,
                              const std::set<Term>& excluded = {});

// Subjects holding f, optionally restricted to those typed `type_filter`.
std::set<Term> entities_with_feature(const TripleStore& store, const Feature& f,
                                     const std::optional<Term>& type_filter = {});

using WitnessMap = std::map<Feature, std::set<Term>>;
using TwoHopWitnessMap = std::map<TwoHopFeature, std::set<Term>>;

// Neighbors of e over `knn_predicate` that are typed `type_filter` and differ
// from e. Throws LookupError for an entity unknown to the store.
std::set<Term> typed_neighbors(const TripleStore& store, const Term& entity,
                               const Term& knn_predicate,
                               const Term& type_filter);

// Features of e shared with at least one typed knn neighbor, each mapped to
// the neighbors that share it.
WitnessMap shared_one_hop_features(const TripleStore& store, const Term& entity,
                                   const Term& knn_predicate,
                                   const Term& type_filter);
// Same, with an explicit neighbor set instead of knn edges; the type filter
// and self-exclusion still apply.
WitnessMap shared_one_hop_features(const TripleStore& store, const Term& entity,
                                   const std::set<Term>& neighbors,
                                   const Term& knn_predicate,
                                   const Term& type_filter);

// Composite (p, q, t) features: e -p-> o -q-> t and s -p-> r -q-> t for a
// typed knn neighbor s. o and r are unconstrained. p is never the knn
// predicate.
TwoHopWitnessMap shared_two_hop_features(const TripleStore& store,
                                         const Term& entity,
                                         const Term& knn_predicate,
                                         const Term& type_filter);
TwoHopWitnessMap shared_two_hop_features(const TripleStore& store,
                                         const Term& entity,
                                         const std::set<Term>& neighbors,
                                         const Term& knn_predicate,
                                         const Term& type_filter);

}  // namespace knnsum
