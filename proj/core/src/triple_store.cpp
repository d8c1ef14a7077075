#include "knnsum/triple_store.hpp"

#include <algorithm>

namespace knnsum {

namespace {

using Key = TripleStore::Key;

template <typename F>
void scan_prefix(const std::set<Key>& index, TermId a, F&& visit) {
  for (auto it = index.lower_bound(Key{a, 0, 0});
       it != index.end() && (*it)[0] == a; ++it) {
    visit(*it);
  }
}

template <typename F>
void scan_prefix(const std::set<Key>& index, TermId a, TermId b, F&& visit) {
  for (auto it = index.lower_bound(Key{a, b, 0});
       it != index.end() && (*it)[0] == a && (*it)[1] == b; ++it) {
    visit(*it);
  }
}

TermId require(const TripleStore& store, const Term& entity) {
  if (auto id = store.find(entity)) return *id;
  throw LookupError("entity '" + display(entity) + "' is not in the triple store");
}

std::set<TermId> neighbor_ids(const TripleStore& store, TermId entity,
                              const std::set<Term>& neighbors,
                              const Term& type_filter) {
  std::set<TermId> ids;
  const auto type = store.find(type_filter);
  if (!type) return ids;
  for (const auto& n : neighbors) {
    const auto id = store.find(n);
    if (id && *id != entity && store.has_type(*id, *type)) ids.insert(*id);
  }
  return ids;
}

bool is_knn(const TripleStore& store, TermId p, std::optional<TermId> knn) {
  return (knn && p == *knn) || store.is_synthetic(p);
}

}  // namespace

TermId TripleStore::intern(const Term& t) {
  const auto [it, inserted] =
      ids_.try_emplace(t, static_cast<TermId>(terms_.size()));
  if (inserted) {
    terms_.push_back(t);
    if (t.is_iri() && t.lexical == kRdfType) rdf_type_ = it->second;
  }
  return it->second;
}

bool TripleStore::insert(const Triple& t) {
  if (!t.predicate.is_iri()) {
    throw InvalidArgument("predicate must be an IRI: " + display(t.predicate));
  }
  if (t.subject.is_literal()) {
    throw InvalidArgument("subject cannot be a literal: " + display(t.subject));
  }
  const TermId s = intern(t.subject);
  const TermId p = intern(t.predicate);
  const TermId o = intern(t.object);
  if (!spo_.insert(Key{s, p, o}).second) return false;
  pos_.insert(Key{p, o, s});
  osp_.insert(Key{o, s, p});
  return true;
}

std::optional<TermId> TripleStore::find(const Term& t) const {
  const auto it = ids_.find(t);
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

bool TripleStore::contains(const Triple& t) const {
  const auto s = find(t.subject);
  const auto p = find(t.predicate);
  const auto o = find(t.object);
  return s && p && o && spo_.contains(Key{*s, *p, *o});
}

bool TripleStore::has_subject(const Term& t) const {
  const auto id = find(t);
  if (!id) return false;
  const auto it = spo_.lower_bound(Key{*id, 0, 0});
  return it != spo_.end() && (*it)[0] == *id;
}

void TripleStore::mark_synthetic(const Term& predicate) {
  synthetic_.insert(intern(predicate));
}

std::vector<Triple> TripleStore::triples() const {
  std::vector<Triple> out;
  out.reserve(spo_.size());
  for (const auto& k : spo_) {
    out.push_back({terms_[k[0]], terms_[k[1]], terms_[k[2]]});
  }
  return out;
}

std::vector<std::pair<TermId, TermId>> TripleStore::outgoing(
    TermId subject) const {
  std::vector<std::pair<TermId, TermId>> out;
  scan_prefix(spo_, subject, [&](const Key& k) { out.emplace_back(k[1], k[2]); });
  return out;
}

std::vector<TermId> TripleStore::objects(TermId subject,
                                         TermId predicate) const {
  std::vector<TermId> out;
  scan_prefix(spo_, subject, predicate,
              [&](const Key& k) { out.push_back(k[2]); });
  return out;
}

std::vector<TermId> TripleStore::subjects(TermId predicate,
                                          TermId object) const {
  std::vector<TermId> out;
  scan_prefix(pos_, predicate, object,
              [&](const Key& k) { out.push_back(k[2]); });
  return out;
}

std::vector<std::pair<TermId, TermId>> TripleStore::incoming(
    TermId object) const {
  std::vector<std::pair<TermId, TermId>> out;
  scan_prefix(osp_, object, [&](const Key& k) { out.emplace_back(k[1], k[2]); });
  return out;
}

std::vector<TermId> TripleStore::typed(TermId type) const {
  if (!rdf_type_) return {};
  return subjects(*rdf_type_, type);
}

std::vector<TermId> TripleStore::typed(const Term& type) const {
  const auto id = find(type);
  if (!id) return {};
  return typed(*id);
}

bool TripleStore::has_type(TermId subject, TermId type) const {
  return rdf_type_ && spo_.contains(Key{subject, *rdf_type_, type});
}

bool TripleStore::operator==(const TripleStore& other) const {
  if (size() != other.size()) return false;
  auto a = triples();
  auto b = other.triples();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::set<Feature> feature_set(const TripleStore& store, const Term& entity,
                              const std::set<Term>& excluded) {
  std::set<Feature> out;
  const auto e = store.find(entity);
  if (!e) return out;
  for (const auto& [p, o] : store.outgoing(*e)) {
    if (store.is_synthetic(p)) continue;
    const Term& property = store.term(p);
    if (excluded.contains(property)) continue;
    out.insert({property, store.term(o)});
  }
  return out;
}

std::set<Term> entities_with_feature(const TripleStore& store, const Feature& f,
                                     const std::optional<Term>& type_filter) {
  std::set<Term> out;
  const auto p = store.find(f.property);
  const auto o = store.find(f.value);
  if (!p || !o) return out;
  std::optional<TermId> type;
  if (type_filter) {
    type = store.find(*type_filter);
    if (!type) return out;
  }
  for (const TermId s : store.subjects(*p, *o)) {
    if (!type || store.has_type(s, *type)) out.insert(store.term(s));
  }
  return out;
}

std::set<Term> typed_neighbors(const TripleStore& store, const Term& entity,
                               const Term& knn_predicate,
                               const Term& type_filter) {
  const TermId e = require(store, entity);
  std::set<Term> out;
  const auto knn = store.find(knn_predicate);
  const auto type = store.find(type_filter);
  if (!knn || !type) return out;
  for (const TermId s : store.objects(e, *knn)) {
    if (s != e && store.has_type(s, *type)) out.insert(store.term(s));
  }
  return out;
}

WitnessMap shared_one_hop_features(const TripleStore& store, const Term& entity,
                                   const std::set<Term>& neighbors,
                                   const Term& knn_predicate,
                                   const Term& type_filter) {
  const TermId e = require(store, entity);
  const auto knn = store.find(knn_predicate);
  const auto witnesses = neighbor_ids(store, e, neighbors, type_filter);

  WitnessMap out;
  if (witnesses.empty()) return out;
  for (const auto& [p, o] : store.outgoing(e)) {
    if (is_knn(store, p, knn)) continue;
    std::set<Term>* sharing = nullptr;
    for (const TermId s : witnesses) {
      if (!store.contains(s, p, o)) continue;
      if (!sharing) sharing = &out[Feature{store.term(p), store.term(o)}];
      sharing->insert(store.term(s));
    }
  }
  return out;
}

WitnessMap shared_one_hop_features(const TripleStore& store, const Term& entity,
                                   const Term& knn_predicate,
                                   const Term& type_filter) {
  return shared_one_hop_features(
      store, entity, typed_neighbors(store, entity, knn_predicate, type_filter),
      knn_predicate, type_filter);
}

TwoHopWitnessMap shared_two_hop_features(const TripleStore& store,
                                         const Term& entity,
                                         const std::set<Term>& neighbors,
                                         const Term& knn_predicate,
                                         const Term& type_filter) {
  const TermId e = require(store, entity);
  const auto knn = store.find(knn_predicate);
  const auto witnesses = neighbor_ids(store, e, neighbors, type_filter);

  // Composite keys (p, q, t) reachable from a node.
  auto paths_from = [&](TermId start, auto&& visit) {
    for (const auto& [p, mid] : store.outgoing(start)) {
      if (is_knn(store, p, knn)) continue;
      for (const auto& [q, t] : store.outgoing(mid)) visit(Key{p, q, t});
    }
  };

  std::set<Key> own;
  paths_from(e, [&](const Key& k) { own.insert(k); });

  std::map<Key, std::set<TermId>> shared;
  if (!own.empty()) {
    for (const TermId s : witnesses) {
      paths_from(s, [&](const Key& k) {
        if (own.contains(k)) shared[k].insert(s);
      });
    }
  }

  TwoHopWitnessMap out;
  for (const auto& [k, ids] : shared) {
    auto& sharing = out[TwoHopFeature{store.term(k[0]), store.term(k[1]),
                                      store.term(k[2])}];
    for (const TermId s : ids) sharing.insert(store.term(s));
  }
  return out;
}

TwoHopWitnessMap shared_two_hop_features(const TripleStore& store,
                                         const Term& entity,
                                         const Term& knn_predicate,
                                         const Term& type_filter) {
  return shared_two_hop_features(
      store, entity, typed_neighbors(store, entity, knn_predicate, type_filter),
      knn_predicate, type_filter);
}

}  // namespace knnsum
