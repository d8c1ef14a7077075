#include "knnsum/summarizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "knnsum/knn_graph.hpp"

namespace knnsum {

namespace {

int compare_terms(const std::vector<Term>& a, const std::vector<Term>& b) {
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (const int c = display(a[i]).compare(display(b[i])); c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

const char* mode_name(Neighborhood::Mode mode) {
  return mode == Neighborhood::Mode::fixed_k ? "fixed-k" : "threshold";
}

}  // namespace

double feature_weight(std::size_t neighbor_support, std::size_t global_support,
                      std::size_t universe_size) {
  if (global_support == 0 || universe_size == 0) {
    throw InvalidArgument("feature weight needs non-zero global support and "
                          "universe size");
  }
  return static_cast<double>(neighbor_support) *
         std::log(static_cast<double>(universe_size) /
                  static_cast<double>(global_support));
}

bool ranks_before(const WeightedFeature& a, const WeightedFeature& b) {
  if (a.weight != b.weight) return a.weight > b.weight;
  if (a.neighbor_support != b.neighbor_support) {
    return a.neighbor_support > b.neighbor_support;
  }
  if (const int c = compare_terms(a.path, b.path); c != 0) return c < 0;
  if (const int c = display(a.value).compare(display(b.value)); c != 0) {
    return c < 0;
  }
  if (a.path != b.path) return a.path < b.path;
  return a.value < b.value;
}

void rank_features(std::vector<WeightedFeature>& features) {
  std::sort(features.begin(), features.end(), ranks_before);
}

std::set<Term> entity_universe(const TripleStore& store,
                               const Term& type_filter) {
  std::set<Term> out;
  for (const TermId id : store.typed(type_filter)) out.insert(store.term(id));
  return out;
}

std::set<Term> entities_with_path(const TripleStore& store,
                                  const TwoHopFeature& f,
                                  const std::optional<Term>& type_filter) {
  std::set<Term> out;
  const auto p = store.find(f.first);
  const auto q = store.find(f.second);
  const auto t = store.find(f.terminal);
  if (!p || !q || !t) return out;
  std::optional<TermId> type;
  if (type_filter) {
    type = store.find(*type_filter);
    if (!type) return out;
  }
  for (const TermId mid : store.subjects(*q, *t)) {
    for (const TermId s : store.subjects(*p, mid)) {
      if (!type || store.has_type(s, *type)) out.insert(store.term(s));
    }
  }
  return out;
}

std::vector<WeightedFeature> weigh(const TripleStore& store,
                                   const WitnessMap& witnesses,
                                   std::size_t universe_size,
                                   const Term& type_filter) {
  std::vector<WeightedFeature> out;
  out.reserve(witnesses.size());
  for (const auto& [feature, sharing] : witnesses) {
    if (sharing.empty()) continue;
    WeightedFeature wf;
    wf.path = {feature.property};
    wf.value = feature.value;
    wf.neighbor_support = sharing.size();
    wf.global_support = entities_with_feature(store, feature, type_filter).size();
    wf.weight = feature_weight(wf.neighbor_support, wf.global_support,
                               universe_size);
    out.push_back(std::move(wf));
  }
  rank_features(out);
  return out;
}

std::vector<WeightedFeature> weigh(const TripleStore& store,
                                   const TwoHopWitnessMap& witnesses,
                                   std::size_t universe_size,
                                   const Term& type_filter) {
  std::vector<WeightedFeature> out;
  out.reserve(witnesses.size());
  for (const auto& [feature, sharing] : witnesses) {
    if (sharing.empty()) continue;
    WeightedFeature wf;
    wf.path = {feature.first, feature.second};
    wf.value = feature.terminal;
    wf.neighbor_support = sharing.size();
    wf.global_support = entities_with_path(store, feature, type_filter).size();
    wf.weight = feature_weight(wf.neighbor_support, wf.global_support,
                               universe_size);
    out.push_back(std::move(wf));
  }
  rank_features(out);
  return out;
}

std::vector<WeightedFeature> feature_weights(const TripleStore& store,
                                             const Term& entity,
                                             const std::set<Term>& universe,
                                             const Term& knn_predicate,
                                             const Term& type_filter) {
  if (!universe.contains(entity)) {
    throw InvalidArgument("entity '" + display(entity) +
                          "' is not in the entity universe");
  }
  return weigh(store,
               shared_one_hop_features(store, entity, knn_predicate, type_filter),
               universe.size(), type_filter);
}

std::vector<WeightedFeature> two_hop_feature_weights(
    const TripleStore& store, const Term& entity, const std::set<Term>& universe,
    const Term& knn_predicate, const Term& type_filter) {
  if (!universe.contains(entity)) {
    throw InvalidArgument("entity '" + display(entity) +
                          "' is not in the entity universe");
  }
  return weigh(store,
               shared_two_hop_features(store, entity, knn_predicate, type_filter),
               universe.size(), type_filter);
}

void SummaryOptions::validate() const {
  neighborhood.validate();
  if (n == 0) throw InvalidArgument("summary length n must be at least 1");
  if (!knn_predicate.is_iri() || !type_filter.is_iri()) {
    throw InvalidArgument("knn predicate and type filter must be IRIs");
  }
}

Summary make_summary(std::string entity, const SummaryOptions& options,
                     std::vector<WeightedFeature> ranked) {
  Summary s;
  s.entity = std::move(entity);
  s.options = options;
  if (ranked.size() > options.n) ranked.resize(options.n);
  s.features = std::move(ranked);
  return s;
}

Term resolve_entity(const TripleStore& store, const EntityLinkMap& links,
                    std::string_view id, const Term& type_filter) {
  Term entity;
  if (auto iri = links.entity_of(id)) {
    entity = Term::iri(*iri);
  } else if (!links.items_of(id).empty() || store.has_subject(Term::iri(std::string(id)))) {
    entity = Term::iri(std::string(id));
  } else {
    throw LookupError("link stage: '" + std::string(id) +
                      "' is neither a linked item id nor a known entity IRI");
  }
  const auto e = store.find(entity);
  const auto type = store.find(type_filter);
  if (!e || !type || !store.has_type(*e, *type)) {
    throw LookupError("universe stage: entity '" + entity.lexical +
                      "' is not typed <" + type_filter.lexical +
                      "> in the triple store");
  }
  return entity;
}

Summary summarize(const TripleStore& store, const NeighborMap& lists,
                  const EntityLinkMap& links, std::string_view id,
                  const SummaryOptions& options) {
  options.validate();
  const Term entity = resolve_entity(store, links, id, options.type_filter);

  const auto items = links.items_of(entity.lexical);
  const bool has_usage = std::any_of(items.begin(), items.end(),
                                     [&](const auto& i) { return lists.contains(i); });
  if (!has_usage) {
    Summary s = make_summary(entity.lexical, options, {});
    s.status = "no usage data";
    return s;
  }

  const auto neighbors = linked_neighbor_entities(store, lists, links, entity);
  const std::size_t universe = entity_universe(store, options.type_filter).size();
  std::vector<WeightedFeature> ranked;
  if (options.two_hop) {
    ranked = weigh(store,
                   shared_two_hop_features(store, entity, neighbors,
                                           options.knn_predicate,
                                           options.type_filter),
                   universe, options.type_filter);
  } else {
    ranked = weigh(store,
                   shared_one_hop_features(store, entity, neighbors,
                                           options.knn_predicate,
                                           options.type_filter),
                   universe, options.type_filter);
  }
  return make_summary(entity.lexical, options, std::move(ranked));
}

Summary summarize(const TripleStore& store, const UsageMatrix& matrix,
                  const EntityLinkMap& links, std::string_view id,
                  const SummaryOptions& options) {
  options.validate();
  const Term entity = resolve_entity(store, links, id, options.type_filter);
  NeighborMap lists;
  for (const auto& item : links.items_of(entity.lexical)) {
    if (matrix.find_item(item)) {
      lists.emplace(item, neighbors(matrix, item, options.neighborhood));
    }
  }
  return summarize(store, lists, links, entity.lexical, options);
}

std::string path_label(const std::vector<Term>& path) {
  std::string out;
  for (const auto& p : path) {
    if (!out.empty()) out += '/';
    out += display(p);
  }
  return out;
}

void write_summary_tsv(std::ostream& out, const Summary& summary) {
  const auto& opt = summary.options;
  out << "# entity=" << summary.entity << " mode=" << mode_name(opt.neighborhood.mode);
  if (opt.neighborhood.mode == Neighborhood::Mode::fixed_k) {
    out << " k=" << opt.neighborhood.k;
  } else {
    char tau[32];
    std::snprintf(tau, sizeof tau, "%g", opt.neighborhood.tau);
    out << " tau=" << tau;
  }
  out << " n=" << opt.n;
  if (opt.two_hop) out << " two-hop";
  if (summary.status != "ok") out << " status=\"" << summary.status << '"';
  out << '\n';

  char weight[48];
  std::size_t rank = 0;
  for (const auto& f : summary.features) {
    std::snprintf(weight, sizeof weight, "%.2f", f.weight);
    out << ++rank << '\t' << weight << '\t' << path_label(f.path) << '\t'
        << display(f.value) << '\n';
  }
}

void write_summaries_structured(std::ostream& out,
                                const std::vector<Summary>& summaries) {
  using nlohmann::ordered_json;
  ordered_json doc = ordered_json::array();
  for (const auto& s : summaries) {
    ordered_json entry;
    entry["entity"] = s.entity;
    entry["status"] = s.status;
    ordered_json params;
    params["mode"] = mode_name(s.options.neighborhood.mode);
    if (s.options.neighborhood.mode == Neighborhood::Mode::fixed_k) {
      params["k"] = s.options.neighborhood.k;
    } else {
      params["tau"] = s.options.neighborhood.tau;
    }
    params["n"] = s.options.n;
    params["two_hop"] = s.options.two_hop;
    params["knn_predicate"] = s.options.knn_predicate.lexical;
    params["type_filter"] = s.options.type_filter.lexical;
    entry["parameters"] = std::move(params);

    ordered_json features = ordered_json::array();
    std::size_t rank = 0;
    for (const auto& f : s.features) {
      ordered_json jf;
      jf["rank"] = ++rank;
      jf["weight"] = f.weight;
      ordered_json path = ordered_json::array();
      for (const auto& p : f.path) path.push_back(display(p));
      jf["property"] = std::move(path);
      jf["value"] = display(f.value);
      jf["value_kind"] = f.value.is_iri()       ? "iri"
                         : f.value.is_literal() ? "literal"
                                                : "blank";
      jf["neighbor_support"] = f.neighbor_support;
      jf["global_support"] = f.global_support;
      features.push_back(std::move(jf));
    }
    entry["features"] = std::move(features);
    doc.push_back(std::move(entry));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace knnsum
