#pragma once

// Independent reference implementations used only by the tests. None of them
// call into the library code paths they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "knnsum/term.hpp"

namespace knnsum::oracle {

// Textbook G-test of independence: 2 * sum O * ln(O / E), E = row * col / N.
inline double g_squared(std::uint64_t k11, std::uint64_t k12, std::uint64_t k21,
                        std::uint64_t k22) {
  const double obs[2][2] = {{double(k11), double(k12)}, {double(k21), double(k22)}};
  const double n = obs[0][0] + obs[0][1] + obs[1][0] + obs[1][1];
  double g = 0.0;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) {
      if (obs[r][c] == 0.0) continue;
      const double row = obs[r][0] + obs[r][1];
      const double col = obs[0][c] + obs[1][c];
      const double expected = row * col / n;
      g += obs[r][c] * std::log(obs[r][c] / expected);
    }
  }
  return 2.0 * g;
}

// Rank-1 (independent) table: k11 * k22 == k12 * k21.
inline bool is_rank_one(std::uint64_t k11, std::uint64_t k12, std::uint64_t k21,
                        std::uint64_t k22) {
  return k11 * k22 == k12 * k21;
}

using Pair = std::pair<std::string, std::string>;

// Contingency counts by rescanning the raw (user, item) log.
inline std::array<std::uint64_t, 4> contingency(const std::vector<Pair>& log,
                                                const std::string& a,
                                                const std::string& b) {
  std::set<std::string> users;
  std::set<std::string> ra;
  std::set<std::string> rb;
  for (const auto& [u, i] : log) {
    users.insert(u);
    if (i == a) ra.insert(u);
    if (i == b) rb.insert(u);
  }
  std::uint64_t both = 0;
  std::uint64_t only_a = 0;
  std::uint64_t only_b = 0;
  std::uint64_t none = 0;
  for (const auto& u : users) {
    const bool in_a = ra.contains(u);
    const bool in_b = rb.contains(u);
    if (in_a && in_b) ++both;
    else if (in_a) ++only_a;
    else if (in_b) ++only_b;
    else ++none;
  }
  return {both, only_a, only_b, none};
}

inline std::vector<Triple> with_predicate(const std::vector<Triple>& ts,
                                          const Term& p) {
  std::vector<Triple> out;
  for (const auto& t : ts) {
    if (t.predicate == p) out.push_back(t);
  }
  return out;
}

inline bool holds(const std::vector<Triple>& ts, const Term& s, const Term& p,
                  const Term& o) {
  return std::any_of(ts.begin(), ts.end(), [&](const Triple& t) {
    return t.subject == s && t.predicate == p && t.object == o;
  });
}

inline bool typed(const std::vector<Triple>& ts, const Term& s,
                  const Term& type) {
  return holds(ts, s, Term::iri(kRdfType), type);
}

// Neighbors per Listing-style query: knn edges, typed, not e.
inline std::set<Term> neighbors(const std::vector<Triple>& ts, const Term& e,
                                const Term& knn, const Term& type) {
  std::set<Term> out;
  for (const auto& t : ts) {
    if (t.subject == e && t.predicate == knn && t.object != e &&
        typed(ts, t.object, type)) {
      out.insert(t.object);
    }
  }
  return out;
}

// Nested scan over all triples for the one-hop shared-feature query.
inline std::map<Feature, std::set<Term>> one_hop(const std::vector<Triple>& ts,
                                                 const Term& e, const Term& knn,
                                                 const Term& type) {
  std::map<Feature, std::set<Term>> out;
  const auto ns = neighbors(ts, e, knn, type);
  for (const auto& own : ts) {
    if (own.subject != e || own.predicate == knn) continue;
    for (const auto& other : ts) {
      if (other.predicate == own.predicate && other.object == own.object &&
          ns.contains(other.subject)) {
        out[Feature{own.predicate, own.object}].insert(other.subject);
      }
    }
  }
  return out;
}

// Full-scan path set {(p, q, t) : x p m . m q t, p != knn} of one node.
inline std::set<TwoHopFeature> paths_from(const std::vector<Triple>& ts,
                                          const Term& x, const Term& knn) {
  std::set<TwoHopFeature> out;
  for (const auto& first : ts) {
    if (first.subject != x || first.predicate == knn) continue;
    for (const auto& second : ts) {
      if (second.subject == first.object) {
        out.insert({first.predicate, second.predicate, second.object});
      }
    }
  }
  return out;
}

// Scan-based evaluation of the two-hop query:
// e p o . o q t . s p r . r q t, s a typed knn neighbor of e.
inline std::map<TwoHopFeature, std::set<Term>> two_hop(
    const std::vector<Triple>& ts, const Term& e, const Term& knn,
    const Term& type) {
  std::map<TwoHopFeature, std::set<Term>> out;
  const auto own = paths_from(ts, e, knn);
  if (own.empty()) return out;
  for (const auto& s : neighbors(ts, e, knn, type)) {
    for (const auto& path : paths_from(ts, s, knn)) {
      if (own.contains(path)) out[path].insert(s);
    }
  }
  return out;
}

struct OracleWeight {
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t universe = 0;
  double weight = 0.0;
};

// |A|, |B|, |E| recounted from raw triples; log_fn selects the base.
template <typename LogFn>
std::map<Feature, OracleWeight> weights(const std::vector<Triple>& ts,
                                        const Term& e, const Term& knn,
                                        const Term& type, LogFn log_fn) {
  std::set<Term> universe;
  for (const auto& t : ts) {
    if (t.predicate == Term::iri(kRdfType) && t.object == type) {
      universe.insert(t.subject);
    }
  }
  std::map<Feature, OracleWeight> out;
  for (const auto& [f, witnesses] : one_hop(ts, e, knn, type)) {
    OracleWeight w;
    w.a = witnesses.size();
    for (const auto& s : universe) {
      if (holds(ts, s, f.property, f.value)) ++w.b;
    }
    w.universe = universe.size();
    w.weight = static_cast<double>(w.a) *
               log_fn(static_cast<double>(w.universe) / static_cast<double>(w.b));
    out[f] = w;
  }
  return out;
}

// Random entity graph: typed entities with features drawn from a small pool
// and random knn edges.
struct RandomGraph {
  std::vector<Triple> triples;
  std::vector<Term> entities;
  Term type = Term::iri("http://ex.org/Film");
  Term knn = Term::iri("urn:knnsum:knn");
};

inline RandomGraph random_graph(std::mt19937_64& rng, std::size_t max_entities,
                                std::size_t max_features) {
  RandomGraph g;
  std::uniform_int_distribution<std::size_t> n_ent(2, max_entities);
  std::uniform_int_distribution<std::size_t> n_feat(1, max_features);
  const std::size_t ne = n_ent(rng);
  const std::size_t nf = n_feat(rng);
  std::uniform_int_distribution<std::size_t> pick_entity(0, ne - 1);
  std::uniform_int_distribution<std::size_t> pick_feature(0, nf - 1);
  std::uniform_int_distribution<int> coin(0, 9);

  std::vector<Feature> pool;
  for (std::size_t i = 0; i < nf; ++i) {
    pool.push_back({Term::iri("http://ex.org/p" + std::to_string(i % 4)),
                    Term::iri("http://ex.org/v" + std::to_string(i))});
  }
  // One feature held by every typed entity when the coin says so.
  const bool universal = coin(rng) < 5;
  const Feature everywhere{Term::iri("http://ex.org/country"),
                           Term::iri("http://ex.org/everywhere")};

  for (std::size_t i = 0; i < ne; ++i) {
    const Term e = Term::iri("http://ex.org/e" + std::to_string(i));
    g.entities.push_back(e);
    // A few untyped entities make the type filter matter.
    if (coin(rng) < 9) {
      g.triples.push_back({e, Term::iri(kRdfType), g.type});
      if (universal) g.triples.push_back({e, everywhere.property, everywhere.value});
    }
    const std::size_t count = pick_feature(rng) + 1;
    for (std::size_t j = 0; j < count; ++j) {
      const auto& f = pool[pick_feature(rng)];
      g.triples.push_back({e, f.property, f.value});
    }
    const std::size_t edges = pick_entity(rng) % 6;
    for (std::size_t j = 0; j < edges; ++j) {
      g.triples.push_back(
          {e, g.knn, Term::iri("http://ex.org/e" + std::to_string(pick_entity(rng)))});
    }
  }
  std::sort(g.triples.begin(), g.triples.end());
  g.triples.erase(std::unique(g.triples.begin(), g.triples.end()), g.triples.end());
  return g;
}

// Random graph with intermediate nodes for two-hop paths, at most
// `max_triples` triples.
inline RandomGraph random_path_graph(std::mt19937_64& rng,
                                     std::size_t max_triples) {
  RandomGraph g;
  std::uniform_int_distribution<std::size_t> n_ent(2, 12);
  const std::size_t ne = n_ent(rng);
  std::uniform_int_distribution<std::size_t> pick_entity(0, ne - 1);
  std::uniform_int_distribution<std::size_t> pick_mid(0, 9);
  std::uniform_int_distribution<std::size_t> pick_terminal(0, 5);
  std::uniform_int_distribution<std::size_t> pick_pred(0, 2);
  std::uniform_int_distribution<int> pick_kind(0, 9);

  auto entity = [](std::size_t i) {
    return Term::iri("http://ex.org/e" + std::to_string(i));
  };
  for (std::size_t i = 0; i < ne; ++i) {
    if (pick_kind(rng) < 8) {
      g.triples.push_back({entity(i), Term::iri(kRdfType), g.type});
    }
    g.entities.push_back(entity(i));
  }
  std::uniform_int_distribution<std::size_t> n_triples(ne, max_triples);
  const std::size_t target = n_triples(rng);
  while (g.triples.size() < target) {
    const int kind = pick_kind(rng);
    const Term p = Term::iri("http://ex.org/p" + std::to_string(pick_pred(rng)));
    const Term q = Term::iri("http://ex.org/q" + std::to_string(pick_pred(rng)));
    Term mid = pick_kind(rng) < 5
                   ? Term::blank("m" + std::to_string(pick_mid(rng)))
                   : Term::iri("http://ex.org/m" + std::to_string(pick_mid(rng)));
    if (kind < 4) {
      g.triples.push_back({entity(pick_entity(rng)), p, mid});
    } else if (kind < 8) {
      const Term t = pick_kind(rng) < 7
                         ? Term::iri("http://ex.org/t" +
                                     std::to_string(pick_terminal(rng)))
                         : Term::literal(std::to_string(pick_terminal(rng)));
      g.triples.push_back({mid, q, t});
    } else if (kind < 9) {
      g.triples.push_back({entity(pick_entity(rng)), g.knn, entity(pick_entity(rng))});
    } else {
      // Paths may also run through entities and through knn edges.
      g.triples.push_back({entity(pick_entity(rng)), p, entity(pick_entity(rng))});
    }
  }
  std::sort(g.triples.begin(), g.triples.end());
  g.triples.erase(std::unique(g.triples.begin(), g.triples.end()), g.triples.end());
  return g;
}

}  // namespace knnsum::oracle
