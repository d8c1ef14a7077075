#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>

namespace knnsum {

enum class TermKind : std::uint8_t { iri, literal, blank };

// An RDF term. Identity is exact lexical equality within a kind; no IRI
// normalization is performed.
struct Term {
  TermKind kind = TermKind::iri;
  std::string lexical;
  std::string language;  // literals only
  std::string datatype;  // literals only

  static Term iri(std::string value);
  static Term blank(std::string label);
  static Term literal(std::string value, std::string language = {},
                      std::string datatype = {});

  bool is_iri() const { return kind == TermKind::iri; }
  bool is_literal() const { return kind == TermKind::literal; }
  bool is_blank() const { return kind == TermKind::blank; }

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept;
};

// N-Triples form: <iri>, _:label or "escaped"@lang / ^^<dt>.
std::string to_ntriples(const Term& t);

// Human-readable form used in TSV output: the bare IRI, the literal's lexical
// value, or _:label.
std::string display(const Term& t);

struct Triple {
  Term subject;
  Term predicate;
  Term object;

  auto operator<=>(const Triple&) const = default;
  bool operator==(const Triple&) const = default;
};

// A property-value pair.
struct Feature {
  Term property;
  Term value;

  auto operator<=>(const Feature&) const = default;
  bool operator==(const Feature&) const = default;
};

// A composite feature reached over an intermediate node: e -p-> * -q-> t.
struct TwoHopFeature {
  Term first;
  Term second;
  Term terminal;

  auto operator<=>(const TwoHopFeature&) const = default;
  bool operator==(const TwoHopFeature&) const = default;
};

inline constexpr const char* kRdfType =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

}  // namespace knnsum
