#include "knnsum/term.hpp"

#include <functional>
#include <utility>

#include "knnsum/ntriples.hpp"

namespace knnsum {

Term Term::iri(std::string value) {
  Term t;
  t.kind = TermKind::iri;
  t.lexical = std::move(value);
  return t;
}

Term Term::blank(std::string label) {
  Term t;
  t.kind = TermKind::blank;
  t.lexical = std::move(label);
  return t;
}

Term Term::literal(std::string value, std::string language,
                   std::string datatype) {
  Term t;
  t.kind = TermKind::literal;
  t.lexical = std::move(value);
  t.language = std::move(language);
  t.datatype = std::move(datatype);
  return t;
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
  const std::hash<std::string> h;
  std::size_t seed = h(t.lexical) ^ (static_cast<std::size_t>(t.kind) << 1);
  if (t.kind == TermKind::literal) {
    seed ^= h(t.language) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    seed ^= h(t.datatype) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  }
  return seed;
}

std::string to_ntriples(const Term& t) {
  switch (t.kind) {
    case TermKind::iri:
      return "<" + t.lexical + ">";
    case TermKind::blank:
      return "_:" + t.lexical;
    case TermKind::literal: {
      std::string s = "\"" + ntriples::escape_literal(t.lexical) + "\"";
      if (!t.language.empty()) {
        s += "@" + t.language;
      } else if (!t.datatype.empty()) {
        s += "^^<" + t.datatype + ">";
      }
      return s;
    }
  }
  return {};
}

std::string display(const Term& t) {
  if (t.kind == TermKind::blank) return "_:" + t.lexical;
  return t.lexical;
}

}  // namespace knnsum
