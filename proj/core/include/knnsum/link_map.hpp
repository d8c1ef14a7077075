#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knnsum/errors.hpp"

namespace knnsum {

// Static item id -> entity IRI mapping. Several item ids may link to the same
// entity (duplicate records in a usage dataset); the map keeps them as given.
class EntityLinkMap {
 public:
  // Throws InvalidArgument for an empty item id or a malformed IRI.
  // Returns false (and keeps the first mapping) if the item is already linked.
  bool add(std::string item, std::string entity_iri);

  std::optional<std::string> entity_of(std::string_view item) const;
  // Item ids linking to an entity, ascending.
  std::vector<std::string> items_of(std::string_view entity_iri) const;

  std::size_t size() const { return forward_.size(); }
  bool empty() const { return forward_.empty(); }
  const std::map<std::string, std::string, std::less<>>& entries() const {
    return forward_;
  }

 private:
  std::map<std::string, std::string, std::less<>> forward_;
  std::map<std::string, std::vector<std::string>, std::less<>> reverse_;
};

// Accepts `scheme:rest` with no whitespace, angle brackets or quotes.
bool is_valid_iri(std::string_view iri);

struct LinkLoadResult {
  EntityLinkMap links;
  std::vector<Diagnostic> diagnostics;
};

// `item_id <TAB> entity_iri` per line; `#` comments and blank lines are
// skipped; the IRI may be wrapped in angle brackets.
LinkLoadResult load_link_map(std::istream& source);
LinkLoadResult load_link_map_file(const std::string& path);

}  // namespace knnsum
