#include "knnsum/link_map.hpp"

#include <algorithm>
#include <fstream>

namespace knnsum {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

bool is_valid_iri(std::string_view iri) {
  const auto colon = iri.find(':');
  if (colon == std::string_view::npos || colon == 0 || colon + 1 == iri.size()) {
    return false;
  }
  const auto is_alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  };
  if (!is_alpha(iri.front())) return false;
  return std::none_of(iri.begin(), iri.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '<' ||
           c == '>' || c == '"';
  });
}

bool EntityLinkMap::add(std::string item, std::string entity_iri) {
  if (item.empty()) throw InvalidArgument("empty item id in link map");
  if (!is_valid_iri(entity_iri)) {
    throw InvalidArgument("invalid entity IRI '" + entity_iri + "'");
  }
  const auto [it, inserted] = forward_.try_emplace(item, entity_iri);
  if (!inserted) return false;
  auto& items = reverse_[entity_iri];
  items.insert(std::lower_bound(items.begin(), items.end(), item), item);
  return true;
}

std::optional<std::string> EntityLinkMap::entity_of(std::string_view item) const {
  const auto it = forward_.find(item);
  if (it == forward_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> EntityLinkMap::items_of(
    std::string_view entity_iri) const {
  const auto it = reverse_.find(entity_iri);
  if (it == reverse_.end()) return {};
  return it->second;
}

LinkLoadResult load_link_map(std::istream& source) {
  if (!source) throw IoError("link map stream is not readable");
  LinkLoadResult result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    const auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;

    const auto tab = view.find('\t');
    if (tab == std::string_view::npos) {
      result.diagnostics.push_back({line_no, "expected item_id<TAB>entity_iri"});
      continue;
    }
    const auto item = trim(view.substr(0, tab));
    auto iri = trim(view.substr(tab + 1));
    if (iri.size() >= 2 && iri.front() == '<' && iri.back() == '>') {
      iri = iri.substr(1, iri.size() - 2);
    }
    if (item.empty()) {
      result.diagnostics.push_back({line_no, "empty item id"});
      continue;
    }
    if (!is_valid_iri(iri)) {
      result.diagnostics.push_back(
          {line_no, "invalid entity IRI '" + std::string(iri) + "'"});
      continue;
    }
    if (!result.links.add(std::string(item), std::string(iri))) {
      result.diagnostics.push_back(
          {line_no, "item '" + std::string(item) +
                        "' already linked; keeping the first mapping"});
    }
  }
  if (source.bad()) throw IoError("error while reading link map");
  return result;
}

LinkLoadResult load_link_map_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open link map '" + path + "'");
  return load_link_map(in);
}

}  // namespace knnsum
