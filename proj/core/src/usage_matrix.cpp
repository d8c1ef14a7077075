#include "knnsum/usage_matrix.hpp"

#include <algorithm>
#include <fstream>
#include <string>

namespace knnsum {

namespace {

std::vector<std::string_view> split(std::string_view line, char delimiter) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delimiter, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::size_t RatingsFormat::max_column() const {
  std::size_t m = std::max(user_column, item_column);
  if (rating_column) m = std::max(m, *rating_column);
  if (timestamp_column) m = std::max(m, *timestamp_column);
  return m;
}

UsageMatrix UsageMatrix::from_pairs(
    std::span<const std::pair<std::string, std::string>> pairs) {
  UsageMatrix m;
  for (const auto& [user, item] : pairs) {
    m.users_.push_back(user);
    m.items_.push_back(item);
  }
  auto dedupe = [](std::vector<std::string>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedupe(m.users_);
  dedupe(m.items_);

  m.user_lookup_.reserve(m.users_.size());
  for (UserIndex u = 0; u < m.users_.size(); ++u) m.user_lookup_[m.users_[u]] = u;
  m.item_lookup_.reserve(m.items_.size());
  for (ItemIndex i = 0; i < m.items_.size(); ++i) m.item_lookup_[m.items_[i]] = i;

  m.raters_.resize(m.items_.size());
  m.user_items_.resize(m.users_.size());
  for (const auto& [user, item] : pairs) {
    const UserIndex u = m.user_lookup_.at(user);
    const ItemIndex i = m.item_lookup_.at(item);
    m.raters_[i].push_back(u);
    m.user_items_[u].push_back(i);
  }
  auto sort_unique = [](auto& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  for (auto& r : m.raters_) sort_unique(r);
  m.events_ = 0;
  for (auto& r : m.user_items_) {
    sort_unique(r);
    m.events_ += r.size();
  }
  return m;
}

std::optional<ItemIndex> UsageMatrix::find_item(std::string_view id) const {
  const auto it = item_lookup_.find(std::string(id));
  if (it == item_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<UserIndex> UsageMatrix::find_user(std::string_view id) const {
  const auto it = user_lookup_.find(std::string(id));
  if (it == user_lookup_.end()) return std::nullopt;
  return it->second;
}

ItemIndex UsageMatrix::item_index(std::string_view id) const {
  if (auto i = find_item(id)) return *i;
  throw LookupError("unknown item id '" + std::string(id) + "'");
}

std::uint64_t UsageMatrix::digest() const {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&h](std::string_view s) {
    for (const unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    h ^= 0xff;  // field separator
    h *= 1099511628211ULL;
  };
  for (UserIndex u = 0; u < users_.size(); ++u) {
    for (const ItemIndex i : user_items_[u]) {
      mix(users_[u]);
      mix(items_[i]);
    }
  }
  return h;
}

IngestResult ingest_ratings(std::istream& source, const RatingsFormat& format) {
  if (!source) throw IoError("ratings stream is not readable");
  if (format.user_column == format.item_column) {
    throw InvalidArgument("user and item columns must differ");
  }

  IngestResult result;
  std::vector<std::pair<std::string, std::string>> pairs;
  const std::size_t needed = format.max_column() + 1;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && format.header) continue;
    if (trim(line).empty()) continue;

    const auto fields = split(line, format.delimiter);
    if (fields.size() < needed) {
      result.rejected.push_back(
          {line_no, "expected at least " + std::to_string(needed) +
                        " columns, found " + std::to_string(fields.size())});
      continue;
    }
    const auto user = trim(fields[format.user_column]);
    const auto item = trim(fields[format.item_column]);
    if (user.empty() || item.empty()) {
      result.rejected.push_back({line_no, "empty user or item id"});
      continue;
    }
    pairs.emplace_back(std::string(user), std::string(item));
  }
  if (source.bad()) throw IoError("error while reading ratings stream");

  result.lines_read = line_no;
  result.matrix = UsageMatrix::from_pairs(pairs);
  return result;
}

IngestResult ingest_ratings_file(const std::string& path,
                                 const RatingsFormat& format) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ratings file '" + path + "'");
  return ingest_ratings(in, format);
}

ContingencyTable cooccurrence(const UsageMatrix& m, ItemIndex a, ItemIndex b) {
  if (a == b) throw InvalidArgument("co-occurrence needs two distinct items");
  const auto ra = m.raters(a);
  const auto rb = m.raters(b);
  std::uint64_t both = 0;
  auto ia = ra.begin();
  auto ib = rb.begin();
  while (ia != ra.end() && ib != rb.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++both;
      ++ia;
      ++ib;
    }
  }
  ContingencyTable t;
  t.k11 = both;
  t.k12 = ra.size() - both;
  t.k21 = rb.size() - both;
  t.k22 = m.total_users() - both - t.k12 - t.k21;
  return t;
}

ContingencyTable cooccurrence(const UsageMatrix& m, std::string_view a,
                              std::string_view b) {
  const ItemIndex ia = m.item_index(a);
  const ItemIndex ib = m.item_index(b);
  if (ia == ib) {
    throw InvalidArgument("co-occurrence of item '" + std::string(a) +
                          "' with itself");
  }
  return cooccurrence(m, ia, ib);
}

}  // namespace knnsum
