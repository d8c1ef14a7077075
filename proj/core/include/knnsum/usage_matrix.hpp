#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "knnsum/errors.hpp"

namespace knnsum {

using ItemIndex = std::uint32_t;
using UserIndex = std::uint32_t;

// Column mapping for a delimited ratings log. Only user and item are stored;
// rating and timestamp columns, when mapped, must be present but are dropped.
struct RatingsFormat {
  char delimiter = '\t';
  std::size_t user_column = 0;
  std::size_t item_column = 1;
  std::optional<std::size_t> rating_column;
  std::optional<std::size_t> timestamp_column;
  bool header = true;

  std::size_t max_column() const;
};

// The four user counts for an ordered item pair (a, b):
// both, a only, b only, neither.
struct ContingencyTable {
  std::uint64_t k11 = 0;
  std::uint64_t k12 = 0;
  std::uint64_t k21 = 0;
  std::uint64_t k22 = 0;

  std::uint64_t total() const { return k11 + k12 + k21 + k22; }
  bool operator==(const ContingencyTable&) const = default;
};

// Immutable binary user x item incidence. Users and items are indexed in
// ascending lexicographic order of their ids, so index order doubles as the
// deterministic tie-break order.
class UsageMatrix {
 public:
  UsageMatrix() = default;

  // Builds from (user, item) pairs; duplicates collapse.
  static UsageMatrix from_pairs(
      std::span<const std::pair<std::string, std::string>> pairs);

  std::size_t user_count() const { return users_.size(); }
  std::size_t item_count() const { return items_.size(); }
  std::size_t total_users() const { return users_.size(); }
  std::size_t event_count() const { return events_; }

  const std::vector<std::string>& users() const { return users_; }
  const std::vector<std::string>& items() const { return items_; }

  std::optional<ItemIndex> find_item(std::string_view id) const;
  std::optional<UserIndex> find_user(std::string_view id) const;
  ItemIndex item_index(std::string_view id) const;  // throws LookupError

  const std::string& item_id(ItemIndex i) const { return items_.at(i); }

  // Sorted user indexes that used item i.
  std::span<const UserIndex> raters(ItemIndex i) const { return raters_.at(i); }
  // Sorted item indexes used by user u.
  std::span<const ItemIndex> items_of(UserIndex u) const {
    return user_items_.at(u);
  }

  // Order-independent FNV-1a digest over the sorted (user, item) pairs.
  std::uint64_t digest() const;

  bool operator==(const UsageMatrix& other) const {
    return users_ == other.users_ && items_ == other.items_ &&
           raters_ == other.raters_;
  }

 private:
  std::vector<std::string> users_;
  std::vector<std::string> items_;
  std::unordered_map<std::string, UserIndex> user_lookup_;
  std::unordered_map<std::string, ItemIndex> item_lookup_;
  std::vector<std::vector<UserIndex>> raters_;
  std::vector<std::vector<ItemIndex>> user_items_;
  std::size_t events_ = 0;
};

struct IngestResult {
  UsageMatrix matrix;
  std::vector<Diagnostic> rejected;
  std::size_t lines_read = 0;
};

// Reads a delimited ratings log. Malformed lines are rejected with a
// diagnostic and skipped; a stream in a failed state throws IoError.
IngestResult ingest_ratings(std::istream& source, const RatingsFormat& format);
IngestResult ingest_ratings_file(const std::string& path,
                                 const RatingsFormat& format);

// Throws LookupError for unknown ids and InvalidArgument when a == b.
ContingencyTable cooccurrence(const UsageMatrix& m, std::string_view a,
                              std::string_view b);
ContingencyTable cooccurrence(const UsageMatrix& m, ItemIndex a, ItemIndex b);

}  // namespace knnsum
