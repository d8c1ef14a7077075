#include "knnsum/bundle.hpp"

#include <cstdio>
#include <fstream>

#include "json.hpp"
#include "knnsum/errors.hpp"

namespace knnsum {

namespace {

constexpr int kFormatVersion = 1;

}  // namespace

void save_bundle(std::ostream& out, const IndexBundle& bundle) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["format"] = "knnsum-bundle";
  doc["version"] = kFormatVersion;

  char digest[24];
  std::snprintf(digest, sizeof digest, "%016llx",
                static_cast<unsigned long long>(bundle.digest));
  doc["matrix"] = {{"users", bundle.users},
                   {"items", bundle.items},
                   {"events", bundle.events},
                   {"digest", digest}};

  ordered_json hood;
  if (bundle.neighborhood.mode == Neighborhood::Mode::fixed_k) {
    hood["mode"] = "fixed-k";
    hood["k"] = bundle.neighborhood.k;
  } else {
    hood["mode"] = "threshold";
    hood["tau"] = bundle.neighborhood.tau;
  }
  doc["neighborhood"] = std::move(hood);
  doc["knn_predicate"] = bundle.knn_predicate;
  doc["knn_triples"] = bundle.knn_triples;

  ordered_json lists = ordered_json::object();
  for (const auto& [item, list] : bundle.neighbors) {
    ordered_json rows = ordered_json::array();
    for (const auto& nb : list.neighbors) rows.push_back({nb.item, nb.score});
    lists[item] = std::move(rows);
  }
  doc["neighbors"] = std::move(lists);
  out << doc.dump() << '\n';
  if (!out) throw IoError("failed to write bundle");
}

IndexBundle load_bundle(std::istream& in) {
  if (!in) throw IoError("bundle stream is not readable");
  try {
    const auto doc = nlohmann::json::parse(in);
    if (doc.at("format").get<std::string>() != "knnsum-bundle" ||
        doc.at("version").get<int>() != kFormatVersion) {
      throw IoError("unsupported bundle format");
    }
    IndexBundle b;
    const auto& m = doc.at("matrix");
    b.users = m.at("users").get<std::size_t>();
    b.items = m.at("items").get<std::size_t>();
    b.events = m.at("events").get<std::size_t>();
    b.digest = std::stoull(m.at("digest").get<std::string>(), nullptr, 16);

    const auto& hood = doc.at("neighborhood");
    if (hood.at("mode").get<std::string>() == "fixed-k") {
      b.neighborhood = Neighborhood::fixed(hood.at("k").get<std::size_t>());
    } else {
      b.neighborhood = Neighborhood::above(hood.at("tau").get<double>());
    }
    b.knn_predicate = doc.at("knn_predicate").get<std::string>();
    b.knn_triples = doc.at("knn_triples").get<std::size_t>();

    for (const auto& [item, rows] : doc.at("neighbors").items()) {
      NeighborList list;
      list.center = item;
      for (const auto& row : rows) {
        list.neighbors.push_back(
            {row.at(0).get<std::string>(), row.at(1).get<double>()});
      }
      b.neighbors.emplace(item, std::move(list));
    }
    return b;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed bundle: ") + e.what());
  } catch (const std::logic_error& e) {
    throw IoError(std::string("malformed bundle: ") + e.what());
  }
}

void save_bundle_file(const std::string& path, const IndexBundle& bundle) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write bundle '" + path + "'");
  save_bundle(out, bundle);
}

IndexBundle load_bundle_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open bundle '" + path + "'");
  return load_bundle(in);
}

}  // namespace knnsum
