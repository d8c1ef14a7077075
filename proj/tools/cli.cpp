#include "cli.hpp"

#include <fstream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "knnsum/bundle.hpp"
#include "knnsum/knn_graph.hpp"
#include "knnsum/link_map.hpp"
#include "knnsum/ntriples.hpp"
#include "knnsum/similarity.hpp"
#include "knnsum/summarizer.hpp"
#include "knnsum/usage_matrix.hpp"

namespace knnsum::cli {

namespace {

constexpr std::size_t kMaxPrintedDiagnostics = 20;

struct Settings {
  std::string ratings;
  std::string triples;
  std::string links;
  std::string bundle = "knnsum.bundle.json";
  std::size_t k = 20;
  std::size_t n = 10;
  std::optional<double> threshold;
  std::string type_filter = "http://rdf.freebase.com/ns/film.film";
  std::string knn_predicate = "urn:knnsum:knn";
  std::string format = "tsv";
  bool two_hop = false;
  std::string out = "-";
  unsigned threads = 0;

  char delimiter = '\t';
  std::size_t user_column = 0;
  std::size_t item_column = 1;
  std::optional<std::size_t> rating_column;
  bool no_header = false;

  std::vector<std::string> ids;
  bool all = false;
  bool k_given = false;
};

// Raised inside a command to leave with a specific exit code.
struct CommandError {
  int code;
  std::string message;
};

void report(std::ostream& err, const std::string& source,
            const std::vector<Diagnostic>& diagnostics) {
  if (diagnostics.empty()) return;
  std::size_t shown = 0;
  for (const auto& d : diagnostics) {
    if (shown++ == kMaxPrintedDiagnostics) break;
    err << source << ":" << d.line << ": " << d.reason << '\n';
  }
  err << source << ": " << diagnostics.size() << " line(s) rejected\n";
}

const std::string& require_path(const std::string& path, const char* flag) {
  if (path.empty()) {
    throw CommandError{kInputError, std::string("missing required ") + flag};
  }
  return path;
}

// Runs `load`, translating IoError into an input-error exit.
template <typename F>
auto load(const std::string& path, F&& loader) {
  try {
    return loader(path);
  } catch (const IoError& e) {
    throw CommandError{kInputError, e.what()};
  }
}

Neighborhood requested_neighborhood(const Settings& s) {
  return s.threshold ? Neighborhood::above(*s.threshold)
                     : Neighborhood::fixed(s.k);
}

// Output sink: stdout or a file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw CommandError{kInputError, "cannot write '" + path + "'"};
    stream_ = file_.get();
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

// Neighbor lists of a bundle adjusted to the requested neighborhood: a
// smaller k is a prefix of the stored lists; anything else needs a rebuild.
NeighborMap lists_for(const IndexBundle& bundle, const Settings& s,
                      Neighborhood& used) {
  const auto& built = bundle.neighborhood;
  used = built;
  if (s.threshold) {
    if (built.mode != Neighborhood::Mode::threshold || built.tau != *s.threshold) {
      throw CommandError{kInputError,
                         "bundle was not built with this threshold; rerun build"};
    }
    return bundle.neighbors;
  }
  if (!s.k_given || built.mode == Neighborhood::Mode::threshold) {
    if (s.k_given) {
      throw CommandError{kInputError,
                         "bundle was built in threshold mode; rerun build with --k"};
    }
    return bundle.neighbors;
  }
  if (s.k > built.k) {
    throw CommandError{kInputError, "bundle was built with k=" +
                                        std::to_string(built.k) +
                                        "; rerun build with a larger k"};
  }
  used = Neighborhood::fixed(s.k);
  NeighborMap lists = bundle.neighbors;
  for (auto& [item, list] : lists) {
    if (list.neighbors.size() > s.k) list.neighbors.resize(s.k);
  }
  return lists;
}

int cmd_build(const Settings& s, std::ostream& out, std::ostream& err) {
  const auto hood = requested_neighborhood(s);
  hood.validate();

  RatingsFormat format;
  format.delimiter = s.delimiter;
  format.user_column = s.user_column;
  format.item_column = s.item_column;
  format.rating_column = s.rating_column;
  format.header = !s.no_header;

  const auto& ratings_path = require_path(s.ratings, "--ratings");
  const auto& links_path = require_path(s.links, "--links");
  const auto& triples_path = require_path(s.triples, "--triples");

  auto ratings = load(ratings_path, [&](const std::string& p) {
    return ingest_ratings_file(p, format);
  });
  report(err, ratings_path, ratings.rejected);
  auto links = load(links_path, load_link_map_file);
  report(err, links_path, links.diagnostics);
  auto graph = load(triples_path, load_ntriples_file);
  report(err, triples_path, graph.diagnostics);

  const auto& matrix = ratings.matrix;
  std::size_t unmatched = 0;
  for (const auto& item : matrix.items()) {
    const auto iri = links.links.entity_of(item);
    if (!iri || !graph.store.has_subject(Term::iri(*iri))) ++unmatched;
  }
  const std::size_t linked = matrix.item_count() - unmatched;
  if (unmatched > 0) err << "links: " << unmatched << " unmatched\n";
  if (linked == 0) {
    throw CommandError{kResolutionError,
                       "no item id of the ratings log links to an entity in the "
                       "triple store"};
  }

  IndexBundle bundle;
  bundle.users = matrix.user_count();
  bundle.items = matrix.item_count();
  bundle.events = matrix.event_count();
  bundle.digest = matrix.digest();
  bundle.neighborhood = hood;
  bundle.knn_predicate = s.knn_predicate;
  bundle.neighbors = all_pairs_neighbors(matrix, hood, s.threads);

  const auto materialized = materialize_knn(
      graph.store, bundle.neighbors, links.links, Term::iri(s.knn_predicate));
  bundle.knn_triples = materialized.added;
  if (!materialized.skipped.empty()) {
    err << "knn: " << materialized.skipped.size()
        << " neighbor reference(s) skipped (unresolvable ids)\n";
  }

  try {
    save_bundle_file(s.bundle, bundle);
  } catch (const IoError& e) {
    throw CommandError{kInputError, e.what()};
  }

  out << "users\t" << bundle.users << '\n'
      << "items\t" << bundle.items << '\n'
      << "events\t" << bundle.events << '\n'
      << "rejected_lines\t" << ratings.rejected.size() << '\n'
      << "linked\t" << linked << '\n'
      << "unmatched\t" << unmatched << '\n'
      << "knn_triples\t" << bundle.knn_triples << '\n'
      << "bundle\t" << s.bundle << '\n';
  return kSuccess;
}

int cmd_neighbors(const Settings& s, std::ostream& out, std::ostream& err) {
  if (s.ids.empty()) throw CommandError{kInputError, "no item id given"};
  const auto bundle = load(s.bundle, load_bundle_file);
  std::optional<EntityLinkMap> links;
  if (!s.links.empty()) links = load(s.links, load_link_map_file).links;

  Neighborhood used;
  const auto lists = lists_for(bundle, s, used);

  Sink sink(s.out, out);
  int status = kSuccess;
  for (const auto& id : s.ids) {
    std::vector<std::string> items;
    if (lists.contains(id)) {
      items.push_back(id);
    } else if (links) {
      for (auto& item : links->items_of(id)) {
        if (lists.contains(item)) items.push_back(std::move(item));
      }
    }
    if (items.empty()) {
      err << "unknown item id or entity '" << id << "'\n";
      status = kResolutionError;
      continue;
    }
    for (const auto& item : items) write_neighbors_tsv(sink.stream(), lists.at(item));
  }
  return status;
}

int cmd_summarize(const Settings& s, std::ostream& out, std::ostream& err) {
  if (s.ids.empty() && !s.all) {
    throw CommandError{kInputError, "give entity ids or --all"};
  }
  if (s.format != "tsv" && s.format != "structured") {
    throw CommandError{kInputError, "unknown --format '" + s.format + "'"};
  }
  const auto& links_path = require_path(s.links, "--links");
  const auto& triples_path = require_path(s.triples, "--triples");
  const auto bundle = load(s.bundle, load_bundle_file);
  auto links = load(links_path, load_link_map_file);
  report(err, links_path, links.diagnostics);
  auto graph = load(triples_path, load_ntriples_file);
  report(err, triples_path, graph.diagnostics);

  SummaryOptions options;
  const auto lists = lists_for(bundle, s, options.neighborhood);
  options.n = s.n;
  options.two_hop = s.two_hop;
  options.knn_predicate = Term::iri(s.knn_predicate);
  options.type_filter = Term::iri(s.type_filter);
  options.validate();

  std::vector<std::string> ids = s.ids;
  if (s.all) {
    for (const auto& e : entity_universe(graph.store, options.type_filter)) {
      ids.push_back(e.lexical);
    }
  }

  Sink sink(s.out, out);
  std::vector<Summary> summaries;
  int status = kSuccess;
  for (const auto& id : ids) {
    try {
      auto summary = summarize(graph.store, lists, links.links, id, options);
      if (s.format == "tsv") {
        write_summary_tsv(sink.stream(), summary);
      } else {
        summaries.push_back(std::move(summary));
      }
    } catch (const LookupError& e) {
      err << e.what() << '\n';
      status = kResolutionError;
    }
  }
  if (s.format == "structured") write_summaries_structured(sink.stream(), summaries);
  return status;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  Settings s;
  CLI::App app{"Usage-driven entity summarization over a linked-data graph",
               "knnsum"};
  app.set_config("--config", "", "Flat key = value configuration file");
  app.require_subcommand(1);

  app.add_option("--ratings", s.ratings, "Ratings/usage log");
  app.add_option("--triples", s.triples, "Entity graph in N-Triples");
  app.add_option("--links", s.links, "item_id<TAB>entity_iri link map");
  app.add_option("--bundle", s.bundle, "Index bundle written by build")
      ->capture_default_str();
  auto* k_opt = app.add_option("--k", s.k, "Neighborhood size")
                    ->capture_default_str()
                    ->check(CLI::PositiveNumber);
  app.add_option("--n", s.n, "Summary length")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--threshold", s.threshold,
                 "Use every neighbor scoring above this value instead of k")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--type-filter", s.type_filter, "rdf:type of the entity universe")
      ->capture_default_str();
  app.add_option("--knn-predicate", s.knn_predicate,
                 "Predicate used for neighbor edges")
      ->capture_default_str();
  app.add_option("--format", s.format, "tsv or structured")
      ->capture_default_str()
      ->check(CLI::IsMember({"tsv", "structured"}));
  app.add_flag("--two-hop", s.two_hop, "Rank composite two-hop features");
  app.add_option("--out", s.out, "Output path or - for stdout")
      ->capture_default_str();
  app.add_option("--threads", s.threads, "Worker threads for build (0 = all)");
  app.add_option("--delimiter", s.delimiter, "Ratings column delimiter");
  app.add_option("--user-column", s.user_column, "0-based user column");
  app.add_option("--item-column", s.item_column, "0-based item column");
  app.add_option("--rating-column", s.rating_column,
                 "0-based rating column (validated, then discarded)");
  app.add_flag("--no-header", s.no_header, "Ratings file has no header line");

  auto* build = app.add_subcommand("build", "Ingest, compute neighborhoods, "
                                            "materialize and write the bundle");
  auto* nbrs = app.add_subcommand("neighbors", "Print neighbor lists as TSV");
  nbrs->add_option("ids", s.ids, "Item ids or entity IRIs")->required();
  auto* summ = app.add_subcommand("summarize", "Print top-n entity summaries");
  summ->add_option("ids", s.ids, "Entity IRIs or item ids");
  summ->add_flag("--all", s.all, "Summarize the whole entity universe");
  for (auto* sub : {build, nbrs, summ}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  s.k_given = k_opt->count() > 0;

  try {
    if (*build) return cmd_build(s, out, err);
    if (*nbrs) return cmd_neighbors(s, out, err);
    return cmd_summarize(s, out, err);
  } catch (const CommandError& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const LookupError& e) {
    err << "error: " << e.what() << '\n';
    return kResolutionError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("knnsum");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : storage) argv.push_back(a.data());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace knnsum::cli
