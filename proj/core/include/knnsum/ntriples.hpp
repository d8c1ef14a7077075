#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "knnsum/errors.hpp"
#include "knnsum/term.hpp"
#include "knnsum/triple_store.hpp"

namespace knnsum {

namespace ntriples {

struct LineResult {
  std::optional<Triple> triple;  // empty for blank and comment lines
  std::string error;             // non-empty when the line is malformed
};

// Parses a single N-Triples line (without the trailing newline).
LineResult parse_line(std::string_view line);

// Escapes \ " \n \r \t for use inside a quoted literal.
std::string escape_literal(std::string_view value);

}  // namespace ntriples

struct LoadResult {
  TripleStore store;
  std::vector<Diagnostic> diagnostics;
};

// Streams N-Triples into a fresh store. Malformed lines become diagnostics;
// a stream in a failed state throws IoError.
LoadResult load_ntriples(std::istream& source);
LoadResult load_ntriples_file(const std::string& path);

// Appends the parsed triples of `source` to an existing store.
std::vector<Diagnostic> load_ntriples_into(TripleStore& store,
                                           std::istream& source);

// One line per triple in SPO order.
void write_ntriples(std::ostream& out, const TripleStore& store);

}  // namespace knnsum
