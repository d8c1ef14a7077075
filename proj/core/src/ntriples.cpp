#include "knnsum/ntriples.hpp"

#include <cctype>
#include <fstream>

namespace knnsum {

namespace ntriples {

namespace {

// Cursor over one line. Every parse_* member returns false and sets `error`
// on failure.
class LineParser {
 public:
  explicit LineParser(std::string_view line) : s_(line) {}

  std::string error;

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }

  bool parse_iri(std::string& out) {
    if (peek() != '<') return fail("expected '<'");
    ++pos_;
    out.clear();
    while (!at_end() && s_[pos_] != '>') {
      const char c = s_[pos_];
      if (c == ' ' || c == '\t' || c == '<' || c == '"') {
        return fail("invalid character in IRI");
      }
      if (c == '\\') {
        if (!parse_unicode_escape(out)) return false;
        continue;
      }
      out.push_back(c);
      ++pos_;
    }
    if (at_end()) return fail("unterminated IRI");
    ++pos_;
    if (out.empty()) return fail("empty IRI");
    return true;
  }

  bool parse_blank(std::string& out) {
    if (s_.substr(pos_, 2) != "_:") return fail("expected blank node");
    pos_ += 2;
    const std::size_t start = pos_;
    while (!at_end()) {
      const unsigned char c = static_cast<unsigned char>(s_[pos_]);
      if (std::isalnum(c) || c == '_' || c == '-' || c == '.' || c >= 0x80) {
        ++pos_;
      } else {
        break;
      }
    }
    // A label never ends with '.'; give the dot back to the statement.
    while (pos_ > start && s_[pos_ - 1] == '.') --pos_;
    if (pos_ == start) return fail("empty blank node label");
    out.assign(s_.substr(start, pos_ - start));
    return true;
  }

  bool parse_subject(Term& out) {
    std::string v;
    if (peek() == '<') {
      if (!parse_iri(v)) return false;
      out = Term::iri(std::move(v));
      return true;
    }
    if (peek() == '_') {
      if (!parse_blank(v)) return false;
      out = Term::blank(std::move(v));
      return true;
    }
    return fail("subject must be an IRI or blank node");
  }

  bool parse_predicate(Term& out) {
    std::string v;
    if (peek() != '<') return fail("predicate must be an IRI");
    if (!parse_iri(v)) return false;
    out = Term::iri(std::move(v));
    return true;
  }

  bool parse_object(Term& out) {
    if (peek() == '"') return parse_literal(out);
    if (peek() == '<' || peek() == '_') return parse_subject(out);
    return fail("object must be an IRI, blank node or literal");
  }

  bool parse_literal(Term& out) {
    ++pos_;  // opening quote
    std::string value;
    while (!at_end() && s_[pos_] != '"') {
      const char c = s_[pos_];
      if (c != '\\') {
        value.push_back(c);
        ++pos_;
        continue;
      }
      if (pos_ + 1 >= s_.size()) return fail("dangling escape in literal");
      const char e = s_[pos_ + 1];
      switch (e) {
        case '"': value.push_back('"'); break;
        case '\\': value.push_back('\\'); break;
        case '\'': value.push_back('\''); break;
        case 'n': value.push_back('\n'); break;
        case 't': value.push_back('\t'); break;
        case 'r': value.push_back('\r'); break;
        case 'b': value.push_back('\b'); break;
        case 'f': value.push_back('\f'); break;
        case 'u':
        case 'U':
          if (!parse_unicode_escape(value)) return false;
          continue;
        default:
          return fail(std::string("unknown escape \\") + e);
      }
      pos_ += 2;
    }
    if (at_end()) return fail("unterminated literal");
    ++pos_;  // closing quote

    std::string language;
    std::string datatype;
    if (peek() == '@') {
      ++pos_;
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                           s_[pos_] == '-')) {
        ++pos_;
      }
      if (pos_ == start) return fail("empty language tag");
      language.assign(s_.substr(start, pos_ - start));
    } else if (s_.substr(pos_, 2) == "^^") {
      pos_ += 2;
      if (!parse_iri(datatype)) return false;
    }
    out = Term::literal(std::move(value), std::move(language),
                        std::move(datatype));
    return true;
  }

  bool parse_terminator() {
    skip_ws();
    if (peek() != '.') return fail("missing terminating ' .'");
    ++pos_;
    skip_ws();
    if (!at_end() && peek() != '#') return fail("trailing content after '.'");
    return true;
  }

 private:
  bool fail(std::string message) {
    error = std::move(message);
    return false;
  }

  // At a backslash: \uXXXX or \UXXXXXXXX, appended as UTF-8.
  bool parse_unicode_escape(std::string& out) {
    if (pos_ + 1 >= s_.size()) return fail("dangling escape");
    const char kind = s_[pos_ + 1];
    const std::size_t digits = kind == 'u' ? 4 : kind == 'U' ? 8 : 0;
    if (digits == 0) return fail("invalid escape in IRI");
    if (pos_ + 2 + digits > s_.size()) return fail("truncated unicode escape");
    std::uint32_t cp = 0;
    for (std::size_t i = 0; i < digits; ++i) {
      const char h = s_[pos_ + 2 + i];
      cp <<= 4;
      if (h >= '0' && h <= '9') {
        cp |= static_cast<std::uint32_t>(h - '0');
      } else if (h >= 'a' && h <= 'f') {
        cp |= static_cast<std::uint32_t>(h - 'a' + 10);
      } else if (h >= 'A' && h <= 'F') {
        cp |= static_cast<std::uint32_t>(h - 'A' + 10);
      } else {
        return fail("invalid hex digit in unicode escape");
      }
    }
    if (cp > 0x10FFFF) return fail("code point out of range");
    append_utf8(out, cp);
    pos_ += 2 + digits;
    return true;
  }

  static void append_utf8(std::string& out, std::uint32_t cp) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

LineResult parse_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  LineParser p(line);
  p.skip_ws();
  if (p.at_end() || p.peek() == '#') return {};

  Triple t;
  LineResult result;
  bool ok = p.parse_subject(t.subject);
  if (ok) {
    p.skip_ws();
    ok = p.parse_predicate(t.predicate);
  }
  if (ok) {
    p.skip_ws();
    ok = p.parse_object(t.object) && p.parse_terminator();
  }
  if (!ok) {
    result.error = p.error.empty() ? "malformed triple" : p.error;
    return result;
  }
  result.triple = std::move(t);
  return result;
}

std::string escape_literal(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (const char c : value) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace ntriples

std::vector<Diagnostic> load_ntriples_into(TripleStore& store,
                                           std::istream& source) {
  if (!source) throw IoError("N-Triples stream is not readable");
  std::vector<Diagnostic> diagnostics;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    auto parsed = ntriples::parse_line(line);
    if (!parsed.error.empty()) {
      diagnostics.push_back({line_no, std::move(parsed.error)});
    } else if (parsed.triple) {
      store.insert(*parsed.triple);
    }
  }
  if (source.bad()) throw IoError("error while reading N-Triples stream");
  return diagnostics;
}

LoadResult load_ntriples(std::istream& source) {
  LoadResult result;
  result.diagnostics = load_ntriples_into(result.store, source);
  return result;
}

LoadResult load_ntriples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open triples file '" + path + "'");
  return load_ntriples(in);
}

void write_ntriples(std::ostream& out, const TripleStore& store) {
  for (const auto& key : store.spo_index()) {
    out << to_ntriples(store.term(key[0])) << ' '
        << to_ntriples(store.term(key[1])) << ' '
        << to_ntriples(store.term(key[2])) << " .\n";
  }
}

}  // namespace knnsum
