#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "esg/term.hpp"

// Line-oriented N-Triples reading and writing. The parser is tolerant:
// a malformed line yields an error message instead of throwing, so dirty
// dumps can be ingested with skip-and-count semantics.

namespace esg::nt {

inline void append_utf8(std::string& out, std::uint32_t cp) {
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

/// Escapes a raw string for use inside a double-quoted literal,
/// per the canonical N-Triples form.
inline std::string escape_literal(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (char c : raw) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '"': out += "\\\""; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

/// Builds the canonical lexical form of a literal term.
inline Term literal(std::string_view value, std::string_view datatype_iri = {},
                    std::string_view lang = {}) {
  std::string lex = "\"" + escape_literal(value) + "\"";
  if (!lang.empty()) {
    lex += "@";
    lex += lang;
  } else if (!datatype_iri.empty()) {
    lex += "^^<";
    lex += datatype_iri;
    lex += ">";
  }
  return {TermKind::Literal, std::move(lex)};
}

inline std::string serialize_term(const Term& t) {
  switch (t.kind) {
    case TermKind::Iri: return "<" + t.lexical + ">";
    case TermKind::Blank: return "_:" + t.lexical;
    case TermKind::Literal: return t.lexical;
  }
  return {};
}

inline std::string serialize_triple(const Term& s, const Term& p, const Term& o) {
  return serialize_term(s) + " " + serialize_term(p) + " " + serialize_term(o) + " .";
}

namespace detail {

inline bool parse_hex(std::string_view in, std::size_t n, std::uint32_t& out) {
  if (in.size() < n) return false;
  out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    char c = in[i];
    std::uint32_t d;
    if (c >= '0' && c <= '9') d = static_cast<std::uint32_t>(c - '0');
    else if (c >= 'a' && c <= 'f') d = static_cast<std::uint32_t>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') d = static_cast<std::uint32_t>(c - 'A' + 10);
    else return false;
    out = (out << 4) | d;
  }
  return true;
}

struct Cursor {
  std::string_view in;
  std::size_t pos = 0;

  bool eof() const { return pos >= in.size(); }
  char peek() const { return in[pos]; }
  void skip_ws() {
    while (pos < in.size() && (in[pos] == ' ' || in[pos] == '\t')) ++pos;
  }
};

inline bool parse_iriref(Cursor& c, std::string& out, std::string& err) {
  // c.peek() == '<'
  ++c.pos;
  out.clear();
  while (!c.eof()) {
    char ch = c.peek();
    if (ch == '>') {
      ++c.pos;
      return true;
    }
    if (ch == '\\') {
      ++c.pos;
      if (c.eof()) break;
      char esc = c.peek();
      ++c.pos;
      std::uint32_t cp;
      if (esc == 'u' && parse_hex(c.in.substr(c.pos), 4, cp)) {
        c.pos += 4;
        append_utf8(out, cp);
      } else if (esc == 'U' && parse_hex(c.in.substr(c.pos), 8, cp)) {
        c.pos += 8;
        append_utf8(out, cp);
      } else {
        err = "bad escape in IRI";
        return false;
      }
      continue;
    }
    if (ch == ' ' || ch == '<' || ch == '"' || ch == '{' || ch == '}' ||
        ch == '|' || ch == '^' || ch == '`') {
      err = "illegal character in IRI";
      return false;
    }
    out.push_back(ch);
    ++c.pos;
  }
  err = "unterminated IRI";
  return false;
}

inline bool is_label_char(char ch, bool first) {
  if ((ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') || ch == '_') return true;
  if (!first && ((ch >= '0' && ch <= '9') || ch == '-' || ch == '.')) return true;
  if (first && ch >= '0' && ch <= '9') return true;
  return static_cast<unsigned char>(ch) >= 0x80;  // PN_CHARS beyond ASCII
}

inline bool parse_bnode(Cursor& c, std::string& out, std::string& err) {
  // "_:" already sighted
  c.pos += 2;
  out.clear();
  bool first = true;
  while (!c.eof() && is_label_char(c.peek(), first)) {
    out.push_back(c.peek());
    ++c.pos;
    first = false;
  }
  if (out.empty()) {
    err = "empty blank node label";
    return false;
  }
  if (out.back() == '.') {  // trailing dot belongs to the statement
    out.pop_back();
    --c.pos;
    if (out.empty()) {
      err = "empty blank node label";
      return false;
    }
  }
  return true;
}

inline bool parse_literal(Cursor& c, std::string& canonical, std::string& err) {
  // c.peek() == '"' ; canonical form is rebuilt from the unescaped value.
  ++c.pos;
  std::string value;
  while (true) {
    if (c.eof()) {
      err = "unterminated literal";
      return false;
    }
    char ch = c.peek();
    if (ch == '"') {
      ++c.pos;
      break;
    }
    if (ch == '\\') {
      ++c.pos;
      if (c.eof()) {
        err = "unterminated escape";
        return false;
      }
      char esc = c.peek();
      ++c.pos;
      switch (esc) {
        case 't': value.push_back('\t'); break;
        case 'b': value.push_back('\b'); break;
        case 'n': value.push_back('\n'); break;
        case 'r': value.push_back('\r'); break;
        case 'f': value.push_back('\f'); break;
        case '"': value.push_back('"'); break;
        case '\'': value.push_back('\''); break;
        case '\\': value.push_back('\\'); break;
        case 'u': {
          std::uint32_t cp;
          if (!parse_hex(c.in.substr(c.pos), 4, cp)) {
            err = "bad \\u escape";
            return false;
          }
          c.pos += 4;
          append_utf8(value, cp);
          break;
        }
        case 'U': {
          std::uint32_t cp;
          if (!parse_hex(c.in.substr(c.pos), 8, cp)) {
            err = "bad \\U escape";
            return false;
          }
          c.pos += 8;
          append_utf8(value, cp);
          break;
        }
        default:
          err = "unknown escape in literal";
          return false;
      }
      continue;
    }
    value.push_back(ch);
    ++c.pos;
  }
  canonical = "\"" + escape_literal(value) + "\"";
  if (!c.eof() && c.peek() == '@') {
    ++c.pos;
    std::string tag;
    while (!c.eof()) {
      char ch = c.peek();
      if ((ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
          (ch >= '0' && ch <= '9') || ch == '-') {
        tag.push_back(ch);
        ++c.pos;
      } else {
        break;
      }
    }
    if (tag.empty()) {
      err = "empty language tag";
      return false;
    }
    canonical += "@" + tag;
  } else if (c.in.substr(c.pos, 2) == "^^") {
    c.pos += 2;
    if (c.eof() || c.peek() != '<') {
      err = "datatype must be an IRI";
      return false;
    }
    std::string dt;
    if (!parse_iriref(c, dt, err)) return false;
    canonical += "^^<" + dt + ">";
  }
  return true;
}

inline bool parse_subject_or_object(Cursor& c, bool allow_literal, Term& out,
                                    std::string& err) {
  if (c.eof()) {
    err = "unexpected end of line";
    return false;
  }
  char ch = c.peek();
  if (ch == '<') {
    out.kind = TermKind::Iri;
    return parse_iriref(c, out.lexical, err);
  }
  if (ch == '_' && c.in.substr(c.pos, 2) == "_:") {
    out.kind = TermKind::Blank;
    return parse_bnode(c, out.lexical, err);
  }
  if (ch == '"' && allow_literal) {
    out.kind = TermKind::Literal;
    return parse_literal(c, out.lexical, err);
  }
  err = allow_literal ? "expected IRI, blank node, or literal"
                      : "expected IRI or blank node";
  return false;
}

}  // namespace detail

struct ParsedLine {
  bool is_triple = false;  // false: blank or comment line
  Term s, p, o;
};

/// Parses one physical line. Returns nullopt on a malformed line and
/// fills `err` with the reason.
inline std::optional<ParsedLine> parse_line(std::string_view line, std::string& err) {
  detail::Cursor c{line};
  c.skip_ws();
  if (c.eof() || c.peek() == '#') return ParsedLine{};

  ParsedLine out;
  out.is_triple = true;
  if (!detail::parse_subject_or_object(c, false, out.s, err)) return std::nullopt;
  c.skip_ws();
  if (c.eof() || c.peek() != '<') {
    err = "predicate must be an IRI";
    return std::nullopt;
  }
  out.p.kind = TermKind::Iri;
  if (!detail::parse_iriref(c, out.p.lexical, err)) return std::nullopt;
  c.skip_ws();
  if (!detail::parse_subject_or_object(c, true, out.o, err)) return std::nullopt;
  c.skip_ws();
  if (c.eof() || c.peek() != '.') {
    err = "missing terminating '.'";
    return std::nullopt;
  }
  ++c.pos;
  c.skip_ws();
  if (!c.eof() && c.peek() != '#') {
    err = "trailing garbage after '.'";
    return std::nullopt;
  }
  return out;
}

}  // namespace esg::nt
