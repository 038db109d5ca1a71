#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace esg {

enum class TermKind : std::uint8_t { Iri, Blank, Literal };

/// An RDF term in canonical text form. IRIs carry no angle brackets,
/// blank nodes no "_:" prefix, literals keep their full N-Triples
/// quoted form (including datatype / language tag).
struct Term {
  TermKind kind = TermKind::Iri;
  std::string lexical;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

inline Term iri(std::string lex) { return {TermKind::Iri, std::move(lex)}; }
inline Term blank(std::string label) { return {TermKind::Blank, std::move(label)}; }

/// Dense handle for an interned Term, issued in first-seen order.
struct TermId {
  std::uint64_t value = 0;
  friend auto operator<=>(const TermId&, const TermId&) = default;
};

/// Identifier of an equivalence set. Monotone; ids of merged-away sets
/// are never reused.
struct EsId {
  std::uint64_t value = 0;
  friend auto operator<=>(const EsId&, const EsId&) = default;
};

}  // namespace esg

template <>
struct std::hash<esg::TermId> {
  std::size_t operator()(esg::TermId t) const noexcept {
    return std::hash<std::uint64_t>{}(t.value);
  }
};

template <>
struct std::hash<esg::EsId> {
  std::size_t operator()(esg::EsId i) const noexcept {
    return std::hash<std::uint64_t>{}(i.value);
  }
};

template <>
struct std::hash<esg::Term> {
  std::size_t operator()(const esg::Term& t) const noexcept {
    std::size_t h = std::hash<std::string>{}(t.lexical);
    return h ^ (static_cast<std::size_t>(t.kind) + 0x9e3779b97f4a7c15ULL + (h << 6));
  }
};
