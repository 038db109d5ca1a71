#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "esg/graph.hpp"
#include "esg/metrics.hpp"
#include "esg/ntriples.hpp"
#include "esg/triple_store.hpp"

namespace esg {

class SerializeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EsgMeta {
  std::string mode;  // "classes" | "properties"
  std::vector<std::string> eq_seeds, sub_seeds;
  std::string prop_eq, prop_sub;
  std::uint64_t cycles = 0, merges = 0;
  std::uint64_t sets = 0, edges = 0, entities = 0;
  std::vector<std::string> processed_eq, processed_sub;
  std::vector<std::string> type_closure;  // classes mode only
  std::vector<std::string> inputs;
  bool shared_bnode_scope = false;

  nlohmann::json to_json() const {
    return nlohmann::json{{"mode", mode},
                          {"eq_seeds", eq_seeds},
                          {"sub_seeds", sub_seeds},
                          {"p_e", prop_eq},
                          {"p_s", prop_sub},
                          {"cycles", cycles},
                          {"merges", merges},
                          {"sets", sets},
                          {"edges", edges},
                          {"entities", entities},
                          {"processed_eq", processed_eq},
                          {"processed_sub", processed_sub},
                          {"type_closure", type_closure},
                          {"inputs", inputs},
                          {"shared_bnode_scope", shared_bnode_scope}};
  }

  static EsgMeta from_json(const nlohmann::json& j) {
    EsgMeta m;
    m.mode = j.value("mode", "");
    m.eq_seeds = j.value("eq_seeds", std::vector<std::string>{});
    m.sub_seeds = j.value("sub_seeds", std::vector<std::string>{});
    m.prop_eq = j.value("p_e", "");
    m.prop_sub = j.value("p_s", "");
    m.cycles = j.value("cycles", 0ULL);
    m.merges = j.value("merges", 0ULL);
    m.sets = j.value("sets", 0ULL);
    m.edges = j.value("edges", 0ULL);
    m.entities = j.value("entities", 0ULL);
    m.processed_eq = j.value("processed_eq", std::vector<std::string>{});
    m.processed_sub = j.value("processed_sub", std::vector<std::string>{});
    m.type_closure = j.value("type_closure", std::vector<std::string>{});
    m.inputs = j.value("inputs", std::vector<std::string>{});
    m.shared_bnode_scope = j.value("shared_bnode_scope", false);
    return m;
  }
};

namespace detail {

inline Term parse_term_text(const std::string& text, const std::string& file,
                            std::uint64_t line_no) {
  nt::detail::Cursor c{text};
  Term t;
  std::string err;
  if (!nt::detail::parse_subject_or_object(c, true, t, err) || c.pos != text.size())
    throw SerializeError(file + ":" + std::to_string(line_no) + ": bad term: " +
                         (err.empty() ? text : err));
  return t;
}

inline std::uint64_t parse_id(const std::string& text, const std::string& file,
                              std::uint64_t line_no) {
  try {
    std::size_t used = 0;
    std::uint64_t v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw SerializeError(file + ":" + std::to_string(line_no) +
                         ": bad set identifier: " + text);
  }
}

inline std::pair<std::string, std::string> split_tab(const std::string& line,
                                                     const std::string& file,
                                                     std::uint64_t line_no) {
  auto tab = line.find('\t');
  if (tab == std::string::npos)
    throw SerializeError(file + ":" + std::to_string(line_no) + ": missing tab separator");
  return {line.substr(0, tab), line.substr(tab + 1)};
}

}  // namespace detail

/// Writes the four-file TSV export plus meta.json. Rows are emitted in
/// canonical (sorted) order so identical graphs export byte-identically.
inline void write_esg(const std::filesystem::path& dir, const EquivalenceSetGraph& g,
                      const TripleStore& store, const EsgMeta& meta) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream out(dir / name, std::ios::trunc);
    if (!out) throw SerializeError("cannot write " + (dir / name).string());
    return out;
  };

  std::vector<EsId> sets = g.sets();
  std::sort(sets.begin(), sets.end());

  {
    std::ofstream id_out = open("id.tsv");
    std::ofstream is_out = open("is.tsv");
    for (EsId i : sets) {
      std::vector<std::string> lex;
      for (TermId t : g.members(i)) lex.push_back(nt::serialize_term(store.lookup(t)));
      std::sort(lex.begin(), lex.end());
      for (const auto& l : lex) {
        id_out << l << '\t' << i.value << '\n';
        is_out << i.value << '\t' << l << '\n';
      }
    }
  }
  {
    std::ofstream h_out = open("h.tsv");
    std::ofstream hm_out = open("hminus.tsv");
    for (EsId i : sets) {
      for (EsId s : g.supers(i)) h_out << i.value << '\t' << s.value << '\n';
      for (EsId s : g.subs(i)) hm_out << i.value << '\t' << s.value << '\n';
    }
  }
  {
    std::ofstream meta_out = open("meta.json");
    meta_out << meta.to_json().dump(2) << '\n';
  }
}

struct ImportedEsg {
  EquivalenceSetGraph graph;
  EsgMeta meta;
};

/// Reads an export back. Set identifiers are renumbered; the result is
/// isomorphic to the exported graph. Validates edge symmetry and the
/// ID/IS correspondence.
inline ImportedEsg read_esg(const std::filesystem::path& dir, TripleStore& store,
                            std::unique_ptr<EsgStorage> storage = make_memory_storage()) {
  ImportedEsg out{EquivalenceSetGraph(std::move(storage)), {}};

  {
    std::ifstream meta_in(dir / "meta.json");
    if (!meta_in) throw SerializeError("missing " + (dir / "meta.json").string());
    nlohmann::json j;
    try {
      meta_in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw SerializeError((dir / "meta.json").string() + ": " + e.what());
    }
    out.meta = EsgMeta::from_json(j);
  }

  std::unordered_map<std::uint64_t, EsId> remap;
  auto mapped = [&](std::uint64_t file_id) -> EsId* {
    auto it = remap.find(file_id);
    return it == remap.end() ? nullptr : &it->second;
  };

  {
    const std::string file = (dir / "is.tsv").string();
    std::ifstream in(file);
    if (!in) throw SerializeError("missing " + file);
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      auto [left, right] = detail::split_tab(line, file, line_no);
      std::uint64_t file_id = detail::parse_id(left, file, line_no);
      TermId t = store.resolve(detail::parse_term_text(right, file, line_no));
      if (EsId* i = mapped(file_id)) {
        out.graph.absorb(*i, t);
      } else {
        remap.emplace(file_id, out.graph.create_set(t));
      }
    }
  }

  // id.tsv must agree with the membership just read.
  {
    const std::string file = (dir / "id.tsv").string();
    std::ifstream in(file);
    if (!in) throw SerializeError("missing " + file);
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      auto [left, right] = detail::split_tab(line, file, line_no);
      TermId t = store.resolve(detail::parse_term_text(left, file, line_no));
      std::uint64_t file_id = detail::parse_id(right, file, line_no);
      EsId* i = mapped(file_id);
      if (!i || out.graph.set_of(t) != *i)
        throw SerializeError(file + ":" + std::to_string(line_no) +
                             ": id.tsv disagrees with is.tsv");
    }
  }

  auto read_edges = [&](const char* name, bool reverse) {
    const std::string file = (dir / name).string();
    std::ifstream in(file);
    if (!in) throw SerializeError("missing " + file);
    std::set<std::pair<std::uint64_t, std::uint64_t>> pairs;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      auto [left, right] = detail::split_tab(line, file, line_no);
      std::uint64_t a = detail::parse_id(left, file, line_no);
      std::uint64_t b = detail::parse_id(right, file, line_no);
      if (!mapped(a) || !mapped(b))
        throw SerializeError(file + ":" + std::to_string(line_no) +
                             ": edge references unknown set");
      pairs.emplace(reverse ? b : a, reverse ? a : b);
    }
    return pairs;
  };

  auto h_pairs = read_edges("h.tsv", false);
  auto hm_pairs = read_edges("hminus.tsv", true);
  if (h_pairs != hm_pairs)
    throw SerializeError((dir / "hminus.tsv").string() +
                         ": not the mirror of h.tsv (edge symmetry violated)");
  for (const auto& [sub, super] : h_pairs)
    out.graph.add_specialization(*mapped(sub), *mapped(super));

  return out;
}

inline void write_distribution_csv(const std::filesystem::path& path,
                                   const Distribution& dist) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw SerializeError("cannot write " + path.string());
  const bool height = dist.kind == Distribution::Kind::Height;
  out << (height ? "x,count,fraction\n" : "x,count\n");
  for (std::size_t i = 0; i < dist.x.size(); ++i) {
    out << dist.x[i] << ',' << dist.count[i];
    if (height) {
      std::ostringstream frac;
      frac.precision(12);
      frac << dist.fraction[i];
      out << ',' << frac.str();
    }
    out << '\n';
  }
}

}  // namespace esg
