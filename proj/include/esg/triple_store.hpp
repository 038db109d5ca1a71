#pragma once

#include <zlib.h>

#include <algorithm>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "esg/ntriples.hpp"
#include "esg/term.hpp"

namespace esg {

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InputFormat { NTriples, NTriplesGzip };
enum class BnodeScope { PerFile, Shared };

struct IngestOptions {
  BnodeScope bnode_scope = BnodeScope::PerFile;
};

struct SkippedLine {
  std::uint64_t line = 0;
  std::string reason;
};

struct IngestReport {
  std::uint64_t parsed = 0;        // well-formed triples kept
  std::uint64_t deduplicated = 0;  // well-formed but already present
  std::uint64_t skipped = 0;       // malformed lines
  std::uint64_t terms = 0;         // distinct terms in the store afterwards
  std::uint64_t predicates = 0;    // distinct predicates afterwards
  std::vector<SkippedLine> skip_log;  // first few skips, for diagnostics

  static constexpr std::size_t kMaxSkipLog = 100;

  void merge(const IngestReport& other) {
    parsed += other.parsed;
    deduplicated += other.deduplicated;
    skipped += other.skipped;
    terms = other.terms;
    predicates = other.predicates;
    for (const auto& s : other.skip_log) {
      if (skip_log.size() >= kMaxSkipLog) break;
      skip_log.push_back(s);
    }
  }
};

/// Deduplicated triple set indexed by predicate. Terms are interned into
/// dense ids; after ingestion the store is immutable in practice and safe
/// to read from many threads.
class TripleStore {
 public:
  using Pair = std::pair<TermId, TermId>;

  TermId resolve(const Term& t) {
    auto it = index_.find(t);
    if (it != index_.end()) return it->second;
    TermId id{terms_.size()};
    terms_.push_back(t);
    index_.emplace(terms_.back(), id);
    return id;
  }

  std::optional<TermId> find(const Term& t) const {
    auto it = index_.find(t);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const Term& lookup(TermId id) const {
    if (id.value >= terms_.size())
      throw std::logic_error("lookup of unissued TermId " + std::to_string(id.value));
    return terms_[static_cast<std::size_t>(id.value)];
  }

  bool is_literal(TermId id) const { return lookup(id).kind == TermKind::Literal; }
  bool is_blank(TermId id) const { return lookup(id).kind == TermKind::Blank; }

  /// Inserts (s,p,o); returns false if the triple was already present.
  bool insert(TermId s, TermId p, TermId o) {
    if (lookup(p).kind != TermKind::Iri)
      throw std::logic_error("triple predicate must be an IRI");
    auto& bucket = seen_[p];
    if (!bucket.emplace(s, o).second) return false;
    by_predicate_[p].emplace_back(s, o);
    ++triple_count_;
    return true;
  }

  bool insert(const Term& s, const Term& p, const Term& o) {
    return insert(resolve(s), resolve(p), resolve(o));
  }

  bool contains(TermId s, TermId p, TermId o) const {
    auto it = seen_.find(p);
    return it != seen_.end() && it->second.count({s, o}) > 0;
  }

  bool remove(TermId s, TermId p, TermId o) {
    auto it = seen_.find(p);
    if (it == seen_.end() || it->second.erase({s, o}) == 0) return false;
    auto& vec = by_predicate_[p];
    vec.erase(std::find(vec.begin(), vec.end(), Pair{s, o}));
    --triple_count_;
    return true;
  }

  std::span<const Pair> triples_with_predicate(TermId p) const {
    auto it = by_predicate_.find(p);
    if (it == by_predicate_.end()) return {};
    return it->second;
  }

  std::vector<TermId> predicates() const {
    std::vector<TermId> out;
    out.reserve(by_predicate_.size());
    for (const auto& [p, v] : by_predicate_)
      if (!v.empty()) out.push_back(p);
    return out;
  }

  template <class F>
  void for_each_triple(F&& f) const {
    for (const auto& [p, pairs] : by_predicate_)
      for (const auto& [s, o] : pairs) f(s, p, o);
  }

  std::uint64_t triple_count() const { return triple_count_; }
  std::size_t term_count() const { return terms_.size(); }

  // --- ingestion ---------------------------------------------------------

  IngestReport ingest(std::istream& in, InputFormat format,
                      const IngestOptions& opts = {}) {
    if (format != InputFormat::NTriples)
      throw StoreError("gzip ingestion is only supported from files");
    BnodeRenamer renamer = make_renamer(opts);
    IngestReport rep;
    std::string line;
    std::uint64_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      consume_line(line, line_no, renamer, rep);
    }
    finish_report(rep);
    return rep;
  }

  IngestReport ingest_file(const std::string& path, const IngestOptions& opts = {}) {
    // gzopen reads plain files transparently, so one code path covers
    // both .nt and .nt.gz inputs.
    gzFile f = gzopen(path.c_str(), "rb");
    if (!f) throw StoreError("cannot open input file: " + path);
    BnodeRenamer renamer = make_renamer(opts);
    IngestReport rep;
    std::string line;
    std::uint64_t line_no = 0;
    char buf[1 << 16];
    bool pending = false;
    while (true) {
      char* got = gzgets(f, buf, sizeof(buf));
      if (!got) break;
      std::string chunk(got);
      bool complete = !chunk.empty() && chunk.back() == '\n';
      if (complete) chunk.pop_back();
      if (!chunk.empty() && chunk.back() == '\r') chunk.pop_back();
      line += chunk;
      pending = true;
      if (!complete) continue;  // long line split across gzgets calls
      ++line_no;
      consume_line(line, line_no, renamer, rep);
      line.clear();
      pending = false;
    }
    int errnum = 0;
    const char* msg = gzerror(f, &errnum);
    if (errnum != Z_OK && errnum != Z_STREAM_END) {
      std::string err = msg ? msg : "unknown";
      gzclose(f);
      throw StoreError("I/O error reading " + path + ": " + err);
    }
    gzclose(f);
    if (pending) {
      ++line_no;
      consume_line(line, line_no, renamer, rep);
    }
    finish_report(rep);
    return rep;
  }

 private:
  struct BnodeRenamer {
    TripleStore* store = nullptr;
    bool rename = false;
    std::unordered_map<std::string, std::string> local;

    Term apply(Term t) {
      if (!rename || t.kind != TermKind::Blank) return t;
      auto it = local.find(t.lexical);
      if (it == local.end()) {
        it = local.emplace(t.lexical, "b" + std::to_string(store->bnode_counter_++)).first;
      }
      t.lexical = it->second;
      return t;
    }
  };

  BnodeRenamer make_renamer(const IngestOptions& opts) {
    return BnodeRenamer{this, opts.bnode_scope == BnodeScope::PerFile, {}};
  }

  void consume_line(const std::string& line, std::uint64_t line_no,
                    BnodeRenamer& renamer, IngestReport& rep) {
    std::string err;
    auto parsed = nt::parse_line(line, err);
    if (!parsed) {
      ++rep.skipped;
      if (rep.skip_log.size() < IngestReport::kMaxSkipLog)
        rep.skip_log.push_back({line_no, err});
      return;
    }
    if (!parsed->is_triple) return;
    if (insert(resolve(renamer.apply(parsed->s)), resolve(parsed->p),
               resolve(renamer.apply(parsed->o))))
      ++rep.parsed;
    else
      ++rep.deduplicated;
  }

  void finish_report(IngestReport& rep) const {
    rep.terms = terms_.size();
    rep.predicates = 0;
    for (const auto& [p, v] : by_predicate_)
      if (!v.empty()) ++rep.predicates;
  }

  struct PairHash {
    std::size_t operator()(const Pair& p) const noexcept {
      std::size_t h = std::hash<TermId>{}(p.first);
      return h ^ (std::hash<TermId>{}(p.second) + 0x9e3779b97f4a7c15ULL + (h << 6));
    }
  };

  std::vector<Term> terms_;
  std::unordered_map<Term, TermId> index_;
  std::unordered_map<TermId, std::vector<Pair>> by_predicate_;
  std::unordered_map<TermId, std::unordered_set<Pair, PairHash>> seen_;
  std::uint64_t triple_count_ = 0;
  std::uint64_t bnode_counter_ = 0;
};

}  // namespace esg
