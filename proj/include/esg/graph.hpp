#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_set>
#include <utility>
#include <vector>

#include "esg/storage.hpp"
#include "esg/term.hpp"

namespace esg {

class UnknownEntityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The ID / IS / H / H⁻ maps plus the processed-predicate sets. Mutation
/// goes through the few operations the construction algorithms need;
/// a finished graph is immutable and concurrently readable.
class EquivalenceSetGraph {
 public:
  explicit EquivalenceSetGraph(std::unique_ptr<EsgStorage> storage = make_memory_storage())
      : storage_(std::move(storage)) {}

  std::optional<EsId> set_of(TermId t) const { return storage_->set_of(t); }

  bool contains(TermId t) const { return storage_->set_of(t).has_value(); }

  /// Creates the set {t} (or {a,b} via the two-argument form).
  EsId create_set(TermId t) {
    EsId i = fresh_id();
    storage_->assign(t, i);
    storage_->add_member(i, t);
    return i;
  }

  EsId create_set(TermId a, TermId b) {
    EsId i = fresh_id();
    storage_->assign(a, i);
    storage_->add_member(i, a);
    if (b != a) {
      storage_->assign(b, i);
      storage_->add_member(i, b);
    }
    return i;
  }

  void absorb(EsId i, TermId t) {
    storage_->assign(t, i);
    storage_->add_member(i, t);
  }

  /// Merges i1 and i2 into a fresh set and repairs the hierarchy:
  /// H(i3) = H(i1) ∪ H(i2), H⁻(i3) = H⁻(i1) ∪ H⁻(i2), with every neighbor
  /// reference to i1/i2 rewritten to i3. i1 and i2 become tombstones.
  EsId merge(EsId i1, EsId i2) {
    if (i1 == i2) throw std::logic_error("merge of a set with itself");
    EsId i3 = fresh_id();
    for (TermId t : storage_->members(i1)) {
      storage_->assign(t, i3);
      storage_->add_member(i3, t);
    }
    for (TermId t : storage_->members(i2)) {
      storage_->assign(t, i3);
      storage_->add_member(i3, t);
    }
    storage_->drop_set(i1);
    storage_->drop_set(i2);

    auto remap = [&](EsId n) { return (n == i1 || n == i2) ? i3 : n; };
    std::vector<EsId> new_supers, new_subs;
    for (EsId old : {i1, i2}) {
      for (EsId s : storage_->supers(old)) new_supers.push_back(remap(s));
      for (EsId s : storage_->subs(old)) new_subs.push_back(remap(s));
    }
    for (EsId old : {i1, i2}) {
      for (EsId s : storage_->supers(old)) storage_->remove_edge(old, s);
      for (EsId s : storage_->subs(old)) storage_->remove_edge(s, old);
    }
    for (EsId s : new_supers) storage_->add_edge(i3, s);
    for (EsId s : new_subs) storage_->add_edge(s, i3);
    return i3;
  }

  /// Records that `sub` specializes `super` (super ∈ H(sub)). Idempotent.
  bool add_specialization(EsId sub, EsId super) {
    return storage_->add_edge(sub, super);
  }

  std::vector<TermId> members(EsId i) const { return storage_->members(i); }
  std::uint64_t member_count(EsId i) const { return storage_->member_count(i); }
  std::vector<EsId> sets() const { return storage_->set_ids(); }
  std::uint64_t set_count() const { return storage_->set_count(); }
  std::uint64_t entity_count() const { return storage_->total_members(); }

  std::vector<EsId> supers(EsId i) const { return storage_->supers(i); }
  std::vector<EsId> subs(EsId i) const { return storage_->subs(i); }
  std::uint64_t super_count(EsId i) const { return storage_->super_count(i); }
  std::uint64_t sub_count(EsId i) const { return storage_->sub_count(i); }
  std::uint64_t edge_count() const { return storage_->edge_count(); }

  /// All sets reachable from i by traversing H⁻ transitively, including i.
  /// Cycle-safe.
  std::vector<EsId> closure_sets(EsId i) const {
    std::vector<EsId> out;
    std::unordered_set<EsId> seen{i};
    std::deque<EsId> queue{i};
    while (!queue.empty()) {
      EsId cur = queue.front();
      queue.pop_front();
      out.push_back(cur);
      for (EsId sub : storage_->subs(cur))
        if (seen.insert(sub).second) queue.push_back(sub);
    }
    return out;
  }

  /// Equivalence-and-specialization closure of e: its own set members plus
  /// the members of every set that (transitively) specializes it.
  std::vector<TermId> closure_of(TermId e) const {
    auto i = storage_->set_of(e);
    if (!i)
      throw UnknownEntityError("entity " + std::to_string(e.value) +
                               " is not part of this graph");
    std::vector<TermId> out;
    for (EsId s : closure_sets(*i))
      for (TermId t : storage_->members(s)) out.push_back(t);
    return out;
  }

  std::unordered_set<TermId>& processed_eq() { return processed_eq_; }
  std::unordered_set<TermId>& processed_sub() { return processed_sub_; }
  const std::unordered_set<TermId>& processed_eq() const { return processed_eq_; }
  const std::unordered_set<TermId>& processed_sub() const { return processed_sub_; }

  EsId fresh_id() { return EsId{next_id_++}; }
  std::uint64_t next_id() const { return next_id_; }

 private:
  std::unique_ptr<EsgStorage> storage_;
  std::unordered_set<TermId> processed_eq_, processed_sub_;
  std::uint64_t next_id_ = 0;
};

}  // namespace esg
