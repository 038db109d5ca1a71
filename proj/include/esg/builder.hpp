#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "esg/graph.hpp"
#include "esg/triple_store.hpp"

namespace esg {

struct EsgParams {
  // Ground relations. Seed order fixes the initial queue order; results
  // are order-invariant at the set level.
  std::vector<TermId> eq_seeds;   // p_eq
  std::vector<TermId> sub_seeds;  // p_sub
  TermId prop_eq;                 // p_e
  TermId prop_sub;                // p_s

  // When set, predicate closures are read from this previously built
  // property graph instead of the graph under construction.
  const EquivalenceSetGraph* property_esg = nullptr;
};

struct BuildLog {
  std::uint64_t cycles = 0;
  std::uint64_t merges = 0;
  std::uint64_t edges_added = 0;
  std::uint64_t eq_triples = 0;   // (triple, closure-predicate) incidences
  std::uint64_t sub_triples = 0;
  std::uint64_t literals_skipped = 0;
  std::uint64_t singletons_added = 0;  // untouched selected entities
};

struct BuildResult {
  EquivalenceSetGraph graph;
  BuildLog log;
};

/// Runs the fixpoint construction: equivalence-set merging and hierarchy
/// edges over the growing deductive closures of the seed predicates,
/// repeated until no unprocessed predicate remains.
class EsgBuilder {
 public:
  EsgBuilder(const TripleStore& store, const EsgParams& params,
             std::unique_ptr<EsgStorage> storage = make_memory_storage())
      : store_(store), params_(params), graph_(std::move(storage)) {}

  BuildResult run(const std::vector<TermId>& selection) {
    seed_queues();
    const std::uint64_t cycle_bound = store_.term_count() + 2;
    while (!p_eq_.empty() || !p_sub_.empty()) {
      ++log_.cycles;
      if (log_.cycles > cycle_bound)
        throw std::logic_error("fixpoint failed to converge; predicate universe exhausted");
      compute_ess();
      compute_hierarchy();
      update_psets();
    }
    materialize_singletons(selection);
    return {std::move(graph_), log_};
  }

 private:
  void seed_queues() {
    // With a prior property graph the seeds expand to their full closure
    // up front and the fixpoint settles in one cycle.
    for (TermId p : params_.eq_seeds) enqueue_eq(p);
    for (TermId p : params_.sub_seeds) enqueue_sub(p);
    if (params_.property_esg) {
      for (TermId p : params_.eq_seeds)
        for (TermId q : reuse_closure(p)) enqueue_eq(q);
      for (TermId p : params_.sub_seeds)
        for (TermId q : reuse_closure(p)) enqueue_sub(q);
    }
  }

  std::vector<TermId> reuse_closure(TermId p) const {
    if (!params_.property_esg->contains(p)) return {p};
    return params_.property_esg->closure_of(p);
  }

  void enqueue_eq(TermId p) {
    if (queued_eq_.insert(p).second) p_eq_.push_back(p);
  }

  void enqueue_sub(TermId p) {
    if (queued_sub_.insert(p).second) p_sub_.push_back(p);
  }

  bool usable(TermId t) const { return !store_.is_literal(t); }

  void compute_ess() {
    while (!p_eq_.empty()) {
      TermId p = p_eq_.front();
      p_eq_.pop_front();
      graph_.processed_eq().insert(p);
      for (const auto& [r1, r2] : store_.triples_with_predicate(p)) {
        ++log_.eq_triples;
        if (!usable(r1) || !usable(r2)) {
          ++log_.literals_skipped;
          continue;
        }
        auto i1 = graph_.set_of(r1);
        auto i2 = graph_.set_of(r2);
        if (!i1 && !i2) {
          graph_.create_set(r1, r2);
        } else if (i1 && !i2) {
          graph_.absorb(*i1, r2);
        } else if (!i1 && i2) {
          graph_.absorb(*i2, r1);
        } else if (*i1 != *i2) {
          graph_.merge(*i1, *i2);
          ++log_.merges;
        }
      }
    }
  }

  void compute_hierarchy() {
    while (!p_sub_.empty()) {
      TermId p = p_sub_.front();
      p_sub_.pop_front();
      graph_.processed_sub().insert(p);
      for (const auto& [r1, r2] : store_.triples_with_predicate(p)) {
        ++log_.sub_triples;
        if (!usable(r1) || !usable(r2)) {
          ++log_.literals_skipped;
          continue;
        }
        auto i1 = graph_.set_of(r1);
        if (!i1) i1 = graph_.create_set(r1);
        auto i2 = graph_.set_of(r2);
        if (!i2) i2 = graph_.create_set(r2);
        if (graph_.add_specialization(*i1, *i2)) ++log_.edges_added;
      }
    }
  }

  void update_psets() {
    const EquivalenceSetGraph& closures =
        params_.property_esg ? *params_.property_esg : graph_;
    auto expand = [&](const std::unordered_set<TermId>& processed, auto&& enqueue) {
      for (TermId p : processed) {
        if (!closures.contains(p)) continue;
        for (TermId q : closures.closure_of(p)) enqueue(q);
      }
    };
    expand(graph_.processed_eq(), [this](TermId q) { enqueue_eq(q); });
    expand(graph_.processed_sub(), [this](TermId q) { enqueue_sub(q); });
  }

  void materialize_singletons(const std::vector<TermId>& selection) {
    for (TermId t : selection) {
      if (store_.is_literal(t)) continue;
      if (!graph_.contains(t)) {
        graph_.create_set(t);
        ++log_.singletons_added;
      }
    }
  }

  const TripleStore& store_;
  const EsgParams& params_;
  EquivalenceSetGraph graph_;
  BuildLog log_;
  std::deque<TermId> p_eq_, p_sub_;
  std::unordered_set<TermId> queued_eq_, queued_sub_;
};

inline BuildResult build_esg(const TripleStore& store, const EsgParams& params,
                             const std::vector<TermId>& selection = {},
                             std::unique_ptr<EsgStorage> storage = make_memory_storage()) {
  EsgBuilder builder(store, params, std::move(storage));
  return builder.run(selection);
}

}  // namespace esg
