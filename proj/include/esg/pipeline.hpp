#pragma once

#include <memory>
#include <string>
#include <vector>

#include "esg/builder.hpp"
#include "esg/config.hpp"
#include "esg/selection.hpp"
#include "esg/serialize.hpp"
#include "esg/triple_store.hpp"

namespace esg {

struct StageResult {
  EquivalenceSetGraph graph;
  BuildLog log;
  SelectionProfile profile;
  std::vector<TermId> selection;
  EsgMeta meta;
};

namespace detail {

// Serialized term text (N-Triples form), so non-IRI members survive.
inline std::vector<std::string> closure_lexicals(const TripleStore& store,
                                                 const std::unordered_set<TermId>& ids) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (TermId t : ids) out.push_back(nt::serialize_term(store.lookup(t)));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> processed_lexicals(const TripleStore& store,
                                                   const std::unordered_set<TermId>& ids) {
  return closure_lexicals(store, ids);
}

inline void fill_meta(StageResult& r, const TripleStore& store, const EsgParams& params) {
  for (TermId p : params.eq_seeds) r.meta.eq_seeds.push_back(store.lookup(p).lexical);
  for (TermId p : params.sub_seeds) r.meta.sub_seeds.push_back(store.lookup(p).lexical);
  r.meta.prop_eq = store.lookup(params.prop_eq).lexical;
  r.meta.prop_sub = store.lookup(params.prop_sub).lexical;
  r.meta.cycles = r.log.cycles;
  r.meta.merges = r.log.merges;
  r.meta.sets = r.graph.set_count();
  r.meta.edges = r.graph.edge_count();
  r.meta.entities = r.graph.entity_count();
  r.meta.processed_eq = processed_lexicals(store, r.graph.processed_eq());
  r.meta.processed_sub = processed_lexicals(store, r.graph.processed_sub());
}

}  // namespace detail

/// Properties stage: the graph grows its own predicate closures
/// (p_eq = p_e and p_sub = p_s), so the fixpoint may take several cycles.
inline StageResult run_properties_stage(TripleStore& store, const SeedConfig& seeds,
                                        std::unique_ptr<EsgStorage> storage
                                        = make_memory_storage()) {
  TermId p_e = store.resolve(iri(seeds.eq_properties));
  TermId p_s = store.resolve(iri(seeds.sub_properties));

  EsgParams params;
  params.eq_seeds = {p_e};
  params.sub_seeds = {p_s};
  params.prop_eq = p_e;
  params.prop_sub = p_s;

  // Selection closures come from a throwaway self-build of the same
  // relations; the final build then runs over the chosen backend.
  BuildResult helper = build_esg(store, params);

  StageResult r{EquivalenceSetGraph{}, {}, {}, {}, {}};
  r.profile = expand_ground_terms(store, helper.graph, seeds.ground_terms(),
                                  Mode::Properties);
  r.profile.eq_predicates = detail::closure_from(helper.graph, p_e);
  r.profile.sub_predicates = detail::closure_from(helper.graph, p_s);
  r.selection = select_entities(store, r.profile);

  BuildResult built = build_esg(store, params, r.selection, std::move(storage));
  r.graph = std::move(built.graph);
  r.log = built.log;
  r.meta.mode = "properties";
  detail::fill_meta(r, store, params);
  return r;
}

/// Classes stage: predicate closures are read from a previously built
/// properties graph, exactly the two-phase order of the construction.
inline StageResult run_classes_stage(TripleStore& store, const SeedConfig& seeds,
                                     const EquivalenceSetGraph& properties_esg,
                                     std::unique_ptr<EsgStorage> storage
                                     = make_memory_storage()) {
  TermId p_eq = store.resolve(iri(seeds.eq_classes));
  TermId p_sub = store.resolve(iri(seeds.sub_classes));

  EsgParams params;
  params.eq_seeds = {p_eq};
  params.sub_seeds = {p_sub};
  params.prop_eq = store.resolve(iri(seeds.eq_properties));
  params.prop_sub = store.resolve(iri(seeds.sub_properties));
  params.property_esg = &properties_esg;

  StageResult r{EquivalenceSetGraph{}, {}, {}, {}, {}};
  r.profile = expand_ground_terms(store, properties_esg, seeds.ground_terms(),
                                  Mode::Classes);
  r.profile.eq_predicates = detail::closure_from(properties_esg, p_eq);
  r.profile.sub_predicates = detail::closure_from(properties_esg, p_sub);
  r.selection = select_entities(store, r.profile);

  BuildResult built = build_esg(store, params, r.selection, std::move(storage));
  r.graph = std::move(built.graph);
  r.log = built.log;
  r.meta.mode = "classes";
  r.meta.type_closure = detail::closure_lexicals(store, r.profile.type_predicates);
  detail::fill_meta(r, store, params);
  return r;
}

}  // namespace esg
