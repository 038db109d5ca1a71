#pragma once

#include <array>
#include <unordered_set>
#include <vector>

#include "esg/builder.hpp"
#include "esg/triple_store.hpp"
#include "esg/vocab.hpp"

namespace esg {

enum class Mode { Classes, Properties };

/// Ground terms for entity selection. Every member is overridable;
/// defaults are the usual RDF(S)/OWL vocabulary.
struct GroundTerms {
  Term type_p = iri(vocab::kRdfType);
  Term class_t = iri(vocab::kRdfsClass);
  Term property_t = iri(vocab::kRdfProperty);
  Term domain_p = iri(vocab::kRdfsDomain);
  Term range_p = iri(vocab::kRdfsRange);
};

/// Ground-term closures driving the selection criteria. Each field holds
/// the full deductive closure of its seed, expanded through a property ESG.
struct SelectionProfile {
  Mode mode = Mode::Classes;
  std::unordered_set<TermId> type_predicates;
  std::unordered_set<TermId> class_terms;
  std::unordered_set<TermId> property_terms;
  std::unordered_set<TermId> domain_predicates;
  std::unordered_set<TermId> range_predicates;
  // Supplementary criterion: endpoints of triples whose predicate lies in
  // the closure of p_eq / p_sub are observed too. Without this, entities
  // appearing only in equivalence or specialization triples are missed.
  std::unordered_set<TermId> eq_predicates;
  std::unordered_set<TermId> sub_predicates;
};

struct Denylist {
  // Fully ground (s,p,o) patterns, removed from the store before building.
  std::vector<std::array<Term, 3>> triples;

  std::uint64_t apply(TripleStore& store) const {
    std::uint64_t removed = 0;
    for (const auto& [s, p, o] : triples) {
      auto si = store.find(s), pi = store.find(p), oi = store.find(o);
      if (si && pi && oi && store.remove(*si, *pi, *oi)) ++removed;
    }
    return removed;
  }
};

/// The two BTC statements that collapse the class/property distinction.
inline Denylist default_denylist() {
  Denylist d;
  d.triples.push_back({iri(vocab::kRdfsSubClassOf), iri(vocab::kRdfsSubPropertyOf),
                       iri(vocab::kRdfsSubPropertyOf)});
  d.triples.push_back({iri(vocab::kRdfType), iri(vocab::kRdfsSubPropertyOf),
                       iri(vocab::kRdfsSubClassOf)});
  return d;
}

namespace detail {

inline std::unordered_set<TermId> closure_from(const EquivalenceSetGraph& prop_esg,
                                               TermId seed) {
  std::unordered_set<TermId> out{seed};
  if (prop_esg.contains(seed))
    for (TermId t : prop_esg.closure_of(seed)) out.insert(t);
  return out;
}

}  // namespace detail

/// Expands the five ground terms to their deductive closures read from an
/// already-built property ESG.
inline SelectionProfile expand_ground_terms(TripleStore& store,
                                            const EquivalenceSetGraph& prop_esg,
                                            const GroundTerms& ground, Mode mode) {
  SelectionProfile profile;
  profile.mode = mode;
  auto resolve_closure = [&](const Term& t) {
    return detail::closure_from(prop_esg, store.resolve(t));
  };
  profile.type_predicates = resolve_closure(ground.type_p);
  profile.class_terms = resolve_closure(ground.class_t);
  profile.property_terms = resolve_closure(ground.property_t);
  profile.domain_predicates = resolve_closure(ground.domain_p);
  profile.range_predicates = resolve_closure(ground.range_p);
  return profile;
}

/// Convenience overload: builds the property ESG internally with
/// p_eq = p_e and p_sub = p_s, then expands.
inline SelectionProfile expand_ground_terms(TripleStore& store, TermId prop_eq,
                                            TermId prop_sub,
                                            const GroundTerms& ground, Mode mode) {
  EsgParams params;
  params.eq_seeds = {prop_eq};
  params.sub_seeds = {prop_sub};
  params.prop_eq = prop_eq;
  params.prop_sub = prop_sub;
  BuildResult prop = build_esg(store, params);
  return expand_ground_terms(store, prop.graph, ground, mode);
}

/// Applies the five selection criteria (plus the supplementary one) over
/// an already-expanded profile. Literals are never selected.
inline std::vector<TermId> select_entities(const TripleStore& store,
                                           const SelectionProfile& profile) {
  std::unordered_set<TermId> selected;
  auto pick = [&](TermId t) {
    if (!store.is_literal(t)) selected.insert(t);
  };

  const bool classes = profile.mode == Mode::Classes;
  const auto& instance_of = classes ? profile.class_terms : profile.property_terms;

  // Predicates whose declared domain/range is the observed meta-class.
  std::unordered_set<TermId> domain_hits, range_hits;
  for (TermId d : profile.domain_predicates)
    for (const auto& [s, o] : store.triples_with_predicate(d))
      if (instance_of.count(o)) domain_hits.insert(s);
  for (TermId r : profile.range_predicates)
    for (const auto& [s, o] : store.triples_with_predicate(r))
      if (instance_of.count(o)) range_hits.insert(s);

  store.for_each_triple([&](TermId s, TermId p, TermId o) {
    if (!classes) pick(p);  // a property is the predicate of a triple
    if (profile.type_predicates.count(p) && instance_of.count(o)) pick(s);
    if (domain_hits.count(p)) pick(s);
    if (range_hits.count(p)) pick(o);
    if (profile.eq_predicates.count(p) || profile.sub_predicates.count(p)) {
      pick(s);
      pick(o);
    }
  });
  return {selected.begin(), selected.end()};
}

}  // namespace esg
