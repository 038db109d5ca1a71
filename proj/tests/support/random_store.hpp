// Seeded random knowledge-graph generator for differential testing.
// Graphs mix class-level assertions with meta-level triples that make
// custom predicates equivalent to / specializations of the ground
// vocabulary (hierarchies up to three levels deep), plus noise.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "esg/triple_store.hpp"
#include "esg/vocab.hpp"

namespace testing_support {

struct RandomGraphOptions {
  int entities = 12;       // class-level IRI pool
  int custom_eq = 2;       // custom equivalence predicates
  int custom_sub = 2;      // custom specialization predicates
  int meta_triples = 6;    // predicate-hierarchy assertions
  int data_triples = 25;   // class-level assertions
  int noise_triples = 6;   // triples over unrelated predicates
  bool with_literals = true;
  bool with_blanks = true;
};

struct RandomTriple {
  esg::Term s, p, o;
};

// The triple list is returned (not inserted) so tests can permute it.
inline std::vector<RandomTriple> random_triples(std::mt19937_64& rng,
                                                const RandomGraphOptions& opt = {}) {
  using esg::Term;
  using esg::iri;
  namespace vocab = esg::vocab;

  auto pick = [&](std::uint64_t n) {
    return static_cast<int>(rng() % (n == 0 ? 1 : n));
  };

  std::vector<Term> entities;
  for (int i = 0; i < opt.entities; ++i)
    entities.push_back(iri("http://example.org/c" + std::to_string(i)));
  if (opt.with_blanks)
    for (int i = 0; i < 2; ++i) entities.push_back(esg::blank("rb" + std::to_string(i)));

  std::vector<Term> eq_preds{iri(vocab::kOwlEquivalentClass)};
  std::vector<Term> sub_preds{iri(vocab::kRdfsSubClassOf)};
  for (int i = 0; i < opt.custom_eq; ++i)
    eq_preds.push_back(iri("http://example.org/eq" + std::to_string(i)));
  for (int i = 0; i < opt.custom_sub; ++i)
    sub_preds.push_back(iri("http://example.org/sub" + std::to_string(i)));

  std::vector<RandomTriple> out;

  // Meta level: wire the custom predicates into the ground terms through
  // the three inference shapes (direct subproperty, equivalence link,
  // second-level indirection). Chains stay within depth three.
  for (int i = 0; i < opt.meta_triples; ++i) {
    bool eq_side = rng() % 2 == 0;
    const auto& pool = eq_side ? eq_preds : sub_preds;
    if (pool.size() < 2) continue;
    const Term& target = pool[pick(pool.size())];
    const Term& source = pool[1 + pick(pool.size() - 1)];
    if (source == target) continue;
    switch (rng() % 3) {
      case 0:
        out.push_back({source, iri(vocab::kRdfsSubPropertyOf), target});
        break;
      case 1:
        out.push_back({source, iri(vocab::kOwlEquivalentProperty), target});
        break;
      default:
        // Indirect: a helper predicate first declared equivalent to
        // owl:equivalentProperty, then used to link source to target.
        out.push_back({iri("http://example.org/meta" + std::to_string(i)),
                       iri(vocab::kRdfsSubPropertyOf),
                       iri(vocab::kOwlEquivalentProperty)});
        out.push_back({source,
                       iri("http://example.org/meta" + std::to_string(i)), target});
        break;
    }
  }

  // Class level.
  for (int i = 0; i < opt.data_triples; ++i) {
    const Term& a = entities[pick(entities.size())];
    const Term& b = entities[pick(entities.size())];
    bool eq_side = rng() % 2 == 0;
    const auto& pool = eq_side ? eq_preds : sub_preds;
    if (opt.with_literals && rng() % 12 == 0) {
      // Literal endpoints must be skipped by the construction.
      out.push_back({a, pool[pick(pool.size())],
                     esg::Term{esg::TermKind::Literal, "\"lit\""}});
    } else {
      out.push_back({a, pool[pick(pool.size())], b});
    }
  }

  // Noise: unrelated predicates, literals, an rdf:type sprinkle.
  for (int i = 0; i < opt.noise_triples; ++i) {
    const Term& a = entities[pick(entities.size())];
    switch (rng() % 3) {
      case 0:
        out.push_back({a, iri("http://example.org/notes"),
                       opt.with_literals
                           ? esg::Term{esg::TermKind::Literal, "\"n" + std::to_string(i) + "\""}
                           : entities[pick(entities.size())]});
        break;
      case 1:
        out.push_back({a, iri(vocab::kRdfType), entities[pick(entities.size())]});
        break;
      default:
        out.push_back({a, iri("http://example.org/link"), entities[pick(entities.size())]});
        break;
    }
  }
  return out;
}

inline void insert_all(esg::TripleStore& store, const std::vector<RandomTriple>& triples) {
  for (const auto& t : triples) store.insert(t.s, t.p, t.o);
}

}  // namespace testing_support
