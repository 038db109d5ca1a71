#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>

#include "esg/config.hpp"
#include "esg/selection.hpp"
#include "esg/triple_store.hpp"
#include "esg/vocab.hpp"

using esg::iri;
using esg::Mode;
using esg::TripleStore;
namespace vocab = esg::vocab;

namespace {

std::string fixture(const char* name) { return std::string(FIXTURES_DIR "/") + name; }

std::set<std::string> selected_iris(const TripleStore& store,
                                    const std::vector<esg::TermId>& sel) {
  std::set<std::string> out;
  for (esg::TermId t : sel) out.insert(store.lookup(t).lexical);
  return out;
}

esg::SelectionProfile profile_for(TripleStore& store, Mode mode) {
  esg::TermId p_e = store.resolve(iri(vocab::kOwlEquivalentProperty));
  esg::TermId p_s = store.resolve(iri(vocab::kRdfsSubPropertyOf));
  auto profile = esg::expand_ground_terms(store, p_e, p_s, esg::GroundTerms{}, mode);
  esg::EsgParams params;
  params.eq_seeds = {p_e};
  params.sub_seeds = {p_s};
  params.prop_eq = p_e;
  params.prop_sub = p_s;
  auto prop = esg::build_esg(store, params);
  esg::TermId p_eq = store.resolve(
      iri(mode == Mode::Classes ? vocab::kOwlEquivalentClass : vocab::kOwlEquivalentProperty));
  esg::TermId p_sub = store.resolve(
      iri(mode == Mode::Classes ? vocab::kRdfsSubClassOf : vocab::kRdfsSubPropertyOf));
  profile.eq_predicates = esg::detail::closure_from(prop.graph, p_eq);
  profile.sub_predicates = esg::detail::closure_from(prop.graph, p_sub);
  return profile;
}

}  // namespace

TEST_CASE("a term typed as rdfs:Class is selected, the meta class is not") {
  TripleStore store;
  store.insert(iri("http://x"), iri(vocab::kRdfType), iri(vocab::kRdfsClass));
  auto profile = profile_for(store, Mode::Classes);
  auto sel = esg::select_entities(store, profile);
  CHECK(selected_iris(store, sel) == std::set<std::string>{"http://x"});
}

TEST_CASE("every predicate is a property") {
  TripleStore store;
  store.insert(iri("http://s"), iri("http://p"), iri("http://o"));
  auto profile = profile_for(store, Mode::Properties);
  auto sel = esg::select_entities(store, profile);
  auto names = selected_iris(store, sel);
  CHECK(names.count("http://p") == 1);
  CHECK(names.count("http://s") == 0);
  CHECK(names.count("http://o") == 0);
}

TEST_CASE("domain and range criteria select subjects and objects") {
  TripleStore store;
  store.insert(iri("http://p"), iri(vocab::kRdfsDomain), iri(vocab::kRdfsClass));
  store.insert(iri("http://q"), iri(vocab::kRdfsRange), iri(vocab::kRdfsClass));
  store.insert(iri("http://a"), iri("http://p"), iri("http://b"));
  store.insert(iri("http://c"), iri("http://q"), iri("http://d"));
  auto profile = profile_for(store, Mode::Classes);
  auto sel = esg::select_entities(store, profile);
  auto names = selected_iris(store, sel);
  CHECK(names.count("http://a") == 1);  // subject, domain criterion
  CHECK(names.count("http://d") == 1);  // object, range criterion
  CHECK(names.count("http://b") == 0);
  CHECK(names.count("http://c") == 0);
}

TEST_CASE("the figure input selects its eight classes") {
  TripleStore store;
  store.ingest_file(fixture("fig1.nt"));
  auto profile = profile_for(store, Mode::Classes);
  auto sel = esg::select_entities(store, profile);
  std::set<std::string> expected{
      "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#Agent",
      "http://www.w3.org/ns/org#Agent",
      "http://dbpedia.org/ontology/Person",
      "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#Person",
      "http://xmlns.com/foaf/0.1/Person",
      "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#PhysicalAgent",
      "http://www.w3.org/ns/org#Organization",
      "http://www.ontologydesignpatterns.org/ont/dul/DUL.owl#SocialAgent",
  };
  CHECK(selected_iris(store, sel) == expected);
}

TEST_CASE("ground term closures grow through subproperty declarations") {
  TripleStore store;
  store.insert(iri("http://myType"), iri(vocab::kRdfsSubPropertyOf), iri(vocab::kRdfType));
  esg::TermId p_e = store.resolve(iri(vocab::kOwlEquivalentProperty));
  esg::TermId p_s = store.resolve(iri(vocab::kRdfsSubPropertyOf));
  auto profile =
      esg::expand_ground_terms(store, p_e, p_s, esg::GroundTerms{}, Mode::Classes);
  CHECK(profile.type_predicates.size() == 2);
  CHECK(profile.type_predicates.count(*store.find(iri("http://myType"))) == 1);
  CHECK(profile.type_predicates.count(*store.find(iri(vocab::kRdfType))) == 1);
}

TEST_CASE("closures always contain their seed") {
  TripleStore store;  // no meta triples at all
  esg::TermId p_e = store.resolve(iri(vocab::kOwlEquivalentProperty));
  esg::TermId p_s = store.resolve(iri(vocab::kRdfsSubPropertyOf));
  auto profile =
      esg::expand_ground_terms(store, p_e, p_s, esg::GroundTerms{}, Mode::Classes);
  for (const auto* closure :
       {&profile.type_predicates, &profile.class_terms, &profile.property_terms,
        &profile.domain_predicates, &profile.range_predicates})
    CHECK(closure->size() == 1);
}

TEST_CASE("default denylist holds exactly the two pathological statements") {
  auto d = esg::default_denylist();
  REQUIRE(d.triples.size() == 2);

  TripleStore untouched;
  untouched.insert(iri("http://a"), iri("http://p"), iri("http://b"));
  CHECK(d.apply(untouched) == 0);
  CHECK(untouched.triple_count() == 1);

  TripleStore infected;
  infected.insert(iri(vocab::kRdfsSubClassOf), iri(vocab::kRdfsSubPropertyOf),
                  iri(vocab::kRdfsSubPropertyOf));
  infected.insert(iri(vocab::kRdfType), iri(vocab::kRdfsSubPropertyOf),
                  iri(vocab::kRdfsSubClassOf));
  infected.insert(iri("http://a"), iri("http://p"), iri("http://b"));
  CHECK(d.apply(infected) == 2);
  CHECK(infected.triple_count() == 1);
}

TEST_CASE("selection is monotone under triple addition") {
  TripleStore store;
  store.insert(iri("http://x"), iri(vocab::kRdfType), iri(vocab::kRdfsClass));
  auto before = selected_iris(store, esg::select_entities(store, profile_for(store, Mode::Classes)));
  store.insert(iri("http://y"), iri(vocab::kRdfType), iri(vocab::kRdfsClass));
  store.insert(iri("http://a"), iri(vocab::kRdfsSubClassOf), iri("http://b"));
  auto after = selected_iris(store, esg::select_entities(store, profile_for(store, Mode::Classes)));
  CHECK(std::includes(after.begin(), after.end(), before.begin(), before.end()));
}

TEST_CASE("literals are never selected") {
  TripleStore store;
  store.insert(esg::iri("http://a"), iri(vocab::kRdfsSubClassOf),
               esg::Term{esg::TermKind::Literal, "\"oops\""});
  auto profile = profile_for(store, Mode::Classes);
  auto sel = esg::select_entities(store, profile);
  for (esg::TermId t : sel) CHECK_FALSE(store.is_literal(t));
  CHECK(selected_iris(store, sel) == std::set<std::string>{"http://a"});
}
