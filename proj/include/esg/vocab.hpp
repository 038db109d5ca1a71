#pragma once

namespace esg::vocab {

inline constexpr const char* kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr const char* kRdfProperty = "http://www.w3.org/1999/02/22-rdf-syntax-ns#Property";
inline constexpr const char* kRdfsClass = "http://www.w3.org/2000/01/rdf-schema#Class";
inline constexpr const char* kRdfsSubClassOf = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
inline constexpr const char* kRdfsSubPropertyOf = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
inline constexpr const char* kRdfsDomain = "http://www.w3.org/2000/01/rdf-schema#domain";
inline constexpr const char* kRdfsRange = "http://www.w3.org/2000/01/rdf-schema#range";
inline constexpr const char* kOwlEquivalentClass = "http://www.w3.org/2002/07/owl#equivalentClass";
inline constexpr const char* kOwlEquivalentProperty = "http://www.w3.org/2002/07/owl#equivalentProperty";

}  // namespace esg::vocab
