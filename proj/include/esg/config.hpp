#pragma once

#include <array>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "esg/selection.hpp"
#include "esg/vocab.hpp"

namespace esg {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SeedConfig {
  std::string eq_classes = vocab::kOwlEquivalentClass;
  std::string sub_classes = vocab::kRdfsSubClassOf;
  std::string eq_properties = vocab::kOwlEquivalentProperty;
  std::string sub_properties = vocab::kRdfsSubPropertyOf;
  std::string type_p = vocab::kRdfType;
  std::string class_t = vocab::kRdfsClass;
  std::string property_t = vocab::kRdfProperty;
  std::string domain_p = vocab::kRdfsDomain;
  std::string range_p = vocab::kRdfsRange;

  GroundTerms ground_terms() const {
    GroundTerms g;
    g.type_p = iri(type_p);
    g.class_t = iri(class_t);
    g.property_t = iri(property_t);
    g.domain_p = iri(domain_p);
    g.range_p = iri(range_p);
    return g;
  }
};

struct RunConfig {
  std::vector<std::string> inputs;
  std::string mode = "both";  // classes | properties | both
  std::string output_dir;
  std::string storage = "memory";  // memory | disk
  bool shared_bnode_scope = false;
  SeedConfig seeds;
  std::vector<std::array<std::string, 3>> denylist_add;  // ground IRIs
  std::string properties_esg_dir;  // required for mode=classes
  bool es0_uses_des = false;

  void validate() const {
    if (mode != "classes" && mode != "properties" && mode != "both")
      throw ConfigError("mode must be classes, properties, or both");
    if (storage != "memory" && storage != "disk")
      throw ConfigError("storage must be memory or disk");
    if (mode == "classes" && properties_esg_dir.empty())
      throw ConfigError(
          "mode=classes needs a prior properties ESG (--properties-esg) "
          "for closure reuse; use --mode both to build it in one run");
  }
};

/// Loads config-file values into `cfg`. Only keys present in the file are
/// touched, so CLI flags applied afterwards win.
inline void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  if (!j.is_object()) throw ConfigError(path + ": config must be a JSON object");

  if (j.contains("inputs")) cfg.inputs = j["inputs"].get<std::vector<std::string>>();
  if (j.contains("mode")) cfg.mode = j["mode"].get<std::string>();
  if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
  if (j.contains("storage")) cfg.storage = j["storage"].get<std::string>();
  if (j.contains("shared_bnode_scope"))
    cfg.shared_bnode_scope = j["shared_bnode_scope"].get<bool>();
  if (j.contains("properties_esg_dir"))
    cfg.properties_esg_dir = j["properties_esg_dir"].get<std::string>();
  if (j.contains("es0_uses_des")) cfg.es0_uses_des = j["es0_uses_des"].get<bool>();

  if (j.contains("seeds")) {
    const auto& s = j["seeds"];
    auto get = [&](const char* key, std::string& into) {
      if (s.contains(key)) into = s[key].get<std::string>();
    };
    get("p_eq_classes", cfg.seeds.eq_classes);
    get("p_sub_classes", cfg.seeds.sub_classes);
    get("p_eq_properties", cfg.seeds.eq_properties);
    get("p_sub_properties", cfg.seeds.sub_properties);
    get("rdf_type", cfg.seeds.type_p);
    get("rdfs_class", cfg.seeds.class_t);
    get("rdf_property", cfg.seeds.property_t);
    get("rdfs_domain", cfg.seeds.domain_p);
    get("rdfs_range", cfg.seeds.range_p);
  }

  if (j.contains("denylist_add")) {
    for (const auto& entry : j["denylist_add"]) {
      if (!entry.is_array() || entry.size() != 3)
        throw ConfigError(path + ": denylist_add entries must be [s, p, o] IRI triples");
      cfg.denylist_add.push_back({entry[0].get<std::string>(),
                                  entry[1].get<std::string>(),
                                  entry[2].get<std::string>()});
    }
  }
}

inline Denylist effective_denylist(const RunConfig& cfg) {
  Denylist d = default_denylist();
  for (const auto& [s, p, o] : cfg.denylist_add)
    d.triples.push_back({iri(s), iri(p), iri(o)});
  return d;
}

}  // namespace esg
