// Command-line front door: ingestion -> selection -> build -> metrics -> export.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "esg/config.hpp"
#include "esg/metrics.hpp"
#include "esg/pipeline.hpp"
#include "esg/serialize.hpp"
#include "esg/storage_sqlite.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUserError = 1;
constexpr int kExitInternalError = 2;

void emit_error(const std::string& kind, const std::string& message) {
  nlohmann::json j{{"error", message}, {"kind", kind}};
  std::cerr << j.dump() << '\n';
}

esg::IngestReport ingest_inputs(esg::TripleStore& store,
                                const std::vector<std::string>& inputs,
                                bool shared_bnode_scope) {
  esg::IngestOptions opts;
  opts.bnode_scope = shared_bnode_scope ? esg::BnodeScope::Shared
                                        : esg::BnodeScope::PerFile;
  esg::IngestReport total;
  for (const auto& path : inputs) total.merge(store.ingest_file(path, opts));
  return total;
}

nlohmann::json ingest_report_json(const esg::IngestReport& rep) {
  nlohmann::json skips = nlohmann::json::array();
  for (const auto& s : rep.skip_log)
    skips.push_back({{"line", s.line}, {"reason", s.reason}});
  return nlohmann::json{{"parsed", rep.parsed},
                        {"deduplicated", rep.deduplicated},
                        {"skipped", rep.skipped},
                        {"terms", rep.terms},
                        {"predicates", rep.predicates},
                        {"skip_log", skips}};
}

std::unique_ptr<esg::EsgStorage> make_storage(const esg::RunConfig& cfg,
                                              const fs::path& dir,
                                              const char* name) {
  if (cfg.storage == "disk") {
    fs::create_directories(dir);
    fs::path db = dir / (std::string(name) + ".sqlite");
    fs::remove(db);
    return esg::make_sqlite_storage(db.string());
  }
  return esg::make_memory_storage();
}

void export_stage(const fs::path& dir, esg::StageResult& stage,
                  const esg::TripleStore& store, const esg::RunConfig& cfg) {
  stage.meta.inputs = cfg.inputs;
  stage.meta.shared_bnode_scope = cfg.shared_bnode_scope;
  esg::write_esg(dir, stage.graph, store, stage.meta);
}

int cmd_build(esg::RunConfig& cfg) {
  cfg.validate();
  if (cfg.inputs.empty()) throw esg::ConfigError("no input files given");
  if (cfg.output_dir.empty()) throw esg::ConfigError("no output directory given");

  esg::TripleStore store;
  esg::IngestReport rep = ingest_inputs(store, cfg.inputs, cfg.shared_bnode_scope);
  std::uint64_t denied = esg::effective_denylist(cfg).apply(store);

  fs::path out(cfg.output_dir);
  fs::create_directories(out);
  {
    nlohmann::json j = ingest_report_json(rep);
    j["denylisted"] = denied;
    std::ofstream f(out / "ingest_report.json", std::ios::trunc);
    f << j.dump(2) << '\n';
  }

  if (cfg.mode == "properties") {
    auto stage = esg::run_properties_stage(store, cfg.seeds,
                                           make_storage(cfg, out, "properties"));
    export_stage(out, stage, store, cfg);
    std::cout << "properties: " << stage.graph.set_count() << " sets, "
              << stage.graph.edge_count() << " edges, " << stage.log.cycles
              << " cycles\n";
  } else if (cfg.mode == "classes") {
    esg::ImportedEsg prop = esg::read_esg(cfg.properties_esg_dir, store);
    auto stage = esg::run_classes_stage(store, cfg.seeds, prop.graph,
                                        make_storage(cfg, out, "classes"));
    export_stage(out, stage, store, cfg);
    std::cout << "classes: " << stage.graph.set_count() << " sets, "
              << stage.graph.edge_count() << " edges, " << stage.log.cycles
              << " cycles\n";
  } else {  // both: properties first, classes consume its closures
    auto props = esg::run_properties_stage(store, cfg.seeds,
                                           make_storage(cfg, out / "properties",
                                                        "properties"));
    export_stage(out / "properties", props, store, cfg);
    std::cout << "properties: " << props.graph.set_count() << " sets, "
              << props.graph.edge_count() << " edges, " << props.log.cycles
              << " cycles\n";
    auto classes = esg::run_classes_stage(store, cfg.seeds, props.graph,
                                          make_storage(cfg, out / "classes",
                                                       "classes"));
    export_stage(out / "classes", classes, store, cfg);
    std::cout << "classes: " << classes.graph.set_count() << " sets, "
              << classes.graph.edge_count() << " edges, " << classes.log.cycles
              << " cycles\n";
  }
  return kExitOk;
}

int cmd_metrics(const std::string& esg_dir, std::vector<std::string> inputs,
                std::string output_dir, bool shared_bnode_scope, bool es0_des) {
  esg::TripleStore store;
  esg::ImportedEsg imported = esg::read_esg(esg_dir, store);
  if (inputs.empty()) inputs = imported.meta.inputs;
  if (inputs.empty())
    throw esg::ConfigError("no triple store inputs: pass -i or record them in meta.json");
  ingest_inputs(store, inputs, shared_bnode_scope || imported.meta.shared_bnode_scope);

  esg::ExtensionOptions opts;
  opts.mode = imported.meta.mode == "properties" ? esg::Mode::Properties
                                                 : esg::Mode::Classes;
  opts.es0_uses_des = es0_des;
  for (const auto& text : imported.meta.type_closure) {
    esg::Term t = esg::detail::parse_term_text(text, "meta.json", 0);
    opts.type_closure.insert(store.resolve(t));
  }
  if (opts.mode == esg::Mode::Classes && opts.type_closure.empty())
    throw esg::ConfigError("classes metrics need the rdf:type closure from meta.json");

  esg::FullReport full = esg::full_report(imported.graph, store, opts);

  fs::path out = output_dir.empty() ? fs::path(esg_dir) : fs::path(output_dir);
  fs::create_directories(out);
  {
    std::ofstream f(out / "report.json", std::ios::trunc);
    f << full.report.to_json().dump(2) << '\n';
  }
  esg::write_distribution_csv(out / "height.csv", full.height_dist);
  esg::write_distribution_csv(out / "wcc.csv", full.wcc_dist);
  esg::write_distribution_csv(out / "ies.csv", full.ies_dist);
  std::cout << "report written to " << (out / "report.json").string() << '\n';
  return kExitOk;
}

esg::Term parse_query_term(const std::string& text) {
  if (!text.empty() && (text[0] == '<' || text[0] == '"' ||
                        text.rfind("_:", 0) == 0))
    return esg::detail::parse_term_text(text, "<arg>", 0);
  return esg::iri(text);
}

int cmd_query(const std::string& esg_dir, const std::string& term_text,
              const std::string& op) {
  esg::TripleStore store;
  esg::ImportedEsg imported = esg::read_esg(esg_dir, store);
  const esg::EquivalenceSetGraph& g = imported.graph;

  auto id = store.find(parse_query_term(term_text));
  std::optional<esg::EsId> set;
  if (id) set = g.set_of(*id);
  if (!set) {
    std::cout << "not found\n";
    return kExitUserError;
  }

  auto print_members = [&](esg::EsId i) {
    auto members = g.members(i);
    std::vector<std::string> lines;
    for (esg::TermId t : members) lines.push_back(esg::nt::serialize_term(store.lookup(t)));
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) std::cout << l << '\n';
  };

  if (op == "set") {
    print_members(*set);
  } else if (op == "supers") {
    for (esg::EsId s : g.supers(*set)) print_members(s);
  } else if (op == "subs") {
    for (esg::EsId s : g.subs(*set)) print_members(s);
  } else {  // closure
    auto terms = g.closure_of(*id);
    std::vector<std::string> lines;
    for (esg::TermId t : terms) lines.push_back(esg::nt::serialize_term(store.lookup(t)));
    std::sort(lines.begin(), lines.end());
    for (const auto& l : lines) std::cout << l << '\n';
  }
  return kExitOk;
}

int cmd_export_dot(const std::string& esg_dir, const std::string& out_path) {
  constexpr std::uint64_t kMaxDotNodes = 10000;
  esg::TripleStore store;
  esg::ImportedEsg imported = esg::read_esg(esg_dir, store);
  const esg::EquivalenceSetGraph& g = imported.graph;
  if (g.set_count() > kMaxDotNodes)
    throw esg::ConfigError("graph has " + std::to_string(g.set_count()) +
                           " sets; refusing to emit DOT above " +
                           std::to_string(kMaxDotNodes));

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::trunc);
    if (!file) throw esg::ConfigError("cannot write " + out_path);
    out = &file;
  }
  *out << "digraph esg {\n";
  auto sets = g.sets();
  std::sort(sets.begin(), sets.end());
  for (esg::EsId i : sets) {
    auto members = g.members(i);
    std::vector<std::string> lex;
    for (esg::TermId t : members) lex.push_back(esg::nt::serialize_term(store.lookup(t)));
    std::sort(lex.begin(), lex.end());
    std::string label = lex.empty() ? "" : lex.front();
    if (lex.size() > 1) label += " (+" + std::to_string(lex.size() - 1) + ")";
    for (auto& ch : label)
      if (ch == '"') ch = '\'';
    *out << "  n" << i.value << " [label=\"" << label << "\"];\n";
  }
  for (esg::EsId i : sets)
    for (esg::EsId s : g.supers(i))
      *out << "  n" << i.value << " -> n" << s.value << ";\n";
  *out << "}\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivalence Set Graph toolkit: compress an RDF knowledge graph "
               "into equivalence sets and analyse its hierarchy"};
  app.require_subcommand(1);

  // build
  esg::RunConfig cfg;
  std::string config_path;
  std::vector<std::string> denylist_flags;
  auto* build = app.add_subcommand("build", "Build ESG(s) from N-Triples dumps");
  build->add_option("-i,--input", cfg.inputs, "Input .nt / .nt.gz files");
  build->add_option("-o,--output", cfg.output_dir, "Output directory");
  build->add_option("-m,--mode", cfg.mode, "classes | properties | both");
  build->add_option("--storage", cfg.storage, "memory | disk");
  build->add_flag("--shared-bnode-scope", cfg.shared_bnode_scope,
                  "Treat blank node labels as global across input files");
  build->add_option("--properties-esg", cfg.properties_esg_dir,
                    "Existing properties ESG export (required for --mode classes)");
  build->add_option("-c,--config", config_path, "JSON config file (flags win)");
  build->add_option("--denylist-add", denylist_flags,
                    "Extra ground triple to reject: \"<s-iri> <p-iri> <o-iri>\"");
  build->add_flag("--es0-des", cfg.es0_uses_des,
                  "Read 'empty extension' on DES instead of IES");
  build->add_option("--p-eq-classes", cfg.seeds.eq_classes, "p_eq for the classes run");
  build->add_option("--p-sub-classes", cfg.seeds.sub_classes, "p_sub for the classes run");
  build->add_option("--p-eq-properties", cfg.seeds.eq_properties,
                    "p_e / p_eq for the properties run");
  build->add_option("--p-sub-properties", cfg.seeds.sub_properties,
                    "p_s / p_sub for the properties run");
  build->add_option("--rdf-type", cfg.seeds.type_p, "rdf:type ground term");
  build->add_option("--rdfs-class", cfg.seeds.class_t, "rdfs:Class ground term");
  build->add_option("--rdf-property", cfg.seeds.property_t, "rdf:Property ground term");
  build->add_option("--rdfs-domain", cfg.seeds.domain_p, "rdfs:domain ground term");
  build->add_option("--rdfs-range", cfg.seeds.range_p, "rdfs:range ground term");

  // metrics
  std::string m_esg_dir, m_out;
  std::vector<std::string> m_inputs;
  bool m_shared_bnodes = false, m_es0_des = false;
  auto* metrics = app.add_subcommand("metrics", "Compute the metrics report for an ESG");
  metrics->add_option("esg_dir", m_esg_dir, "ESG export directory")->required();
  metrics->add_option("-i,--input", m_inputs,
                      "Triple store inputs (default: recorded in meta.json)");
  metrics->add_option("-o,--output", m_out, "Output directory (default: esg_dir)");
  metrics->add_flag("--shared-bnode-scope", m_shared_bnodes,
                    "Treat blank node labels as global across input files");
  metrics->add_flag("--es0-des", m_es0_des,
                    "Read 'empty extension' on DES instead of IES");

  // query
  std::string q_esg_dir, q_term, q_op = "set";
  auto* query = app.add_subcommand("query", "Look up a term in an ESG");
  query->add_option("esg_dir", q_esg_dir, "ESG export directory")->required();
  query->add_option("term", q_term, "IRI (or full N-Triples term)")->required();
  query->add_option("--op", q_op, "set | supers | subs | closure")
      ->check(CLI::IsMember({"set", "supers", "subs", "closure"}));

  // export-dot
  std::string d_esg_dir, d_out;
  auto* dot = app.add_subcommand("export-dot", "Emit a DOT rendering of a small ESG");
  dot->add_option("esg_dir", d_esg_dir, "ESG export directory")->required();
  dot->add_option("-o,--output", d_out, "DOT file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    emit_error("user", e.what());
    return kExitUserError;
  }

  try {
    if (build->parsed()) {
      // Config file first, then explicit flags on top.
      if (!config_path.empty()) {
        esg::RunConfig from_file;
        esg::load_config_file(config_path, from_file);
        if (cfg.inputs.empty()) cfg.inputs = from_file.inputs;
        if (build->count("--mode") == 0) cfg.mode = from_file.mode;
        if (cfg.output_dir.empty()) cfg.output_dir = from_file.output_dir;
        if (build->count("--storage") == 0) cfg.storage = from_file.storage;
        if (build->count("--shared-bnode-scope") == 0)
          cfg.shared_bnode_scope = from_file.shared_bnode_scope;
        if (cfg.properties_esg_dir.empty())
          cfg.properties_esg_dir = from_file.properties_esg_dir;
        if (build->count("--es0-des") == 0) cfg.es0_uses_des = from_file.es0_uses_des;
        auto keep = [&](const char* flag, std::string& mine, const std::string& theirs) {
          if (build->count(flag) == 0) mine = theirs;
        };
        keep("--p-eq-classes", cfg.seeds.eq_classes, from_file.seeds.eq_classes);
        keep("--p-sub-classes", cfg.seeds.sub_classes, from_file.seeds.sub_classes);
        keep("--p-eq-properties", cfg.seeds.eq_properties, from_file.seeds.eq_properties);
        keep("--p-sub-properties", cfg.seeds.sub_properties, from_file.seeds.sub_properties);
        keep("--rdf-type", cfg.seeds.type_p, from_file.seeds.type_p);
        keep("--rdfs-class", cfg.seeds.class_t, from_file.seeds.class_t);
        keep("--rdf-property", cfg.seeds.property_t, from_file.seeds.property_t);
        keep("--rdfs-domain", cfg.seeds.domain_p, from_file.seeds.domain_p);
        keep("--rdfs-range", cfg.seeds.range_p, from_file.seeds.range_p);
        cfg.denylist_add = from_file.denylist_add;
      }
      for (const auto& spec : denylist_flags) {
        std::istringstream ss(spec);
        std::string s, p, o;
        if (!(ss >> s >> p >> o))
          throw esg::ConfigError("--denylist-add needs three IRIs: \"" + spec + "\"");
        cfg.denylist_add.push_back({s, p, o});
      }
      return cmd_build(cfg);
    }
    if (metrics->parsed())
      return cmd_metrics(m_esg_dir, m_inputs, m_out, m_shared_bnodes, m_es0_des);
    if (query->parsed()) return cmd_query(q_esg_dir, q_term, q_op);
    if (dot->parsed()) return cmd_export_dot(d_esg_dir, d_out);
  } catch (const esg::ConfigError& e) {
    emit_error("user", e.what());
    return kExitUserError;
  } catch (const esg::StoreError& e) {
    emit_error("user", e.what());
    return kExitUserError;
  } catch (const esg::SerializeError& e) {
    emit_error("user", e.what());
    return kExitUserError;
  } catch (const esg::MetricsError& e) {
    emit_error("user", e.what());
    return kExitUserError;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return kExitInternalError;
  }
  return kExitOk;
}
