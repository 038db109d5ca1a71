#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <string>

#include "esg/config.hpp"

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("config_test_" + name + ".json") {
    std::ofstream out(path, std::ios::trunc);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("defaults validate in both and properties modes only") {
  esg::RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.mode = "properties";
  CHECK_NOTHROW(cfg.validate());
  cfg.mode = "classes";
  CHECK_THROWS_AS(cfg.validate(), esg::ConfigError);
  cfg.properties_esg_dir = "somewhere";
  CHECK_NOTHROW(cfg.validate());
  cfg.mode = "bogus";
  CHECK_THROWS_AS(cfg.validate(), esg::ConfigError);
  cfg.mode = "both";
  cfg.storage = "tape";
  CHECK_THROWS_AS(cfg.validate(), esg::ConfigError);
}

TEST_CASE("config file overrides only the keys it names") {
  TempFile f("partial", R"({
    "mode": "properties",
    "inputs": ["x.nt"],
    "seeds": {"p_eq_classes": "http://example.org/eqC"},
    "denylist_add": [["http://s", "http://p", "http://o"]]
  })");
  esg::RunConfig cfg;
  esg::load_config_file(f.path, cfg);
  CHECK(cfg.mode == "properties");
  CHECK(cfg.inputs == std::vector<std::string>{"x.nt"});
  CHECK(cfg.seeds.eq_classes == "http://example.org/eqC");
  // Untouched keys keep their defaults.
  CHECK(cfg.seeds.sub_classes == esg::vocab::kRdfsSubClassOf);
  CHECK(cfg.storage == "memory");
  REQUIRE(cfg.denylist_add.size() == 1);
  CHECK(cfg.denylist_add[0][1] == "http://p");
}

TEST_CASE("bad config files raise ConfigError") {
  TempFile notjson("notjson", "mode = properties");
  esg::RunConfig cfg;
  CHECK_THROWS_AS(esg::load_config_file(notjson.path, cfg), esg::ConfigError);

  TempFile notobj("notobj", "[1, 2]");
  CHECK_THROWS_AS(esg::load_config_file(notobj.path, cfg), esg::ConfigError);

  TempFile baddeny("baddeny", R"({"denylist_add": [["s", "p"]]})");
  CHECK_THROWS_AS(esg::load_config_file(baddeny.path, cfg), esg::ConfigError);

  CHECK_THROWS_AS(esg::load_config_file("/definitely/missing.json", cfg),
                  esg::ConfigError);
}

TEST_CASE("effective denylist is the default plus additions") {
  esg::RunConfig cfg;
  CHECK(esg::effective_denylist(cfg).triples.size() == 2);
  cfg.denylist_add.push_back({"http://s", "http://p", "http://o"});
  auto d = esg::effective_denylist(cfg);
  REQUIRE(d.triples.size() == 3);
  CHECK(d.triples[2][0].lexical == "http://s");
}
