#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kCli = ESG_CLI_PATH;
const std::string kFig1 = std::string(FIXTURES_DIR "/") + "fig1.nt";

struct Exec {
  int status;
  std::string out;
};

Exec run(const std::string& args) {
  std::string out_file = "cli_test_stdout.txt";
  int rc = std::system((kCli + " " + args + " > " + out_file + " 2>&1").c_str());
  std::ifstream in(out_file);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::remove(out_file.c_str());
  int code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return {code, text};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("build --mode both writes both exports") {
  TempDir dir("esg_cli_both");
  auto r = run("build --mode both -i " + kFig1 + " -o " + dir.path.string());
  CAPTURE(r.out);
  REQUIRE(r.status == 0);
  for (const char* sub : {"properties", "classes"})
    for (const char* f : {"id.tsv", "is.tsv", "h.tsv", "hminus.tsv", "meta.json"})
      CHECK(fs::exists(dir.path / sub / f));
  CHECK(fs::exists(dir.path / "ingest_report.json"));

  auto meta = nlohmann::json::parse(slurp(dir.path / "classes" / "meta.json"));
  CHECK(meta["mode"] == "classes");
  CHECK(meta["sets"] == 4);
  CHECK(meta["edges"] == 3);
}

TEST_CASE("reruns are byte-identical") {
  TempDir a("esg_cli_det_a"), b("esg_cli_det_b");
  REQUIRE(run("build --mode both -i " + kFig1 + " -o " + a.path.string()).status == 0);
  REQUIRE(run("build --mode both -i " + kFig1 + " -o " + b.path.string()).status == 0);
  CHECK(slurp(a.path / "classes" / "is.tsv") == slurp(b.path / "classes" / "is.tsv"));
  CHECK(slurp(a.path / "properties" / "is.tsv") == slurp(b.path / "properties" / "is.tsv"));
  CHECK(slurp(a.path / "classes" / "h.tsv") == slurp(b.path / "classes" / "h.tsv"));
}

TEST_CASE("metrics produces report.json and the three distributions") {
  TempDir dir("esg_cli_metrics");
  REQUIRE(run("build --mode both -i " + kFig1 + " -o " + dir.path.string()).status == 0);
  auto r = run("metrics " + (dir.path / "classes").string());
  CAPTURE(r.out);
  REQUIRE(r.status == 0);
  for (const char* f : {"report.json", "height.csv", "wcc.csv", "ies.csv"})
    CHECK(fs::exists(dir.path / "classes" / f));
  auto report = nlohmann::json::parse(slurp(dir.path / "classes" / "report.json"));
  CHECK(report["OE"] == 8);
  CHECK(report["ES"] == 4);
  CHECK(report["E"] == 3);
  CHECK(report["R"] == 0.5);

  // Idempotence.
  std::string before = slurp(dir.path / "classes" / "report.json");
  REQUIRE(run("metrics " + (dir.path / "classes").string()).status == 0);
  CHECK(slurp(dir.path / "classes" / "report.json") == before);
}

TEST_CASE("query prints members, supers, and closure") {
  TempDir dir("esg_cli_query");
  REQUIRE(run("build --mode both -i " + kFig1 + " -o " + dir.path.string()).status == 0);
  std::string esg_dir = (dir.path / "classes").string();

  auto set = run("query " + esg_dir + " http://xmlns.com/foaf/0.1/Person");
  REQUIRE(set.status == 0);
  CHECK(set.out.find("foaf/0.1/Person") != std::string::npos);
  CHECK(set.out.find("dbpedia.org/ontology/Person") != std::string::npos);
  CHECK(set.out.find("org#Agent") == std::string::npos);

  auto supers = run("query " + esg_dir + " http://xmlns.com/foaf/0.1/Person --op supers");
  REQUIRE(supers.status == 0);
  CHECK(supers.out.find("org#Agent") != std::string::npos);

  auto closure = run("query " + esg_dir + " http://www.w3.org/ns/org#Agent --op closure");
  REQUIRE(closure.status == 0);
  // The whole figure specializes the agent set.
  int lines = 0;
  std::istringstream ls(closure.out);
  for (std::string line; std::getline(ls, line);)
    if (!line.empty()) ++lines;
  CHECK(lines == 8);

  auto missing = run("query " + esg_dir + " http://nowhere/x");
  CHECK(missing.status == 1);
  CHECK(missing.out.find("not found") != std::string::npos);
}

TEST_CASE("export-dot emits a digraph") {
  TempDir dir("esg_cli_dot");
  REQUIRE(run("build --mode both -i " + kFig1 + " -o " + dir.path.string()).status == 0);
  auto r = run("export-dot " + (dir.path / "classes").string());
  REQUIRE(r.status == 0);
  CHECK(r.out.find("digraph esg {") != std::string::npos);
  CHECK(r.out.find("->") != std::string::npos);
}

TEST_CASE("user errors exit 1 with JSON on stderr") {
  auto bad_mode = run("build --mode sideways -i " + kFig1 + " -o /tmp/esg_cli_na");
  CHECK(bad_mode.status == 1);
  CHECK(bad_mode.out.find("\"kind\":\"user\"") != std::string::npos);

  auto no_input = run("build --mode both -o /tmp/esg_cli_na");
  CHECK(no_input.status == 1);

  auto missing_input = run("build --mode both -i /no/such.nt -o /tmp/esg_cli_na");
  CHECK(missing_input.status == 1);

  auto bad_sub = run("frobnicate");
  CHECK(bad_sub.status == 1);
}

TEST_CASE("config file values are overridden by flags") {
  TempDir dir("esg_cli_config");
  fs::create_directories(dir.path);
  fs::path cfg = dir.path / "run.json";
  {
    std::ofstream out(cfg);
    out << nlohmann::json{{"inputs", {kFig1}},
                          {"mode", "properties"},
                          {"output_dir", (dir.path / "from_config").string()}}
               .dump();
  }
  // Flag overrides the config's mode; inputs/output come from the file.
  auto r = run("build -c " + cfg.string() + " --mode both");
  CAPTURE(r.out);
  REQUIRE(r.status == 0);
  CHECK(fs::exists(dir.path / "from_config" / "classes" / "meta.json"));
}

TEST_CASE("disk storage produces the same export as memory") {
  TempDir mem("esg_cli_mem"), disk("esg_cli_disk");
  REQUIRE(run("build --mode both -i " + kFig1 + " -o " + mem.path.string()).status == 0);
  REQUIRE(run("build --mode both --storage disk -i " + kFig1 + " -o " +
              disk.path.string())
              .status == 0);
  CHECK(slurp(mem.path / "classes" / "is.tsv") == slurp(disk.path / "classes" / "is.tsv"));
  CHECK(slurp(mem.path / "classes" / "h.tsv") == slurp(disk.path / "classes" / "h.tsv"));
}
