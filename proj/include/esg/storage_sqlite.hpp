#pragma once

#include <sqlite3.h>

#include <memory>
#include <stdexcept>
#include <string>

#include "esg/storage.hpp"

namespace esg {

/// On-disk ESG storage for inputs that do not fit in memory. Same
/// semantics as MemoryStorage; selected via the `--storage disk` config.
class SqliteStorage final : public EsgStorage {
 public:
  explicit SqliteStorage(const std::string& path) {
    if (sqlite3_open(path.c_str(), &db_) != SQLITE_OK)
      throw std::runtime_error("cannot open sqlite storage at " + path);
    exec("PRAGMA journal_mode=OFF");
    exec("PRAGMA synchronous=OFF");
    exec("CREATE TABLE IF NOT EXISTS id(term INTEGER PRIMARY KEY, es INTEGER NOT NULL)");
    exec("CREATE TABLE IF NOT EXISTS members(es INTEGER NOT NULL, term INTEGER NOT NULL, "
         "PRIMARY KEY(es, term)) WITHOUT ROWID");
    exec("CREATE TABLE IF NOT EXISTS edges(sub INTEGER NOT NULL, super INTEGER NOT NULL, "
         "PRIMARY KEY(sub, super)) WITHOUT ROWID");
    exec("CREATE INDEX IF NOT EXISTS edges_super ON edges(super)");
    exec("BEGIN");
  }

  ~SqliteStorage() override {
    sqlite3_exec(db_, "COMMIT", nullptr, nullptr, nullptr);
    for (sqlite3_stmt* s : stmts_) sqlite3_finalize(s);
    sqlite3_close(db_);
  }

  SqliteStorage(const SqliteStorage&) = delete;
  SqliteStorage& operator=(const SqliteStorage&) = delete;

  std::optional<EsId> set_of(TermId t) const override {
    auto* s = stmt("SELECT es FROM id WHERE term=?");
    sqlite3_bind_int64(s, 1, static_cast<sqlite3_int64>(t.value));
    std::optional<EsId> out;
    if (sqlite3_step(s) == SQLITE_ROW)
      out = EsId{static_cast<std::uint64_t>(sqlite3_column_int64(s, 0))};
    sqlite3_reset(s);
    return out;
  }

  void assign(TermId t, EsId i) override {
    auto* s = stmt("INSERT INTO id(term, es) VALUES(?,?) "
                   "ON CONFLICT(term) DO UPDATE SET es=excluded.es");
    sqlite3_bind_int64(s, 1, static_cast<sqlite3_int64>(t.value));
    sqlite3_bind_int64(s, 2, static_cast<sqlite3_int64>(i.value));
    step_done(s);
  }

  void add_member(EsId i, TermId t) override {
    auto* s = stmt("INSERT OR IGNORE INTO members(es, term) VALUES(?,?)");
    sqlite3_bind_int64(s, 1, static_cast<sqlite3_int64>(i.value));
    sqlite3_bind_int64(s, 2, static_cast<sqlite3_int64>(t.value));
    step_done(s);
  }

  void drop_set(EsId i) override {
    auto* s = stmt("DELETE FROM members WHERE es=?");
    sqlite3_bind_int64(s, 1, static_cast<sqlite3_int64>(i.value));
    step_done(s);
  }

  std::vector<TermId> members(EsId i) const override {
    auto* s = stmt("SELECT term FROM members WHERE es=? ORDER BY term");
    sqlite3_bind_int64(s, 1, static_cast<sqlite3_int64>(i.value));
    std::vector<TermId> out;
    while (sqlite3_step(s) == SQLITE_ROW)
      out.push_back(TermId{static_cast<std::uint64_t>(sqlite3_column_int64(s, 0))});
    sqlite3_reset(s);
    return out;
  }

  std::uint64_t member_count(EsId i) const override {
    return count1("SELECT COUNT(*) FROM members WHERE es=?", i.value);
  }

  std::vector<EsId> set_ids() const override {
    auto* s = stmt("SELECT DISTINCT es FROM members ORDER BY es");
    std::vector<EsId> out;
    while (sqlite3_step(s) == SQLITE_ROW)
      out.push_back(EsId{static_cast<std::uint64_t>(sqlite3_column_int64(s, 0))});
    sqlite3_reset(s);
    return out;
  }

  std::uint64_t set_count() const override {
    return count0("SELECT COUNT(DISTINCT es) FROM members");
  }

  std::uint64_t total_members() const override {
    return count0("SELECT COUNT(*) FROM members");
  }

  bool add_edge(EsId sub, EsId super) override {
    auto* s = stmt("INSERT OR IGNORE INTO edges(sub, super) VALUES(?,?)");
    sqlite3_bind_int64(s, 1, static_cast<sqlite3_int64>(sub.value));
    sqlite3_bind_int64(s, 2, static_cast<sqlite3_int64>(super.value));
    step_done(s);
    return sqlite3_changes(db_) > 0;
  }

  void remove_edge(EsId sub, EsId super) override {
    auto* s = stmt("DELETE FROM edges WHERE sub=? AND super=?");
    sqlite3_bind_int64(s, 1, static_cast<sqlite3_int64>(sub.value));
    sqlite3_bind_int64(s, 2, static_cast<sqlite3_int64>(super.value));
    step_done(s);
  }

  std::vector<EsId> supers(EsId i) const override {
    return column("SELECT super FROM edges WHERE sub=? ORDER BY super", i.value);
  }

  std::vector<EsId> subs(EsId i) const override {
    return column("SELECT sub FROM edges WHERE super=? ORDER BY sub", i.value);
  }

  std::uint64_t super_count(EsId i) const override {
    return count1("SELECT COUNT(*) FROM edges WHERE sub=?", i.value);
  }

  std::uint64_t sub_count(EsId i) const override {
    return count1("SELECT COUNT(*) FROM edges WHERE super=?", i.value);
  }

  std::uint64_t edge_count() const override {
    return count0("SELECT COUNT(*) FROM edges");
  }

 private:
  void exec(const char* sql) {
    char* err = nullptr;
    if (sqlite3_exec(db_, sql, nullptr, nullptr, &err) != SQLITE_OK) {
      std::string msg = err ? err : "unknown sqlite error";
      sqlite3_free(err);
      throw std::runtime_error("sqlite: " + msg);
    }
  }

  sqlite3_stmt* stmt(const std::string& sql) const {
    auto it = cache_.find(sql);
    if (it != cache_.end()) return it->second;
    sqlite3_stmt* s = nullptr;
    if (sqlite3_prepare_v2(db_, sql.c_str(), -1, &s, nullptr) != SQLITE_OK)
      throw std::runtime_error(std::string("sqlite prepare failed: ") + sqlite3_errmsg(db_));
    cache_.emplace(sql, s);
    stmts_.push_back(s);
    return s;
  }

  void step_done(sqlite3_stmt* s) const {
    if (sqlite3_step(s) != SQLITE_DONE) {
      sqlite3_reset(s);
      throw std::runtime_error(std::string("sqlite step failed: ") + sqlite3_errmsg(db_));
    }
    sqlite3_reset(s);
  }

  std::uint64_t count0(const std::string& sql) const {
    auto* s = stmt(sql);
    std::uint64_t n = 0;
    if (sqlite3_step(s) == SQLITE_ROW)
      n = static_cast<std::uint64_t>(sqlite3_column_int64(s, 0));
    sqlite3_reset(s);
    return n;
  }

  std::uint64_t count1(const std::string& sql, std::uint64_t key) const {
    auto* s = stmt(sql);
    sqlite3_bind_int64(s, 1, static_cast<sqlite3_int64>(key));
    std::uint64_t n = 0;
    if (sqlite3_step(s) == SQLITE_ROW)
      n = static_cast<std::uint64_t>(sqlite3_column_int64(s, 0));
    sqlite3_reset(s);
    return n;
  }

  std::vector<EsId> column(const std::string& sql, std::uint64_t key) const {
    auto* s = stmt(sql);
    sqlite3_bind_int64(s, 1, static_cast<sqlite3_int64>(key));
    std::vector<EsId> out;
    while (sqlite3_step(s) == SQLITE_ROW)
      out.push_back(EsId{static_cast<std::uint64_t>(sqlite3_column_int64(s, 0))});
    sqlite3_reset(s);
    return out;
  }

  sqlite3* db_ = nullptr;
  mutable std::unordered_map<std::string, sqlite3_stmt*> cache_;
  mutable std::vector<sqlite3_stmt*> stmts_;
};

inline std::unique_ptr<EsgStorage> make_sqlite_storage(const std::string& path) {
  return std::make_unique<SqliteStorage>(path);
}

}  // namespace esg
