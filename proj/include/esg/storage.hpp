#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "esg/term.hpp"

namespace esg {

/// Key-value layer behind the four ESG maps (ID, IS, H, H⁻). Edge symmetry
/// (j ∈ H(i) ⇔ i ∈ H⁻(j)) is maintained by add_edge/remove_edge, never by
/// callers. Implementations: in-memory (default) and sqlite-backed.
class EsgStorage {
 public:
  virtual ~EsgStorage() = default;

  // ID map
  virtual std::optional<EsId> set_of(TermId t) const = 0;
  virtual void assign(TermId t, EsId i) = 0;

  // IS multi-map
  virtual void add_member(EsId i, TermId t) = 0;
  virtual void drop_set(EsId i) = 0;  // removes the IS entry only
  virtual std::vector<TermId> members(EsId i) const = 0;
  virtual std::uint64_t member_count(EsId i) const = 0;
  virtual std::vector<EsId> set_ids() const = 0;
  virtual std::uint64_t set_count() const = 0;
  virtual std::uint64_t total_members() const = 0;

  // H / H⁻, kept symmetric
  virtual bool add_edge(EsId sub, EsId super) = 0;  // super ∈ H(sub)
  virtual void remove_edge(EsId sub, EsId super) = 0;
  virtual std::vector<EsId> supers(EsId i) const = 0;
  virtual std::vector<EsId> subs(EsId i) const = 0;
  virtual std::uint64_t super_count(EsId i) const = 0;
  virtual std::uint64_t sub_count(EsId i) const = 0;
  virtual std::uint64_t edge_count() const = 0;
};

/// Term and set ids are dense (interning order / monotone counter), so the
/// ID and IS maps live in flat vectors — constant-time and cache-friendly
/// on the per-triple hot path.
class MemoryStorage final : public EsgStorage {
 public:
  std::optional<EsId> set_of(TermId t) const override {
    if (t.value >= id_.size() || id_[t.value] == kNone) return std::nullopt;
    return EsId{id_[t.value]};
  }

  void assign(TermId t, EsId i) override {
    if (t.value >= id_.size()) id_.resize(t.value + 1, kNone);
    id_[t.value] = i.value;
  }

  // Members are kept sorted so traversal order (and thus id allocation
  // downstream) is identical across storage backends.
  void add_member(EsId i, TermId t) override {
    if (i.value >= is_.size()) is_.resize(i.value + 1);
    auto& members = is_[i.value];
    if (members.empty()) ++set_count_;
    if (sorted_insert(members, t)) ++total_members_;
  }

  void drop_set(EsId i) override {
    if (i.value >= is_.size() || is_[i.value].empty()) return;
    --set_count_;
    total_members_ -= is_[i.value].size();
    is_[i.value].clear();
  }

  std::vector<TermId> members(EsId i) const override {
    if (i.value >= is_.size()) return {};
    return {is_[i.value].begin(), is_[i.value].end()};
  }

  std::uint64_t member_count(EsId i) const override {
    return i.value >= is_.size() ? 0 : is_[i.value].size();
  }

  std::vector<EsId> set_ids() const override {
    std::vector<EsId> out;
    out.reserve(set_count_);
    for (std::uint64_t v = 0; v < is_.size(); ++v)
      if (!is_[v].empty()) out.push_back(EsId{v});
    return out;
  }

  std::uint64_t set_count() const override { return set_count_; }

  std::uint64_t total_members() const override { return total_members_; }

  bool add_edge(EsId sub, EsId super) override {
    EsId hi = std::max(sub, super);
    if (hi.value >= h_.size()) {
      h_.resize(hi.value + 1);
      hminus_.resize(hi.value + 1);
    }
    if (!sorted_insert(h_[sub.value], super)) return false;
    sorted_insert(hminus_[super.value], sub);
    ++edges_;
    return true;
  }

  void remove_edge(EsId sub, EsId super) override {
    if (sub.value >= h_.size() || !sorted_erase(h_[sub.value], super)) return;
    sorted_erase(hminus_[super.value], sub);
    --edges_;
  }

  std::vector<EsId> supers(EsId i) const override { return neighbors(h_, i); }
  std::vector<EsId> subs(EsId i) const override { return neighbors(hminus_, i); }

  std::uint64_t super_count(EsId i) const override {
    return i.value >= h_.size() ? 0 : h_[i.value].size();
  }

  std::uint64_t sub_count(EsId i) const override {
    return i.value >= hminus_.size() ? 0 : hminus_[i.value].size();
  }

  std::uint64_t edge_count() const override { return edges_; }

 private:
  using AdjMap = std::vector<std::vector<EsId>>;  // EsId.value -> sorted neighbors

  static std::vector<EsId> neighbors(const AdjMap& m, EsId i) {
    if (i.value >= m.size()) return {};
    return m[i.value];
  }

  template <class T>
  static bool sorted_insert(std::vector<T>& v, T x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it != v.end() && *it == x) return false;
    v.insert(it, x);
    return true;
  }

  template <class T>
  static bool sorted_erase(std::vector<T>& v, T x) {
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x) return false;
    v.erase(it);
    return true;
  }

  static constexpr std::uint64_t kNone = UINT64_MAX;

  std::vector<std::uint64_t> id_;         // TermId.value -> EsId.value
  std::vector<std::vector<TermId>> is_;   // EsId.value -> sorted members
  AdjMap h_, hminus_;
  std::uint64_t edges_ = 0;
  std::uint64_t set_count_ = 0;
  std::uint64_t total_members_ = 0;
};

inline std::unique_ptr<EsgStorage> make_memory_storage() {
  return std::make_unique<MemoryStorage>();
}

}  // namespace esg
