#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "esg/graph.hpp"
#include "esg/selection.hpp"
#include "esg/triple_store.hpp"

namespace esg {

class MetricsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Distribution {
  enum class Kind { Height, WccSize, Ies };
  Kind kind;
  // x strictly increasing. fraction filled only for the height kind.
  std::vector<std::uint64_t> x;
  std::vector<std::uint64_t> count;
  std::vector<double> fraction;
};

struct MetricsReport {
  std::uint64_t OE = 0, OE_bn = 0, BN = 0;
  std::uint64_t ES = 0, ES_bn = 0;
  std::optional<double> R, R_bn;
  std::uint64_t E = 0;
  std::uint64_t H_max = 0;
  std::uint64_t IN = 0;
  std::uint64_t TL = 0, TL_bn = 0;
  std::uint64_t OE_TL = 0, OE_TL_bn = 0;
  std::optional<double> RTL, RTL_bn;
  std::uint64_t WCC = 0, SCC = 0;
  std::uint64_t OE_0 = 0, OE_0bn = 0;
  std::uint64_t ES_0 = 0, ES_0bn = 0;
  std::uint64_t OE_TL_0 = 0, OE_TL_0bn = 0;
  std::uint64_t TL_0 = 0, TL_0bn = 0;
  std::map<std::string, std::uint64_t> IES_thresholds;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["OE"] = OE;
    j["OE_bn"] = OE_bn;
    j["BN"] = BN;
    j["ES"] = ES;
    j["ES_bn"] = ES_bn;
    j["R"] = R ? nlohmann::json(*R) : nlohmann::json(nullptr);
    j["R_bn"] = R_bn ? nlohmann::json(*R_bn) : nlohmann::json(nullptr);
    j["E"] = E;
    j["H_max"] = H_max;
    j["IN"] = IN;
    j["TL"] = TL;
    j["TL_bn"] = TL_bn;
    j["OE_TL"] = OE_TL;
    j["OE_TL_bn"] = OE_TL_bn;
    j["RTL"] = RTL ? nlohmann::json(*RTL) : nlohmann::json(nullptr);
    j["RTL_bn"] = RTL_bn ? nlohmann::json(*RTL_bn) : nlohmann::json(nullptr);
    j["WCC"] = WCC;
    j["SCC"] = SCC;
    j["OE_0"] = OE_0;
    j["OE_0bn"] = OE_0bn;
    j["ES_0"] = ES_0;
    j["ES_0bn"] = ES_0bn;
    j["OE_TL_0"] = OE_TL_0;
    j["OE_TL_0bn"] = OE_TL_0bn;
    j["TL_0"] = TL_0;
    j["TL_0bn"] = TL_0bn;
    j["IES_thresholds"] = IES_thresholds;
    return j;
  }
};

/// Dense snapshot of an ESG for metric computation. Edges keep the
/// child-to-parent orientation of H.
struct GraphView {
  std::vector<EsId> sets;                      // index -> set id
  std::vector<std::vector<std::size_t>> supers;  // H, by index
  std::vector<std::vector<std::size_t>> subs;    // H⁻, by index
  std::vector<std::vector<TermId>> members;
  std::uint64_t edge_count = 0;

  std::size_t size() const { return sets.size(); }

  static GraphView from(const EquivalenceSetGraph& g) {
    GraphView v;
    v.sets = g.sets();
    std::sort(v.sets.begin(), v.sets.end());
    std::unordered_map<EsId, std::size_t> index;
    index.reserve(v.sets.size());
    for (std::size_t i = 0; i < v.sets.size(); ++i) index.emplace(v.sets[i], i);
    v.supers.resize(v.sets.size());
    v.subs.resize(v.sets.size());
    v.members.resize(v.sets.size());
    for (std::size_t i = 0; i < v.sets.size(); ++i) {
      v.members[i] = g.members(v.sets[i]);
      for (EsId s : g.supers(v.sets[i])) {
        v.supers[i].push_back(index.at(s));
        ++v.edge_count;
      }
      for (EsId s : g.subs(v.sets[i])) v.subs[i].push_back(index.at(s));
    }
    return v;
  }

  /// Copy with blank-node members removed; sets emptied thereby are
  /// dropped along with their edges.
  GraphView without_blanks(const TripleStore& store) const {
    GraphView v;
    std::vector<std::size_t> remap(sets.size(), SIZE_MAX);
    for (std::size_t i = 0; i < sets.size(); ++i) {
      std::vector<TermId> kept;
      for (TermId t : members[i])
        if (!store.is_blank(t)) kept.push_back(t);
      if (kept.empty()) continue;
      remap[i] = v.sets.size();
      v.sets.push_back(sets[i]);
      v.members.push_back(std::move(kept));
    }
    v.supers.resize(v.sets.size());
    v.subs.resize(v.sets.size());
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (remap[i] == SIZE_MAX) continue;
      for (std::size_t s : supers[i]) {
        if (remap[s] == SIZE_MAX) continue;
        v.supers[remap[i]].push_back(remap[s]);
        v.subs[remap[s]].push_back(remap[i]);
        ++v.edge_count;
      }
    }
    return v;
  }
};

struct BasicCounts {
  std::uint64_t OE = 0, ES = 0, E = 0;
  std::optional<double> R;
};

inline BasicCounts basic_counts(const GraphView& v) {
  BasicCounts c;
  c.ES = v.size();
  for (const auto& m : v.members) c.OE += m.size();
  c.E = v.edge_count;
  if (c.OE > 0) c.R = static_cast<double>(c.ES) / static_cast<double>(c.OE);
  return c;
}

namespace detail {

/// Iterative Tarjan over the H orientation. Returns component index per
/// node plus the component count.
inline std::size_t strong_components(const GraphView& v, std::vector<std::size_t>& comp) {
  const std::size_t n = v.size();
  comp.assign(n, SIZE_MAX);
  std::vector<std::size_t> low(n, 0), disc(n, SIZE_MAX), stack;
  std::vector<bool> on_stack(n, false);
  std::size_t timer = 0, ncomp = 0;

  struct Frame {
    std::size_t node;
    std::size_t edge = 0;
  };
  std::vector<Frame> frames;
  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] != SIZE_MAX) continue;
    frames.push_back({root});
    while (!frames.empty()) {
      Frame& f = frames.back();
      std::size_t u = f.node;
      if (f.edge == 0) {
        disc[u] = low[u] = timer++;
        stack.push_back(u);
        on_stack[u] = true;
      }
      bool descended = false;
      while (f.edge < v.supers[u].size()) {
        std::size_t w = v.supers[u][f.edge++];
        if (disc[w] == SIZE_MAX) {
          frames.push_back({w});
          descended = true;
          break;
        }
        if (on_stack[w]) low[u] = std::min(low[u], disc[w]);
      }
      if (descended) continue;
      if (low[u] == disc[u]) {
        while (true) {
          std::size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = ncomp;
          if (w == u) break;
        }
        ++ncomp;
      }
      frames.pop_back();
      if (!frames.empty()) {
        std::size_t parent = frames.back().node;
        low[parent] = std::min(low[parent], low[u]);
      }
    }
  }
  return ncomp;
}

}  // namespace detail

struct HeightResult {
  std::uint64_t h_max = 0;
  std::vector<std::uint64_t> node_height;  // per GraphView index
  Distribution distribution{Distribution::Kind::Height, {}, {}, {}};
};

/// Heights on the SCC condensation: a condensation node with no incoming
/// edges (nothing specializes it) has height 0; otherwise 1 + the maximum
/// height among its specializing components. Original nodes inherit the
/// height of their component.
inline HeightResult heights(const GraphView& v) {
  HeightResult r;
  const std::size_t n = v.size();
  r.node_height.assign(n, 0);
  if (n == 0) return r;

  std::vector<std::size_t> comp;
  std::size_t ncomp = detail::strong_components(v, comp);

  // Condensation edges a->b (a specializes b), deduplicated.
  std::vector<std::unordered_set<std::size_t>> succ(ncomp);
  std::vector<std::size_t> indeg(ncomp, 0);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t w : v.supers[u])
      if (comp[u] != comp[w] && succ[comp[u]].insert(comp[w]).second) ++indeg[comp[w]];

  std::vector<std::uint64_t> ch(ncomp, 0);
  std::deque<std::size_t> ready;
  std::vector<std::size_t> pending = indeg;
  for (std::size_t c = 0; c < ncomp; ++c)
    if (pending[c] == 0) ready.push_back(c);
  while (!ready.empty()) {
    std::size_t c = ready.front();
    ready.pop_front();
    for (std::size_t d : succ[c]) {
      ch[d] = std::max(ch[d], ch[c] + 1);
      if (--pending[d] == 0) ready.push_back(d);
    }
  }

  std::map<std::uint64_t, std::uint64_t> hist;
  for (std::size_t u = 0; u < n; ++u) {
    r.node_height[u] = ch[comp[u]];
    r.h_max = std::max(r.h_max, r.node_height[u]);
    ++hist[r.node_height[u]];
  }
  for (const auto& [h, cnt] : hist) {
    r.distribution.x.push_back(h);
    r.distribution.count.push_back(cnt);
    r.distribution.fraction.push_back(static_cast<double>(cnt) / static_cast<double>(n));
  }
  return r;
}

struct ShapeCounts {
  std::uint64_t IN = 0, TL = 0, OE_TL = 0;
  std::optional<double> RTL;
  std::vector<std::size_t> top_level;  // indices of TL sets
};

inline ShapeCounts hierarchy_shape(const GraphView& v) {
  ShapeCounts s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    bool no_out = v.supers[i].empty();
    if (no_out) {
      ++s.TL;
      s.OE_TL += v.members[i].size();
      s.top_level.push_back(i);
      if (v.subs[i].empty()) ++s.IN;
    }
  }
  if (s.OE_TL > 0) s.RTL = static_cast<double>(s.TL) / static_cast<double>(s.OE_TL);
  return s;
}

struct ComponentCounts {
  std::uint64_t WCC = 0, SCC = 0;
  Distribution wcc_sizes{Distribution::Kind::WccSize, {}, {}, {}};
};

inline ComponentCounts components(const GraphView& v) {
  ComponentCounts c;
  std::vector<std::size_t> comp;
  c.SCC = detail::strong_components(v, comp);

  // WCC via union-find over the undirected edge relation.
  const std::size_t n = v.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t w : v.supers[u]) parent[find(u)] = find(w);
  std::unordered_map<std::size_t, std::uint64_t> sizes;
  for (std::size_t i = 0; i < n; ++i) ++sizes[find(i)];
  c.WCC = sizes.size();
  std::map<std::uint64_t, std::uint64_t> hist;
  for (const auto& [root, sz] : sizes) ++hist[sz];
  for (const auto& [sz, cnt] : hist) {
    c.wcc_sizes.x.push_back(sz);
    c.wcc_sizes.count.push_back(cnt);
  }
  return c;
}

struct ExtensionOptions {
  Mode mode = Mode::Classes;
  std::unordered_set<TermId> type_closure;  // required for classes
  bool es0_uses_des = false;  // flag: "empty" read on DES instead of IES
};

struct ExtensionResult {
  std::unordered_map<TermId, std::uint64_t> entity_size;  // S(e), zero entries omitted
  std::vector<std::uint64_t> des;  // per GraphView index
  std::vector<std::uint64_t> ies;
  std::uint64_t OE_0 = 0, ES_0 = 0, TL_0 = 0, OE_TL_0 = 0;
  std::map<std::string, std::uint64_t> thresholds;  // IES(n), size >= n
  Distribution ies_dist{Distribution::Kind::Ies, {}, {}, {}};
};

/// S, DES and IES per the metric definitions. S keeps entity-level double
/// counting (an entity typed into two classes of one set contributes to
/// both); the IES traversal counts each reachable set's DES once.
inline ExtensionResult extensional_sizes(const GraphView& v, const TripleStore& store,
                                         const ExtensionOptions& opts,
                                         const ShapeCounts& shape) {
  if (opts.mode == Mode::Classes && opts.type_closure.empty() && v.size() > 0)
    throw MetricsError("classes mode requires a non-empty rdf:type closure");

  ExtensionResult r;
  if (opts.mode == Mode::Classes) {
    for (TermId t : opts.type_closure)
      for (const auto& [s, o] : store.triples_with_predicate(t)) ++r.entity_size[o];
  }
  auto size_of = [&](TermId e) -> std::uint64_t {
    if (opts.mode == Mode::Properties)
      return store.triples_with_predicate(e).size();
    auto it = r.entity_size.find(e);
    return it == r.entity_size.end() ? 0 : it->second;
  };

  const std::size_t n = v.size();
  r.des.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (TermId e : v.members[i]) {
      std::uint64_t s = size_of(e);
      r.des[i] += s;
      if (s == 0) ++r.OE_0;
    }

  // IES by downward reachability, each set counted once.
  r.ies.assign(n, 0);
  std::vector<std::uint64_t> mark(n, 0);
  std::uint64_t stamp = 0;
  std::vector<std::size_t> work;
  for (std::size_t i = 0; i < n; ++i) {
    ++stamp;
    work.assign(1, i);
    mark[i] = stamp;
    std::uint64_t total = 0;
    while (!work.empty()) {
      std::size_t u = work.back();
      work.pop_back();
      total += r.des[u];
      for (std::size_t s : v.subs[u])
        if (mark[s] != stamp) {
          mark[s] = stamp;
          work.push_back(s);
        }
    }
    r.ies[i] = total;
  }

  const auto& empty_measure = opts.es0_uses_des ? r.des : r.ies;
  for (std::size_t i = 0; i < n; ++i)
    if (empty_measure[i] == 0) ++r.ES_0;
  for (std::size_t i : shape.top_level) {
    if (empty_measure[i] == 0) ++r.TL_0;
    for (TermId e : v.members[i])
      if (size_of(e) == 0) ++r.OE_TL_0;
  }

  const std::pair<const char*, std::uint64_t> cuts[] = {
      {"1", 1},     {"10", 10},       {"100", 100},
      {"1K", 1000}, {"1M", 1000000}, {"1B", 1000000000}};
  for (const auto& [label, n_cut] : cuts) {
    std::uint64_t cnt = 0;
    for (std::uint64_t x : r.ies)
      if (x >= n_cut) ++cnt;
    r.thresholds[label] = cnt;
  }

  std::map<std::uint64_t, std::uint64_t> hist;
  for (std::uint64_t x : r.ies) ++hist[x];
  for (const auto& [x, cnt] : hist) {
    r.ies_dist.x.push_back(x);
    r.ies_dist.count.push_back(cnt);
  }
  return r;
}

struct FullReport {
  MetricsReport report;
  Distribution height_dist{Distribution::Kind::Height, {}, {}, {}};
  Distribution wcc_dist{Distribution::Kind::WccSize, {}, {}, {}};
  Distribution ies_dist{Distribution::Kind::Ies, {}, {}, {}};
};

inline FullReport full_report(const EquivalenceSetGraph& g, const TripleStore& store,
                              const ExtensionOptions& opts) {
  FullReport out;
  GraphView v = GraphView::from(g);
  GraphView vbn = v.without_blanks(store);

  BasicCounts basic = basic_counts(v);
  BasicCounts basic_bn = basic_counts(vbn);
  out.report.OE = basic.OE;
  out.report.ES = basic.ES;
  out.report.R = basic.R;
  out.report.E = basic.E;
  out.report.OE_bn = basic_bn.OE;
  out.report.ES_bn = basic_bn.ES;
  out.report.R_bn = basic_bn.R;
  out.report.BN = basic.OE - basic_bn.OE;

  HeightResult h = heights(v);
  out.report.H_max = h.h_max;
  out.height_dist = h.distribution;

  ShapeCounts shape = hierarchy_shape(v);
  ShapeCounts shape_bn = hierarchy_shape(vbn);
  out.report.IN = shape.IN;
  out.report.TL = shape.TL;
  out.report.OE_TL = shape.OE_TL;
  out.report.RTL = shape.RTL;
  out.report.TL_bn = shape_bn.TL;
  out.report.OE_TL_bn = shape_bn.OE_TL;
  out.report.RTL_bn = shape_bn.RTL;

  ComponentCounts comp = components(v);
  out.report.WCC = comp.WCC;
  out.report.SCC = comp.SCC;
  out.wcc_dist = comp.wcc_sizes;

  ExtensionResult ext = extensional_sizes(v, store, opts, shape);
  ExtensionResult ext_bn = extensional_sizes(vbn, store, opts, shape_bn);
  out.report.OE_0 = ext.OE_0;
  out.report.ES_0 = ext.ES_0;
  out.report.TL_0 = ext.TL_0;
  out.report.OE_TL_0 = ext.OE_TL_0;
  out.report.OE_0bn = ext_bn.OE_0;
  out.report.ES_0bn = ext_bn.ES_0;
  out.report.TL_0bn = ext_bn.TL_0;
  out.report.OE_TL_0bn = ext_bn.OE_TL_0;
  out.report.IES_thresholds = ext.thresholds;
  out.ies_dist = ext.ies_dist;
  return out;
}

}  // namespace esg
