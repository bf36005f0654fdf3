#include "inv/loops.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace inv {

const char* to_string(LoopKind kind) {
  switch (kind) {
    case LoopKind::Hairpin: return "hairpin";
    case LoopKind::Interior: return "interior";
    case LoopKind::Multi: return "multi";
    case LoopKind::Pseudoknot: return "pseudoknot";
  }
  return "unknown";
}

std::vector<Arc> Loop::owned_arcs() const {
  if (closing) return {*closing};
  return arcs;
}

bool Loop::is_stacking() const {
  return kind == LoopKind::Interior && closing && arcs.size() == 2 &&
         arcs[1] == Arc{closing->i + 1, closing->j - 1};
}

int Loop::leftmost() const {
  if (closing) return closing->i;
  int l = arcs.empty() ? 0 : arcs.front().i;
  for (const Arc& a : arcs) l = std::min(l, a.i);
  return l;
}

namespace {

void require_arc(const Structure& s, const Arc& a) {
  if (!s.contains(a)) {
    throw Error(ErrorKind::ArcNotInStructure,
                "arc (" + std::to_string(a.i) + "," + std::to_string(a.j) + ") not in structure",
                a.i);
  }
}

std::vector<Arc> minimal_elements(const std::vector<Arc>& arcs) {
  std::vector<Arc> out;
  for (const Arc& a : arcs) {
    if (std::none_of(arcs.begin(), arcs.end(), [&](const Arc& b) { return nested_in(b, a); })) {
      out.push_back(a);
    }
  }
  return out;
}

std::vector<Arc> maximal_elements(const std::vector<Arc>& arcs) {
  std::vector<Arc> out;
  for (const Arc& a : arcs) {
    if (std::none_of(arcs.begin(), arcs.end(), [&](const Arc& b) { return nested_in(a, b); })) {
      out.push_back(a);
    }
  }
  return out;
}

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Groups arcs into crossing-connected components, each sorted, ordered by
// their first arc.
std::vector<std::vector<Arc>> crossing_components(const std::vector<Arc>& arcs) {
  DisjointSets ds(arcs.size());
  for (std::size_t u = 0; u < arcs.size(); ++u) {
    for (std::size_t v = u + 1; v < arcs.size(); ++v) {
      if (crosses(arcs[u], arcs[v])) ds.unite(static_cast<int>(u), static_cast<int>(v));
    }
  }
  std::map<int, std::vector<Arc>> groups;
  for (std::size_t u = 0; u < arcs.size(); ++u) groups[ds.find(static_cast<int>(u))].push_back(arcs[u]);
  std::vector<std::vector<Arc>> out;
  for (auto& [root, g] : groups) {
    std::sort(g.begin(), g.end());
    out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

Interval span_of(const std::vector<Arc>& arcs) {
  Interval sp{arcs.front().i, arcs.front().j};
  for (const Arc& a : arcs) {
    sp.l = std::min(sp.l, a.i);
    sp.r = std::max(sp.r, a.j);
  }
  return sp;
}

std::vector<Interval> runs_of(const std::vector<int>& positions) {
  std::vector<Interval> runs;
  for (int w : positions) {
    if (!runs.empty() && runs.back().r + 1 == w) runs.back().r = w;
    else runs.push_back({w, w});
  }
  return runs;
}

}  // namespace

std::vector<Arc> crossing_set(const Structure& s, const Arc& alpha) {
  require_arc(s, alpha);
  std::vector<Arc> out;
  for (const Arc& a : s.arcs()) {
    if (crosses(a, alpha)) out.push_back(a);
  }
  return out;
}

std::vector<Arc> minimal_beta_crossing(const Structure& s, const Arc& beta) {
  return minimal_elements(crossing_set(s, beta));
}

std::vector<Loop> decompose_loops(const Structure& s) {
  if (crossing_number(s) > 2) {
    throw Error(ErrorKind::InvalidStructure, "loop decomposition needs a 3-noncrossing diagram");
  }
  const auto& arcs = s.arcs();
  const int n = s.size();

  std::set<Arc> minimal;
  for (const Arc& beta : arcs) {
    for (const Arc& a : minimal_beta_crossing(s, beta)) minimal.insert(a);
  }

  std::vector<Loop> loops;
  std::vector<char> claimed(static_cast<std::size_t>(n) + 1, 0);

  for (const Arc& alpha : arcs) {
    if (minimal.count(alpha)) continue;
    std::vector<Arc> inside;
    for (const Arc& g : arcs) {
      if (nested_in(g, alpha)) inside.push_back(g);
    }
    const auto comps = crossing_components(inside);
    std::vector<const std::vector<Arc>*> direct;
    for (const auto& comp : comps) {
      const Interval sp = span_of(comp);
      const bool under_other = std::any_of(inside.begin(), inside.end(), [&](const Arc& g) {
        return g.i < sp.l && sp.r < g.j && !std::binary_search(comp.begin(), comp.end(), g);
      });
      if (!under_other) direct.push_back(&comp);
    }

    Loop loop;
    loop.closing = alpha;
    loop.arcs.push_back(alpha);
    std::vector<Interval> spans;
    for (const auto* comp : direct) {
      spans.push_back(span_of(*comp));
      for (const Arc& a : maximal_elements(*comp)) loop.arcs.push_back(a);
    }
    std::sort(loop.arcs.begin() + 1, loop.arcs.end());

    std::vector<int> gap;
    for (int x = alpha.i + 1; x < alpha.j; ++x) {
      if (std::any_of(spans.begin(), spans.end(), [&](const Interval& sp) { return sp.contains(x); })) continue;
      if (s.partner(x) != 0) {
        throw std::logic_error("paired position in a loop gap; decomposition invariant broken");
      }
      gap.push_back(x);
      claimed[x] = 1;
    }
    loop.unpaired = runs_of(gap);

    if (direct.empty()) loop.kind = LoopKind::Hairpin;
    else if (direct.size() == 1 && direct.front()->size() == 1) loop.kind = LoopKind::Interior;
    else loop.kind = LoopKind::Multi;
    loops.push_back(std::move(loop));
  }

  // Pseudoknot loops: crossing-connected groups of minimal crossing arcs.
  const auto groups = crossing_components(std::vector<Arc>(minimal.begin(), minimal.end()));
  std::vector<Interval> group_spans;
  for (const auto& g : groups) group_spans.push_back(span_of(g));
  std::vector<std::vector<int>> group_positions(groups.size());
  for (int x = 1; x <= n; ++x) {
    if (claimed[x] || s.partner(x) != 0) continue;
    int best = -1;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const Interval& sp = group_spans[g];
      if (sp.l < x && x < sp.r && (best < 0 || group_spans[best].contains(sp))) {
        best = static_cast<int>(g);
      }
    }
    if (best >= 0) group_positions[best].push_back(x);
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    Loop loop;
    loop.kind = LoopKind::Pseudoknot;
    loop.arcs = groups[g];
    loop.unpaired = runs_of(group_positions[g]);
    loops.push_back(std::move(loop));
  }

  std::sort(loops.begin(), loops.end(),
            [](const Loop& a, const Loop& b) { return a.leftmost() < b.leftmost(); });
  return loops;
}

std::vector<LoopComponent> loop_components(const Structure& s, const std::vector<Loop>& loops) {
  const auto all_stacks = stacks(s);
  std::map<Arc, std::size_t> stack_of;
  for (std::size_t h = 0; h < all_stacks.size(); ++h) {
    for (const Arc& a : all_stacks[h].arcs) stack_of[a] = h;
  }
  std::vector<LoopComponent> out;
  for (const Loop& loop : loops) {
    if (loop.is_stacking()) continue;
    std::set<Arc> members;
    for (const Arc& a : loop.arcs) {
      for (const Arc& b : all_stacks[stack_of.at(a)].arcs) members.insert(b);
    }
    LoopComponent c;
    c.loop = loop;
    c.arcs.assign(members.begin(), members.end());
    c.extent = span_of(c.arcs);
    out.push_back(std::move(c));
  }
  return out;
}

bool loop_precedes(const Interval& a, const Interval& b) {
  if (a.r != b.r) return a.r < b.r;
  return a.l > b.l;
}

std::vector<LoopComponent> order_loops(std::vector<LoopComponent> components) {
  std::stable_sort(components.begin(), components.end(),
                   [](const LoopComponent& x, const LoopComponent& y) {
                     if (x.extent != y.extent) return loop_precedes(x.extent, y.extent);
                     if (x.loop.kind != y.loop.kind) return x.loop.kind < y.loop.kind;
                     return x.arcs < y.arcs;
                   });
  return components;
}

Interval extend_over_unpaired(const Interval& extent, const std::vector<bool>& unpaired) {
  const int n = static_cast<int>(unpaired.size()) - 1;
  Interval b = extent;
  while (b.l > 1 && unpaired[b.l - 1]) --b.l;
  while (b.r < n && unpaired[b.r + 1]) ++b.r;
  return b;
}

std::vector<Interval> intervals_from_extents(const std::vector<Interval>& ordered_a,
                                             const std::vector<bool>& unpaired) {
  const int n = static_cast<int>(unpaired.size()) - 1;
  std::vector<Interval> out;
  auto push = [&](const Interval& iv) {
    if (out.empty() || out.back() != iv) out.push_back(iv);
  };
  std::optional<Interval> hull;
  for (const Interval& a : ordered_a) {
    push(a);
    const Interval b = extend_over_unpaired(a, unpaired);
    if (b != a) push(b);
    hull = hull ? Interval{std::min(hull->l, b.l), std::max(hull->r, b.r)} : b;
    push(*hull);
  }
  if (n > 0) push({1, n});
  return out;
}

IntervalPlan build_intervals(const Structure& target) {
  IntervalPlan plan;
  plan.loops = order_loops(loop_components(target, decompose_loops(target)));
  std::vector<bool> unpaired(static_cast<std::size_t>(target.size()) + 1, false);
  for (int w = 1; w <= target.size(); ++w) unpaired[w] = target.partner(w) == 0;
  for (const auto& c : plan.loops) {
    plan.a.push_back(c.extent);
    plan.b.push_back(extend_over_unpaired(c.extent, unpaired));
  }
  plan.intervals = intervals_from_extents(plan.a, unpaired);
  return plan;
}

}  // namespace inv
