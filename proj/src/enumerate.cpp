#include "inv/enumerate.hpp"

#include <algorithm>

namespace inv {

struct StructureWalker::State {
  std::vector<int> partner;  // 1..n, 0 = free
  std::vector<Arc> arcs;     // sorted by start point
};

StructureWalker::StructureWalker(int n, const ValidationPolicy& policy, ArcFilter filter)
    : n_(n), policy_(policy), filter_(std::move(filter)) {
  policy_.check();
  // An arc over adjacent positions is never legal, whatever the policy says.
  policy_.min_arc_length = std::max(policy_.min_arc_length, 2);
}

bool StructureWalker::stack_fits(const State& st, int p, int s, int j) const {
  const int inner_i = p + s - 1;
  const int inner_j = j - s + 1;
  if (j > n_ || inner_j - inner_i < policy_.min_arc_length) return false;
  if (p > 1 && st.partner[p - 1] == j + 1) return false;  // would extend a stack
  for (int t = 0; t < s; ++t) {
    if (st.partner[p + t] != 0 || st.partner[j - t] != 0) return false;
    if (filter_ && !filter_(p + t, j - t)) return false;
  }
  // Existing arcs crossing the new stack: start before p, end strictly inside
  // (p, j). A chain of k-1 of them with increasing right ends plus the new arc
  // would be a k-crossing.
  std::vector<int> tails;
  for (const Arc& a : st.arcs) {
    if (a.j <= p || a.j >= j) continue;
    auto it = std::lower_bound(tails.begin(), tails.end(), a.j);
    if (it == tails.end()) tails.push_back(a.j);
    else *it = a.j;
    if (static_cast<int>(tails.size()) >= policy_.k - 1) return false;
  }
  return true;
}

void StructureWalker::place(State& st, int p, int s, int j) const {
  for (int t = 0; t < s; ++t) {
    st.partner[p + t] = j - t;
    st.partner[j - t] = p + t;
    st.arcs.push_back({p + t, j - t});
  }
}

void StructureWalker::unplace(State& st, int p, int s, int j) const {
  for (int t = 0; t < s; ++t) {
    st.partner[p + t] = 0;
    st.partner[j - t] = 0;
  }
  st.arcs.resize(st.arcs.size() - static_cast<std::size_t>(s));
}

void StructureWalker::descend(State& st, int p, const ArcVisitor& visit) const {
  while (p <= n_ && st.partner[p] != 0) ++p;  // right ends reserved earlier
  if (p > n_) {
    visit(st.arcs);
    return;
  }
  descend(st, p + 1, visit);
  for (int s = policy_.sigma; 2 * s + policy_.min_arc_length - 1 <= n_ - p + 1; ++s) {
    if (st.partner[p + s - 1] != 0) break;
    for (int j = p + 2 * s - 2 + policy_.min_arc_length; j <= n_; ++j) {
      if (!stack_fits(st, p, s, j)) continue;
      place(st, p, s, j);
      descend(st, p + s, visit);
      unplace(st, p, s, j);
    }
  }
}

std::vector<WalkSeed> StructureWalker::seeds() const {
  std::vector<WalkSeed> out;
  State st;
  st.partner.assign(static_cast<std::size_t>(n_) + 2, 0);
  for (int p = 1; p <= n_; ++p) {
    for (int s = policy_.sigma; 2 * s + policy_.min_arc_length - 1 <= n_ - p + 1; ++s) {
      for (int j = p + 2 * s - 2 + policy_.min_arc_length; j <= n_; ++j) {
        if (stack_fits(st, p, s, j)) out.push_back({p, s, j});
      }
    }
  }
  return out;
}

void StructureWalker::walk(const WalkSeed& seed, const ArcVisitor& visit) const {
  State st;
  st.partner.assign(static_cast<std::size_t>(n_) + 2, 0);
  if (seed.start == 0) {
    descend(st, 1, visit);
    return;
  }
  place(st, seed.start, seed.size, seed.end);
  descend(st, seed.start + seed.size, visit);
}

void StructureWalker::visit_empty(const ArcVisitor& visit) const { visit({}); }

void StructureWalker::walk_all(const ArcVisitor& visit) const { walk(WalkSeed{}, visit); }

void check_size_guard(int n, bool allow_large) {
  if (n > kDefaultSizeGuard && !allow_large) {
    throw Error(ErrorKind::SizeGuard, "length " + std::to_string(n) + " exceeds the guard of " +
                                          std::to_string(kDefaultSizeGuard) +
                                          "; pass the override to enumerate anyway");
  }
}

std::vector<Structure> enumerate_structures(int n, const ValidationPolicy& policy,
                                            bool allow_large) {
  if (n < 0) throw Error(ErrorKind::OutOfRange, "negative length");
  check_size_guard(n, allow_large);
  std::vector<Structure> out;
  StructureWalker(n, policy).walk_all([&](const std::vector<Arc>& arcs) {
    out.emplace_back(n, arcs);
  });
  return out;
}

}  // namespace inv
