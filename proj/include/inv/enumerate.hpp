#pragma once

#include <functional>
#include <vector>

#include "inv/structure.hpp"

namespace inv {

inline constexpr int kDefaultSizeGuard = 40;

/// Restricts which arcs the walker may place. Called with (i, j), i < j.
using ArcFilter = std::function<bool(int, int)>;

/// Receives each structure as its arc list sorted by start point.
using ArcVisitor = std::function<void(const std::vector<Arc>&)>;

/// Where a walk starts: either the empty prefix or one placed first stack.
/// Splitting a walk this way gives independent tasks for parallel callers.
struct WalkSeed {
  int start = 0;  // 0 for the root (no stack placed yet)
  int size = 0;
  int end = 0;    // right end of the outermost arc
};

/// Depth-first stack placement over positions 1..n.
///
/// Every structure with at most policy.k - 1 mutually crossing arcs, stacks of
/// size >= sigma and arcs of length >= min_arc_length is produced exactly once
/// (restricted to arcs accepted by the filter, when one is given).
class StructureWalker {
 public:
  StructureWalker(int n, const ValidationPolicy& policy, ArcFilter filter = {});

  /// First stacks available at the root. The empty structure belongs to no
  /// seed; visit_empty() covers it.
  std::vector<WalkSeed> seeds() const;

  /// All structures whose first stack is `seed`.
  void walk(const WalkSeed& seed, const ArcVisitor& visit) const;
  void visit_empty(const ArcVisitor& visit) const;
  /// Everything, serially.
  void walk_all(const ArcVisitor& visit) const;

 private:
  struct State;
  void descend(State& st, int p, const ArcVisitor& visit) const;
  bool stack_fits(const State& st, int p, int s, int j) const;
  void place(State& st, int p, int s, int j) const;
  void unplace(State& st, int p, int s, int j) const;

  int n_;
  ValidationPolicy policy_;
  ArcFilter filter_;
};

/// Throws SizeGuard when n > kDefaultSizeGuard and allow_large is false.
void check_size_guard(int n, bool allow_large);

/// Every valid structure of length n, in walk order. Throws SizeGuard.
std::vector<Structure> enumerate_structures(int n, const ValidationPolicy& policy = {},
                                            bool allow_large = false);

}  // namespace inv
