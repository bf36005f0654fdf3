#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "inv/error.hpp"

namespace inv {

/// A base pair (i, j) between 1-based positions, i < j.
struct Arc {
  int i = 0;
  int j = 0;

  constexpr int length() const noexcept { return j - i; }
  friend constexpr auto operator<=>(const Arc&, const Arc&) = default;
};

/// Closed range [l, r] of 1-based positions. Empty when l > r.
struct Interval {
  int l = 1;
  int r = 0;

  constexpr int size() const noexcept { return r >= l ? r - l + 1 : 0; }
  constexpr bool empty() const noexcept { return r < l; }
  constexpr bool contains(int w) const noexcept { return l <= w && w <= r; }
  constexpr bool contains(const Interval& o) const noexcept {
    return l <= o.l && o.r <= r;
  }
  friend constexpr auto operator<=>(const Interval&, const Interval&) = default;
};

/// (i1,j1) and (i2,j2) cross iff i1 < i2 < j1 < j2 (either order).
constexpr bool crosses(const Arc& a, const Arc& b) noexcept {
  return (a.i < b.i && b.i < a.j && a.j < b.j) ||
         (b.i < a.i && a.i < b.j && b.j < a.j);
}

/// inner ≺ outer: outer.i < inner.i < inner.j < outer.j.
constexpr bool nested_in(const Arc& inner, const Arc& outer) noexcept {
  return outer.i < inner.i && inner.j < outer.j;
}

/// A diagram over positions 1..n with vertex degree at most one.
class Structure {
 public:
  Structure() = default;
  explicit Structure(int n);
  /// Throws InvalidStructure on out-of-range endpoints, i >= j, or a shared
  /// endpoint. Arcs may come in any order; they are stored sorted.
  Structure(int n, std::vector<Arc> arcs);

  int size() const noexcept { return n_; }
  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  bool empty() const noexcept { return arcs_.empty(); }

  /// Partner of w, or 0 when unpaired. Throws OutOfRange unless 1 <= w <= n.
  int partner(int w) const;
  bool is_paired(int w) const { return partner(w) != 0; }
  bool contains(const Arc& a) const;

  /// Partner vector indexed 1..n; element 0 is unused.
  const std::vector<int>& partners() const noexcept { return partner_; }

  /// Arcs with both endpoints inside `range`, shifted so range.l becomes 1.
  Structure restricted_to(const Interval& range) const;

  friend bool operator==(const Structure& a, const Structure& b) {
    return a.n_ == b.n_ && a.arcs_ == b.arcs_;
  }

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<int> partner_{0};
};

/// Maximal run of parallel arcs (i,j),(i+1,j-1),...; arcs ordered outermost
/// first.
struct Stack {
  std::vector<Arc> arcs;
  int size() const noexcept { return static_cast<int>(arcs.size()); }
  const Arc& outer() const { return arcs.front(); }
  const Arc& inner() const { return arcs.back(); }
};

struct ValidationPolicy {
  int k = 3;               // crossing bound: at most k-1 mutually crossing arcs
  int sigma = 3;           // minimum stack size
  int min_arc_length = 4;  // minimum j - i

  /// Throws InvalidConfig when k < 2, sigma < 1 or min_arc_length < 1.
  void check() const;
};

enum class ViolationKind { TooManyCrossings, StackTooSmall, ArcTooShort, AdjacentPair };

struct Violation {
  ViolationKind kind;
  Arc arc;    // offending arc (outermost arc of a stack, first arc of a crossing)
  int value;  // the measured quantity: crossing number, stack size or arc length
  std::string message;
};

/// Parses ":()[]{}" text ('.' is accepted as a synonym of ':').
Structure parse_structure(std::string_view text);

/// Emits one bracket family per colour of a greedy colouring of the crossing
/// graph, arcs visited in sorted order, families tried in the order (), [], {}.
std::string serialize_structure(const Structure& s, char unpaired = ':');

/// Largest k with k mutually crossing arcs; 0 for the empty structure.
int crossing_number(const Structure& s);

std::vector<Stack> stacks(const Structure& s);

/// All violations of `policy`; an empty list means the target is valid.
std::vector<Violation> validate_target(const Structure& s, const ValidationPolicy& policy = {});

/// Count of positions whose partners differ. Throws LengthMismatch.
int structure_distance(const Structure& a, const Structure& b);

/// Collapses each stack into its outermost arc and drops the other positions
/// of the stack.
Structure core_of(const Structure& s);

/// Crossing graph: vertex v is s.arcs()[v].
struct LGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // (u, v) with u < v, sorted
  std::vector<std::vector<int>> adjacency;

  bool connected() const;
};

LGraph l_graph_of(const Structure& s);

bool is_skeleton(const Structure& s);
bool is_motif(const Structure& s, int sigma);

}  // namespace inv
