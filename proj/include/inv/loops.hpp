#pragma once

#include <optional>
#include <string>
#include <vector>

#include "inv/structure.hpp"

namespace inv {

enum class LoopKind { Hairpin, Interior, Multi, Pseudoknot };

const char* to_string(LoopKind kind);

/// One loop of the decomposition of a 3-noncrossing diagram.
///
/// Hairpin, interior and multi-loops are owned by their closing arc; `arcs`
/// then lists the closing arc first, followed by the outer arcs of the blocks
/// nested directly beneath it. A pseudoknot loop has no closing arc and `arcs`
/// is its arc set P: a crossing-connected set of arcs, each of which is a
/// minimal beta-crossing for some arc beta.
///
/// `unpaired` holds the maximal runs of unpaired positions claimed by the loop.
struct Loop {
  LoopKind kind = LoopKind::Hairpin;
  std::vector<Arc> arcs;
  std::vector<Interval> unpaired;
  std::optional<Arc> closing;

  /// Arcs this loop owns: the closing arc, or P for a pseudoknot.
  std::vector<Arc> owned_arcs() const;
  /// Zero-gap interior loop between two stacked arcs.
  bool is_stacking() const;
  int leftmost() const;
  friend bool operator==(const Loop&, const Loop&) = default;
};

/// Arcs of `s` crossing `alpha`. Throws ArcNotInStructure.
std::vector<Arc> crossing_set(const Structure& s, const Arc& alpha);

/// The ≺-minimal members of crossing_set(s, beta). Throws ArcNotInStructure.
std::vector<Arc> minimal_beta_crossing(const Structure& s, const Arc& beta);

/// Unique loop decomposition. Every arc is owned by exactly one loop and every
/// unpaired position covered by some arc is claimed by exactly one loop.
/// Output is sorted by leftmost position. Throws InvalidStructure when the
/// diagram contains three mutually crossing arcs.
std::vector<Loop> decompose_loops(const Structure& s);

/// A loop together with every arc of the stacks its arcs belong to. `extent`
/// is [l(T_w), r(T_w)] over those arcs.
struct LoopComponent {
  Loop loop;
  std::vector<Arc> arcs;
  Interval extent;
};

/// Components for all non-stacking loops (stacked pairs are part of stems).
std::vector<LoopComponent> loop_components(const Structure& s, const std::vector<Loop>& loops);

/// Total order on extents: a nested extent comes first, otherwise the earlier
/// start point comes first.
bool loop_precedes(const Interval& a, const Interval& b);

/// Sorts components by loop_precedes; ties fall back to kind and arcs.
std::vector<LoopComponent> order_loops(std::vector<LoopComponent> components);

struct IntervalPlan {
  std::vector<LoopComponent> loops;
  std::vector<Interval> a;  // per ordered loop: extent
  std::vector<Interval> b;  // per ordered loop: extent grown over adjacent unpaired runs
  std::vector<Interval> intervals;
};

/// Grows `extent` over the unpaired runs adjacent to it. `unpaired` is
/// indexed 1..n.
Interval extend_over_unpaired(const Interval& extent, const std::vector<bool>& unpaired);

/// Interval sequence from ordered extents: a_w, b_w (dropped when equal to
/// a_w), c_w = hull(b_1 ∪ ... ∪ b_w), with consecutive duplicates removed and
/// [1, n] appended when it is not already last.
std::vector<Interval> intervals_from_extents(const std::vector<Interval>& ordered_a,
                                             const std::vector<bool>& unpaired);

IntervalPlan build_intervals(const Structure& target);

}  // namespace inv
