#pragma once

#include <array>
#include <string>

#include "inv/loops.hpp"
#include "inv/sequence.hpp"

namespace inv {

/// Flat loop-based score model in integer units. Lower is more stable.
struct EnergyModel {
  int pair_gc = -3;  // GC and CG
  int pair_au = -2;  // AU and UA
  int pair_gu = -1;  // GU and UG
  int hairpin = 3;
  int interior = 2;  // interior loop with at least one unpaired base
  int stacking = 0;  // interior loop between two stacked pairs
  int multi = 4;
  int pseudoknot = 9;

  int pair_score(Base x, Base y) const;
  int loop_penalty(const Loop& loop) const;

  /// Throws InvalidConfig when a pair score is positive or a penalty negative.
  void check() const;

  /// Reads "key = value" lines; '#' starts a comment. Unknown keys and
  /// malformed values raise InvalidConfig. Keys: pair_gc, pair_au, pair_gu,
  /// hairpin, interior, stacking, multi, pseudoknot.
  static EnergyModel from_text(const std::string& text);
  static EnergyModel from_file(const std::string& path);

  friend bool operator==(const EnergyModel&, const EnergyModel&) = default;
};

/// Sum of the loop penalties of the decomposition of s. Sequence independent.
int loop_penalty_sum(const Structure& s, const EnergyModel& model);

/// Pair scores plus loop penalties. Throws IncompatibleInput.
int energy_of(const RnaSequence& seq, const Structure& s, const EnergyModel& model = {});

}  // namespace inv
