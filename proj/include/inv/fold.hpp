#pragma once

#include <vector>

#include "inv/energy.hpp"
#include "inv/enumerate.hpp"

namespace inv {

/// Structures sorted by (energy, arc list), lowest first.
struct FoldResult {
  std::vector<Structure> structures;
  std::vector<int> energies;

  std::size_t size() const noexcept { return structures.size(); }
  const Structure& mfe() const { return structures.front(); }
};

/// Folding contract consumed by the search. Implementations must be safe to
/// call concurrently and deterministic in (sequence, count).
class FoldOracle {
 public:
  virtual ~FoldOracle() = default;
  /// The `count` lowest-energy structures compatible with seq. count >= 1.
  virtual FoldResult fold(const RnaSequence& seq, int count = 1) const = 0;
  virtual const ValidationPolicy& policy() const = 0;
};

struct FoldOptions {
  ValidationPolicy policy;
  EnergyModel model;
  bool allow_large = false;  // lift the size guard
  bool parallel = true;      // split the walk across OpenMP threads
};

/// Exhaustive reference folder: walks every valid structure compatible with
/// the sequence and keeps the best `count`.
class ExhaustiveFolder final : public FoldOracle {
 public:
  explicit ExhaustiveFolder(FoldOptions options = {});

  FoldResult fold(const RnaSequence& seq, int count = 1) const override;
  const ValidationPolicy& policy() const override { return options_.policy; }
  const EnergyModel& model() const { return options_.model; }

  /// Single-threaded kernel, kept as the reference for the parallel one.
  FoldResult fold_serial(const RnaSequence& seq, int count) const;
  FoldResult fold_parallel(const RnaSequence& seq, int count) const;

 private:
  void check_request(const RnaSequence& seq, int count) const;

  FoldOptions options_;
};

}  // namespace inv
