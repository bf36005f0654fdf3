#pragma once

// Wrappers shared by the search tests: an oracle that watches every call and
// an inv runner that re-folds every success independently.

#include <atomic>
#include <map>
#include <mutex>

#include "inv/search.hpp"
#include "oracles.hpp"

namespace checked {

// Forwards to a folder and records every sequence it was asked to fold.
class RecordingOracle final : public inv::FoldOracle {
 public:
  explicit RecordingOracle(inv::FoldOptions options = {}) : inner_(std::move(options)) {}

  inv::FoldResult fold(const inv::RnaSequence& seq, int count) const override {
    ++calls_;
    {
      std::lock_guard<std::mutex> lock(mu_);
      seen_.push_back(seq);
    }
    return inner_.fold(seq, count);
  }
  const inv::ValidationPolicy& policy() const override { return inner_.policy(); }

  long calls() const { return calls_; }
  std::vector<inv::RnaSequence> seen() const {
    std::lock_guard<std::mutex> lock(mu_);
    return seen_;
  }
  void reset() {
    calls_ = 0;
    std::lock_guard<std::mutex> lock(mu_);
    seen_.clear();
  }

 private:
  inv::ExhaustiveFolder inner_;
  mutable std::atomic<long> calls_{0};
  mutable std::mutex mu_;
  mutable std::vector<inv::RnaSequence> seen_;
};

// Independent check of a claimed design: brute force for short sequences,
// the serial kernel of a fresh folder otherwise.
inline bool folds_into(const inv::RnaSequence& seq, const inv::Structure& target) {
  if (seq.size() <= 12) {
    static std::mutex mu;
    static std::map<int, std::vector<std::vector<inv::Arc>>> spaces;
    std::vector<std::vector<inv::Arc>> space;
    {
      std::lock_guard<std::mutex> lock(mu);
      auto it = spaces.find(seq.size());
      if (it == spaces.end()) it = spaces.emplace(seq.size(), oracle::valid_structures(seq.size())).first;
      space = it->second;
    }
    // Target must be the unique lowest (energy, arc list) entry.
    int best = 0;
    std::vector<inv::Arc> best_arcs;
    for (const auto& arcs : space) {
      bool ok = true;
      for (const auto& a : arcs) ok = ok && oracle::pairs(seq[a.i], seq[a.j]);
      if (!ok) continue;
      const int e = inv::energy_of(seq, inv::Structure(seq.size(), arcs));
      if (e < best || (e == best && arcs < best_arcs)) {
        best = e;
        best_arcs = arcs;
      }
    }
    return best_arcs == target.arcs();
  }
  inv::FoldOptions options;
  options.parallel = false;
  return inv::ExhaustiveFolder(options).fold_serial(seq, 1).mfe() == target;
}

struct Tally {
  long successes = 0;
  long violations = 0;
};

inline Tally& tally() {
  static Tally t;
  return t;
}

// inv plus an independent re-fold of every success, counted in tally().
inline inv::InvOutcome run(const std::string& target, const inv::FoldOracle& oracle,
                           const inv::SearchConfig& config) {
  inv::InvOutcome out = inv::inv(target, oracle, config);
  if (out.sequence) {
    ++tally().successes;
    if (!folds_into(*out.sequence, *out.target)) ++tally().violations;
  }
  return out;
}

}  // namespace checked
