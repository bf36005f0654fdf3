#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "inv/fold.hpp"
#include "inv/loops.hpp"
#include "inv/sequence.hpp"

namespace inv {

struct SearchConfig {
  int N = 50;                 // suboptimal list size for competitor generation
  int adjust_rounds = 0;      // 0 means ceil(sqrt(n) / 2)
  int distance_slack = 5;
  int mutation_retries = 5;
  double uphill_probability = 0.1;
  int uphill_margin = 5;
  int phase_cap_factor = 10;  // oracle calls per interval <= factor * n
  std::uint64_t rng_seed = 0;

  /// Throws InvalidConfig unless every count is positive and the
  /// probability lies in [0, 1].
  void check() const;
  int rounds_for(int n) const;
};

/// One record per Adjust-Seq round or per Local-Search interval.
struct TraceRecord {
  enum class Phase { Adjust, Local };
  Phase phase = Phase::Adjust;
  int index = 0;            // round number or interval number, from 1
  int distance = 0;         // distance of the sequence carried forward
  int d_min = 0;
  int mutations = 0;        // positions re-drawn (adjust) or candidates tried (local)
  int competitors = 0;
  bool uphill = false;      // a worse sequence was accepted
  bool fallback = false;    // some mutation dropped its constraints
  int oracle_calls = 0;
  Interval interval;        // local phase only
};

struct SearchTrace {
  std::vector<TraceRecord> records;

  /// One JSON object per line.
  std::string to_jsonl() const;
};

/// Counts oracle calls against a fixed ceiling.
class OracleBudget {
 public:
  explicit OracleBudget(long limit) : limit_(limit) {}
  bool exhausted() const noexcept { return used_ >= limit_; }
  long used() const noexcept { return used_; }
  long limit() const noexcept { return limit_; }
  /// Throws std::logic_error when the ceiling would be exceeded.
  void charge();

 private:
  long limit_;
  long used_ = 0;
};

/// Position paired with w in S, or 0. Throws OutOfRange.
int partner(const Structure& s, int w);

using ArcSet = std::vector<Arc>;  // sorted; may share endpoints

/// The perturbations of arc a in S: S itself, the eight shifts of a by at
/// most one at either end (those leaving [1, n] or with l >= r dropped) and
/// S without a. Results are raw arc sets and need not be consistent.
/// Throws ArcNotInStructure.
std::vector<ArcSet> perturb_arc(const Structure& s, const Arc& a);

/// True when no position is used by two arcs.
bool is_consistent(const ArcSet& arcs, int n);

/// Perturbations of every arc of every folded structure, keeping only
/// consistent, lambda-compatible structures different from the target.
/// Sorted and free of duplicates.
std::vector<Structure> build_competitors(const RnaSequence& lambda, const FoldResult& folded,
                                         const Structure& target);

struct MutationResult {
  RnaSequence sequence;
  int mutated = 0;        // positions or pairs re-drawn
  bool fallback = false;  // at least one re-draw ignored competitor constraints
};

/// Re-draws each position where a competitor disagrees with the target so as
/// to break the competitor's pairs there. Partners are read from the
/// sequence before mutation. The result stays compatible with the target.
MutationResult mutate_against_competitors(const RnaSequence& lambda, const Structure& target,
                                          const std::vector<Structure>& competitors, Rng& rng);

struct AdjustResult {
  RnaSequence sequence;  // best sequence seen
  int distance = 0;      // its mfe distance to the target
};

AdjustResult adjust_seq(const RnaSequence& start, const Structure& target,
                        const FoldOracle& oracle, const SearchConfig& config, Rng& rng,
                        SearchTrace& trace, OracleBudget& budget);

/// Interval-wise local search over plan.intervals. Returns the best sequence
/// seen on the last interval, which is always [1, n].
RnaSequence local_search(const RnaSequence& seq, const Structure& target,
                         const IntervalPlan& plan, const FoldOracle& oracle,
                         const SearchConfig& config, Rng& rng, SearchTrace& trace,
                         OracleBudget& budget);

/// Budget for one full search: adjust rounds times (1 + retries) plus the
/// per-interval caps plus the final verification fold.
long search_budget(const Structure& target, const IntervalPlan& plan,
                   const SearchConfig& config);

struct InvOutcome {
  enum class Status { Success, InvalidTarget, SearchFailed };
  Status status = Status::SearchFailed;
  std::optional<Structure> target;
  std::optional<RnaSequence> sequence;  // set only on success
  RnaSequence best;                     // best sequence reached, success or not
  int distance = -1;                    // mfe distance of `best`
  std::vector<Violation> violations;
  std::string message;
  SearchTrace trace;
  long oracle_calls = 0;
  long budget = 0;
};

const char* to_string(InvOutcome::Status status);

/// Validates the target, then runs make_start, Adjust-Seq and Local-Search and
/// re-folds the result. Success is reported only when the mfe equals the
/// target arc for arc.
InvOutcome inv(const std::string& target_text, const FoldOracle& oracle,
               const SearchConfig& config);

}  // namespace inv
