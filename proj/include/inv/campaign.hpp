#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "inv/search.hpp"

namespace inv {

struct CampaignOptions {
  std::vector<std::string> targets;
  int trials = 1;
  std::uint64_t seed = 1;  // trial r of every target uses seed + r
  SearchConfig search;
  int jobs = 1;
};

struct TrialResult {
  int target_index = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  InvOutcome outcome;
  double seconds = 0.0;
  bool reverified = false;  // an extra fold of the output matched the target
};

/// Per-target batch summary in the style of a timing table.
struct RunReport {
  std::string target;
  int length = 0;
  int trials = 0;
  int successes = 0;
  double total_seconds = 0.0;
  double mean_seconds = 0.0;
  double median_seconds = 0.0;
  double p90_seconds = 0.0;
  std::vector<std::uint64_t> seeds;
};

/// Runs every (target, trial) pair, `jobs` at a time. Results come back in
/// (target, trial) order whatever the schedule. Each success is folded once
/// more by the caller's oracle and flagged in `reverified`.
std::vector<TrialResult> run_campaign(const CampaignOptions& options, const FoldOracle& oracle);

std::vector<RunReport> summarize(const CampaignOptions& options,
                                 const std::vector<TrialResult>& results);

enum class OutputFormat { Text, Jsonl, Tsv };

OutputFormat parse_format(const std::string& name);  // throws InvalidConfig

/// Writes trial lines and, for batches, the summary. The jsonl form carries no
/// timings so that it is reproducible byte for byte.
void write_results(std::ostream& os, OutputFormat format, const CampaignOptions& options,
                   const std::vector<TrialResult>& results);

/// Trace lines of every trial, tagged with target and trial numbers.
void write_traces(std::ostream& os, const std::vector<TrialResult>& results);

}  // namespace inv
