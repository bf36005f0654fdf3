#include "inv/campaign.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace inv {

namespace {

TrialResult run_trial(const CampaignOptions& options, const FoldOracle& oracle, int target_index,
                      int trial) {
  TrialResult r;
  r.target_index = target_index;
  r.trial = trial;
  r.seed = options.seed + static_cast<std::uint64_t>(trial);
  SearchConfig config = options.search;
  config.rng_seed = r.seed;
  const auto t0 = std::chrono::steady_clock::now();
  r.outcome = inv(options.targets[static_cast<std::size_t>(target_index)], oracle, config);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.outcome.sequence) {
    r.reverified = oracle.fold(*r.outcome.sequence, 1).mfe() == *r.outcome.target;
  }
  return r;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto idx = static_cast<std::size_t>(q * static_cast<double>(values.size() - 1) + 0.5);
  return values[std::min(idx, values.size() - 1)];
}

std::string fixed(double x, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

std::string percent(int successes, int trials) {
  return trials == 0 ? "0%" : fixed(100.0 * successes / trials, 1) + "%";
}

}  // namespace

std::vector<TrialResult> run_campaign(const CampaignOptions& options, const FoldOracle& oracle) {
  options.search.check();
  if (options.trials < 1 || options.jobs < 1) {
    throw Error(ErrorKind::InvalidConfig, "trials and jobs must be positive");
  }
  const int per_target = options.trials;
  const int total = static_cast<int>(options.targets.size()) * per_target;
  std::vector<TrialResult> results(static_cast<std::size_t>(total));
  if (options.jobs == 1) {
    for (int t = 0; t < total; ++t) results[t] = run_trial(options, oracle, t / per_target, t % per_target);
    return results;
  }
#pragma omp parallel for num_threads(options.jobs) schedule(dynamic, 1)
  for (int t = 0; t < total; ++t) {
    results[t] = run_trial(options, oracle, t / per_target, t % per_target);
  }
  return results;
}

std::vector<RunReport> summarize(const CampaignOptions& options,
                                 const std::vector<TrialResult>& results) {
  std::vector<RunReport> reports(options.targets.size());
  std::vector<std::vector<double>> times(options.targets.size());
  for (std::size_t t = 0; t < options.targets.size(); ++t) {
    reports[t].target = options.targets[t];
    reports[t].length = static_cast<int>(options.targets[t].size());
  }
  for (const TrialResult& r : results) {
    RunReport& rep = reports[static_cast<std::size_t>(r.target_index)];
    ++rep.trials;
    rep.successes += r.outcome.status == InvOutcome::Status::Success && r.reverified;
    rep.total_seconds += r.seconds;
    rep.seeds.push_back(r.seed);
    times[static_cast<std::size_t>(r.target_index)].push_back(r.seconds);
  }
  for (std::size_t t = 0; t < reports.size(); ++t) {
    RunReport& rep = reports[t];
    if (rep.trials > 0) rep.mean_seconds = rep.total_seconds / rep.trials;
    rep.median_seconds = quantile(times[t], 0.5);
    rep.p90_seconds = quantile(times[t], 0.9);
  }
  return reports;
}

OutputFormat parse_format(const std::string& name) {
  if (name == "text") return OutputFormat::Text;
  if (name == "jsonl") return OutputFormat::Jsonl;
  if (name == "tsv") return OutputFormat::Tsv;
  throw Error(ErrorKind::InvalidConfig, "unknown output format '" + name + "'");
}

void write_results(std::ostream& os, OutputFormat format, const CampaignOptions& options,
                   const std::vector<TrialResult>& results) {
  const bool batch = options.trials > 1 || options.targets.size() > 1;
  const auto reports = summarize(options, results);

  switch (format) {
    case OutputFormat::Jsonl: {
      for (const TrialResult& r : results) {
        nlohmann::ordered_json j;
        j["target"] = options.targets[static_cast<std::size_t>(r.target_index)];
        j["length"] = options.targets[static_cast<std::size_t>(r.target_index)].size();
        j["trial"] = r.trial;
        j["seed"] = r.seed;
        j["status"] = to_string(r.outcome.status);
        j["sequence"] = r.outcome.sequence ? nlohmann::ordered_json(r.outcome.sequence->str())
                                           : nlohmann::ordered_json(nullptr);
        j["distance"] = r.outcome.distance;
        j["oracle_calls"] = r.outcome.oracle_calls;
        os << j.dump() << '\n';
      }
      if (batch) {
        for (const RunReport& rep : reports) {
          nlohmann::ordered_json j;
          j["summary"] = rep.target;
          j["length"] = rep.length;
          j["trials"] = rep.trials;
          j["successes"] = rep.successes;
          os << j.dump() << '\n';
        }
      }
      break;
    }
    case OutputFormat::Tsv: {
      os << "target\tlength\ttrial\tseed\tstatus\tsequence\tdistance\toracle_calls\tseconds\n";
      for (const TrialResult& r : results) {
        const std::string& target = options.targets[static_cast<std::size_t>(r.target_index)];
        os << target << '\t' << target.size() << '\t' << r.trial << '\t' << r.seed << '\t'
           << to_string(r.outcome.status) << '\t'
           << (r.outcome.sequence ? r.outcome.sequence->str() : "-") << '\t'
           << r.outcome.distance << '\t' << r.outcome.oracle_calls << '\t'
           << fixed(r.seconds, 4) << '\n';
      }
      break;
    }
    case OutputFormat::Text: {
      for (const TrialResult& r : results) {
        const std::string& target = options.targets[static_cast<std::size_t>(r.target_index)];
        if (r.outcome.status == InvOutcome::Status::InvalidTarget) {
          os << r.outcome.message << ": " << target << '\n';
          for (const Violation& v : r.outcome.violations) os << "  " << v.message << '\n';
        } else if (r.outcome.sequence) {
          os << target << '\n' << r.outcome.sequence->str() << '\n';
        } else {
          os << "Failed! seed " << r.seed << " reached distance " << r.outcome.distance << '\n';
        }
      }
      if (batch) {
        os << "structure\tlength\ttrials\ttotal_time_s\tsuccess_rate\n";
        for (const RunReport& rep : reports) {
          os << rep.target << '\t' << rep.length << '\t' << rep.trials << '\t'
             << fixed(rep.total_seconds, 3) << '\t' << percent(rep.successes, rep.trials) << '\n';
        }
      }
      break;
    }
  }
}

void write_traces(std::ostream& os, const std::vector<TrialResult>& results) {
  for (const TrialResult& r : results) {
    std::istringstream lines(r.outcome.trace.to_jsonl());
    std::string line;
    while (std::getline(lines, line)) {
      auto j = nlohmann::ordered_json::parse(line);
      nlohmann::ordered_json tagged;
      tagged["target_index"] = r.target_index;
      tagged["trial"] = r.trial;
      for (auto& [key, value] : j.items()) tagged[key] = value;
      os << tagged.dump() << '\n';
    }
  }
}

}  // namespace inv
