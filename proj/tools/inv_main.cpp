// Command-line front end: inverse folding runs and batch campaigns, plus
// fold, distance and decompose utilities.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "inv/campaign.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitInternal = 70;

// A value that names a readable file expands to its non-blank lines;
// anything else is taken literally.
std::vector<std::string> read_values(const std::string& arg) {
  std::ifstream in(arg);
  if (!in) return {arg};
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    out.push_back(line);
  }
  return out;
}

struct PolicyFlags {
  int sigma = 3;
  int k = 3;
  int min_arc_length = 4;
  std::string model_file;
  bool allow_large = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--sigma", sigma, "minimum stack size")->envname("INV_SIGMA");
    cmd->add_option("--k", k, "forbid k mutually crossing arcs")->envname("INV_K");
    cmd->add_option("--min-arc-length", min_arc_length, "minimum j - i of an arc")
        ->envname("INV_MIN_ARC_LENGTH");
    cmd->add_option("--model", model_file, "energy model file of key = value lines")
        ->envname("INV_MODEL");
    cmd->add_flag("--allow-large", allow_large, "fold sequences longer than the size guard");
  }

  inv::FoldOptions options() const {
    inv::FoldOptions o;
    o.policy = {k, sigma, min_arc_length};
    o.policy.check();
    if (!model_file.empty()) o.model = inv::EnergyModel::from_file(model_file);
    o.allow_large = allow_large;
    return o;
  }
};

int cmd_inverse(const std::string& target_arg, int trials, std::uint64_t seed, int N, int jobs,
                const std::string& format_name, const std::string& trace_file,
                const PolicyFlags& flags) {
  inv::CampaignOptions options;
  options.targets = read_values(target_arg);
  options.trials = trials;
  options.seed = seed;
  options.search.N = N;
  options.jobs = jobs;
  const auto format = inv::parse_format(format_name);
  const inv::ExhaustiveFolder oracle(flags.options());

  bool invalid = false;
  for (const std::string& t : options.targets) {
    std::vector<inv::Violation> violations;
    std::string reason;
    try {
      violations = inv::validate_target(inv::parse_structure(t), oracle.policy());
    } catch (const inv::Error& e) {
      reason = e.what();
    }
    if (violations.empty() && reason.empty()) {
      inv::check_size_guard(static_cast<int>(t.size()), flags.allow_large);
      continue;
    }
    invalid = true;
    std::cout << "incorrect structure: " << t << '\n';
    if (!reason.empty()) std::cout << "  " << reason << '\n';
    for (const auto& v : violations) std::cout << "  " << v.message << '\n';
  }
  if (invalid || options.targets.empty()) return kExitInput;

  const auto results = inv::run_campaign(options, oracle);
  inv::write_results(std::cout, format, options, results);
  if (!trace_file.empty()) {
    std::ofstream trace(trace_file);
    if (!trace) throw inv::Error(inv::ErrorKind::InvalidConfig, "cannot write " + trace_file);
    inv::write_traces(trace, results);
  }

  bool all_ok = true;
  for (const auto& r : results) {
    if (r.outcome.sequence && !r.reverified) {
      std::cerr << "internal error: output for trial " << r.trial
                << " does not fold into the target\n";
      return kExitInternal;
    }
    all_ok = all_ok && r.outcome.status == inv::InvOutcome::Status::Success;
  }
  return all_ok ? kExitOk : kExitFailed;
}

int cmd_fold(const std::string& seq_arg, int count, const PolicyFlags& flags) {
  inv::FoldOptions options = flags.options();
  const inv::ExhaustiveFolder oracle(options);
  for (const std::string& text : read_values(seq_arg)) {
    const auto result = oracle.fold(inv::RnaSequence::parse(text), count);
    for (std::size_t h = 0; h < result.size(); ++h) {
      std::cout << inv::serialize_structure(result.structures[h]) << '\t' << result.energies[h]
                << '\n';
    }
  }
  return kExitOk;
}

int cmd_distance(const std::string& a, const std::string& b) {
  std::cout << inv::structure_distance(inv::parse_structure(a), inv::parse_structure(b)) << '\n';
  return kExitOk;
}

std::string show(const inv::Interval& iv) {
  return "[" + std::to_string(iv.l) + "," + std::to_string(iv.r) + "]";
}

int cmd_decompose(const std::string& text) {
  const inv::Structure s = inv::parse_structure(text);
  const inv::IntervalPlan plan = inv::build_intervals(s);
  for (std::size_t w = 0; w < plan.loops.size(); ++w) {
    std::cout << "loop" << w + 1 << '\t' << inv::to_string(plan.loops[w].loop.kind) << '\t'
              << show(plan.a[w]) << '\t' << show(plan.b[w]) << '\n';
  }
  for (std::size_t w = 0; w < plan.intervals.size(); ++w) {
    std::cout << "I" << w + 1 << '=' << show(plan.intervals[w]) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inverse folding of 3-noncrossing RNA structures"};
  app.require_subcommand(1);

  PolicyFlags inverse_flags;
  std::string target;
  int trials = 1;
  std::uint64_t seed = 1;
  int N = 50;
  int jobs = 1;
  std::string format = "text";
  std::string trace_file;
  auto* inverse = app.add_subcommand("inverse", "design sequences folding into a target");
  inverse->add_option("--target", target, "bracket string, or a file with one per line")
      ->required()
      ->envname("INV_TARGET");
  inverse->add_option("--trials", trials, "independent runs per target")
      ->check(CLI::PositiveNumber)
      ->envname("INV_TRIALS");
  inverse->add_option("--seed", seed, "trial r uses seed + r")->envname("INV_SEED");
  inverse->add_option("--N", N, "suboptimal structures per fold")
      ->check(CLI::PositiveNumber)
      ->envname("INV_N");
  inverse->add_option("--jobs", jobs, "trials run in parallel")
      ->check(CLI::PositiveNumber)
      ->envname("INV_JOBS");
  inverse->add_option("--format", format, "text, jsonl or tsv")
      ->check(CLI::IsMember({"text", "jsonl", "tsv"}))
      ->envname("INV_FORMAT");
  inverse->add_option("--trace", trace_file, "write search traces as JSON lines");
  inverse_flags.attach(inverse);

  PolicyFlags fold_flags;
  std::string sequence;
  int count = 1;
  auto* fold = app.add_subcommand("fold", "list the lowest-energy structures of a sequence");
  fold->add_option("sequence", sequence, "ACGU string, or a file with one per line")->required();
  fold->add_option("--N", count, "number of structures")->check(CLI::PositiveNumber);
  fold_flags.attach(fold);

  std::string first;
  std::string second;
  auto* distance = app.add_subcommand("distance", "count positions whose partners differ");
  distance->add_option("a", first)->required();
  distance->add_option("b", second)->required();

  std::string diagram;
  auto* decompose = app.add_subcommand("decompose", "print the loops and the interval plan");
  decompose->add_option("structure", diagram)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*inverse) {
      return cmd_inverse(target, trials, seed, N, jobs, format, trace_file, inverse_flags);
    }
    if (*fold) return cmd_fold(sequence, count, fold_flags);
    if (*distance) return cmd_distance(first, second);
    if (*decompose) return cmd_decompose(diagram);
  } catch (const inv::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInput;
}
