#include "inv/search.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace inv {

void SearchConfig::check() const {
  if (N < 1 || adjust_rounds < 0 || distance_slack < 1 || mutation_retries < 1 ||
      uphill_margin < 1 || phase_cap_factor < 1) {
    throw Error(ErrorKind::InvalidConfig, "search counts must be positive");
  }
  if (!(uphill_probability >= 0.0 && uphill_probability <= 1.0)) {
    throw Error(ErrorKind::InvalidConfig, "uphill probability must lie in [0, 1]");
  }
}

int SearchConfig::rounds_for(int n) const {
  if (adjust_rounds > 0) return adjust_rounds;
  return std::max(1, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n)) / 2.0)));
}

std::string SearchTrace::to_jsonl() const {
  std::string out;
  for (const TraceRecord& r : records) {
    nlohmann::ordered_json j;
    j["phase"] = r.phase == TraceRecord::Phase::Adjust ? "adjust" : "local";
    j["index"] = r.index;
    if (r.phase == TraceRecord::Phase::Local) j["interval"] = {r.interval.l, r.interval.r};
    j["distance"] = r.distance;
    j["d_min"] = r.d_min;
    j["mutations"] = r.mutations;
    j["competitors"] = r.competitors;
    j["uphill"] = r.uphill;
    j["fallback"] = r.fallback;
    j["oracle_calls"] = r.oracle_calls;
    out += j.dump();
    out += '\n';
  }
  return out;
}

void OracleBudget::charge() {
  if (used_ >= limit_) throw std::logic_error("oracle budget exceeded");
  ++used_;
}

int partner(const Structure& s, int w) { return s.partner(w); }

std::vector<ArcSet> perturb_arc(const Structure& s, const Arc& a) {
  if (!s.contains(a)) {
    throw Error(ErrorKind::ArcNotInStructure,
                "arc (" + std::to_string(a.i) + "," + std::to_string(a.j) + ") not in structure",
                a.i);
  }
  ArcSet rest;
  for (const Arc& b : s.arcs()) {
    if (b != a) rest.push_back(b);
  }
  std::vector<ArcSet> out;
  for (int dl = -1; dl <= 1; ++dl) {
    for (int dr = -1; dr <= 1; ++dr) {
      const Arc moved{a.i + dl, a.j + dr};
      if (moved.i < 1 || moved.j > s.size() || moved.i >= moved.j) continue;
      ArcSet set = rest;
      set.insert(std::upper_bound(set.begin(), set.end(), moved), moved);
      out.push_back(std::move(set));
    }
  }
  out.push_back(std::move(rest));
  return out;
}

bool is_consistent(const ArcSet& arcs, int n) {
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  for (const Arc& a : arcs) {
    if (a.i < 1 || a.j > n || a.i >= a.j || used[a.i] || used[a.j]) return false;
    used[a.i] = used[a.j] = 1;
  }
  return true;
}

std::vector<Structure> build_competitors(const RnaSequence& lambda, const FoldResult& folded,
                                         const Structure& target) {
  const int n = lambda.size();
  std::set<ArcSet> kept;
  for (const Structure& c : folded.structures) {
    for (const Arc& a : c.arcs()) {
      for (ArcSet& set : perturb_arc(c, a)) {
        if (set == target.arcs() || !is_consistent(set, n)) continue;
        const bool compatible = std::all_of(set.begin(), set.end(), [&](const Arc& b) {
          return can_pair(lambda[b.i], lambda[b.j]);
        });
        if (compatible) kept.insert(std::move(set));
      }
    }
  }
  std::vector<Structure> out;
  out.reserve(kept.size());
  for (const ArcSet& set : kept) out.emplace_back(n, set);
  return out;
}

namespace {

template <typename T>
const T& pick(const std::vector<T>& options, Rng& rng) {
  return options[uniform_index(rng, options.size())];
}

// Positions where some competitor's partner differs from the target's.
std::vector<char> disagreements(const Structure& target, const std::vector<Structure>& competitors) {
  std::vector<char> flagged(static_cast<std::size_t>(target.size()) + 1, 0);
  const auto& pt = target.partners();
  for (const Structure& c : competitors) {
    const auto& pc = c.partners();
    for (int w = 1; w <= target.size(); ++w) {
      if (pc[w] != pt[w]) flagged[w] = 1;
    }
  }
  return flagged;
}

}  // namespace

MutationResult mutate_against_competitors(const RnaSequence& lambda, const Structure& target,
                                          const std::vector<Structure>& competitors, Rng& rng) {
  MutationResult result{lambda, 0, false};
  if (competitors.empty()) return result;
  const auto flagged = disagreements(target, competitors);

  // Bases at the competitor partners of w, excluding `except`, read from the
  // sequence before mutation.
  const auto blocked_by = [&](int w, int except) {
    std::vector<Base> partners;
    for (const Structure& c : competitors) {
      const int q = c.partners()[w];
      if (q != 0 && q != except) partners.push_back(lambda[q]);
    }
    return partners;
  };
  const auto breaks_all = [](Base b, const std::vector<Base>& partners) {
    return std::none_of(partners.begin(), partners.end(), [&](Base q) { return can_pair(b, q); });
  };

  RnaSequence& out = result.sequence;
  for (int w = 1; w <= target.size(); ++w) {
    const int v = target.partner(w);
    if (v == 0) {
      if (!flagged[w]) continue;
      const auto partners = blocked_by(w, 0);
      std::vector<Base> allowed;
      std::vector<Base> any;
      for (Base b : kBases) {
        if (b == lambda[w]) continue;
        any.push_back(b);
        if (breaks_all(b, partners)) allowed.push_back(b);
      }
      if (allowed.empty()) {
        result.fallback = true;
        out[w] = pick(any, rng);
      } else {
        out[w] = pick(allowed, rng);
      }
      ++result.mutated;
    } else if (v > w) {
      if (!flagged[w] && !flagged[v]) continue;
      const auto at_w = blocked_by(w, v);
      const auto at_v = blocked_by(v, w);
      std::vector<std::pair<Base, Base>> both;
      std::vector<std::pair<Base, Base>> w_only;
      std::vector<std::pair<Base, Base>> any;
      for (const auto& pr : kPairs) {
        if (pr.first == lambda[w] && pr.second == lambda[v]) continue;
        any.push_back(pr);
        if (!breaks_all(pr.first, at_w)) continue;
        w_only.push_back(pr);
        if (breaks_all(pr.second, at_v)) both.push_back(pr);
      }
      const std::vector<std::pair<Base, Base>>* pool = &both;
      if (pool->empty()) {
        result.fallback = true;
        pool = w_only.empty() ? &any : &w_only;
      }
      const auto& [x, y] = pick(*pool, rng);
      out[w] = x;
      out[v] = y;
      ++result.mutated;
    }
  }
  return result;
}

AdjustResult adjust_seq(const RnaSequence& start, const Structure& target,
                        const FoldOracle& oracle, const SearchConfig& config, Rng& rng,
                        SearchTrace& trace, OracleBudget& budget) {
  const int rounds = config.rounds_for(target.size());
  const auto fold_distance = [&](const RnaSequence& s, int count, FoldResult* keep) {
    budget.charge();
    FoldResult f = oracle.fold(s, count);
    const int d = structure_distance(f.mfe(), target);
    if (keep) *keep = std::move(f);
    return d;
  };

  RnaSequence lambda = start;
  AdjustResult best{start, target.size() + 1};
  for (int round = 1; round <= rounds; ++round) {
    TraceRecord rec;
    rec.phase = TraceRecord::Phase::Adjust;
    rec.index = round;
    const long calls_before = budget.used();

    FoldResult folded;
    const int d = fold_distance(lambda, config.N, &folded);
    if (d < best.distance) best = {lambda, d};
    rec.distance = d;
    rec.d_min = best.distance;
    if (d == 0) {
      rec.oracle_calls = static_cast<int>(budget.used() - calls_before);
      trace.records.push_back(rec);
      return best;
    }

    const auto competitors = build_competitors(lambda, folded, target);
    rec.competitors = static_cast<int>(competitors.size());

    // Retry the mutation until a candidate lands within the slack, keeping
    // the closest one otherwise.
    std::optional<RnaSequence> chosen;
    int chosen_d = 0;
    for (int attempt = 0; attempt < config.mutation_retries; ++attempt) {
      MutationResult m = mutate_against_competitors(lambda, target, competitors, rng);
      rec.fallback = rec.fallback || m.fallback;
      rec.mutations += m.mutated;
      const int dm = fold_distance(m.sequence, 1, nullptr);
      const int d_min_before = best.distance;
      if (dm < best.distance) best = {m.sequence, dm};
      if (!chosen || dm < chosen_d) {
        chosen = m.sequence;
        chosen_d = dm;
      }
      if (dm == 0) break;
      if (dm <= d_min_before + config.distance_slack) {
        chosen = std::move(m.sequence);
        chosen_d = dm;
        break;
      }
    }
    lambda = std::move(*chosen);
    rec.uphill = chosen_d > best.distance;
    rec.d_min = best.distance;
    rec.oracle_calls = static_cast<int>(budget.used() - calls_before);
    trace.records.push_back(rec);
    if (chosen_d == 0) return best;
  }
  return best;
}

namespace {

// A mutation site: an unpaired position, a target pair inside the interval,
// or a paired position whose partner lies outside it (then only bases
// pairing with the fixed partner are allowed).
struct Site {
  int w = 0;
  int v = 0;  // target partner or 0
};

std::optional<RnaSequence> mutate_site(const RnaSequence& seq, const Site& site,
                                       const Interval& range, Rng& rng) {
  RnaSequence out = seq;
  if (site.v == 0) {
    std::vector<Base> options;
    for (Base b : kBases) {
      if (b != seq[site.w]) options.push_back(b);
    }
    out[site.w] = pick(options, rng);
  } else if (range.contains(site.v)) {
    std::vector<std::pair<Base, Base>> options;
    for (const auto& pr : kPairs) {
      if (pr.first != seq[site.w] || pr.second != seq[site.v]) options.push_back(pr);
    }
    const auto& [x, y] = pick(options, rng);
    out[site.w] = x;
    out[site.v] = y;
  } else {
    std::vector<Base> options;
    for (Base b : kBases) {
      if (b != seq[site.w] && can_pair(b, seq[site.v])) options.push_back(b);
    }
    if (options.empty()) return std::nullopt;
    out[site.w] = pick(options, rng);
  }
  return out;
}

struct LocalFold {
  int distance;
  int energy;
  Structure mfe;
};

}  // namespace

RnaSequence local_search(const RnaSequence& seq, const Structure& target,
                         const IntervalPlan& plan, const FoldOracle& oracle,
                         const SearchConfig& config, Rng& rng, SearchTrace& trace,
                         OracleBudget& budget) {
  const long cap = static_cast<long>(config.phase_cap_factor) * target.size();
  std::bernoulli_distribution uphill(config.uphill_probability);
  RnaSequence current = seq;

  for (std::size_t idx = 0; idx < plan.intervals.size(); ++idx) {
    const Interval range = plan.intervals[idx];
    const Structure local_target = target.restricted_to(range);
    long calls = 0;
    const auto evaluate = [&](const RnaSequence& s) {
      budget.charge();
      ++calls;
      FoldResult f = oracle.fold(s.slice(range), 1);
      return LocalFold{structure_distance(f.mfe(), local_target), f.energies.front(),
                       std::move(f.structures.front())};
    };

    TraceRecord rec;
    rec.phase = TraceRecord::Phase::Local;
    rec.index = static_cast<int>(idx) + 1;
    rec.interval = range;

    LocalFold now = evaluate(current);
    RnaSequence best = current;
    int d_min = now.distance;

    while (d_min > 0 && calls < cap) {
      // Sites: differing positions and their neighbours, inside the interval.
      std::set<int> positions;
      const auto& pf = now.mfe.partners();
      const auto& pt = local_target.partners();
      for (int x = 1; x <= range.size(); ++x) {
        if (pf[x] == pt[x]) continue;
        for (int y = std::max(1, x - 1); y <= std::min(range.size(), x + 1); ++y) {
          positions.insert(y + range.l - 1);
        }
      }
      std::set<std::pair<int, int>> unique_sites;
      for (int w : positions) {
        const int v = target.partner(w);
        if (v != 0 && range.contains(v)) unique_sites.insert({std::min(w, v), std::max(w, v)});
        else unique_sites.insert({w, v});
      }
      std::vector<Site> sites;
      for (const auto& [w, v] : unique_sites) sites.push_back({w, v});
      std::shuffle(sites.begin(), sites.end(), rng);

      bool moved = false;
      const long calls_at_pass = calls;
      std::vector<std::pair<RnaSequence, LocalFold>> ties;
      for (const Site& site : sites) {
        if (calls >= cap) break;
        auto candidate = mutate_site(current, site, range, rng);
        if (!candidate) continue;
        ++rec.mutations;
        LocalFold f = evaluate(*candidate);
        if (f.distance < d_min) {
          d_min = f.distance;
          best = *candidate;
          current = std::move(*candidate);
          now = std::move(f);
          moved = true;
          break;
        }
        if (f.distance == d_min) {
          ties.emplace_back(std::move(*candidate), std::move(f));
        } else if (f.distance < d_min + config.uphill_margin && uphill(rng)) {
          current = std::move(*candidate);
          now = std::move(f);
          rec.uphill = true;
          moved = true;
          break;
        }
      }
      if (!moved && !ties.empty()) {
        auto lowest = std::min_element(ties.begin(), ties.end(), [](const auto& a, const auto& b) {
          return a.second.energy < b.second.energy;
        });
        current = std::move(lowest->first);
        now = std::move(lowest->second);
      }
      if (calls == calls_at_pass) break;  // no site admits a mutation
    }

    if (now.distance > d_min) current = best;
    rec.distance = std::min(now.distance, d_min);
    rec.d_min = d_min;
    rec.oracle_calls = static_cast<int>(calls);
    trace.records.push_back(rec);
  }
  return current;
}

long search_budget(const Structure& target, const IntervalPlan& plan,
                   const SearchConfig& config) {
  const long adjust =
      static_cast<long>(config.rounds_for(target.size())) * (1 + config.mutation_retries);
  const long local = static_cast<long>(plan.intervals.size()) * config.phase_cap_factor *
                     target.size();
  return adjust + local + 1;
}

const char* to_string(InvOutcome::Status status) {
  switch (status) {
    case InvOutcome::Status::Success: return "success";
    case InvOutcome::Status::InvalidTarget: return "invalid_target";
    case InvOutcome::Status::SearchFailed: return "search_failed";
  }
  return "unknown";
}

InvOutcome inv(const std::string& target_text, const FoldOracle& oracle,
               const SearchConfig& config) {
  config.check();
  InvOutcome out;
  Structure target;
  try {
    target = parse_structure(target_text);
  } catch (const Error& e) {
    out.status = InvOutcome::Status::InvalidTarget;
    out.message = std::string("incorrect structure: ") + e.what();
    return out;
  }
  out.violations = validate_target(target, oracle.policy());
  if (!out.violations.empty()) {
    out.status = InvOutcome::Status::InvalidTarget;
    out.message = "incorrect structure";
    return out;
  }
  out.target = target;

  IntervalPlan plan;
  if (crossing_number(target) <= 2) {
    plan = build_intervals(target);
  } else {
    plan.intervals = {{1, target.size()}};  // loop decomposition needs 3-noncrossing
  }
  out.budget = search_budget(target, plan, config);
  OracleBudget budget(out.budget);
  Rng rng(config.rng_seed);

  const RnaSequence start = make_start(target, rng);
  AdjustResult adjusted = adjust_seq(start, target, oracle, config, rng, out.trace, budget);
  RnaSequence seq = adjusted.sequence;
  if (adjusted.distance != 0) {
    seq = local_search(seq, target, plan, oracle, config, rng, out.trace, budget);
  }

  budget.charge();
  const FoldResult check = oracle.fold(seq, 1);
  out.best = seq;
  out.distance = structure_distance(check.mfe(), target);
  out.oracle_calls = budget.used();
  if (check.mfe() == target) {
    out.status = InvOutcome::Status::Success;
    out.sequence = seq;
  } else {
    out.status = InvOutcome::Status::SearchFailed;
    out.message = "Failed!";
  }
  return out;
}

}  // namespace inv
