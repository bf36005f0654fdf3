#include "inv/fold.hpp"

#include <algorithm>

#include <omp.h>

namespace inv {

namespace {

struct Scored {
  int energy;
  std::vector<Arc> arcs;

  friend bool operator<(const Scored& a, const Scored& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return a.arcs < b.arcs;
  }
};

// Keeps the `limit` smallest entries under Scored's order as a max-heap.
class TopN {
 public:
  explicit TopN(std::size_t limit) : limit_(limit) {}

  bool full() const { return heap_.size() >= limit_; }
  int worst_energy() const { return heap_.front().energy; }

  void offer(Scored item) {
    if (!full()) {
      heap_.push_back(std::move(item));
      std::push_heap(heap_.begin(), heap_.end());
    } else if (item < heap_.front()) {
      std::pop_heap(heap_.begin(), heap_.end());
      heap_.back() = std::move(item);
      std::push_heap(heap_.begin(), heap_.end());
    }
  }

  void merge(TopN&& other) {
    for (auto& item : other.heap_) offer(std::move(item));
  }

  FoldResult finish(int n) && {
    std::sort(heap_.begin(), heap_.end());
    FoldResult r;
    for (auto& item : heap_) {
      r.structures.emplace_back(n, std::move(item.arcs));
      r.energies.push_back(item.energy);
    }
    return r;
  }

 private:
  std::size_t limit_;
  std::vector<Scored> heap_;
};

class Scorer {
 public:
  Scorer(const RnaSequence& seq, const EnergyModel& model) : seq_(seq), model_(model) {}

  void operator()(const std::vector<Arc>& arcs, TopN& top) const {
    int pairs = 0;
    for (const Arc& a : arcs) pairs += model_.pair_score(seq_[a.i], seq_[a.j]);
    // Penalties are non-negative, so the pair sum bounds the energy from below.
    if (top.full() && pairs > top.worst_energy()) return;
    const int energy = pairs + loop_penalty_sum(Structure(seq_.size(), arcs), model_);
    top.offer({energy, arcs});
  }

 private:
  const RnaSequence& seq_;
  const EnergyModel& model_;
};

}  // namespace

ExhaustiveFolder::ExhaustiveFolder(FoldOptions options) : options_(std::move(options)) {
  options_.policy.check();
  options_.model.check();
}

void ExhaustiveFolder::check_request(const RnaSequence& seq, int count) const {
  if (count < 1) throw Error(ErrorKind::InvalidConfig, "fold needs a list size of at least 1");
  check_size_guard(seq.size(), options_.allow_large);
}

FoldResult ExhaustiveFolder::fold(const RnaSequence& seq, int count) const {
  return options_.parallel ? fold_parallel(seq, count) : fold_serial(seq, count);
}

FoldResult ExhaustiveFolder::fold_serial(const RnaSequence& seq, int count) const {
  check_request(seq, count);
  const StructureWalker walker(seq.size(), options_.policy,
                               [&seq](int i, int j) { return can_pair(seq[i], seq[j]); });
  const Scorer score(seq, options_.model);
  TopN top(static_cast<std::size_t>(count));
  walker.walk_all([&](const std::vector<Arc>& arcs) { score(arcs, top); });
  return std::move(top).finish(seq.size());
}

FoldResult ExhaustiveFolder::fold_parallel(const RnaSequence& seq, int count) const {
  check_request(seq, count);
  const StructureWalker walker(seq.size(), options_.policy,
                               [&seq](int i, int j) { return can_pair(seq[i], seq[j]); });
  const Scorer score(seq, options_.model);
  const auto seeds = walker.seeds();
  const auto limit = static_cast<std::size_t>(count);

  TopN top(limit);
  walker.visit_empty([&](const std::vector<Arc>& arcs) { score(arcs, top); });

  // Each seed's subtree is independent. The merged top list is the same for
  // any schedule because Scored is a strict total order on distinct structures.
#pragma omp parallel
  {
    TopN local(limit);
#pragma omp for schedule(dynamic, 1) nowait
    for (std::size_t t = 0; t < seeds.size(); ++t) {
      walker.walk(seeds[t], [&](const std::vector<Arc>& arcs) { score(arcs, local); });
    }
#pragma omp critical(inv_fold_merge)
    top.merge(std::move(local));
  }
  return std::move(top).finish(seq.size());
}

}  // namespace inv
