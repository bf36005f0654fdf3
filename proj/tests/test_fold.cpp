#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "generators.hpp"
#include "inv/fold.hpp"
#include "oracles.hpp"

using inv::Arc;
using inv::RnaSequence;
using inv::Structure;

namespace {
const char* kKnot = "(((..[[[..)))..]]]";
}

TEST_CASE("energy of simple structures") {
  const inv::EnergyModel model;
  CHECK(inv::energy_of(RnaSequence::parse("ACGUACGU"), Structure(8), model) == 0);
  CHECK(inv::energy_of(RnaSequence::parse("GGGAAAACCC"), inv::parse_structure("(((....)))"),
                       model) == -6);
  // All GC and AU pairs on the knot: pair scores plus one pseudoknot penalty.
  const RnaSequence knot_seq = RnaSequence::parse("GGAAACCUAAUCCAAAGG");
  const Structure knot = inv::parse_structure(kKnot);
  REQUIRE(inv::is_compatible(knot_seq, knot));
  int pairs = 0;
  for (const Arc& a : knot.arcs()) pairs += model.pair_score(knot_seq[a.i], knot_seq[a.j]);
  CHECK(pairs == -16);
  CHECK(inv::energy_of(knot_seq, knot, model) == pairs + 9);
  CHECK_THROWS_AS(inv::energy_of(RnaSequence::parse("GGGAAAAGGG"), inv::parse_structure("(((....)))")),
                  inv::Error);
}

TEST_CASE("a longer stack never costs energy") {
  const inv::EnergyModel model;
  const RnaSequence s = RnaSequence::parse("GGGGAAAACCCC");
  const int three = inv::energy_of(s, Structure(12, {{2, 11}, {3, 10}, {4, 9}}), model);
  const int four = inv::energy_of(s, Structure(12, {{1, 12}, {2, 11}, {3, 10}, {4, 9}}), model);
  CHECK(four <= three);
}

TEST_CASE("energy model files") {
  const auto m = inv::EnergyModel::from_text("# custom\npseudoknot = 12\nhairpin=4 # hp\n\n");
  CHECK(m.pseudoknot == 12);
  CHECK(m.hairpin == 4);
  CHECK(m.pair_gc == -3);
  CHECK_THROWS_AS(inv::EnergyModel::from_text("bogus = 1"), inv::Error);
  CHECK_THROWS_AS(inv::EnergyModel::from_text("hairpin = x"), inv::Error);
  CHECK_THROWS_AS(inv::EnergyModel::from_text("hairpin 3"), inv::Error);
  CHECK_THROWS_AS(inv::EnergyModel::from_text("pair_gc = 2"), inv::Error);
  CHECK_THROWS_AS(inv::EnergyModel::from_text("multi = -1"), inv::Error);
  CHECK_THROWS_AS(inv::EnergyModel::from_file("/nonexistent/model.txt"), inv::Error);
}

TEST_CASE("enumeration of small lengths") {
  for (int n = 0; n <= 7; ++n) CHECK(inv::enumerate_structures(n).size() == 1);
  // With j - i >= 4 a size-3 stack fits from n = 9: (1,9),(2,8),(3,7).
  CHECK(inv::enumerate_structures(9).size() == 2);
  const auto ten = inv::enumerate_structures(10);
  std::set<std::vector<Arc>> got;
  for (const auto& s : ten) got.insert(s.arcs());
  const std::set<std::vector<Arc>> want{{},
                                        {{1, 9}, {2, 8}, {3, 7}},
                                        {{1, 10}, {2, 9}, {3, 8}},
                                        {{2, 10}, {3, 9}, {4, 8}}};
  CHECK(got == want);
}

TEST_CASE("enumeration matches the matching filter") {
  for (int n : {12, 14, 16, 18}) {
    CAPTURE(n);
    const auto mine = inv::enumerate_structures(n);
    std::vector<std::vector<Arc>> arcs;
    for (const auto& s : mine) arcs.push_back(s.arcs());
    std::sort(arcs.begin(), arcs.end());
    CHECK(std::adjacent_find(arcs.begin(), arcs.end()) == arcs.end());
    CHECK(arcs == oracle::valid_structures(n));
  }
  // Other policies too.
  const inv::ValidationPolicy loose{4, 2, 3};
  std::vector<std::vector<Arc>> arcs;
  for (const auto& s : inv::enumerate_structures(14, loose)) arcs.push_back(s.arcs());
  std::sort(arcs.begin(), arcs.end());
  CHECK(arcs == oracle::valid_structures(14, 4, 2, 3));
}

TEST_CASE("size guard") {
  CHECK_THROWS_AS(inv::enumerate_structures(41), inv::Error);
  const inv::ExhaustiveFolder folder;
  CHECK_THROWS_AS(folder.fold(RnaSequence(std::vector<inv::Base>(41, inv::Base::A)), 1),
                  inv::Error);
  inv::FoldOptions options;
  options.allow_large = true;
  const inv::ExhaustiveFolder large(options);
  const auto r = large.fold(RnaSequence(std::vector<inv::Base>(41, inv::Base::A)), 1);
  CHECK(r.mfe().empty());
}

TEST_CASE("fold examples") {
  const inv::ExhaustiveFolder folder;
  const auto a = folder.fold(RnaSequence::parse("AAAAAAAAAA"));
  REQUIRE(a.size() == 1);
  CHECK(a.mfe().empty());
  CHECK(a.energies[0] == 0);

  const auto h = folder.fold(RnaSequence::parse("GGGAAAACCC"), 2);
  REQUIRE(h.size() == 2);
  CHECK(h.structures[0] == inv::parse_structure("(((....)))"));
  CHECK(h.structures[1].empty());
  CHECK(h.energies == std::vector<int>{-6, 0});

  const auto k = folder.fold(RnaSequence::parse("GGGAACCCAACCCAAGGG"));
  CHECK(k.mfe() == inv::parse_structure(kKnot));
  CHECK(k.energies[0] == -9);
  CHECK_THROWS_AS(folder.fold(RnaSequence::parse("GGGAAAACCC"), 0), inv::Error);
}

TEST_CASE("fold results are sorted, distinct, valid and compatible") {
  const inv::ExhaustiveFolder folder;
  inv::Rng rng(47);
  for (int t = 0; t < 40; ++t) {
    const Structure target = gen::valid_structure(rng, gen::uniform(rng, 12, 26));
    const RnaSequence s = inv::make_start(target, rng);
    const auto r = folder.fold(s, 20);
    REQUIRE(r.size() >= 1);
    std::set<std::vector<Arc>> seen;
    for (std::size_t h = 0; h < r.size(); ++h) {
      if (h > 0) CHECK(r.energies[h - 1] <= r.energies[h]);
      CHECK(seen.insert(r.structures[h].arcs()).second);
      CHECK(inv::is_compatible(s, r.structures[h]));
      CHECK(inv::validate_target(r.structures[h]).empty());
      CHECK(inv::energy_of(s, r.structures[h]) == r.energies[h]);
    }
  }
}

TEST_CASE("parallel and serial kernels agree") {
  const inv::ExhaustiveFolder folder;
  inv::Rng rng(53);
  for (int t = 0; t < 30; ++t) {
    const Structure target = gen::valid_structure(rng, gen::uniform(rng, 12, 28));
    const RnaSequence s = inv::make_start(target, rng);
    for (int count : {1, 7, 50}) {
      const auto a = folder.fold_serial(s, count);
      const auto b = folder.fold_parallel(s, count);
      CHECK(a.structures == b.structures);
      CHECK(a.energies == b.energies);
    }
  }
}

TEST_CASE("fold minimum matches brute force on short sequences") {
  const inv::ExhaustiveFolder folder;
  inv::Rng rng(59);
  std::map<int, std::vector<std::vector<Arc>>> spaces;
  for (int t = 0; t < 60; ++t) {
    const int n = gen::uniform(rng, 1, 12);
    if (!spaces.count(n)) spaces[n] = oracle::valid_structures(n);
    const RnaSequence s = gen::sequence(rng, n);
    CHECK(folder.fold(s).energies[0] == oracle::min_energy(s, spaces[n]));
  }
}

TEST_CASE("custom models change the ranking") {
  inv::FoldOptions options;
  options.model.pseudoknot = 30;
  const inv::ExhaustiveFolder folder(options);
  const auto r = folder.fold(RnaSequence::parse("GGGAACCCAACCCAAGGG"));
  CHECK(inv::crossing_number(r.mfe()) <= 1);
}
