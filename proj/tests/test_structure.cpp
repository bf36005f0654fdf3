#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "inv/structure.hpp"
#include "oracles.hpp"

using inv::Arc;
using inv::Structure;

namespace {
const char* kKnot = "(((..[[[..)))..]]]";
}

TEST_CASE("parse reads per-family brackets") {
  CHECK(inv::parse_structure(":::") == Structure(3));
  CHECK(inv::parse_structure("(((....)))").arcs() == std::vector<Arc>{{1, 10}, {2, 9}, {3, 8}});
  CHECK(inv::parse_structure(kKnot).arcs() ==
        std::vector<Arc>{{1, 13}, {2, 12}, {3, 11}, {6, 18}, {7, 17}, {8, 16}});
  CHECK(inv::parse_structure("{:}").arcs() == std::vector<Arc>{{1, 3}});
}

TEST_CASE("parse errors carry positions") {
  try {
    inv::parse_structure("(((...))");
    FAIL("expected an error");
  } catch (const inv::Error& e) {
    CHECK(e.kind() == inv::ErrorKind::UnbalancedBracket);
    CHECK(e.position() == 1);
  }
  try {
    inv::parse_structure("::)");
    FAIL("expected an error");
  } catch (const inv::Error& e) {
    CHECK(e.kind() == inv::ErrorKind::UnbalancedBracket);
    CHECK(e.position() == 3);
  }
  try {
    inv::parse_structure("(x)");
    FAIL("expected an error");
  } catch (const inv::Error& e) {
    CHECK(e.kind() == inv::ErrorKind::IllegalCharacter);
    CHECK(e.position() == 2);
  }
  CHECK_THROWS_AS(inv::parse_structure("(]"), inv::Error);
}

TEST_CASE("structure constructor rejects shared endpoints") {
  CHECK_THROWS_AS(Structure(10, {{1, 5}, {5, 9}}), inv::Error);
  CHECK_THROWS_AS(Structure(10, {{0, 5}}), inv::Error);
  CHECK_THROWS_AS(Structure(10, {{3, 3}}), inv::Error);
  CHECK_THROWS_AS(Structure(4, {{1, 5}}), inv::Error);
}

TEST_CASE("partner lookups") {
  const Structure t(6, {{1, 4}});
  CHECK(t.partner(1) == 4);
  CHECK(t.partner(2) == 0);
  CHECK(t.partner(4) == 1);
  CHECK_THROWS_AS(t.partner(0), inv::Error);
  CHECK_THROWS_AS(t.partner(7), inv::Error);
}

TEST_CASE("serialize") {
  CHECK(inv::serialize_structure(Structure(3)) == ":::");
  CHECK(inv::serialize_structure(Structure(10, {{1, 10}, {2, 9}, {3, 8}})) == "(((::::)))");
  CHECK(inv::serialize_structure(inv::parse_structure(kKnot)) == "(((::[[[::)))::]]]");
  CHECK(inv::serialize_structure(inv::parse_structure(kKnot), '.') == kKnot);
  // Four mutually crossing arcs need a fourth family.
  CHECK_THROWS_AS(inv::serialize_structure(Structure(8, {{1, 5}, {2, 6}, {3, 7}, {4, 8}})),
                  inv::Error);
}

TEST_CASE("crossing number") {
  CHECK(inv::crossing_number(Structure(5)) == 0);
  CHECK(inv::crossing_number(inv::parse_structure("(((....)))")) == 1);
  CHECK(inv::crossing_number(Structure(11, {{1, 7}, {4, 9}, {5, 11}})) == 3);
  CHECK(inv::crossing_number(inv::parse_structure(kKnot)) == 2);
}

TEST_CASE("crossing number agrees with clique search") {
  inv::Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    const int n = gen::uniform(rng, 2, 16);
    std::vector<Arc> arcs;
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    for (int a = 0; a < n; ++a) {
      const int i = gen::uniform(rng, 1, n);
      const int j = gen::uniform(rng, 1, n);
      if (i >= j || used[i] || used[j]) continue;
      used[i] = used[j] = 1;
      arcs.push_back({i, j});
    }
    const Structure s(n, arcs);
    CHECK(inv::crossing_number(s) == oracle::crossing_number(s.arcs()));
  }
}

TEST_CASE("stacks partition the arcs") {
  CHECK(inv::stacks(inv::parse_structure("(((....)))")).size() == 1);
  const auto knot = inv::stacks(inv::parse_structure(kKnot));
  REQUIRE(knot.size() == 2);
  CHECK(knot[0].size() == 3);
  CHECK(knot[1].size() == 3);
  const auto broken = inv::stacks(Structure(10, {{1, 10}, {3, 8}}));
  REQUIRE(broken.size() == 2);
  CHECK(broken[0].size() == 1);

  inv::Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const Structure s = gen::valid_structure(rng, gen::uniform(rng, 10, 30));
    std::size_t total = 0;
    for (const auto& st : inv::stacks(s)) total += st.arcs.size();
    CHECK(total == s.arcs().size());
  }
}

TEST_CASE("validate_target reports every violation") {
  CHECK(inv::validate_target(inv::parse_structure("(((....)))")).empty());
  CHECK(inv::validate_target(inv::parse_structure(kKnot)).empty());
  const auto v = inv::validate_target(inv::parse_structure("((..))"));
  REQUIRE(v.size() == 2);
  const bool has_short = std::any_of(v.begin(), v.end(), [](const inv::Violation& x) {
    return x.kind == inv::ViolationKind::ArcTooShort && x.arc == Arc{2, 5} && x.value == 3;
  });
  const bool has_small = std::any_of(v.begin(), v.end(), [](const inv::Violation& x) {
    return x.kind == inv::ViolationKind::StackTooSmall && x.value == 2;
  });
  CHECK(has_short);
  CHECK(has_small);

  const auto three = inv::validate_target(Structure(11, {{1, 7}, {4, 9}, {5, 11}}),
                                          inv::ValidationPolicy{3, 1, 1});
  REQUIRE(three.size() == 1);
  CHECK(three[0].kind == inv::ViolationKind::TooManyCrossings);

  const auto adjacent = inv::validate_target(Structure(4, {{2, 3}}), inv::ValidationPolicy{3, 1, 1});
  REQUIRE(adjacent.size() == 1);
  CHECK(adjacent[0].kind == inv::ViolationKind::AdjacentPair);

  CHECK_THROWS_AS(inv::validate_target(Structure(3), inv::ValidationPolicy{1, 3, 4}), inv::Error);
}

TEST_CASE("validity agrees with the independent checker") {
  inv::Rng rng(17);
  for (int t = 0; t < 300; ++t) {
    const int n = gen::uniform(rng, 6, 24);
    std::vector<Arc> arcs;
    std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
    for (int a = 0; a < 3; ++a) {
      const int size = gen::uniform(rng, 1, 4);
      const int i = gen::uniform(rng, 1, n);
      const int j = gen::uniform(rng, 1, n);
      bool ok = j - i >= 2 * size;
      for (int s = 0; ok && s < size; ++s) ok = !used[i + s] && !used[j - s];
      if (!ok) continue;
      for (int s = 0; s < size; ++s) {
        used[i + s] = used[j - s] = 1;
        arcs.push_back({i + s, j - s});
      }
    }
    const Structure s(n, arcs);
    CHECK(inv::validate_target(s).empty() == oracle::valid(s.arcs(), 3, 3, 4));
  }
}

TEST_CASE("structure distance") {
  const Structure s1(10, {{1, 10}, {2, 9}, {3, 8}});
  const Structure s2(10, {{1, 10}, {2, 9}});
  CHECK(inv::structure_distance(s1, s1) == 0);
  CHECK(inv::structure_distance(s1, s2) == 2);
  const Structure a(25, {{4, 20}});
  const Structure b(25, {{4, 17}});
  CHECK(inv::structure_distance(a, b) == 3);  // positions 4, 17 and 20
  CHECK_THROWS_AS(inv::structure_distance(s1, Structure(9)), inv::Error);
}

TEST_CASE("core, L-graph, skeleton and motif") {
  const Structure hairpin = inv::parse_structure("(((....)))");
  const Structure knot = inv::parse_structure(kKnot);
  CHECK(inv::core_of(hairpin) == Structure(6, {{1, 6}}));
  CHECK(inv::core_of(Structure(4)) == Structure(4));
  const Structure knot_core = inv::core_of(knot);
  CHECK(knot_core.size() == 10);
  CHECK(knot_core.arcs().size() == 2);
  CHECK(inv::crosses(knot_core.arcs()[0], knot_core.arcs()[1]));
  CHECK(inv::core_of(knot_core) == knot_core);

  CHECK(inv::l_graph_of(hairpin).edges.empty());
  CHECK(inv::l_graph_of(hairpin).vertices == 3);
  CHECK(inv::l_graph_of(knot).edges.size() == 9);
  CHECK(inv::l_graph_of(Structure(5)).vertices == 0);

  CHECK_FALSE(inv::is_skeleton(hairpin));
  CHECK(inv::is_skeleton(knot));
  CHECK(inv::is_motif(hairpin, 3));
  CHECK_FALSE(inv::is_motif(inv::parse_structure("((((....))))"), 3));
}
