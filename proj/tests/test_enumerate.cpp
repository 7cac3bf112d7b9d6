#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "regclose/canonical.hpp"
#include "regclose/finspace.hpp"

using namespace regclose;

TEST_CASE("class counts per point count") {
  CHECK(enumerate_spaces(0, 7).size() == 1);
  CHECK(enumerate_spaces(1, 7).size() == 1);
  CHECK(enumerate_spaces(2, 7).size() == 3);
  CHECK(enumerate_spaces(3, 7).size() == 9);
  CHECK(enumerate_spaces(4, 7).size() == 33);
  CHECK(enumerate_spaces(5, 7).size() == 139);
  CHECK(enumerate_spaces(6, 7).size() == 718);
}

TEST_CASE("enumeration respects cost guard") {
  CHECK_THROWS_AS(enumerate_spaces(5, 4), InputError);
  CHECK_THROWS_AS(enumerate_spaces(8, 8), InputError);
}

TEST_CASE("canonical form is a relabeling invariant") {
  FinSpace a = FinSpace::validated({"x", "y"}, {0b00, 0b10, 0b11});
  FinSpace b = FinSpace::validated({"p", "q"}, {0b00, 0b01, 0b11});  // swapped roles
  CHECK(canonical_form(a) == canonical_form(b));
  CHECK(canonical_form(a) == canonical_form(FinSpace::sierpinski()));

  CHECK(canonical_form(FinSpace::discrete(2)) != canonical_form(FinSpace::indiscrete(2)));
  CHECK(canonical_form(FinSpace::discrete(2)) != canonical_form(FinSpace::sierpinski()));
}

TEST_CASE("canonical dedup agrees with brute isomorphism search at n = 4") {
  // independent oracle: list all candidate spaces before dedup and count
  // classes by pairwise permutation search
  auto reps = enumerate_spaces(4, 7);
  CHECK(count_classes_by_iso_search(reps) == 33);

  // representatives are pairwise non-homeomorphic
  std::set<std::string> forms;
  for (const auto& r : reps) forms.insert(canonical_form(r));
  CHECK(forms.size() == reps.size());
}

TEST_CASE("find_homeomorphism produces a genuine homeomorphism") {
  FinSpace a = FinSpace::validated({"x", "y", "z"}, {0b000, 0b100, 0b110, 0b111});
  FinSpace b = FinSpace::validated({"p", "q", "r"}, {0b000, 0b001, 0b011, 0b111});
  auto iso = find_homeomorphism(a, b);
  REQUIRE(iso.has_value());
  CHECK(graph_continuous(a.preorder(), b.preorder(), *iso));
  Mask seen = 0;
  for (auto v : *iso) seen |= bit(v);
  CHECK(seen == b.full_mask());
  CHECK_FALSE(find_homeomorphism(FinSpace::discrete(2), FinSpace::indiscrete(2)).has_value());
}

TEST_CASE("every constructed space matches exactly one representative") {
  Workspace ws;
  const auto& reps = ws.spaces_of_size(3);
  // walk every labeled topology on three points
  int matched = 0;
  for (Mask o1 = 0; o1 < 8; ++o1)
    for (Mask o2 = o1; o2 < 8; ++o2) {
      std::vector<Mask> opens{0, 7, o1, o2, o1 | o2, o1 & o2};
      FinSpace x = [&]() -> FinSpace {
        try {
          return FinSpace::validated({"a", "b", "c"}, opens);
        } catch (const SpaceError&) {
          return FinSpace::empty_space();
        }
      }();
      if (x.size() != 3) continue;
      std::string form = canonical_form(x);
      int hits = 0;
      for (const auto& r : reps)
        if (canonical_form(r) == form) ++hits;
      CHECK(hits == 1);
      ++matched;
    }
  CHECK(matched > 0);
}

TEST_CASE("universe concatenates sizes in canonical order") {
  Workspace ws;
  auto uni = ws.universe(3);
  CHECK(uni.size() == 1 + 1 + 3 + 9);
  for (std::size_t i = 1; i < uni.size(); ++i)
    CHECK(uni[i - 1].size() <= uni[i].size());
}

TEST_CASE("configured maximum honours the hard ceiling") {
  int v = configured_max_points();
  CHECK(v >= 0);
  CHECK(v <= kHardMaxPoints);
}
