#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "regclose/canonical.hpp"
#include "regclose/finspace.hpp"

using namespace regclose;

namespace {

// Independent product-topology oracle: close the rectangles of opens under
// pairwise union and intersection instead of sweeping up-sets.
std::set<Mask> product_opens_by_rectangles(const FinSpace& x, const FinSpace& y) {
  std::set<Mask> opens;
  for (Mask u : x.opens()) {
    for (Mask v : y.opens()) {
      Mask rect = 0;
      for (int a = 0; a < x.size(); ++a)
        if (has_bit(u, a))
          for (int b = 0; b < y.size(); ++b)
            if (has_bit(v, b)) rect |= bit(a * y.size() + b);
      opens.insert(rect);
    }
  }
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Mask> current(opens.begin(), opens.end());
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        if (opens.insert(current[i] | current[j]).second) grew = true;
        if (opens.insert(current[i] & current[j]).second) grew = true;
      }
  }
  return opens;
}

// Independent pushout-topology oracle: survival of saturated open pairs on
// the glued disjoint union.
std::set<Mask> pushout_opens_by_saturation(const CokernelPair& cp) {
  const FinSpace& x = cp.source.ambient;
  std::set<Mask> opens;
  for (Mask u : x.opens()) {
    for (Mask v : x.opens()) {
      if ((u & cp.source.carrier) != (v & cp.source.carrier)) continue;
      Mask w = 0;
      for (int p = 0; p < x.size(); ++p) {
        if (has_bit(u, p)) w |= bit(cp.left.map[static_cast<std::size_t>(p)]);
        if (has_bit(v, p)) w |= bit(cp.right.map[static_cast<std::size_t>(p)]);
      }
      opens.insert(w);
    }
  }
  return opens;
}

}  // namespace

TEST_CASE("mk_space validates the axioms and names violations") {
  CHECK_NOTHROW(FinSpace::validated({"0", "1"}, {0b00, 0b10, 0b11}));
  // full set missing
  CHECK_THROWS_AS(FinSpace::validated({"a", "b"}, {0b00, 0b01}), SpaceError);
  // empty set missing
  CHECK_THROWS_AS(FinSpace::validated({"a", "b"}, {0b01, 0b11}), SpaceError);
  // union of {a} and {b} missing
  CHECK_THROWS_AS(FinSpace::validated({"a", "b", "c"}, {0b000, 0b001, 0b010, 0b111}), SpaceError);
  CHECK_THROWS_AS(FinSpace::validated({"a", "a"}, {0b00, 0b11}), SpaceError);
  try {
    FinSpace::validated({"a", "b", "c"}, {0b000, 0b011, 0b101, 0b111});
  } catch (const SpaceError& e) {
    std::string msg = e.what();
    CHECK(msg.find("intersection") != std::string::npos);
  }
}

TEST_CASE("spec spaces") {
  FinSpace s = FinSpace::sierpinski();
  CHECK(s.size() == 2);
  CHECK(s.opens().size() == 3);
  CHECK(s.is_t0());
  CHECK_FALSE(s.is_discrete());

  FinSpace i2 = FinSpace::indiscrete(2);
  CHECK(i2.opens().size() == 2);
  CHECK(i2.is_indiscrete());
  CHECK_FALSE(i2.is_t0());

  FinSpace e = FinSpace::empty_space();
  CHECK(e.size() == 0);
  CHECK(e.opens().size() == 1);
  CHECK(e.is_t0());
  CHECK(e.is_discrete());
  CHECK(e.is_indiscrete());
}

TEST_CASE("hom_set counts and order") {
  FinSpace s = FinSpace::sierpinski();
  FinSpace i2 = FinSpace::indiscrete(2);
  FinSpace d2 = FinSpace::discrete(2);

  auto i2_to_s = hom_set(i2, s);
  REQUIRE(i2_to_s.size() == 2);  // both constants
  for (const auto& f : i2_to_s) CHECK(f.map[0] == f.map[1]);

  auto s_to_s = hom_set(s, s);
  REQUIRE(s_to_s.size() == 3);  // const0, id, const1; the swap is discontinuous
  CHECK(s_to_s[0].map == Graph{0, 0});
  CHECK(s_to_s[1].map == Graph{0, 1});
  CHECK(s_to_s[2].map == Graph{1, 1});

  // indiscrete codomain admits every function
  CHECK(hom_set(s, i2).size() == 4);
  CHECK(hom_set(d2, i2).size() == 4);

  // maps out of the empty space are unique; into it, absent
  CHECK(hom_set(FinSpace::empty_space(), s).size() == 1);
  CHECK(hom_set(s, FinSpace::empty_space()).empty());

  // lexicographic order
  auto all = hom_set(d2, d2);
  REQUIRE(all.size() == 4);
  CHECK(all[0].map == Graph{0, 0});
  CHECK(all[3].map == Graph{1, 1});
}

TEST_CASE("maps from indiscrete spaces into t0 spaces are constant") {
  Workspace ws;
  for (int n = 1; n <= 4; ++n) {
    FinSpace ind = FinSpace::indiscrete(n);
    for (int m = 0; m <= 4; ++m) {
      for (const auto& t : ws.spaces_of_size(m)) {
        if (!t.is_t0()) continue;
        for (const auto& g : hom_graphs(ind, t))
          for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] == g[0]);
      }
    }
  }
}

TEST_CASE("product topology matches the rectangle-closure oracle") {
  Workspace ws;
  for (const auto& x : ws.universe(3)) {
    for (const auto& y : ws.universe(2)) {
      Product pr = product(x, y);
      std::set<Mask> expected = product_opens_by_rectangles(x, y);
      std::set<Mask> actual(pr.space.opens().begin(), pr.space.opens().end());
      CHECK(actual == expected);
    }
  }
}

TEST_CASE("product examples") {
  FinSpace s = FinSpace::sierpinski();
  Product ss = product(s, s);
  CHECK(ss.space.size() == 4);
  CHECK(ss.space.opens().size() == 6);

  // product with a point is the space itself, up to homeomorphism
  FinSpace p1 = FinSpace::point();
  Product sp = product(s, p1);
  CHECK(sp.p.surjective());
  CHECK(sp.p.injective());
  CHECK(sp.p.embedding());
  Product ps = product(p1, s);
  CHECK(ps.q.embedding());
  CHECK(ps.q.surjective());

  Product ii = product(FinSpace::indiscrete(2), FinSpace::indiscrete(2));
  CHECK(ii.space.size() == 4);
  CHECK(ii.space.is_indiscrete());

  // projections are continuous by construction
  CHECK(graph_continuous(ss.space.preorder(), s.preorder(), ss.p.map));
  CHECK(graph_continuous(ss.space.preorder(), s.preorder(), ss.q.map));
}

TEST_CASE("equalizer computes the agreement subobject") {
  FinSpace s = FinSpace::sierpinski();
  auto maps = hom_set(s, s);
  const ContMap& const0 = maps[0];
  const ContMap& id = maps[1];
  const ContMap& const1 = maps[2];

  CHECK(equalizer(id, id).carrier == s.full_mask());
  CHECK(equalizer(id, const1).carrier == 0b10);
  CHECK(equalizer(const0, const1).carrier == 0);
  CHECK_THROWS_AS(equalizer(id, ContMap::identity(FinSpace::discrete(2))), InputError);
}

TEST_CASE("cokernel pair: examples and the saturated-open oracle") {
  FinSpace i2 = FinSpace::indiscrete(2);
  CokernelPair a = cokernel_pair(Subobject{i2, 0b01});
  CHECK(a.apex.size() == 3);
  CHECK(a.apex.is_indiscrete());
  CHECK(compose(a.left, Subobject{i2, 0b01}.inclusion()).map ==
        compose(a.right, Subobject{i2, 0b01}.inclusion()).map);

  FinSpace s = FinSpace::sierpinski();
  CokernelPair b = cokernel_pair(Subobject{s, 0b10});
  CHECK(b.apex.size() == 3);
  CHECK(b.apex.opens().size() == 5);
  CHECK(b.apex.is_t0());

  // iso source: apex is the ambient itself
  CokernelPair c = cokernel_pair(Subobject{s, s.full_mask()});
  CHECK(c.apex.size() == 2);
  CHECK(c.left.map == c.right.map);

  // empty carrier: apex is the disjoint union
  CokernelPair d = cokernel_pair(Subobject{s, 0});
  CHECK(d.apex.size() == 4);

  Workspace ws;
  for (const auto& x : ws.universe(3)) {
    for (Mask m = 0;; ++m) {
      CokernelPair cp = cokernel_pair(Subobject{x, m});
      std::set<Mask> expected = pushout_opens_by_saturation(cp);
      std::set<Mask> actual(cp.apex.opens().begin(), cp.apex.opens().end());
      CHECK(actual == expected);
      if (m == x.full_mask()) break;
    }
  }
}

TEST_CASE("factorize splits into surjection and embedding") {
  FinSpace s = FinSpace::sierpinski();
  auto maps = hom_set(s, s);
  const ContMap& const1 = maps[2];

  EpiMonoFactorization f = factorize(const1);
  CHECK(f.epi.surjective());
  CHECK(f.mono.carrier == 0b10);
  CHECK(f.mono.inclusion().embedding());
  CHECK(compose(f.mono.inclusion(), f.epi).map == const1.map);

  // injective map: the epi part is an iso
  EpiMonoFactorization g = factorize(ContMap::identity(s));
  CHECK(g.epi.injective());
  CHECK(g.mono.is_full());
}

TEST_CASE("factorization admits unique diagonal fill-ins") {
  // for every commuting square  u . e = incl(m) . v  with e a factorization
  // surjection and m an image subobject, exactly one diagonal exists
  Workspace ws;
  auto uni = ws.universe(2);
  int squares = 0;
  for (const auto& x : uni) {
    for (const auto& y : uni) {
      for (const auto& fg : ws.homs(x, y)) {
        EpiMonoFactorization fac = factorize(ContMap{x, y, fg});
        for (const auto& z : uni) {
          for (const auto& wg : ws.homs(x, z)) {
            EpiMonoFactorization wfac = factorize(ContMap{x, z, wg});
            // square: v = wfac.epi after nothing, u: wfac.mono-side vs fac
            // test: maps u : image(f) -> z and v : x -> image(w) with
            // u . fac.epi = incl(wfac.mono) . v
            FinSpace imf = fac.epi.cod;
            FinSpace imw = wfac.epi.cod;
            for (const auto& ug : ws.homs(imf, z)) {
              Graph lhs(static_cast<std::size_t>(x.size()));
              for (int i = 0; i < x.size(); ++i)
                lhs[static_cast<std::size_t>(i)] = ug[fac.epi.map[static_cast<std::size_t>(i)]];
              // does lhs land inside the image of w?
              Mask img = wfac.mono.carrier;
              bool lands = true;
              for (auto v : lhs)
                if (!has_bit(img, v)) lands = false;
              if (!lands) continue;
              ++squares;
              // diagonals d : image(f) -> image(w) with
              // incl(wfac.mono) . d = u  and  d . fac.epi = v
              int count = 0;
              for (const auto& dg : ws.homs(imf, imw)) {
                bool ok = true;
                ContMap incl = wfac.mono.inclusion();
                for (int i = 0; i < imf.size() && ok; ++i)
                  if (incl.map[dg[static_cast<std::size_t>(i)]] != ug[static_cast<std::size_t>(i)])
                    ok = false;
                if (ok) ++count;
              }
              CHECK(count == 1);
            }
          }
        }
      }
    }
  }
  CHECK(squares > 0);
}

TEST_CASE("t0 reflection") {
  FinSpace s = FinSpace::sierpinski();
  Reflected rs = t0_reflection(s);
  CHECK(rs.target.size() == 2);  // already T0
  CHECK(rs.morphism.injective());

  Reflected ri = t0_reflection(FinSpace::indiscrete(2));
  CHECK(ri.target.size() == 1);
  Reflected r3 = t0_reflection(FinSpace::indiscrete(3));
  CHECK(r3.target.size() == 1);
  CHECK(r3.morphism.surjective());
  CHECK(r3.target.is_t0());
}

TEST_CASE("composition of continuous maps is continuous over the small universe") {
  Workspace ws;
  auto uni = ws.universe(2);
  for (const auto& x : uni)
    for (const auto& y : uni)
      for (const auto& z : uni)
        for (const auto& f : ws.homs(x, y))
          for (const auto& g : ws.homs(y, z)) {
            Graph h(f.size());
            for (std::size_t i = 0; i < f.size(); ++i) h[i] = g[f[i]];
            CHECK(graph_continuous(x.preorder(), z.preorder(), h));
          }
}

TEST_CASE("pullback agrees with the pointwise fiber product") {
  FinSpace s = FinSpace::sierpinski();
  auto maps = hom_set(s, s);
  PullbackResult pb = pullback(maps[1], maps[2]);  // id, const1
  // fiber: pairs (a, b) with id(a) = const1(b) = 1
  CHECK(pb.sub.carrier == (bit(2) | bit(3)));
  CHECK(compose(maps[1], pb.p).map == compose(maps[2], pb.q).map);
}

TEST_CASE("subspace topologies") {
  FinSpace s = FinSpace::sierpinski();
  FinSpace sub = s.subspace(0b10);
  CHECK(sub.size() == 1);
  CHECK(sub.labels()[0] == "1");

  Subobject m{s, 0b10};
  ContMap incl = m.inclusion();
  CHECK(incl.embedding());
  CHECK(incl.cod == s);
}
