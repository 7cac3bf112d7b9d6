#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "regclose/canonical.hpp"
#include "regclose/export_cat.hpp"
#include "regclose/fincat.hpp"

using namespace regclose;

namespace {

// two objects, one non-identity arrow f : A -> B
FinCategory arrow_category() {
  FinCategory::Builder b;
  int a = b.add_object("A");
  int bb = b.add_object("B");
  b.add_morphism(a, bb);
  return b.build();
}

}  // namespace

TEST_CASE("identity morphisms are mono, epi and iso") {
  auto ex = export_category({FinSpace::sierpinski(), FinSpace::point()});
  for (int o = 0; o < ex.cat.object_count(); ++o) {
    MorphismClass mc = morphism_class(ex.cat, ex.cat.identity(o));
    CHECK(mc.mono);
    CHECK(mc.epi);
    CHECK(mc.iso);
  }
}

TEST_CASE("single arrow with no parallel pairs is mono and epi but not iso") {
  FinCategory c = arrow_category();
  MorphismClass mc = morphism_class(c, 2);
  CHECK(mc.mono);
  CHECK(mc.epi);
  CHECK_FALSE(mc.iso);
}

TEST_CASE("a single point exports to the one-morphism category") {
  auto ex = export_category({FinSpace::point()});
  CHECK(ex.cat.object_count() == 1);
  CHECK(ex.cat.morphism_count() == 1);
  CHECK(ex.cat.identity(0) == 0);
}

TEST_CASE("export budget guard") {
  Workspace ws;
  CHECK_THROWS_AS(export_category(ws.universe(2), 10), InputError);
}

TEST_CASE("the collapse I2 -> P1 is epi but not mono in the exported category") {
  FinSpace i2 = FinSpace::indiscrete(2);
  FinSpace p1 = FinSpace::point();
  auto ex = export_category({i2, p1});
  CHECK(ex.cat.hom(0, 1).size() == 1);
  CHECK(ex.cat.hom(1, 0).size() == 2);
  CHECK(ex.cat.hom(0, 0).size() == 4);
  CHECK(ex.cat.hom(1, 1).size() == 1);

  int f = ex.morphism_id(ContMap{i2, p1, Graph{0, 0}});
  REQUIRE(f >= 0);
  MorphismClass mc = morphism_class(ex.cat, f);
  CHECK_FALSE(mc.mono);
  CHECK(mc.epi);
  CHECK_FALSE(mc.iso);
}

TEST_CASE("every iso is mono and epi") {
  Workspace ws;
  auto ex = export_category(ws.universe(2));
  for (int m = 0; m < ex.cat.morphism_count(); ++m) {
    MorphismClass mc = morphism_class(ex.cat, m);
    if (mc.iso) {
      CHECK(mc.mono);
      CHECK(mc.epi);
    }
  }
}

TEST_CASE("unknown morphism ids are rejected") {
  FinCategory c = arrow_category();
  CHECK_THROWS_AS(morphism_class(c, 99), InputError);
}

TEST_CASE("verify_equalizer: identity equalizes an equal pair") {
  FinCategory c = arrow_category();
  // f = g (the only arrow); only identities map into dom(f)
  auto cert = verify_equalizer(c, c.identity(0), 2, 2);
  CHECK(cert.verified);
}

TEST_CASE("verify_equalizer on exported spaces") {
  FinSpace s = FinSpace::sierpinski();
  FinSpace p1 = FinSpace::point();
  FinSpace e = s.subspace(0b10);
  Workspace ws;
  std::vector<FinSpace> objects = ws.universe(2);
  objects.push_back(s);
  objects.push_back(e);
  auto ex = export_category(objects);

  auto maps = hom_set(s, s);
  int id_s = ex.morphism_id(maps[1]);
  int const1 = ex.morphism_id(maps[2]);
  Subobject m{s, 0b10};
  int incl = ex.morphism_id(m.inclusion());
  REQUIRE(id_s >= 0);
  REQUIRE(const1 >= 0);
  REQUIRE(incl >= 0);

  CHECK(verify_equalizer(ex.cat, incl, id_s, const1).verified);

  // the empty subspace fails to factor the genuine fork
  FinSpace empty = FinSpace::empty_space();
  int bad = ex.morphism_id(Subobject{s, 0}.inclusion());
  REQUIRE(bad >= 0);
  auto cert = verify_equalizer(ex.cat, bad, id_s, const1);
  CHECK_FALSE(cert.verified);
  REQUIRE(cert.counterexample.has_value());
  CHECK(cert.counterexample->failure == CertFailure::MediatorMissing);
  (void)p1;
  (void)empty;
}

TEST_CASE("verify_cokernel_pair: iso source and genuine pushouts") {
  FinSpace i2 = FinSpace::indiscrete(2);
  Subobject m{i2, 0b01};
  CokernelPair cp = cokernel_pair(m);

  Workspace ws;
  std::vector<FinSpace> objects = ws.universe(2);
  objects.push_back(i2);
  objects.push_back(cp.apex);
  objects.push_back(m.subspace());
  auto ex = export_category(objects);

  int mm = ex.morphism_id(m.inclusion());
  int i = ex.morphism_id(cp.left);
  int j = ex.morphism_id(cp.right);
  REQUIRE(mm >= 0);
  REQUIRE(i >= 0);
  REQUIRE(j >= 0);
  CHECK(verify_cokernel_pair(ex.cat, mm, i, j).verified);

  // the pair (i, i) fails initiality against the genuine pushout
  auto cert = verify_cokernel_pair(ex.cat, mm, i, i);
  CHECK_FALSE(cert.verified);

  // cokernel pair of an iso is (id, id)
  int ids = ex.cat.identity(ex.object_of(i2));
  int full_incl = ex.morphism_id(Subobject{i2, i2.full_mask()}.inclusion());
  REQUIRE(full_incl >= 0);
  CHECK(verify_cokernel_pair(ex.cat, full_incl, ids, ids).verified);
}

TEST_CASE("search_equalizer finds the canonical equalizer or nothing") {
  FinSpace s = FinSpace::sierpinski();
  FinSpace e = s.subspace(0b10);
  Workspace ws;
  std::vector<FinSpace> objects = ws.universe(2);
  objects.push_back(s);
  objects.push_back(e);
  auto ex = export_category(objects);

  auto maps = hom_set(s, s);
  int id_s = ex.morphism_id(maps[1]);
  int const1 = ex.morphism_id(maps[2]);
  REQUIRE(id_s >= 0);
  REQUIRE(const1 >= 0);

  auto found = search_equalizer(ex.cat, id_s, const1);
  REQUIRE(found.has_value());
  const auto& morph = ex.cat.morphism(*found);
  CHECK(ex.spaces[static_cast<std::size_t>(morph.dom)].size() == 1);

  // equal pair: some iso onto dom(f) works, the identity qualifies
  auto same = search_equalizer(ex.cat, id_s, id_s);
  REQUIRE(same.has_value());
  MorphismClass mc = morphism_class(ex.cat, *same);
  CHECK(mc.mono);

  // a category missing the needed object: only S and the two constants
  FinCategory::Builder b;
  int obj = b.add_object("S");
  int f = b.add_morphism(obj, obj);
  int g = b.add_morphism(obj, obj);
  b.set_composite(f, f, f);
  b.set_composite(f, g, f);
  b.set_composite(g, f, g);
  b.set_composite(g, g, g);
  FinCategory c2 = b.build();
  CHECK_FALSE(search_equalizer(c2, f, g).has_value());
}

TEST_CASE("builder rejects broken tables") {
  FinCategory::Builder b;
  int a = b.add_object("A");
  int f = b.add_morphism(a, a);
  int g = b.add_morphism(a, a);
  // f.f deliberately mapped to g while g is idempotent: associativity breaks
  b.set_composite(f, f, g);
  b.set_composite(f, g, g);
  b.set_composite(g, f, g);
  b.set_composite(g, g, f);
  CHECK_THROWS_AS(b.build(), InputError);
}

TEST_CASE("exported categories satisfy the category laws") {
  Workspace ws;
  auto ex = export_category(ws.universe(2));
  CHECK_FALSE(validate_category(ex.cat).has_value());
}

TEST_CASE("lemma: equalizers absorb monos on the outside") {
  // whenever e = eq(f, g) and a is mono with a.f defined,
  // e = eq(a.f, a.g) as well; and conversely with f.e = g.e
  FinSpace s = FinSpace::sierpinski();
  FinSpace i2 = FinSpace::indiscrete(2);
  Workspace ws;
  std::vector<FinSpace> objects{FinSpace::point(), s, i2, s.subspace(0b10),
                                FinSpace::empty_space()};
  auto ex = export_category(objects);

  int checked = 0;
  for (int f = 0; f < ex.cat.morphism_count(); ++f) {
    const auto& mf = ex.cat.morphism(f);
    for (int g : ex.cat.hom(mf.dom, mf.cod)) {
      auto e = search_equalizer(ex.cat, f, g);
      if (!e) continue;
      for (int a = 0; a < ex.cat.morphism_count(); ++a) {
        const auto& ma = ex.cat.morphism(a);
        if (ma.dom != mf.cod) continue;
        if (!morphism_class(ex.cat, a).mono) continue;
        int af = ex.cat.compose(a, f);
        int ag = ex.cat.compose(a, g);
        CHECK(verify_equalizer(ex.cat, *e, af, ag).verified);
        ++checked;

        // converse direction (1.2): e equalizes (a.f, a.g), f.e = g.e
        if (ex.cat.compose(f, *e) == ex.cat.compose(g, *e))
          CHECK(verify_equalizer(ex.cat, *e, f, g).verified);
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("direct product verification matches the categorical one") {
  Workspace ws;
  FinSpace s = FinSpace::sierpinski();
  Product pr = product(s, s);
  auto tests = ws.universe(2);
  CHECK(verify_product_direct(pr, tests).verified);

  // a broken cone: use the first projection twice
  Product wrong{pr.space, pr.p, pr.p};
  CHECK_FALSE(verify_product_direct(wrong, tests).verified);

  std::vector<FinSpace> objects = tests;
  objects.push_back(s);
  objects.push_back(pr.space);
  auto ex = export_category(objects);
  int p = ex.morphism_id(pr.p);
  int q = ex.morphism_id(pr.q);
  REQUIRE(p >= 0);
  REQUIRE(q >= 0);
  CHECK(verify_product(ex.cat, p, q).verified);
}

TEST_CASE("direct pullback verification") {
  Workspace ws;
  FinSpace s = FinSpace::sierpinski();
  auto maps = hom_set(s, s);
  PullbackResult pb = pullback(maps[1], maps[2]);
  CHECK(verify_pullback_direct(pb, maps[1], maps[2], ws.universe(2)).verified);
}

TEST_CASE("every pullback of a small cospan passes certification") {
  Workspace ws;
  auto uni = ws.universe(2);
  int checked = 0;
  for (const auto& x : uni)
    for (const auto& y : uni)
      for (const auto& z : uni)
        for (const auto& fg : ws.homs(x, z))
          for (const auto& gg : ws.homs(y, z)) {
            ContMap f{x, z, fg};
            ContMap g{y, z, gg};
            PullbackResult pb = pullback(f, g);
            CHECK(verify_pullback_direct(pb, f, g, uni).verified);
            ++checked;
          }
  CHECK(checked > 0);
}
