#include <catch2/catch_amalgamated.hpp>

#include "csys/ccbuild.hpp"
#include "csys/generators.hpp"

using namespace csys;

namespace {

FinUniverseCategory term_uc(const FinCategory& term) {
  return derive_universe_structure(term, *term.find_morphism("id"),
                                   *term.find_object("pt"));
}

FinUniverseCategory bg_uc(const FinCategory& bg, const char* qe,
                          const char* qg) {
  ObjectId pt = *bg.find_object("pt");
  MorphismId e = *bg.find_morphism("e");
  MorphismId g = *bg.find_morphism("g");
  MorphismId q_e = *bg.find_morphism(qe);
  MorphismId q_g = *bg.find_morphism(qg);
  std::map<MorphismId, CanonicalSquareT<FinCategory>> squares;
  squares[e] = {pt, bg.compose(q_e, *bg.inverse(e)), q_e, e};
  squares[g] = {pt, bg.compose(q_g, *bg.inverse(g)), q_g, g};
  return make_fin_universe_category(bg, e, std::move(squares), pt);
}

}  // namespace

TEST_CASE("CC(TERM) has one object per length", "[ccbuild]") {
  FinCategory term = make_terminal_category();
  FinUniverseCategory uc = term_uc(term);
  CCBuild<FinUniverseCategory> b = build_levels(uc, 6);
  REQUIRE(b.levels.size() == 7);
  for (const auto& lvl : b.levels) REQUIRE(lvl.size() == 1);
  build_cc0(b);
  for (ObjectId x : b.cc.cat.objects())
    for (ObjectId y : b.cc.cat.objects())
      REQUIRE(b.cc.cat.hom(x, y).size() == 1);
}

TEST_CASE("CC(BG(Z/2)) levels double, against the hom-walk oracle",
          "[ccbuild]") {
  FinCategory bg = make_cyclic_group_category(2);
  FinUniverseCategory uc = bg_uc(bg, "e", "e");
  CCBuild<FinUniverseCategory> b = build_levels(uc, 4);
  // oracle: walk the levels multiplying ambient hom-set sizes, without
  // using the builder's tables
  std::size_t expect = 1;
  ObjectId pt = *bg.find_object("pt");
  for (std::size_t n = 0; n < b.levels.size(); ++n) {
    REQUIRE(b.levels[n].size() == expect);
    expect *= bg.hom(pt, uc.u_object()).size();
  }
}

TEST_CASE("CC(BG(Z/2)) at depth 2: 7 objects, hom-sets of size 2, int fully "
          "faithful", "[ccbuild]") {
  FinCategory bg = make_cyclic_group_category(2);
  FinUniverseCategory uc = bg_uc(bg, "g", "e");
  CCBuild<FinUniverseCategory> b = build_csystem(uc, 2);
  REQUIRE(b.cc.cat.object_count() == 7);
  for (ObjectId x : b.cc.cat.objects())
    for (ObjectId y : b.cc.cat.objects()) {
      const auto& hom = b.cc.cat.hom(x, y);
      REQUIRE(hom.size() == 2);
      REQUIRE(hom.size() ==
              bg.hom(b.int_obj[x.v], b.int_obj[y.v]).size());
      // int is injective on each hom-set
      REQUIRE(b.int_mor[hom[0].v] != b.int_mor[hom[1].v]);
    }
  REQUIRE(check_c0_axioms(b.cc).ok());
  REQUIRE(check_s_axioms(b.cc).ok());
}

TEST_CASE("finite-sets skeleton levels count fibers", "[ccbuild]") {
  FinSetsSkeleton sk = make_finsets_skeleton(2);
  FinUniverseCategory uc = derive_universe_structure(sk.cat, sk.p, sk.pt);
  CCBuild<FinUniverseCategory> b = build_csystem(uc, 2);
  REQUIRE(b.levels[0].size() == 1);
  REQUIRE(b.levels[1].size() == 2);   // |Hom(pt, U)| = 2
  REQUIRE(b.levels[2].size() == 3);   // 1 + 2 over the two fibers
  // set-level oracle: fibers of p over the two points of U have sizes 0, 1
  std::vector<int> fiber(static_cast<std::size_t>(sk.sizes[sk.u.v]), 0);
  for (int u = 0; u < sk.sizes[sk.u_tilde.v]; ++u)
    ++fiber[static_cast<std::size_t>(
        sk.functions[sk.p.v][static_cast<std::size_t>(u)])];
  std::size_t expect_l2 = 0;
  for (ObjectId a : b.levels[1]) {
    int img = sk.functions[b.choice[a.v].v][0];
    int fib = fiber[static_cast<std::size_t>(img)];
    // |Hom(fiber, U)| = |U|^fiber
    std::size_t h = 1;
    for (int i = 0; i < fib; ++i)
      h *= static_cast<std::size_t>(sk.sizes[sk.u.v]);
    expect_l2 += h;
  }
  REQUIRE(b.levels[2].size() == expect_l2);
  REQUIRE(check_c0_axioms(b.cc).ok());
  Report s_rep = check_s_axioms(b.cc);
  REQUIRE(s_rep.ok());
}

TEST_CASE("tower structure: ft drops the last choice", "[ccbuild]") {
  FinCategory bg = make_cyclic_group_category(2);
  FinUniverseCategory uc = bg_uc(bg, "e", "g");
  CCBuild<FinUniverseCategory> b = build_csystem(uc, 3);
  for (ObjectId x : b.cc.cat.objects()) {
    if (b.cc.length[x.v] == 0) continue;
    REQUIRE(b.cc.ft[x.v] == b.parent[x.v]);
    REQUIRE(b.cc.length[b.parent[x.v].v] == b.cc.length[x.v] - 1);
  }
}

TEST_CASE("q respects lengths and ft structurally", "[ccbuild]") {
  FinCategory bg = make_cyclic_group_category(2);
  FinUniverseCategory uc = bg_uc(bg, "g", "g");
  CCBuild<FinUniverseCategory> b = build_csystem(uc, 3);
  for (const auto& [key, e] : b.cc.q) {
    MorphismId f{key.first};
    REQUIRE(b.cc.length[e.fstar.v] ==
            b.cc.length[b.cc.cat.dom(f).v] + 1);
    REQUIRE(b.cc.ft[e.fstar.v] == b.cc.cat.dom(f));
  }
}

TEST_CASE("s is the unique mediator: re-filtering finds no second solution",
          "[ccbuild]") {
  FinCategory bg = make_cyclic_group_category(2);
  FinUniverseCategory uc = bg_uc(bg, "e", "e");
  CCBuild<FinUniverseCategory> b = build_csystem(uc, 2);
  for (const auto& [fv, sf] : b.cc.s) {
    MorphismId f{fv};
    ObjectId gamma = b.cc.cat.cod(f);
    MorphismId fp = b.cc.cat.compose(f, b.cc.p[gamma.v]);
    const auto& qe = b.cc.q_at(fp, gamma);
    // the two defining equations, then uniqueness over the whole hom-set
    REQUIRE(b.cc.cat.compose(sf, b.cc.p[qe.fstar.v]) ==
            b.cc.cat.identity(b.cc.cat.dom(f)));
    REQUIRE(b.cc.cat.compose(sf, qe.q) == f);
    int solutions = 0;
    for (MorphismId h : b.cc.cat.hom(b.cc.cat.dom(f), qe.fstar))
      if (b.cc.cat.compose(h, b.cc.p[qe.fstar.v]) ==
              b.cc.cat.identity(b.cc.cat.dom(f)) &&
          b.cc.cat.compose(h, qe.q) == f)
        ++solutions;
    REQUIRE(solutions == 1);
  }
}

TEST_CASE("depth is a hard bound: no objects beyond it", "[ccbuild]") {
  FinCategory bg = make_cyclic_group_category(2);
  FinUniverseCategory uc = bg_uc(bg, "e", "e");
  CCBuild<FinUniverseCategory> b = build_csystem(uc, 2);
  for (ObjectId x : b.cc.cat.objects()) REQUIRE(b.cc.length[x.v] <= 2);
  REQUIRE_THROWS_AS(build_levels(uc, -1), PreconditionError);
}

TEST_CASE("builds are reproducible across runs", "[ccbuild]") {
  FinCategory bg = make_cyclic_group_category(2);
  FinUniverseCategory uc = bg_uc(bg, "g", "e");
  CCBuild<FinUniverseCategory> a = build_csystem(uc, 3);
  CCBuild<FinUniverseCategory> b = build_csystem(uc, 3);
  REQUIRE(a.cc.cat.object_count() == b.cc.cat.object_count());
  for (ObjectId x : a.cc.cat.objects())
    REQUIRE(a.cc.cat.object_name(x) == b.cc.cat.object_name(x));
  REQUIRE(a.cc.q == b.cc.q);
  REQUIRE(a.cc.s == b.cc.s);
}
