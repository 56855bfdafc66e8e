#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csys/core.hpp"
#include "csys/csystem.hpp"
#include "csys/universe.hpp"

namespace csys {

// The truncated C-system CC(C,p) materialized from a universe category,
// together with the embedding data: the tower behind each object, the
// ambient interpretation of each object and morphism, and the level table.
// Objects carry their length explicitly, so the one-point ambient still
// yields depth+1 distinct objects even though int collapses them.
template <typename UC>
struct CCBuild {
  using Cat = typename UC::Cat;
  using AObj = typename Cat::Object;
  using AMor = typename Cat::Morphism;

  const UC* uc = nullptr;
  TruncCSystem cc;
  std::vector<std::vector<ObjectId>> levels;   // per length
  std::vector<ObjectId> parent;                // per object (pt -> pt)
  std::vector<AMor> choice;                    // per object, last tower entry
  std::vector<AObj> int_obj;                   // per object
  std::vector<AMor> int_mor;                   // per morphism
  std::vector<std::uint32_t> choice_index;     // index of choice in Hom(int ft, U)

  // Locates the level-(l(parent)+1) object with the given parent and
  // choice morphism.
  ObjectId find_child(ObjectId par, const AMor& f) const {
    const int l = cc.length[par.v] + 1;
    for (ObjectId x : levels[static_cast<std::size_t>(l)])
      if (parent[x.v] == par && choice[x.v] == f) return x;
    throw StructuralError("find_child: no tower object for the given choice");
  }

  // The CC-morphism over an ambient morphism between interpreted objects.
  MorphismId find_morphism(ObjectId from, ObjectId to, const AMor& a) const {
    for (MorphismId m : cc.cat.hom(from, to))
      if (int_mor[m.v] == a) return m;
    throw StructuralError("find_morphism: ambient morphism not in hom table");
  }
};

// The inductive levels: Ob_0 = {tt} interpreted as the base point, and
// Ob_{n+1} glues one morphism int_n(A) -> U onto each A, interpreted
// through the chosen squares. Enumeration order is the ambient hom order,
// so tower identity is reproducible across runs.
template <UniverseCategoryC UC>
CCBuild<UC> build_levels(const UC& uc, int depth) {
  if (depth < 0) throw PreconditionError("build_levels: depth must be >= 0");
  CCBuild<UC> out;
  out.uc = &uc;
  TruncCSystem& cc = out.cc;
  cc.depth = depth;

  ObjectId pt = cc.cat.add_object("[]");
  cc.length.push_back(0);
  out.parent.push_back(pt);
  out.choice.push_back(uc.p());  // placeholder, never read for pt
  out.choice_index.push_back(0);
  out.int_obj.push_back(uc.base_point());
  out.levels.push_back({pt});
  cc.pt = pt;

  for (int n = 0; n < depth; ++n) {
    std::vector<ObjectId> next;
    for (ObjectId a : out.levels[static_cast<std::size_t>(n)]) {
      auto homs = uc.cat().hom(out.int_obj[a.v], uc.u_object());
      std::uint32_t k = 0;
      for (const auto& f : homs) {
        if (!uc.has_square(f))
          throw PreconditionError(
              "build_levels: missing canonical square inside the bound");
        auto sq = uc.square(f);
        std::string name = cc.cat.object_name(a);
        name.insert(name.size() - 1, (n == 0 ? txt(k) : txt(",", k)));
        ObjectId nx = cc.cat.add_object(name);
        cc.length.push_back(n + 1);
        out.parent.push_back(a);
        out.choice.push_back(f);
        out.choice_index.push_back(k);
        out.int_obj.push_back(sq.total);
        next.push_back(nx);
        ++k;
      }
    }
    out.levels.push_back(std::move(next));
  }
  cc.ft = out.parent;
  return out;
}

// Fills in morphisms (hom-sets are ambient hom-sets through int), the
// p-projections and the q-table. The result satisfies the C0 axioms.
template <UniverseCategoryC UC>
void build_cc0(CCBuild<UC>& b) {
  TruncCSystem& cc = b.cc;
  const UC& uc = *b.uc;
  const auto& amb = uc.cat();

  for (ObjectId x : cc.cat.objects()) {
    for (ObjectId y : cc.cat.objects()) {
      auto homs = amb.hom(b.int_obj[x.v], b.int_obj[y.v]);
      std::uint32_t k = 0;
      for (const auto& a : homs) {
        cc.cat.add_morphism(
            txt(cc.cat.object_name(x), "->", cc.cat.object_name(y), "#", k),
            x, y);
        b.int_mor.push_back(a);
        ++k;
      }
    }
  }
  // identities and composition through the ambient category
  {
    std::uint32_t m = 0;
    std::vector<std::vector<MorphismId>> by_pair(cc.cat.object_count() *
                                                 cc.cat.object_count());
    for (; m < cc.cat.morphism_count(); ++m) {
      MorphismId mm{m};
      by_pair[cc.cat.dom(mm).v * cc.cat.object_count() + cc.cat.cod(mm).v]
          .push_back(mm);
    }
    auto locate = [&](ObjectId x, ObjectId y,
                      const typename UC::Cat::Morphism& a) -> MorphismId {
      for (MorphismId mm : by_pair[x.v * cc.cat.object_count() + y.v])
        if (b.int_mor[mm.v] == a) return mm;
      throw StructuralError("build_cc0: ambient morphism missing from table");
    };
    for (ObjectId x : cc.cat.objects())
      cc.cat.set_identity(x, locate(x, x, amb.identity(b.int_obj[x.v])));
    for (MorphismId f : cc.cat.morphisms())
      for (MorphismId g : cc.cat.morphisms()) {
        if (cc.cat.cod(f) != cc.cat.dom(g)) continue;
        cc.cat.set_composite(
            f, g,
            locate(cc.cat.dom(f), cc.cat.cod(g),
                   amb.compose(b.int_mor[f.v], b.int_mor[g.v])));
      }
  }
  cc.cat.finalize();

  // p-projections
  for (ObjectId x : cc.cat.objects()) {
    if (cc.length[x.v] == 0) {
      cc.p.push_back(cc.cat.identity(x));
    } else {
      auto sq = uc.square(b.choice[x.v]);
      cc.p.push_back(b.find_morphism(x, cc.ft[x.v], sq.proj));
    }
  }

  // q-table: f*(n+1,(B,F)) = (m+1,(A, int(f)∘F)), q = Q(int(f), F)
  for (ObjectId gamma : cc.cat.objects()) {
    if (cc.length[gamma.v] == 0) continue;
    ObjectId base = cc.ft[gamma.v];
    const auto& F = b.choice[gamma.v];
    for (ObjectId gp : cc.cat.objects()) {
      if (cc.length[gp.v] + 1 > cc.depth) continue;
      for (MorphismId f : cc.cat.hom(gp, base)) {
        const auto& a = b.int_mor[f.v];
        ObjectId fstar = b.find_child(gp, amb.compose(a, F));
        auto qrel = q_relative(uc, a, F);
        MorphismId qm = b.find_morphism(fstar, gamma, qrel);
        cc.q[{f.v, gamma.v}] = TruncCSystem::QEntry{fstar, qm};
      }
    }
  }
}

// The unique extension to a C-system: int(s_f) is the pairing of
// id_{int Γ'} with int(f)∘Q(F) into the canonical square of int(f∘p_Γ)∘F.
// Each canonical square is pullback-checked here, since the extension is
// exactly what those pullbacks guarantee.
template <UniverseCategoryC UC>
void extend_to_csystem(CCBuild<UC>& b) {
  TruncCSystem& cc = b.cc;
  const UC& uc = *b.uc;
  const auto& amb = uc.cat();

  for (ObjectId x : cc.cat.objects()) {
    if (cc.length[x.v] == 0) continue;
    auto sq = uc.square(b.choice[x.v]);
    if (!amb.is_pullback(sq.as_square(uc.p())))
      throw PullbackError(
          txt("extend_to_csystem: canonical square for tower ",
              cc.cat.object_name(x), " is not a pullback"));
  }

  for (ObjectId gamma : cc.cat.objects()) {
    if (cc.length[gamma.v] == 0) continue;
    const auto& F = b.choice[gamma.v];
    auto sqF = uc.square(F);
    for (ObjectId gp : cc.cat.objects()) {
      if (cc.length[gp.v] + 1 > cc.depth) continue;
      for (MorphismId f : cc.cat.hom(gp, gamma)) {
        MorphismId fp = cc.cat.compose(f, cc.p[gamma.v]);
        const auto& e = cc.q_at(fp, gamma);
        auto leg = amb.compose(b.int_mor[f.v], sqF.q_top);
        auto sf_amb = pair_into_square(uc, amb.compose(b.int_mor[fp.v], F),
                                       amb.identity(b.int_obj[gp.v]), leg);
        cc.s[f.v] = b.find_morphism(gp, e.fstar, sf_amb);
      }
    }
  }
  cc.has_s = true;
}

template <UniverseCategoryC UC>
CCBuild<UC> build_csystem(const UC& uc, int depth) {
  CCBuild<UC> b = build_levels(uc, depth);
  build_cc0(b);
  extend_to_csystem(b);
  return b;
}

}  // namespace csys
