#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csys/ccbuild.hpp"
#include "csys/core.hpp"
#include "csys/csystem.hpp"
#include "csys/presheaf.hpp"
#include "csys/ucfunctor.hpp"
#include "csys/universe.hpp"

namespace csys {

// The presheaves Ob₁ and Õb₁ over the length-<=N full subcategory of a
// truncated C-system, together with the boundary ∂ : Õb₁ -> Ob₁. Building
// them consumes data one level above the base, so the source system must
// carry headroom.
struct Ob1Data {
  const TruncCSystem* cc = nullptr;
  int trunc_depth = 0;
  std::shared_ptr<FinCategory> base;  // the length-<=N full subcategory
  std::vector<ObjectId> base_to_cc;
  std::vector<std::optional<ObjectId>> cc_to_base;
  std::vector<MorphismId> base_mor_to_cc;
  std::vector<std::optional<MorphismId>> cc_mor_to_base;

  FinPresheaf ob1;
  FinPresheaf ob1_tilde;
  PresheafMorphism boundary;
  std::vector<std::vector<ObjectId>> ob1_elems;     // per base object
  std::vector<std::vector<MorphismId>> ob1t_elems;  // per base object

  std::uint32_t ob1_index(ObjectId base_obj, ObjectId cc_delta) const {
    const auto& es = ob1_elems[base_obj.v];
    for (std::uint32_t i = 0; i < es.size(); ++i)
      if (es[i] == cc_delta) return i;
    throw StructuralError("ob1_index: object is not an element of Ob₁ here");
  }
  std::uint32_t ob1t_index(ObjectId base_obj, MorphismId section) const {
    const auto& es = ob1t_elems[base_obj.v];
    for (std::uint32_t i = 0; i < es.size(); ++i)
      if (es[i] == section) return i;
    throw StructuralError("ob1t_index: morphism is not a section here");
  }
};

inline Ob1Data build_ob1_presheaves(const TruncCSystem& cc, int trunc_depth) {
  if (cc.depth < trunc_depth + 1)
    throw PreconditionError(
        txt("build_ob1_presheaves: depth ", trunc_depth, " requires the system "
            "built to depth >= ", trunc_depth + 1, " (got ", cc.depth, ")"));
  if (!cc.has_s)
    throw PreconditionError("build_ob1_presheaves: s-structure required");
  Ob1Data out;
  out.cc = &cc;
  out.trunc_depth = trunc_depth;
  out.base = std::make_shared<FinCategory>();
  FinCategory& b = *out.base;

  out.cc_to_base.assign(cc.cat.object_count(), std::nullopt);
  out.cc_mor_to_base.assign(cc.cat.morphism_count(), std::nullopt);
  for (ObjectId x : cc.cat.objects()) {
    if (cc.length[x.v] > trunc_depth) continue;
    out.cc_to_base[x.v] = b.add_object(cc.cat.object_name(x));
    out.base_to_cc.push_back(x);
  }
  for (MorphismId m : cc.cat.morphisms()) {
    auto dm = out.cc_to_base[cc.cat.dom(m).v];
    auto cm = out.cc_to_base[cc.cat.cod(m).v];
    if (!dm || !cm) continue;
    out.cc_mor_to_base[m.v] =
        b.add_morphism(cc.cat.morphism_name(m), *dm, *cm);
    out.base_mor_to_cc.push_back(m);
  }
  for (ObjectId x : cc.cat.objects()) {
    if (!out.cc_to_base[x.v]) continue;
    b.set_identity(*out.cc_to_base[x.v],
                   *out.cc_mor_to_base[cc.cat.identity(x).v]);
  }
  for (MorphismId f : cc.cat.morphisms()) {
    if (!out.cc_mor_to_base[f.v]) continue;
    for (MorphismId g : cc.cat.morphisms()) {
      if (!out.cc_mor_to_base[g.v] || !cc.cat.composable(f, g)) continue;
      b.set_composite(*out.cc_mor_to_base[f.v], *out.cc_mor_to_base[g.v],
                      *out.cc_mor_to_base[cc.cat.compose(f, g).v]);
    }
  }
  b.finalize();

  out.ob1.base = out.base.get();
  out.ob1_tilde.base = out.base.get();
  out.ob1.values.resize(b.object_count());
  out.ob1_tilde.values.resize(b.object_count());
  out.ob1_elems.resize(b.object_count());
  out.ob1t_elems.resize(b.object_count());
  for (std::uint32_t i = 0; i < b.object_count(); ++i) {
    ObjectId g = out.base_to_cc[i];
    out.ob1_elems[i] = cc.over(g);
    for (ObjectId d : out.ob1_elems[i])
      out.ob1.values[i].push_back(cc.cat.object_name(d));
    out.ob1t_elems[i] = cc.sections_over(g);
    for (MorphismId s : out.ob1t_elems[i])
      out.ob1_tilde.values[i].push_back(cc.cat.morphism_name(s));
  }
  out.ob1.restrictions.resize(b.morphism_count());
  out.ob1_tilde.restrictions.resize(b.morphism_count());
  for (std::uint32_t i = 0; i < b.morphism_count(); ++i) {
    MorphismId fc = out.base_mor_to_cc[i];
    ObjectId src = b.dom(MorphismId{i});
    ObjectId tgt = b.cod(MorphismId{i});
    for (ObjectId d : out.ob1_elems[tgt.v])
      out.ob1.restrictions[i].push_back(
          out.ob1_index(src, cc.q_at(fc, d).fstar));
    for (MorphismId s : out.ob1t_elems[tgt.v])
      out.ob1_tilde.restrictions[i].push_back(
          out.ob1t_index(src, cc.s_at(cc.cat.compose(fc, s))));
  }

  out.boundary.source = out.ob1_tilde;
  out.boundary.target = out.ob1;
  out.boundary.components.resize(b.object_count());
  for (std::uint32_t i = 0; i < b.object_count(); ++i)
    for (MorphismId s : out.ob1t_elems[i])
      out.boundary.components[i].push_back(
          out.ob1_index(ObjectId{i}, cc.cat.cod(s)));
  return out;
}

inline Report check_ob1_presheaves(const Ob1Data& d) {
  Report rep;
  rep.merge(validate_presheaf(d.ob1));
  rep.merge(validate_presheaf(d.ob1_tilde));
  rep.merge(validate_presheaf_morphism(d.boundary));
  return rep;
}

// δ(Δ) = s_{id_Δ} : Δ -> p_Δ*(Δ), the diagonal section.
inline MorphismId diagonal_section(const TruncCSystem& cc, ObjectId delta) {
  if (cc.length[delta.v] == 0)
    throw PreconditionError("diagonal_section: length must be positive");
  if (cc.length[delta.v] + 1 > cc.depth)
    throw PreconditionError(
        txt("diagonal_section: needs depth >= ", cc.length[delta.v] + 1,
            " (got ", cc.depth, ")"));
  return cc.s_at(cc.cat.identity(delta));
}

// The representable Hom(-, target) restricted to the base, for targets
// possibly one level above it.
inline FinPresheaf hom_into_presheaf(const Ob1Data& d, ObjectId cc_target) {
  const TruncCSystem& cc = *d.cc;
  const FinCategory& b = *d.base;
  FinPresheaf p;
  p.base = &b;
  p.values.resize(b.object_count());
  std::vector<std::vector<MorphismId>> elems(b.object_count());
  for (std::uint32_t i = 0; i < b.object_count(); ++i) {
    for (MorphismId h : cc.cat.hom(d.base_to_cc[i], cc_target)) {
      elems[i].push_back(h);
      p.values[i].push_back(cc.cat.morphism_name(h));
    }
  }
  p.restrictions.resize(b.morphism_count());
  for (std::uint32_t i = 0; i < b.morphism_count(); ++i) {
    MorphismId fc = d.base_mor_to_cc[i];
    ObjectId src = b.dom(MorphismId{i});
    ObjectId tgt = b.cod(MorphismId{i});
    for (MorphismId h : elems[tgt.v]) {
      MorphismId fh = cc.cat.compose(fc, h);
      std::uint32_t idx = 0;
      while (elems[src.v][idx] != fh) ++idx;
      p.restrictions[i].push_back(idx);
    }
  }
  return p;
}

// Yo on morphisms between possibly-headroom objects: postcomposition.
inline PresheafMorphism hom_into_postcompose(const Ob1Data& d, MorphismId m) {
  const TruncCSystem& cc = *d.cc;
  ObjectId a = cc.cat.dom(m), b_obj = cc.cat.cod(m);
  PresheafMorphism out;
  out.source = hom_into_presheaf(d, a);
  out.target = hom_into_presheaf(d, b_obj);
  out.components.resize(d.base->object_count());
  for (std::uint32_t i = 0; i < d.base->object_count(); ++i) {
    const auto& into_b = cc.cat.hom(d.base_to_cc[i], b_obj);
    for (MorphismId h : cc.cat.hom(d.base_to_cc[i], a)) {
      MorphismId hm = cc.cat.compose(h, m);
      std::uint32_t idx = 0;
      while (into_b[idx] != hm) ++idx;
      out.components[i].push_back(idx);
    }
  }
  return out;
}

// v_Γ(Δ) : Yo(Γ) -> Ob₁ for Δ ∈ Ob₁(Γ).
inline PresheafMorphism v_of(const Ob1Data& d, ObjectId cc_gamma,
                             ObjectId cc_delta) {
  ObjectId bg = *d.cc_to_base[cc_gamma.v];
  std::uint32_t idx = d.ob1_index(bg, cc_delta);
  PresheafMorphism m = section_to_morphism(d.ob1, bg, idx);
  // rebase the source onto the headroom-aware representable (identical
  // tables; hom_into_presheaf names match the base yoneda)
  m.source = hom_into_presheaf(d, cc_gamma);
  return m;
}

// ṽ(s) : Yo(∂-target of Γ) -> Õb₁ for a section s over a possibly-headroom
// object: g |-> g*(s) = s_{g∘s}.
inline PresheafMorphism v_tilde_of(const Ob1Data& d, MorphismId section) {
  const TruncCSystem& cc = *d.cc;
  ObjectId gamma = cc.cat.dom(section);  // s : Γ -> Δ
  PresheafMorphism out;
  out.source = hom_into_presheaf(d, gamma);
  out.target = d.ob1_tilde;
  out.components.resize(d.base->object_count());
  for (std::uint32_t i = 0; i < d.base->object_count(); ++i) {
    for (MorphismId g : cc.cat.hom(d.base_to_cc[i], gamma)) {
      MorphismId pulled = cc.s_at(cc.cat.compose(g, section));
      out.components[i].push_back(d.ob1t_index(ObjectId{i}, pulled));
    }
  }
  return out;
}

// The square of the Yoneda pullback lemma at (Γ, Δ): the map
// g |-> (g∘p_Δ, g*(δ(Δ))) must biject Hom(Γ', Δ) with the fiber product of
// v(Δ) and ∂ at every base object Γ'. Also asserts g*(δ(Δ)) = s_g, i.e.
// the presheaf route agrees with the stored section table.
inline bool check_yoneda_square(const Ob1Data& d, ObjectId cc_gamma,
                                ObjectId cc_delta, std::string* why = nullptr) {
  const TruncCSystem& cc = *d.cc;
  if (cc.ft[cc_delta.v] != cc_gamma ||
      cc.length[cc_delta.v] != cc.length[cc_gamma.v] + 1)
    throw PreconditionError("check_yoneda_square: Δ is not over Γ");
  MorphismId delta_sec = diagonal_section(cc, cc_delta);
  for (std::uint32_t i = 0; i < d.base->object_count(); ++i) {
    ObjectId gp = d.base_to_cc[i];
    // target fiber: pairs (f : Γ' -> Γ, s section over Γ') with
    // ∂(s) = f*(Δ)
    std::vector<std::pair<MorphismId, MorphismId>> fiber;
    for (MorphismId f : cc.cat.hom(gp, cc_gamma))
      for (MorphismId s : d.ob1t_elems[i])
        if (cc.cat.cod(s) == cc.q_at(f, cc_delta).fstar)
          fiber.emplace_back(f, s);
    std::vector<bool> hit(fiber.size(), false);
    const auto& gs = cc.cat.hom(gp, cc_delta);
    if (gs.size() != fiber.size()) {
      if (why)
        *why = txt("at ", cc.cat.object_name(gp), ": |Hom| = ", gs.size(),
                   " but fiber has ", fiber.size());
      return false;
    }
    for (MorphismId g : gs) {
      MorphismId ft_g = cc.cat.compose(g, cc.p[cc_delta.v]);
      MorphismId via_delta = cc.s_at(cc.cat.compose(g, delta_sec));
      MorphismId s_g = cc.s_at(g);
      if (via_delta != s_g) {
        if (why)
          *why = txt("g*(δ(Δ)) != s_g at g = ", cc.cat.morphism_name(g));
        return false;
      }
      bool found = false;
      for (std::size_t k = 0; k < fiber.size(); ++k)
        if (fiber[k] == std::make_pair(ft_g, s_g)) {
          if (hit[k]) {
            if (why)
              *why = txt("pair hit twice at g = ", cc.cat.morphism_name(g));
            return false;
          }
          hit[k] = true;
          found = true;
          break;
        }
      if (!found) {
        if (why)
          *why = txt("image of g = ", cc.cat.morphism_name(g),
                     " is outside the fiber");
        return false;
      }
    }
  }
  return true;
}

// γ_Δ : (Yo(Γ); v(Δ)) -> Yo(Δ), the unique comparison of the standard
// fiber product with the representable one, verified invertible.
inline PresheafMorphism gamma_iso(const Ob1Data& d, ObjectId cc_gamma,
                                  ObjectId cc_delta,
                                  std::uint64_t budget = 1000000) {
  std::string why;
  if (!check_yoneda_square(d, cc_gamma, cc_delta, &why))
    throw PreconditionError(
        txt("gamma_iso: Yoneda square fails at (",
            d.cc->cat.object_name(cc_gamma), ", ",
            d.cc->cat.object_name(cc_delta), "): ", why));
  PresheafCat pc(d.base.get(), budget);
  PresheafMorphism v = v_of(d, cc_gamma, cc_delta);
  PresheafPullback std_pb = presheaf_pullback(v, d.boundary);
  MorphismId delta_sec = diagonal_section(*d.cc, cc_delta);
  PresheafMorphism proj1 = hom_into_postcompose(d, d.cc->p[cc_delta.v]);
  PresheafMorphism proj2 = v_tilde_of(d, delta_sec);
  PresheafMorphism g =
      unique_mediator(pc, proj1, proj2, std_pb.proj1, std_pb.proj2);
  if (!presheaf_morphism_is_iso(g))
    throw PullbackError(txt("gamma_iso: mediator at (",
                            d.cc->cat.object_name(cc_gamma), ", ",
                            d.cc->cat.object_name(cc_delta),
                            ") is not invertible"));
  return g;
}

// ---------------------------------------------------------------------------
// Reconstruction through presheaves: assemble (I = Yo, u = v, γ), hand it
// to the section-data construction, and classify the resulting
// homomorphism cc|_N -> CC(PreShv(cc|_N), ∂).

struct PresheafReconstruction {
  std::shared_ptr<Ob1Data> data;
  std::shared_ptr<PresheafUniverseCategory> uc;
  std::shared_ptr<CCBuild<PresheafUniverseCategory>> cct;
  std::shared_ptr<SectionData<PresheafUniverseCategory>> sd;
  SectionHomResult<PresheafUniverseCategory> hom;
  Report yoneda_squares;
  Report conditions;
  Report hom_check;
  ClassifyResult classification;

  bool ok() const {
    return yoneda_squares.ok() && conditions.ok() && hom_check.ok() &&
           classification.direct == HomClass::isomorphism;
  }
};

inline PresheafReconstruction reconstruct_via_presheaves(
    const TruncCSystem& cc, int trunc_depth, std::uint64_t budget = 1000000) {
  if (cc.depth < trunc_depth + 2)
    throw PreconditionError(
        txt("reconstruct_via_presheaves: depth ", trunc_depth,
            " requires the system built to depth >= ", trunc_depth + 2,
            " (got ", cc.depth, ")"));
  PresheafReconstruction out;
  out.data = std::make_shared<Ob1Data>(build_ob1_presheaves(cc, trunc_depth));
  const Ob1Data& d = *out.data;
  {
    Report r = check_ob1_presheaves(d);
    if (!r.ok())
      throw StructuralError(txt("reconstruct_via_presheaves: presheaf laws "
                                "fail: ", r.violations.front()));
  }

  for (std::uint32_t i = 0; i < d.base->object_count(); ++i) {
    ObjectId g = d.base_to_cc[i];
    for (ObjectId delta : d.ob1_elems[i]) {
      ++out.yoneda_squares.checked;
      std::string why;
      if (!check_yoneda_square(d, g, delta, &why))
        out.yoneda_squares.fail(txt("Yoneda square fails at (",
                                    cc.cat.object_name(g), ", ",
                                    cc.cat.object_name(delta), "): ", why));
    }
  }

  out.uc = std::make_shared<PresheafUniverseCategory>(
      d.base.get(), d.boundary, hom_into_presheaf(d, cc.pt), budget);
  out.cct = std::make_shared<CCBuild<PresheafUniverseCategory>>(
      build_csystem(*out.uc, trunc_depth));

  auto sd = std::make_shared<SectionData<PresheafUniverseCategory>>();
  sd->cc = &cc;
  sd->trunc_depth = trunc_depth;
  sd->target = out.uc.get();
  sd->i_obj.resize(cc.cat.object_count());
  sd->i_mor.resize(cc.cat.morphism_count());
  sd->u.resize(cc.cat.object_count());
  sd->gamma.resize(cc.cat.object_count());
  for (ObjectId x : cc.cat.objects()) {
    if (cc.length[x.v] > trunc_depth + 1) continue;
    sd->i_obj[x.v] = hom_into_presheaf(d, x);
  }
  for (MorphismId m : cc.cat.morphisms()) {
    if (cc.length[cc.cat.dom(m).v] > trunc_depth + 1 ||
        cc.length[cc.cat.cod(m).v] > trunc_depth + 1)
      continue;
    sd->i_mor[m.v] = hom_into_postcompose(d, m);
  }
  for (ObjectId delta : cc.cat.objects()) {
    int l = cc.length[delta.v];
    if (l < 1 || l > trunc_depth + 1) continue;
    ObjectId g = cc.ft[delta.v];
    sd->u[delta.v] = v_of(d, g, delta);
    sd->gamma[delta.v] = gamma_iso(d, g, delta, budget);
  }
  out.sd = sd;

  out.conditions = verify_section_data(*sd);
  if (!out.conditions.ok() || !out.yoneda_squares.ok()) return out;

  out.hom = hom_from_section_data(*sd, *out.cct);
  out.hom_check = check_homomorphism(out.hom.hom);
  out.classification = classify_with_hypotheses(
      out.hom.hom, trunc_depth, section_data_hypotheses(*sd));
  return out;
}

// ---------------------------------------------------------------------------
// Reconstruction through the tower category: C₀ = {pt, U, Ũ} realized as
// presheaves, C_{n+1} glues presheaf morphisms into Ob₁, hom-sets are
// inherited through the fully faithful realization Φ. The universe on the
// tower p is the one Φ maps to the standard squares.

struct TowerReconstruction {
  std::shared_ptr<FinCategory> tower_cat;
  std::vector<std::size_t> level_sizes;  // |C_0|, |C_1|, ...
  std::shared_ptr<std::vector<FinPresheaf>> realization;  // Φ per tower object
  std::shared_ptr<std::vector<PresheafMorphism>> realization_mor;
  std::shared_ptr<FinUniverseCategory> tower_uc;
  std::shared_ptr<CCBuild<FinUniverseCategory>> cc_tower;
  std::shared_ptr<UCFunctor<PresheafUniverseCategory>> phi;
  Report phi_check;
  CSystemHom tower_to_presheaf;  // H(Φ, id, id), an isomorphism
  CSystemHom composite;          // cc|_N -> CC(C_tower, p)
  Report composite_check;
  bool composite_iso = false;
};

inline TowerReconstruction reconstruct_via_towers(
    const PresheafReconstruction& pre, std::uint64_t budget = 1000000) {
  const Ob1Data& d = *pre.data;
  const int depth = pre.cct->cc.depth;
  TowerReconstruction out;
  out.tower_cat = std::make_shared<FinCategory>();
  out.realization = std::make_shared<std::vector<FinPresheaf>>();
  out.realization_mor = std::make_shared<std::vector<PresheafMorphism>>();
  FinCategory& tc = *out.tower_cat;
  std::vector<FinPresheaf>& phi_obj = *out.realization;

  // levels
  std::vector<std::uint32_t> parent;  // tower index of the parent
  phi_obj.push_back(pre.uc->base_point());
  tc.add_object("pt");
  phi_obj.push_back(d.ob1);
  tc.add_object("U");
  phi_obj.push_back(d.ob1_tilde);
  tc.add_object("Ut");
  parent.assign(3, 0);
  out.level_sizes.push_back(3);
  std::vector<std::vector<std::uint32_t>> levels{{0, 1, 2}};
  for (int n = 0; n < depth; ++n) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t x : levels.back()) {
      auto homs = enumerate_presheaf_morphisms(phi_obj[x], d.ob1, budget);
      std::uint32_t k = 0;
      for (const auto& f : homs) {
        next.push_back(static_cast<std::uint32_t>(phi_obj.size()));
        tc.add_object(txt(tc.object_name(ObjectId{x}), ".", k));
        phi_obj.push_back(presheaf_pullback(f, d.boundary).object);
        parent.push_back(x);
        ++k;
      }
    }
    out.level_sizes.push_back(next.size());
    levels.push_back(std::move(next));
  }

  // morphisms: Hom_C((m,X),(n,Y)) = Hom_PreShv(Φ(X), Φ(Y))
  std::vector<PresheafMorphism>& phi_mor = *out.realization_mor;
  std::vector<std::vector<MorphismId>> by_pair(phi_obj.size() *
                                               phi_obj.size());
  for (std::uint32_t i = 0; i < phi_obj.size(); ++i) {
    for (std::uint32_t j = 0; j < phi_obj.size(); ++j) {
      auto homs = enumerate_presheaf_morphisms(phi_obj[i], phi_obj[j], budget);
      std::uint32_t k = 0;
      for (auto& f : homs) {
        MorphismId mid = tc.add_morphism(txt("t", i, ":", j, "#", k),
                                         ObjectId{i}, ObjectId{j});
        by_pair[i * phi_obj.size() + j].push_back(mid);
        phi_mor.push_back(std::move(f));
        ++k;
      }
    }
  }
  auto locate = [&](ObjectId x, ObjectId y,
                    const PresheafMorphism& f) -> MorphismId {
    for (MorphismId m : by_pair[x.v * phi_obj.size() + y.v])
      if (phi_mor[m.v] == f) return m;
    throw StructuralError("tower: presheaf morphism not found in hom table");
  };
  for (std::uint32_t i = 0; i < phi_obj.size(); ++i)
    tc.set_identity(ObjectId{i},
                    locate(ObjectId{i}, ObjectId{i},
                           identity_presheaf_morphism(phi_obj[i])));
  for (std::uint32_t f = 0; f < tc.morphism_count(); ++f)
    for (std::uint32_t g = 0; g < tc.morphism_count(); ++g) {
      MorphismId mf{f}, mg{g};
      if (tc.cod(mf) != tc.dom(mg)) continue;
      tc.set_composite(mf, mg,
                       locate(tc.dom(mf), tc.cod(mg),
                              compose_presheaf_morphisms(phi_mor[f],
                                                         phi_mor[g])));
    }
  tc.finalize();

  // the universe morphism and its (truncation-partial) squares
  MorphismId p_tower = locate(ObjectId{2}, ObjectId{1}, d.boundary);
  std::map<MorphismId, CanonicalSquareT<FinCategory>> squares;
  std::vector<int> level_of(phi_obj.size());
  for (std::size_t n = 0; n < levels.size(); ++n)
    for (std::uint32_t x : levels[n]) level_of[x] = static_cast<int>(n);
  for (std::uint32_t m = 0; m < tc.morphism_count(); ++m) {
    MorphismId mm{m};
    if (tc.cod(mm) != ObjectId{1}) continue;  // not into U
    std::uint32_t x = tc.dom(mm).v;
    if (level_of[x] + 1 > depth) continue;   // outside the truncation
    PresheafPullback pb = presheaf_pullback(phi_mor[m], d.boundary);
    // locate the child object (level_of[x]+1, (x, F))
    std::optional<std::uint32_t> child;
    for (std::uint32_t c :
         levels[static_cast<std::size_t>(level_of[x] + 1)])
      if (parent[c] == x && phi_obj[c] == pb.object) child = c;
    if (!child)
      throw StructuralError("tower: missing level object for a choice");
    squares[mm] = CanonicalSquareT<FinCategory>{
        ObjectId{*child}, locate(ObjectId{*child}, ObjectId{x}, pb.proj1),
        locate(ObjectId{*child}, ObjectId{2}, pb.proj2), mm};
  }
  out.tower_uc = std::make_shared<FinUniverseCategory>(
      make_fin_universe_category(tc, p_tower, std::move(squares), ObjectId{0},
                                 /*allow_partial=*/true));
  out.cc_tower = std::make_shared<CCBuild<FinUniverseCategory>>(
      build_csystem(*out.tower_uc, depth));

  // Φ with identity comparisons is a universe category functor into
  // (PreShv(base), ∂)
  auto fn = std::make_shared<UCFunctor<PresheafUniverseCategory>>();
  fn->source = out.tower_uc.get();
  fn->target = pre.uc.get();
  for (std::uint32_t i = 0; i < phi_obj.size(); ++i)
    fn->on_objects.push_back(phi_obj[i]);
  for (std::uint32_t m = 0; m < tc.morphism_count(); ++m)
    fn->on_morphisms.push_back(phi_mor[m]);
  fn->phi_u = identity_presheaf_morphism(d.ob1);
  fn->phi_u_tilde = identity_presheaf_morphism(d.ob1_tilde);
  out.phi = fn;
  out.phi_check = validate_uc_functor(*fn);
  if (!out.phi_check.ok()) return out;

  TranslationData<PresheafUniverseCategory> tr =
      build_translation(*fn, *out.cc_tower, *pre.cct);
  out.tower_to_presheaf = hom_from_uc_functor(*fn, *out.cc_tower, *pre.cct, tr);
  CSystemHom inv = invert_iso_homomorphism(out.tower_to_presheaf);
  out.composite = compose_homomorphisms(pre.hom.hom, inv);
  out.composite_check = check_homomorphism(out.composite);
  out.composite_iso = check_iso_on_truncation(out.composite, depth).ok;
  return out;
}

}  // namespace csys
