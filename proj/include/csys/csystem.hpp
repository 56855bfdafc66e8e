#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csys/core.hpp"
#include "csys/fincat.hpp"

namespace csys {

// A length-truncated C-system as first-class data. The underlying category
// is an ordinary FinCategory; on top of it live the length/ft/pt structure,
// the canonical projections p, the base-change table q and (optionally) the
// section table s. Every table is total on in-bound instances: an operation
// instance is in bound exactly when every object it mentions has length
// <= depth. Out-of-bound instances are absent, never guessed.
struct TruncCSystem {
  struct QEntry {
    ObjectId fstar;  // f*(Γ)
    MorphismId q;    // q(f,Γ) : f*(Γ) -> Γ
    bool operator==(const QEntry&) const = default;
  };

  int depth = 0;
  FinCategory cat;
  std::vector<int> length;       // per object
  std::vector<ObjectId> ft;      // per object, ft(pt) = pt
  ObjectId pt{0};
  std::vector<MorphismId> p;     // per object; p[pt] = id
  std::map<std::pair<std::uint32_t, std::uint32_t>, QEntry> q;  // (f, Γ)
  std::map<std::uint32_t, MorphismId> s;                        // by f
  bool has_s = false;

  bool has_q(MorphismId f, ObjectId gamma) const {
    return q.count({f.v, gamma.v}) != 0;
  }
  const QEntry& q_at(MorphismId f, ObjectId gamma) const {
    auto it = q.find({f.v, gamma.v});
    if (it == q.end())
      throw StructuralError(txt("no q-entry for (", cat_name(f), ", ",
                                cat.object_name(gamma), ")"));
    return it->second;
  }
  bool has_s_at(MorphismId f) const { return s.count(f.v) != 0; }
  MorphismId s_at(MorphismId f) const {
    auto it = s.find(f.v);
    if (it == s.end())
      throw StructuralError(txt("no s-entry for ", cat_name(f)));
    return it->second;
  }

  std::string cat_name(MorphismId f) const { return cat.morphism_name(f); }

  std::vector<ObjectId> objects_of_length(int l) const {
    std::vector<ObjectId> out;
    for (ObjectId x : cat.objects())
      if (length[x.v] == l) out.push_back(x);
    return out;
  }

  // Ob₁(Γ): the objects one level above Γ.
  std::vector<ObjectId> over(ObjectId gamma) const {
    std::vector<ObjectId> out;
    for (ObjectId x : cat.objects())
      if (length[x.v] == length[gamma.v] + 1 && ft[x.v] == gamma)
        out.push_back(x);
    return out;
  }

  // Õb₁(Γ): sections s : Γ -> Δ of p_Δ with ft(Δ) = Γ.
  std::vector<MorphismId> sections_over(ObjectId gamma) const {
    std::vector<MorphismId> out;
    for (ObjectId delta : over(gamma))
      for (MorphismId m : cat.hom(gamma, delta))
        if (cat.compose(m, p[delta.v]) == cat.identity(gamma))
          out.push_back(m);
    return out;
  }
};

// Structural and equational C0 axioms, exhaustively over in-bound
// instances; out-of-bound instances are counted as skipped. Finality of pt
// is deliberately not part of this suite (see check_point_final): the
// construction is also run over base categories without a final object,
// where everything except finality survives.
inline Report check_c0_axioms(const TruncCSystem& cc) {
  Report rep;
  const FinCategory& c = cc.cat;
  const std::size_t n_obj = c.object_count();
  if (cc.length.size() != n_obj || cc.ft.size() != n_obj ||
      cc.p.size() != n_obj)
    throw StructuralError("check_c0_axioms: table sizes do not match");

  // pt, lengths, ft
  ++rep.checked;
  if (cc.length[cc.pt.v] != 0)
    rep.fail("pt does not have length 0");
  if (cc.ft[cc.pt.v] != cc.pt) rep.fail("ft(pt) != pt");
  if (cc.p[cc.pt.v] != c.identity(cc.pt)) rep.fail("p_pt != id");
  for (ObjectId x : c.objects()) {
    ++rep.checked;
    if (cc.length[x.v] == 0 && x != cc.pt)
      rep.fail(txt("object ", c.object_name(x),
                   " has length 0 but is not pt"));
    if (cc.length[x.v] < 0 || cc.length[x.v] > cc.depth)
      rep.fail(txt("object ", c.object_name(x), " has length outside 0..",
                   cc.depth));
    if (cc.length[x.v] > 0) {
      if (cc.length[cc.ft[x.v].v] != cc.length[x.v] - 1)
        rep.fail(txt("l(ft(", c.object_name(x), ")) != l−1"));
      MorphismId px = cc.p[x.v];
      if (c.dom(px) != x || c.cod(px) != cc.ft[x.v])
        rep.fail(txt("p_", c.object_name(x), " has wrong endpoints"));
    }
  }

  // q-table: completeness, typing, commuting squares
  for (ObjectId gamma : c.objects()) {
    if (cc.length[gamma.v] == 0) continue;
    ObjectId base = cc.ft[gamma.v];
    for (ObjectId gp : c.objects()) {
      bool in_bound = cc.length[gp.v] + 1 <= cc.depth;
      for (MorphismId f : c.hom(gp, base)) {
        if (!in_bound) {
          ++rep.skipped;
          continue;
        }
        ++rep.checked;
        if (!cc.has_q(f, gamma)) {
          rep.fail(txt("missing q-entry for (", c.morphism_name(f), ", ",
                       c.object_name(gamma), ")"));
          continue;
        }
        const auto& e = cc.q_at(f, gamma);
        if (cc.length[e.fstar.v] != cc.length[gp.v] + 1)
          rep.fail(txt("l(f*(Γ)) != l(Γ')+1 at (", c.morphism_name(f), ", ",
                       c.object_name(gamma), ")"));
        if (cc.ft[e.fstar.v] != gp)
          rep.fail(txt("ft(f*(Γ)) != Γ' at (", c.morphism_name(f), ", ",
                       c.object_name(gamma), ")"));
        if (c.dom(e.q) != e.fstar || c.cod(e.q) != gamma)
          rep.fail(txt("q(f,Γ) has wrong endpoints at (", c.morphism_name(f),
                       ", ", c.object_name(gamma), ")"));
        else if (c.compose(e.q, cc.p[gamma.v]) !=
                 c.compose(cc.p[e.fstar.v], f))
          rep.fail(txt("canonical square does not commute at (",
                       c.morphism_name(f), ", ", c.object_name(gamma), ")"));
      }
    }
    // unit law: q(id_{ft Γ}, Γ) = (Γ, id_Γ)
    if (cc.length[base.v] + 1 <= cc.depth) {
      ++rep.checked;
      MorphismId id_base = c.identity(base);
      if (cc.has_q(id_base, gamma)) {
        const auto& e = cc.q_at(id_base, gamma);
        if (e.fstar != gamma || e.q != c.identity(gamma))
          rep.fail(txt("q(id,Γ) != id at ", c.object_name(gamma)));
      }
    } else {
      ++rep.skipped;
    }
  }

  // composition law: (g∘f)*(Γ) = g*(f*(Γ)), q(g∘f,Γ) = q(g,f*(Γ))∘q(f,Γ)
  for (ObjectId gamma : c.objects()) {
    if (cc.length[gamma.v] == 0) continue;
    ObjectId base = cc.ft[gamma.v];
    for (ObjectId gp : c.objects()) {
      for (MorphismId f : c.hom(gp, base)) {
        for (ObjectId gpp : c.objects()) {
          if (cc.length[gpp.v] + 1 > cc.depth) {
            rep.skipped += c.hom(gpp, gp).size();
            continue;
          }
          for (MorphismId g : c.hom(gpp, gp)) {
            if (cc.length[gp.v] + 1 > cc.depth) {
              ++rep.skipped;
              continue;
            }
            ++rep.checked;
            const auto& ef = cc.q_at(f, gamma);
            const auto& eg = cc.q_at(g, ef.fstar);
            const auto& egf = cc.q_at(c.compose(g, f), gamma);
            if (egf.fstar != eg.fstar)
              rep.fail(txt("(g∘f)*(Γ) != g*(f*(Γ)) at (", c.morphism_name(g),
                           ", ", c.morphism_name(f), ", ",
                           c.object_name(gamma), ")"));
            else if (egf.q != c.compose(eg.q, ef.q))
              rep.fail(txt("q(g∘f,Γ) != q(g,f*(Γ))∘q(f,Γ) at (",
                           c.morphism_name(g), ", ", c.morphism_name(f), ", ",
                           c.object_name(gamma), ")"));
          }
        }
      }
    }
  }
  return rep;
}

// pt finality, reported separately from the C0 suite.
inline Report check_point_final(const TruncCSystem& cc) {
  Report rep;
  for (ObjectId x : cc.cat.objects()) {
    ++rep.checked;
    std::size_t sz = cc.cat.hom(x, cc.pt).size();
    if (sz != 1)
      rep.fail(txt("|Hom(", cc.cat.object_name(x), ", pt)| = ", sz));
  }
  return rep;
}

// The three section-operation laws on every in-bound instance:
//   s_f ∘ p = id,   s_f ∘ q(f∘p_Γ, Γ) = f,   s_{s∘q(f,Γ)} = s.
inline Report check_s_axioms(const TruncCSystem& cc) {
  Report rep;
  if (!cc.has_s) throw PreconditionError("check_s_axioms: no s-structure");
  const FinCategory& c = cc.cat;

  for (ObjectId gamma : c.objects()) {
    if (cc.length[gamma.v] == 0) continue;
    for (ObjectId gp : c.objects()) {
      bool in_bound = cc.length[gp.v] + 1 <= cc.depth;
      for (MorphismId f : c.hom(gp, gamma)) {
        if (!in_bound) {
          ++rep.skipped;
          continue;
        }
        ++rep.checked;
        if (!cc.has_s_at(f)) {
          rep.fail(txt("missing s-entry for ", c.morphism_name(f)));
          continue;
        }
        MorphismId sf = cc.s_at(f);
        MorphismId fp = c.compose(f, cc.p[gamma.v]);
        if (!cc.has_q(fp, gamma)) {
          rep.fail(txt("s-entry for ", c.morphism_name(f),
                       " has no matching q-entry"));
          continue;
        }
        const auto& e = cc.q_at(fp, gamma);
        if (c.dom(sf) != gp || c.cod(sf) != e.fstar) {
          rep.fail(txt("s_f has wrong endpoints for f=", c.morphism_name(f)));
          continue;
        }
        if (c.compose(sf, cc.p[e.fstar.v]) != c.identity(gp))
          rep.fail(txt("s_f∘p != id for f=", c.morphism_name(f)));
        if (c.compose(sf, e.q) != f)
          rep.fail(txt("s_f∘q(f∘p,Γ) != f for f=", c.morphism_name(f)));
      }
    }
  }

  // s_{s∘q(f,Γ)} = s for every section s of p_{f*(Γ)}
  for (ObjectId gamma : c.objects()) {
    if (cc.length[gamma.v] == 0) continue;
    ObjectId base = cc.ft[gamma.v];
    for (ObjectId gp : c.objects()) {
      if (cc.length[gp.v] + 1 > cc.depth) {
        rep.skipped += c.hom(gp, base).size();
        continue;
      }
      for (MorphismId f : c.hom(gp, base)) {
        const auto& e = cc.q_at(f, gamma);
        for (MorphismId s : c.hom(gp, e.fstar)) {
          if (c.compose(s, cc.p[e.fstar.v]) != c.identity(gp)) continue;
          ++rep.checked;
          MorphismId sq = c.compose(s, e.q);
          if (!cc.has_s_at(sq)) {
            rep.fail(txt("missing s-entry for section composite ",
                         c.morphism_name(sq)));
            continue;
          }
          if (cc.s_at(sq) != s)
            rep.fail(txt("s_{s∘q(f,Γ)} != s at (s=", c.morphism_name(s),
                         ", f=", c.morphism_name(f), ", Γ=",
                         c.object_name(gamma), ")"));
        }
      }
    }
  }
  return rep;
}

// A pair of object/morphism maps between two truncated C-systems.
struct CSystemHom {
  const TruncCSystem* source = nullptr;
  const TruncCSystem* target = nullptr;
  std::vector<ObjectId> on_objects;
  std::vector<MorphismId> on_morphisms;

  ObjectId obj(ObjectId x) const { return on_objects[x.v]; }
  MorphismId mor(MorphismId m) const { return on_morphisms[m.v]; }
};

inline CSystemHom identity_homomorphism(const TruncCSystem& cc) {
  CSystemHom h;
  h.source = &cc;
  h.target = &cc;
  for (ObjectId x : cc.cat.objects()) h.on_objects.push_back(x);
  for (MorphismId m : cc.cat.morphisms()) h.on_morphisms.push_back(m);
  return h;
}

namespace detail {

// Conditions 1-5: length, ft, functoriality, p, q (plus the derived
// f*-equation, which is checked alongside condition 5).
inline Report check_hom_c0_conditions(const CSystemHom& h) {
  Report rep;
  const TruncCSystem& s = *h.source;
  const TruncCSystem& t = *h.target;
  const FinCategory& sc = s.cat;
  const FinCategory& tc = t.cat;
  if (h.on_objects.size() != sc.object_count() ||
      h.on_morphisms.size() != sc.morphism_count())
    throw StructuralError("check_homomorphism: map tables have wrong size");

  for (ObjectId x : sc.objects()) {
    ++rep.checked;
    if (t.length[h.obj(x).v] != s.length[x.v])
      rep.fail(txt("condition 1 (length) fails at ", sc.object_name(x)));
    if (t.ft[h.obj(x).v] != h.obj(s.ft[x.v]))
      rep.fail(txt("condition 2 (ft) fails at ", sc.object_name(x)));
  }
  for (MorphismId m : sc.morphisms()) {
    ++rep.checked;
    if (tc.dom(h.mor(m)) != h.obj(sc.dom(m)) ||
        tc.cod(h.mor(m)) != h.obj(sc.cod(m)))
      rep.fail(txt("condition 3a (dom/cod) fails at ", sc.morphism_name(m)));
  }
  for (ObjectId x : sc.objects()) {
    ++rep.checked;
    if (h.mor(sc.identity(x)) != tc.identity(h.obj(x)))
      rep.fail(txt("condition 3b (identity) fails at ", sc.object_name(x)));
  }
  for (MorphismId f : sc.morphisms())
    for (MorphismId g : sc.morphisms()) {
      if (!sc.composable(f, g)) continue;
      ++rep.checked;
      if (h.mor(sc.compose(f, g)) != tc.compose(h.mor(f), h.mor(g)))
        rep.fail(txt("condition 3c (composition) fails at (",
                     sc.morphism_name(f), ", ", sc.morphism_name(g), ")"));
    }
  for (ObjectId x : sc.objects()) {
    ++rep.checked;
    if (h.mor(s.p[x.v]) != t.p[h.obj(x).v])
      rep.fail(txt("condition 4 (p) fails at ", sc.object_name(x)));
  }
  for (const auto& [key, e] : s.q) {
    MorphismId f{key.first};
    ObjectId gamma{key.second};
    if (!t.has_q(h.mor(f), h.obj(gamma))) {
      ++rep.skipped;
      continue;
    }
    ++rep.checked;
    const auto& te = t.q_at(h.mor(f), h.obj(gamma));
    if (te.fstar != h.obj(e.fstar))
      rep.fail(txt("derived f*-equation fails at (", sc.morphism_name(f),
                   ", ", sc.object_name(gamma), ")"));
    if (te.q != h.mor(e.q))
      rep.fail(txt("condition 5 (q) fails at (", sc.morphism_name(f), ", ",
                   sc.object_name(gamma), ")"));
  }
  return rep;
}

inline Report check_hom_s_condition(const CSystemHom& h) {
  Report rep;
  const TruncCSystem& s = *h.source;
  const TruncCSystem& t = *h.target;
  if (!s.has_s || !t.has_s)
    throw PreconditionError("s-condition check needs s-structures on both sides");
  for (const auto& [f, sf] : s.s) {
    if (!t.has_s_at(h.mor(MorphismId{f}))) {
      ++rep.skipped;
      continue;
    }
    ++rep.checked;
    if (t.s_at(h.mor(MorphismId{f})) != h.mor(sf))
      rep.fail(txt("condition 6 (s) fails at ",
                   s.cat.morphism_name(MorphismId{f})));
  }
  return rep;
}

}  // namespace detail

inline Report check_c0_homomorphism(const CSystemHom& h) {
  return detail::check_hom_c0_conditions(h);
}

inline Report check_homomorphism(const CSystemHom& h) {
  Report rep = detail::check_hom_c0_conditions(h);
  rep.merge(detail::check_hom_s_condition(h));
  return rep;
}

// Executable form of the lemma that conditions 1-5 force condition 6:
// callable only when the C0 conditions hold, returns the direct result of
// checking the s-condition.
inline bool s_condition_follows(const CSystemHom& h) {
  Report c0 = check_c0_homomorphism(h);
  if (!c0.ok())
    throw PreconditionError(
        txt("s_condition_follows: C0 conditions fail: ", c0.violations[0]));
  return detail::check_hom_s_condition(h).ok();
}

inline CSystemHom compose_homomorphisms(const CSystemHom& h1,
                                        const CSystemHom& h2) {
  if (h1.target != h2.source)
    throw PreconditionError(
        "compose_homomorphisms: target of first != source of second");
  CSystemHom out;
  out.source = h1.source;
  out.target = h2.target;
  for (ObjectId x : h1.source->cat.objects())
    out.on_objects.push_back(h2.obj(h1.obj(x)));
  for (MorphismId m : h1.source->cat.morphisms())
    out.on_morphisms.push_back(h2.mor(h1.mor(m)));
  return out;
}

struct IsoCheck {
  bool ok = false;
  std::string detail;
  // inverse maps over the inspected range; entries for objects/morphisms
  // outside it are absent
  std::map<std::uint32_t, ObjectId> inverse_objects;
  std::map<std::uint32_t, MorphismId> inverse_morphisms;
};

// Bijectivity of h on objects of length <= d and on all morphisms between
// them, with the inverse pair as witness.
inline IsoCheck check_iso_on_truncation(const CSystemHom& h, int d) {
  IsoCheck out;
  const TruncCSystem& s = *h.source;
  const TruncCSystem& t = *h.target;
  if (d > s.depth || d > t.depth)
    throw PreconditionError("check_iso_on_truncation: depth exceeds bounds");

  std::vector<ObjectId> s_objs, t_objs;
  for (ObjectId x : s.cat.objects())
    if (s.length[x.v] <= d) s_objs.push_back(x);
  for (ObjectId x : t.cat.objects())
    if (t.length[x.v] <= d) t_objs.push_back(x);
  for (ObjectId x : s_objs) {
    ObjectId hx = h.obj(x);
    if (t.length[hx.v] > d) {
      out.detail = txt("image of ", s.cat.object_name(x), " leaves the truncation");
      return out;
    }
    if (out.inverse_objects.count(hx.v)) {
      out.detail = txt("objects ", s.cat.object_name(out.inverse_objects[hx.v]),
                       " and ", s.cat.object_name(x), " collide");
      return out;
    }
    out.inverse_objects[hx.v] = x;
  }
  if (out.inverse_objects.size() != t_objs.size()) {
    for (ObjectId y : t_objs)
      if (!out.inverse_objects.count(y.v)) {
        out.detail = txt("object ", t.cat.object_name(y), " is not hit");
        break;
      }
    return out;
  }
  for (ObjectId x : s_objs) {
    for (ObjectId y : s_objs) {
      for (MorphismId m : s.cat.hom(x, y)) {
        MorphismId hm = h.mor(m);
        if (out.inverse_morphisms.count(hm.v)) {
          out.detail = txt("morphisms collide at ", s.cat.morphism_name(m));
          return out;
        }
        out.inverse_morphisms[hm.v] = m;
      }
    }
  }
  std::size_t t_mor_count = 0;
  for (ObjectId x : t_objs)
    for (ObjectId y : t_objs) t_mor_count += t.cat.hom(x, y).size();
  if (out.inverse_morphisms.size() != t_mor_count) {
    out.detail = "some target morphism is not hit";
    return out;
  }
  out.ok = true;
  return out;
}

// Inverse of a homomorphism bijective at full depth.
inline CSystemHom invert_iso_homomorphism(const CSystemHom& h) {
  int d = std::min(h.source->depth, h.target->depth);
  IsoCheck chk = check_iso_on_truncation(h, d);
  if (!chk.ok)
    throw PreconditionError(
        txt("invert_iso_homomorphism: not an isomorphism: ", chk.detail));
  CSystemHom inv;
  inv.source = h.target;
  inv.target = h.source;
  inv.on_objects.resize(h.target->cat.object_count());
  inv.on_morphisms.resize(h.target->cat.morphism_count());
  for (const auto& [ty, sx] : chk.inverse_objects) inv.on_objects[ty] = sx;
  for (const auto& [tm, sm] : chk.inverse_morphisms) inv.on_morphisms[tm] = sm;
  return inv;
}

// The full subsystem of objects with length <= d, reindexed.
struct Truncation {
  TruncCSystem cc;
  std::vector<std::optional<ObjectId>> obj_map;    // old -> new
  std::vector<std::optional<MorphismId>> mor_map;  // old -> new
};

inline Truncation truncate(const TruncCSystem& src, int d) {
  if (d > src.depth)
    throw PreconditionError("truncate: requested depth exceeds source depth");
  Truncation out;
  TruncCSystem& cc = out.cc;
  cc.depth = d;
  cc.has_s = src.has_s;
  out.obj_map.assign(src.cat.object_count(), std::nullopt);
  out.mor_map.assign(src.cat.morphism_count(), std::nullopt);
  for (ObjectId x : src.cat.objects()) {
    if (src.length[x.v] > d) continue;
    ObjectId nx = cc.cat.add_object(src.cat.object_name(x));
    out.obj_map[x.v] = nx;
    cc.length.push_back(src.length[x.v]);
  }
  for (MorphismId m : src.cat.morphisms()) {
    auto dm = out.obj_map[src.cat.dom(m).v];
    auto cm = out.obj_map[src.cat.cod(m).v];
    if (!dm || !cm) continue;
    out.mor_map[m.v] = cc.cat.add_morphism(src.cat.morphism_name(m), *dm, *cm);
  }
  for (ObjectId x : src.cat.objects()) {
    if (!out.obj_map[x.v]) continue;
    cc.cat.set_identity(*out.obj_map[x.v],
                        *out.mor_map[src.cat.identity(x).v]);
    cc.ft.push_back(*out.obj_map[src.ft[x.v].v]);
    cc.p.push_back(*out.mor_map[src.p[x.v].v]);
  }
  for (MorphismId f : src.cat.morphisms()) {
    if (!out.mor_map[f.v]) continue;
    for (MorphismId g : src.cat.morphisms()) {
      if (!out.mor_map[g.v] || !src.cat.composable(f, g)) continue;
      cc.cat.set_composite(*out.mor_map[f.v], *out.mor_map[g.v],
                           *out.mor_map[src.cat.compose(f, g).v]);
    }
  }
  cc.cat.finalize();
  cc.pt = *out.obj_map[src.pt.v];
  for (const auto& [key, e] : src.q) {
    auto f = out.mor_map[key.first];
    auto gamma = out.obj_map[key.second];
    if (!f || !gamma || !out.obj_map[e.fstar.v]) continue;
    cc.q[{f->v, gamma->v}] =
        TruncCSystem::QEntry{*out.obj_map[e.fstar.v], *out.mor_map[e.q.v]};
  }
  for (const auto& [f, sf] : src.s) {
    auto nf = out.mor_map[f];
    if (!nf || !out.mor_map[sf.v]) continue;
    // keep only entries whose codomain survived
    cc.s[nf->v] = *out.mor_map[sf.v];
  }
  return out;
}

}  // namespace csys
