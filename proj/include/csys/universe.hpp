#pragma once

#include <concepts>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "csys/core.hpp"
#include "csys/fincat.hpp"
#include "csys/presheaf.hpp"

namespace csys {

// The interface both FinCategory and PresheafCat satisfy: decidable
// equality, enumerable hom-sets, composition, identities, and an
// ambient-appropriate pullback test.
template <typename C>
concept EffectiveCategory = requires(const C& c, const typename C::Object& x,
                                     const typename C::Object& y,
                                     const typename C::Morphism& f,
                                     const typename C::Morphism& g,
                                     const SquareOf<typename C::Morphism>& sq) {
  { c.dom(f) } -> std::convertible_to<typename C::Object>;
  { c.cod(f) } -> std::convertible_to<typename C::Object>;
  { c.identity(x) } -> std::convertible_to<typename C::Morphism>;
  { c.compose(f, g) } -> std::convertible_to<typename C::Morphism>;
  { c.hom(x, y) };
  { c.is_pullback(sq) } -> std::convertible_to<bool>;
  { c.is_final_object(x) } -> std::convertible_to<bool>;
  { c.describe(f) } -> std::convertible_to<std::string>;
  { c.describe_object(x) } -> std::convertible_to<std::string>;
  { x == y } -> std::convertible_to<bool>;
  { f == g } -> std::convertible_to<bool>;
};

// The chosen pullback square attached to a morphism f : X -> U:
//
//   (X;f) --q_top (= Q(f))--> Ũ
//     |proj (= p_{X,f})        |p
//     X --------f-----------> U
template <typename C>
struct CanonicalSquareT {
  typename C::Object total;
  typename C::Morphism proj;
  typename C::Morphism q_top;
  typename C::Morphism base;

  SquareOf<typename C::Morphism> as_square(
      const typename C::Morphism& p) const {
    return {proj, q_top, base, p};
  }
};

template <typename U>
concept UniverseCategoryC = EffectiveCategory<typename U::Cat> &&
    requires(const U& u, const typename U::Cat::Object& x,
             const typename U::Cat::Morphism& f) {
  { u.cat() } -> std::convertible_to<const typename U::Cat&>;
  { u.p() } -> std::convertible_to<typename U::Cat::Morphism>;
  { u.u_object() } -> std::convertible_to<typename U::Cat::Object>;
  { u.u_tilde_object() } -> std::convertible_to<typename U::Cat::Object>;
  { u.base_point() } -> std::convertible_to<typename U::Cat::Object>;
  { u.has_square(f) } -> std::convertible_to<bool>;
  { u.square(f) } -> std::convertible_to<CanonicalSquareT<typename U::Cat>>;
  { u.final_certified() } -> std::convertible_to<bool>;
};

// The unique h : W -> apex with h∘proj1 = leg1 and h∘proj2 = leg2, found by
// filtering Hom(W, apex). Every construction needing "the unique morphism
// such that ..." goes through here, so a square that fails the universal
// property is detected at its first use.
template <EffectiveCategory C>
typename C::Morphism unique_mediator(const C& c,
                                     const typename C::Morphism& proj1,
                                     const typename C::Morphism& proj2,
                                     const typename C::Morphism& leg1,
                                     const typename C::Morphism& leg2) {
  if (!(c.dom(proj1) == c.dom(proj2)))
    throw PreconditionError("unique_mediator: projections have different domains");
  if (!(c.dom(leg1) == c.dom(leg2)))
    throw PreconditionError("unique_mediator: legs have different domains");
  std::optional<typename C::Morphism> found;
  for (const auto& h : c.hom(c.dom(leg1), c.dom(proj1))) {
    if (c.compose(h, proj1) == leg1 && c.compose(h, proj2) == leg2) {
      if (found)
        throw PullbackError(txt("mediator into ",
                                c.describe_object(c.dom(proj1)),
                                " is not unique (not a pullback)"));
      found = h;
    }
  }
  if (!found)
    throw PullbackError(txt("no mediator from ",
                            c.describe_object(c.dom(leg1)), " into ",
                            c.describe_object(c.dom(proj1)),
                            " (not a pullback)"));
  return *found;
}

template <EffectiveCategory C>
std::optional<typename C::Morphism> find_inverse(const C& c,
                                                 const typename C::Morphism& f) {
  for (const auto& g : c.hom(c.cod(f), c.dom(f)))
    if (c.compose(f, g) == c.identity(c.dom(f)) &&
        c.compose(g, f) == c.identity(c.cod(f)))
      return g;
  return std::nullopt;
}

template <EffectiveCategory C>
typename C::Morphism invert_iso(const C& c, const typename C::Morphism& f) {
  auto g = find_inverse(c, f);
  if (!g)
    throw PreconditionError(txt("invert_iso: ", c.describe(f), " is not invertible"));
  return *g;
}

// The stored square for f : X -> U (lookup, never recomputation).
template <UniverseCategoryC U>
CanonicalSquareT<typename U::Cat> canonical_square(
    const U& uc, const typename U::Cat::Morphism& f) {
  if (!(uc.cat().cod(f) == uc.u_object()))
    throw PreconditionError(
        txt("canonical_square: ", uc.cat().describe(f), " is not into U"));
  if (!uc.has_square(f))
    throw PreconditionError(txt("canonical_square: no chosen square for ",
                                uc.cat().describe(f),
                                " (outside the truncation)"));
  return uc.square(f);
}

// The pairing f*g: the unique h : W -> (X;F) with h∘p_{X,F} = f and
// h∘Q(F) = g, given the cone condition f∘F = g∘p.
template <UniverseCategoryC U>
typename U::Cat::Morphism pair_into_square(
    const U& uc, const typename U::Cat::Morphism& F,
    const typename U::Cat::Morphism& f, const typename U::Cat::Morphism& g) {
  const auto& c = uc.cat();
  auto sq = canonical_square(uc, F);
  if (!(c.compose(f, F) == c.compose(g, uc.p())))
    throw PreconditionError(txt("pair: cone condition fails for f=",
                                c.describe(f), ", g=", c.describe(g),
                                " over F=", c.describe(F)));
  return unique_mediator(c, sq.proj, sq.q_top, f, g);
}

// Q(f,F) = (p_{X',f∘F}∘f) * Q(f∘F) : (X';f∘F) -> (X;F).
template <UniverseCategoryC U>
typename U::Cat::Morphism q_relative(const U& uc,
                                     const typename U::Cat::Morphism& f,
                                     const typename U::Cat::Morphism& F) {
  const auto& c = uc.cat();
  if (!(c.cod(f) == c.dom(F)))
    throw PreconditionError("q_relative: f and F are not composable");
  auto fF = c.compose(f, F);
  auto sq_fF = canonical_square(uc, fF);
  return pair_into_square(uc, F, c.compose(sq_fF.proj, f), sq_fF.q_top);
}

// ---------------------------------------------------------------------------
// Universe structure over a finite ambient category: an explicit square per
// morphism into U. `allow_partial` admits truncation-induced gaps (the tower
// ambient), which verification then counts as skipped.

struct FinUniverseCategory {
  using Cat = FinCategory;

  const FinCategory* category = nullptr;
  MorphismId p_mor;
  std::map<MorphismId, CanonicalSquareT<FinCategory>> squares;
  ObjectId point;  // the distinguished base object; final when certified
  std::optional<FinalObjectCertificate> final_cert;
  bool allow_partial = false;

  const FinCategory& cat() const { return *category; }
  MorphismId p() const { return p_mor; }
  ObjectId u_object() const { return category->cod(p_mor); }
  ObjectId u_tilde_object() const { return category->dom(p_mor); }
  ObjectId base_point() const { return point; }
  bool final_certified() const { return final_cert.has_value(); }

  MorphismId final_projection(ObjectId x) const {
    if (!final_cert)
      throw PreconditionError(
          "final_projection: base point carries no finality certificate");
    return final_cert->projections[x.v];
  }

  bool has_square(MorphismId f) const { return squares.count(f) != 0; }

  CanonicalSquareT<FinCategory> square(MorphismId f) const {
    auto it = squares.find(f);
    if (it == squares.end())
      throw PreconditionError(txt("no canonical square for ",
                                  category->describe(f)));
    return it->second;
  }
};

inline FinUniverseCategory make_fin_universe_category(
    const FinCategory& c, MorphismId p,
    std::map<MorphismId, CanonicalSquareT<FinCategory>> squares,
    ObjectId point, bool allow_partial = false) {
  FinUniverseCategory uc;
  uc.category = &c;
  uc.p_mor = p;
  uc.squares = std::move(squares);
  uc.point = point;
  uc.allow_partial = allow_partial;
  auto res = check_final_object(c, point);
  if (auto* cert = std::get_if<FinalObjectCertificate>(&res))
    uc.final_cert = *cert;
  return uc;
}

// Exhaustive verification over every morphism of the finite ambient:
// canonical squares are pullbacks, relative squares are pullbacks, Q(f,F)
// is an isomorphism when f is, the relative composition law holds, and
// Q(id,F) = id.
inline Report verify_universe_laws(const FinUniverseCategory& uc) {
  Report rep;
  const FinCategory& c = uc.cat();
  const ObjectId u = uc.u_object();
  std::vector<MorphismId> into_u;
  for (MorphismId f : c.morphisms())
    if (c.cod(f) == u) into_u.push_back(f);

  for (MorphismId f : into_u) {
    if (!uc.has_square(f)) {
      if (uc.allow_partial)
        ++rep.skipped;
      else
        rep.fail(txt("no canonical square for ", c.describe(f)));
      continue;
    }
    ++rep.checked;
    auto sq = uc.square(f);
    if (!(sq.base == f)) {
      rep.fail(txt("square stored under ", c.describe(f), " has base ",
                   c.describe(sq.base)));
      continue;
    }
    if (c.dom(sq.proj) != sq.total || c.cod(sq.proj) != c.dom(f) ||
        c.dom(sq.q_top) != sq.total ||
        c.cod(sq.q_top) != uc.u_tilde_object()) {
      rep.fail(txt("canonical square for ", c.describe(f),
                   " has ill-typed sides"));
      continue;
    }
    CommutativeSquare s = sq.as_square(uc.p());
    if (!square_commutes(c, s)) {
      rep.fail(txt("canonical square for ", c.describe(f), " does not commute"));
      continue;
    }
    if (!check_pullback_square(c, s).ok)
      rep.fail(txt("canonical square for ", c.describe(f), " not pullback"));
  }
  if (!rep.ok()) return rep;  // the Q-laws below presuppose usable squares

  auto has = [&](MorphismId f) { return uc.has_square(f); };

  // relative squares (and Q iso for iso f)
  for (MorphismId F : into_u) {
    if (!has(F)) continue;
    ObjectId x = c.dom(F);
    for (MorphismId f : c.morphisms()) {
      if (c.cod(f) != x) continue;
      MorphismId fF = c.compose(f, F);
      if (!has(fF)) {
        ++rep.skipped;
        continue;
      }
      ++rep.checked;
      MorphismId q = q_relative(uc, f, F);
      CommutativeSquare rel{uc.square(fF).proj, q, f, uc.square(F).proj};
      if (!square_commutes(c, rel) || !check_pullback_square(c, rel).ok)
        rep.fail(txt("relative square for (", c.morphism_name(f), ", ",
                     c.morphism_name(F), ") not pullback"));
      if (c.compose(q, uc.square(F).q_top) != uc.square(fF).q_top)
        rep.fail(txt("Q(f,F)∘Q(F) != Q(f∘F) at (", c.morphism_name(f), ", ",
                     c.morphism_name(F), ")"));
      if (c.is_iso(f) && !c.is_iso(q))
        rep.fail(txt("Q(f,F) not iso for iso f=", c.morphism_name(f),
                     ", F=", c.morphism_name(F)));
      if (f == c.identity(x) && q != c.identity(uc.square(F).total))
        rep.fail(txt("Q(id,F) != id for F=", c.morphism_name(F)));
    }
  }
  // relative composition law
  for (MorphismId F : into_u) {
    if (!has(F)) continue;
    for (MorphismId f : c.morphisms()) {
      if (c.cod(f) != c.dom(F)) continue;
      MorphismId fF = c.compose(f, F);
      if (!has(fF)) {
        ++rep.skipped;
        continue;
      }
      for (MorphismId fp : c.morphisms()) {
        if (c.cod(fp) != c.dom(f)) continue;
        MorphismId comp = c.compose(fp, f);
        if (!has(c.compose(comp, F))) {
          ++rep.skipped;
          continue;
        }
        ++rep.checked;
        MorphismId lhs = c.compose(q_relative(uc, fp, fF), q_relative(uc, f, F));
        MorphismId rhs = q_relative(uc, comp, F);
        if (lhs != rhs)
          rep.fail(txt("Q(f',f∘F)∘Q(f,F) != Q(f'∘f,F) at (",
                       c.morphism_name(fp), ", ", c.morphism_name(f), ", ",
                       c.morphism_name(F), ")"));
      }
    }
  }
  return rep;
}

// All commuting pullback squares over (f, p), in (total, q_top, proj)
// lexicographic order.
inline std::vector<CanonicalSquareT<FinCategory>> enumerate_square_choices(
    const FinCategory& c, MorphismId p, MorphismId f) {
  std::vector<CanonicalSquareT<FinCategory>> out;
  ObjectId x = c.dom(f);
  ObjectId ut = c.dom(p);
  for (ObjectId total : c.objects()) {
    for (MorphismId q_top : c.hom(total, ut)) {
      for (MorphismId proj : c.hom(total, x)) {
        CommutativeSquare sq{proj, q_top, f, p};
        if (!square_commutes(c, sq)) continue;
        if (check_pullback_square(c, sq).ok)
          out.push_back(CanonicalSquareT<FinCategory>{total, proj, q_top, f});
      }
    }
  }
  return out;
}

// Chooses, per morphism into U, the first pullback square in the
// deterministic search order.
inline FinUniverseCategory derive_universe_structure(const FinCategory& c,
                                                     MorphismId p,
                                                     ObjectId point) {
  std::map<MorphismId, CanonicalSquareT<FinCategory>> squares;
  ObjectId u = c.cod(p);
  for (MorphismId f : c.morphisms()) {
    if (c.cod(f) != u) continue;
    auto choices = enumerate_square_choices(c, p, f);
    if (choices.empty())
      throw PreconditionError(txt("derive_universe_structure: no pullback of (",
                                  c.morphism_name(f), ", ", c.morphism_name(p),
                                  ") exists"));
    squares[f] = choices.front();
  }
  return make_fin_universe_category(c, p, std::move(squares), point);
}

// Full enumeration mode: the cartesian product of per-morphism choices.
inline std::vector<FinUniverseCategory> enumerate_universe_structures(
    const FinCategory& c, MorphismId p, ObjectId point,
    std::uint64_t limit = 100000) {
  ObjectId u = c.cod(p);
  std::vector<MorphismId> into_u;
  std::vector<std::vector<CanonicalSquareT<FinCategory>>> choices;
  std::uint64_t total = 1;
  for (MorphismId f : c.morphisms()) {
    if (c.cod(f) != u) continue;
    into_u.push_back(f);
    choices.push_back(enumerate_square_choices(c, p, f));
    if (choices.back().empty())
      throw PreconditionError(txt("no pullback of (", c.morphism_name(f), ", ",
                                  c.morphism_name(p), ") exists"));
    total *= choices.back().size();
    if (total > limit)
      throw BudgetError(txt("enumerate_universe_structures: more than ", limit,
                            " structures"));
  }
  std::vector<FinUniverseCategory> out;
  std::vector<std::size_t> pick(into_u.size(), 0);
  for (std::uint64_t n = 0; n < total; ++n) {
    std::map<MorphismId, CanonicalSquareT<FinCategory>> squares;
    std::uint64_t rest = n;
    for (std::size_t i = 0; i < into_u.size(); ++i) {
      std::size_t k = rest % choices[i].size();
      rest /= choices[i].size();
      squares[into_u[i]] = choices[i][k];
    }
    out.push_back(make_fin_universe_category(c, p, std::move(squares), point));
  }
  return out;
}

// ---------------------------------------------------------------------------
// The standard universe on a presheaf morphism p : Ũ -> U: the chosen square
// for F is the pointwise pullback with canonical pair elements, computed on
// demand (deterministic, so recomputation is identity-stable).

struct PresheafUniverseCategory {
  using Cat = PresheafCat;

  PresheafCat ambient;
  PresheafMorphism p_mor;
  FinPresheaf point;

  PresheafUniverseCategory(const FinCategory* base, PresheafMorphism p,
                           FinPresheaf pt, std::uint64_t budget = 1000000)
      : ambient(base, budget), p_mor(std::move(p)), point(std::move(pt)) {}

  const PresheafCat& cat() const { return ambient; }
  const PresheafMorphism& p() const { return p_mor; }
  FinPresheaf u_object() const { return p_mor.target; }
  FinPresheaf u_tilde_object() const { return p_mor.source; }
  FinPresheaf base_point() const { return point; }
  bool final_certified() const { return ambient.is_final_object(point); }

  PresheafMorphism final_projection(const FinPresheaf& x) const {
    return ambient.final_projection_to(x, point);
  }

  bool has_square(const PresheafMorphism& f) const {
    return f.target == p_mor.target;
  }

  CanonicalSquareT<PresheafCat> square(const PresheafMorphism& f) const {
    if (!has_square(f))
      throw PreconditionError("presheaf universe: morphism is not into U");
    PresheafPullback pb = presheaf_pullback(f, p_mor);
    return CanonicalSquareT<PresheafCat>{pb.object, pb.proj1, pb.proj2, f};
  }
};

}  // namespace csys
