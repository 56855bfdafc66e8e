#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "csys/core.hpp"
#include "csys/fincat.hpp"

namespace csys {

// A finite-set-valued contravariant functor on a FinCategory. For a base
// morphism f : X -> Y the restriction map goes values[Y] -> values[X],
// stored as an index table. Elements are named; equality of presheaves is
// structural (same base, same names, same tables), which keeps iterated
// pullbacks reproducible.
struct FinPresheaf {
  const FinCategory* base = nullptr;
  std::vector<std::vector<std::string>> values;           // per ObjectId
  std::vector<std::vector<std::uint32_t>> restrictions;   // per MorphismId

  std::size_t size_at(ObjectId x) const { return values[x.v].size(); }

  std::uint32_t restrict_elem(MorphismId f, std::uint32_t e) const {
    return restrictions[f.v][e];
  }

  const std::string& elem_name(ObjectId x, std::uint32_t e) const {
    return values[x.v][e];
  }

  std::optional<std::uint32_t> find_elem(ObjectId x,
                                         const std::string& name) const {
    const auto& v = values[x.v];
    for (std::uint32_t i = 0; i < v.size(); ++i)
      if (v[i] == name) return i;
    return std::nullopt;
  }

  bool operator==(const FinPresheaf& o) const {
    return base == o.base && values == o.values &&
           restrictions == o.restrictions;
  }

  std::string signature() const {
    std::ostringstream os;
    os << "Psh(";
    for (std::size_t i = 0; i < values.size(); ++i)
      os << (i ? "," : "") << values[i].size();
    os << ")";
    return os.str();
  }
};

// A family of per-object functions source(X) -> target(X), natural in X.
struct PresheafMorphism {
  FinPresheaf source;
  FinPresheaf target;
  std::vector<std::vector<std::uint32_t>> components;  // per ObjectId

  std::uint32_t apply(ObjectId x, std::uint32_t e) const {
    return components[x.v][e];
  }

  bool operator==(const PresheafMorphism& o) const {
    return source == o.source && target == o.target &&
           components == o.components;
  }
};

inline FinPresheaf final_presheaf(const FinCategory& base) {
  FinPresheaf p;
  p.base = &base;
  p.values.assign(base.object_count(), {"tt"});
  p.restrictions.assign(base.morphism_count(), {0});
  return p;
}

inline Report validate_presheaf(const FinPresheaf& p) {
  Report rep;
  const FinCategory& c = *p.base;
  if (p.values.size() != c.object_count() ||
      p.restrictions.size() != c.morphism_count())
    throw StructuralError("validate_presheaf: table sizes do not match base");
  for (MorphismId f : c.morphisms()) {
    const auto& r = p.restrictions[f.v];
    if (r.size() != p.size_at(c.cod(f)))
      throw StructuralError(txt("restriction along ", c.morphism_name(f),
                                " has wrong domain size"));
    for (std::uint32_t e : r)
      if (e >= p.size_at(c.dom(f)))
        throw StructuralError(txt("restriction along ", c.morphism_name(f),
                                  " maps out of range"));
  }
  for (ObjectId x : c.objects()) {
    MorphismId id = c.identity(x);
    ++rep.checked;
    for (std::uint32_t e = 0; e < p.size_at(x); ++e)
      if (p.restrict_elem(id, e) != e) {
        rep.fail(txt("restriction of identity at ", c.object_name(x),
                     " moves element ", p.elem_name(x, e)));
        break;
      }
  }
  for (MorphismId f : c.morphisms()) {
    for (MorphismId g : c.morphisms()) {
      if (!c.composable(f, g)) continue;
      ++rep.checked;
      MorphismId fg = c.compose(f, g);
      // restriction(f∘g) = restriction(g) followed by restriction(f)
      for (std::uint32_t e = 0; e < p.size_at(c.cod(g)); ++e) {
        if (p.restrict_elem(fg, e) !=
            p.restrict_elem(f, p.restrict_elem(g, e))) {
          rep.fail(txt("functoriality fails at (", c.morphism_name(f), ", ",
                       c.morphism_name(g), ") on element ",
                       p.elem_name(c.cod(g), e)));
          break;
        }
      }
    }
  }
  return rep;
}

inline Report validate_presheaf_morphism(const PresheafMorphism& m) {
  Report rep;
  const FinCategory& c = *m.source.base;
  if (m.target.base != m.source.base)
    throw StructuralError("presheaf morphism endpoints have different bases");
  if (m.components.size() != c.object_count())
    throw StructuralError("presheaf morphism component table has wrong size");
  for (ObjectId x : c.objects()) {
    if (m.components[x.v].size() != m.source.size_at(x))
      throw StructuralError(
          txt("component at ", c.object_name(x), " has wrong domain size"));
    for (std::uint32_t e : m.components[x.v])
      if (e >= m.target.size_at(x))
        throw StructuralError(
            txt("component at ", c.object_name(x), " maps out of range"));
  }
  for (MorphismId f : c.morphisms()) {
    ObjectId x = c.dom(f), y = c.cod(f);
    ++rep.checked;
    for (std::uint32_t e = 0; e < m.source.size_at(y); ++e) {
      std::uint32_t via_target = m.target.restrict_elem(f, m.apply(y, e));
      std::uint32_t via_source = m.apply(x, m.source.restrict_elem(f, e));
      if (via_target != via_source) {
        rep.fail(txt("naturality fails along ", c.morphism_name(f),
                     " on element ", m.source.elem_name(y, e)));
        break;
      }
    }
  }
  return rep;
}

inline PresheafMorphism identity_presheaf_morphism(const FinPresheaf& p) {
  PresheafMorphism m;
  m.source = p;
  m.target = p;
  m.components.resize(p.values.size());
  for (std::size_t x = 0; x < p.values.size(); ++x) {
    m.components[x].resize(p.values[x].size());
    for (std::uint32_t e = 0; e < p.values[x].size(); ++e)
      m.components[x][e] = e;
  }
  return m;
}

// Diagrammatic composition of presheaf morphisms: m1 then m2.
inline PresheafMorphism compose_presheaf_morphisms(const PresheafMorphism& m1,
                                                   const PresheafMorphism& m2) {
  if (!(m1.target == m2.source))
    throw StructuralError(
        "compose_presheaf_morphisms: target of first != source of second");
  PresheafMorphism out;
  out.source = m1.source;
  out.target = m2.target;
  out.components.resize(m1.components.size());
  for (std::size_t x = 0; x < m1.components.size(); ++x) {
    out.components[x].resize(m1.components[x].size());
    for (std::uint32_t e = 0; e < m1.components[x].size(); ++e)
      out.components[x][e] = m2.components[x][m1.components[x][e]];
  }
  return out;
}

struct PresheafPullback {
  FinPresheaf object;        // elements are canonical pairs "(x,s)"
  PresheafMorphism proj1;    // to source of f
  PresheafMorphism proj2;    // to source of g
};

// Standard pointwise pullback of f and g over their common target. The
// value at X is {(x, s) | f_X(x) = g_X(s)} in (x-major, s-minor) order.
inline PresheafPullback presheaf_pullback(const PresheafMorphism& f,
                                          const PresheafMorphism& g) {
  if (!(f.target == g.target))
    throw StructuralError("presheaf_pullback: morphisms have no common target");
  const FinCategory& c = *f.source.base;
  PresheafPullback out;
  FinPresheaf& pb = out.object;
  pb.base = &c;
  pb.values.resize(c.object_count());
  // pairs[x] lists (index into f.source(x), index into g.source(x))
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pairs(
      c.object_count());
  for (ObjectId x : c.objects()) {
    for (std::uint32_t a = 0; a < f.source.size_at(x); ++a)
      for (std::uint32_t b = 0; b < g.source.size_at(x); ++b)
        if (f.apply(x, a) == g.apply(x, b)) {
          pairs[x.v].emplace_back(a, b);
          pb.values[x.v].push_back(txt("(", f.source.elem_name(x, a), ",",
                                       g.source.elem_name(x, b), ")"));
        }
  }
  auto pair_index = [&](ObjectId x, std::uint32_t a,
                        std::uint32_t b) -> std::uint32_t {
    const auto& px = pairs[x.v];
    for (std::uint32_t i = 0; i < px.size(); ++i)
      if (px[i].first == a && px[i].second == b) return i;
    throw StructuralError("presheaf_pullback: restriction left the fiber");
  };
  pb.restrictions.resize(c.morphism_count());
  for (MorphismId m : c.morphisms()) {
    ObjectId x = c.dom(m), y = c.cod(m);
    auto& r = pb.restrictions[m.v];
    r.reserve(pairs[y.v].size());
    for (auto [a, b] : pairs[y.v])
      r.push_back(pair_index(x, f.source.restrict_elem(m, a),
                             g.source.restrict_elem(m, b)));
  }
  out.proj1.source = pb;
  out.proj1.target = f.source;
  out.proj2.source = pb;
  out.proj2.target = g.source;
  out.proj1.components.resize(c.object_count());
  out.proj2.components.resize(c.object_count());
  for (ObjectId x : c.objects()) {
    for (auto [a, b] : pairs[x.v]) {
      out.proj1.components[x.v].push_back(a);
      out.proj2.components[x.v].push_back(b);
    }
  }
  return out;
}

// Yo(A): X |-> Hom(X, A), restriction along f : X -> Y by precomposition.
inline FinPresheaf yoneda(const FinCategory& c, ObjectId a) {
  FinPresheaf p;
  p.base = &c;
  p.values.resize(c.object_count());
  for (ObjectId x : c.objects())
    for (MorphismId h : c.hom(x, a))
      p.values[x.v].push_back(c.morphism_name(h));
  auto index_of = [&](ObjectId x, MorphismId h) -> std::uint32_t {
    const auto& hs = c.hom(x, a);
    for (std::uint32_t i = 0; i < hs.size(); ++i)
      if (hs[i] == h) return i;
    throw StructuralError("yoneda: hom element not found");
  };
  p.restrictions.resize(c.morphism_count());
  for (MorphismId f : c.morphisms()) {
    ObjectId x = c.dom(f), y = c.cod(f);
    for (MorphismId h : c.hom(y, a))
      p.restrictions[f.v].push_back(index_of(x, c.compose(f, h)));
  }
  return p;
}

// Yo(f) : Yo(A) -> Yo(B) for f : A -> B, by postcomposition.
inline PresheafMorphism yoneda_on_morphisms(const FinCategory& c,
                                            MorphismId f) {
  ObjectId a = c.dom(f), b = c.cod(f);
  PresheafMorphism m;
  m.source = yoneda(c, a);
  m.target = yoneda(c, b);
  m.components.resize(c.object_count());
  for (ObjectId x : c.objects()) {
    const auto& into_b = c.hom(x, b);
    for (MorphismId h : c.hom(x, a)) {
      MorphismId hf = c.compose(h, f);
      std::uint32_t idx = 0;
      while (into_b[idx] != hf) ++idx;
      m.components[x.v].push_back(idx);
    }
  }
  return m;
}

// The bijection v (resp. ṽ) between elements of P(Γ) and presheaf
// morphisms Yo(Γ) -> P: the section x goes to h |-> restriction(h)(x).
inline PresheafMorphism section_to_morphism(const FinPresheaf& p, ObjectId g,
                                            std::uint32_t x) {
  const FinCategory& c = *p.base;
  if (x >= p.size_at(g))
    throw StructuralError(txt("section_to_morphism: element ", x,
                              " out of range at ", c.object_name(g)));
  PresheafMorphism m;
  m.source = yoneda(c, g);
  m.target = p;
  m.components.resize(c.object_count());
  for (ObjectId w : c.objects())
    for (MorphismId h : c.hom(w, g))
      m.components[w.v].push_back(p.restrict_elem(h, x));
  return m;
}

// Inverse of section_to_morphism: evaluate at the identity of Γ.
inline std::uint32_t evaluate_at_identity(const PresheafMorphism& m,
                                          ObjectId g) {
  const FinCategory& c = *m.source.base;
  const auto& hs = c.hom(g, g);
  MorphismId id = c.identity(g);
  std::uint32_t idx = 0;
  while (hs[idx] != id) ++idx;
  return m.apply(g, idx);
}

// All natural families P -> Q by backtracking over per-object functions
// with naturality pruning, in lexicographic order. `budget` caps the number
// of explored partial assignments.
inline std::vector<PresheafMorphism> enumerate_presheaf_morphisms(
    const FinPresheaf& p, const FinPresheaf& q,
    std::uint64_t budget = 1000000) {
  if (p.base != q.base)
    throw StructuralError("enumerate_presheaf_morphisms: different bases");
  const FinCategory& c = *p.base;
  const std::size_t n = c.object_count();
  // constraints[y] holds morphisms whose endpoints are both <= y once y is
  // assigned (checking them right after assigning y prunes early)
  std::vector<std::vector<MorphismId>> constraints(n);
  for (MorphismId f : c.morphisms()) {
    std::uint32_t hi = std::max(c.dom(f).v, c.cod(f).v);
    constraints[hi].push_back(f);
  }
  std::vector<std::vector<std::uint32_t>> comp(n);
  std::vector<PresheafMorphism> out;
  std::uint64_t states = 0;

  auto natural_at = [&](MorphismId f) {
    ObjectId x = c.dom(f), y = c.cod(f);
    for (std::uint32_t e = 0; e < p.size_at(y); ++e)
      if (q.restrict_elem(f, comp[y.v][e]) !=
          comp[x.v][p.restrict_elem(f, e)])
        return false;
    return true;
  };

  auto emit = [&]() {
    PresheafMorphism m;
    m.source = p;
    m.target = q;
    m.components = comp;
    out.push_back(std::move(m));
  };

  // iterative odometer over objects 0..n-1
  std::function<void(std::size_t)> go = [&](std::size_t obj) {
    if (obj == n) {
      emit();
      return;
    }
    const std::size_t dom_size = p.size_at(ObjectId{(std::uint32_t)obj});
    const std::size_t cod_size = q.size_at(ObjectId{(std::uint32_t)obj});
    if (dom_size > 0 && cod_size == 0) return;  // no function exists
    comp[obj].assign(dom_size, 0);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < dom_size; ++i) {
      total *= cod_size;
      if (total > 100000000ull)
        throw BudgetError("enumerate_presheaf_morphisms: component space too large");
    }
    for (std::uint64_t code = 0; code < std::max<std::uint64_t>(total, 1);
         ++code) {
      std::uint64_t rest = code;
      for (std::size_t i = 0; i < dom_size; ++i) {
        comp[obj][i] = static_cast<std::uint32_t>(rest % cod_size);
        rest /= cod_size;
      }
      if (++states > budget)
        throw BudgetError(
            txt("enumerate_presheaf_morphisms: budget of ", budget,
                " candidate states exceeded"));
      bool ok = true;
      for (MorphismId f : constraints[obj])
        if (!natural_at(f)) {
          ok = false;
          break;
        }
      if (ok) go(obj + 1);
    }
  };
  go(0);
  return out;
}

// |Hom_PreShv(Yo(X), Yo(Y))| == |Hom(X, Y)| for all X, Y, witnessed by
// section_to_morphism / evaluate_at_identity being mutually inverse.
inline Report check_yoneda_fully_faithful(const FinCategory& c,
                                          std::uint64_t budget = 1000000) {
  Report rep;
  for (ObjectId x : c.objects()) {
    FinPresheaf yx = yoneda(c, x);
    for (ObjectId y : c.objects()) {
      FinPresheaf yy = yoneda(c, y);
      ++rep.checked;
      auto nat = enumerate_presheaf_morphisms(yx, yy, budget);
      if (nat.size() != c.hom(x, y).size()) {
        rep.fail(txt("Yoneda not fully faithful at (", c.object_name(x), ", ",
                     c.object_name(y), "): ", nat.size(),
                     " natural families vs ", c.hom(x, y).size(),
                     " morphisms"));
        continue;
      }
      for (std::uint32_t e = 0; e < yy.size_at(x); ++e) {
        PresheafMorphism m = section_to_morphism(yy, x, e);
        if (evaluate_at_identity(m, x) != e)
          rep.fail(txt("section/evaluate round trip fails at (",
                       c.object_name(x), ", ", c.object_name(y), ")"));
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// PreShv(base) as an effective category: objects are presheaves, morphisms
// are natural families, hom-sets are enumerated on demand.

struct PshSquare {
  PresheafMorphism left, top, bottom, right;
};

class PresheafCat {
 public:
  using Object = FinPresheaf;
  using Morphism = PresheafMorphism;

  explicit PresheafCat(const FinCategory* base, std::uint64_t budget = 1000000)
      : base_(base), budget_(budget) {}

  const FinCategory& base() const { return *base_; }
  std::uint64_t budget() const { return budget_; }

  Object dom(const Morphism& m) const { return m.source; }
  Object cod(const Morphism& m) const { return m.target; }

  Morphism identity(const Object& p) const {
    return identity_presheaf_morphism(p);
  }

  Morphism compose(const Morphism& f, const Morphism& g) const {
    return compose_presheaf_morphisms(f, g);
  }

  std::vector<Morphism> hom(const Object& p, const Object& q) const {
    return enumerate_presheaf_morphisms(p, q, budget_);
  }

  // Pointwise set-pullback test: at every base object the mediator map
  // e |-> (left(e), top(e)) must be injective and surjective onto the
  // compatible pairs.
  bool is_pullback(const SquareOf<Morphism>& sq) const {
    if (!(sq.left.source == sq.top.source)) return false;
    if (!(compose(sq.left, sq.bottom) == compose(sq.top, sq.right)))
      return false;
    const FinPresheaf& apex = sq.left.source;
    for (ObjectId x : base_->objects()) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> cone;
      for (std::uint32_t a = 0; a < sq.bottom.source.size_at(x); ++a)
        for (std::uint32_t b = 0; b < sq.right.source.size_at(x); ++b)
          if (sq.bottom.apply(x, a) == sq.right.apply(x, b))
            cone.emplace_back(a, b);
      if (cone.size() != apex.size_at(x)) return false;
      std::vector<bool> hit(cone.size(), false);
      for (std::uint32_t e = 0; e < apex.size_at(x); ++e) {
        std::pair<std::uint32_t, std::uint32_t> im{sq.left.apply(x, e),
                                                   sq.top.apply(x, e)};
        bool found = false;
        for (std::size_t i = 0; i < cone.size(); ++i)
          if (cone[i] == im) {
            if (hit[i]) return false;  // not injective
            hit[i] = true;
            found = true;
            break;
          }
        if (!found) return false;
      }
    }
    return true;
  }

  bool is_final_object(const Object& p) const {
    for (const auto& v : p.values)
      if (v.size() != 1) return false;
    return true;
  }

  // The unique morphism into an all-singleton presheaf.
  Morphism final_projection_to(const Object& x, const Object& final_obj) const {
    if (!is_final_object(final_obj))
      throw PreconditionError("final_projection_to: target is not final");
    PresheafMorphism m;
    m.source = x;
    m.target = final_obj;
    m.components.resize(base_->object_count());
    for (ObjectId o : base_->objects())
      m.components[o.v].assign(x.size_at(o), 0);
    return m;
  }

  std::string describe(const Morphism& m) const {
    std::ostringstream os;
    os << m.source.signature() << "->" << m.target.signature() << "[";
    for (std::size_t x = 0; x < m.components.size(); ++x) {
      if (x) os << "|";
      for (std::uint32_t e : m.components[x]) os << e;
    }
    os << "]";
    return os.str();
  }

  std::string describe_object(const Object& p) const { return p.signature(); }

 private:
  const FinCategory* base_;
  std::uint64_t budget_;
};

inline bool presheaf_morphism_is_iso(const PresheafMorphism& m) {
  for (std::size_t x = 0; x < m.components.size(); ++x) {
    if (m.source.values[x].size() != m.target.values[x].size()) return false;
    std::vector<bool> hit(m.target.values[x].size(), false);
    for (std::uint32_t e : m.components[x]) {
      if (hit[e]) return false;
      hit[e] = true;
    }
  }
  return true;
}

inline PresheafMorphism invert_presheaf_iso(const PresheafMorphism& m) {
  if (!presheaf_morphism_is_iso(m))
    throw PreconditionError("invert_presheaf_iso: morphism is not an iso");
  PresheafMorphism inv;
  inv.source = m.target;
  inv.target = m.source;
  inv.components.resize(m.components.size());
  for (std::size_t x = 0; x < m.components.size(); ++x) {
    inv.components[x].resize(m.components[x].size());
    for (std::uint32_t e = 0; e < m.components[x].size(); ++e)
      inv.components[x][m.components[x][e]] = e;
  }
  return inv;
}

}  // namespace csys
