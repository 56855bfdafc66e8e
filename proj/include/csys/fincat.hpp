#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "csys/core.hpp"

namespace csys {

// A finite precategory: indexed objects and morphisms plus a total
// composition table over composable pairs. Composition is diagrammatic
// (compose(f, g) = "f then g", defined when cod(f) == dom(g)).
class FinCategory {
 public:
  using Object = ObjectId;
  using Morphism = MorphismId;

  ObjectId add_object(std::string name) {
    object_names_.push_back(std::move(name));
    identities_.push_back(std::nullopt);
    return ObjectId{static_cast<std::uint32_t>(object_names_.size() - 1)};
  }

  MorphismId add_morphism(std::string name, ObjectId dom, ObjectId cod) {
    require_object(dom, "add_morphism dom");
    require_object(cod, "add_morphism cod");
    morphisms_.push_back(Mor{std::move(name), dom, cod});
    return MorphismId{static_cast<std::uint32_t>(morphisms_.size() - 1)};
  }

  void set_identity(ObjectId x, MorphismId m) {
    require_object(x, "set_identity");
    require_morphism(m, "set_identity");
    identities_[x.v] = m;
  }

  void set_composite(MorphismId f, MorphismId g, MorphismId fg) {
    require_morphism(f, "set_composite f");
    require_morphism(g, "set_composite g");
    require_morphism(fg, "set_composite result");
    if (cod(f) != dom(g))
      throw StructuralError(txt("set_composite: pair (", morphism_name(f),
                                ", ", morphism_name(g),
                                ") is not composable"));
    compose_[key(f, g)] = fg;
  }

  // Builds the hom index. Call once after all tables are filled.
  void finalize() {
    const std::size_t n = object_count();
    hom_.assign(n * n, {});
    for (std::uint32_t i = 0; i < morphisms_.size(); ++i) {
      const Mor& m = morphisms_[i];
      hom_[m.dom.v * n + m.cod.v].push_back(MorphismId{i});
    }
    // already ascending by construction, but keep the invariant explicit
    for (auto& h : hom_) std::sort(h.begin(), h.end());
    finalized_ = true;
  }

  std::size_t object_count() const { return object_names_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }

  ObjectId dom(MorphismId m) const {
    require_morphism(m, "dom");
    return morphisms_[m.v].dom;
  }
  ObjectId cod(MorphismId m) const {
    require_morphism(m, "cod");
    return morphisms_[m.v].cod;
  }

  bool has_identity(ObjectId x) const {
    require_object(x, "has_identity");
    return identities_[x.v].has_value();
  }

  MorphismId identity(ObjectId x) const {
    require_object(x, "identity");
    if (!identities_[x.v])
      throw StructuralError(
          txt("no identity declared for object ", object_name(x)));
    return *identities_[x.v];
  }

  bool composable(MorphismId f, MorphismId g) const {
    return cod(f) == dom(g);
  }

  bool has_composite(MorphismId f, MorphismId g) const {
    return compose_.count(key(f, g)) != 0;
  }

  // Diagrammatic composition: f then g. Lookup of a non-composable or
  // missing pair is a structural error, never a silent default.
  MorphismId compose(MorphismId f, MorphismId g) const {
    auto it = compose_.find(key(f, g));
    if (it == compose_.end())
      throw StructuralError(txt("composition table has no entry for (",
                                morphism_name(f), ", ", morphism_name(g),
                                ")"));
    return it->second;
  }

  // All morphisms X -> Y in ascending index order (stable, deterministic).
  const std::vector<MorphismId>& hom(ObjectId x, ObjectId y) const {
    require_object(x, "hom");
    require_object(y, "hom");
    if (!finalized_)
      throw StructuralError("hom index queried before finalize()");
    return hom_[x.v * object_count() + y.v];
  }

  const std::string& object_name(ObjectId x) const {
    require_object(x, "object_name");
    return object_names_[x.v];
  }
  const std::string& morphism_name(MorphismId m) const {
    require_morphism(m, "morphism_name");
    return morphisms_[m.v].name;
  }

  std::optional<ObjectId> find_object(const std::string& name) const {
    for (std::uint32_t i = 0; i < object_names_.size(); ++i)
      if (object_names_[i] == name) return ObjectId{i};
    return std::nullopt;
  }
  std::optional<MorphismId> find_morphism(const std::string& name) const {
    for (std::uint32_t i = 0; i < morphisms_.size(); ++i)
      if (morphisms_[i].name == name) return MorphismId{i};
    return std::nullopt;
  }

  std::vector<ObjectId> objects() const {
    std::vector<ObjectId> out;
    out.reserve(object_count());
    for (std::uint32_t i = 0; i < object_count(); ++i)
      out.push_back(ObjectId{i});
    return out;
  }
  std::vector<MorphismId> morphisms() const {
    std::vector<MorphismId> out;
    out.reserve(morphism_count());
    for (std::uint32_t i = 0; i < morphism_count(); ++i)
      out.push_back(MorphismId{i});
    return out;
  }

  bool is_iso(MorphismId f) const { return inverse(f).has_value(); }

  std::optional<MorphismId> inverse(MorphismId f) const {
    for (MorphismId g : hom(cod(f), dom(f)))
      if (compose(f, g) == identity(dom(f)) &&
          compose(g, f) == identity(cod(f)))
        return g;
    return std::nullopt;
  }

  std::string describe(MorphismId m) const {
    return txt(morphism_name(m), ": ", object_name(dom(m)), " -> ",
               object_name(cod(m)));
  }
  std::string describe_object(ObjectId x) const { return object_name(x); }

  bool is_final_object(ObjectId x) const {
    for (ObjectId w : objects())
      if (hom(w, x).size() != 1) return false;
    return true;
  }

  bool is_pullback(const CommutativeSquare& sq) const;

 private:
  struct Mor {
    std::string name;
    ObjectId dom, cod;
  };

  static std::uint64_t key(MorphismId f, MorphismId g) {
    return (static_cast<std::uint64_t>(f.v) << 32) | g.v;
  }

  void require_object(ObjectId x, const char* where) const {
    if (x.v >= object_names_.size())
      throw StructuralError(
          txt(where, ": object index ", x.v, " out of range"));
  }
  void require_morphism(MorphismId m, const char* where) const {
    if (m.v >= morphisms_.size())
      throw StructuralError(
          txt(where, ": morphism index ", m.v, " out of range"));
  }

  std::vector<std::string> object_names_;
  std::vector<Mor> morphisms_;
  std::vector<std::optional<MorphismId>> identities_;
  std::unordered_map<std::uint64_t, MorphismId> compose_;
  std::vector<std::vector<MorphismId>> hom_;
  bool finalized_ = false;
};

// Lists every violated axiom instance: missing/ill-typed identities and
// composites, dom/cod coherence, unit laws, associativity. Empty report
// means the tables describe a category.
inline Report validate_category(const FinCategory& c) {
  Report rep;
  for (ObjectId x : c.objects()) {
    ++rep.checked;
    if (!c.has_identity(x)) {
      rep.fail(txt("object ", c.object_name(x), " has no identity"));
      continue;
    }
    MorphismId id = c.identity(x);
    if (c.dom(id) != x || c.cod(id) != x)
      rep.fail(txt("identity of ", c.object_name(x),
                   " has wrong endpoints: ", c.describe(id)));
  }
  // table completeness and dom/cod coherence
  for (MorphismId f : c.morphisms()) {
    for (MorphismId g : c.morphisms()) {
      if (!c.composable(f, g)) continue;
      ++rep.checked;
      if (!c.has_composite(f, g)) {
        rep.fail(txt("missing composite for (", c.morphism_name(f), ", ",
                     c.morphism_name(g), ")"));
        continue;
      }
      MorphismId fg = c.compose(f, g);
      if (c.dom(fg) != c.dom(f) || c.cod(fg) != c.cod(g))
        rep.fail(txt("composite of (", c.morphism_name(f), ", ",
                     c.morphism_name(g), ") has wrong endpoints: ",
                     c.describe(fg)));
    }
  }
  // unit laws
  for (MorphismId f : c.morphisms()) {
    if (!c.has_identity(c.dom(f)) || !c.has_identity(c.cod(f))) continue;
    MorphismId idd = c.identity(c.dom(f));
    MorphismId idc = c.identity(c.cod(f));
    ++rep.checked;
    if (c.has_composite(idd, f) && c.compose(idd, f) != f)
      rep.fail(txt("left identity law fails for (", c.morphism_name(idd),
                   ", ", c.morphism_name(f), ")"));
    if (c.has_composite(f, idc) && c.compose(f, idc) != f)
      rep.fail(txt("right identity law fails for (", c.morphism_name(f),
                   ", ", c.morphism_name(idc), ")"));
  }
  // associativity
  for (MorphismId f : c.morphisms()) {
    for (MorphismId g : c.morphisms()) {
      if (!c.composable(f, g) || !c.has_composite(f, g)) continue;
      for (MorphismId h : c.morphisms()) {
        if (!c.composable(g, h) || !c.has_composite(g, h)) continue;
        MorphismId fg = c.compose(f, g);
        MorphismId gh = c.compose(g, h);
        if (!c.has_composite(fg, h) || !c.has_composite(f, gh)) continue;
        ++rep.checked;
        if (c.compose(fg, h) != c.compose(f, gh))
          rep.fail(txt("associativity fails for (", c.morphism_name(f), ", ",
                       c.morphism_name(g), ", ", c.morphism_name(h), ")"));
      }
    }
  }
  return rep;
}

// All morphisms X -> Y, ascending index order.
inline std::vector<MorphismId> enumerate_hom(const FinCategory& c, ObjectId x,
                                             ObjectId y) {
  return c.hom(x, y);
}

inline bool square_commutes(const FinCategory& c,
                            const CommutativeSquare& sq) {
  if (c.dom(sq.left) != c.dom(sq.top)) return false;
  if (c.cod(sq.left) != c.dom(sq.bottom)) return false;
  if (c.cod(sq.top) != c.dom(sq.right)) return false;
  if (c.cod(sq.bottom) != c.cod(sq.right)) return false;
  return c.compose(sq.left, sq.bottom) == c.compose(sq.top, sq.right);
}

struct ConeMediator {
  ObjectId apex;         // W
  MorphismId to_a;       // a : W -> A  (a∘bottom = b∘right)
  MorphismId to_b;       // b : W -> B
  MorphismId mediator;   // the unique h : W -> P
};

struct ConeCounterexample {
  ObjectId apex;
  MorphismId to_a;
  MorphismId to_b;
  std::vector<MorphismId> mediators;  // empty or size >= 2
};

struct PullbackCheck {
  bool ok = false;
  std::vector<ConeMediator> certificate;
  std::optional<ConeCounterexample> counterexample;
};

// Decides the pullback universal property by exhaustive cone enumeration.
// Precondition: the square commutes.
inline PullbackCheck check_pullback_square(const FinCategory& c,
                                           const CommutativeSquare& sq) {
  if (!square_commutes(c, sq))
    throw PreconditionError(
        txt("check_pullback_square: square (left=", c.morphism_name(sq.left),
            ", top=", c.morphism_name(sq.top),
            ", bottom=", c.morphism_name(sq.bottom),
            ", right=", c.morphism_name(sq.right), ") does not commute"));
  const ObjectId apex = c.dom(sq.left);
  const ObjectId a_obj = c.cod(sq.left);
  const ObjectId b_obj = c.cod(sq.top);
  PullbackCheck out;
  for (ObjectId w : c.objects()) {
    for (MorphismId a : c.hom(w, a_obj)) {
      for (MorphismId b : c.hom(w, b_obj)) {
        if (c.compose(a, sq.bottom) != c.compose(b, sq.right)) continue;
        std::vector<MorphismId> meds;
        for (MorphismId h : c.hom(w, apex))
          if (c.compose(h, sq.left) == a && c.compose(h, sq.top) == b)
            meds.push_back(h);
        if (meds.size() == 1) {
          out.certificate.push_back(ConeMediator{w, a, b, meds[0]});
        } else {
          out.ok = false;
          out.counterexample = ConeCounterexample{w, a, b, std::move(meds)};
          out.certificate.clear();
          return out;
        }
      }
    }
  }
  out.ok = true;
  return out;
}

inline bool FinCategory::is_pullback(const CommutativeSquare& sq) const {
  return check_pullback_square(*this, sq).ok;
}

// The unique projections X -> final object, one per X.
struct FinalObjectCertificate {
  ObjectId object;
  std::vector<MorphismId> projections;  // indexed by ObjectId
};

struct FinalObjectCounterexample {
  ObjectId witness;        // |Hom(witness, candidate)| != 1
  std::size_t hom_size;
};

using FinalObjectResult =
    std::variant<FinalObjectCertificate, FinalObjectCounterexample>;

inline FinalObjectResult check_final_object(const FinCategory& c,
                                            ObjectId candidate) {
  FinalObjectCertificate cert;
  cert.object = candidate;
  for (ObjectId w : c.objects()) {
    const auto& h = c.hom(w, candidate);
    if (h.size() != 1)
      return FinalObjectCounterexample{w, h.size()};
    cert.projections.push_back(h[0]);
  }
  return cert;
}

// Object and morphism maps between finite categories; validity means the
// maps preserve dom/cod, identities and composition.
struct FunctorData {
  const FinCategory* source = nullptr;
  const FinCategory* target = nullptr;
  std::vector<ObjectId> on_objects;     // indexed by source ObjectId
  std::vector<MorphismId> on_morphisms; // indexed by source MorphismId
};

inline Report validate_functor(const FunctorData& fn) {
  Report rep;
  const FinCategory& s = *fn.source;
  const FinCategory& t = *fn.target;
  if (fn.on_objects.size() != s.object_count() ||
      fn.on_morphisms.size() != s.morphism_count())
    throw StructuralError("validate_functor: map tables have wrong size");
  for (MorphismId m : s.morphisms()) {
    ++rep.checked;
    MorphismId fm = fn.on_morphisms[m.v];
    if (t.dom(fm) != fn.on_objects[s.dom(m).v] ||
        t.cod(fm) != fn.on_objects[s.cod(m).v])
      rep.fail(txt("functor breaks dom/cod at ", s.morphism_name(m)));
  }
  for (ObjectId x : s.objects()) {
    ++rep.checked;
    if (fn.on_morphisms[s.identity(x).v] !=
        t.identity(fn.on_objects[x.v]))
      rep.fail(txt("functor breaks identity at ", s.object_name(x)));
  }
  for (MorphismId f : s.morphisms()) {
    for (MorphismId g : s.morphisms()) {
      if (!s.composable(f, g)) continue;
      ++rep.checked;
      MorphismId ff = fn.on_morphisms[f.v];
      MorphismId fg = fn.on_morphisms[g.v];
      if (!t.composable(ff, fg) ||
          fn.on_morphisms[s.compose(f, g).v] != t.compose(ff, fg))
        rep.fail(txt("functor breaks composition at (", s.morphism_name(f),
                     ", ", s.morphism_name(g), ")"));
    }
  }
  return rep;
}

inline FunctorData identity_functor(const FinCategory& c) {
  FunctorData fn;
  fn.source = &c;
  fn.target = &c;
  for (ObjectId x : c.objects()) fn.on_objects.push_back(x);
  for (MorphismId m : c.morphisms()) fn.on_morphisms.push_back(m);
  return fn;
}

}  // namespace csys
