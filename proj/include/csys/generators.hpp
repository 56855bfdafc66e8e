#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csys/core.hpp"
#include "csys/fincat.hpp"

namespace csys {

// The one-object category with only the identity.
inline FinCategory make_terminal_category() {
  FinCategory c;
  ObjectId pt = c.add_object("pt");
  MorphismId id = c.add_morphism("id", pt, pt);
  c.set_identity(pt, id);
  c.set_composite(id, id, id);
  c.finalize();
  return c;
}

// BG for a group presented by a Cayley table: one object pt whose
// endomorphisms are the group elements, compose(i, j) = table[i][j].
// Rejects tables that fail to describe a group.
inline FinCategory make_group_category(const std::vector<std::string>& names,
                                       const std::vector<std::vector<int>>& table) {
  const std::size_t n = names.size();
  if (n == 0 || table.size() != n)
    throw StructuralError("make_group_category: table is not square");
  for (const auto& row : table) {
    if (row.size() != n)
      throw StructuralError("make_group_category: table is not square");
    for (int v : row)
      if (v < 0 || static_cast<std::size_t>(v) >= n)
        throw StructuralError("make_group_category: table entry out of range");
  }
  // locate a two-sided unit
  int unit = -1;
  for (std::size_t e = 0; e < n; ++e) {
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i)
      if (table[e][i] != static_cast<int>(i) ||
          table[i][e] != static_cast<int>(i))
        ok = false;
    if (ok) {
      unit = static_cast<int>(e);
      break;
    }
  }
  if (unit < 0)
    throw StructuralError("make_group_category: Cayley table has no unit");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (table[static_cast<std::size_t>(table[i][j])][k] !=
            table[i][static_cast<std::size_t>(table[j][k])])
          throw StructuralError(
              "make_group_category: Cayley table is not associative");
  for (std::size_t i = 0; i < n; ++i) {
    bool has_inverse = false;
    for (std::size_t j = 0; j < n; ++j)
      if (table[i][j] == unit && table[j][i] == unit) has_inverse = true;
    if (!has_inverse)
      throw StructuralError(
          txt("make_group_category: element ", names[i], " has no inverse"));
  }

  FinCategory c;
  ObjectId pt = c.add_object("pt");
  std::vector<MorphismId> ms;
  for (const auto& nm : names) ms.push_back(c.add_morphism(nm, pt, pt));
  c.set_identity(pt, ms[static_cast<std::size_t>(unit)]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c.set_composite(ms[i], ms[j], ms[static_cast<std::size_t>(table[i][j])]);
  c.finalize();
  return c;
}

inline FinCategory make_cyclic_group_category(int n) {
  if (n < 1) throw StructuralError("make_cyclic_group_category: n must be >= 1");
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    names.push_back(i == 0 ? "e" : (n == 2 && i == 1 ? "g" : txt("g", i)));
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n),
                                      std::vector<int>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          (i + j) % n;
  return make_group_category(names, table);
}

// A skeleton of finite sets at desk scale: one object per cardinality
// 0..max_size with all functions between them as morphisms. Serves as the
// finite stand-in for the category of sets: U is the largest object read as
// a set of sets (element 0 = the empty set, element k = a k-element set
// shifted so that p below picks out total elements), Ũ is the set of pairs
// (member set, chosen element).
struct FinSetsSkeleton {
  FinCategory cat;
  ObjectId pt;        // the one-element set
  ObjectId u;         // perceived as {∅, {0}} for max_size = 2
  ObjectId u_tilde;   // pairs (X, x) with x ∈ X
  MorphismId p;       // (X, x) |-> X

  // set model for oracles: object sizes and function tables by morphism id
  std::vector<int> sizes;
  std::vector<std::vector<int>> functions;
};

inline std::string finset_fun_name(int m, int k, const std::vector<int>& img) {
  std::string s = txt("f", m, "to", k, "_");
  for (int v : img) s += static_cast<char>('0' + v);
  return s;
}

inline FinSetsSkeleton make_finsets_skeleton(int max_size = 2) {
  if (max_size < 2)
    throw StructuralError("make_finsets_skeleton: max_size must be >= 2");
  FinSetsSkeleton out;
  FinCategory& c = out.cat;
  std::vector<ObjectId> objs;
  for (int s = 0; s <= max_size; ++s) {
    objs.push_back(c.add_object(txt("N", s)));
    out.sizes.push_back(s);
  }
  // all functions N_m -> N_k, ordered by image tuple read little-endian
  struct Fn {
    int m, k;
    std::vector<int> img;
    MorphismId id;
  };
  std::vector<Fn> fns;
  for (int m = 0; m <= max_size; ++m) {
    for (int k = 0; k <= max_size; ++k) {
      if (m > 0 && k == 0) continue;  // no functions from nonempty to empty
      std::uint64_t count = 1;
      for (int i = 0; i < m; ++i) count *= static_cast<std::uint64_t>(k);
      for (std::uint64_t code = 0; code < count; ++code) {
        std::vector<int> img(static_cast<std::size_t>(m));
        std::uint64_t rest = code;
        for (int i = 0; i < m; ++i) {
          img[static_cast<std::size_t>(i)] = static_cast<int>(rest % k);
          rest /= static_cast<std::uint64_t>(k);
        }
        MorphismId mid =
            c.add_morphism(finset_fun_name(m, k, img),
                           objs[static_cast<std::size_t>(m)],
                           objs[static_cast<std::size_t>(k)]);
        fns.push_back(Fn{m, k, img, mid});
        out.functions.push_back(img);
      }
    }
  }
  auto find_fn = [&](int m, int k, const std::vector<int>& img) -> MorphismId {
    for (const Fn& f : fns)
      if (f.m == m && f.k == k && f.img == img) return f.id;
    throw StructuralError("make_finsets_skeleton: function lookup failed");
  };
  for (int s = 0; s <= max_size; ++s) {
    std::vector<int> idimg(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) idimg[static_cast<std::size_t>(i)] = i;
    c.set_identity(objs[static_cast<std::size_t>(s)], find_fn(s, s, idimg));
  }
  for (const Fn& f : fns) {
    for (const Fn& g : fns) {
      if (f.k != g.m) continue;
      std::vector<int> img(f.img.size());
      for (std::size_t i = 0; i < f.img.size(); ++i)
        img[i] = g.img[static_cast<std::size_t>(f.img[i])];
      c.set_composite(f.id, g.id, find_fn(f.m, g.k, img));
    }
  }
  c.finalize();
  out.pt = objs[1];
  out.u = objs[2];
  out.u_tilde = objs[1];
  out.p = find_fn(1, 2, {1});  // the unique pair ({0},0) |-> {0}
  return out;
}

// The Boolean lattice on `atoms` atoms as a poset category: one morphism
// X -> Y exactly when X ⊆ Y. Meets are pullbacks and the top is final.
inline FinCategory make_boolean_lattice(int atoms = 2) {
  if (atoms < 1 || atoms > 4)
    throw StructuralError("make_boolean_lattice: atoms must be in 1..4");
  const int n = 1 << atoms;
  FinCategory c;
  std::vector<ObjectId> objs;
  auto subset_name = [&](int mask) {
    if (mask == 0) return std::string("bot");
    if (mask == n - 1 && atoms > 1) return std::string("top");
    std::string s;
    for (int a = 0; a < atoms; ++a)
      if (mask & (1 << a)) s += static_cast<char>('a' + a);
    return s;
  };
  for (int mask = 0; mask < n; ++mask)
    objs.push_back(c.add_object(subset_name(mask)));
  struct Leq {
    int from, to;
    MorphismId id;
  };
  std::vector<Leq> leqs;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if ((x & y) == x) {
        MorphismId m = c.add_morphism(
            txt("le_", subset_name(x), "_", subset_name(y)),
            objs[static_cast<std::size_t>(x)], objs[static_cast<std::size_t>(y)]);
        leqs.push_back(Leq{x, y, m});
      }
  auto find_leq = [&](int x, int y) -> MorphismId {
    for (const Leq& l : leqs)
      if (l.from == x && l.to == y) return l.id;
    throw StructuralError("make_boolean_lattice: relation lookup failed");
  };
  for (int x = 0; x < n; ++x)
    c.set_identity(objs[static_cast<std::size_t>(x)], find_leq(x, x));
  for (const Leq& f : leqs)
    for (const Leq& g : leqs)
      if (f.to == g.from) c.set_composite(f.id, g.id, find_leq(f.from, g.to));
  c.finalize();
  return c;
}

// n objects with exactly one morphism between every ordered pair. For n = 2
// this is the doubled-terminal test category: both objects are final.
inline FinCategory make_indiscrete_category(int n) {
  if (n < 1) throw StructuralError("make_indiscrete_category: n must be >= 1");
  FinCategory c;
  std::vector<ObjectId> objs;
  for (int i = 0; i < n; ++i) objs.push_back(c.add_object(txt("x", i)));
  std::vector<std::vector<MorphismId>> ms(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      ms[static_cast<std::size_t>(i)].push_back(
          c.add_morphism(txt("u_", i, "_", j), objs[static_cast<std::size_t>(i)],
                         objs[static_cast<std::size_t>(j)]));
  for (int i = 0; i < n; ++i)
    c.set_identity(objs[static_cast<std::size_t>(i)],
                   ms[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        c.set_composite(ms[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                        ms[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)],
                        ms[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
  c.finalize();
  return c;
}

}  // namespace csys
