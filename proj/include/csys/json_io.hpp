#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "csys/core.hpp"
#include "csys/csystem.hpp"
#include "csys/fincat.hpp"
#include "csys/presheaf.hpp"
#include "csys/universe.hpp"

namespace csys {

using nlohmann::json;

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw StructuralError(txt("cannot open ", path));
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw StructuralError(txt(path, ": ", e.what()));
  }
}

inline void save_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw StructuralError(txt("cannot open ", path, " for writing"));
  out << j.dump(2) << "\n";
}

// Category format, names referencing prior entries. Composition is listed
// in diagrammatic order: an entry [f, g, fg] means "f then g is fg".
//   {"objects": ["pt", ...],
//    "morphisms": [{"name": "e", "dom": "pt", "cod": "pt"}, ...],
//    "identities": {"pt": "e"},
//    "compose": [["e","e","e"], ...]}
inline FinCategory category_from_json(const json& j) {
  FinCategory c;
  if (!j.is_object()) throw StructuralError("category: not a JSON object");
  if (!j.contains("objects") || !j["objects"].is_array())
    throw StructuralError("category: missing \"objects\" array");
  std::set<std::string> seen;
  std::size_t pos = 0;
  for (const auto& o : j["objects"]) {
    if (!o.is_string())
      throw StructuralError(txt("objects[", pos, "]: not a string"));
    if (!seen.insert(o.get<std::string>()).second)
      throw StructuralError(txt("objects[", pos, "]: duplicate name \"",
                                o.get<std::string>(), "\""));
    c.add_object(o.get<std::string>());
    ++pos;
  }
  if (!j.contains("morphisms") || !j["morphisms"].is_array())
    throw StructuralError("category: missing \"morphisms\" array");
  seen.clear();
  pos = 0;
  auto obj_ref = [&](const json& v, const std::string& where) -> ObjectId {
    if (!v.is_string()) throw StructuralError(txt(where, ": not a string"));
    auto id = c.find_object(v.get<std::string>());
    if (!id)
      throw StructuralError(txt(where, ": unknown object \"",
                                v.get<std::string>(), "\""));
    return *id;
  };
  for (const auto& m : j["morphisms"]) {
    std::string where = txt("morphisms[", pos, "]");
    if (!m.is_object() || !m.contains("name") || !m.contains("dom") ||
        !m.contains("cod"))
      throw StructuralError(txt(where, ": needs name/dom/cod"));
    std::string name = m["name"].get<std::string>();
    if (!seen.insert(name).second)
      throw StructuralError(txt(where, ": duplicate name \"", name, "\""));
    c.add_morphism(name, obj_ref(m["dom"], where + ".dom"),
                   obj_ref(m["cod"], where + ".cod"));
    ++pos;
  }
  auto mor_ref = [&](const json& v, const std::string& where) -> MorphismId {
    if (!v.is_string()) throw StructuralError(txt(where, ": not a string"));
    auto id = c.find_morphism(v.get<std::string>());
    if (!id)
      throw StructuralError(txt(where, ": unknown morphism \"",
                                v.get<std::string>(), "\""));
    return *id;
  };
  if (!j.contains("identities") || !j["identities"].is_object())
    throw StructuralError("category: missing \"identities\" object");
  for (const auto& [k, v] : j["identities"].items()) {
    auto x = c.find_object(k);
    if (!x)
      throw StructuralError(txt("identities: unknown object \"", k, "\""));
    c.set_identity(*x, mor_ref(v, txt("identities[\"", k, "\"]")));
  }
  if (!j.contains("compose") || !j["compose"].is_array())
    throw StructuralError("category: missing \"compose\" array");
  pos = 0;
  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (const auto& e : j["compose"]) {
    std::string where = txt("compose[", pos, "]");
    if (!e.is_array() || e.size() != 3)
      throw StructuralError(txt(where, ": needs [f, g, fg]"));
    MorphismId f = mor_ref(e[0], where + "[0]");
    MorphismId g = mor_ref(e[1], where + "[1]");
    MorphismId fg = mor_ref(e[2], where + "[2]");
    if (!pairs.insert({f.v, g.v}).second)
      throw StructuralError(txt(where, ": duplicate pair"));
    try {
      c.set_composite(f, g, fg);
    } catch (const StructuralError& err) {
      throw StructuralError(txt(where, ": ", err.what()));
    }
    ++pos;
  }
  c.finalize();
  return c;
}

inline json category_to_json(const FinCategory& c) {
  json j;
  j["objects"] = json::array();
  for (ObjectId x : c.objects()) j["objects"].push_back(c.object_name(x));
  j["morphisms"] = json::array();
  for (MorphismId m : c.morphisms())
    j["morphisms"].push_back({{"name", c.morphism_name(m)},
                              {"dom", c.object_name(c.dom(m))},
                              {"cod", c.object_name(c.cod(m))}});
  j["identities"] = json::object();
  for (ObjectId x : c.objects())
    j["identities"][c.object_name(x)] = c.morphism_name(c.identity(x));
  j["compose"] = json::array();
  for (MorphismId f : c.morphisms())
    for (MorphismId g : c.morphisms())
      if (c.composable(f, g) && c.has_composite(f, g))
        j["compose"].push_back({c.morphism_name(f), c.morphism_name(g),
                                c.morphism_name(c.compose(f, g))});
  return j;
}

// Universe format:
//   {"p": "e", "final": "pt",
//    "squares": {"f": {"object": "X", "proj": "p1", "Q": "q1"}, ...}}
// or {"p": "e", "final": "pt", "auto": true} to derive the squares.
inline FinUniverseCategory universe_from_json(const FinCategory& c,
                                              const json& j) {
  if (!j.is_object()) throw StructuralError("universe: not a JSON object");
  if (!j.contains("p") || !j["p"].is_string())
    throw StructuralError("universe: missing \"p\"");
  auto p = c.find_morphism(j["p"].get<std::string>());
  if (!p)
    throw StructuralError(txt("universe: unknown morphism \"",
                              j["p"].get<std::string>(), "\""));
  if (!j.contains("final") || !j["final"].is_string())
    throw StructuralError("universe: missing \"final\"");
  auto pt = c.find_object(j["final"].get<std::string>());
  if (!pt)
    throw StructuralError(txt("universe: unknown object \"",
                              j["final"].get<std::string>(), "\""));
  if (j.value("auto", false)) return derive_universe_structure(c, *p, *pt);
  if (!j.contains("squares") || !j["squares"].is_object())
    throw StructuralError("universe: missing \"squares\" (or \"auto\": true)");
  std::map<MorphismId, CanonicalSquareT<FinCategory>> squares;
  for (const auto& [k, v] : j["squares"].items()) {
    auto f = c.find_morphism(k);
    if (!f)
      throw StructuralError(txt("squares: unknown morphism \"", k, "\""));
    if (!v.is_object() || !v.contains("object") || !v.contains("proj") ||
        !v.contains("Q"))
      throw StructuralError(txt("squares[\"", k, "\"]: needs object/proj/Q"));
    auto total = c.find_object(v["object"].get<std::string>());
    auto proj = c.find_morphism(v["proj"].get<std::string>());
    auto q = c.find_morphism(v["Q"].get<std::string>());
    if (!total || !proj || !q)
      throw StructuralError(txt("squares[\"", k, "\"]: dangling reference"));
    squares[*f] = CanonicalSquareT<FinCategory>{*total, *proj, *q, *f};
  }
  return make_fin_universe_category(c, *p, std::move(squares), *pt);
}

inline json universe_to_json(const FinUniverseCategory& uc) {
  const FinCategory& c = uc.cat();
  json j;
  j["p"] = c.morphism_name(uc.p());
  j["final"] = c.object_name(uc.base_point());
  j["squares"] = json::object();
  for (const auto& [f, sq] : uc.squares)
    j["squares"][c.morphism_name(f)] = {
        {"object", c.object_name(sq.total)},
        {"proj", c.morphism_name(sq.proj)},
        {"Q", c.morphism_name(sq.q_top)}};
  return j;
}

// Presheaf format over a given base:
//   {"values": {"X": ["a", "b"], ...},
//    "restrictions": {"f": {"a": "a'", ...}, ...}}
// Identity restrictions may be omitted.
inline FinPresheaf presheaf_from_json(const FinCategory& c, const json& j) {
  FinPresheaf p;
  p.base = &c;
  p.values.resize(c.object_count());
  if (!j.contains("values") || !j["values"].is_object())
    throw StructuralError("presheaf: missing \"values\"");
  for (const auto& [k, v] : j["values"].items()) {
    auto x = c.find_object(k);
    if (!x) throw StructuralError(txt("values: unknown object \"", k, "\""));
    std::set<std::string> seen;
    for (const auto& e : v) {
      if (!seen.insert(e.get<std::string>()).second)
        throw StructuralError(txt("values[\"", k, "\"]: duplicate element"));
      p.values[x->v].push_back(e.get<std::string>());
    }
  }
  p.restrictions.resize(c.morphism_count());
  for (MorphismId m : c.morphisms()) {
    ObjectId x = c.dom(m), y = c.cod(m);
    const std::string& name = c.morphism_name(m);
    json r;
    if (j.contains("restrictions") && j["restrictions"].contains(name))
      r = j["restrictions"][name];
    else if (m == c.identity(x) && x == y)
      r = json::object();  // identity fills itself below
    else
      throw StructuralError(txt("presheaf: missing restriction for \"", name,
                                "\""));
    for (std::uint32_t e = 0; e < p.values[y.v].size(); ++e) {
      const std::string& en = p.values[y.v][e];
      std::string target = en;
      if (r.contains(en))
        target = r[en].get<std::string>();
      else if (!(m == c.identity(x)))
        throw StructuralError(txt("restriction \"", name,
                                  "\": missing image of \"", en, "\""));
      auto idx = p.find_elem(x, target);
      if (!idx)
        throw StructuralError(txt("restriction \"", name, "\": \"", target,
                                  "\" is not an element at ",
                                  c.object_name(x)));
      p.restrictions[m.v].push_back(*idx);
    }
  }
  return p;
}

// Truncated C-system serialization: explicit object/morphism tables plus
// the p/q/s maps.
inline json csystem_to_json(const TruncCSystem& cc) {
  const FinCategory& c = cc.cat;
  json j = category_to_json(c);
  j["depth"] = cc.depth;
  j["pt"] = c.object_name(cc.pt);
  j["lengths"] = json::object();
  j["ft"] = json::object();
  j["p"] = json::object();
  for (ObjectId x : c.objects()) {
    j["lengths"][c.object_name(x)] = cc.length[x.v];
    j["ft"][c.object_name(x)] = c.object_name(cc.ft[x.v]);
    j["p"][c.object_name(x)] = c.morphism_name(cc.p[x.v]);
  }
  j["q"] = json::array();
  for (const auto& [key, e] : cc.q)
    j["q"].push_back({{"f", c.morphism_name(MorphismId{key.first})},
                      {"Gamma", c.object_name(ObjectId{key.second})},
                      {"fstar", c.object_name(e.fstar)},
                      {"q", c.morphism_name(e.q)}});
  if (cc.has_s) {
    j["s"] = json::array();
    for (const auto& [f, sf] : cc.s)
      j["s"].push_back({{"f", c.morphism_name(MorphismId{f})},
                        {"sf", c.morphism_name(sf)}});
  }
  return j;
}

inline TruncCSystem csystem_from_json(const json& j) {
  TruncCSystem cc;
  cc.cat = category_from_json(j);
  const FinCategory& c = cc.cat;
  if (!j.contains("depth") || !j["depth"].is_number_integer())
    throw StructuralError("csystem: missing \"depth\"");
  cc.depth = j["depth"].get<int>();
  auto obj_ref = [&](const json& v, const std::string& where) -> ObjectId {
    auto id = c.find_object(v.get<std::string>());
    if (!id)
      throw StructuralError(txt(where, ": unknown object \"",
                                v.get<std::string>(), "\""));
    return *id;
  };
  auto mor_ref = [&](const json& v, const std::string& where) -> MorphismId {
    auto id = c.find_morphism(v.get<std::string>());
    if (!id)
      throw StructuralError(txt(where, ": unknown morphism \"",
                                v.get<std::string>(), "\""));
    return *id;
  };
  cc.pt = obj_ref(j.at("pt"), "pt");
  cc.length.resize(c.object_count());
  cc.ft.resize(c.object_count());
  cc.p.resize(c.object_count());
  for (ObjectId x : c.objects()) {
    const std::string& n = c.object_name(x);
    cc.length[x.v] = j.at("lengths").at(n).get<int>();
    cc.ft[x.v] = obj_ref(j.at("ft").at(n), "ft");
    cc.p[x.v] = mor_ref(j.at("p").at(n), "p");
  }
  for (const auto& e : j.at("q")) {
    MorphismId f = mor_ref(e.at("f"), "q.f");
    ObjectId gamma = obj_ref(e.at("Gamma"), "q.Gamma");
    cc.q[{f.v, gamma.v}] = TruncCSystem::QEntry{
        obj_ref(e.at("fstar"), "q.fstar"), mor_ref(e.at("q"), "q.q")};
  }
  if (j.contains("s")) {
    cc.has_s = true;
    for (const auto& e : j.at("s"))
      cc.s[mor_ref(e.at("f"), "s.f").v] = mor_ref(e.at("sf"), "s.sf");
  }
  return cc;
}

// Functor triple format:
//   {"on_objects": {"X": "X'"}, "on_morphisms": {"f": "f'"},
//    "phi": "id_U", "phi_tilde": "id_Ut"}
struct FunctorTripleJson {
  std::vector<ObjectId> on_objects;
  std::vector<MorphismId> on_morphisms;
  MorphismId phi_u;
  MorphismId phi_u_tilde;
};

inline FunctorTripleJson functor_triple_from_json(const FinCategory& src,
                                                  const FinCategory& tgt,
                                                  const json& j) {
  FunctorTripleJson out;
  out.on_objects.resize(src.object_count());
  out.on_morphisms.resize(src.morphism_count());
  std::vector<bool> obj_seen(src.object_count()), mor_seen(src.morphism_count());
  for (const auto& [k, v] : j.at("on_objects").items()) {
    auto x = src.find_object(k);
    auto y = tgt.find_object(v.get<std::string>());
    if (!x || !y)
      throw StructuralError(txt("functor.on_objects: dangling \"", k, "\""));
    out.on_objects[x->v] = *y;
    obj_seen[x->v] = true;
  }
  for (const auto& [k, v] : j.at("on_morphisms").items()) {
    auto f = src.find_morphism(k);
    auto g = tgt.find_morphism(v.get<std::string>());
    if (!f || !g)
      throw StructuralError(txt("functor.on_morphisms: dangling \"", k, "\""));
    out.on_morphisms[f->v] = *g;
    mor_seen[f->v] = true;
  }
  for (std::size_t i = 0; i < obj_seen.size(); ++i)
    if (!obj_seen[i])
      throw StructuralError(txt("functor.on_objects: missing \"",
                                src.object_name(ObjectId{(std::uint32_t)i}),
                                "\""));
  for (std::size_t i = 0; i < mor_seen.size(); ++i)
    if (!mor_seen[i])
      throw StructuralError(txt("functor.on_morphisms: missing \"",
                                src.morphism_name(MorphismId{(std::uint32_t)i}),
                                "\""));
  auto phi = tgt.find_morphism(j.at("phi").get<std::string>());
  auto phit = tgt.find_morphism(j.at("phi_tilde").get<std::string>());
  if (!phi || !phit)
    throw StructuralError("functor: dangling phi/phi_tilde");
  out.phi_u = *phi;
  out.phi_u_tilde = *phit;
  return out;
}

}  // namespace csys
