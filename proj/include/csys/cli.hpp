#pragma once

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "csys/ccbuild.hpp"
#include "csys/core.hpp"
#include "csys/csystem.hpp"
#include "csys/generators.hpp"
#include "csys/json_io.hpp"
#include "csys/precat.hpp"
#include "csys/reconstruct.hpp"
#include "csys/report.hpp"
#include "csys/ucfunctor.hpp"
#include "csys/universe.hpp"

namespace csys::cli {

// Exit codes: 0 all requested checks pass, 1 some check failed, 2 input or
// budget error.
inline int exit_code(const RunReport& rep) { return rep.pass() ? 0 : 1; }

inline void emit(const RunReport& rep, const std::string& out_path) {
  if (out_path.empty())
    std::cout << rep.to_json().dump(2) << "\n";
  else
    save_json_file(out_path, rep.to_json());
}

struct GenerateOptions {
  std::string kind;                 // term | bg | finsets | lattice
  int cyclic = 0;                   // bg: Z/n shortcut
  std::string cayley;               // bg: "0,1;1,0" index table
  std::vector<std::string> names;   // bg: optional element names
  int atoms = 2;                    // lattice
  int max_size = 2;                 // finsets
  std::string out;                  // category file
  std::string universe_out;         // optional universe file
};

inline std::vector<std::vector<int>> parse_cayley(const std::string& s) {
  std::vector<std::vector<int>> table;
  std::vector<int> row;
  std::string num;
  auto flush_num = [&]() {
    if (num.empty()) throw StructuralError("cayley: empty entry");
    row.push_back(std::stoi(num));
    num.clear();
  };
  for (char ch : s) {
    if (ch == ',') {
      flush_num();
    } else if (ch == ';') {
      flush_num();
      table.push_back(row);
      row.clear();
    } else if (ch >= '0' && ch <= '9') {
      num.push_back(ch);
    } else if (ch != ' ') {
      throw StructuralError(txt("cayley: unexpected character '", ch, "'"));
    }
  }
  if (!num.empty()) flush_num();
  if (!row.empty()) table.push_back(row);
  return table;
}

inline RunReport cmd_generate(const GenerateOptions& opt) {
  WallClock clock;
  RunReport rep;
  rep.command = "generate";
  FinCategory c;
  std::optional<FinUniverseCategory> uni;
  if (opt.kind == "term") {
    c = make_terminal_category();
    uni = derive_universe_structure(c, *c.find_morphism("id"),
                                    *c.find_object("pt"));
  } else if (opt.kind == "bg") {
    if (opt.cyclic > 0) {
      c = make_cyclic_group_category(opt.cyclic);
    } else if (!opt.cayley.empty()) {
      auto table = parse_cayley(opt.cayley);
      std::vector<std::string> names = opt.names;
      if (names.empty())
        for (std::size_t i = 0; i < table.size(); ++i)
          names.push_back(txt("g", i));
      c = make_group_category(names, table);
    } else {
      throw StructuralError("generate bg: need --cyclic or --cayley");
    }
    MorphismId unit = c.identity(*c.find_object("pt"));
    uni = derive_universe_structure(c, unit, *c.find_object("pt"));
  } else if (opt.kind == "finsets") {
    FinSetsSkeleton sk = make_finsets_skeleton(opt.max_size);
    std::string p_name = sk.cat.morphism_name(sk.p);
    std::string pt_name = sk.cat.object_name(sk.pt);
    c = sk.cat;
    uni = derive_universe_structure(c, *c.find_morphism(p_name),
                                    *c.find_object(pt_name));
  } else if (opt.kind == "lattice") {
    c = make_boolean_lattice(opt.atoms);
  } else {
    throw StructuralError(txt("generate: unknown kind \"", opt.kind, "\""));
  }
  Report val = validate_category(c);
  rep.add_check("category valid", val);
  rep.extra["objects"] = c.object_count();
  rep.extra["morphisms"] = c.morphism_count();
  if (!opt.out.empty()) save_json_file(opt.out, category_to_json(c));
  if (!opt.universe_out.empty()) {
    if (!uni)
      throw StructuralError(
          txt("generate ", opt.kind, ": no universe to write"));
    save_json_file(opt.universe_out, universe_to_json(*uni));
  }
  rep.wall_time_ms = clock.elapsed_ms();
  return rep;
}

inline RunReport cmd_validate(const std::string& category_path,
                              const std::string& universe_path) {
  WallClock clock;
  RunReport rep;
  rep.command = "validate";
  rep.add_input(category_path);
  FinCategory c = category_from_json(load_json_file(category_path));
  rep.add_check("category axioms", validate_category(c));
  if (!universe_path.empty()) {
    rep.add_input(universe_path);
    FinUniverseCategory uc =
        universe_from_json(c, load_json_file(universe_path));
    rep.add_check("universe laws", verify_universe_laws(uc));
    rep.add_flag_check("base point final (informational)", true,
                       uc.final_certified()
                           ? "final"
                           : "not final (generalized base point)");
  }
  rep.wall_time_ms = clock.elapsed_ms();
  return rep;
}

inline RunReport cmd_build(const std::string& category_path,
                           const std::string& universe_path, int depth,
                           const std::string& out_path) {
  WallClock clock;
  RunReport rep;
  rep.command = "build";
  rep.depth = depth;
  rep.add_input(category_path);
  rep.add_input(universe_path);
  FinCategory c = category_from_json(load_json_file(category_path));
  Report cat_ok = validate_category(c);
  rep.add_check("category axioms", cat_ok);
  if (!cat_ok.ok()) {
    rep.wall_time_ms = clock.elapsed_ms();
    return rep;
  }
  FinUniverseCategory uc = universe_from_json(c, load_json_file(universe_path));
  Report laws = verify_universe_laws(uc);
  rep.add_check("universe laws", laws);
  if (!laws.ok()) {
    rep.wall_time_ms = clock.elapsed_ms();
    return rep;
  }
  CCBuild<FinUniverseCategory> b = build_csystem(uc, depth);
  rep.add_check("C0 axioms", check_c0_axioms(b.cc));
  rep.add_check("s axioms", check_s_axioms(b.cc));
  Report final_rep = check_point_final(b.cc);
  rep.add_flag_check("pt final (informational)", true,
                     final_rep.ok() ? "final"
                                    : "not final (generalized base point)");
  rep.extra["objects"] = b.cc.cat.object_count();
  rep.extra["morphisms"] = b.cc.cat.morphism_count();
  nlohmann::json sizes = nlohmann::json::array();
  for (const auto& lvl : b.levels) sizes.push_back(lvl.size());
  rep.extra["level_sizes"] = sizes;
  if (!out_path.empty()) save_json_file(out_path, csystem_to_json(b.cc));
  rep.wall_time_ms = clock.elapsed_ms();
  return rep;
}

inline RunReport cmd_check(const std::string& cc_path) {
  WallClock clock;
  RunReport rep;
  rep.command = "check";
  rep.add_input(cc_path);
  TruncCSystem cc = csystem_from_json(load_json_file(cc_path));
  rep.depth = cc.depth;
  rep.add_check("category axioms", validate_category(cc.cat));
  rep.add_check("C0 axioms", check_c0_axioms(cc));
  if (cc.has_s) rep.add_check("s axioms", check_s_axioms(cc));
  Report final_rep = check_point_final(cc);
  rep.add_flag_check("pt final (informational)", true,
                     final_rep.ok() ? "final"
                                    : "not final (generalized base point)");
  rep.wall_time_ms = clock.elapsed_ms();
  return rep;
}

inline RunReport cmd_functor(const std::string& source_cat,
                             const std::string& source_uni,
                             const std::string& target_cat,
                             const std::string& target_uni,
                             const std::string& phi_path, int depth,
                             const std::string& out_path) {
  WallClock clock;
  RunReport rep;
  rep.command = "functor";
  rep.depth = depth;
  for (const auto& p :
       {source_cat, source_uni, target_cat, target_uni, phi_path})
    rep.add_input(p);
  FinCategory sc = category_from_json(load_json_file(source_cat));
  FinCategory tc = category_from_json(load_json_file(target_cat));
  FinUniverseCategory suc = universe_from_json(sc, load_json_file(source_uni));
  FinUniverseCategory tuc = universe_from_json(tc, load_json_file(target_uni));
  FunctorTripleJson tri =
      functor_triple_from_json(sc, tc, load_json_file(phi_path));
  UCFunctor<FinUniverseCategory> fn;
  fn.source = &suc;
  fn.target = &tuc;
  fn.on_objects = tri.on_objects;
  fn.on_morphisms = tri.on_morphisms;
  fn.phi_u = tri.phi_u;
  fn.phi_u_tilde = tri.phi_u_tilde;
  Report val = validate_uc_functor(fn);
  rep.add_check("universe category functor conditions", val);
  if (!val.ok()) {
    rep.wall_time_ms = clock.elapsed_ms();
    return rep;
  }
  CCBuild<FinUniverseCategory> ccs = build_csystem(suc, depth);
  CCBuild<FinUniverseCategory> cct = build_csystem(tuc, depth);
  TranslationData<FinUniverseCategory> tr = build_translation(fn, ccs, cct);
  CSystemHom h = hom_from_uc_functor(fn, ccs, cct, tr);
  rep.add_check("homomorphism conditions", check_homomorphism(h));
  ClassifyResult cls =
      classify_with_hypotheses(h, depth, uc_functor_hypotheses(fn));
  rep.extra["classification"] = hom_class_name(cls.direct);
  rep.extra["hypothesis_prediction"] = hom_class_name(cls.predicted);
  rep.add_flag_check("classification consistent with hypotheses",
                     cls.consistent);
  if (!out_path.empty()) {
    nlohmann::json hj;
    hj["source_depth"] = depth;
    hj["on_objects"] = nlohmann::json::object();
    hj["on_morphisms"] = nlohmann::json::object();
    for (ObjectId x : ccs.cc.cat.objects())
      hj["on_objects"][ccs.cc.cat.object_name(x)] =
          cct.cc.cat.object_name(h.obj(x));
    for (MorphismId m : ccs.cc.cat.morphisms())
      hj["on_morphisms"][ccs.cc.cat.morphism_name(m)] =
          cct.cc.cat.morphism_name(h.mor(m));
    hj["classification"] = hom_class_name(cls.direct);
    save_json_file(out_path, hj);
  }
  rep.wall_time_ms = clock.elapsed_ms();
  return rep;
}

inline RunReport cmd_reconstruct(const std::string& cc_path,
                                 const std::string& method, int depth,
                                 const std::string& out_path,
                                 std::uint64_t budget) {
  WallClock clock;
  RunReport rep;
  rep.command = "reconstruct";
  rep.depth = depth;
  rep.add_input(cc_path);
  TruncCSystem cc = csystem_from_json(load_json_file(cc_path));
  if (cc.depth < depth + 2)
    throw StructuralError(
        txt("reconstruct at depth ", depth, " needs a system built to depth >= ",
            depth + 2, " (file has ", cc.depth, ")"));
  PresheafReconstruction pre = reconstruct_via_presheaves(cc, depth, budget);
  rep.add_check("Yoneda pullback squares", pre.yoneda_squares);
  rep.add_check("section data conditions", pre.conditions);
  rep.add_check("homomorphism conditions", pre.hom_check);
  rep.add_flag_check("isomorphism on truncation",
                     pre.classification.direct == HomClass::isomorphism);
  rep.add_flag_check("hypotheses predict isomorphism",
                     pre.classification.predicted == HomClass::isomorphism &&
                         pre.classification.consistent);
  rep.extra["note"] =
      "isomorphism is asserted per-truncation; the untruncated statement "
      "is outside finite checking";
  if (method == "tower") {
    TowerReconstruction tw = reconstruct_via_towers(pre, budget);
    rep.add_check("tower functor conditions", tw.phi_check);
    rep.add_check("tower composite homomorphism", tw.composite_check);
    rep.add_flag_check("tower composite isomorphism", tw.composite_iso);
    nlohmann::json sizes = nlohmann::json::array();
    for (auto s : tw.level_sizes) sizes.push_back(s);
    rep.extra["tower_level_sizes"] = sizes;
  } else if (method != "presheaf") {
    throw StructuralError(txt("reconstruct: unknown method \"", method,
                              "\" (presheaf|tower)"));
  }
  rep.wall_time_ms = clock.elapsed_ms();
  if (!out_path.empty()) save_json_file(out_path, rep.to_json());
  return rep;
}

inline FiberProductStructure fiber_products_from_json(const FinCategory& c,
                                                      const json& j) {
  FiberProductStructure fp;
  fp.base = &c;
  for (const auto& e : j.at("squares")) {
    auto f = c.find_morphism(e.at("f").get<std::string>());
    auto g = c.find_morphism(e.at("g").get<std::string>());
    auto apex = c.find_object(e.at("apex").get<std::string>());
    auto pr1 = c.find_morphism(e.at("pr1").get<std::string>());
    auto pr2 = c.find_morphism(e.at("pr2").get<std::string>());
    if (!f || !g || !apex || !pr1 || !pr2)
      throw StructuralError("fiber-products: dangling reference");
    fp.squares[{f->v, g->v}] = FiberSquare{*apex, *pr1, *pr2};
  }
  return fp;
}

inline RunReport cmd_precat(const std::string& category_path,
                            const std::string& fp_path, bool auto_fp,
                            int depth, const std::string& out_path,
                            std::uint64_t budget) {
  WallClock clock;
  RunReport rep;
  rep.command = "precat";
  rep.depth = depth;
  rep.add_input(category_path);
  FinCategory c = category_from_json(load_json_file(category_path));
  Report cat_ok = validate_category(c);
  rep.add_check("category axioms", cat_ok);
  if (!cat_ok.ok()) {
    rep.wall_time_ms = clock.elapsed_ms();
    return rep;
  }
  PrecatContext ctx = build_precat_context(c, depth, budget);
  rep.add_check("slice universe presheaf laws", check_slice_universe(*ctx.slice));
  rep.add_check("pullback correspondence",
                check_square_correspondence(c, *ctx.slice, budget));

  std::optional<FinalObjectCertificate> cert;
  for (ObjectId x : c.objects()) {
    auto res = check_final_object(c, x);
    if (auto* ok = std::get_if<FinalObjectCertificate>(&res)) {
      cert = *ok;
      break;
    }
  }
  if (!cert) {
    rep.add_flag_check("final object exists", false,
                       "no final object; embedding and equivalence skipped");
    rep.wall_time_ms = clock.elapsed_ms();
    if (!out_path.empty()) save_json_file(out_path, rep.to_json());
    return rep;
  }
  rep.add_flag_check("final object exists", true,
                     txt("final object: ", c.object_name(cert->object)));

  Report split;
  for (ObjectId x : c.objects()) {
    ++split.checked;
    EmbeddedObject emb = embed_object(ctx, *cert, x);
    if (embed_retraction(ctx, *cert, emb.cc_object) != x)
      split.fail(txt("retraction does not recover ", c.object_name(x)));
  }
  rep.add_check("J*₁ split mono via (f,g) -> dom(g)", split);

  FiberProductStructure fp;
  if (auto_fp) {
    fp = derive_fiber_products(c);
  } else if (!fp_path.empty()) {
    rep.add_input(fp_path);
    fp = fiber_products_from_json(c, load_json_file(fp_path));
  } else {
    throw StructuralError("precat: need --fiber-products or --auto-fp");
  }
  rep.add_check("fiber squares are pullbacks", validate_fiber_products(c, fp));
  nlohmann::json apexes = nlohmann::json::object();
  for (const auto& [key, sq] : fp.squares)
    apexes[txt("(", c.morphism_name(MorphismId{key.first}), ",",
               c.morphism_name(MorphismId{key.second}), ")")] =
        c.object_name(sq.apex);
  rep.extra["chosen_fiber_apexes"] = apexes;

  Equivalence eq = build_equivalence(ctx, *cert, fp);
  rep.add_check("equivalence (functors, units, naturality)", eq.checks);
  rep.extra["cc_objects"] = ctx.cc->cc.cat.object_count();
  rep.wall_time_ms = clock.elapsed_ms();
  if (!out_path.empty()) save_json_file(out_path, rep.to_json());
  return rep;
}

}  // namespace csys::cli
