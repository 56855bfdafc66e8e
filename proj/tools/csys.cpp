#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "csys/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"csys: finite universe categories, C-systems and their "
               "reconstructions"};
  app.require_subcommand(1);

  csys::cli::GenerateOptions gen;
  std::string out, category, universe, cc_path, method = "presheaf";
  std::string source_cat, source_uni, target_cat, target_uni, phi_path;
  std::string fp_path;
  bool auto_fp = false;
  int depth = 2;
  std::uint64_t budget = 1000000;

  auto* g = app.add_subcommand("generate", "emit a category (and universe)");
  g->add_option("--kind", gen.kind, "term | bg | finsets | lattice")
      ->required();
  g->add_option("--cyclic", gen.cyclic, "bg: cyclic group order");
  g->add_option("--cayley", gen.cayley, "bg: Cayley table, e.g. \"0,1;1,0\"");
  g->add_option("--names", gen.names, "bg: element names");
  g->add_option("--atoms", gen.atoms, "lattice: number of atoms");
  g->add_option("--max-size", gen.max_size, "finsets: largest cardinality");
  g->add_option("--out", gen.out, "category file");
  g->add_option("--universe-out", gen.universe_out, "universe file");

  auto* v = app.add_subcommand("validate", "check category/universe axioms");
  v->add_option("--category", category)->required();
  v->add_option("--universe", universe);
  v->add_option("--out", out);

  auto* b = app.add_subcommand("build", "build a truncated C-system");
  b->add_option("--category", category)->required();
  b->add_option("--universe", universe)->required();
  b->add_option("--depth", depth)->required();
  b->add_option("--out", out, "C-system file");

  auto* k = app.add_subcommand("check", "re-run axiom suites on a C-system");
  k->add_option("--cc", cc_path)->required();
  k->add_option("--out", out);

  auto* f = app.add_subcommand("functor", "homomorphism from a universe "
                                          "category functor");
  f->add_option("--source-cat", source_cat)->required();
  f->add_option("--source-uni", source_uni)->required();
  f->add_option("--target-cat", target_cat)->required();
  f->add_option("--target-uni", target_uni)->required();
  f->add_option("--phi", phi_path)->required();
  f->add_option("--depth", depth)->required();
  f->add_option("--out", out, "homomorphism file");

  auto* r = app.add_subcommand("reconstruct", "rebuild a C-system from its "
                                              "presheaf universe");
  r->add_option("--cc", cc_path)->required();
  r->add_option("--method", method, "presheaf | tower");
  r->add_option("--depth", depth)->required();
  r->add_option("--out", out, "report file");
  r->add_option("--budget", budget, "presheaf enumeration budget");

  auto* p = app.add_subcommand("precat", "slice universe over a precategory "
                                         "and the equivalence C ≃ CC(C)");
  p->add_option("--category", category)->required();
  p->add_option("--fiber-products", fp_path);
  p->add_flag("--auto-fp", auto_fp, "derive fiber products");
  p->add_option("--depth", depth)->required();
  p->add_option("--out", out, "report file");
  p->add_option("--budget", budget, "presheaf enumeration budget");

  CLI11_PARSE(app, argc, argv);

  try {
    csys::RunReport rep;
    if (g->parsed()) {
      rep = csys::cli::cmd_generate(gen);
      csys::cli::emit(rep, out);
    } else if (v->parsed()) {
      rep = csys::cli::cmd_validate(category, universe);
      csys::cli::emit(rep, out);
    } else if (b->parsed()) {
      rep = csys::cli::cmd_build(category, universe, depth, out);
      csys::cli::emit(rep, "");
    } else if (k->parsed()) {
      rep = csys::cli::cmd_check(cc_path);
      csys::cli::emit(rep, out);
    } else if (f->parsed()) {
      rep = csys::cli::cmd_functor(source_cat, source_uni, target_cat,
                                   target_uni, phi_path, depth, out);
      csys::cli::emit(rep, "");
    } else if (r->parsed()) {
      rep = csys::cli::cmd_reconstruct(cc_path, method, depth, out, budget);
      if (out.empty()) csys::cli::emit(rep, "");
    } else if (p->parsed()) {
      rep = csys::cli::cmd_precat(category, fp_path, auto_fp, depth, out,
                                  budget);
      if (out.empty()) csys::cli::emit(rep, "");
    }
    return csys::cli::exit_code(rep);
  } catch (const csys::BudgetError& e) {
    std::cerr << "budget error: " << e.what() << "\n";
    return 2;
  } catch (const csys::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
