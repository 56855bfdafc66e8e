#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>
#include <unistd.h>

#include "csys/cli.hpp"

using namespace csys;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("csys_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
};

int run_binary(const std::string& args) {
#ifdef CSYS_BIN
  std::string cmd = std::string(CSYS_BIN) + " " + args + " >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
#else
  (void)args;
  return -1;
#endif
}

}  // namespace

TEST_CASE("generate produces loadable categories", "[cli]") {
  TempDir tmp;
  cli::GenerateOptions opt;
  opt.kind = "bg";
  opt.cyclic = 2;
  opt.out = tmp.file("bg.json");
  opt.universe_out = tmp.file("bg_uni.json");
  RunReport rep = cli::cmd_generate(opt);
  REQUIRE(rep.pass());
  REQUIRE(rep.extra["objects"] == 1);
  REQUIRE(rep.extra["morphisms"] == 2);

  FinCategory c = category_from_json(load_json_file(opt.out));
  REQUIRE(validate_category(c).ok());
  FinUniverseCategory uc =
      universe_from_json(c, load_json_file(opt.universe_out));
  REQUIRE(verify_universe_laws(uc).ok());
}

TEST_CASE("generate lattice counts", "[cli]") {
  TempDir tmp;
  cli::GenerateOptions opt;
  opt.kind = "lattice";
  opt.atoms = 2;
  opt.out = tmp.file("b2.json");
  RunReport rep = cli::cmd_generate(opt);
  REQUIRE(rep.pass());
  REQUIRE(rep.extra["objects"] == 4);
  REQUIRE(rep.extra["morphisms"] == 9);
}

TEST_CASE("generate rejects a non-group table", "[cli]") {
  cli::GenerateOptions opt;
  opt.kind = "bg";
  opt.cayley = "0,0;0,0";
  REQUIRE_THROWS_AS(cli::cmd_generate(opt), StructuralError);
}

TEST_CASE("build then check round trips through files", "[cli]") {
  TempDir tmp;
  cli::GenerateOptions opt;
  opt.kind = "term";
  opt.out = tmp.file("term.json");
  opt.universe_out = tmp.file("term_uni.json");
  REQUIRE(cli::cmd_generate(opt).pass());

  RunReport build =
      cli::cmd_build(opt.out, opt.universe_out, 4, tmp.file("cc.json"));
  REQUIRE(build.pass());
  REQUIRE(build.extra["objects"] == 5);

  RunReport check = cli::cmd_check(tmp.file("cc.json"));
  REQUIRE(check.pass());
}

TEST_CASE("a corrupted universe square fails the build with a named check",
          "[cli]") {
  TempDir tmp;
  cli::GenerateOptions opt;
  opt.kind = "bg";
  opt.cyclic = 2;
  opt.out = tmp.file("bg.json");
  opt.universe_out = tmp.file("bg_uni.json");
  REQUIRE(cli::cmd_generate(opt).pass());
  // corrupt: point the square for e at the wrong projection
  json uni = load_json_file(opt.universe_out);
  uni["squares"]["e"]["proj"] = "g";
  save_json_file(opt.universe_out, uni);
  RunReport rep = cli::cmd_build(opt.out, opt.universe_out, 2, "");
  REQUIRE_FALSE(rep.pass());
  bool named = false;
  for (const auto& c : rep.checks)
    if (c.name == "universe laws" && !c.pass)
      for (const auto& d : c.details)
        if (d.find("canonical square for e") != std::string::npos)
          named = true;
  REQUIRE(named);
}

TEST_CASE("reports are byte-identical modulo wall time", "[cli]") {
  TempDir tmp;
  cli::GenerateOptions opt;
  opt.kind = "bg";
  opt.cyclic = 2;
  opt.out = tmp.file("bg.json");
  opt.universe_out = tmp.file("bg_uni.json");
  REQUIRE(cli::cmd_generate(opt).pass());
  json a = cli::cmd_build(opt.out, opt.universe_out, 3, tmp.file("cc_a.json"))
               .to_json();
  json b = cli::cmd_build(opt.out, opt.universe_out, 3, tmp.file("cc_b.json"))
               .to_json();
  a.erase("wall_time_ms");
  b.erase("wall_time_ms");
  REQUIRE(a.dump() == b.dump());

  std::ifstream fa(tmp.file("cc_a.json")), fb(tmp.file("cc_b.json"));
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  REQUIRE(sa.str() == sb.str());
}

TEST_CASE("parse errors carry positions", "[cli]") {
  TempDir tmp;
  std::ofstream bad(tmp.file("bad.json"));
  bad << "{\"objects\": [\"pt\"], \"morphisms\": [{\"name\": \"f\", \"dom\": "
         "\"pt\", \"cod\": \"nowhere\"}], \"identities\": {}, \"compose\": []}";
  bad.close();
  try {
    cli::cmd_validate(tmp.file("bad.json"), "");
    FAIL("expected an error");
  } catch (const StructuralError& e) {
    REQUIRE(std::string(e.what()).find("morphisms[0]") != std::string::npos);
  }
}

TEST_CASE("the binary returns the documented exit codes", "[cli]") {
  if (run_binary("--help") == -1) {
    SKIP("binary path not wired in");
  }
  TempDir tmp;
  REQUIRE(run_binary("generate --kind term --out " + tmp.file("t.json") +
                     " --universe-out " + tmp.file("u.json")) == 0);
  REQUIRE(run_binary("build --category " + tmp.file("t.json") +
                     " --universe " + tmp.file("u.json") +
                     " --depth 4 --out " + tmp.file("cc.json")) == 0);
  REQUIRE(run_binary("check --cc " + tmp.file("cc.json")) == 0);
  // input error: missing file
  REQUIRE(run_binary("check --cc " + tmp.file("missing.json")) == 2);
  // check failure: corrupt the serialized q-table entry
  json cc = load_json_file(tmp.file("cc.json"));
  cc["q"][1]["q"] = cc["q"][0]["q"];
  cc["q"][1]["fstar"] = cc["q"][0]["fstar"];
  save_json_file(tmp.file("cc_bad.json"), cc);
  int code = run_binary("check --cc " + tmp.file("cc_bad.json"));
  REQUIRE((code == 1 || code == 2));
}

TEST_CASE("functor command: BG structures give an isomorphism", "[cli]") {
  TempDir tmp;
  cli::GenerateOptions opt;
  opt.kind = "bg";
  opt.cyclic = 2;
  opt.out = tmp.file("bg.json");
  opt.universe_out = tmp.file("uni_a.json");
  REQUIRE(cli::cmd_generate(opt).pass());
  // a second, distinct structure: flip both Q-choices
  json uni = load_json_file(tmp.file("uni_a.json"));
  json uni_b = uni;
  for (auto& [k, v] : uni_b["squares"].items()) {
    std::string q = v["Q"].get<std::string>();
    v["Q"] = q == "e" ? "g" : "e";
    std::string p = v["proj"].get<std::string>();
    v["proj"] = p == "e" ? "g" : "e";
  }
  save_json_file(tmp.file("uni_b.json"), uni_b);
  json phi = {{"on_objects", {{"pt", "pt"}}},
              {"on_morphisms", {{"e", "e"}, {"g", "g"}}},
              {"phi", "e"},
              {"phi_tilde", "e"}};
  save_json_file(tmp.file("phi.json"), phi);
  RunReport rep = cli::cmd_functor(tmp.file("bg.json"), tmp.file("uni_a.json"),
                                   tmp.file("bg.json"), tmp.file("uni_b.json"),
                                   tmp.file("phi.json"), 3,
                                   tmp.file("hom.json"));
  REQUIRE(rep.pass());
  REQUIRE(rep.extra["classification"] == "isomorphism");
  json hom = load_json_file(tmp.file("hom.json"));
  REQUIRE(hom["on_objects"].size() == 15);  // 1 + 2 + 4 + 8
}

TEST_CASE("reconstruct command over a serialized system", "[cli]") {
  TempDir tmp;
  cli::GenerateOptions opt;
  opt.kind = "term";
  opt.out = tmp.file("term.json");
  opt.universe_out = tmp.file("uni.json");
  REQUIRE(cli::cmd_generate(opt).pass());
  REQUIRE(cli::cmd_build(opt.out, opt.universe_out, 3, tmp.file("cc.json"))
              .pass());
  RunReport rep = cli::cmd_reconstruct(tmp.file("cc.json"), "tower", 1,
                                       tmp.file("rec.json"), 1000000);
  REQUIRE(rep.pass());
  // insufficient headroom is an input error naming the required bound
  try {
    cli::cmd_reconstruct(tmp.file("cc.json"), "presheaf", 2, "", 1000000);
    FAIL("expected an error");
  } catch (const StructuralError& e) {
    REQUIRE(std::string(e.what()).find("depth >= 4") != std::string::npos);
  }
}

TEST_CASE("precat command on B2 with derived fiber products", "[cli]") {
  TempDir tmp;
  cli::GenerateOptions opt;
  opt.kind = "lattice";
  opt.atoms = 2;
  opt.out = tmp.file("b2.json");
  REQUIRE(cli::cmd_generate(opt).pass());
  RunReport rep = cli::cmd_precat(tmp.file("b2.json"), "", true, 2,
                                  tmp.file("report.json"), 1000000);
  REQUIRE(rep.pass());
  json j = load_json_file(tmp.file("report.json"));
  REQUIRE(j["pass"] == true);
  REQUIRE(j["extra"]["cc_objects"] == 30);
}

TEST_CASE("budget exhaustion surfaces as an explicit error", "[cli]") {
  TempDir tmp;
  cli::GenerateOptions opt;
  opt.kind = "bg";
  opt.cyclic = 2;
  opt.out = tmp.file("bg.json");
  opt.universe_out = tmp.file("uni.json");
  REQUIRE(cli::cmd_generate(opt).pass());
  REQUIRE(cli::cmd_build(opt.out, opt.universe_out, 3, tmp.file("cc.json"))
              .pass());
  REQUIRE_THROWS_AS(
      cli::cmd_reconstruct(tmp.file("cc.json"), "presheaf", 1, "", 2),
      BudgetError);
}
