#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "wgif/analysis.hpp"
#include "wgif/config.hpp"
#include "wgif/errors.hpp"
#include "wgif/mesh_io.hpp"

using namespace wgif;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("wgif_cli_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run(const std::string& args) {
  const std::string cmd = std::string(WGIF_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config: key-value file, comments, overrides and errors") {
  RunConfig c;
  std::istringstream in(
      "# study setup\n"
      "problem = 2\n"
      "kappa = 8   # wavenumber\n"
      "levels = 3\n"
      "format = csv\n"
      "forcing = fd\n"
      "hfd = 2e-3\n");
  read_config(in, c);
  CHECK(c.problem == 2);
  CHECK(c.params.kappa == 8.0);
  CHECK(c.levels == 3);
  CHECK(c.formats.size() == 1);
  CHECK(c.forcing == ForcingMode::FiniteDifference);
  CHECK(c.h_fd == 2e-3);
  set_config_value(c, "levels", "4");
  CHECK(c.levels == 4);
  const ProblemSpec spec = make_problem(c);
  CHECK(spec.forcing_mode == ForcingMode::FiniteDifference);
  CHECK(spec.h_fd == 2e-3);

  std::istringstream bad_key("problem = 1\ncolour = red\n");
  try {
    read_config(bad_key, c);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream bad_value("levels = many\n");
  CHECK_THROWS_AS(read_config(bad_value, c), ParseError);
  std::istringstream no_eq("levels 3\n");
  CHECK_THROWS_AS(read_config(no_eq, c), ParseError);

  RunConfig v;
  v.problem = 11;
  CHECK_THROWS_AS(validate(v, true), DataError);
  v.problem = 1;
  v.levels = 0;
  CHECK_THROWS_AS(validate(v, true), DataError);
  v.levels = 2;
  v.mesh_dir = scratch("missing");
  CHECK_THROWS_AS(validate(v, true), DataError);
}

TEST_CASE("cli: mesh, solve from mesh files, deterministic output") {
  const fs::path dir = scratch("solve");
  CHECK(run("mesh --problem 8 --levels 2 --out " + (dir / "mesh").string()) == 0);
  CHECK(fs::exists(dir / "mesh" / "level2.node"));
  CHECK(fs::exists(dir / "mesh" / "level2.ele"));
  CHECK(run("solve --problem 8 --level 2 --mesh-dir " + (dir / "mesh").string() + " --out " + (dir / "a").string()) == 0);
  CHECK(run("solve --problem 8 --level 2 --out " + (dir / "b").string()) == 0);
  for (const char* f : {"solution_level2.csv", "cells_level2.csv", "solution_level2.svg"}) {
    CHECK(fs::exists(dir / "a" / f));
    CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
  }
  const std::string sol = slurp(dir / "a" / "solution_level2.csv");
  CHECK(sol.rfind("entity,index,side,value\n", 0) == 0);
  CHECK(sol.find("\nlambda,") != std::string::npos);

  // The file mesh matches the builtin family level.
  const ProblemSpec spec = builtin_problem(8);
  RunConfig c;
  c.problem = 8;
  c.mesh_dir = dir / "mesh";
  CHECK(config_mesh(c, spec, 2) == config_mesh(RunConfig{.problem = 8}, spec, 2));
}

TEST_CASE("cli: study writes tables; env var selects the output directory") {
  const fs::path dir = scratch("study");
  const std::string env = "WGIF_OUT_DIR=" + dir.string() + " ";
  const int status = std::system((env + WGIF_CLI + " study --problem 8 --levels 2 > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(status) == 0);
  REQUIRE(fs::exists(dir / "study.csv"));
  CHECK(fs::exists(dir / "study.md"));
  const StudyReport r = parse_csv(slurp(dir / "study.csv"));
  CHECK(r.levels.size() == 2);
  CHECK(r.order_solution[1].has_value());

  // A flag overrides the environment.
  const int flagged =
      std::system((env + WGIF_CLI + " study --problem 8 --levels 2 --format csv --out " + (dir / "flag").string() +
                   " > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(flagged) == 0);
  CHECK(fs::exists(dir / "flag" / "study.csv"));
  CHECK_FALSE(fs::exists(dir / "flag" / "study.md"));
}

TEST_CASE("cli: exit codes") {
  const fs::path dir = scratch("codes");
  CHECK(run("") == 1);
  CHECK(run("solve --no-such-flag") == 1);
  CHECK(run("solve --levels x") == 1);
  CHECK(run("study --levels 1") == 1);
  CHECK(run("solve --problem 11 --out " + dir.string()) == 2);
  CHECK(run("solve --problem 1 --mesh-dir " + (dir / "none").string() + " --out " + dir.string()) == 2);
  CHECK(run("solve --problem 1 --b -1 --out " + dir.string()) == 2);
  {
    std::ofstream cfg(dir / "bad.cfg");
    cfg << "problem = 1\nlevels = two\n";
  }
  CHECK(run("stats --config " + (dir / "bad.cfg").string()) == 2);
  {
    std::ofstream cfg(dir / "good.cfg");
    cfg << "problem = 5\nlevels = 2\n";
  }
  CHECK(run("stats --config " + (dir / "good.cfg").string()) == 0);
}
