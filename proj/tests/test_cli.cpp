#include "doctest.h"
#include "json.hpp"
#include "seqclass/commands.hpp"

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace seqclass;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path p = [] {
    const fs::path d = fs::temp_directory_path() / ("seqclass_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args, const std::string& env = "") {
  const fs::path out = scratch() / "stdout.txt", err = scratch() / "stderr.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" SEQCLASS_CLI_PATH "\" " + args + " >" +
                          out.string() + " 2>" + err.string();
  const int st = std::system(cmd.c_str());
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, slurp(out), slurp(err)};
}

fs::path write_config(const std::string& name, const std::string& body) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("exponents preset fig1") {
  const Run r = run("exponents --preset fig1");
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* k : {"renyi_term", "mu", "nu", "e_fix", "e_seq", "e_semi1", "e_semi2"}) {
    REQUIRE(j.contains(k));
    CHECK(j[k].is_number());
  }
  CHECK(j.contains("kappa"));
  CHECK(j["solver"]["coarse_m"] == 200);
  CHECK(j["solver"]["refine_rounds"] == 3);
  CHECK(j["solver"].contains("resolution"));
}

TEST_CASE("distinct distributions required") {
  const auto cfg = write_config("same.cfg", "schema = 1\nP0 = 0.3, 0.7\nP1 = 0.3, 0.7\n");
  const Run r = run("exponents --config " + cfg.string());
  CHECK(r.code == 2);
  CHECK(r.err.find("distinct distributions required") != std::string::npos);
}

TEST_CASE("config errors exit with 2") {
  const auto unknown = write_config("unknown.cfg", "schema = 1\nalpah = 2\n");
  Run r = run("exponents --config " + unknown.string());
  CHECK(r.code == 2);
  CHECK(r.err.find("unknown key 'alpah'") != std::string::npos);
  const auto noschema = write_config("noschema.cfg", "alpha = 2\n");
  CHECK(run("exponents --config " + noschema.string()).code == 2);
  const auto badschema = write_config("badschema.cfg", "schema = 2\n");
  CHECK(run("exponents --config " + badschema.string()).code == 2);
  const auto notfloored = write_config("floor.cfg", "schema = 1\nP0 = 0.005, 0.995\n");
  CHECK(run("exponents --config " + notfloored.string()).code == 2);
  CHECK(run("exponents --config /nonexistent/x.cfg").code == 2);
  CHECK(run("exponents").code == 2);
  CHECK(run("exponents --preset fig9").code == 2);
  CHECK(run("verify --level bogus").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("fig2 at the GJS boundary has zero e_fix") {
  const double g = gjs(Dist{0.6, 0.4}, Dist{0.1, 0.9}, 2.0).value;
  const auto cfg = write_config("boundary.cfg", "schema = 1\npreset = fig2\nlambda0 = " + format_real(g) + "\n");
  const Run r = run("exponents --config " + cfg.string());
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["e_fix"].get<double>() <= 1e-9);
}

TEST_CASE("config overrides a preset") {
  RunConfig c = preset_config("fig2");
  apply_config_text(c, "schema = 1\n# comment\nbeta = 1.5   # trailing\nsweep.points = 5\nsweep.to = 0.3\n");
  CHECK(c.beta == 1.5);
  CHECK(c.sweep->points == 5);
  CHECK_FALSE(c.sweep->to_gjs);
  CHECK(c.sweep_values().back() == 0.3);
  CHECK_THROWS_AS(apply_config_text(c, "schema = 1\nbeta = 1\nbeta = 2\n"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(c, "schema = 1\nbeta 1\n"), ConfigError);
  CHECK_THROWS_AS(apply_config_text(c, "schema = 1\nsweep.points = many\n"), ConfigError);
  RunConfig d = preset_config("fig2");
  d.sweep->points = 1;
  CHECK_THROWS_AS(d.sweep_values(), ConfigError);
  d.sweep->points = 4;
  d.sweep->from = -1;
  CHECK_THROWS_AS(d.sweep_values(), ConfigError);
  RunConfig l = preset_config("fig1");
  l.sweep->log_scale = true;
  const auto v = l.sweep_values();
  CHECK(v.front() == doctest::Approx(0.001));
  CHECK(v[1] / v[0] == doctest::Approx(v[2] / v[1]));
}

TEST_CASE("presets hold the fixed figure parameters") {
  const auto f1 = preset_config("fig1");
  CHECK(f1.P0 == std::vector<double>{0.6, 0.4});
  CHECK(f1.P1 == std::vector<double>{0.1, 0.9});
  CHECK(f1.alpha == 0.38);
  CHECK(f1.beta == 0.6);
  CHECK(f1.lambda_family == "scaled_renyi");
  CHECK(f1.offset == 0.003);
  CHECK(f1.sweep->parameter == "xi");
  CHECK(f1.sweep->from == 0.001);
  CHECK(f1.sweep->to == 1.0);
  CHECK(f1.epsilon == 0.01);

  const auto f2 = preset_config("fig2");
  CHECK(f2.P0 == std::vector<double>{0.6, 0.4});
  CHECK(f2.P1 == std::vector<double>{0.1, 0.9});
  CHECK(f2.alpha == 2.0);
  CHECK(f2.epsilon == 0.01);
  CHECK(f2.lambda_family == "constant");
  CHECK(f2.sweep->parameter == "lambda0");
  CHECK(f2.sweep->from == 0.001);
  CHECK(f2.sweep->to_gjs);
  CHECK(f2.sweep_values().back() == gjs(Dist{0.6, 0.4}, Dist{0.1, 0.9}, 2.0).value);
  CHECK(f2.sweep->points == 50);

  const auto f3 = preset_config("fig3");
  CHECK(f3.P0 == std::vector<double>{0.6, 0.4});
  CHECK(f3.P1 == std::vector<double>{0.1, 0.9});
  CHECK(f3.alpha == 0.7);
  CHECK(f3.beta == 0.7);
  CHECK(f3.epsilon == 0.01);
  CHECK(f3.lambda_family == "scaled_renyi");
  CHECK(f3.offset == 0.0);
  CHECK(f3.sweep->from == 0.001);
  CHECK(f3.sweep->to == 0.999);
}

TEST_CASE("curve fig3: kappa inf, svg, csv round trip") {
  const fs::path out = scratch() / "fig3";
  const Run r = run("curve --preset fig3 --out " + out.string());
  REQUIRE(r.code == 0);
  const std::string csv = slurp(out / "curve.csv");
  CHECK(csv.rfind("sweep_value,renyi_term,kappa,mu,nu,e_fix,e_seq,e_semi1,e_semi2\n", 0) == 0);
  const auto rows = parse_curve_csv(csv);
  REQUIRE(rows.size() == 50);
  for (const auto& row : rows) CHECK(std::isinf(row.kappa));

  const auto mem = compute_curve(preset_config("fig3"));
  REQUIRE(mem.size() == rows.size());
  for (std::size_t i = 0; i < mem.size(); ++i) CHECK(mem[i].values() == rows[i].values());
  CHECK(curve_csv(rows) == csv);

  const std::string svg = slurp(out / "curve.svg");
  CHECK(svg.find("viewBox=\"0 0 800 600\"") != std::string::npos);
  std::size_t lines = 0;
  for (auto p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1)) ++lines;
  CHECK(lines == 8);
  for (const char* c : {"renyi_term", "kappa", "e_semi2"}) CHECK(svg.find(std::string(">") + c + "<") != std::string::npos);
  CHECK(svg.find("href") == std::string::npos);
}

TEST_CASE("csv round trip is bit exact") {
  std::vector<CurveRow> rows{CurveRow::from_values({0.1, 1.0 / 3.0, kInf, 5e-324, 1e300, 0.0, 2.0 / 7, kInf, 1e-17}),
                             CurveRow::from_values({0.2, 0.1 + 0.2, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0})};
  const auto back = parse_curve_csv(curve_csv(rows));
  REQUIRE(back.size() == 2);
  CHECK(back[0].values() == rows[0].values());
  CHECK(back[1].values() == rows[1].values());
  CHECK_THROWS(parse_curve_csv("a,b\n"));
}

TEST_CASE("curve requires a sweep and a writable directory") {
  const auto nosweep = write_config("nosweep.cfg", "schema = 1\n");
  CHECK(run("curve --config " + nosweep.string() + " --out " + (scratch() / "x").string()).code == 2);
  std::ofstream(scratch() / "plainfile") << "x";
  const Run r = run("curve --preset fig3 --out " + (scratch() / "plainfile" / "sub").string());
  CHECK(r.code == 3);
}

TEST_CASE("curve and exponents are deterministic") {
  const auto cfg = write_config("small.cfg", "schema = 1\npreset = fig2\nsweep.points = 4\n");
  REQUIRE(run("curve --config " + cfg.string() + " --out " + (scratch() / "d1").string()).code == 0);
  REQUIRE(run("curve --config " + cfg.string() + " --out " + (scratch() / "d2").string()).code == 0);
  CHECK(slurp(scratch() / "d1" / "curve.csv") == slurp(scratch() / "d2" / "curve.csv"));
  CHECK(slurp(scratch() / "d1" / "curve.svg") == slurp(scratch() / "d2" / "curve.svg"));
  CHECK(run("exponents --preset fig2").out == run("exponents --preset fig2").out);
}

TEST_CASE("simulate") {
  const auto cfg = write_config("sim.cfg",
                                "schema = 1\nP0 = 0.9, 0.1\nP1 = 0.1, 0.9\nalpha = 1\nbeta = 1\nlambda0 = 0.05\n"
                                "sim.setups = fully_seq, semi1\nsim.n_grid = 6, 8, 10\nsim.trials = 3000\n"
                                "sim.seed = 3\n");
  const fs::path a = scratch() / "sim_a", b = scratch() / "sim_b";
  const Run r = run("simulate --config " + cfg.string() + " --out " + a.string());
  REQUIRE(r.code == 0);
  REQUIRE(run("simulate --config " + cfg.string() + " --out " + b.string(), "SEQCLASS_THREADS=3").code == 0);
  CHECK(slurp(a / "trials.csv") == slurp(b / "trials.csv"));
  CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));
  const auto j = nlohmann::json::parse(slurp(a / "summary.json"));
  REQUIRE(j["setups"].size() == 2);
  CHECK(j["setups"][0]["setup"] == "fully_seq");
  CHECK(j["setups"][0]["type2_fit"].contains("slope"));
  const std::string csv = slurp(a / "trials.csv");
  CHECK(csv.rfind("setup,n,trials,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 7);
}

TEST_CASE("simulate on the rare-event floor exits 4") {
  const auto cfg = write_config("rare.cfg",
                                "schema = 1\nP0 = 0.9, 0.1\nP1 = 0.1, 0.9\nalpha = 1\nbeta = 1\nlambda0 = 0.05\n"
                                "sim.n_grid = 50, 60, 70\nsim.trials = 20\nsim.thetas = 1\n");
  const Run r = run("simulate --config " + cfg.string() + " --out " + (scratch() / "rare").string());
  CHECK(r.code == 4);
  CHECK(r.err.find("insufficient rare-event data") != std::string::npos);
}

TEST_CASE("verify and fault injection") {
  const Run ok = run("verify --level quick --criterion 1");
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS AC1") != std::string::npos);
  const Run bad = run("verify --level quick --criterion 1", "SEQCLASS_TOL_OVERRIDE=-1");
  CHECK(bad.code == 5);
  CHECK(bad.out.find("FAIL AC1") != std::string::npos);
  CHECK(bad.out.find("violated: renyi_frac vs grid") != std::string::npos);
}

TEST_CASE("cleanup") {
  std::error_code ec;
  fs::remove_all(scratch(), ec);
}
