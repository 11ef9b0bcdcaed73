#include <doctest.h>

#include "dynent/config.hpp"
#include "dynent/errors.hpp"

using namespace dynent;

namespace {

std::string config_error(std::string_view text) {
  try {
    parse_config(text, "t.cfg");
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

bool contains(const std::string& s, std::string_view part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_SUITE("cli-io") {
  TEST_CASE("minimal config resolves to defaults") {
    const RunConfig c = parse_config("[run]\nscenario = bosonic\n");
    CHECK(c.scenario == Scenario::bosonic);
    CHECK(c.motion == MotionKind::fixed);
    CHECK(c.mode == RunMode::single_run);
    CHECK(c.seed == 1);
    CHECK(c.dt == 0.25);
    CHECK(c.dt_int == 0.0);
    CHECK(parse_config("[run]\ndt_int = auto\n").dt_int == 0.0);
    CHECK(parse_config("[run]\ndt_int = 0.125\n").dt_int == 0.125);
    CHECK(c.bath.kappa == 0.01);
    CHECK(c.bath.beta == 1.0);
    CHECK(c.cycle.tol == 1e-8);
    CHECK(c.cycle.max_periods == 500);
  }

  TEST_CASE("shipped config resolves to the documented values") {
    const RunConfig c = resolve_config(ConfigDocument::read_file(DYNENT_SOURCE_DIR "/configs/fig_qsmeb.cfg"));
    CHECK(c.scenario == Scenario::bosonic);
    CHECK(c.motion == MotionKind::periodic);
    CHECK(c.mode == RunMode::asymptotic_cycle);
    CHECK(c.output == "fig_qsmeb");
    CHECK(c.periodic.x1_0 == -20.0);
    CHECK(c.periodic.x2_0 == 20.0);
    CHECK(c.periodic.a == 5.0);
    CHECK(c.periodic.tau == 100.0);
    CHECK(c.model.B0 == 1.3);
    CHECK(c.model.B1 == 2.4);
    CHECK(c.model.sigma_field == 120.0);
    CHECK(c.model.J0 == 1e4);
    CHECK(c.bath.kappa == 0.01);
    CHECK(c.bath.beta == 1.0);
    CHECK(c.dt == 0.25);
  }

  TEST_CASE("every shipped config validates") {
    for (const char* name : {"fig_bdt", "fig_brf", "fig_cs", "fig_fte", "fig_landscape", "fig_qsmeb", "fig_qsmeb_kappa",
                             "fig_quapi", "fig_sincyl", "fig_sping", "fig_spingdp", "fig_waiting"}) {
      INFO(name);
      const ConfigDocument doc = ConfigDocument::read_file(std::string(DYNENT_SOURCE_DIR "/configs/") + name + ".cfg");
      const RunConfig c = resolve_config(doc);
      if (c.mode == RunMode::sweep) CHECK(parse_sweep(doc).cell_count() >= 2);
    }
  }

  TEST_CASE("invariant violations name the field and the rule") {
    const std::string e = config_error("[run]\nscenario = bosonic\n[bath]\nkappa = -0.01\n");
    CHECK(contains(e, "kappa"));
    CHECK(contains(e, "kappa >= 0"));
    CHECK(contains(e, "t.cfg"));
    CHECK(contains(config_error("[run]\nscenario = bosonic\nmotion = periodic\n[periodic]\ntau = 0\n"), "tau > 0"));
    CHECK(contains(config_error("[run]\ndt = 0.25\ndt_int = 0.5\n"), "dt_int"));
    CHECK(contains(config_error("[run]\nscenario = quapi\nmode = asymptotic-cycle\nmotion = periodic\n"), "quapi"));
  }

  TEST_CASE("unknown keys and sections report their position") {
    const std::string key = config_error("[run]\nscenario = bosonic\n  kapa = 1\n");
    CHECK(contains(key, "t.cfg:3:3"));
    CHECK(contains(key, "kapa"));
    CHECK(contains(config_error("[run]\n[nonsense]\nx = 1\n"), "t.cfg:2:"));
    CHECK(contains(config_error("[run]\nscenario = bosonic\nscenario = quapi\n"), "first defined at line 2"));
    CHECK(contains(config_error("[bath]\n[run]\n[bath]\n"), "first defined at line 1"));
  }

  TEST_CASE("malformed values") {
    CHECK(contains(config_error("[bath]\nkappa = abc\n"), "t.cfg:2:9"));
    CHECK(contains(config_error("[bath]\nkappa = 0.01x\n"), "finite number"));
    CHECK(contains(config_error("[run]\nseed = -3\n"), "non-negative integer"));
    CHECK(contains(config_error("[run]\nscenario = lindblad\n"), "expected one of"));
    CHECK(contains(config_error("[run]\nwrite_states = yes\n"), "true or false"));
    CHECK(contains(config_error("[scan]\nbetas = 1, 2\n"), "list"));
    CHECK(contains(config_error("[run]\nscenario\n"), "t.cfg:2"));
    CHECK(contains(config_error("[bath]\nkappa = nan\n"), "finite number"));
  }

  TEST_CASE("canonical text round trips") {
    for (const char* name : {"fig_qsmeb", "fig_quapi", "fig_landscape", "fig_sincyl"}) {
      INFO(name);
      const RunConfig c = resolve_config(ConfigDocument::read_file(std::string(DYNENT_SOURCE_DIR "/configs/") + name + ".cfg"));
      const std::string text = to_config_text(c);
      const RunConfig back = parse_config(text);
      CHECK(to_config_text(back) == text);
      CHECK(back.seed == c.seed);
      CHECK(back.dt_int == c.dt_int);
      CHECK(back.quapi_bath.omega_c == c.quapi_bath.omega_c);
      CHECK(back.landscape.seed == c.landscape.seed);
    }
  }

  TEST_CASE("sweep specification") {
    const ConfigDocument doc = ConfigDocument::parse(
        "[run]\nscenario = bosonic\n[sweep]\ncell_mode = single-run\nbath.kappa = [0.02, 0.005, 0.01]\nbath.beta = [1, 2]\n");
    const SweepSpec spec = parse_sweep(doc);
    REQUIRE(spec.axes.size() == 2);
    CHECK(spec.axes[0].name() == "bath.kappa");
    CHECK(spec.axes[0].values == std::vector<double>{0.005, 0.01, 0.02});
    CHECK(spec.cell_count() == 6);
    CHECK(spec.cell_mode == RunMode::single_run);
    CHECK(spec.base.section("sweep") == nullptr);

    const auto sweep_error = [](std::string_view text) {
      try {
        parse_sweep(ConfigDocument::parse(text, "s.cfg"));
      } catch (const ConfigError& e) {
        return std::string(e.what());
      }
      return std::string();
    };
    CHECK(contains(sweep_error("[run]\n[sweep]\nbath.kappa = []\n"), "sweep axis 'bath.kappa' is empty"));
    CHECK(contains(sweep_error("[run]\n[sweep]\nbath.kappa = [1, 1]\n"), "duplicate"));
    CHECK(contains(sweep_error("[run]\n[sweep]\nbath.kapa = [1, 2]\n"), "bath.kapa"));
    CHECK(contains(sweep_error("[run]\n[sweep]\nrun.dt = [1, 2]\n"), "run.dt"));
    CHECK(contains(sweep_error("[run]\n[sweep]\ncell_mode = sweep\n"), "cell_mode"));
    CHECK(contains(sweep_error("[run]\n[sweep]\nmax_cells = 2\n"), "defines no axis"));
    CHECK(contains(sweep_error("[run]\n[sweep]\nmax_cells = 2\nbath.kappa = [1, 2, 3]\n"), "max_cells"));
    CHECK(contains(sweep_error("[run]\n"), "[sweep]"));
  }
}
