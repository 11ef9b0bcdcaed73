#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "dynent/errors.hpp"
#include "dynent/lindblad.hpp"
#include "dynent/rng.hpp"
#include "dynent/run.hpp"

using namespace dynent;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dynent_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::istringstream in(slurp(p));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    rows.push_back(row);
  }
  return rows;
}

const char* kCycleConfig = R"([run]
scenario = bosonic
motion = periodic
mode = asymptotic-cycle
output = cyc
dt = 0.5
[bath]
kappa = 0.02
)";

}  // namespace

TEST_SUITE("cli-io") {
  TEST_CASE("cycle run writes its artifacts reproducibly") {
    const fs::path a = scratch("cycle_a");
    const fs::path b = scratch("cycle_b");
    const RunConfig c = parse_config(kCycleConfig);
    const RunResult ra = run(c, {a.string()});
    const RunResult rb = run(c, {b.string()});
    REQUIRE(ra.max_concurrence);
    CHECK(*ra.max_concurrence > 0.0);
    REQUIRE(ra.periods);
    CHECK(*ra.periods >= 2);
    for (const char* f : {"cyc.csv", "cyc.first_period.csv", "cyc.schedule.csv"}) {
      INFO(f);
      CHECK(slurp(a / f) == slurp(b / f));
    }
    const auto rows = read_csv(a / "cyc.csv");
    CHECK(rows.front() == std::vector<std::string>{"t", "d", "C", "p0", "p1", "p2", "p3", "purity"});
    CHECK(rows.size() == 202);

    const auto meta = nlohmann::json::parse(slurp(a / "cyc.meta.json"));
    CHECK(meta["seed"] == 1);
    CHECK(meta["version"] == std::string(version()));
    CHECK(meta["mode"] == "asymptotic-cycle");
    CHECK(meta["rng"] == std::string(Rng::kName));
    CHECK(parse_config(meta["config"].get<std::string>()).bath.kappa == 0.02);
    CHECK(meta.contains("wall_time_s"));
  }

  TEST_CASE("finite-temperature scan matches the closed form") {
    const fs::path dir = scratch("fte");
    const RunConfig c = resolve_config(ConfigDocument::read_file(DYNENT_SOURCE_DIR "/configs/fig_fte.cfg"));
    run(c, {dir.string()});
    const auto rows = read_csv(dir / "fig_fte.csv");
    REQUIRE(rows.front() == std::vector<std::string>{"beta", "x", "J", "B", "C_static"});
    REQUIRE(rows.size() == 1 + 4 * 101);
    double worst = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double beta = std::stod(rows[i][0]);
      const double x = std::stod(rows[i][1]);
      const double expected = thermal_concurrence({0.1 + x, 1.2 - x}, beta);
      worst = std::max(worst, std::abs(std::stod(rows[i][4]) - expected));
    }
    CHECK(worst < 1e-10);
  }

  TEST_CASE("steady scan and brf tables") {
    const fs::path dir = scratch("tables");
    RunConfig c = parse_config("[run]\nscenario = spin-gas\nmode = steady-scan\noutput = cs\n[scan]\nn = 11\n");
    run(c, {dir.string()});
    const auto cs = read_csv(dir / "cs.csv");
    CHECK(cs.front() == std::vector<std::string>{"d", "J", "B", "s_c", "C_static"});
    CHECK(cs.size() == 12);

    c = parse_config("[run]\nscenario = quapi\nmode = brf\noutput = brf\n[brf]\nt_max = 2\nn = 21\n");
    run(c, {dir.string()});
    const auto brf = read_csv(dir / "brf.csv");
    CHECK(brf.front() == std::vector<std::string>{"t", "re", "im"});
    CHECK(brf.size() == 22);
  }

  TEST_CASE("seeds drive stochastic motions") {
    const fs::path dir = scratch("seed");
    const std::string text = "[run]\nscenario = unitary\nmotion = waiting\nt_end = 200\noutput = w\n";
    RunConfig c = parse_config(text);
    run(c, {dir.string()});
    const std::string first = slurp(dir / "w.schedule.csv");
    apply_seed(c, 2);
    CHECK(c.waiting.seed == 2);
    CHECK(c.landscape.seed == 2);
    run(c, {dir.string()});
    CHECK(slurp(dir / "w.schedule.csv") != first);
  }

  TEST_CASE("kappa sweep orders the peaks and is independent of the worker count") {
    const ConfigDocument doc = ConfigDocument::read_file(DYNENT_SOURCE_DIR "/configs/fig_qsmeb_kappa.cfg");
    ConfigDocument fast = doc;
    fast.set("run", "dt", "0.5");
    const SweepSpec spec = parse_sweep(fast);
    const fs::path one = scratch("sweep_1");
    const fs::path many = scratch("sweep_8");
    const SweepResult r1 = run_sweep(spec, {one.string()}, 1);
    const SweepResult r8 = run_sweep(spec, {many.string()}, 8);
    REQUIRE(r1.all_ok());
    REQUIRE(r1.cells.size() == 3);
    CHECK(*r1.cells[0].result.max_concurrence > *r1.cells[1].result.max_concurrence);
    CHECK(*r1.cells[1].result.max_concurrence > *r1.cells[2].result.max_concurrence);
    CHECK(slurp(one / "fig_qsmeb_kappa.sweep.csv") == slurp(many / "fig_qsmeb_kappa.sweep.csv"));
    for (const SweepCell& cell : r1.cells) CHECK(slurp(one / (cell.output + ".csv")) == slurp(many / (cell.output + ".csv")));
    CHECK(r1.cells[0].seed != r1.cells[1].seed);
    CHECK(r1.cells[0].seed == cell_seed(1, spec.axes, {0.005}));
  }

  TEST_CASE("a failing cell does not stop the sweep") {
    const ConfigDocument doc = ConfigDocument::parse(
        "[run]\nscenario = bosonic\nmode = sweep\nt_end = 5\noutput = mixed\n"
        "[sweep]\ncell_mode = single-run\nbath.kappa = [-0.01, 0.01, 0.02]\n");
    const fs::path dir = scratch("sweep_fail");
    const SweepResult r = run_sweep(parse_sweep(doc), {dir.string()}, 2);
    REQUIRE(r.cells.size() == 3);
    CHECK_FALSE(r.all_ok());
    CHECK_FALSE(r.cells[0].ok);
    CHECK(r.cells[0].error_category == "config");
    CHECK(r.cells[0].error_message.find("kappa >= 0") != std::string::npos);
    CHECK(r.cells[1].ok);
    CHECK(r.cells[2].ok);
    const auto rows = read_csv(dir / "mixed.sweep.csv");
    REQUIRE(rows.size() == 4);
    CHECK(rows[1][3] == "error:config");
    CHECK(rows[2][3] == "ok");
  }

  TEST_CASE("run rejects sweep mode and quapi generators") {
    RunConfig c = parse_config("[run]\nscenario = bosonic\n");
    c.mode = RunMode::sweep;
    CHECK_THROWS_AS(run(c, {scratch("reject").string()}), InputError);
    const RunConfig q = parse_config("[run]\nscenario = quapi\n");
    CHECK_THROWS_AS(make_generator(q), InputError);
  }
}
