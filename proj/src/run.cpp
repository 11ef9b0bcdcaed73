#include "dynent/run.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "dynent/csv.hpp"
#include "dynent/errors.hpp"
#include "dynent/lindblad.hpp"
#include "dynent/quapi.hpp"
#include "dynent/rng.hpp"
#include "dynent/spin_gas.hpp"

#ifndef DYNENT_VERSION
#define DYNENT_VERSION "0.0.0"
#endif

namespace dynent {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

bool is_bosonic(Scenario s) { return s == Scenario::bosonic || s == Scenario::bosonic_dephasing; }
bool is_spin_gas(Scenario s) { return s == Scenario::spin_gas || s == Scenario::spin_gas_dephasing; }

HamiltonianPoint static_point(const RunConfig& c) {
  return c.fixed.d ? point_at_distance(*c.fixed.d, c.model) : HamiltonianPoint{c.fixed.J, c.fixed.B};
}

// All artifacts go through here: binary mode keeps `\n` line endings.
class ArtifactWriter {
 public:
  ArtifactWriter(const RunOptions& options, std::string output) : dir_(options.out_dir), output_(std::move(output)) {}

  template <class Fn>
  void write(const std::string& suffix, Fn&& body) {
    const std::string name = output_ + suffix;
    const fs::path path = dir_ / name;
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    body(os);
    os.flush();
    if (!os) throw IoError("write to '" + path.string() + "' failed");
    files_.push_back(name);
  }

  const std::vector<std::string>& files() const { return files_; }

 private:
  fs::path dir_;
  std::string output_;
  std::vector<std::string> files_;
};

nlohmann::ordered_json metadata(const RunConfig& c, const RunResult& r) {
  nlohmann::ordered_json meta;
  meta["tool"] = "dynent";
  meta["version"] = std::string(version());
  meta["modules"] = {{"quantum-core", version()}, {"model", version()},   {"motion", version()},
                     {"lindblad-bosonic", version()}, {"spin-gas", version()}, {"quapi", version()},
                     {"cli-io", version()}};
  meta["scenario"] = std::string(to_string(c.scenario));
  meta["motion"] = std::string(to_string(c.motion));
  meta["mode"] = std::string(to_string(c.mode));
  meta["seed"] = c.seed;
  meta["rng"] = std::string(Rng::kName);
  meta["config"] = to_config_text(c);
  meta["outputs"] = r.files;
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  if (r.max_concurrence) summary["max_concurrence"] = *r.max_concurrence;
  if (r.periods) summary["periods"] = *r.periods;
  if (r.residual) summary["residual"] = *r.residual;
  meta["summary"] = summary;
  meta["wall_time_s"] = r.wall_time_s;
  return meta;
}

std::string cell_label(const SweepSpec& spec, std::size_t index, const std::vector<double>& values) {
  std::ostringstream os;
  const std::size_t width = std::to_string(spec.cell_count() - 1).size();
  const std::string idx = std::to_string(index);
  os << std::string(width - idx.size(), '0') << idx;
  for (std::size_t a = 0; a < spec.axes.size(); ++a) os << '_' << spec.axes[a].name() << '=' << csv::format_short(values[a]);
  return os.str();
}

}  // namespace

std::string_view version() { return DYNENT_VERSION; }

void apply_seed(RunConfig& config, std::uint64_t seed) {
  config.seed = seed;
  config.waiting.seed = seed;
  config.landscape.seed = seed;
}

Schedule build_schedule(const RunConfig& c) {
  const bool cycle = c.mode == RunMode::asymptotic_cycle;
  switch (c.motion) {
    case MotionKind::periodic:
      return periodic_schedule(c.periodic, c.model, c.dt, cycle ? 1 : c.n_periods);
    case MotionKind::ramp:
      return ramp_schedule(c.ramp, c.dt, c.t_end);
    case MotionKind::waiting:
      return waiting_time_schedule(c.waiting, c.model, c.dt, c.t_end);
    case MotionKind::landscape:
      return metropolis_schedule(c.landscape, c.model, c.dt, c.t_end);
    case MotionKind::fixed:
      return static_schedule(static_point(c), c.dt, c.t_end, c.fixed.d);
  }
  throw InputError("unknown motion");
}

GeneratorFn make_generator(const RunConfig& c) {
  const auto dephasing = c.dephasing_if_used();
  if (is_bosonic(c.scenario)) {
    const BathParams bath = c.bath;
    return [bath, dephasing](HamiltonianPoint p) { return bosonic_generator(p, bath, dephasing); };
  }
  if (is_spin_gas(c.scenario)) {
    const SpinGasParams gas = c.spin_gas;
    return [gas, dephasing](HamiltonianPoint p) { return spin_gas_generator(p, gas, dephasing); };
  }
  if (c.scenario == Scenario::unitary)
    return [](HamiltonianPoint p) { return superop::commutator(hamiltonian(p)); };
  throw InputError("scenario quapi has no Lindblad generator");
}

DensityMatrix initial_state(const RunConfig& c, HamiltonianPoint first) {
  InitialState kind = c.initial_state;
  if (kind == InitialState::automatic) kind = is_spin_gas(c.scenario) ? InitialState::steady : InitialState::thermal;
  switch (kind) {
    case InitialState::thermal:
      return thermal_state(first, c.scenario == Scenario::quapi ? c.quapi_bath.beta : c.bath.beta);
    case InitialState::ground:
      return DensityMatrix::from_pure(spectrum(first).states[0]);
    case InitialState::excited:
      return DensityMatrix::from_pure(spectrum(first).states[3]);
    case InitialState::mixed:
      return DensityMatrix::maximally_mixed();
    case InitialState::steady:
      if (is_spin_gas(c.scenario)) return steady_state_numeric(first, c.spin_gas, c.dephasing_if_used());
      return null_space_state(make_generator(c)(first));
    case InitialState::automatic:
      break;
  }
  throw InputError("unresolved initial state");
}

double integrator_step(const RunConfig& c, const Schedule& schedule) {
  return c.dt_int > 0.0 ? c.dt_int : default_dt_int(schedule);
}

TimeSeries simulate(const RunConfig& c, const Schedule& schedule) {
  const DensityMatrix rho0 = initial_state(c, schedule.point(0));
  if (c.scenario == Scenario::quapi) return quapi_propagate(rho0, schedule, c.quapi, c.quapi_bath);
  return integrate(rho0, schedule, make_generator(c), integrator_step(c, schedule));
}

void write_steady_scan(const RunConfig& c, std::ostream& os) {
  const auto dephasing = c.dephasing_if_used();
  const ScanSettings& s = c.scan;
  if (s.kind == ScanKind::fte) {
    if (!is_bosonic(c.scenario)) throw InputError("scan.kind = fte requires a bosonic scenario");
    os << "beta,x,J,B,C_static\n";
    for (double beta : s.betas) {
      BathParams bath = c.bath;
      bath.beta = beta;
      for (int i = 0; i <= s.steps; ++i) {
        const double x = s.x_max * i / s.steps;
        const HamiltonianPoint p{s.J_start + x, s.B_start - x};
        const double conc = dephasing ? wootters_concurrence(null_space_state(bosonic_generator(p, bath, dephasing)))
                                      : thermal_concurrence(p, beta);
        os << csv::format(beta) << ',' << csv::format(x) << ',' << csv::format(p.J) << ',' << csv::format(p.B) << ','
           << csv::format(conc) << '\n';
      }
    }
    return;
  }
  if (is_bosonic(c.scenario))
    os << "d,J,B,C_static,p0\n";
  else if (is_spin_gas(c.scenario))
    os << "d,J,B,s_c,C_static\n";
  else
    throw InputError("steady-scan requires a bosonic or spin-gas scenario");
  for (int i = 0; i < s.n; ++i) {
    const double d = s.d_min + (s.d_max - s.d_min) * i / (s.n - 1);
    const HamiltonianPoint p = point_at_distance(d, c.model);
    os << csv::format(d) << ',' << csv::format(p.J) << ',' << csv::format(p.B) << ',';
    if (is_bosonic(c.scenario)) {
      const DensityMatrix rho =
          dephasing ? null_space_state(bosonic_generator(p, c.bath, dephasing)) : thermal_state(p, c.bath.beta);
      const double conc = dephasing ? wootters_concurrence(rho) : thermal_concurrence(p, c.bath.beta);
      os << csv::format(conc) << ',' << csv::format(populations(rho, spectrum(p).states)[0]) << '\n';
    } else {
      const double conc = dephasing ? wootters_concurrence(steady_state_numeric(p, c.spin_gas, dephasing))
                                    : static_concurrence(p, c.spin_gas);
      os << csv::format(critical_s(p, c.spin_gas.gamma)) << ',' << csv::format(conc) << '\n';
    }
  }
}

void write_brf(const RunConfig& c, std::ostream& os) {
  os << "t,re,im\n";
  for (int i = 0; i < c.brf.n; ++i) {
    const double t = c.brf.t_max * i / (c.brf.n - 1);
    const cplx v = bath_response_function(t, c.quapi_bath);
    os << csv::format(t) << ',' << csv::format(v.real()) << ',' << csv::format(v.imag()) << '\n';
  }
}

RunResult run(const RunConfig& config, const RunOptions& options) {
  const auto start = Clock::now();
  RunResult result;
  ArtifactWriter out(options, config.output);

  switch (config.mode) {
    case RunMode::single_run: {
      const Schedule schedule = build_schedule(config);
      const TimeSeries series = simulate(config, schedule);
      out.write(".csv", [&](std::ostream& os) { series.write_csv(os); });
      out.write(".schedule.csv", [&](std::ostream& os) { schedule.write_csv(os); });
      if (config.write_states) out.write(".states.csv", [&](std::ostream& os) { series.write_states_csv(os); });
      result.max_concurrence = series.max_concurrence();
      break;
    }
    case RunMode::asymptotic_cycle: {
      const Schedule schedule = build_schedule(config);
      const DensityMatrix start_state = initial_state(config, schedule.point(0));
      const AsymptoticCycle cycle = asymptotic_cycle(start_state, schedule, make_generator(config),
                                                      integrator_step(config, schedule), config.cycle);
      out.write(".csv", [&](std::ostream& os) { cycle.cycle.write_csv(os); });
      out.write(".first_period.csv", [&](std::ostream& os) { cycle.first_period.write_csv(os); });
      out.write(".schedule.csv", [&](std::ostream& os) { schedule.write_csv(os); });
      if (config.write_states) out.write(".states.csv", [&](std::ostream& os) { cycle.cycle.write_states_csv(os); });
      result.max_concurrence = cycle.cycle.max_concurrence();
      result.periods = cycle.periods;
      result.residual = cycle.residual;
      break;
    }
    case RunMode::steady_scan: {
      std::ostringstream table;
      write_steady_scan(config, table);
      out.write(".csv", [&](std::ostream& os) { os << table.str(); });
      // Peak of the C_static column.
      std::istringstream in(table.str());
      const auto header = csv::read_header(in, {});
      const auto col = static_cast<std::size_t>(
          std::find(header.begin(), header.end(), "C_static") - header.begin());
      double peak = 0.0;
      for (std::string line; std::getline(in, line);)
        if (!line.empty()) peak = std::max(peak, csv::parse_double(csv::split(line).at(col)));
      result.max_concurrence = peak;
      break;
    }
    case RunMode::brf:
      out.write(".csv", [&](std::ostream& os) { write_brf(config, os); });
      break;
    case RunMode::sweep:
      throw InputError("mode sweep needs the sweep driver (dynent sweep <cfg>)");
  }

  result.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  result.files = out.files();
  result.files.push_back(config.output + ".meta.json");
  const std::string meta = metadata(config, result).dump(2) + "\n";
  ArtifactWriter meta_out(options, config.output);
  meta_out.write(".meta.json", [&](std::ostream& os) { os << meta; });
  return result;
}

bool SweepResult::all_ok() const {
  return std::all_of(cells.begin(), cells.end(), [](const SweepCell& c) { return c.ok; });
}

std::uint64_t cell_seed(std::uint64_t base_seed, const std::vector<SweepAxis>& axes,
                        const std::vector<double>& values) {
  std::string key = std::to_string(base_seed);
  for (std::size_t a = 0; a < axes.size(); ++a) key += "|" + axes[a].name() + "=" + csv::format_short(values.at(a));
  return stable_hash(key);
}

SweepResult run_sweep(const SweepSpec& spec, const RunOptions& options, unsigned workers) {
  const auto start = Clock::now();
  RunConfig base = resolve_config(spec.base);
  if (spec.cell_count() == 0) throw ConfigError("sweep has no cells");
  if (workers == 0) workers = 1;

  SweepResult result;
  const std::size_t n = spec.cell_count();
  result.cells.resize(n);
  // Row-major product: the last axis varies fastest, so cells are in tuple order.
  for (std::size_t i = 0; i < n; ++i) {
    SweepCell& cell = result.cells[i];
    std::size_t rem = i;
    cell.values.resize(spec.axes.size());
    for (std::size_t a = spec.axes.size(); a-- > 0;) {
      const auto& vals = spec.axes[a].values;
      cell.values[a] = vals[rem % vals.size()];
      rem /= vals.size();
    }
    cell.seed = cell_seed(base.seed, spec.axes, cell.values);
    cell.output = base.output + ".cells/" + cell_label(spec, i, cell.values);
  }

  const auto run_cell = [&](SweepCell& cell) {
    try {
      ConfigDocument doc = spec.base;
      for (std::size_t a = 0; a < spec.axes.size(); ++a)
        doc.set(spec.axes[a].section, spec.axes[a].key, csv::format_short(cell.values[a]));
      doc.set("run", "mode", std::string(to_string(spec.cell_mode)));
      doc.set("run", "output", cell.output);
      doc.set("run", "seed", std::to_string(cell.seed));
      const RunConfig config = resolve_config(doc);
      cell.result = run(config, options);
      cell.ok = true;
    } catch (const Error& e) {
      cell.error_category = e.category();
      cell.error_message = e.what();
    } catch (const std::exception& e) {
      cell.error_category = "internal";
      cell.error_message = e.what();
    }
  };

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) run_cell(result.cells[i]);
  };
  const unsigned count = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  std::vector<std::thread> pool;
  pool.reserve(count);
  for (unsigned w = 0; w < count; ++w) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  ArtifactWriter out(options, base.output);
  out.write(".sweep.csv", [&](std::ostream& os) { write_sweep_csv(spec, result, os); });

  nlohmann::ordered_json meta;
  meta["tool"] = "dynent";
  meta["version"] = std::string(version());
  meta["base_seed"] = base.seed;
  meta["rng"] = std::string(Rng::kName);
  meta["cell_mode"] = std::string(to_string(spec.cell_mode));
  meta["base_config"] = to_config_text(base);
  nlohmann::ordered_json axes = nlohmann::ordered_json::array();
  for (const SweepAxis& a : spec.axes) axes.push_back({{"name", a.name()}, {"values", a.values}});
  meta["axes"] = axes;
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const SweepCell& c : result.cells) {
    nlohmann::ordered_json j{{"output", c.output}, {"seed", c.seed}, {"ok", c.ok}};
    if (!c.ok) j["error"] = {{"category", c.error_category}, {"message", c.error_message}};
    cells.push_back(j);
  }
  meta["cells"] = cells;
  meta["workers"] = count;
  meta["wall_time_s"] = std::chrono::duration<double>(Clock::now() - start).count();
  out.write(".sweep.meta.json", [&](std::ostream& os) { os << meta.dump(2) << "\n"; });
  result.files = out.files();
  return result;
}

void write_sweep_csv(const SweepSpec& spec, const SweepResult& result, std::ostream& os) {
  os << "cell";
  for (const SweepAxis& a : spec.axes) os << ',' << a.name();
  os << ",seed,status,max_C,periods,file\n";
  for (std::size_t i = 0; i < result.cells.size(); ++i) {
    const SweepCell& c = result.cells[i];
    os << i;
    for (double v : c.values) os << ',' << csv::format(v);
    os << ',' << c.seed << ',' << (c.ok ? std::string("ok") : "error:" + c.error_category) << ',';
    if (c.ok && c.result.max_concurrence) os << csv::format(*c.result.max_concurrence);
    os << ',';
    if (c.ok && c.result.periods) os << *c.result.periods;
    os << ',' << (c.ok ? c.output + ".csv" : std::string()) << '\n';
  }
}

}  // namespace dynent
