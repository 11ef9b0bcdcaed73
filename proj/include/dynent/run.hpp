// Scenario orchestration: builds the schedule, initial state and generator
// a RunConfig describes, runs the selected mode and writes the artifacts.
//
// Files written for output name `o` under the output directory:
//   o.csv               time series, steady scan or BRF table
//   o.meta.json         resolved config, seed, RNG identity, versions, wall time
//   o.schedule.csv      (J, B) schedule (time-series modes)
//   o.first_period.csv  period started from the initial state (cycle mode)
//   o.states.csv        full density matrices when run.write_states = true
// Sweeps add o.sweep.csv, o.sweep.meta.json and one run per cell under o.cells/.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dynent/config.hpp"
#include "dynent/dynamics.hpp"

namespace dynent {

std::string_view version();

struct RunOptions {
  std::string out_dir = ".";
};

struct RunResult {
  std::vector<std::string> files;  // relative to the output directory
  std::optional<double> max_concurrence;
  std::optional<int> periods;
  std::optional<double> residual;
  double wall_time_s = 0.0;
};

/// Sets run.seed and the seeds of the stochastic motions.
void apply_seed(RunConfig& config, std::uint64_t seed);

/// Motion schedule; one period in asymptotic-cycle mode.
Schedule build_schedule(const RunConfig& config);

/// Lindblad generator of the scenario. Throws InputError for quapi.
GeneratorFn make_generator(const RunConfig& config);

DensityMatrix initial_state(const RunConfig& config, HamiltonianPoint first);

/// Integrator step: run.dt_int, or spacing / 4.
double integrator_step(const RunConfig& config, const Schedule& schedule);

/// Single run over `schedule` (RK4, or QUAPI for that scenario).
TimeSeries simulate(const RunConfig& config, const Schedule& schedule);

/// steady-scan table: `d,J,B,C_static,p0` (bosonic), `d,J,B,s_c,C_static`
/// (spin gas) or `beta,x,J,B,C_static` (scan.kind = fte).
void write_steady_scan(const RunConfig& config, std::ostream& os);

/// `t,re,im` of the bath response function of the [quapi] spectral density.
void write_brf(const RunConfig& config, std::ostream& os);

/// Runs config.mode and writes its artifacts. sweep mode is rejected here.
RunResult run(const RunConfig& config, const RunOptions& options);

struct SweepCell {
  std::vector<double> values;  // one per axis
  std::uint64_t seed = 0;
  std::string output;          // run.output of the cell
  bool ok = false;
  std::string error_category;
  std::string error_message;
  RunResult result;
};

struct SweepResult {
  std::vector<SweepCell> cells;  // sorted by axis tuple
  std::vector<std::string> files;

  bool all_ok() const;
};

/// Per-cell seed from the base seed and the cell's axis tuple.
std::uint64_t cell_seed(std::uint64_t base_seed, const std::vector<SweepAxis>& axes,
                        const std::vector<double>& values);

/// Runs every cell on `workers` threads. Cell failures are recorded and the
/// remaining cells still run; the aggregate is written in tuple order.
SweepResult run_sweep(const SweepSpec& spec, const RunOptions& options, unsigned workers);

/// Aggregate table `cell,<axes>,seed,status,max_C,periods,file`.
void write_sweep_csv(const SweepSpec& spec, const SweepResult& result, std::ostream& os);

}  // namespace dynent
