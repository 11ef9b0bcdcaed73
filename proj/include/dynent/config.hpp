// Run configuration: a strict sectioned key/value document and the
// validated RunConfig / SweepSpec resolved from it.
//
// Syntax
//   # comment              (also after a value)
//   [section]
//   key = value
//   key = [v1, v2, ...]   (lists: sweep axes and scan.betas)
// Unknown sections and keys, duplicates and malformed values are fatal and
// reported as `source:line:col: message`.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dynent/lindblad.hpp"
#include "dynent/model.hpp"
#include "dynent/motion.hpp"
#include "dynent/quapi.hpp"
#include "dynent/spin_gas.hpp"

namespace dynent {

struct ConfigEntry {
  std::string key;
  std::string value;  // trimmed raw text, list brackets included
  int line = 0;
  int key_col = 0;
  int value_col = 0;
};

struct ConfigSection {
  std::string name;
  int line = 0;
  std::vector<ConfigEntry> entries;

  const ConfigEntry* find(std::string_view key) const;
};

class ConfigDocument {
 public:
  static ConfigDocument parse(std::string_view text, std::string source = "<config>");
  static ConfigDocument read_file(const std::string& path);

  const std::string& source() const noexcept { return source_; }
  const std::vector<ConfigSection>& sections() const noexcept { return sections_; }
  const ConfigSection* section(std::string_view name) const;

  /// Inserts or replaces one value; the section is created when missing.
  void set(std::string_view section, std::string_view key, std::string value);
  void erase_section(std::string_view name);

 private:
  std::string source_;
  std::vector<ConfigSection> sections_;
};

enum class Scenario { bosonic, bosonic_dephasing, spin_gas, spin_gas_dephasing, quapi, unitary };
enum class MotionKind { periodic, ramp, waiting, landscape, fixed };
enum class RunMode { single_run, asymptotic_cycle, steady_scan, sweep, brf };
enum class InitialState { automatic, thermal, ground, excited, mixed, steady };
enum class ScanKind { distance, fte };

std::string_view to_string(Scenario s);
std::string_view to_string(MotionKind m);
std::string_view to_string(RunMode m);
std::string_view to_string(InitialState s);
std::string_view to_string(ScanKind k);

/// Constant configuration: either a distance (through the model profiles)
/// or (J, B) directly.
struct StaticMotion {
  std::optional<double> d;
  double J = 1.0;
  double B = 1.0;
};

/// Grid of static configurations for steady-scan mode.
///   distance: d in [d_min, d_max] with n points
///   fte:      J = J_start + x, B = B_start - x, x in [0, x_max] in `steps`
///             steps, for every beta in `betas`
struct ScanSettings {
  ScanKind kind = ScanKind::distance;
  double d_min = 20.0;
  double d_max = 40.0;
  int n = 201;
  double x_max = 1.1;
  int steps = 100;
  double J_start = 0.1;
  double B_start = 1.2;
  std::vector<double> betas{0.5, 1.0, 2.0, 3.0};
};

struct BrfSettings {
  double t_max = 5.0;
  int n = 501;
};

struct RunConfig {
  Scenario scenario = Scenario::unitary;
  MotionKind motion = MotionKind::fixed;
  RunMode mode = RunMode::single_run;
  std::uint64_t seed = 1;
  std::string output = "run";
  double dt = 0.25;       // schedule spacing
  double dt_int = 0.0;    // integrator step; 0 selects schedule spacing / 4
  double t_end = 100.0;   // ramp, waiting, landscape and static motion
  int n_periods = 1;      // periodic single runs
  InitialState initial_state = InitialState::automatic;
  bool write_states = false;
  CycleOptions cycle;

  ModelParams model;
  PeriodicMotion periodic;
  RampMotion ramp;
  WaitingTimeMotion waiting;
  LandscapeMotion landscape;
  StaticMotion fixed;
  BathParams bath;
  DephasingParams dephasing;
  SpinGasParams spin_gas;
  SpectralDensity quapi_bath;
  QuapiParams quapi;
  ScanSettings scan;
  BrfSettings brf;

  bool has_dephasing() const {
    return scenario == Scenario::bosonic_dephasing || scenario == Scenario::spin_gas_dephasing;
  }
  std::optional<DephasingParams> dephasing_if_used() const {
    return has_dephasing() ? std::optional<DephasingParams>(dephasing) : std::nullopt;
  }
};

/// Checks every cross-field invariant; throws ConfigError.
void validate(const RunConfig& config);

/// Strict resolution of a parsed document. [sweep] is ignored here.
RunConfig resolve_config(const ConfigDocument& doc);
RunConfig parse_config(std::string_view text, std::string source = "<config>");

/// Canonical document: every resolved key in a fixed order, numbers in
/// shortest round-trip form. parse_config(to_config_text(c)) reproduces c.
std::string to_config_text(const RunConfig& config);

struct SweepAxis {
  std::string section;
  std::string key;
  std::vector<double> values;  // ascending, duplicates rejected

  std::string name() const { return section + "." + key; }
};

struct SweepSpec {
  ConfigDocument base;  // without the [sweep] section
  std::vector<SweepAxis> axes;
  std::size_t max_cells = 256;
  RunMode cell_mode = RunMode::asymptotic_cycle;

  std::size_t cell_count() const;
};

/// Reads the [sweep] section: `max_cells`, `cell_mode` and any number of
/// `section.key = [values]` axes, each naming a resolvable config key.
SweepSpec parse_sweep(const ConfigDocument& doc);

}  // namespace dynent
