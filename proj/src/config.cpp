#include "dynent/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "dynent/csv.hpp"
#include "dynent/errors.hpp"

namespace dynent {

namespace {

// Every accepted key, per section. The reader refuses anything else.
const std::map<std::string, std::vector<std::string>, std::less<>>& key_table() {
  static const std::map<std::string, std::vector<std::string>, std::less<>> table{
      {"run",
       {"scenario", "motion", "mode", "seed", "output", "dt", "dt_int", "t_end", "n_periods", "initial_state",
        "write_states", "cycle_tol", "max_periods"}},
      {"model", {"B0", "B1", "sigma_field", "J0"}},
      {"periodic", {"x1_0", "x2_0", "a", "tau"}},
      {"ramp", {"J_start", "B_start", "delta", "t0"}},
      {"static", {"d", "J", "B"}},
      {"waiting", {"d_open", "d_closed", "mean_open", "std_open", "mean_closed", "std_closed", "transit_time"}},
      {"landscape",
       {"d_open", "d_closed", "barrier_height", "well_width", "wall_stiffness", "beta_cl", "step", "dt_hop",
        "d_start"}},
      {"bath", {"kappa", "beta"}},
      {"dephasing", {"gamma_p"}},
      {"spin_gas", {"gamma", "s"}},
      {"quapi", {"kappa", "omega_c", "beta", "dt_slice", "dk", "max_dk"}},
      {"scan", {"kind", "d_min", "d_max", "n", "x_max", "steps", "J_start", "B_start", "betas"}},
      {"brf", {"t_max", "n"}},
  };
  return table;
}

bool is_known_key(std::string_view section, std::string_view key) {
  const auto& table = key_table();
  const auto it = table.find(section);
  return it != table.end() && std::find(it->second.begin(), it->second.end(), key) != it->second.end();
}

std::string_view trim(std::string_view s) {
  const std::size_t first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const std::size_t last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail_at(const std::string& source, int line, int col, const std::string& msg) {
  std::ostringstream os;
  os << source;
  if (line > 0) os << ':' << line << ':' << col;
  os << ": " << msg;
  throw ConfigError(os.str());
}

bool valid_name(std::string_view s, bool allow_dot) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [&](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' ||
           (allow_dot && c == '.');
  });
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

template <class Int>
std::optional<Int> to_integer(std::string_view s) {
  Int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

// Typed access to one section; reports errors at the offending value.
class SectionReader {
 public:
  SectionReader(const ConfigDocument& doc, std::string name) : doc_(doc), name_(std::move(name)) {
    section_ = doc.section(name_);
  }

  const ConfigEntry* entry(std::string_view key) const {
    if (!is_known_key(name_, key)) throw std::logic_error("unregistered config key " + name_ + "." + std::string(key));
    return section_ ? section_->find(key) : nullptr;
  }

  [[noreturn]] void fail(const ConfigEntry& e, const std::string& msg) const {
    fail_at(doc_.source(), e.line, e.value_col, msg);
  }

  std::string qualified(std::string_view key) const { return name_ + "." + std::string(key); }

  double number(std::string_view key, double fallback) const {
    const ConfigEntry* e = entry(key);
    if (!e) return fallback;
    const auto v = to_double(e->value);
    if (!v) fail(*e, "expected a finite number for " + qualified(key) + ", got '" + e->value + "'");
    return *v;
  }

  std::optional<double> optional_number(std::string_view key) const {
    if (!entry(key)) return std::nullopt;
    return number(key, 0.0);
  }

  int integer(std::string_view key, int fallback) const {
    const ConfigEntry* e = entry(key);
    if (!e) return fallback;
    const auto v = to_integer<int>(e->value);
    if (!v) fail(*e, "expected an integer for " + qualified(key) + ", got '" + e->value + "'");
    return *v;
  }

  std::uint64_t unsigned64(std::string_view key, std::uint64_t fallback) const {
    const ConfigEntry* e = entry(key);
    if (!e) return fallback;
    const auto v = to_integer<std::uint64_t>(e->value);
    if (!v) fail(*e, "expected a non-negative integer for " + qualified(key) + ", got '" + e->value + "'");
    return *v;
  }

  bool boolean(std::string_view key, bool fallback) const {
    const ConfigEntry* e = entry(key);
    if (!e) return fallback;
    if (e->value == "true") return true;
    if (e->value == "false") return false;
    fail(*e, "expected true or false for " + qualified(key) + ", got '" + e->value + "'");
  }

  std::string word(std::string_view key, std::string fallback) const {
    const ConfigEntry* e = entry(key);
    return e ? e->value : fallback;
  }

  template <class Enum, std::size_t N>
  Enum choice(std::string_view key, Enum fallback, const std::array<Enum, N>& options) const {
    const ConfigEntry* e = entry(key);
    if (!e) return fallback;
    std::string allowed;
    for (Enum o : options) {
      if (e->value == to_string(o)) return o;
      allowed += (allowed.empty() ? "" : ", ") + std::string(to_string(o));
    }
    fail(*e, "invalid " + qualified(key) + " '" + e->value + "' (expected one of: " + allowed + ")");
  }

  std::vector<double> list(std::string_view key, std::vector<double> fallback) const {
    const ConfigEntry* e = entry(key);
    if (!e) return fallback;
    const std::string_view v = e->value;
    if (v.size() < 2 || v.front() != '[' || v.back() != ']')
      fail(*e, "expected a list [v1, v2, ...] for " + qualified(key));
    std::vector<double> out;
    const std::string_view body = trim(v.substr(1, v.size() - 2));
    if (body.empty()) return out;
    std::size_t pos = 0;
    while (pos <= body.size()) {
      const std::size_t comma = std::min(body.find(',', pos), body.size());
      const std::string_view item = trim(body.substr(pos, comma - pos));
      const auto x = to_double(item);
      if (!x) fail(*e, "list item '" + std::string(item) + "' of " + qualified(key) + " is not a finite number");
      out.push_back(*x);
      pos = comma + 1;
    }
    return out;
  }

  // Unknown keys are fatal.
  void finish() const {
    if (!section_) return;
    for (const ConfigEntry& e : section_->entries) {
      if (!is_known_key(name_, e.key))
        fail_at(doc_.source(), e.line, e.key_col, "unknown key '" + e.key + "' in [" + name_ + "]");
    }
  }

 private:
  const ConfigDocument& doc_;
  std::string name_;
  const ConfigSection* section_ = nullptr;
};

constexpr std::array kScenarios{Scenario::bosonic,           Scenario::bosonic_dephasing, Scenario::spin_gas,
                                Scenario::spin_gas_dephasing, Scenario::quapi,             Scenario::unitary};
constexpr std::array kMotions{MotionKind::periodic, MotionKind::ramp, MotionKind::waiting, MotionKind::landscape,
                              MotionKind::fixed};
constexpr std::array kModes{RunMode::single_run, RunMode::asymptotic_cycle, RunMode::steady_scan, RunMode::sweep,
                            RunMode::brf};
constexpr std::array kInitialStates{InitialState::automatic, InitialState::thermal, InitialState::ground,
                                    InitialState::excited,   InitialState::mixed,   InitialState::steady};
constexpr std::array kScanKinds{ScanKind::distance, ScanKind::fte};

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

std::string num(double v) { return csv::format_short(v); }

}  // namespace

const ConfigEntry* ConfigSection::find(std::string_view key) const {
  for (const ConfigEntry& e : entries)
    if (e.key == key) return &e;
  return nullptr;
}

ConfigDocument ConfigDocument::parse(std::string_view text, std::string source) {
  ConfigDocument doc;
  doc.source_ = std::move(source);
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    const std::string_view body = raw.substr(0, raw.find('#'));
    const std::size_t first = body.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    const std::string_view content = trim(body);
    const int col = static_cast<int>(first) + 1;

    if (content.front() == '[') {
      if (content.back() != ']')
        fail_at(doc.source_, line_no, col + static_cast<int>(content.size()), "expected ']' to close the section header");
      const std::string name(trim(content.substr(1, content.size() - 2)));
      if (!valid_name(name, false)) fail_at(doc.source_, line_no, col + 1, "invalid section name '" + name + "'");
      if (const ConfigSection* prev = doc.section(name))
        fail_at(doc.source_, line_no, col,
                "duplicate section [" + name + "] (first defined at line " + std::to_string(prev->line) + ")");
      doc.sections_.push_back({name, line_no, {}});
      continue;
    }

    const std::size_t eq = content.find('=');
    if (eq == std::string_view::npos) fail_at(doc.source_, line_no, col, "expected 'key = value' or '[section]'");
    const std::string key(trim(content.substr(0, eq)));
    if (!valid_name(key, true)) fail_at(doc.source_, line_no, col, "invalid key '" + key + "'");
    if (doc.sections_.empty()) fail_at(doc.source_, line_no, col, "key '" + key + "' appears before any [section]");
    const std::string_view rest = content.substr(eq + 1);
    const std::string_view value = trim(rest);
    const int value_col = col + static_cast<int>(eq) + 1 + static_cast<int>(rest.find_first_not_of(" \t"));
    if (value.empty()) fail_at(doc.source_, line_no, col + static_cast<int>(eq) + 1, "missing value for key '" + key + "'");
    ConfigSection& sec = doc.sections_.back();
    if (const ConfigEntry* prev = sec.find(key))
      fail_at(doc.source_, line_no, col,
              "duplicate key '" + key + "' in [" + sec.name + "] (first defined at line " + std::to_string(prev->line) +
                  ")");
    sec.entries.push_back({key, std::string(value), line_no, col, value_col});
  }
  return doc;
}

ConfigDocument ConfigDocument::read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

const ConfigSection* ConfigDocument::section(std::string_view name) const {
  for (const ConfigSection& s : sections_)
    if (s.name == name) return &s;
  return nullptr;
}

void ConfigDocument::set(std::string_view section, std::string_view key, std::string value) {
  auto it = std::find_if(sections_.begin(), sections_.end(), [&](const ConfigSection& s) { return s.name == section; });
  if (it == sections_.end()) {
    sections_.push_back({std::string(section), 0, {}});
    it = sections_.end() - 1;
  }
  for (ConfigEntry& e : it->entries) {
    if (e.key == key) {
      e.value = std::move(value);
      return;
    }
  }
  it->entries.push_back({std::string(key), std::move(value), 0, 0, 0});
}

void ConfigDocument::erase_section(std::string_view name) {
  std::erase_if(sections_, [&](const ConfigSection& s) { return s.name == name; });
}

std::string_view to_string(Scenario s) {
  switch (s) {
    case Scenario::bosonic: return "bosonic";
    case Scenario::bosonic_dephasing: return "bosonic+dephasing";
    case Scenario::spin_gas: return "spin-gas";
    case Scenario::spin_gas_dephasing: return "spin-gas+dephasing";
    case Scenario::quapi: return "quapi";
    case Scenario::unitary: return "unitary";
  }
  return "?";
}

std::string_view to_string(MotionKind m) {
  switch (m) {
    case MotionKind::periodic: return "periodic";
    case MotionKind::ramp: return "ramp";
    case MotionKind::waiting: return "waiting";
    case MotionKind::landscape: return "landscape";
    case MotionKind::fixed: return "static";
  }
  return "?";
}

std::string_view to_string(RunMode m) {
  switch (m) {
    case RunMode::single_run: return "single-run";
    case RunMode::asymptotic_cycle: return "asymptotic-cycle";
    case RunMode::steady_scan: return "steady-scan";
    case RunMode::sweep: return "sweep";
    case RunMode::brf: return "brf";
  }
  return "?";
}

std::string_view to_string(InitialState s) {
  switch (s) {
    case InitialState::automatic: return "auto";
    case InitialState::thermal: return "thermal";
    case InitialState::ground: return "ground";
    case InitialState::excited: return "excited";
    case InitialState::mixed: return "mixed";
    case InitialState::steady: return "steady";
  }
  return "?";
}

std::string_view to_string(ScanKind k) {
  switch (k) {
    case ScanKind::distance: return "distance";
    case ScanKind::fte: return "fte";
  }
  return "?";
}

void validate(const RunConfig& c) {
  c.model.validate();
  c.periodic.validate();
  c.ramp.validate();
  c.waiting.validate();
  c.landscape.validate();
  c.bath.validate();
  c.dephasing.validate();
  c.spin_gas.validate();
  c.quapi_bath.validate();
  c.quapi.validate();

  require(c.dt > 0.0, "run.dt = " + num(c.dt) + " violates dt > 0");
  require(c.dt_int >= 0.0, "run.dt_int = " + num(c.dt_int) + " violates dt_int > 0");
  if (c.dt_int > 0.0) require(c.dt_int <= c.dt, "run.dt_int = " + num(c.dt_int) + " violates dt_int <= dt");
  require(c.t_end > 0.0, "run.t_end = " + num(c.t_end) + " violates t_end > 0");
  require(c.n_periods >= 1, "run.n_periods = " + std::to_string(c.n_periods) + " violates n_periods >= 1");
  require(c.cycle.tol > 0.0, "run.cycle_tol = " + num(c.cycle.tol) + " violates cycle_tol > 0");
  require(c.cycle.max_periods >= 1,
          "run.max_periods = " + std::to_string(c.cycle.max_periods) + " violates max_periods >= 1");

  if (c.fixed.d) require(*c.fixed.d > 0.0, "static.d = " + num(*c.fixed.d) + " violates d > 0");
  if (c.motion == MotionKind::landscape)
    require(c.dt <= c.landscape.dt_hop, "run.dt = " + num(c.dt) + " violates dt <= landscape.dt_hop");
  if (c.motion == MotionKind::ramp)
    require(c.t_end >= c.ramp.t0, "run.t_end = " + num(c.t_end) + " violates t_end >= ramp.t0");

  if (c.mode == RunMode::asymptotic_cycle) {
    require(c.motion == MotionKind::periodic || c.motion == MotionKind::fixed,
            "run.mode = asymptotic-cycle requires run.motion = periodic or static");
    require(c.scenario != Scenario::quapi, "run.mode = asymptotic-cycle is not available for scenario quapi");
  }
  if (c.mode == RunMode::steady_scan) {
    require(c.scenario != Scenario::quapi && c.scenario != Scenario::unitary,
            "run.mode = steady-scan requires a bosonic or spin-gas scenario");
    require(c.scan.kind == ScanKind::distance || c.scenario == Scenario::bosonic ||
                c.scenario == Scenario::bosonic_dephasing,
            "scan.kind = fte requires a bosonic scenario");
  }
  if (c.scenario == Scenario::quapi && c.mode == RunMode::single_run) {
    const double ratio = c.quapi.dt_slice / c.dt;
    require(std::abs(ratio - std::round(ratio)) < 1e-9 && std::round(ratio) >= 1.0,
            "quapi.dt_slice = " + num(c.quapi.dt_slice) + " violates dt_slice = k * run.dt, k >= 1");
  }
  if (c.initial_state == InitialState::steady)
    require(c.scenario != Scenario::quapi && c.scenario != Scenario::unitary,
            "run.initial_state = steady requires a dissipative Lindblad scenario");

  const ScanSettings& s = c.scan;
  require(s.d_min > 0.0, "scan.d_min = " + num(s.d_min) + " violates d_min > 0");
  require(s.d_max > s.d_min, "scan.d_max = " + num(s.d_max) + " violates d_max > d_min");
  require(s.n >= 2, "scan.n = " + std::to_string(s.n) + " violates n >= 2");
  require(s.x_max > 0.0, "scan.x_max = " + num(s.x_max) + " violates x_max > 0");
  require(s.steps >= 1, "scan.steps = " + std::to_string(s.steps) + " violates steps >= 1");
  require(!s.betas.empty(), "scan.betas must not be empty");
  for (double b : s.betas) require(b > 0.0, "scan.betas entry " + num(b) + " violates beta > 0");
  require(c.brf.t_max > 0.0, "brf.t_max = " + num(c.brf.t_max) + " violates t_max > 0");
  require(c.brf.n >= 2, "brf.n = " + std::to_string(c.brf.n) + " violates n >= 2");
}

RunConfig resolve_config(const ConfigDocument& doc) {
  for (const ConfigSection& sec : doc.sections()) {
    if (sec.name == "sweep") continue;
    if (!key_table().count(sec.name))
      fail_at(doc.source(), sec.line, 1, "unknown section [" + sec.name + "]");
  }

  RunConfig c;
  {
    const SectionReader r(doc, "run");
    c.scenario = r.choice("scenario", c.scenario, kScenarios);
    c.motion = r.choice("motion", c.motion, kMotions);
    c.mode = r.choice("mode", c.mode, kModes);
    c.seed = r.unsigned64("seed", c.seed);
    c.output = r.word("output", c.output);
    c.dt = r.number("dt", c.dt);
    if (const ConfigEntry* e = r.entry("dt_int"); e && e->value != "auto") c.dt_int = r.number("dt_int", 0.0);
    c.t_end = r.number("t_end", c.t_end);
    c.n_periods = r.integer("n_periods", c.n_periods);
    c.initial_state = r.choice("initial_state", c.initial_state, kInitialStates);
    c.write_states = r.boolean("write_states", c.write_states);
    c.cycle.tol = r.number("cycle_tol", c.cycle.tol);
    c.cycle.max_periods = r.integer("max_periods", c.cycle.max_periods);
    r.finish();
  }
  {
    const SectionReader r(doc, "model");
    c.model.B0 = r.number("B0", c.model.B0);
    c.model.B1 = r.number("B1", c.model.B1);
    c.model.sigma_field = r.number("sigma_field", c.model.sigma_field);
    c.model.J0 = r.number("J0", c.model.J0);
    r.finish();
  }
  {
    const SectionReader r(doc, "periodic");
    c.periodic.x1_0 = r.number("x1_0", c.periodic.x1_0);
    c.periodic.x2_0 = r.number("x2_0", c.periodic.x2_0);
    c.periodic.a = r.number("a", c.periodic.a);
    c.periodic.tau = r.number("tau", c.periodic.tau);
    r.finish();
  }
  {
    const SectionReader r(doc, "ramp");
    c.ramp.J_start = r.number("J_start", c.ramp.J_start);
    c.ramp.B_start = r.number("B_start", c.ramp.B_start);
    c.ramp.delta = r.number("delta", c.ramp.delta);
    c.ramp.t0 = r.number("t0", c.ramp.t0);
    r.finish();
  }
  {
    const SectionReader r(doc, "static");
    c.fixed.d = r.optional_number("d");
    if (c.fixed.d && (r.entry("J") || r.entry("B")))
      fail_at(doc.source(), r.entry("d")->line, r.entry("d")->key_col, "[static] takes either d or (J, B), not both");
    c.fixed.J = r.number("J", c.fixed.J);
    c.fixed.B = r.number("B", c.fixed.B);
    r.finish();
  }
  {
    const SectionReader r(doc, "waiting");
    WaitingTimeMotion& w = c.waiting;
    w.d_open = r.number("d_open", w.d_open);
    w.d_closed = r.number("d_closed", w.d_closed);
    w.mean_open = r.number("mean_open", w.mean_open);
    w.std_open = r.number("std_open", w.std_open);
    w.mean_closed = r.number("mean_closed", w.mean_closed);
    w.std_closed = r.number("std_closed", w.std_closed);
    w.transit_time = r.number("transit_time", w.transit_time);
    w.seed = c.seed;
    r.finish();
  }
  {
    const SectionReader r(doc, "landscape");
    LandscapeMotion& l = c.landscape;
    l.landscape.d_open = r.number("d_open", l.landscape.d_open);
    l.landscape.d_closed = r.number("d_closed", l.landscape.d_closed);
    l.landscape.barrier_height = r.number("barrier_height", l.landscape.barrier_height);
    l.landscape.well_width = r.number("well_width", l.landscape.well_width);
    l.landscape.wall_stiffness = r.number("wall_stiffness", l.landscape.wall_stiffness);
    l.beta_cl = r.number("beta_cl", l.beta_cl);
    l.step = r.number("step", l.step);
    l.dt_hop = r.number("dt_hop", l.dt_hop);
    l.d_start = r.number("d_start", l.d_start);
    l.seed = c.seed;
    r.finish();
  }
  {
    const SectionReader r(doc, "bath");
    c.bath.kappa = r.number("kappa", c.bath.kappa);
    c.bath.beta = r.number("beta", c.bath.beta);
    r.finish();
  }
  {
    const SectionReader r(doc, "dephasing");
    c.dephasing.gamma_p = r.number("gamma_p", c.dephasing.gamma_p);
    r.finish();
  }
  {
    const SectionReader r(doc, "spin_gas");
    c.spin_gas.gamma = r.number("gamma", c.spin_gas.gamma);
    c.spin_gas.s = r.number("s", c.spin_gas.s);
    r.finish();
  }
  {
    const SectionReader r(doc, "quapi");
    c.quapi_bath.kappa = r.number("kappa", c.quapi_bath.kappa);
    c.quapi_bath.omega_c = r.number("omega_c", c.quapi_bath.omega_c);
    c.quapi_bath.beta = r.number("beta", c.quapi_bath.beta);
    c.quapi.dt_slice = r.number("dt_slice", c.quapi.dt_slice);
    c.quapi.dk = r.integer("dk", c.quapi.dk);
    c.quapi.max_dk = r.integer("max_dk", c.quapi.max_dk);
    r.finish();
  }
  {
    const SectionReader r(doc, "scan");
    ScanSettings& s = c.scan;
    s.kind = r.choice("kind", s.kind, kScanKinds);
    s.d_min = r.number("d_min", s.d_min);
    s.d_max = r.number("d_max", s.d_max);
    s.n = r.integer("n", s.n);
    s.x_max = r.number("x_max", s.x_max);
    s.steps = r.integer("steps", s.steps);
    s.J_start = r.number("J_start", s.J_start);
    s.B_start = r.number("B_start", s.B_start);
    s.betas = r.list("betas", s.betas);
    r.finish();
  }
  {
    const SectionReader r(doc, "brf");
    c.brf.t_max = r.number("t_max", c.brf.t_max);
    c.brf.n = r.integer("n", c.brf.n);
    r.finish();
  }

  try {
    validate(c);
  } catch (const ConfigError& e) {
    throw ConfigError(doc.source() + ": " + e.what());
  } catch (const Error& e) {
    throw ConfigError(doc.source() + ": " + e.what());
  }
  return c;
}

RunConfig parse_config(std::string_view text, std::string source) {
  return resolve_config(ConfigDocument::parse(text, std::move(source)));
}

std::string to_config_text(const RunConfig& c) {
  std::ostringstream os;
  os << "[run]\n"
     << "scenario = " << to_string(c.scenario) << "\n"
     << "motion = " << to_string(c.motion) << "\n"
     << "mode = " << to_string(c.mode) << "\n"
     << "seed = " << c.seed << "\n"
     << "output = " << c.output << "\n"
     << "dt = " << num(c.dt) << "\n"
     << "dt_int = " << (c.dt_int > 0.0 ? num(c.dt_int) : std::string("auto")) << "\n"
     << "t_end = " << num(c.t_end) << "\n"
     << "n_periods = " << c.n_periods << "\n"
     << "initial_state = " << to_string(c.initial_state) << "\n"
     << "write_states = " << (c.write_states ? "true" : "false") << "\n"
     << "cycle_tol = " << num(c.cycle.tol) << "\n"
     << "max_periods = " << c.cycle.max_periods << "\n";
  os << "\n[model]\n"
     << "B0 = " << num(c.model.B0) << "\nB1 = " << num(c.model.B1) << "\nsigma_field = " << num(c.model.sigma_field)
     << "\nJ0 = " << num(c.model.J0) << "\n";
  os << "\n[periodic]\n"
     << "x1_0 = " << num(c.periodic.x1_0) << "\nx2_0 = " << num(c.periodic.x2_0) << "\na = " << num(c.periodic.a)
     << "\ntau = " << num(c.periodic.tau) << "\n";
  os << "\n[ramp]\n"
     << "J_start = " << num(c.ramp.J_start) << "\nB_start = " << num(c.ramp.B_start)
     << "\ndelta = " << num(c.ramp.delta) << "\nt0 = " << num(c.ramp.t0) << "\n";
  os << "\n[static]\n";
  if (c.fixed.d)
    os << "d = " << num(*c.fixed.d) << "\n";
  else
    os << "J = " << num(c.fixed.J) << "\nB = " << num(c.fixed.B) << "\n";
  const WaitingTimeMotion& w = c.waiting;
  os << "\n[waiting]\n"
     << "d_open = " << num(w.d_open) << "\nd_closed = " << num(w.d_closed) << "\nmean_open = " << num(w.mean_open)
     << "\nstd_open = " << num(w.std_open) << "\nmean_closed = " << num(w.mean_closed)
     << "\nstd_closed = " << num(w.std_closed) << "\ntransit_time = " << num(w.transit_time) << "\n";
  const LandscapeMotion& l = c.landscape;
  os << "\n[landscape]\n"
     << "d_open = " << num(l.landscape.d_open) << "\nd_closed = " << num(l.landscape.d_closed)
     << "\nbarrier_height = " << num(l.landscape.barrier_height) << "\nwell_width = " << num(l.landscape.well_width)
     << "\nwall_stiffness = " << num(l.landscape.wall_stiffness) << "\nbeta_cl = " << num(l.beta_cl)
     << "\nstep = " << num(l.step) << "\ndt_hop = " << num(l.dt_hop) << "\nd_start = " << num(l.d_start) << "\n";
  os << "\n[bath]\nkappa = " << num(c.bath.kappa) << "\nbeta = " << num(c.bath.beta) << "\n";
  os << "\n[dephasing]\ngamma_p = " << num(c.dephasing.gamma_p) << "\n";
  os << "\n[spin_gas]\ngamma = " << num(c.spin_gas.gamma) << "\ns = " << num(c.spin_gas.s) << "\n";
  os << "\n[quapi]\n"
     << "kappa = " << num(c.quapi_bath.kappa) << "\nomega_c = " << num(c.quapi_bath.omega_c)
     << "\nbeta = " << num(c.quapi_bath.beta) << "\ndt_slice = " << num(c.quapi.dt_slice) << "\ndk = " << c.quapi.dk
     << "\nmax_dk = " << c.quapi.max_dk << "\n";
  const ScanSettings& s = c.scan;
  os << "\n[scan]\n"
     << "kind = " << to_string(s.kind) << "\nd_min = " << num(s.d_min) << "\nd_max = " << num(s.d_max)
     << "\nn = " << s.n << "\nx_max = " << num(s.x_max) << "\nsteps = " << s.steps << "\nJ_start = " << num(s.J_start)
     << "\nB_start = " << num(s.B_start) << "\nbetas = [";
  for (std::size_t i = 0; i < s.betas.size(); ++i) os << (i ? ", " : "") << num(s.betas[i]);
  os << "]\n";
  os << "\n[brf]\nt_max = " << num(c.brf.t_max) << "\nn = " << c.brf.n << "\n";
  return os.str();
}

std::size_t SweepSpec::cell_count() const {
  std::size_t n = 1;
  for (const SweepAxis& a : axes) n *= a.values.size();
  return n;
}

SweepSpec parse_sweep(const ConfigDocument& doc) {
  SweepSpec spec;
  spec.base = doc;
  spec.base.erase_section("sweep");
  const ConfigSection* sec = doc.section("sweep");
  if (!sec) throw ConfigError(doc.source() + ": sweep requires a [sweep] section with at least one axis");

  for (const ConfigEntry& e : sec->entries) {
    if (e.key == "max_cells") {
      const auto v = to_integer<std::size_t>(e.value);
      if (!v || *v == 0) fail_at(doc.source(), e.line, e.value_col, "sweep.max_cells must be a positive integer");
      spec.max_cells = *v;
      continue;
    }
    if (e.key == "cell_mode") {
      bool found = false;
      for (RunMode m : {RunMode::single_run, RunMode::asymptotic_cycle, RunMode::steady_scan, RunMode::brf}) {
        if (e.value == to_string(m)) {
          spec.cell_mode = m;
          found = true;
        }
      }
      if (!found)
        fail_at(doc.source(), e.line, e.value_col,
                "invalid sweep.cell_mode '" + e.value + "' (expected single-run, asymptotic-cycle, steady-scan or brf)");
      continue;
    }
    const std::size_t dot = e.key.find('.');
    if (dot == std::string::npos)
      fail_at(doc.source(), e.line, e.key_col, "unknown key '" + e.key + "' in [sweep] (axes are written section.key)");
    SweepAxis axis{e.key.substr(0, dot), e.key.substr(dot + 1), {}};
    if (!is_known_key(axis.section, axis.key) || axis.section == "run")
      fail_at(doc.source(), e.line, e.key_col, "sweep axis '" + e.key + "' does not name a numeric parameter");
    if (axis.section == "scan" && axis.key == "betas")
      fail_at(doc.source(), e.line, e.key_col, "sweep axis '" + e.key + "' cannot be swept");
    const std::string_view raw = e.value;
    if (raw.size() < 2 || raw.front() != '[' || raw.back() != ']')
      fail_at(doc.source(), e.line, e.value_col, "sweep axis '" + e.key + "' expects a list [v1, v2, ...]");
    const std::string_view body = trim(raw.substr(1, raw.size() - 2));
    if (body.empty()) fail_at(doc.source(), e.line, e.value_col, "sweep axis '" + e.key + "' is empty");
    std::size_t pos = 0;
    while (pos <= body.size()) {
      const std::size_t comma = std::min(body.find(',', pos), body.size());
      const std::string_view item = trim(body.substr(pos, comma - pos));
      const auto x = to_double(item);
      if (!x)
        fail_at(doc.source(), e.line, e.value_col,
                "sweep axis '" + e.key + "' item '" + std::string(item) + "' is not a finite number");
      axis.values.push_back(*x);
      pos = comma + 1;
    }
    std::sort(axis.values.begin(), axis.values.end());
    if (std::adjacent_find(axis.values.begin(), axis.values.end()) != axis.values.end())
      fail_at(doc.source(), e.line, e.value_col, "sweep axis '" + e.key + "' has duplicate values");
    spec.axes.push_back(std::move(axis));
  }
  if (spec.axes.empty()) throw ConfigError(doc.source() + ": [sweep] defines no axis");
  if (spec.cell_count() > spec.max_cells)
    throw ConfigError(doc.source() + ": sweep has " + std::to_string(spec.cell_count()) +
                      " cells, above sweep.max_cells = " + std::to_string(spec.max_cells));
  return spec;
}

}  // namespace dynent
