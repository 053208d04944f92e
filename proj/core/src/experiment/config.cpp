#include "softwall/experiment/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "softwall/experiment/csv.hpp"

namespace softwall::experiment {

namespace {

struct InvalidValue {
  std::string message;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
    throw InvalidValue{"expected a number, got '" + std::string(s) + "'"};
  }
  return v;
}

template <class Int>
Int parse_int(std::string_view s) {
  s = trim(s);
  Int v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || s.empty()) {
    throw InvalidValue{"expected an integer, got '" + std::string(s) + "'"};
  }
  return v;
}

std::vector<double> parse_list(std::string_view s) {
  std::vector<double> out;
  while (true) {
    const auto comma = s.find(',');
    out.push_back(parse_double(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

analysis::KRange parse_range(std::string_view s) {
  s = trim(s);
  const auto dots = s.find("..");
  if (dots == std::string_view::npos) {
    const int k = parse_int<int>(s);
    return {k, k};
  }
  return {parse_int<int>(s.substr(0, dots)), parse_int<int>(s.substr(dots + 2))};
}

std::string format_range(const analysis::KRange& r) {
  return std::to_string(r.first) + ".." + std::to_string(r.last);
}

Experiment parse_experiment(std::string_view s) {
  for (auto e : {Experiment::Convergence, Experiment::SelfSimilar, Experiment::Validate,
                 Experiment::Simulate, Experiment::Solve}) {
    if (s == to_string(e)) return e;
  }
  throw InvalidValue{"unknown experiment '" + std::string(s) + "'"};
}

sim::RateKind parse_rate_kind(std::string_view s) {
  for (auto k : {sim::RateKind::Step, sim::RateKind::LinearRamp, sim::RateKind::Off}) {
    if (s == to_string(k)) return k;
  }
  throw InvalidValue{"unknown rate kind '" + std::string(s) + "'"};
}

fp::Mode parse_mode(std::string_view s) {
  for (auto m : {fp::Mode::DischargeFull, fp::Mode::DischargeKilled, fp::Mode::HardWallFull,
                 fp::Mode::HardWallKilled}) {
    if (s == fp::to_string(m)) return m;
  }
  throw InvalidValue{"unknown model '" + std::string(s) + "'"};
}

struct Field {
  const char* key;
  std::function<void(ExperimentConfig&, std::string_view)> parse;
  std::function<std::string(const ExperimentConfig&)> format;
};

const std::vector<Field>& fields() {
  using C = ExperimentConfig;
  using V = std::string_view;
  static const std::vector<Field> table = {
      {"experiment", [](C& c, V v) { c.experiment = parse_experiment(v); },
       [](const C& c) { return std::string(to_string(c.experiment)); }},
      {"b_values", [](C& c, V v) { c.b_values = parse_list(v); },
       [](const C& c) {
         std::string s;
         for (std::size_t i = 0; i < c.b_values.size(); ++i) {
           if (i > 0) s += ", ";
           s += format_number(c.b_values[i]);
         }
         return s;
       }},
      {"k_range", [](C& c, V v) { c.k_range = parse_range(v); },
       [](const C& c) { return format_range(c.k_range); }},
      {"fit_window", [](C& c, V v) { c.fit_window = parse_range(v); },
       [](const C& c) { return format_range(c.fit_window); }},
      {"n_cells", [](C& c, V v) { c.n_cells = parse_int<std::size_t>(v); },
       [](const C& c) { return std::to_string(c.n_cells); }},
      {"tau", [](C& c, V v) { c.tau = parse_double(v); },
       [](const C& c) { return format_number(c.tau); }},
      {"t_max", [](C& c, V v) { c.t_max = parse_double(v); },
       [](const C& c) { return format_number(c.t_max); }},
      {"x_min", [](C& c, V v) { c.x_min = parse_double(v); },
       [](const C& c) { return format_number(c.x_min); }},
      {"x_max", [](C& c, V v) { c.x_max = parse_double(v); },
       [](const C& c) { return format_number(c.x_max); }},
      {"x0", [](C& c, V v) { c.x0 = parse_double(v); },
       [](const C& c) { return format_number(c.x0); }},
      {"sigma0", [](C& c, V v) { c.sigma0 = parse_double(v); },
       [](const C& c) { return format_number(c.sigma0); }},
      {"paths", [](C& c, V v) { c.paths = parse_int<std::size_t>(v); },
       [](const C& c) { return std::to_string(c.paths); }},
      {"dt", [](C& c, V v) { c.dt = parse_double(v); },
       [](const C& c) { return format_number(c.dt); }},
      {"seed", [](C& c, V v) { c.seed = parse_int<std::uint64_t>(v); },
       [](const C& c) { return std::to_string(c.seed); }},
      {"coupled_samples", [](C& c, V v) { c.coupled_samples = parse_int<std::size_t>(v); },
       [](const C& c) { return std::to_string(c.coupled_samples); }},
      {"bin_width", [](C& c, V v) { c.bin_width = parse_double(v); },
       [](const C& c) { return format_number(c.bin_width); }},
      {"rate_kind", [](C& c, V v) { c.rate_kind = parse_rate_kind(v); },
       [](const C& c) { return std::string(to_string(c.rate_kind)); }},
      {"delta", [](C& c, V v) { c.delta = parse_double(v); },
       [](const C& c) { return format_number(c.delta); }},
      {"b", [](C& c, V v) { c.b = parse_double(v); },
       [](const C& c) { return format_number(c.b); }},
      {"model", [](C& c, V v) { c.model = parse_mode(v); },
       [](const C& c) { return std::string(fp::to_string(c.model)); }},
      {"trace_paths", [](C& c, V v) { c.trace_paths = parse_int<std::size_t>(v); },
       [](const C& c) { return std::to_string(c.trace_paths); }},
      {"snapshot_every", [](C& c, V v) { c.snapshot_every = parse_double(v); },
       [](const C& c) { return format_number(c.snapshot_every); }},
      {"threads", [](C& c, V v) { c.threads = parse_int<unsigned>(v); },
       [](const C& c) { return std::to_string(c.threads); }},
      {"output_dir", [](C& c, V v) {
         if (v.empty()) throw InvalidValue{"must not be empty"};
         c.output_dir = std::string(v);
       },
       [](const C& c) { return c.output_dir; }},
  };
  return table;
}

void require(bool ok, const char* key, const std::string& message) {
  if (!ok) throw ConfigError(0, key, message);
}

}  // namespace

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::Convergence: return "convergence";
    case Experiment::SelfSimilar: return "selfsim";
    case Experiment::Validate: return "validate";
    case Experiment::Simulate: return "simulate";
    case Experiment::Solve: return "solve";
  }
  return "?";
}

const char* to_string(sim::RateKind kind) {
  switch (kind) {
    case sim::RateKind::Step: return "step";
    case sim::RateKind::LinearRamp: return "ramp";
    case sim::RateKind::Off: return "off";
  }
  return "?";
}

ConfigError::ConfigError(std::size_t line, std::string key, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         (key.empty() ? message : key + ": " + message)),
      line_(line),
      key_(std::move(key)) {}

void ExperimentConfig::validate() const {
  require(!b_values.empty(), "b_values", "must list at least one value");
  for (double v : b_values) require(std::isfinite(v), "b_values", "values must be finite");
  require(k_range.count() > 0 && k_range.first >= 0, "k_range", "must be a nonempty range of k >= 0");
  require(fit_window.count() >= 2, "fit_window", "must hold at least two levels");
  require(n_cells >= 16, "n_cells", "must be at least 16");
  require(tau > 0.0 && std::isfinite(tau), "tau", "must be positive");
  require(t_max > 0.0 && std::isfinite(t_max), "t_max", "must be positive");
  require(x_min < 0.0, "x_min", "must be below the reset point 0");
  require(x_max > 1.0 && std::isfinite(x_max), "x_max", "must exceed the threshold 1");
  require(std::isfinite(x0), "x0", "must be finite");
  require(sigma0 > 0.0 && std::isfinite(sigma0), "sigma0", "must be positive");
  require(paths >= 1, "paths", "must be at least 1");
  require(dt > 0.0 && std::isfinite(dt), "dt", "must be positive");
  require(coupled_samples >= 1, "coupled_samples", "must be at least 1");
  require(bin_width > 0.0 && std::isfinite(bin_width), "bin_width", "must be positive");
  require(delta > 0.0 && std::isfinite(delta), "delta", "must be positive");
  require(std::isfinite(b), "b", "must be finite");
  require(snapshot_every > 0.0 && std::isfinite(snapshot_every), "snapshot_every", "must be positive");
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "", "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "", "missing key before '='");

    const Field* field = nullptr;
    for (const auto& f : fields()) {
      if (key == f.key) field = &f;
    }
    if (field == nullptr) throw ConfigError(line_no, key, "unknown key");
    try {
      field->parse(config, value);
    } catch (const InvalidValue& e) {
      throw ConfigError(line_no, key, e.message);
    }
  }
  config.validate();
  return config;
}

std::string serialize_config(const ExperimentConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    out += f.key;
    out += " = ";
    out += f.format(config);
    out += '\n';
  }
  return out;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "", "cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

fp::SolverConfig solver_config(const ExperimentConfig& config, fp::Mode mode, double delta, double b) {
  fp::SolverConfig s;
  s.spec.delta = delta;
  s.spec.b = b;
  s.spec.rate_kind = config.rate_kind;
  s.spec.x0 = config.x0;
  s.mode = mode;
  s.n_cells = config.n_cells;
  s.tau = config.tau;
  s.t_max = config.t_max;
  s.x_min = config.x_min;
  s.x_max = config.x_max;
  s.initial.kind = fp::InitialDatum::Kind::Gaussian;
  s.initial.mean = config.x0;
  s.initial.sigma = config.sigma0;
  return s;
}

}  // namespace softwall::experiment
