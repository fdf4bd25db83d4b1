// Copyright 2026 The qdenoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qdenoise/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "qdenoise/analysis.hpp"
#include "qdenoise/observables.hpp"
#include "qdenoise/sampler.hpp"

#ifndef QDENOISE_VERSION
#define QDENOISE_VERSION "unknown"
#endif

namespace qdenoise::cli {

using nlohmann::json;
namespace fs = std::filesystem;
using circuits::DenoiserSpec;
using circuits::GateList;
using circuits::TrotterSpec;

const char* version() { return QDENOISE_VERSION; }

namespace {

// ---------------------------------------------------------------- config

class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + " must be an object");
  }

  void allow(std::initializer_list<const char*> keys) const {
    const std::set<std::string> known(keys.begin(), keys.end());
    for (const auto& [key, value] : j_.items()) {
      if (!known.count(key)) {
        throw ConfigError("unknown key '" + key + "' in " + where());
      }
    }
  }

  bool has(const char* key) const { return j_.contains(key); }
  const json& raw(const char* key) const { return j_.at(key); }

  template <typename T>
  T require(const char* key) const {
    if (!j_.contains(key)) throw ConfigError("missing required field " + field(key));
    return convert<T>(key);
  }

  template <typename T>
  T get(const char* key, T fallback) const {
    return j_.contains(key) ? convert<T>(key) : fallback;
  }

  std::string field(const char* key) const {
    return path_.empty() ? std::string(key) : path_ + "." + key;
  }

 private:
  std::string where() const { return path_.empty() ? "config" : "'" + path_ + "'"; }

  template <typename T>
  T convert(const char* key) const {
    try {
      const json& v = j_.at(key);
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) throw ConfigError("");
      } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
        if (!v.is_number_integer() && !v.is_number_unsigned()) throw ConfigError("");
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw ConfigError("");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) throw ConfigError("");
      }
      return v.get<T>();
    } catch (const std::exception&) {
      throw ConfigError("field " + field(key) + " has the wrong type");
    }
  }

  const json& j_;
  std::string path_;
};

std::vector<double> number_list(const Section& s, const char* key) {
  const json& v = s.raw(key);
  if (!v.is_array() || v.empty()) {
    throw ConfigError("field " + s.field(key) + " must be a non-empty array");
  }
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) throw ConfigError("field " + s.field(key) + " must hold numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

int site_index(const Section& s, const char* key, int L) {
  const int one_based = s.require<int>(key);
  if (one_based < 1 || one_based > L) {
    throw ConfigError("field " + s.field(key) + " must lie in 1.." + std::to_string(L));
  }
  return one_based - 1;
}

TaskSpec parse_task(const json& j, int index, int L) {
  const Section s(j, "tasks[" + std::to_string(index) + "]");
  TaskSpec task;
  task.kind = s.require<std::string>("kind");
  static const std::set<std::string> kinds{"two_point_zz", "otoc",     "domain_wall",
                                           "stacking",     "spectrum", "entropy",
                                           "sample"};
  if (!kinds.count(task.kind)) {
    throw ConfigError("unknown task kind '" + task.kind + "' in " + s.field("kind"));
  }
  s.allow({"kind", "i", "j", "times", "n_stack", "n_max", "shots", "delta", "omega",
           "unravel"});
  const bool sited = task.kind == "two_point_zz" || task.kind == "otoc" ||
                     task.kind == "stacking" || task.kind == "sample";
  if (sited) {
    task.i = site_index(s, "i", L);
    task.j = site_index(s, "j", L);
  }
  if (s.has("times")) task.times = number_list(s, "times");
  if (s.has("n_stack")) {
    task.n_stack.clear();
    for (double n : number_list(s, "n_stack")) {
      if (n < 1 || n != std::floor(n)) {
        throw ConfigError("field " + s.field("n_stack") + " must hold integers >= 1");
      }
      task.n_stack.push_back(static_cast<int>(n));
    }
  }
  if (s.has("n_max")) {
    const int n_max = s.require<int>("n_max");
    if (n_max < 1) throw ConfigError("field " + s.field("n_max") + " must be >= 1");
    task.n_stack.clear();
    for (int n = 1; n <= n_max; ++n) task.n_stack.push_back(n);
  }
  task.shots = s.get<std::uint64_t>("shots", 0);
  task.delta = s.get<double>("delta", task.delta);
  task.omega = s.get<double>("omega", task.omega);
  task.unravel = s.get<bool>("unravel", false);
  return task;
}

}  // namespace

TrotterSpec RunConfig::trotter(double t, std::optional<int> sites) const {
  return TrotterSpec{QubitCount(sites.value_or(L)), t, m_trot, channels::NoiseModel(p),
                     couplings};
}

RunConfig parse_config(const json& config) {
  RunConfig c;
  c.echo = config;
  const Section root(config, "");
  root.allow({"system", "trotter", "noise", "denoiser", "optimizer", "tasks", "sweep",
              "output", "seed"});

  if (!root.has("system")) throw ConfigError("missing required field system");
  const Section system(root.raw("system"), "system");
  system.allow({"L", "couplings"});
  c.L = system.require<int>("L");
  try {
    QubitCount{c.L};
  } catch (const InvalidArgument& e) {
    throw ConfigError("field system.L: " + std::string(e.what()));
  }
  if (system.has("couplings")) {
    const Section coup(system.raw("couplings"), "system.couplings");
    coup.allow({"jx", "jy", "jz"});
    c.couplings = {coup.get<double>("jx", 1.0), coup.get<double>("jy", 1.0),
                   coup.get<double>("jz", 1.0)};
  }

  if (!root.has("trotter")) throw ConfigError("missing required field trotter");
  const Section trotter(root.raw("trotter"), "trotter");
  trotter.allow({"t", "times", "m_trot"});
  if (trotter.has("times")) {
    c.times = number_list(trotter, "times");
  } else {
    c.times = {trotter.require<double>("t")};
  }
  c.m_trot = trotter.require<int>("m_trot");
  if (c.m_trot < 1) throw ConfigError("field trotter.m_trot must be >= 1");

  if (!root.has("noise")) throw ConfigError("missing required field noise");
  const Section noise(root.raw("noise"), "noise");
  noise.allow({"p"});
  c.p = noise.require<double>("p");
  try {
    channels::NoiseModel{c.p};
  } catch (const InvalidArgument& e) {
    throw ConfigError("field noise.p: " + std::string(e.what()));
  }

  if (root.has("denoiser")) {
    const Section d(root.raw("denoiser"), "denoiser");
    d.allow({"M", "init", "load", "allow_transfer", "backward", "symmetry"});
    c.depth = d.get<int>("M", c.depth);
    if (c.depth < 0) throw ConfigError("field denoiser.M must be >= 0");
    c.init = d.get<std::string>("init", c.init);
    if (c.init != "random" && c.init != "identity") {
      throw ConfigError("field denoiser.init must be 'random' or 'identity'");
    }
    if (d.has("load")) {
      const json& load = d.raw("load");
      if (load.is_string()) {
        c.load.push_back(load.get<std::string>());
      } else if (load.is_array()) {
        for (const auto& x : load) {
          if (!x.is_string()) throw ConfigError("field denoiser.load must hold paths");
          c.load.push_back(x.get<std::string>());
        }
      } else {
        throw ConfigError("field denoiser.load must be a path or a list of paths");
      }
    }
    c.allow_transfer = d.get<bool>("allow_transfer", false);
    c.backward = d.get<bool>("backward", false);
    c.symmetry = d.get<bool>("symmetry", true);
  }

  if (root.has("optimizer")) {
    const Section o(root.raw("optimizer"), "optimizer");
    o.allow({"max_iters", "learning_rate", "adam_betas", "grad_tolerance", "init_eta1",
             "init_angle_scale", "restarts", "gamma_penalty"});
    auto& oc = c.optimizer;
    oc.max_iters = o.get<int>("max_iters", oc.max_iters);
    oc.learning_rate = o.get<double>("learning_rate", oc.learning_rate);
    if (o.has("adam_betas")) {
      const auto b = number_list(o, "adam_betas");
      if (b.size() != 2) throw ConfigError("field optimizer.adam_betas needs two values");
      oc.adam_betas = {b[0], b[1]};
    }
    oc.grad_tolerance = o.get<double>("grad_tolerance", oc.grad_tolerance);
    oc.init_eta1 = o.get<double>("init_eta1", oc.init_eta1);
    oc.init_angle_scale = o.get<double>("init_angle_scale", oc.init_angle_scale);
    oc.restarts = o.get<int>("restarts", oc.restarts);
    oc.gamma_penalty = o.get<double>("gamma_penalty", oc.gamma_penalty);
    try {
      oc.validate();
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }

  if (root.has("tasks")) {
    const json& tasks = root.raw("tasks");
    if (!tasks.is_array()) throw ConfigError("field tasks must be an array");
    for (size_t k = 0; k < tasks.size(); ++k) {
      c.tasks.push_back(parse_task(tasks[k], static_cast<int>(k), c.L));
    }
  }
  if (root.has("sweep")) {
    const Section s(root.raw("sweep"), "sweep");
    s.allow({"p_values"});
    c.sweep_p = number_list(s, "p_values");
    for (double p : c.sweep_p) {
      if (!(p >= 0.0 && p <= channels::NoiseModel::kMaxProbability)) {
        throw ConfigError("field sweep.p_values holds an out-of-range probability");
      }
    }
  }
  c.output = root.get<std::string>("output", c.output);
  c.seed = root.get<std::uint64_t>("seed", 0);
  c.optimizer.seed = c.seed;
  return c;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

// ------------------------------------------------------ denoiser files

namespace {

std::string exact(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

}  // namespace

std::string fingerprint(const TrotterSpec& spec) {
  std::ostringstream canon;
  canon << "heisenberg-trotter2;pbc;L=" << spec.L.value() << ";t=" << exact(spec.t)
        << ";m_trot=" << spec.m_trot << ";p=" << exact(spec.noise.p())
        << ";jx=" << exact(spec.couplings.jx) << ";jy=" << exact(spec.couplings.jy)
        << ";jz=" << exact(spec.couplings.jz);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canon.str()) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream hex;
  hex << std::hex << std::setw(16) << std::setfill('0') << h;
  return hex.str();
}

json channel_to_json(const channels::ChannelParams& params) {
  const auto& u = params.unitary;
  const auto& m = params.measure;
  return json{{"eta1", params.eta1},  {"alpha", u.alpha},     {"kappa_a", u.kappa_a},
              {"kappa_c", u.kappa_c}, {"kappa_1", m.kappa_1}, {"kappa_2", m.kappa_2},
              {"kappa_3", m.kappa_3}};
}

channels::ChannelParams channel_from_json(const json& j) {
  const Section s(j, "channel");
  s.allow({"eta1", "alpha", "kappa_a", "kappa_c", "kappa_1", "kappa_2", "kappa_3"});
  channels::ChannelParams p;
  p.eta1 = s.require<double>("eta1");
  p.unitary.alpha = s.require<double>("alpha");
  const auto angles = [&](const char* key) {
    const auto v = number_list(s, key);
    if (v.size() != 3) throw ConfigError("field channel." + std::string(key) + " needs 3 values");
    return channels::Angles3{v[0], v[1], v[2]};
  };
  for (const char* key : {"kappa_a", "kappa_c", "kappa_1", "kappa_2", "kappa_3"}) {
    if (!s.has(key)) throw ConfigError("missing required field channel." + std::string(key));
  }
  p.unitary.kappa_a = angles("kappa_a");
  p.unitary.kappa_c = angles("kappa_c");
  p.measure.kappa_1 = angles("kappa_1");
  p.measure.kappa_2 = angles("kappa_2");
  p.measure.kappa_3 = angles("kappa_3");
  return p;
}

json denoiser_to_json(const DenoiserSpec& spec, const TrotterSpec& target) {
  json channels_json = json::array();
  for (const auto& layer : spec.layers) channels_json.push_back(channel_to_json(layer));
  return json{{"schema_version", kSchemaVersion},
              {"L", spec.L.value()},
              {"M", spec.depth},
              {"p", spec.noise.p()},
              {"t", target.t},
              {"m_trot", target.m_trot},
              {"fingerprint", fingerprint(target)},
              {"channels", channels_json}};
}

DenoiserFile denoiser_from_json(const json& j) {
  const Section s(j, "denoiser file");
  s.allow({"schema_version", "L", "M", "p", "t", "m_trot", "fingerprint", "channels"});
  if (s.require<int>("schema_version") != kSchemaVersion) {
    throw ConfigError("denoiser file has an unsupported schema_version");
  }
  const int L = s.require<int>("L");
  const int M = s.require<int>("M");
  const double p = s.require<double>("p");
  DenoiserFile file{DenoiserSpec::identity(QubitCount(L), M, channels::NoiseModel(p)),
                    s.require<std::string>("fingerprint"), s.require<double>("t"),
                    s.require<int>("m_trot")};
  const json& ch = s.raw("channels");
  if (!ch.is_array() || ch.size() != static_cast<size_t>(2 * M)) {
    throw ConfigError("denoiser file needs 2M = " + std::to_string(2 * M) + " channels");
  }
  for (int h = 0; h < 2 * M; ++h) file.spec.layers[h] = channel_from_json(ch[h]);
  return file;
}

DenoiserFile load_denoiser(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open denoiser file " + path.string());
  try {
    return denoiser_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw ConfigError("denoiser file " + path.string() + ": " + e.what());
  } catch (const InvalidArgument& e) {
    throw ConfigError("denoiser file " + path.string() + ": " + e.what());
  }
}

// ------------------------------------------------------------ helpers

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void apply_options(RunConfig& config, const CommandOptions& options) {
  if (options.seed) {
    config.seed = *options.seed;
    config.optimizer.seed = *options.seed;
  }
  if (options.out) config.output = *options.out;
  for (const auto& d : options.denoisers) config.load.push_back(d);
  fs::create_directories(config.output);
}

json metadata(const RunConfig& config, const char* command) {
  return json{{"schema_version", kSchemaVersion},
              {"version", version()},
              {"command", command},
              {"seed", config.seed},
              {"config", config.echo}};
}

double total_gamma(const DenoiserSpec& spec) {
  return sampler::QuasiDistribution::from(spec).gamma;
}

json gamma_json(const DenoiserSpec& spec) {
  json per = json::array();
  for (const auto& l : spec.layers) per.push_back(channels::gamma_of(l));
  return json{{"per_channel", per}, {"total", total_gamma(spec)}};
}

// Appends rows to a CSV table, writing the header when the file is new.
class Table {
 public:
  Table(const fs::path& path, const std::vector<std::string>& columns) : path_(path) {
    const bool fresh = !fs::exists(path) || fs::file_size(path) == 0;
    out_.open(path, std::ios::app);
    if (!out_) throw ConfigError("cannot write " + path.string());
    out_ << std::setprecision(17);
    if (fresh) {
      for (size_t k = 0; k < columns.size(); ++k) out_ << (k ? "," : "") << columns[k];
      out_ << '\n';
    }
  }

  template <typename... Ts>
  void row(const Ts&... values) {
    int k = 0;
    ((out_ << (k++ ? "," : "") << values), ...);
    out_ << '\n';
    ++rows_;
  }

  int rows() const { return rows_; }

 private:
  fs::path path_;
  std::ofstream out_;
  int rows_ = 0;
};

void check_optimizable(const RunConfig& config) {
  if (config.L > circuits::kMaxDenseSites) {
    throw ConfigError("optimization is limited to L <= " +
                      std::to_string(circuits::kMaxDenseSites) +
                      "; optimize at a smaller L and set denoiser.allow_transfer");
  }
}

struct OptimizedDenoiser {
  DenoiserSpec spec;
  optimizer::OptimizationReport report;
  double baseline;
};

OptimizedDenoiser optimize_for(const RunConfig& config, const TrotterSpec& target,
                               const std::string& label) {
  const auto objective = optimizer::DenoisingObjective::for_trotter(target, config.symmetry);
  optimizer::OptimizerConfig oc = config.optimizer;
  oc.progress_every = 100;
  oc.progress = [&](int restart, int it, double eps) {
    std::cerr << "[optimize " << label << "] restart " << restart << " iter " << it
              << " epsilon " << eps << '\n';
  };
  std::optional<DenoiserSpec> init;
  if (config.init == "identity") {
    init = DenoiserSpec::identity(target.L, config.depth, target.noise);
  }
  auto report = optimizer::optimize(objective, config.depth, target.noise, oc, init);
  return {report.best_params, std::move(report), objective.baseline()};
}

json run_json(const RunConfig& config, const TrotterSpec& target, const OptimizedDenoiser& d,
              const std::string& file) {
  json alphas = json::array();
  for (const auto& l : d.spec.layers) alphas.push_back(l.unitary.alpha);
  json params = json::array();
  for (const auto& l : d.spec.layers) params.push_back(channel_to_json(l));
  const double gamma = total_gamma(d.spec);
  const double delta = 0.01, omega = 0.05;
  const auto& r = d.report;
  return json{{"t", target.t},
              {"L", target.L.value()},
              {"m_trot", target.m_trot},
              {"p", target.noise.p()},
              {"M", config.depth},
              {"fingerprint", fingerprint(target)},
              {"denoiser_file", file},
              {"baseline_epsilon", d.baseline},
              {"initial_epsilon", r.initial_epsilon},
              {"final_epsilon", r.final_epsilon},
              {"improvement", d.baseline / r.final_epsilon},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"best_restart", r.best_restart},
              {"wall_time", r.wall_time},
              {"epsilon_trace", r.epsilon_trace},
              {"best_epsilon_trace", r.best_epsilon_trace},
              {"grad_norm_trace", r.grad_norm_trace},
              {"gamma", gamma_json(d.spec)},
              {"hoeffding", {{"delta", delta},
                             {"omega", omega},
                             {"samples", sampler::hoeffding_samples(gamma, delta, omega)}}},
              {"alpha_angles", alphas},
              {"parameters", params}};
}

// Denoisers indexed by the fingerprint of the circuit they were optimized for.
class DenoiserBank {
 public:
  explicit DenoiserBank(const RunConfig& config) : config_(config) {
    for (const auto& path : config.load) files_.push_back(load_denoiser(path));
    for (const auto& f : files_) {
      if (f.spec.L != config.L && !config.allow_transfer) {
        throw ConfigError("denoiser for L=" + std::to_string(f.spec.L.value()) +
                          " does not match system.L=" + std::to_string(config.L) +
                          " (set denoiser.allow_transfer to reuse it)");
      }
    }
  }

  bool empty() const { return files_.empty(); }

  /// Denoiser for the noisy circuit at time t, at the configured L.
  std::optional<DenoiserSpec> find(double t) const {
    for (const auto& f : files_) {
      const TrotterSpec at_file_size = config_.trotter(t, f.spec.L.value());
      if (f.fingerprint == fingerprint(at_file_size)) {
        return optimizer::transfer(f.spec, QubitCount(config_.L));
      }
    }
    return std::nullopt;
  }

  DenoiserSpec require(double t) const {
    auto d = find(t);
    if (!d) {
      throw ConfigError("no loaded denoiser matches the circuit at t=" + exact(t) +
                        " (L, m_trot, p and couplings must agree)");
    }
    return *d;
  }

  json describe() const {
    json out = json::array();
    for (size_t k = 0; k < files_.size(); ++k) {
      out.push_back({{"file", config_.load[k]},
                     {"fingerprint", files_[k].fingerprint},
                     {"L", files_[k].spec.L.value()},
                     {"M", files_[k].spec.depth},
                     {"t", files_[k].t}});
    }
    return out;
  }

 private:
  const RunConfig& config_;
  std::vector<DenoiserFile> files_;
};

struct Circuits {
  GateList noiseless, noisy, denoised;
  std::optional<DenoiserSpec> denoiser;
};

Circuits circuits_at(const RunConfig& config, const DenoiserBank& bank, double t) {
  Circuits c;
  TrotterSpec clean = config.trotter(t);
  clean.noise = channels::NoiseModel(0.0);
  c.noiseless = circuits::build_trotter(clean, false);
  c.noisy = circuits::build_trotter(config.trotter(t), true);
  if (!bank.empty()) {
    c.denoiser = bank.require(t);
    c.denoised = circuits::concat(c.noisy, circuits::build_denoiser(*c.denoiser));
  }
  return c;
}

const std::vector<std::string> kResultColumns{"kind", "circuit", "L", "t", "m_trot", "M",
                                              "p",    "i",       "j", "n", "value"};

void evaluate_observable(const RunConfig& config, const DenoiserBank& bank,
                         const TaskSpec& task, Table& table) {
  const QubitCount L(config.L);
  const auto times = task.times.empty() ? config.times : task.times;
  for (double t : times) {
    const Circuits c = circuits_at(config, bank, t);
    const int M = c.denoiser ? c.denoiser->depth : 0;
    struct Variant {
      const char* name;
      const GateList* gates;
      double p;
      int M;
    };
    std::vector<Variant> variants{{"noiseless", &c.noiseless, 0.0, 0},
                                  {"noisy", &c.noisy, config.p, 0}};
    if (c.denoiser) variants.push_back({"denoised", &c.denoised, config.p, M});

    if (task.kind == "two_point_zz") {
      for (const auto& v : variants) {
        table.row(task.kind, v.name, config.L, t, config.m_trot, v.M, v.p, task.i + 1,
                  task.j + 1, 1, observables::two_point_zz(*v.gates, task.i, task.j, L));
      }
    } else if (task.kind == "otoc") {
      const Circuits back = circuits_at(config, bank, -t);
      const GateList* backward[3] = {&back.noiseless, &back.noisy, &back.denoised};
      for (size_t k = 0; k < variants.size(); ++k) {
        const auto& v = variants[k];
        table.row(task.kind, v.name, config.L, t, config.m_trot, v.M, v.p, task.i + 1,
                  task.j + 1, 1, observables::otoc(*v.gates, *backward[k], task.i, task.j, L));
      }
    } else if (task.kind == "domain_wall") {
      for (int n : task.n_stack) {
        for (const auto& v : variants) {
          table.row(task.kind, v.name, config.L, t, config.m_trot, v.M, v.p, "", "", n,
                    observables::domain_wall_magnetization(*v.gates, L, n));
        }
      }
    } else if (task.kind == "stacking") {
      for (const auto& v : variants) {
        VectorizedOperator x = observables::pauli_z_vectorized(task.j, L);
        const auto obs = observables::Observable::pauli_z(task.i, L);
        int done = 0;
        for (int n : task.n_stack) {
          for (; done < n; ++done) x = circuits::apply(*v.gates, x, L);
          const Complex value = obs.expectation(x) / static_cast<double>(L.hilbert_dim());
          table.row(task.kind, v.name, config.L, n * t, config.m_trot, v.M, v.p, task.i + 1,
                    task.j + 1, n, value.real());
        }
      }
    }
  }
}

void write_spectrum(const fs::path& path, const analysis::SpectrumReport& s) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << std::setprecision(17) << "re,im\n";
  for (Complex l : s.eigenvalues) out << l.real() << ',' << l.imag() << '\n';
}

void evaluate_analysis(const RunConfig& config, const DenoiserBank& bank, const TaskSpec& task,
                       Table& table, json& files) {
  if (config.L > circuits::kMaxDenseSites) {
    throw ConfigError("task " + task.kind + " needs full matrices, limited to L <= " +
                      std::to_string(circuits::kMaxDenseSites));
  }
  const QubitCount L(config.L);
  const auto times = task.times.empty() ? config.times : task.times;
  for (double t : times) {
    const Circuits c = circuits_at(config, bank, t);
    const int M = c.denoiser ? c.denoiser->depth : 0;
    std::vector<std::pair<std::string, Matrix>> mats;
    mats.emplace_back("noiseless", circuits::compose(c.noiseless, L));
    mats.emplace_back("noisy", circuits::compose(c.noisy, L));
    if (c.denoiser) {
      Matrix d = circuits::compose(circuits::build_denoiser(*c.denoiser), L);
      Matrix denoised = d * mats[1].second;
      mats.emplace_back("denoiser", std::move(d));
      mats.emplace_back("denoised", std::move(denoised));
    }
    const auto p_of = [&](const std::string& name) { return name == "noiseless" ? 0.0 : config.p; };
    const auto m_of = [&](const std::string& name) {
      return name == "denoiser" || name == "denoised" ? M : 0;
    };
    if (task.kind == "spectrum") {
      std::map<std::string, analysis::SpectrumReport> spectra;
      for (const auto& [name, m] : mats) {
        spectra[name] = analysis::spectrum(m);
        std::ostringstream file;
        file << "spectrum_" << name << "_t" << exact(t) << ".csv";
        write_spectrum(fs::path(config.output) / file.str(), spectra[name]);
        files.push_back(file.str());
        table.row("spectrum_deviation", name, config.L, t, config.m_trot, m_of(name), p_of(name),
                  "", "", 1, spectra[name].mean_unit_circle_deviation);
        table.row("spectral_radius", name, config.L, t, config.m_trot, m_of(name), p_of(name),
                  "", "", 1, spectra[name].spectral_radius);
      }
      if (c.denoiser) {
        const auto cmp = analysis::unit_circle_metrics(spectra["noisy"], spectra["denoiser"],
                                                       spectra["denoised"]);
        table.row("denoiser_outside_unit_circle", "denoiser", config.L, t, config.m_trot, M,
                  config.p, "", "", 1, cmp.denoiser_outside_unit_circle ? 1 : 0);
        table.row("denoised_closer_than_noisy", "denoised", config.L, t, config.m_trot, M,
                  config.p, "", "", 1, cmp.denoised_closer_than_noisy ? 1 : 0);
      }
    } else {
      for (const auto& [name, m] : mats) {
        const auto e = analysis::channel_entropy(m);
        table.row("choi_entropy", name, config.L, t, config.m_trot, m_of(name), p_of(name), "",
                  "", 1, e.full_choi_entropy);
        table.row("half_chain_entropy", name, config.L, t, config.m_trot, m_of(name),
                  p_of(name), "", "", 1, e.half_chain_entropy);
        table.row("clipped_weight", name, config.L, t, config.m_trot, m_of(name), p_of(name),
                  "", "", 1, e.clipped_weight);
      }
    }
  }
}

int evaluate_tasks(const RunConfig& config, const std::set<std::string>& kinds,
                   const char* command) {
  const auto start = Clock::now();
  const DenoiserBank bank(config);
  Table table(fs::path(config.output) / "results.csv", kResultColumns);
  json files = json::array();
  int run = 0;
  for (const auto& task : config.tasks) {
    if (!kinds.count(task.kind)) continue;
    ++run;
    if (task.kind == "spectrum" || task.kind == "entropy") {
      evaluate_analysis(config, bank, task, table, files);
    } else {
      evaluate_observable(config, bank, task, table);
    }
  }
  if (run == 0) throw ConfigError(std::string("no tasks for command ") + command);
  json side = metadata(config, command);
  side["columns"] = kResultColumns;
  side["table"] = "results.csv";
  side["rows_written"] = table.rows();
  side["spectrum_files"] = files;
  side["denoisers"] = bank.describe();
  side["timing"] = {{"total_seconds", seconds_since(start)}};
  write_json(fs::path(config.output) / (std::string(command) + ".json"), side);
  std::cout << "wrote " << table.rows() << " rows to "
            << (fs::path(config.output) / "results.csv").string() << '\n';
  return kExitOk;
}

}  // namespace

// ------------------------------------------------------------ commands

int cmd_optimize(RunConfig config, const CommandOptions& options) {
  apply_options(config, options);
  check_optimizable(config);
  if (config.depth < 1) throw ConfigError("field denoiser.M must be >= 1 to optimize");
  const auto start = Clock::now();
  json artifact = metadata(config, "optimize");
  artifact["runs"] = json::array();
  Table trace(fs::path(config.output) / "epsilon_trace.csv",
              {"run", "t", "iteration", "epsilon", "best_epsilon", "grad_norm"});

  std::vector<double> targets = config.times;
  if (config.backward) {
    for (double t : config.times) targets.push_back(-t);
  }
  for (size_t k = 0; k < targets.size(); ++k) {
    const TrotterSpec target = config.trotter(targets[k]);
    const std::string label = "t=" + exact(target.t);
    const OptimizedDenoiser d = optimize_for(config, target, label);
    const std::string file = "denoiser_" + std::to_string(k) + ".json";
    write_json(fs::path(config.output) / file, denoiser_to_json(d.spec, target));
    for (size_t it = 0; it < d.report.epsilon_trace.size(); ++it) {
      trace.row(k, target.t, it, d.report.epsilon_trace[it], d.report.best_epsilon_trace[it],
                d.report.grad_norm_trace[it]);
    }
    artifact["runs"].push_back(run_json(config, target, d, file));
    std::cout << label << " baseline " << d.baseline << " final " << d.report.final_epsilon
              << " gamma " << total_gamma(d.spec) << " -> " << file << '\n';
  }
  artifact["timing"] = {{"total_seconds", seconds_since(start)}};
  write_json(fs::path(config.output) / "optimize.json", artifact);
  return kExitOk;
}

int cmd_evaluate(RunConfig config, const CommandOptions& options) {
  apply_options(config, options);
  return evaluate_tasks(config,
                        {"two_point_zz", "otoc", "domain_wall", "stacking", "spectrum",
                         "entropy"},
                        "evaluate");
}

int cmd_analyze(RunConfig config, const CommandOptions& options) {
  apply_options(config, options);
  const bool any = std::any_of(config.tasks.begin(), config.tasks.end(), [](const TaskSpec& t) {
    return t.kind == "spectrum" || t.kind == "entropy";
  });
  if (!any) {
    for (const char* kind : {"spectrum", "entropy"}) {
      TaskSpec task;
      task.kind = kind;
      config.tasks.push_back(task);
    }
  }
  return evaluate_tasks(config, {"spectrum", "entropy"}, "analyze");
}

int cmd_sample(RunConfig config, const CommandOptions& options) {
  apply_options(config, options);
  const auto start = Clock::now();
  const DenoiserBank bank(config);
  const QubitCount L(config.L);
  json results = json::array();
  for (const auto& task : config.tasks) {
    if (task.kind != "sample") continue;
    const std::uint64_t shots = options.shots.value_or(task.shots);
    if (shots == 0) throw ConfigError("empty budget: set --shots or tasks[].shots");
    const auto times = task.times.empty() ? config.times : task.times;
    for (double t : times) {
      const Circuits c = circuits_at(config, bank, t);
      const DenoiserSpec d =
          c.denoiser ? *c.denoiser
                     : DenoiserSpec::identity(L, 0, channels::NoiseModel(config.p));
      sampler::ShotOptions so;
      so.n_shots = shots;
      so.seed = config.seed;
      so.delta = task.delta;
      so.omega = task.omega;
      so.pauli_unraveling = task.unravel;
      so.trotter_noise = channels::NoiseModel(config.p);
      const GateList& trotter =
          task.unravel ? circuits::build_trotter(config.trotter(t), false) : c.noisy;
      const auto obs = observables::Observable::pauli_z(task.i, L);
      const VectorizedOperator rho0 =
          observables::pauli_z_vectorized(task.j, L) / static_cast<double>(L.hilbert_dim());
      const sampler::EstimatorResult r = sampler::run_shots(trotter, d, obs, rho0, so);
      const double exact_denoised = observables::two_point_zz(
          c.denoiser ? c.denoised : c.noisy, task.i, task.j, L);
      const double z = r.standard_error > 0 ? (r.mean - exact_denoised) / r.standard_error : 0.0;
      results.push_back(
          {{"observable", "two_point_zz"},
           {"i", task.i + 1},
           {"j", task.j + 1},
           {"t", t},
           {"M", d.depth},
           {"n_shots", r.n_shots},
           {"mean", r.mean},
           {"standard_error", r.standard_error},
           {"gamma", r.gamma},
           {"hoeffding", {{"delta", task.delta}, {"omega", task.omega}, {"samples", r.hoeffding_bound}}},
           {"budget_fraction", static_cast<double>(r.n_shots) / static_cast<double>(r.hoeffding_bound)},
           {"exact_denoised", exact_denoised},
           {"exact_noisy", observables::two_point_zz(c.noisy, task.i, task.j, L)},
           {"exact_noiseless", observables::two_point_zz(c.noiseless, task.i, task.j, L)},
           {"z_score", z},
           {"pauli_unraveling", task.unravel}});
      std::cout << "t=" << t << " C_zz(" << task.i + 1 << "," << task.j + 1 << ") = " << r.mean
                << " +- " << r.standard_error << " (exact " << exact_denoised << ", " << r.n_shots
                << " shots, Hoeffding budget " << r.hoeffding_bound << ")\n";
    }
  }
  if (results.empty()) throw ConfigError("no sample tasks in config");
  json side = metadata(config, "sample");
  side["results"] = results;
  side["denoisers"] = bank.describe();
  side["timing"] = {{"total_seconds", seconds_since(start)}};
  write_json(fs::path(config.output) / "sample.json", side);
  return kExitOk;
}

int cmd_sweep(RunConfig config, const CommandOptions& options) {
  apply_options(config, options);
  check_optimizable(config);
  if (config.sweep_p.empty()) throw ConfigError("missing required field sweep.p_values");
  if (config.depth < 1) throw ConfigError("field denoiser.M must be >= 1 to sweep");
  const auto start = Clock::now();
  Table table(fs::path(config.output) / "sweep.csv",
              {"p", "t", "L", "m_trot", "M", "baseline_epsilon", "final_epsilon", "gamma"});
  json runs = json::array();
  for (size_t k = 0; k < config.sweep_p.size(); ++k) {
    RunConfig at = config;
    at.p = config.sweep_p[k];
    for (double t : config.times) {
      const TrotterSpec target = at.trotter(t);
      const OptimizedDenoiser d = optimize_for(at, target, "p=" + exact(at.p));
      const std::string file = "denoiser_p" + std::to_string(k) + "_t" + exact(t) + ".json";
      write_json(fs::path(config.output) / file, denoiser_to_json(d.spec, target));
      table.row(at.p, t, at.L, at.m_trot, at.depth, d.baseline, d.report.final_epsilon,
                total_gamma(d.spec));
      runs.push_back(run_json(at, target, d, file));
    }
  }
  json side = metadata(config, "sweep");
  side["runs"] = runs;
  side["table"] = "sweep.csv";
  side["timing"] = {{"total_seconds", seconds_since(start)}};
  write_json(fs::path(config.output) / "sweep.json", side);
  return kExitOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Noise-cancelling denoisers for Trotterized spin-chain supercircuits"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  std::string config_path;
  CommandOptions options;
  std::uint64_t seed = 0, shots = 0;
  std::string out;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required();
    sub->add_option("--seed", seed, "override the config seed");
    sub->add_option("--out", out, "output directory");
    sub->add_option("--denoiser", options.denoisers, "denoiser parameter file (repeatable)");
  };
  CLI::App* optimize = app.add_subcommand("optimize", "optimize denoisers");
  CLI::App* evaluate = app.add_subcommand("evaluate", "exact observables and diagnostics");
  CLI::App* sample = app.add_subcommand("sample", "shot-based quasiprobability estimates");
  CLI::App* analyze = app.add_subcommand("analyze", "spectra and Choi entropies");
  CLI::App* sweep = app.add_subcommand("sweep", "noise-strength sweep");
  for (CLI::App* sub : {optimize, evaluate, sample, analyze, sweep}) add_common(sub);
  sample->add_option("--shots", shots, "number of shots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    for (CLI::App* sub : {optimize, evaluate, sample, analyze, sweep}) {
      if (!sub->parsed()) continue;
      if (sub->count("--seed")) options.seed = seed;
      if (sub->count("--out")) options.out = out;
      if (sub == sample && sub->count("--shots")) options.shots = shots;
    }
    RunConfig config = load_config(config_path);
    if (optimize->parsed()) return cmd_optimize(std::move(config), options);
    if (evaluate->parsed()) return cmd_evaluate(std::move(config), options);
    if (sample->parsed()) return cmd_sample(std::move(config), options);
    if (analyze->parsed()) return cmd_analyze(std::move(config), options);
    return cmd_sweep(std::move(config), options);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qdenoise::cli
