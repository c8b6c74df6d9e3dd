// Copyright 2026 The qdarwin Authors.
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

#include "core/config.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "core/errors.hpp"

namespace qdarwin {

using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

double parse_factor(std::string tok) {
  tok = trim(tok);
  double sign = 1.0;
  while (!tok.empty() && (tok[0] == '-' || tok[0] == '+')) {
    if (tok[0] == '-') sign = -sign;
    tok = trim(tok.substr(1));
  }
  if (tok == "pi") return sign * kPi;
  if (tok.empty()) throw std::invalid_argument("empty factor");
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end != tok.c_str() + tok.size()) {
    // "2pi" style.
    if (std::string(end) == "pi") return sign * v * kPi;
    throw std::invalid_argument("bad factor '" + tok + "'");
  }
  return sign * v;
}

class Reader {
 public:
  std::vector<std::string> issues;

  void issue(const std::string& path, const std::string& msg) { issues.push_back(path + ": " + msg); }

  void allow_keys(const json& obj, const std::string& path, std::set<std::string> keys) {
    keys.insert("comment");
    for (const auto& [k, v] : obj.items()) {
      if (!keys.count(k)) issue(path.empty() ? k : path + "." + k, "unknown key");
    }
  }

  bool object(const json& j, const std::string& path) {
    if (!j.is_object()) {
      issue(path, "must be an object");
      return false;
    }
    return true;
  }

  std::optional<double> number(const json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
      try {
        return parse_angle_expression(j.get<std::string>());
      } catch (const std::exception& e) {
        issue(path, std::string("cannot parse expression: ") + e.what());
        return std::nullopt;
      }
    }
    issue(path, "must be a number or an expression such as \"pi/2\"");
    return std::nullopt;
  }

  double number_or(const json& obj, const std::string& key, const std::string& path, double fallback) {
    if (!obj.contains(key)) return fallback;
    return number(obj[key], path + "." + key).value_or(fallback);
  }

  std::optional<double> required_number(const json& obj, const std::string& key, const std::string& path) {
    if (!obj.contains(key)) {
      issue(path + "." + key, "is required");
      return std::nullopt;
    }
    return number(obj[key], path + "." + key);
  }

  std::optional<std::uint64_t> count(const json& j, const std::string& path) {
    if (j.is_number_unsigned()) return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(j.get<std::int64_t>());
    if (j.is_number_float()) {
      const double v = j.get<double>();
      if (v >= 0 && v == std::floor(v) && v < 1.8e19) return static_cast<std::uint64_t>(v);
    }
    issue(path, "must be a nonnegative integer");
    return std::nullopt;
  }

  std::optional<bool> boolean(const json& j, const std::string& path) {
    if (j.is_boolean()) return j.get<bool>();
    issue(path, "must be true or false");
    return std::nullopt;
  }

  std::optional<Distribution> distribution(const json& j, const std::string& path) {
    if (j.is_number() || j.is_string()) {
      auto v = number(j, path);
      if (!v) return std::nullopt;
      return Distribution::constant(*v);
    }
    if (!j.is_object() || j.size() != 1) {
      issue(path, "must be a number or one of {\"constant\": x}, {\"uniform\": [lo, hi]}, {\"discrete\": [...]}");
      return std::nullopt;
    }
    const auto& [kind, arg] = *j.items().begin();
    const std::string sub = path + "." + kind;
    if (kind == "constant") {
      auto v = number(arg, sub);
      if (!v) return std::nullopt;
      return Distribution::constant(*v);
    }
    if (kind == "uniform" || kind == "discrete") {
      if (!arg.is_array()) {
        issue(sub, "must be an array");
        return std::nullopt;
      }
      std::vector<double> vals;
      for (std::size_t i = 0; i < arg.size(); ++i) {
        auto v = number(arg[i], sub + "[" + std::to_string(i) + "]");
        if (!v) return std::nullopt;
        vals.push_back(*v);
      }
      if (kind == "uniform") {
        if (vals.size() != 2) {
          issue(sub, "needs exactly [lo, hi]");
          return std::nullopt;
        }
        return Distribution::uniform(vals[0], vals[1]);
      }
      return Distribution::discrete(std::move(vals));
    }
    issue(path, "unknown distribution '" + kind + "' (supported: constant, uniform, discrete)");
    return std::nullopt;
  }

  std::optional<QubitState> state(double a, double theta, double phi, const std::string& path) {
    bool good = true;
    if (!(a >= 0.0 && a <= 1.0)) {
      issue(path + ".a", "Bloch length must lie in [0, 1]");
      good = false;
    }
    if (!(theta >= 0.0 && theta <= kPi + 1e-12)) {
      issue(path + ".theta", "polar angle must lie in [0, pi]");
      good = false;
    }
    if (!std::isfinite(phi)) {
      issue(path + ".phi", "must be finite");
      good = false;
    }
    if (!good) return std::nullopt;
    return QubitState::make(a, std::min(theta, kPi), phi);
  }

  std::optional<SpinSpec> spin(const json& obj, const std::string& path, bool need_g) {
    if (!object(obj, path)) return std::nullopt;
    allow_keys(obj, path, {"kind", "count", "g", "omega", "theta", "phi", "a"});
    SpinSpec s;
    if (need_g) {
      auto g = required_number(obj, "g", path);
      if (!g) return std::nullopt;
      s.g = *g;
    }
    s.omega = number_or(obj, "omega", path, 0.0);
    auto st = state(number_or(obj, "a", path, 1.0), number_or(obj, "theta", path, kPi / 2),
                    number_or(obj, "phi", path, 0.0), path);
    if (!st) return std::nullopt;
    s.init = *st;
    return s;
  }

  std::optional<EnvironmentSpec> environment(const json& j) {
    const std::string path = "environment";
    if (!object(j, path)) return std::nullopt;
    if (!j.contains("kind") || !j["kind"].is_string()) {
      issue(path + ".kind", "is required: one of symmetric, explicit, random");
      return std::nullopt;
    }
    const std::string kind = j["kind"].get<std::string>();
    EnvironmentSpec env;
    if (kind == "symmetric") {
      auto s = spin(j, path, true);
      std::optional<std::uint64_t> n;
      if (!j.contains("count")) {
        issue(path + ".count", "is required");
      } else {
        n = count(j["count"], path + ".count");
      }
      if (!s || !n) return std::nullopt;
      env.variant = SymmetricEnvironment{*s, static_cast<std::size_t>(*n)};
      return env;
    }
    if (kind == "explicit") {
      allow_keys(j, path, {"kind", "spins"});
      if (!j.contains("spins") || !j["spins"].is_array()) {
        issue(path + ".spins", "is required and must be an array");
        return std::nullopt;
      }
      ExplicitEnvironment ex;
      bool good = true;
      for (std::size_t k = 0; k < j["spins"].size(); ++k) {
        auto s = spin(j["spins"][k], path + ".spins[" + std::to_string(k) + "]", true);
        if (s) {
          ex.spins.push_back(*s);
        } else {
          good = false;
        }
      }
      if (!good) return std::nullopt;
      env.variant = std::move(ex);
      return env;
    }
    if (kind == "random") {
      allow_keys(j, path, {"kind", "count", "g", "omega", "theta", "phi", "a", "gaussian_scaling"});
      RandomEnvironment r;
      bool good = true;
      auto dist = [&](const char* key, Distribution& out, bool required) {
        if (!j.contains(key)) {
          if (required) {
            issue(path + "." + key, "is required");
            good = false;
          }
          return;
        }
        auto d = distribution(j[key], path + "." + key);
        if (d) {
          out = *d;
        } else {
          good = false;
        }
      };
      dist("g", r.g, true);
      dist("omega", r.omega, false);
      dist("theta", r.theta, false);
      dist("phi", r.phi, false);
      dist("a", r.a, false);
      if (!j.contains("count")) {
        issue(path + ".count", "is required");
        good = false;
      } else if (auto n = count(j["count"], path + ".count")) {
        r.count = static_cast<std::size_t>(*n);
      } else {
        good = false;
      }
      if (j.contains("gaussian_scaling")) {
        if (auto b = boolean(j["gaussian_scaling"], path + ".gaussian_scaling")) r.gaussian_scaling = *b;
      }
      if (!good) return std::nullopt;
      env.variant = std::move(r);
      return env;
    }
    issue(path + ".kind", "unknown kind '" + kind + "' (expected symmetric, explicit or random)");
    return std::nullopt;
  }

  std::optional<std::vector<double>> times(const json& j) {
    const std::string path = "times";
    if (j.is_array()) {
      std::vector<double> out;
      for (std::size_t i = 0; i < j.size(); ++i) {
        auto v = number(j[i], path + "[" + std::to_string(i) + "]");
        if (!v) return std::nullopt;
        out.push_back(*v);
      }
      return out;
    }
    if (j.is_object() && j.size() == 1 && j.contains("linspace") && j["linspace"].is_array() &&
        j["linspace"].size() == 3) {
      const auto& l = j["linspace"];
      auto a = number(l[0], path + ".linspace[0]");
      auto b = number(l[1], path + ".linspace[1]");
      auto n = count(l[2], path + ".linspace[2]");
      if (!a || !b || !n) return std::nullopt;
      if (*n < 1 || *n > 10'000'000) {
        issue(path + ".linspace[2]", "point count must lie in [1, 1e7]");
        return std::nullopt;
      }
      std::vector<double> out(*n);
      for (std::size_t i = 0; i < *n; ++i) {
        out[i] = *n == 1 ? *a : *a + (*b - *a) * static_cast<double>(i) / static_cast<double>(*n - 1);
      }
      if (*n > 1) out.back() = *b;
      return out;
    }
    issue(path, "must be an array of times or {\"linspace\": [start, stop, count]}");
    return std::nullopt;
  }
};

json distribution_json(const Distribution& d) {
  switch (d.kind()) {
    case Distribution::Kind::Constant: return d.params()[0];
    case Distribution::Kind::Uniform: return json{{"uniform", d.params()}};
    case Distribution::Kind::Discrete: return json{{"discrete", d.params()}};
  }
  return nullptr;
}

json spin_json(const SpinSpec& s) {
  return json{{"g", s.g}, {"omega", s.omega}, {"a", s.init.a()}, {"theta", s.init.theta()}, {"phi", s.init.phi()}};
}

}  // namespace

std::string_view to_string(Averaging a) noexcept {
  switch (a) {
    case Averaging::Auto: return "auto";
    case Averaging::Enumerate: return "enumerate";
    case Averaging::MonteCarlo: return "monte_carlo";
  }
  return "auto";
}

double parse_angle_expression(const std::string& text) {
  // Left-to-right product of factors separated by '*' and '/'.
  double value = 1.0;
  char op = '*';
  std::size_t start = 0;
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty expression");
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == '*' || s[i] == '/') {
      const double f = parse_factor(s.substr(start, i - start));
      value = op == '*' ? value * f : value / f;
      if (i < s.size()) op = s[i];
      start = i + 1;
    }
  }
  if (!std::isfinite(value)) throw std::invalid_argument("expression is not finite");
  return value;
}

RunConfig parse_config(const json& doc) {
  Reader rd;
  RunConfig cfg;
  if (!doc.is_object()) fail(ErrorKind::Config, "config must be a JSON object");
  rd.allow_keys(doc, "", {"system", "environment", "times", "delta", "seed", "holevo", "mesh",
                          "dense_cap", "threads", "exact", "description"});

  if (doc.contains("seed")) {
    if (auto s = rd.count(doc["seed"], "seed")) cfg.seed = *s;
  }
  if (doc.contains("dense_cap")) {
    if (auto c = rd.count(doc["dense_cap"], "dense_cap")) cfg.holevo.dense_cap = static_cast<int>(std::min<std::uint64_t>(*c, 1000));
  }
  if (doc.contains("threads")) {
    if (auto c = rd.count(doc["threads"], "threads")) cfg.holevo.threads = static_cast<unsigned>(std::min<std::uint64_t>(*c, 4096));
  }
  if (doc.contains("exact")) {
    if (auto b = rd.boolean(doc["exact"], "exact")) cfg.exact = *b;
  }
  if (doc.contains("holevo") && rd.object(doc["holevo"], "holevo")) {
    const json& h = doc["holevo"];
    rd.allow_keys(h, "holevo", {"mode", "samples", "max_subsets"});
    if (h.contains("mode")) {
      const std::string m = h["mode"].is_string() ? h["mode"].get<std::string>() : "";
      if (m == "auto") {
        cfg.holevo.averaging = Averaging::Auto;
      } else if (m == "enumerate") {
        cfg.holevo.averaging = Averaging::Enumerate;
      } else if (m == "monte_carlo") {
        cfg.holevo.averaging = Averaging::MonteCarlo;
      } else {
        rd.issue("holevo.mode", "must be one of auto, enumerate, monte_carlo");
      }
    }
    if (h.contains("samples")) {
      if (auto s = rd.count(h["samples"], "holevo.samples")) cfg.holevo.samples = static_cast<std::size_t>(*s);
    }
    if (h.contains("max_subsets")) {
      if (auto s = rd.count(h["max_subsets"], "holevo.max_subsets")) cfg.holevo.max_subsets = *s;
    }
  }

  const bool has_scenario = doc.contains("environment") || doc.contains("system") || doc.contains("times");
  if (has_scenario) {
    Scenario sc;
    bool good = true;
    if (!doc.contains("system")) {
      rd.issue("system", "is required");
      good = false;
    } else if (rd.object(doc["system"], "system")) {
      const json& s = doc["system"];
      rd.allow_keys(s, "system", {"p_up", "coherence"});
      if (auto p = rd.required_number(s, "p_up", "system")) {
        sc.system.p_up = *p;
      } else {
        good = false;
      }
      if (s.contains("coherence")) sc.system.coherence = rd.number(s["coherence"], "system.coherence");
    } else {
      good = false;
    }
    if (!doc.contains("environment")) {
      rd.issue("environment", "is required");
      good = false;
    } else if (auto env = rd.environment(doc["environment"])) {
      sc.environment = *env;
    } else {
      good = false;
    }
    if (!doc.contains("times")) {
      rd.issue("times", "is required");
      good = false;
    } else if (auto t = rd.times(doc["times"])) {
      sc.times = *t;
    } else {
      good = false;
    }
    if (!doc.contains("delta")) {
      rd.issue("delta", "is required");
      good = false;
    } else if (auto d = rd.number(doc["delta"], "delta")) {
      sc.delta = *d;
    } else {
      good = false;
    }
    if (good) {
      sc.environment.seed = cfg.seed;
      cfg.scenario = std::move(sc);
    }
  }

  if (doc.contains("mesh") && rd.object(doc["mesh"], "mesh")) {
    const json& m = doc["mesh"];
    rd.allow_keys(m, "mesh", {"g", "omega", "a", "t", "n_theta", "n_phi"});
    MeshSpec mesh;
    mesh.g = rd.number_or(m, "g", "mesh", mesh.g);
    mesh.omega = rd.number_or(m, "omega", "mesh", mesh.omega);
    mesh.a = rd.number_or(m, "a", "mesh", mesh.a);
    mesh.t = rd.number_or(m, "t", "mesh", mesh.t);
    if (m.contains("n_theta")) {
      if (auto n = rd.count(m["n_theta"], "mesh.n_theta")) mesh.n_theta = static_cast<int>(std::min<std::uint64_t>(*n, 100000));
    }
    if (m.contains("n_phi")) {
      if (auto n = rd.count(m["n_phi"], "mesh.n_phi")) mesh.n_phi = static_cast<int>(std::min<std::uint64_t>(*n, 100000));
    }
    cfg.mesh = mesh;
  }

  if (!has_scenario && !cfg.mesh) rd.issue("config", "needs a scenario (system, environment, times, delta) or a mesh section");
  if (!rd.issues.empty()) throw ValidationError(std::move(rd.issues));
  apply_overrides(cfg, {});
  return cfg;
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Config, std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void apply_overrides(RunConfig& target, const Overrides& ov) {
  // Work on a copy so a rejected override leaves the caller's config intact.
  RunConfig cfg = target;
  if (ov.seed) cfg.seed = *ov.seed;
  if (ov.samples) cfg.holevo.samples = *ov.samples;
  if (ov.threads) cfg.holevo.threads = *ov.threads;
  if (ov.dense_cap) cfg.holevo.dense_cap = *ov.dense_cap;
  if (ov.max_subsets) cfg.holevo.max_subsets = *ov.max_subsets;
  if (ov.averaging) cfg.holevo.averaging = *ov.averaging;
  if (ov.exact) cfg.exact = true;
  cfg.holevo.seed = cfg.seed;

  std::vector<std::string> issues;
  if (cfg.scenario) {
    cfg.scenario->environment.seed = cfg.seed;
    if (ov.delta) cfg.scenario->delta = *ov.delta;
    issues = validation_issues(*cfg.scenario);
  } else if (ov.delta) {
    issues.push_back("delta: --delta needs a scenario in the config");
  }
  if (cfg.holevo.samples < 1) issues.push_back("holevo.samples: must be at least 1");
  if (cfg.holevo.max_subsets < 1) issues.push_back("holevo.max_subsets: must be at least 1");
  if (cfg.holevo.dense_cap < 1 || cfg.holevo.dense_cap > kDenseCapMax) {
    issues.push_back("dense_cap: must lie in [1, " + std::to_string(kDenseCapMax) + "]");
  }
  if (cfg.mesh) {
    const MeshSpec& m = *cfg.mesh;
    if (!std::isfinite(m.g) || !std::isfinite(m.omega)) issues.push_back("mesh.g: g and omega must be finite");
    if (!(m.a >= 0.0 && m.a <= 1.0)) issues.push_back("mesh.a: Bloch length must lie in [0, 1]");
    if (!(m.t >= 0.0) || !std::isfinite(m.t)) issues.push_back("mesh.t: must be finite and nonnegative");
    if (m.n_theta < 2) issues.push_back("mesh.n_theta: must be at least 2");
    if (m.n_phi < 2) issues.push_back("mesh.n_phi: must be at least 2");
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  target = std::move(cfg);
}

json resolved_json(const RunConfig& cfg) {
  json out;
  out["seed"] = cfg.seed;
  out["dense_cap"] = cfg.holevo.dense_cap;
  out["exact"] = cfg.exact;
  out["holevo"] = {{"mode", std::string(to_string(cfg.holevo.averaging))},
                   {"samples", cfg.holevo.samples},
                   {"max_subsets", cfg.holevo.max_subsets}};
  if (cfg.scenario) {
    const Scenario& sc = *cfg.scenario;
    json sys{{"p_up", sc.system.p_up}};
    if (sc.system.coherence) sys["coherence"] = *sc.system.coherence;
    out["system"] = sys;
    json env;
    if (const auto* s = std::get_if<SymmetricEnvironment>(&sc.environment.variant)) {
      env = spin_json(s->spin);
      env["kind"] = "symmetric";
      env["count"] = s->count;
    } else if (const auto* e = std::get_if<ExplicitEnvironment>(&sc.environment.variant)) {
      env["kind"] = "explicit";
      env["spins"] = json::array();
      for (const auto& sp : e->spins) env["spins"].push_back(spin_json(sp));
    } else {
      const auto& r = std::get<RandomEnvironment>(sc.environment.variant);
      env = {{"kind", "random"},
             {"count", r.count},
             {"gaussian_scaling", r.gaussian_scaling},
             {"g", distribution_json(r.g)},
             {"omega", distribution_json(r.omega)},
             {"theta", distribution_json(r.theta)},
             {"phi", distribution_json(r.phi)},
             {"a", distribution_json(r.a)}};
    }
    out["environment"] = env;
    out["times"] = sc.times;
    out["delta"] = sc.delta;
  }
  if (cfg.mesh) {
    const MeshSpec& m = *cfg.mesh;
    out["mesh"] = {{"g", m.g}, {"omega", m.omega}, {"a", m.a}, {"t", m.t}, {"n_theta", m.n_theta}, {"n_phi", m.n_phi}};
  }
  return out;
}

}  // namespace qdarwin
