#include "exadam/config_file.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "exadam/errors.hpp"

namespace exadam {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_quotes(const std::string& s) {
  if (s.size() >= 2 && ((s.front() == '"' && s.back() == '"') ||
                        (s.front() == '\'' && s.back() == '\''))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for " + what + ": '" + s + "'");
  }
}

long long parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer for " + what + ": '" + s + "'");
  }
}

bool parse_bool(const std::string& s, const std::string& what) {
  if (s == "true" || s == "on" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "off" || s == "0" || s == "no") return false;
  throw ConfigError("config: bad boolean for " + what + ": '" + s + "'");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

bool ParsedConfig::has(const std::string& section, const std::string& key) const {
  const auto s = sections.find(section);
  return s != sections.end() && s->second.count(key) > 0;
}

std::string ParsedConfig::get(const std::string& section, const std::string& key) const {
  const auto s = sections.find(section);
  if (s == sections.end() || !s->second.count(key)) {
    throw ConfigError("config: missing [" + section + "] " + key);
  }
  return s->second.at(key);
}

std::string ParsedConfig::get_or(const std::string& section, const std::string& key,
                                 const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

ParsedConfig parse_config_text(const std::string& text) {
  ParsedConfig cfg;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto comment = raw.find_first_of("#;");
    std::string line = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError("config: bad section header at line " + std::to_string(line_no));
      }
      section = trim(line.substr(1, line.size() - 2));
      cfg.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: expected key = value at line " + std::to_string(line_no));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = strip_quotes(trim(line.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError("config: empty key at line " + std::to_string(line_no));
    }
    cfg.sections[section][key] = value;
  }
  return cfg;
}

ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

namespace {

OptimizerConfig optimizer_from_config(const ParsedConfig& cfg, const std::string& name) {
  OptimizerConfig oc = default_config_for(name);
  const std::string s = "optimizer";
  if (cfg.has(s, "alpha")) oc.alpha = parse_double(cfg.get(s, "alpha"), "alpha");
  if (cfg.has(s, "beta1")) oc.beta1 = parse_double(cfg.get(s, "beta1"), "beta1");
  if (cfg.has(s, "beta2")) oc.beta2 = parse_double(cfg.get(s, "beta2"), "beta2");
  if (cfg.has(s, "epsilon")) oc.epsilon = parse_double(cfg.get(s, "epsilon"), "epsilon");
  if (cfg.has(s, "weight_decay"))
    oc.weight_decay = parse_double(cfg.get(s, "weight_decay"), "weight_decay");
  if (cfg.has(s, "momentum")) oc.momentum = parse_double(cfg.get(s, "momentum"), "momentum");
  if (cfg.has(s, "rms_decay")) oc.rms_decay = parse_double(cfg.get(s, "rms_decay"), "rms_decay");
  if (cfg.has(s, "adadelta_rho"))
    oc.adadelta_rho = parse_double(cfg.get(s, "adadelta_rho"), "adadelta_rho");
  if (cfg.has(s, "enable_cross_moment"))
    oc.enable_cross_moment = parse_bool(cfg.get(s, "enable_cross_moment"), "enable_cross_moment");
  if (cfg.has(s, "enable_accelerator"))
    oc.enable_accelerator = parse_bool(cfg.get(s, "enable_accelerator"), "enable_accelerator");
  oc.validate();
  return oc;
}

ExperimentConfig shared_from_config(const ParsedConfig& cfg) {
  ExperimentConfig ec;
  ec.problem.name = cfg.get("problem", "name");
  if (cfg.has("problem", "dim"))
    ec.problem.dim = static_cast<std::size_t>(parse_int(cfg.get("problem", "dim"), "dim"));
  if (cfg.has("problem", "condition"))
    ec.problem.condition = parse_double(cfg.get("problem", "condition"), "condition");
  if (cfg.has("problem", "n"))
    ec.problem.n = static_cast<std::size_t>(parse_int(cfg.get("problem", "n"), "n"));
  if (cfg.has("problem", "d"))
    ec.problem.d = static_cast<std::size_t>(parse_int(cfg.get("problem", "d"), "d"));
  if (cfg.has("problem", "separation"))
    ec.problem.separation = parse_double(cfg.get("problem", "separation"), "separation");
  if (cfg.has("problem", "layers")) {
    ec.problem.layers.clear();
    for (const std::string& item : split_list(cfg.get("problem", "layers"))) {
      ec.problem.layers.push_back(static_cast<std::size_t>(parse_int(item, "layers")));
    }
  }

  if (cfg.has("run", "epochs"))
    ec.epochs = static_cast<std::size_t>(parse_int(cfg.get("run", "epochs"), "epochs"));
  if (cfg.has("run", "batch_size"))
    ec.batch_size = static_cast<std::size_t>(parse_int(cfg.get("run", "batch_size"), "batch_size"));
  if (cfg.has("run", "seed"))
    ec.seed = static_cast<std::uint64_t>(parse_int(cfg.get("run", "seed"), "seed"));
  if (cfg.has("run", "val_loss_target"))
    ec.val_loss_target = parse_double(cfg.get("run", "val_loss_target"), "val_loss_target");
  if (cfg.has("run", "record_step_loss"))
    ec.record_step_loss = parse_bool(cfg.get("run", "record_step_loss"), "record_step_loss");

  ec.scheduler.enabled = parse_bool(cfg.get_or("scheduler", "enabled", "true"), "enabled");
  if (cfg.has("scheduler", "factor"))
    ec.scheduler.factor = parse_double(cfg.get("scheduler", "factor"), "factor");
  if (cfg.has("scheduler", "patience"))
    ec.scheduler.patience = static_cast<int>(parse_int(cfg.get("scheduler", "patience"),
                                                       "patience"));
  if (cfg.has("scheduler", "min_lr"))
    ec.scheduler.min_lr = parse_double(cfg.get("scheduler", "min_lr"), "min_lr");
  if (cfg.has("scheduler", "rel_threshold"))
    ec.scheduler.rel_threshold =
        parse_double(cfg.get("scheduler", "rel_threshold"), "rel_threshold");
  return ec;
}

}  // namespace

ExperimentConfig experiment_from_config(const ParsedConfig& cfg) {
  ExperimentConfig ec = shared_from_config(cfg);
  ec.optimizer = cfg.get("optimizer", "name");
  if (!is_known_optimizer(ec.optimizer)) {
    throw ConfigError("config: unknown optimizer '" + ec.optimizer + "'");
  }
  ec.opt = optimizer_from_config(cfg, ec.optimizer);
  return ec;
}

std::vector<ExperimentConfig> sweep_from_config(const ParsedConfig& cfg) {
  const std::vector<std::string> names = split_list(cfg.get("compare", "optimizers"));
  if (names.empty()) throw ConfigError("config: [compare] optimizers is empty");
  std::vector<ExperimentConfig> out;
  for (const std::string& name : names) {
    if (!is_known_optimizer(name)) throw ConfigError("config: unknown optimizer '" + name + "'");
    ExperimentConfig ec = shared_from_config(cfg);
    ec.optimizer = name;
    ec.opt = optimizer_from_config(cfg, name);
    out.push_back(std::move(ec));
  }
  return out;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out << contents;
    out.flush();
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

}  // namespace exadam
