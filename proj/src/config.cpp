#include "teso/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "teso/csv.hpp"

namespace teso {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string& origin, int line,
                       const std::string& what) {
  throw ConfigError(origin + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
    fail(origin, line, "key '" + key + "': not a number: '" + value + "'");
  }
  return v;
}

long long parse_int(const std::string& origin, int line, const std::string& key,
                    const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
    fail(origin, line, "key '" + key + "': not an integer: '" + value + "'");
  }
  return v;
}

std::uint64_t parse_u64(const std::string& origin, int line,
                        const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE ||
      value.find('-') != std::string::npos) {
    fail(origin, line,
         "key '" + key + "': not an unsigned integer: '" + value + "'");
  }
  return static_cast<std::uint64_t>(v);
}

bool parse_bool(const std::string& origin, int line, const std::string& key,
                const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") {
    return true;
  }
  if (value == "false" || value == "0" || value == "no" || value == "off") {
    return false;
  }
  fail(origin, line, "key '" + key + "': not a boolean: '" + value + "'");
}

WaitMode parse_wait_mode(const std::string& origin, int line,
                         const std::string& value) {
  if (value == "queue") return WaitMode::QueueWait;
  if (value == "sojourn") return WaitMode::Sojourn;
  fail(origin, line, "wait_mode must be 'queue' or 'sojourn', got '" + value + "'");
}

Direction parse_direction(const std::string& origin, int line,
                          const std::string& value) {
  if (value == "minimize") return Direction::Minimize;
  if (value == "maximize") return Direction::Maximize;
  fail(origin, line,
       "direction must be 'minimize' or 'maximize', got '" + value + "'");
}

std::vector<AlgorithmVariant> parse_algorithms(const std::string& origin,
                                               int line,
                                               const std::string& value) {
  std::vector<AlgorithmVariant> out;
  std::string item;
  std::stringstream ss(value);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) fail(origin, line, "empty entry in algorithms list");
    try {
      out.push_back(parse_variant(item));
    } catch (const std::invalid_argument& e) {
      fail(origin, line, e.what());
    }
  }
  if (out.empty()) fail(origin, line, "algorithms list is empty");
  return out;
}

// Dispatches one key=value into the right section field; shared between
// file parsing and command-line overrides.
void assign(ExperimentConfig& c, const std::string& origin, int line,
            const std::string& section, const std::string& key,
            const std::string& value) {
  if (section == "queue") {
    if (key == "lambda") c.queue.lambda = parse_double(origin, line, key, value);
    else if (key == "k") c.queue.k = static_cast<int>(parse_int(origin, line, key, value));
    else if (key == "cost_c") c.queue.cost_c = parse_double(origin, line, key, value);
    else if (key == "mu_lower") c.queue.mu_lower = parse_double(origin, line, key, value);
    else if (key == "mu_upper") c.queue.mu_upper = parse_double(origin, line, key, value);
    else if (key == "customers_per_rep") c.queue.customers_per_rep = static_cast<int>(parse_int(origin, line, key, value));
    else if (key == "warmup_customers") c.queue.warmup_customers = static_cast<int>(parse_int(origin, line, key, value));
    else if (key == "wait_mode") c.queue.wait_mode = parse_wait_mode(origin, line, value);
    else fail(origin, line, "unknown key '" + key + "' in [queue]");
    return;
  }
  if (section == "teso") {
    if (key == "T") c.teso.T = static_cast<int>(parse_int(origin, line, key, value));
    else if (key == "n_init") c.teso.n_init = static_cast<int>(parse_int(origin, line, key, value));
    else if (key == "n_rep") c.teso.n_rep = static_cast<int>(parse_int(origin, line, key, value));
    else if (key == "eta_init") c.teso.eta_init = parse_double(origin, line, key, value);
    else if (key == "eta_final") c.teso.eta_final = parse_double(origin, line, key, value);
    else if (key == "tabu_capacity") c.teso.tabu_capacity = static_cast<int>(parse_int(origin, line, key, value));
    else if (key == "elite_capacity") c.teso.elite_capacity = static_cast<int>(parse_int(origin, line, key, value));
    else if (key == "p_div") c.teso.p_div = parse_double(origin, line, key, value);
    else if (key == "dt_max") c.teso.dt_max = static_cast<int>(parse_int(origin, line, key, value));
    else if (key == "direction") c.teso.direction = parse_direction(origin, line, value);
    else if (key == "bin_width") c.teso.bin_width = parse_double(origin, line, key, value);
    else if (key == "pilot_reps") c.teso.pilot_reps = static_cast<int>(parse_int(origin, line, key, value));
    else if (key == "reuse_pilot") c.teso.reuse_pilot = parse_bool(origin, line, key, value);
    else if (key == "disable_tabu") c.teso.disable_tabu = parse_bool(origin, line, key, value);
    else if (key == "disable_elite") c.teso.disable_elite = parse_bool(origin, line, key, value);
    else fail(origin, line, "unknown key '" + key + "' in [teso]");
    return;
  }
  if (section == "suite") {
    if (key == "n_macro") c.suite.n_macro = static_cast<int>(parse_int(origin, line, key, value));
    else if (key == "algorithms") c.suite.algorithms = parse_algorithms(origin, line, value);
    else if (key == "base_seed") c.suite.base_seed = parse_u64(origin, line, key, value);
    else if (key == "output_dir") c.suite.output_dir = value;
    else fail(origin, line, "unknown key '" + key + "' in [suite]");
    return;
  }
  fail(origin, line, "unknown section [" + section + "]");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text,
                              const std::string& origin) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto comment = raw.find_first_of("#;");
    if (comment != std::string::npos) raw.erase(comment);
    const std::string s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3) {
        fail(origin, line, "malformed section header: '" + s + "'");
      }
      section = trim(s.substr(1, s.size() - 2));
      if (section != "queue" && section != "teso" && section != "suite") {
        fail(origin, line, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      fail(origin, line, "expected 'key = value', got '" + s + "'");
    }
    if (section.empty()) {
      fail(origin, line, "key outside any section");
    }
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) fail(origin, line, "empty key");
    assign(config, origin, line, section, key, value);
  }
  config.teso.base_seed = config.suite.base_seed;
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

void apply_override(ExperimentConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  const auto dot = assignment.find('.');
  if (eq == std::string::npos || dot == std::string::npos || dot > eq) {
    throw ConfigError("override must look like section.key=value, got '" +
                      assignment + "'");
  }
  const std::string section = trim(assignment.substr(0, dot));
  const std::string key = trim(assignment.substr(dot + 1, eq - dot - 1));
  const std::string value = trim(assignment.substr(eq + 1));
  assign(config, "<override '" + assignment + "'>", 1, section, key, value);
  config.teso.base_seed = config.suite.base_seed;
}

std::string to_ini(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "[queue]\n"
      << "lambda = " << format_full(c.queue.lambda) << "\n"
      << "k = " << c.queue.k << "\n"
      << "cost_c = " << format_full(c.queue.cost_c) << "\n"
      << "mu_lower = " << format_full(c.queue.mu_lower) << "\n"
      << "mu_upper = " << format_full(c.queue.mu_upper) << "\n"
      << "customers_per_rep = " << c.queue.customers_per_rep << "\n"
      << "warmup_customers = " << c.queue.warmup_customers << "\n"
      << "wait_mode = "
      << (c.queue.wait_mode == WaitMode::Sojourn ? "sojourn" : "queue") << "\n"
      << "\n[teso]\n"
      << "T = " << c.teso.T << "\n"
      << "n_init = " << c.teso.n_init << "\n"
      << "n_rep = " << c.teso.n_rep << "\n"
      << "eta_init = " << format_full(c.teso.eta_init) << "\n"
      << "eta_final = " << format_full(c.teso.eta_final) << "\n"
      << "tabu_capacity = " << c.teso.tabu_capacity << "\n"
      << "elite_capacity = " << c.teso.elite_capacity << "\n"
      << "p_div = " << format_full(c.teso.p_div) << "\n"
      << "dt_max = " << c.teso.dt_max << "\n"
      << "direction = "
      << (c.teso.direction == Direction::Maximize ? "maximize" : "minimize")
      << "\n"
      << "bin_width = " << format_full(c.teso.bin_width) << "\n"
      << "pilot_reps = " << c.teso.pilot_reps << "\n"
      << "reuse_pilot = " << (c.teso.reuse_pilot ? "true" : "false") << "\n"
      << "disable_tabu = " << (c.teso.disable_tabu ? "true" : "false") << "\n"
      << "disable_elite = " << (c.teso.disable_elite ? "true" : "false") << "\n"
      << "\n[suite]\n"
      << "n_macro = " << c.suite.n_macro << "\n";
  out << "algorithms = ";
  for (std::size_t i = 0; i < c.suite.algorithms.size(); ++i) {
    if (i > 0) out << ",";
    out << variant_name(c.suite.algorithms[i]);
  }
  out << "\n"
      << "base_seed = " << c.suite.base_seed << "\n"
      << "output_dir = " << c.suite.output_dir << "\n";
  return out.str();
}

void validate(const ExperimentConfig& config) {
  validate(config.queue);
  validate(config.teso);
  if (config.suite.n_macro < 1) {
    throw std::invalid_argument("suite: n_macro must be at least 1");
  }
  if (config.suite.algorithms.empty()) {
    throw std::invalid_argument("suite: algorithms list is empty");
  }
  if (config.suite.output_dir.empty()) {
    throw std::invalid_argument("suite: output_dir is empty");
  }
  if (config.teso.base_seed != config.suite.base_seed) {
    throw std::invalid_argument(
        "config: teso.base_seed must mirror suite.base_seed");
  }
}

}  // namespace teso
