#include "sarg/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "sarg/error.hpp"

namespace sarg {

namespace {

using nlohmann::json;

double number_at(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  return v.get<double>();
}

std::string string_at(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

long integer_at(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
  return v.get<long>();
}

std::uint64_t parse_seed(const std::string& text, const std::string& key) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw ConfigError(key, "not an unsigned integer: '" + text + "'");
  }
  if (used != text.size() || text.front() == '-') throw ConfigError(key, "not an unsigned integer: '" + text + "'");
  return v;
}

void apply_section(RunConfig& c, const std::string& section, const json& body) {
  if (!body.is_object()) throw ConfigError(section, "expected an object");
  for (const auto& [name, v] : body.items()) {
    const std::string key = section + "." + name;
    if (key == "precision.l_value") c.l_target = number_at(v, key);
    else if (key == "precision.quadrature") c.quadrature_tol = number_at(v, key);
    else if (key == "grid.t_min") c.grid.t_min = number_at(v, key);
    else if (key == "grid.t_max") c.grid.t_max = number_at(v, key);
    else if (key == "grid.step") c.grid.step = number_at(v, key);
    else if (key == "grid.moduli") {
      if (!v.is_array()) throw ConfigError(key, "expected an array of integers");
      c.grid.moduli.clear();
      for (const auto& m : v) c.grid.moduli.push_back(static_cast<int>(integer_at(m, key)));
    } else if (key == "zeros.height") c.zero_height = number_at(v, key);
    else if (key == "zeros.window") c.zero_window = number_at(v, key);
    else if (key == "zeros.cache") c.zero_cache = string_at(v, key);
    else if (key == "audit.method") c.audit_method = string_at(v, key);
    else if (key == "audit.checkpoints") c.audit_checkpoints = static_cast<int>(integer_at(v, key));
    else if (key == "audit.threads") {
      const long n = integer_at(v, key);
      if (n < 1) throw ConfigError(key, "must be >= 1");
      c.threads = static_cast<unsigned>(n);
    } else if (key == "output.format") c.format = string_at(v, key);
    else throw ConfigError(key, "unknown key");
  }
}

void apply_env(RunConfig& c, const std::map<std::string, std::string>& env) {
  if (auto it = env.find("SARG_ZERO_CACHE"); it != env.end() && !it->second.empty()) c.zero_cache = it->second;
  if (auto it = env.find("SARG_SEED"); it != env.end() && !it->second.empty()) {
    c.seed = parse_seed(it->second, "SARG_SEED");
  }
}

}  // namespace

RunConfig::RunConfig() {
  for (int q = 3; q <= 50; ++q) grid.moduli.push_back(q);
}

void RunConfig::validate() const {
  if (!(l_target > 0.0)) throw ConfigError("precision.l_value", "must be positive");
  if (!(quadrature_tol > 0.0)) throw ConfigError("precision.quadrature", "must be positive");
  if (!(grid.step > 0.0)) throw ConfigError("grid.step", "must be positive");
  if (!(grid.t_min >= 2.0)) throw ConfigError("grid.t_min", "must be >= 2");
  if (!(grid.t_max >= grid.t_min)) throw ConfigError("grid.t_max", "must be >= grid.t_min");
  if (grid.moduli.empty()) throw ConfigError("grid.moduli", "must not be empty");
  for (int q : grid.moduli) {
    if (q < 3) throw ConfigError("grid.moduli", "moduli must be >= 3");
  }
  if (!(zero_height > 0.0 && zero_height <= 200.0)) throw ConfigError("zeros.height", "must lie in (0, 200]");
  if (!(zero_window > 0.0)) throw ConfigError("zeros.window", "must be positive");
  if (audit_method != "continuation" && audit_method != "direct") {
    throw ConfigError("audit.method", "expected 'continuation' or 'direct'");
  }
  if (audit_checkpoints < 0) throw ConfigError("audit.checkpoints", "must be >= 0");
  if (threads < 1) throw ConfigError("audit.threads", "must be >= 1");
  if (format != "csv" && format != "json") throw ConfigError("output.format", "expected 'csv' or 'json'");
  if (zero_cache.empty()) throw ConfigError("zeros.cache", "must not be empty");
  std::error_code ec;
  if (std::filesystem::exists(zero_cache, ec) && !std::filesystem::is_directory(zero_cache, ec)) {
    throw ConfigError("zeros.cache", "exists and is not a directory: " + zero_cache.string());
  }
}

nlohmann::json RunConfig::to_json() const {
  return {{"precision", {{"l_value", l_target}, {"quadrature", quadrature_tol}}},
          {"grid", {{"moduli", grid.moduli}, {"t_min", grid.t_min}, {"t_max", grid.t_max}, {"step", grid.step}}},
          {"zeros", {{"cache", zero_cache.string()}, {"height", zero_height}, {"window", zero_window}}},
          {"audit", {{"method", audit_method}, {"checkpoints", audit_checkpoints}, {"threads", threads}}},
          {"output", {{"format", format}}},
          {"seed", seed}};
}

RunConfig parse_config_text(const std::string& json_text, const std::map<std::string, std::string>& env) {
  RunConfig c;
  bool blank = json_text.find_first_not_of(" \t\r\n") == std::string::npos;
  if (!blank) {
    json doc;
    try {
      doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
      throw ConfigError("<file>", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("<file>", "top level must be an object");
    for (const auto& [name, v] : doc.items()) {
      if (name == "seed") {
        if (v.is_number_unsigned()) c.seed = v.get<std::uint64_t>();
        else if (v.is_number_integer()) throw ConfigError("seed", "must be non-negative");
        else throw ConfigError("seed", "expected an integer");
      } else if (name == "precision" || name == "grid" || name == "zeros" || name == "audit" || name == "output") {
        apply_section(c, name, v);
      } else {
        throw ConfigError(name, "unknown key");
      }
    }
  }
  apply_env(c, env);
  c.validate();
  return c;
}

RunConfig parse_config(const std::optional<std::filesystem::path>& file,
                       const std::map<std::string, std::string>& env) {
  std::string text;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw ConfigError("<file>", "cannot read " + file->string());
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse_config_text(text, env);
}

RunConfig parse_config(const std::optional<std::filesystem::path>& file) {
  std::map<std::string, std::string> env;
  for (const char* name : {"SARG_ZERO_CACHE", "SARG_SEED"}) {
    if (const char* v = std::getenv(name)) env[name] = v;
  }
  return parse_config(file, env);
}

}  // namespace sarg
