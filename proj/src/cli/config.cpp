#include "szeta/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "szeta/error.hpp"

namespace szeta::cli {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& key, const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("config: " + key + " = '" + s + "' is not a number");
  }
  if (used != s.size() || !std::isfinite(v)) {
    throw ConfigError("config: " + key + " = '" + s + "' is not a number");
  }
  return v;
}

std::uint64_t to_uint(const std::string& key, const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ConfigError("config: " + key + " = '" + s + "' is not a nonnegative integer");
  }
  try {
    return std::stoull(s);
  } catch (const std::exception&) {
    throw ConfigError("config: " + key + " = '" + s + "' is out of range");
  }
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("config: expected key = value", line);
    const std::string key = trim(s.substr(0, eq));
    if (key.empty()) throw ParseError("config: empty key", line);
    cfg.values_[key] = trim(s.substr(eq + 1));
  }
  return cfg;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

std::string RunConfig::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double RunConfig::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : to_double(key, it->second);
}

double RunConfig::get_tolerance(const std::string& key, double fallback) const {
  const double v = get_double(key, fallback);
  if (!(v > 0.0)) throw ConfigError("config: " + key + " must be positive");
  return v;
}

std::uint64_t RunConfig::get_uint(const std::string& key, std::uint64_t fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : to_uint(key, it->second);
}

bool RunConfig::get_bool(const std::string& key, bool fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw ConfigError("config: " + key + " must be true or false");
}

std::vector<double> RunConfig::get_doubles(const std::string& key, std::vector<double> fallback) const {
  const auto it = values_.find(key);
  std::vector<double> out;
  if (it == values_.end()) {
    out = std::move(fallback);
  } else {
    for (const auto& s : split(it->second, ',')) out.push_back(to_double(key, s));
  }
  if (out.empty()) throw ConfigError("config: " + key + " must not be empty");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] > out[i - 1])) throw ConfigError("config: " + key + " must be strictly ascending");
  }
  return out;
}

std::vector<std::uint64_t> RunConfig::get_uints(const std::string& key,
                                                std::vector<std::uint64_t> fallback) const {
  const auto it = values_.find(key);
  std::vector<std::uint64_t> out;
  if (it == values_.end()) {
    out = std::move(fallback);
  } else {
    for (const auto& s : split(it->second, ',')) out.push_back(to_uint(key, s));
  }
  if (out.empty()) throw ConfigError("config: " + key + " must not be empty");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (!(out[i] > out[i - 1])) throw ConfigError("config: " + key + " must be strictly ascending");
  }
  return out;
}

LFunctionDescriptor descriptor_from_spec(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.empty()) throw ConfigError("descriptor: empty specification");
  const std::string& kind = parts[0];
  try {
    if (kind == "zeta" && parts.size() == 1) return zeta_descriptor();
    if (kind == "legendre" && parts.size() == 2) {
      return dirichlet_descriptor(DirichletCharacter::legendre(static_cast<std::uint32_t>(to_uint("l", parts[1]))));
    }
    if (kind == "dirichlet" && parts.size() == 3) {
      const auto q = to_uint("l", parts[1]);
      if (q > DirichletCharacter::kMaxModulus) throw ConfigError("descriptor: modulus too large");
      std::vector<std::uint32_t> ks;
      for (const auto& s : split(parts[2], ',')) ks.push_back(static_cast<std::uint32_t>(to_uint("l", s)));
      return dirichlet_descriptor(DirichletCharacter(static_cast<std::uint32_t>(q), ks));
    }
    if (kind == "file" && parts.size() >= 2) {
      const std::string path = spec.substr(5);
      std::ifstream in(path);
      if (!in) throw ConfigError("descriptor: cannot read " + path);
      std::ostringstream text;
      text << in.rdbuf();
      return parse_descriptor(text.str());
    }
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("descriptor: ") + e.what());
  }
  throw ConfigError("descriptor: unknown specification '" + spec +
                    "' (expected zeta, legendre:<p>, dirichlet:<q>:<k,...> or file:<path>)");
}

std::vector<double> arithmetic_grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) throw ConfigError("grid: need step > 0 and stop >= start");
  const auto n = static_cast<std::size_t>(std::floor((stop - start) / step * (1.0 + 1e-12))) + 1;
  if (n > 10'000'000) throw ConfigError("grid: too many points");
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = start + static_cast<double>(k) * step;
  return out;
}

}  // namespace szeta::cli
