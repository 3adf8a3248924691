#pragma once

// Key-value run configuration: `key = value` lines, `#` comments. Flags
// given on the command line are applied on top with set().

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "szeta/lfunc.hpp"

namespace szeta::cli {

class RunConfig {
 public:
  static RunConfig parse(const std::string& text);
  static RunConfig load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value) { values_[key] = value; }
  bool has(const std::string& key) const { return values_.count(key) != 0; }

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  /// Strictly positive real.
  double get_tolerance(const std::string& key, double fallback) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  /// Comma-separated, nonempty, strictly ascending.
  std::vector<double> get_doubles(const std::string& key, std::vector<double> fallback) const;
  std::vector<std::uint64_t> get_uints(const std::string& key, std::vector<std::uint64_t> fallback) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

/// `zeta`, `legendre:<p>`, `dirichlet:<q>:<k1,k2,...>` or `file:<path>`.
LFunctionDescriptor descriptor_from_spec(const std::string& spec);

/// start, start + step, ..., <= stop, as integer multiples of step.
std::vector<double> arithmetic_grid(double start, double stop, double step);

}  // namespace szeta::cli
