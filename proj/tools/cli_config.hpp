#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chebbern/chebbern.hpp"

namespace chebbern::cli {

class ConfigError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Flat key = value experiment description. Lines starting with '#' and
/// blank lines are ignored; keys are unique.
struct Config {
  std::map<std::string, std::string> values;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  std::string get(const std::string& key) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;
  int get_int_or(const std::string& key, int fallback) const;
  long get_long_or(const std::string& key, long fallback) const;
  double get_double(const std::string& key) const;
  std::vector<double> get_double_list(const std::string& key) const;
};

Config parse_config_text(const std::string& text);
Config load_config(const std::string& path);

/// Space described by the config: kind plus degree / exponent list / trig
/// length, over the configured interval.
ChebyshevSpace space_from_config(const Config& config);

/// Nested chain ending at the configured space: polynomial degrees 1..n, or
/// prefixes of the exponent list.
std::vector<ChebyshevSpace> chain_from_config(const Config& config);

/// The pair fixed by the operator. Defaults to (1, x); exponential configs
/// default to the canonical pair of the two smallest exponents.
HaarPair pair_from_config(const Config& config);

/// Named test function for the shape experiments (key "f").
std::function<double(double)> test_function_from_config(const Config& config,
                                                        const Interval& interval);

/// Reference function g for the monotonicity experiment (key "g").
FunctionDescriptor g_from_config(const Config& config);

Interval interval_from_config(const Config& config);

}  // namespace chebbern::cli
