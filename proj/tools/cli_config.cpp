#include "cli_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace chebbern::cli {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

const std::vector<std::string> kKnownKeys = {
    "kind", "degree", "lambdas", "b",     "interval", "f0",  "f1",
    "experiment", "f", "g", "order",      "trials",   "grid", "seed", "out"};

double parse_double(const std::string& text, const std::string& key) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' has a malformed number: " + text);
  }
}

// "name" or "name:argument"
std::pair<std::string, std::optional<double>> parse_selector(const std::string& text,
                                                             const std::string& key) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return {text, std::nullopt};
  return {text.substr(0, colon), parse_double(text.substr(colon + 1), key)};
}

FunctionDescriptor descriptor_from_selector(const std::string& selector,
                                            const std::string& key) {
  const auto [name, arg] = parse_selector(selector, key);
  if (name == "one") return FunctionDescriptor::constant(1.0);
  if (name == "identity") return FunctionDescriptor::monomial(1);
  if (name == "power") {
    if (!arg || *arg < 1.0 || *arg != std::floor(*arg))
      throw ConfigError("selector 'power:J' needs a positive integer J");
    return FunctionDescriptor::monomial(static_cast<int>(*arg));
  }
  if (name == "exp") {
    if (!arg) throw ConfigError("selector 'exp:L' needs an exponent L");
    return FunctionDescriptor::exp_monomial(0, *arg);
  }
  throw ConfigError("unknown function selector '" + selector + "' for key '" + key + "'");
}

}  // namespace

std::string Config::get(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw ConfigError("missing required config key '" + key + "'");
  return it->second;
}

std::string Config::get_or(const std::string& key, const std::string& fallback) const {
  const auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

int Config::get_int_or(const std::string& key, int fallback) const {
  const auto it = values.find(key);
  if (it == values.end()) return fallback;
  const double v = parse_double(it->second, key);
  if (v != std::floor(v)) throw ConfigError("config key '" + key + "' must be an integer");
  return static_cast<int>(v);
}

long Config::get_long_or(const std::string& key, long fallback) const {
  const auto it = values.find(key);
  if (it == values.end()) return fallback;
  return static_cast<long>(parse_double(it->second, key));
}

double Config::get_double(const std::string& key) const { return parse_double(get(key), key); }

std::vector<double> Config::get_double_list(const std::string& key) const {
  std::vector<double> out;
  std::stringstream ss(get(key));
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), key));
  if (out.empty()) throw ConfigError("config key '" + key + "' has an empty list");
  return out;
}

Config parse_config_text(const std::string& text) {
  Config config;
  std::stringstream ss(text);
  std::string line;
  int line_number = 0;
  while (std::getline(ss, line)) {
    ++line_number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_number) + " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (std::find(kKnownKeys.begin(), kKnownKeys.end(), key) == kKnownKeys.end())
      throw ConfigError("unknown config key '" + key + "'");
    if (config.values.count(key)) throw ConfigError("duplicate config key '" + key + "'");
    if (value.empty()) throw ConfigError("config key '" + key + "' has an empty value");
    config.values[key] = value;
  }
  return config;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

Interval interval_from_config(const Config& config) {
  if (config.get_or("kind", "") == "trig" && !config.has("interval"))
    return Interval(0.0, config.get_double("b"));
  if (!config.has("interval")) return Interval(0.0, 1.0);
  const auto ends = config.get_double_list("interval");
  if (ends.size() != 2) throw ConfigError("'interval' must be two comma-separated endpoints");
  if (!(ends[0] < ends[1])) throw ConfigError("'interval' endpoints must satisfy a < b");
  return Interval(ends[0], ends[1]);
}

ChebyshevSpace space_from_config(const Config& config) {
  const std::string kind = config.get("kind");
  if (kind == "polynomial") {
    const int degree = config.get_int_or("degree", -1);
    if (degree < 0) throw ConfigError("polynomial spaces need 'degree'");
    return make_polynomial_space(degree, interval_from_config(config));
  }
  if (kind == "exponential")
    return make_exponential_space(config.get_double_list("lambdas"),
                                  interval_from_config(config));
  if (kind == "trig") {
    const double b = config.get_double("b");
    const Interval iv = interval_from_config(config);
    if (iv.a != 0.0 || iv.b != b)
      throw ConfigError("trig spaces live on [0, b]; drop 'interval' or match it");
    return make_trig_space(b);
  }
  throw ConfigError("unknown space kind '" + kind + "'");
}

std::vector<ChebyshevSpace> chain_from_config(const Config& config) {
  const std::string kind = config.get("kind");
  const Interval iv = interval_from_config(config);
  std::vector<ChebyshevSpace> spaces;
  if (kind == "polynomial") {
    const int degree = config.get_int_or("degree", -1);
    if (degree < 1) throw ConfigError("a polynomial chain needs 'degree' >= 1");
    for (int n = 1; n <= degree; ++n) spaces.push_back(make_polynomial_space(n, iv));
    return spaces;
  }
  if (kind == "exponential") {
    const auto lambdas = config.get_double_list("lambdas");
    if (lambdas.size() < 2) throw ConfigError("an exponential chain needs >= 2 exponents");
    for (std::size_t top = 1; top < lambdas.size(); ++top)
      spaces.push_back(make_exponential_space(
          std::vector<double>(lambdas.begin(), lambdas.begin() + top + 1), iv));
    return spaces;
  }
  throw ConfigError("chains are defined for polynomial and exponential kinds only");
}

HaarPair pair_from_config(const Config& config) {
  const Interval iv = interval_from_config(config);
  if (!config.has("f0") && !config.has("f1") && config.get_or("kind", "") == "exponential") {
    // Canonical pair of the two smallest exponents: (e^{l0 x}, e^{l1 x}),
    // or (e^{l0 x}, x e^{l0 x}) when they coincide.
    auto lambdas = config.get_double_list("lambdas");
    std::sort(lambdas.begin(), lambdas.end());
    if (lambdas.size() < 2) throw ConfigError("an exponential pair needs >= 2 exponents");
    const double l0 = lambdas[0], l1 = lambdas[1];
    FunctionDescriptor f0 = FunctionDescriptor::exp_monomial(0, l0);
    FunctionDescriptor f1 = (l0 == l1) ? FunctionDescriptor::exp_monomial(1, l0)
                                       : FunctionDescriptor::exp_monomial(0, l1);
    return make_haar_pair(std::move(f0), std::move(f1), iv);
  }
  FunctionDescriptor f0 = descriptor_from_selector(config.get_or("f0", "one"), "f0");
  FunctionDescriptor f1 = descriptor_from_selector(config.get_or("f1", "identity"), "f1");
  try {
    return make_haar_pair(std::move(f0), std::move(f1), iv);
  } catch (const HaarViolation& e) {
    throw ConfigError(std::string("configured pair is not a Haar pair: ") + e.what());
  }
}

std::function<double(double)> test_function_from_config(const Config& config,
                                                        const Interval& interval) {
  const auto [name, arg] = parse_selector(config.get_or("f", "square"), "f");
  if (name == "square") return [](double x) { return x * x; };
  if (name == "cube") return [](double x) { return x * x * x; };
  if (name == "exp") return [](double x) { return std::exp(x); };
  if (name == "neg-exp") return [](double x) { return std::exp(-x); };
  if (name == "abs-mid") {
    const double mid = interval.midpoint();
    return [mid](double x) { return std::abs(x - mid); };
  }
  if (name == "power") {
    if (!arg || !(*arg > 0.0)) throw ConfigError("selector 'power:S' needs S > 0");
    if (interval.a < 0.0) throw ConfigError("'power:S' needs a non-negative interval");
    const double s = *arg;
    return [s](double x) { return std::pow(x, s); };
  }
  throw ConfigError("unknown test function '" + config.get("f") + "'");
}

FunctionDescriptor g_from_config(const Config& config) {
  const auto [name, arg] = parse_selector(config.get_or("g", "one"), "g");
  if (name == "one") return FunctionDescriptor::constant(1.0);
  if (name == "identity") return FunctionDescriptor::monomial(1);
  if (name == "shifted") {
    if (!arg) throw ConfigError("selector 'shifted:c' needs a shift c");
    return FunctionDescriptor::combination(
        {*arg, 1.0}, {FunctionDescriptor::constant(1.0), FunctionDescriptor::monomial(1)});
  }
  throw ConfigError("unknown g selector '" + config.get("g") + "'");
}

}  // namespace chebbern::cli
