#include "cli_commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>

#include "CLI11.hpp"

namespace chebbern::cli {

namespace {

// 17 significant digits: enough to round-trip a double, and byte-stable for
// reproducible experiment diffs.
std::string fmt(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

const char* node_order_name(NodeOrder order) {
  switch (order) {
    case NodeOrder::strictly_increasing: return "strictly-increasing";
    case NodeOrder::nondecreasing: return "nondecreasing";
    default: return "nonmonotone";
  }
}

const char* verdict_name(ConvexityVerdict v) {
  switch (v) {
    case ConvexityVerdict::convex: return "convex";
    case ConvexityVerdict::concave: return "concave";
    case ConvexityVerdict::affine: return "affine";
    default: return "neither";
  }
}

const char* monotone_name(MonotoneVerdict v) {
  switch (v) {
    case MonotoneVerdict::g_increasing: return "g-increasing";
    case MonotoneVerdict::g_decreasing: return "g-decreasing";
    default: return "neither";
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // binary: no platform newline surprises
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  return out;
}

std::vector<double> uniform_grid(const Interval& iv, int size) {
  std::vector<double> xs(size);
  for (int g = 0; g < size; ++g) xs[g] = iv.a + iv.length() * g / (size - 1);
  xs.back() = iv.b;
  return xs;
}

double fixing_residual(const BernsteinOperator& op, const FunctionDescriptor& f, int grid) {
  double residual = 0.0;
  for (double x : uniform_grid(op.basis.space.interval(), grid))
    residual = std::max(residual,
                        std::abs(apply_operator(op, f, x) - f(x, 0)));
  return residual;
}

void describe_space(std::ofstream& out, const Config& config) {
  out << "# kind=" << config.get("kind");
  if (config.has("degree")) out << " degree=" << config.get("degree");
  if (config.has("lambdas")) out << " lambdas=" << config.get("lambdas");
  if (config.has("b")) out << " b=" << config.get("b");
  const Interval iv = interval_from_config(config);
  out << " interval=[" << fmt(iv.a) << "," << fmt(iv.b) << "]\n";
}

void write_operator_rows(std::ofstream& out, const BernsteinOperator& op,
                         const std::string& prefix = "") {
  for (std::size_t k = 0; k < op.nodes.size(); ++k)
    out << prefix << k << "," << fmt(op.nodes[k]) << "," << fmt(op.weights[k]) << "\n";
}

void shape_majorization(const Options& options, std::ofstream& out) {
  auto pair = pair_from_config(options.config);
  auto op = build_operator(build_bernstein_basis(space_from_config(options.config)), pair);
  auto f = test_function_from_config(options.config, pair.interval);

  out << "x,f,Bf\n";
  double scale = 0.0;
  for (double x : uniform_grid(pair.interval, options.grid)) scale = std::max(scale, std::abs(f(x)));
  auto maj = verify_majorization(op, f, options.grid);
  for (double x : uniform_grid(pair.interval, options.grid))
    out << fmt(x) << "," << fmt(f(x)) << "," << fmt(apply_operator(op, f, x)) << "\n";
  out << "# min_difference=" << fmt(maj.min_difference) << " at x=" << fmt(maj.argmin) << "\n";
  out << "# verdict = " << (maj.min_difference >= -1e-8 * std::max(scale, 1.0) ? "majorized"
                                                                               : "not-majorized")
      << "\n";
}

void shape_monotone_sequence(const Options& options, std::ofstream& out) {
  auto pair = pair_from_config(options.config);
  auto chain = build_chain(chain_from_config(options.config), pair);
  auto f = test_function_from_config(options.config, pair.interval);
  const auto xs = uniform_grid(pair.interval, options.grid);

  out << "x,f";
  for (const auto& op : chain.operators) out << ",B" << op.degree() << "f";
  out << "\n";

  double scale = 0.0;
  for (double x : xs) scale = std::max(scale, std::abs(f(x)));
  double min_consecutive = 0.0, min_above = 0.0;
  for (double x : xs) {
    out << fmt(x) << "," << fmt(f(x));
    double previous = 0.0;
    for (std::size_t level = 0; level < chain.operators.size(); ++level) {
      const double value = apply_operator(chain.operators[level], f, x);
      out << "," << fmt(value);
      if (level > 0) min_consecutive = std::min(min_consecutive, previous - value);
      if (level + 1 == chain.operators.size()) min_above = std::min(min_above, value - f(x));
      previous = value;
    }
    out << "\n";
  }
  const double tol = 1e-8 * std::max(scale, 1.0);
  out << "# min(B_n f - B_{n+1} f)=" << fmt(min_consecutive) << "\n";
  out << "# min(B_top f - f)=" << fmt(min_above) << "\n";
  out << "# verdict = " << (min_consecutive >= -tol && min_above >= -tol ? "monotone" : "violated")
      << "\n";
}

void shape_arama(const Options& options, std::ofstream& out) {
  auto pair = pair_from_config(options.config);
  auto chain = build_chain(chain_from_config(options.config), pair);
  if (chain.operators.size() < 2) throw ConfigError("the decomposition needs a chain of depth 2");
  const auto& lo = chain.operators[chain.operators.size() - 2];
  const auto& hi = chain.operators.back();
  auto f = test_function_from_config(options.config, pair.interval);

  auto arama = arama_decomposition(lo, hi, f);
  out << "x,f,B" << lo.degree() << "f,B" << hi.degree() << "f\n";
  double scale = 0.0;
  for (double x : uniform_grid(pair.interval, options.grid)) {
    out << fmt(x) << "," << fmt(f(x)) << "," << fmt(apply_operator(lo, f, x)) << ","
        << fmt(apply_operator(hi, f, x)) << "\n";
    scale = std::max(scale, std::abs(f(x)));
  }
  out << "# G =";
  for (double g : arama.g_values) out << " " << fmt(g);
  out << "\n# residual=" << fmt(arama.residual) << "\n";
  out << "# verdict = "
      << (arama.residual < 1e-8 * std::max(scale, 1.0) ? "identity-holds" : "identity-violated")
      << "\n";
}

void shape_preserve_convexity(const Options& options, std::ofstream& out) {
  auto pair = pair_from_config(options.config);
  auto op = build_operator(build_bernstein_basis(space_from_config(options.config)), pair);
  auto f = test_function_from_config(options.config, pair.interval);

  out << "x,f,Bf\n";
  for (double x : uniform_grid(pair.interval, options.grid))
    out << fmt(x) << "," << fmt(f(x)) << "," << fmt(apply_operator(op, f, x)) << "\n";

  const auto before = is_convex_sampled(pair, f, options.grid > 65 ? 65 : options.grid,
                                        options.seed);
  const auto after = verify_convexity_preservation(op, pair, f,
                                                   options.grid > 65 ? 65 : options.grid, true);
  auto summarize = [&out](const char* label, const ConvexityReport& report) {
    out << "# " << label << " = {\"verdict\": \"" << verdict_name(report.verdict)
        << "\", \"min_det\": " << fmt(report.min_det)
        << ", \"triples_checked\": " << report.triples_checked;
    if (report.witness) {
      const auto& w = *report.witness;
      out << ", \"witness\": [" << fmt(w[0]) << ", " << fmt(w[1]) << ", " << fmt(w[2]) << "]";
    }
    out << "}\n";
  };
  out << "# node_order=" << node_order_name(op.node_order) << "\n";
  summarize("f_summary", before);
  summarize("Bf_summary", after);
  out << "# verdict = "
      << (before.verdict != ConvexityVerdict::convex || after.verdict == ConvexityVerdict::convex
              ? "preserved"
              : "not-preserved")
      << "\n";
}

void shape_preserve_monotone(const Options& options, std::ofstream& out) {
  auto pair = pair_from_config(options.config);
  auto op = build_operator(build_bernstein_basis(space_from_config(options.config)), pair);
  auto f = test_function_from_config(options.config, pair.interval);
  auto g = g_from_config(options.config);

  out << "x,f,Bf\n";
  for (double x : uniform_grid(pair.interval, options.grid))
    out << fmt(x) << "," << fmt(f(x)) << "," << fmt(apply_operator(op, f, x)) << "\n";

  const auto before = is_g_monotone_sampled(g, f, pair.interval, options.grid);
  const auto after = is_g_monotone_sampled(
      g, [&](double x) { return apply_operator(op, f, x); }, pair.interval, options.grid);
  out << "# f verdict: " << monotone_name(before) << "\n";
  out << "# Bf verdict: " << monotone_name(after) << "\n";
  out << "# verdict = "
      << (before == MonotoneVerdict::neither || after == before ? "preserved" : "not-preserved")
      << "\n";
}

void shape_trig_counterexample(const Options& options, std::ofstream& out) {
  if (options.config.get("kind") != "trig")
    throw ConfigError("the counterexample experiment needs kind = trig");
  const double b = options.config.get_double("b");
  auto report = trig_counterexample(b);

  auto pair = pair_from_config(options.config);
  auto op = build_operator(build_bernstein_basis(space_from_config(options.config)), pair);
  auto f = [&report](double x) { return (x - report.t1) * (x - report.t2); };

  out << "x,f,Bf\n";
  for (double x : uniform_grid(pair.interval, options.grid))
    out << fmt(x) << "," << fmt(f(x)) << "," << fmt(apply_operator(op, f, x)) << "\n";
  out << "# t1=" << fmt(report.t1) << " t2=" << fmt(report.t2) << "\n";
  out << "# second_derivative_at_zero=" << fmt(report.curvature_at_zero)
      << " (sin b=" << fmt(std::sin(b)) << ")\n";
  out << "# Bf verdict: " << verdict_name(report.verdict) << "\n";
  out << "# verdict = "
      << (report.verdict == ConvexityVerdict::convex ? "convex" : "not convex") << "\n";
}

void shape_sign_consistency(const Options& options, std::ofstream& out) {
  auto basis = build_bernstein_basis(space_from_config(options.config));
  const int order = options.config.get_int_or("order", 2);
  const long trials = options.config.get_long_or("trials", 1000);
  auto report = sign_consistency_sampled(basis, order, trials, options.seed);

  out << "order,trials,min_det,min_det_normalized\n";
  out << report.order << "," << report.trials << "," << fmt(report.min_det) << ","
      << fmt(report.min_det_normalized) << "\n";
  if (report.witness_points) {
    out << "# witness points:";
    for (double x : *report.witness_points) out << " " << fmt(x);
    out << "\n# witness indices:";
    for (int k : *report.witness_indices) out << " " << k;
    out << "\n";
  }
  out << "# verdict = "
      << (report.min_det_normalized >= -1e-10 ? "sign-consistent" : "sign-violated") << "\n";
}

}  // namespace

void cmd_build(const Options& options) {
  auto pair = pair_from_config(options.config);
  auto op = build_operator(build_bernstein_basis(space_from_config(options.config)), pair);

  auto out = open_output(options.out_path);
  out << "# chebbern build\n";
  describe_space(out, options.config);
  out << "# node_order=" << node_order_name(op.node_order) << "\n";
  out << "# fixing_residual_f0=" << fmt(fixing_residual(op, pair.f0, options.grid)) << "\n";
  out << "# fixing_residual_f1=" << fmt(fixing_residual(op, pair.f1, options.grid)) << "\n";
  out << "k,t_k,alpha_k\n";
  write_operator_rows(out, op);

  if (!options.basis_out_path.empty()) {
    auto basis_out = open_output(options.basis_out_path);
    basis_out << "# chebbern basis (row k: coordinates of basis function k in the raw basis)\n";
    basis_out << "k";
    for (std::size_t j = 0; j < op.basis.space.dimension(); ++j) basis_out << ",c" << j;
    basis_out << "\n";
    for (std::size_t k = 0; k < op.basis.coeffs.size(); ++k) {
      basis_out << k;
      for (double c : op.basis.coeffs[k]) basis_out << "," << fmt(c);
      basis_out << "\n";
    }
  }
}

void cmd_chain(const Options& options) {
  auto pair = pair_from_config(options.config);
  auto chain = build_chain(chain_from_config(options.config), pair);

  auto out = open_output(options.out_path);
  out << "# chebbern chain\n";
  describe_space(out, options.config);
  out << "# levels=1.." << chain.operators.back().degree() << "\n";
  out << "level,k,t_k,alpha_k\n";
  for (const auto& op : chain.operators)
    write_operator_rows(out, op, std::to_string(op.degree()) + ",");

  const double gap_tol = 1e-10 * pair.interval.length();
  out << "# interlacing matrix (level vs previous level, 1 = strict)\n";
  out << "level,k,strict\n";
  for (std::size_t level = 1; level < chain.operators.size(); ++level) {
    const auto& prev = chain.operators[level - 1].nodes;
    const auto& cur = chain.operators[level].nodes;
    for (std::size_t k = 1; k + 1 < cur.size(); ++k) {
      const bool strict = cur[k] - prev[k - 1] > gap_tol && prev[k] - cur[k] > gap_tol;
      out << chain.operators[level].degree() << "," << k << "," << (strict ? 1 : 0) << "\n";
    }
  }
}

void cmd_shape(const Options& options) {
  const std::string experiment = options.config.get("experiment");
  auto out = open_output(options.out_path);
  out << "# chebbern shape experiment=" << experiment << " seed=" << options.seed
      << " grid=" << options.grid << "\n";
  describe_space(out, options.config);

  if (experiment == "majorization") return shape_majorization(options, out);
  if (experiment == "monotone-sequence") return shape_monotone_sequence(options, out);
  if (experiment == "arama") return shape_arama(options, out);
  if (experiment == "preserve-convexity") return shape_preserve_convexity(options, out);
  if (experiment == "preserve-monotone") return shape_preserve_monotone(options, out);
  if (experiment == "trig-counterexample") return shape_trig_counterexample(options, out);
  if (experiment == "sign-consistency") return shape_sign_consistency(options, out);
  throw ConfigError("unknown experiment '" + experiment + "'");
}

void cmd_trig_scan(double bmin, double bmax, int count, const std::string& out_path) {
  if (!(bmin > 0.0) || !(bmax < 2.0 * std::numbers::pi) || !(bmin < bmax) || count < 2)
    throw ConfigError("trig-scan needs 0 < bmin < bmax < 2*pi and at least two samples");
  auto out = open_output(out_path);
  out << "# chebbern trig-scan\n";
  out << "# rho0=" << fmt(rho0()) << "\n";
  out << "b,exists,regime,t0,t1,t2,t3,w0,w1,w2,w3\n";
  for (int i = 0; i < count; ++i) {
    const double b = bmin + (bmax - bmin) * i / (count - 1);
    const auto r = trig_case(b);
    out << fmt(b) << "," << (r.exists ? 1 : 0) << ",";
    switch (r.regime) {
      case TrigRegime::strict_increasing: out << "strict-increasing"; break;
      case TrigRegime::coalesced: out << "coalesced"; break;
      case TrigRegime::reversed: out << "reversed"; break;
      case TrigRegime::nonexistent: out << "nonexistent"; break;
    }
    if (r.exists) {
      for (double t : *r.nodes) out << "," << fmt(t);
      for (double w : *r.weights) out << "," << fmt(w);
    } else {
      out << ",,,,,,,,";
    }
    out << "\n";
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& err) {
  CLI::App app{"generalized Bernstein operators on extended Chebyshev spaces"};
  app.require_subcommand(1);

  std::string config_path, out_path, basis_out_path;
  unsigned seed = 0;
  int grid = 257;
  double bmin = 0.2, bmax = 6.2;
  int scan_count = 61;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* opt = cmd->add_option("--config", config_path, "experiment config file");
    if (needs_config) opt->required();
    cmd->add_option("--out", out_path, "output CSV path");
    cmd->add_option("--seed", seed, "seed for sampled checks");
    cmd->add_option("--grid", grid, "grid size for sampled checks");
  };
  auto* build = app.add_subcommand("build", "build one operator and emit nodes/weights");
  add_common(build, true);
  build->add_option("--basis-out", basis_out_path, "also emit basis coefficient rows");
  auto* chain = app.add_subcommand("chain", "build a nested chain and report interlacing");
  add_common(chain, true);
  auto* shape = app.add_subcommand("shape", "run a shape-preservation experiment");
  add_common(shape, true);
  auto* scan = app.add_subcommand("trig-scan", "sweep the trig space length b");
  scan->add_option("--bmin", bmin, "smallest b");
  scan->add_option("--bmax", bmax, "largest b");
  scan->add_option("--grid", scan_count, "number of b samples");
  scan->add_option("--out", out_path, "output CSV path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kOk;  // --help
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }

  try {
    Options options;
    if (!config_path.empty()) options.config = load_config(config_path);
    options.basis_out_path = basis_out_path;
    options.seed = seed;
    options.grid = grid;
    if (options.grid < 3) throw ConfigError("--grid must be at least 3");
    options.out_path = !out_path.empty() ? out_path : options.config.get_or("out", "out.csv");
    if (options.config.has("seed") && seed == 0)
      options.seed = static_cast<unsigned>(options.config.get_long_or("seed", 0));
    if (options.config.has("grid") && grid == 257)
      options.grid = options.config.get_int_or("grid", 257);

    if (build->parsed()) cmd_build(options);
    if (chain->parsed()) cmd_chain(options);
    if (shape->parsed()) cmd_shape(options);
    if (scan->parsed()) cmd_trig_scan(bmin, bmax, scan_count, options.out_path);
    return kOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const Nonexistence& e) {
    err << "nonexistence: " << e.what() << "\n";
    return kNonexistence;
  } catch (const NotECT& e) {
    err << "not an extended Chebyshev space: " << e.what() << "\n";
    return kNotEct;
  } catch (const InterlacingViolation& e) {
    err << "interlacing violation: " << e.what() << "\n";
    return kInterlacingViolation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
}

}  // namespace chebbern::cli
