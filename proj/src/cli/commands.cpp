#include "szeta/cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <map>

#include "szeta/bounds.hpp"
#include "szeta/error.hpp"
#include "szeta/explicit_formula.hpp"
#include "szeta/extremal.hpp"

namespace szeta::cli {

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

namespace {

std::string spec_of(const RunConfig& cfg) { return cfg.get_string("l", "zeta"); }

std::filesystem::path cache_dir(const RunConfig& cfg) {
  return cfg.get_string("cache", ".szeta-cache");
}

void check_positive(const std::vector<double>& xs, const char* key) {
  for (double x : xs) {
    if (!(x > 0.0)) throw ConfigError(std::string("config: every ") + key + " must be positive");
  }
}

}  // namespace

ZeroSet zeros_for(const RunConfig& cfg, const LFunctionDescriptor& d, double height) {
  if (cfg.has("zeros")) return ingest_zeros(cfg.get_string("zeros", ""), d);
  const auto dir = cache_dir(cfg);
  if (auto cached = read_zero_cache(zero_cache_path(dir, d), d); cached && cached->complete_to >= height) {
    return *cached;
  }
  if (cfg.get_bool("compute", false)) return load_or_find_zeros(d, height, dir);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", height);
  throw ConfigError("no zero table reaching height " + std::string(buf) + " for '" + spec_of(cfg) +
                    "' in " + zero_cache_path(dir, d).string() +
                    ". Produce one with `szeta find-zeros --l " + spec_of(cfg) + " --height " + buf +
                    " --cache " + dir.string() + "`, ingest a published table with `szeta ingest-zeros --l " +
                    spec_of(cfg) + " --zeros <file> --cache " + dir.string() +
                    "`, or pass --zeros <file> / --set compute=true");
}

int cmd_verify_extremal(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto ts = cfg.get_doubles("ts", {1, 10, 100});
  const auto deltas = cfg.get_doubles("deltas", {1, 2, 4, 8});
  check_positive(ts, "t");
  check_positive(deltas, "delta");
  const auto samples = cfg.get_uint("samples", 100000);
  const double tol = cfg.get_tolerance("tol", 1e-4);

  out << "property,sign,t,delta,value,target,pass\n";
  bool ok = true;
  auto row = [&](const char* prop, Bound b, double t, double delta, double value, double target, bool pass) {
    out << prop << ',' << (b == Bound::Majorant ? '+' : '-') << ',' << csv_number(t) << ','
        << csv_number(delta) << ',' << csv_number(value) << ',' << csv_number(target) << ','
        << (pass ? 1 : 0) << '\n';
    ok = ok && pass;
  };
  for (Bound b : {Bound::Minorant, Bound::Majorant}) {
    for (double delta : deltas) {
      double lo = INFINITY, hi = -INFINITY;
      for (double t : ts) {
        const SelbergSystem sys(t, delta, b);
        const auto maj = check_majorization(sys, samples);
        row("majorization_violations", b, t, delta, static_cast<double>(maj.violations), 0.0, maj.violations == 0);
        const double l1 = l1_defect(sys).value;
        lo = std::min(lo, l1);
        hi = std::max(hi, l1);
        row("l1_distance", b, t, delta, l1, 1.0 / delta, std::abs(l1 * delta - 1.0) <= tol);
        const double growth = growth_constant(sys);
        row("growth_constant", b, t, delta, growth, NAN, std::isfinite(growth));
        const double decay = decay_constant(sys);
        row("decay_constant", b, t, delta, decay, NAN, std::isfinite(decay));
        const double leak = fourier_support_leak(sys);
        row("fourier_leak_beyond_delta", b, t, delta, leak, 0.0, leak == 0.0);
        const double sine = fourier_sine_constant(sys);
        row("fourier_sine_constant", b, t, delta, sine, NAN, std::isfinite(sine));
      }
      row("l1_t_spread", b, NAN, delta, (hi - lo) * delta, tol, (hi - lo) * delta < tol);
    }
  }
  if (!ok) log << "verify-extremal: property violation\n";
  return ok ? kExitOk : kExitViolation;
}

int cmd_explicit_formula(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto d = descriptor_from_spec(spec_of(cfg));
  const double height = cfg.get_tolerance("height", 500.0);
  const std::string catalogue = cfg.get_string("catalogue", "gaussian");
  if (catalogue != "gaussian" && catalogue != "selberg" && catalogue != "all") {
    throw ConfigError("config: catalogue must be gaussian, selberg or all");
  }
  std::vector<TestFunction> tests;
  if (catalogue != "selberg") {
    const double width = cfg.get_tolerance("width", 1.0);
    for (double c : cfg.get_doubles("centers", {10, 20, 30, 40, 50})) tests.push_back(gaussian_test(c, width));
  }
  if (catalogue != "gaussian") {
    const auto ts = cfg.get_doubles("selberg_t", {20});
    const auto deltas = cfg.get_doubles("deltas", {0.5, 1, 2});
    check_positive(ts, "selberg_t");
    check_positive(deltas, "delta");
    for (double t : ts) {
      for (double delta : deltas) {
        for (Bound b : {Bound::Minorant, Bound::Majorant}) tests.push_back(selberg_test(SelbergSystem(t, delta, b)));
      }
    }
  }
  const auto zs = zeros_for(cfg, d, height);
  FormulaOptions fo;
  fo.prime_tol = cfg.get_tolerance("prime_tol", fo.prime_tol);
  const bool check = cfg.has("tol");
  const double tol = cfg.get_tolerance("tol", 1.0);

  out << report_csv_header() << '\n';
  bool ok = true;
  for (const auto& h : tests) {
    const auto rep = evaluate_formula(d, zs, h, 0.0, fo);
    out << report_csv_row(h.name, rep) << '\n';
    if (check && !(std::abs(rep.residual) <= tol)) {
      log << "explicit-formula: residual " << std::abs(rep.residual) << " above " << tol << " for " << h.name << '\n';
      ok = false;
    }
  }
  return ok ? kExitOk : kExitViolation;
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto d = descriptor_from_spec(spec_of(cfg));
  const double step = cfg.get_tolerance("t_step", 0.1);
  const double start = cfg.get_tolerance("t_start", step);
  const double stop = cfg.get_tolerance("t_stop", 100.0);
  const auto grid = arithmetic_grid(start, stop, step);
  const double height = cfg.get_tolerance("height", 1000.0);
  ScanOptions so;
  so.workers = static_cast<unsigned>(std::max<std::uint64_t>(1, cfg.get_uint("workers", 1)));
  so.sandwich_delta = cfg.get_tolerance("sandwich_delta", 1.0);
  so.envelope.conductor_exponent = cfg.get_double("conductor_exponent", 3.0);
  if (!(so.envelope.conductor_exponent > std::exp(1.0))) {
    throw ConfigError("config: conductor_exponent must exceed e");
  }
  const bool kernel = cfg.get_bool("kernel", true);

  const auto zs = zeros_for(cfg, d, height);
  const auto reports = scan_s_bound(d, zs, grid, so);
  std::vector<KernelSumReport> ks;
  if (kernel) ks = kernel_sum_check(d, zs, grid, so.workers);

  out << "t,S,envelope,slack,tuned_delta,delta,count,sandwich_lower,sandwich_upper,partial_lower,"
         "partial_upper,tail_bound,kernel_sum,discrepancy\n";
  bool ok = true;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    const double kv = kernel ? ks[i].kernel_sum : NAN;
    const double kd = kernel ? ks[i].discrepancy : NAN;
    for (double v : {r.t, r.s_value, r.envelope, r.slack, r.tuned_delta, r.delta_used, r.count,
                     r.sandwich_lower, r.sandwich_upper, r.partial_lower, r.partial_upper, r.tail_bound, kv}) {
      out << csv_number(v) << ',';
    }
    out << csv_number(kd) << '\n';
    if (r.sandwich_ran && !(r.partial_lower <= r.count && r.count <= r.partial_upper)) {
      log << "scan: sandwich violated at t = " << r.t << '\n';
      ok = false;
    }
  }
  return ok ? kExitOk : kExitViolation;
}

int cmd_lowest_zero(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto qs = cfg.get_uints("q", {101, 997});
  EnvelopeOptions eo;
  eo.conductor_exponent = cfg.get_double("conductor_exponent", 3.0);
  out << "q,analytic_conductor,bound,allowance,actual,slack,holds,central_bound,central_actual,status\n";
  bool ok = true;
  for (auto q : qs) {
    if (q > DirichletCharacter::kMaxModulus) throw ConfigError("config: q too large");
    LFunctionDescriptor d;
    try {
      d = dirichlet_descriptor(DirichletCharacter::legendre(static_cast<std::uint32_t>(q)));
    } catch (const PreconditionError& e) {
      throw ConfigError(std::string("config: q = ") + std::to_string(q) + ": " + e.what());
    }
    out << q << ',' << csv_number(analytic_conductor(d)) << ',';
    try {
      ZeroSet zs;
      for (double h = 2.0; zs.ordinates.empty(); h *= 2.0) zs = find_zeros(d, h);
      const auto rep = lowest_zero_bound(d, zs, eo);
      const auto co = central_order_bound(d, eo);
      out << csv_number(rep.bound) << ',' << csv_number(rep.allowance) << ',' << csv_number(rep.actual) << ','
          << csv_number(rep.slack) << ',' << (rep.holds ? 1 : 0) << ',' << csv_number(co.bound) << ','
          << (co.actual ? std::to_string(*co.actual) : "nan") << ',' << (rep.holds ? "ok" : "exceeds") << '\n';
      if (!rep.holds) {
        log << "lowest-zero: q = " << q << " lowest ordinate " << rep.actual << " exceeds "
            << rep.bound + rep.allowance << '\n';
        ok = false;
      }
    } catch (const ThresholdError& e) {
      out << "nan,nan,nan,nan,0,nan,nan,below-threshold\n";
      log << "warning: q = " << q << ": " << e.what() << '\n';
    }
  }
  return ok ? kExitOk : kExitViolation;
}

int cmd_find_zeros(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  const auto d = descriptor_from_spec(spec_of(cfg));
  const double height = cfg.get_tolerance("height", 100.0);
  const auto zs = load_or_find_zeros(d, height, cache_dir(cfg));
  out << "index,ordinate\n";
  std::size_t i = 0;
  for (double g : zs.ordinates) {
    if (std::abs(g) > height) continue;
    out << ++i << ',' << csv_number(g) << '\n';
  }
  log << "find-zeros: " << i << " ordinates up to " << height << " (cache " << zero_cache_path(cache_dir(cfg), d).string()
      << ")" << (zs.completeness_uncertain ? ", completeness uncertain" : "") << '\n';
  return zs.completeness_uncertain ? kExitViolation : kExitOk;
}

int cmd_ingest_zeros(const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  if (!cfg.has("zeros")) throw ConfigError("ingest-zeros: --zeros <file> is required");
  const auto d = descriptor_from_spec(spec_of(cfg));
  const auto zs = ingest_zeros(cfg.get_string("zeros", ""), d);
  const auto dir = cache_dir(cfg);
  std::filesystem::create_directories(dir);
  const auto path = zero_cache_path(dir, d);
  write_zero_cache(path, zs);
  out << "descriptor,ordinates,complete_to,cache\n"
      << descriptor_hash(d) << ',' << zs.ordinates.size() << ',' << csv_number(zs.complete_to) << ','
      << path.string() << '\n';
  log << "ingest-zeros: " << zs.ordinates.size() << " ordinates cross-checked and cached\n";
  return kExitOk;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"verify-extremal", "explicit-formula", "scan",
                                                 "lowest-zero", "find-zeros", "ingest-zeros"};
  return names;
}

int run_command(const std::string& name, const RunConfig& cfg, std::ostream& out, std::ostream& log) {
  using Fn = int (*)(const RunConfig&, std::ostream&, std::ostream&);
  static const std::map<std::string, Fn> table = {
      {"verify-extremal", cmd_verify_extremal}, {"explicit-formula", cmd_explicit_formula},
      {"scan", cmd_scan},                       {"lowest-zero", cmd_lowest_zero},
      {"find-zeros", cmd_find_zeros},           {"ingest-zeros", cmd_ingest_zeros}};
  const auto it = table.find(name);
  if (it == table.end()) {
    log << "unknown command '" << name << "'\n";
    return kExitInput;
  }
  try {
    return it->second(cfg, out, log);
  } catch (const MismatchError& e) {
    log << "error: " << e.what() << '\n';
    return kExitViolation;
  } catch (const Error& e) {
    log << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::filesystem::filesystem_error& e) {
    log << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace szeta::cli
