#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "szeta/bounds.hpp"
#include "szeta/cli/commands.hpp"
#include "szeta/error.hpp"
#include "szeta/explicit_formula.hpp"

using namespace szeta;

namespace {

constexpr double kExtremalSeconds = 60.0;
constexpr double kFormulaSeconds = 120.0;
constexpr double kGaussianResidual = 1e-6;
constexpr double kSelbergResidual = 1e-4;
constexpr double kDirichletResidual = 1e-5;
constexpr double kFirstZeroTol = 1e-6;
constexpr double kTableTol = 1e-8;
constexpr double kCountingTol = 1e-5;
constexpr double kKernelSup = 2.0;
constexpr double kEnvelopeTol12 = 0.10;
constexpr double kEnvelopeTol24 = 0.03;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  std::printf("criterion %d: %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

void run(int id, const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool pass = false;
  try {
    pass = body(detail);
  } catch (const std::exception& e) {
    detail += std::string(" exception: ") + e.what();
  }
  report(id, pass, detail);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

const ZeroSet& zeta_zeros_1000() {
  static const ZeroSet zs = find_zeros(zeta_descriptor(), 1000.0);
  return zs;
}

std::filesystem::path temp_cache(const char* name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

int main() {
  run(1, [](std::string& d) {
    const auto start = Clock::now();
    std::ostringstream out, log;
    const int code = cli::run_command("verify-extremal", cli::RunConfig{}, out, log);
    const double secs = seconds_since(start);
    std::istringstream rows(out.str());
    std::string line;
    std::size_t n = 0, bad = 0;
    double sine = 0.0;
    std::getline(rows, line);
    while (std::getline(rows, line)) {
      ++n;
      if (line.back() == '0') ++bad;
      if (line.rfind("fourier_sine_constant", 0) == 0) {
        const auto cells = line.substr(0, line.rfind(','));
        sine = std::max(sine, std::stod(cells.substr(cells.rfind(',', cells.rfind(',') - 1) + 1)));
      }
    }
    d = std::to_string(n) + " property rows, " + std::to_string(bad) + " failing" + fmt(", sine constant %.4g", sine) +
        fmt(", %.1f s", secs);
    return code == cli::kExitOk && bad == 0 && n == 152 && secs < kExtremalSeconds;
  });

  run(2, [](std::string& d) {
    const auto start = Clock::now();
    const auto z = zeta_descriptor();
    const auto zs = find_zeros(z, 500.0);
    double worst_g = 0.0, worst_s = 0.0;
    for (double c : {10.0, 20.0, 30.0, 40.0, 50.0})
      worst_g = std::max(worst_g, std::abs(evaluate_formula(z, zs, gaussian_test(c, 1.0)).residual));
    for (auto [t, delta] : std::vector<std::pair<double, double>>{{10, 1}, {20, 1}, {30, 2}}) {
      const auto h = selberg_test(SelbergSystem(t, delta, Bound::Majorant));
      worst_s = std::max(worst_s, std::abs(evaluate_formula(z, zs, h).residual));
    }
    const auto c3 = dirichlet_descriptor(DirichletCharacter(3, {1}));
    const double r3 = std::abs(evaluate_formula(c3, find_zeros(c3, 500.0), gaussian_test(10.0, 1.0)).residual);
    const double secs = seconds_since(start);
    d = fmt("gaussian %.2e", worst_g) + fmt(", selberg %.2e", worst_s) + fmt(", mod 3 %.2e", r3) +
        fmt(", %.1f s", secs);
    return worst_g <= kGaussianResidual && worst_s <= kSelbergResidual && r3 <= kDirichletResidual &&
           secs < kFormulaSeconds;
  });

  run(3, [](std::string& d) {
    const auto z = zeta_descriptor();
    const auto zs = find_zeros(z, 100.0);
    const auto table = ingest_zeros(std::string(SZETA_TEST_DATA) + "/zeta_zeros_100.txt", z);
    double diff = 0.0;
    bool same_count = table.ordinates.size() == zs.ordinates.size();
    for (std::size_t i = 0; same_count && i < zs.ordinates.size(); ++i)
      diff = std::max(diff, std::abs(table.ordinates[i] - zs.ordinates[i]));
    const double first = zs.ordinates.empty() ? NAN : zs.ordinates.front();
    d = std::to_string(zs.ordinates.size()) + " zeros" + fmt(", first %.9f", first) + fmt(", table diff %.1e", diff);
    return zs.ordinates.size() == 29 && std::abs(first - 14.134725) <= kFirstZeroTol && same_count &&
           diff <= kTableTol;
  });

  run(4, [](std::string& d) {
    const auto z = zeta_descriptor();
    const auto zs = find_zeros(z, 101.0);
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> dist(0.0, 100.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double t = 100.0 - dist(rng);
      const double gap = count_positive(zs, t) - riemann_siegel_theta(t) / kPi - argument_s(z, t).value - 1.0;
      worst = std::max(worst, std::abs(gap));
    }
    d = fmt("max |N - theta/pi - S - 1| = %.2e", worst);
    return worst <= kCountingTol;
  });

  run(5, [](std::string& d) {
    const auto z = zeta_descriptor();
    std::vector<double> grid;
    for (int i = 1; i <= 200; ++i) grid.push_back(0.5 * i);
    bool bracket = true;
    std::vector<double> mean_gap;
    for (double delta : {1.0, 2.0, 4.0, 8.0}) {
      ScanOptions opt;
      opt.sandwich_delta = delta;
      double gap = 0.0;
      for (const auto& r : scan_s_bound(z, zeta_zeros_1000(), grid, opt)) {
        bracket = bracket && r.sandwich_ran && r.partial_lower <= r.count && r.count <= r.partial_upper &&
                  r.sandwich_lower <= r.count && r.count <= r.sandwich_upper;
        gap += r.sandwich_upper - r.count;
      }
      mean_gap.push_back(gap / static_cast<double>(grid.size()));
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < mean_gap.size(); ++i) decreasing = decreasing && mean_gap[i] < mean_gap[i - 1];
    d = std::string(bracket ? "bracket holds" : "bracket violated") + ", mean gaps";
    for (double g : mean_gap) d += fmt(" %.4f", g);
    return bracket && decreasing;
  });

  run(6, [](std::string& d) {
    const auto z = zeta_descriptor();
    std::vector<double> grid;
    for (int i = 1; i <= 1000; ++i) grid.push_back(0.1 * i);
    double sup = 0.0, at = 0.0;
    for (const auto& r : kernel_sum_check(z, zeta_zeros_1000(), grid)) {
      if (std::abs(r.discrepancy) > sup) {
        sup = std::abs(r.discrepancy);
        at = r.t;
      }
    }
    d = fmt("sup |S - kernel sum| = %.4f", sup) + fmt(" at t = %.1f", at);
    return std::isfinite(sup) && sup < kKernelSup;
  });

  run(7, [](std::string& d) {
    const auto z = zeta_descriptor();
    auto ratio = [&](double t) {
      return theorem_envelope(z, t).first / (0.25 * std::log(t) / std::log(std::log(t)));
    };
    const double r12 = ratio(1e12), r24 = ratio(1e24);
    d = fmt("ratio %.4f at 1e12", r12) + fmt(", %.4f at 1e24", r24);
    return std::abs(r12 - 1.0) <= kEnvelopeTol12 && std::abs(r24 - 1.0) <= kEnvelopeTol24;
  });

  run(8, [](std::string& d) {
    bool holds = true;
    for (std::uint32_t q : {101u, 997u}) {
      const auto desc = dirichlet_descriptor(DirichletCharacter::legendre(q));
      const auto rep = lowest_zero_bound(desc, find_zeros(desc, 4.0));
      d += "q=" + std::to_string(q) + fmt(" actual %.5f", rep.actual) + fmt(" bound %.4f", rep.bound) +
           fmt(" + %.4f; ", rep.allowance);
      holds = holds && rep.holds;
    }
    const auto complex_char = dirichlet_descriptor(DirichletCharacter(101, {1}));
    const auto zs = find_zeros(complex_char, 30.0);
    bool routed = false;
    try {
      sandwich_check(complex_char, zs, 10.0, 1.0);
    } catch (const PreconditionError&) {
      routed = true;
    }
    for (const auto& r : scan_s_bound(complex_char, zs, {2.0, 5.0, 10.0})) routed = routed && !r.sandwich_ran;
    d += routed ? "routing ok" : "routing broken";
    return holds && routed;
  });

  run(9, [](std::string& d) {
    const auto dir = temp_cache("szeta-acceptance-scan");
    auto cfg = cli::RunConfig::parse("t_start = 0.1\nt_step = 0.1\nt_stop = 100\ncompute = true\n");
    cfg.set("cache", dir.string());
    std::ostringstream a, b, la, lb;
    cfg.set("workers", "1");
    const int ca = cli::run_command("scan", cfg, a, la);
    cfg.set("workers", "8");
    const int cb = cli::run_command("scan", cfg, b, lb);
    const std::string sa = a.str();
    const auto rows = std::count(sa.begin(), sa.end(), '\n') - 1;
    std::filesystem::remove_all(dir);
    d = std::to_string(rows) + " rows, " + (a.str() == b.str() ? "identical" : "different");
    return ca == cli::kExitOk && cb == cli::kExitOk && rows == 1000 && a.str() == b.str();
  });

  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
