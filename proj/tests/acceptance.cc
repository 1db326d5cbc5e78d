// Copyright 2026 The scmarket Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when
// any criterion fails.
//
// Usage: scm_acceptance [path/to/scmarket]
// With the tool path, the determinism check runs the command-line sweep
// twice and compares the files byte for byte; without it the in-process
// writer is compared instead.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scm/demand.h"
#include "scm/experiments.h"
#include "scm/nash.h"
#include "scm/oracle.h"
#include "scm/pricing.h"
#include "test_util.h"

namespace {

using scm::MarketParams;

// Slack for "non-decreasing" style comparisons between independent solves.
constexpr double kMonotoneSlack = 1e-9;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

scm::Config DefaultConfig() {
  scm::Config c;
  c.solver.threads = 0;
  return c;
}

std::vector<scm::SweepRow> Sweep(const std::string& key, double from, double to,
                                 int steps,
                                 std::map<std::string, double> overrides = {}) {
  return scm::RunSweep(DefaultConfig(), scm::SweepSpec{key, from, to, steps, overrides});
}

using Column = std::function<double(const scm::SweepRow&)>;

const Column kX = [](const scm::SweepRow& r) { return r.x_star; };
const Column kT = [](const scm::SweepRow& r) { return r.t_star; };
const Column kTheta = [](const scm::SweepRow& r) { return r.theta_star; };
const Column kScsp = [](const scm::SweepRow& r) { return r.payoffs.scsp_profit; };
const Column kEccsp = [](const scm::SweepRow& r) { return r.payoffs.eccsp_profit; };
const Column kWno = [](const scm::SweepRow& r) { return r.payoffs.wno_payoff; };

// direction: +1 non-decreasing, -1 non-increasing; strict drops the slack.
void Monotone(Outcome& out, const std::vector<scm::SweepRow>& rows, const Column& col,
              int direction, bool strict, const std::string& name) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double d = direction * (col(rows[i]) - col(rows[i - 1]));
    const bool ok = strict ? d > 0.0 : d >= -kMonotoneSlack;
    out.Require(ok, name + Fmt(" breaks at swept value %.6g (step %.3g)",
                               rows[i].swept_value, d));
  }
}

// sign: +1 means base < other pointwise, -1 means base > other.
void Pointwise(Outcome& out, const std::vector<scm::SweepRow>& base,
               const std::vector<scm::SweepRow>& other, const Column& col, int sign,
               const std::string& name) {
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double d = sign * (col(other[i]) - col(base[i]));
    out.Require(d > 0.0, name + Fmt(" fails at swept value %.6g (diff %.3g)",
                                    base[i].swept_value, d));
  }
}

void AllConverged(Outcome& out, const std::vector<scm::SweepRow>& rows) {
  for (const auto& r : rows) {
    out.Require(r.converged, Fmt("equilibrium not converged at %.6g", r.swept_value));
  }
}

Outcome PriceCap() {
  Outcome out;
  double worst = 0.0;
  for (double cap : {100.0, 50.0, 60.0, 70.0, 80.0, 90.0}) {
    MarketParams m;
    m.p_bar = cap;
    const auto r = scm::SolveStackelbergGrid(m);
    worst = std::max(worst, std::abs(r.p_star - cap));
    out.Require(std::abs(r.p_star - cap) <= 1e-2,
                Fmt("p_bar=%g gives p*=%.9g", cap, r.p_star));
  }
  if (out.pass) out.detail = Fmt("max |p* - p_bar| = %.3g", worst);
  return out;
}

Outcome PriceCapTrends() {
  Outcome out;
  const auto base = Sweep("p_bar", 50, 100, 11);
  const auto steep = Sweep("p_bar", 50, 100, 11, {{"w", 2.0}});
  AllConverged(out, base);
  AllConverged(out, steep);
  Monotone(out, base, kWno, +1, true, "wno_payoff increasing");
  Monotone(out, base, kX, -1, false, "x* non-increasing");
  Pointwise(out, base, steep, kWno, -1, "w=2 lowers wno_payoff");
  if (out.pass) {
    out.detail = Fmt("wno_payoff %.6g -> %.6g; at p_bar=100 w=2 gives %.6g",
                     base.front().payoffs.wno_payoff, base.back().payoffs.wno_payoff,
                     steep.back().payoffs.wno_payoff);
  }
  return out;
}

Outcome EdgeRevenueTrends() {
  Outcome out;
  const auto base = Sweep("sigma_e", 30, 60, 16);
  const auto costly = Sweep("sigma_e", 30, 60, 16, {{"C_cache", 160.0}});
  AllConverged(out, base);
  AllConverged(out, costly);
  Monotone(out, base, kX, -1, false, "x* non-increasing");
  Monotone(out, base, kT, -1, false, "t* non-increasing");

  int changes = 0;
  int last = 0;
  bool rose_after_fall = false;
  for (std::size_t i = 1; i < base.size(); ++i) {
    const double d = base[i].theta_star - base[i - 1].theta_star;
    if (std::abs(d) <= 1e-6) continue;
    const int s = d > 0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    if (last == -1 && s == 1) rose_after_fall = true;
    last = s;
  }
  out.Require(changes <= 1 && !rose_after_fall,
              Fmt("theta* has %g sign changes", changes));
  Pointwise(out, base, costly, kX, +1, "C=160 raises x*");
  Pointwise(out, base, costly, kT, -1, "C=160 lowers t*");
  if (out.pass) {
    out.detail = Fmt("theta* sign changes %g; t* %.4f -> %.4f", changes,
                     base.front().t_star, base.back().t_star);
  }
  return out;
}

Outcome AdRevenueTrends() {
  Outcome out;
  const auto base = Sweep("sigma_c", 100, 140, 9);
  const auto cheap = Sweep("sigma_c", 100, 140, 9, {{"c_handover", 60.0}});
  AllConverged(out, base);
  AllConverged(out, cheap);
  Monotone(out, base, kScsp, +1, false, "scsp_profit non-decreasing");
  Monotone(out, base, kEccsp, +1, false, "eccsp_profit non-decreasing");
  Monotone(out, base, kWno, +1, false, "wno_payoff non-decreasing");
  Pointwise(out, base, cheap, kX, -1, "c=60 lowers x*");
  Pointwise(out, base, cheap, kScsp, -1, "c=60 lowers scsp_profit");
  Pointwise(out, base, cheap, kWno, -1, "c=60 lowers wno_payoff");
  if (out.pass) {
    out.detail = Fmt("scsp_profit %.6g -> %.6g", base.front().payoffs.scsp_profit,
                     base.back().payoffs.scsp_profit);
  }
  return out;
}

Outcome DemandOracle() {
  Outcome out;
  std::mt19937_64 rng(20261018);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const MarketParams m = scm::testing::RandomMarket(rng);
    const double theta = scm::testing::Uniform(rng, 0.0, 1.0);
    const double t = scm::testing::Uniform(rng, 0.0, 1.0);
    const double p = scm::testing::Uniform(rng, 0.0, m.p_bar);
    const double x = scm::BestX(theta, t, p, m);
    const double grid = scm::OracleBestX(theta, t, p, m, scm::GridSpec{10001});
    worst = std::max(worst, std::abs(x - grid));
  }
  out.Require(worst <= 2e-4, Fmt("max deviation %.3g", worst));
  if (out.pass) out.detail = Fmt("max |x - oracle| = %.3g over 200 draws", worst);
  return out;
}

double RelErr(double analytic, double numeric) {
  return std::abs(analytic - numeric) / std::max(std::abs(numeric), 1e-300);
}

Outcome Sensitivities() {
  Outcome out;
  std::mt19937_64 rng(1013);
  double worst1 = 0.0;
  double worst2 = 0.0;
  int points = 0;
  while (points < 100) {
    const MarketParams m = scm::testing::RandomMarket(rng);
    const double theta = scm::testing::Uniform(rng, 0.05, 0.95);
    const double t = scm::testing::Uniform(rng, 0.05, 0.95);
    const double p = scm::testing::Uniform(rng, 0.1 * m.p_bar, 0.95 * m.p_bar);
    auto x_at = [&](double th, double tt) { return scm::BestX(th, tt, p, m, 1e-14); };
    const double x = x_at(theta, t);
    if (!(x > 0.02 && x < 0.98)) continue;
    ++points;
    const auto s = scm::Sensitivities(x, theta, t, p, m);
    const double d1 = 1e-5;
    const double d2 = 1e-3;
    const double e10 = RelErr(s.dx_dtheta, (x_at(theta + d1, t) - x_at(theta - d1, t)) / (2 * d1));
    const double e12 = RelErr(s.dx_dt, (x_at(theta, t + d1) - x_at(theta, t - d1)) / (2 * d1));
    const double e11 = RelErr(s.d2x_dtheta2,
                              (x_at(theta + d2, t) - 2 * x + x_at(theta - d2, t)) / (d2 * d2));
    const double e13 = RelErr(s.d2x_dt2,
                              (x_at(theta, t + d2) - 2 * x + x_at(theta, t - d2)) / (d2 * d2));
    worst1 = std::max({worst1, e10, e12});
    worst2 = std::max({worst2, e11, e13});
  }
  out.Require(worst1 <= 1e-3, Fmt("first-derivative relative error %.3g", worst1));
  out.Require(worst2 <= 1e-2, Fmt("second-derivative relative error %.3g", worst2));
  if (out.pass) {
    out.detail = Fmt("max rel err first %.3g, second %.3g", worst1, worst2);
  }
  return out;
}

Outcome NashAudit() {
  Outcome out;
  const MarketParams m;
  scm::NashOptions options;
  const auto mid = scm::SolveNash(100.0, m, options);
  out.Require(mid.converged, "equilibrium not converged");
  const auto audit = scm::AuditDeviations(mid.theta_star, mid.t_star, 100.0, m,
                                          scm::GridSpec{1001});
  out.Require(audit.eps() <= 1e-6, Fmt("eps = %.3g", audit.eps()));
  double spread = 0.0;
  for (auto [theta0, t0] : {std::pair{0.0, 0.0}, std::pair{1.0, 1.0}}) {
    options.initial_theta = theta0;
    options.initial_t = t0;
    const auto s = scm::SolveNash(100.0, m, options);
    out.Require(s.converged, "equilibrium not converged");
    spread = std::max({spread, std::abs(s.theta_star - mid.theta_star),
                       std::abs(s.t_star - mid.t_star)});
  }
  out.Require(spread <= 1e-4, Fmt("starts disagree by %.3g", spread));
  if (out.pass) {
    out.detail = Fmt("theta*=%.6f t*=%.6f eps=%.3g", mid.theta_star, mid.t_star, audit.eps());
  }
  return out;
}

Outcome ConditionArithmetic() {
  Outcome out;
  const MarketParams m;
  const auto s = scm::SolveNash(100.0, m);
  const auto report = scm::CheckConditions(s.Profile(), m);
  // 0.8 + 0.8 - 1 and 2 * 0.8 - 1 both round to the double just above 0.6.
  const double expected = m.gamma + m.alpha - 1.0;
  const double m27 = report.curvature_sum.margin;
  const double m29 = report.uniqueness.margin;
  out.Require(m27 == expected && std::abs(m27 - 0.6) <= 1e-15,
              Fmt("cond_27 margin %.17g", m27));
  out.Require(m29 == 2 * m.alpha - 1.0 && std::abs(m29 - 0.6) <= 1e-15,
              Fmt("cond_29 margin %.17g", m29));
  if (out.pass) out.detail = Fmt("cond_27 = %.12g, cond_29 = %.12g", m27, m29);
  return out;
}

Outcome SubgradientAgreement() {
  Outcome out;
  const MarketParams m;
  const auto grid = scm::SolveStackelbergGrid(m);
  std::string found;
  for (double p0 : {10.0, 50.0, 90.0}) {
    const auto r = scm::SolveStackelbergSubgradient(m, p0, 200);
    out.Require(std::abs(r.p_star - grid.p_star) <= 1e-2 * m.p_bar,
                Fmt("p0=%g reaches %.9g, grid %.9g", p0, r.p_star, grid.p_star));
    found += Fmt(" %.6g", r.p_star);
  }
  if (out.pass) out.detail = "grid " + Fmt("%.6g", grid.p_star) + ", sub-gradient" + found;
  return out;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome Determinism(const char* tool) {
  Outcome out;
  if (tool == nullptr) {
    const scm::SweepSpec spec{"sigma_e", 30, 60, 6, {}};
    const auto a = scm::SweepCsv(scm::RunSweep(DefaultConfig(), spec));
    const auto b = scm::SweepCsv(scm::RunSweep(DefaultConfig(), spec));
    out.Require(a == b, "in-process sweep CSV differs");
    if (out.pass) out.detail = "in-process writer, " + std::to_string(a.size()) + " bytes";
    return out;
  }
  char dir_template[] = "/tmp/scm_acceptance_XXXXXX";
  const char* dir = mkdtemp(dir_template);
  out.Require(dir != nullptr, "cannot create a scratch directory");
  if (!out.pass) return out;
  const std::string config = std::string(dir) + "/config.json";
  std::ofstream(config) << nlohmann::json{{"market", {
      {"alpha", 0.8}, {"beta", 0.5}, {"gamma", 0.8}, {"l_a", 1.0}, {"sigma_e", 40.0},
      {"sigma_c", 120.0}, {"c_handover", 80.0}, {"C_cache", 120.0}, {"w", 1.0},
      {"p_bar", 100.0}}}}.dump(2);
  std::string files[2];
  for (int i = 0; i < 2; ++i) {
    files[i] = std::string(dir) + "/sweep" + std::to_string(i) + ".csv";
    const std::string cmd = std::string("\"") + tool + "\" sweep --config " + config +
                            " --param sigma_e --from 30 --to 60 --steps 6 --out " + files[i];
    out.Require(std::system(cmd.c_str()) == 0, "sweep command failed");
  }
  const std::string a = ReadFile(files[0]);
  const std::string b = ReadFile(files[1]);
  out.Require(!a.empty() && a == b, "sweep files differ");
  if (out.pass) out.detail = "two CLI sweeps, " + std::to_string(a.size()) + " identical bytes";
  std::remove(files[0].c_str());
  std::remove(files[1].c_str());
  std::remove(config.c_str());
  std::remove(dir);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const char* tool = argc > 1 ? argv[1] : nullptr;
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"price-cap optimality", PriceCap},
      {"price-cap sweep trends", PriceCapTrends},
      {"edge revenue sweep trends", EdgeRevenueTrends},
      {"ad revenue sweep trends", AdRevenueTrends},
      {"demand oracle equivalence", DemandOracle},
      {"demand sensitivities", Sensitivities},
      {"provider equilibrium audit", NashAudit},
      {"condition arithmetic", ConditionArithmetic},
      {"sub-gradient / grid agreement", SubgradientAgreement},
      {"sweep determinism", [tool] { return Determinism(tool); }},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome out;
    try {
      out = run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %2d %s: %s\n", out.pass ? "PASS" : "FAIL", index, name,
                out.detail.c_str());
    std::fflush(stdout);
    failed += out.pass ? 0 : 1;
  }
  std::printf("%d/%d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
