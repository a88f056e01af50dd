// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "jrc/channel_model.hpp"
#include "jrc/deterministic.hpp"
#include "jrc/experiments.hpp"
#include "jrc/lp.hpp"
#include "jrc/rmca.hpp"
#include "jrc/robust.hpp"
#include "jrc/scenario.hpp"

using namespace jrc;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a = 0, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

// 1 -------------------------------------------------------------------------
Verdict covert_tradeoff() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto pts = sweep_jamming(reference_link(), dbw_grid(-40.0, 20.0, 1.0), 100000, 2024);
  const double secs = elapsed(t0);

  bool monotone = true;
  for (std::size_t k = 1; k < pts.size(); ++k)
    monotone = monotone && pts[k].cc.value <= pts[k - 1].cc.value && pts[k].mi.value <= pts[k - 1].mi.value;

  // First point from which dep stays >= 0.9.
  std::size_t cross = pts.size();
  for (std::size_t k = pts.size(); k-- > 0;) {
    if (pts[k].dep < 0.9) break;
    cross = k;
  }
  const bool crosses = cross < pts.size() && cross > 0;

  std::size_t at = 0;
  for (std::size_t k = 1; k < pts.size(); ++k)
    if (std::abs(pts[k].dep - 0.97) < std::abs(pts[at].dep - 0.97)) at = k;
  const double cc_drop = 1.0 - pts[at].cc.value / pts[0].cc.value;
  const double mi_drop = 1.0 - pts[at].mi.value / pts[0].mi.value;

  Verdict v;
  v.pass = monotone && crosses && cc_drop >= 0.35 && cc_drop <= 0.65 && mi_drop >= 0.38 &&
           mi_drop <= 0.68 && secs < 300.0;
  v.detail = fmt("dep>=0.9 from %.0f dBW; at dep %.3f cc -%.1f%% mi -%.1f%%",
                 crosses ? watts_to_dbw(pts[cross].jamming_w) : NAN, pts[at].dep, 100 * cc_drop,
                 100 * mi_drop) +
             (monotone ? "; cc/mi monotone" : "; cc/mi NOT monotone") + fmt("; %.0f s", secs);
  return v;
}

// 2 -------------------------------------------------------------------------
Verdict price_of_robustness() {
  const MarketScenario sc = generate_scenario(GeneratorConfig{}, 7);
  UncertaintySweepConfig cfg;
  cfg.trials = 1;
  const auto pts = sweep_uncertainty(sc, {0.0, 5.0, 10.0, 20.0, 40.0}, cfg);
  bool ok = std::abs(pts[0].robust_welfare - pts[0].deterministic_welfare) <= 1e-6;
  for (std::size_t k = 0; k < pts.size(); ++k) {
    ok = ok && pts[k].deterministic_welfare == pts[0].deterministic_welfare;
    ok = ok && pts[k].robust_welfare <= pts[k].deterministic_welfare + 1e-9;
    if (k > 0) ok = ok && pts[k].robust_welfare < pts[k - 1].robust_welfare;
  }
  Verdict v;
  v.pass = ok;
  v.detail = fmt("robust %.3f -> %.3f over widths 0..40 m, deterministic %.3f",
                 pts.front().robust_welfare, pts.back().robust_welfare, pts[0].deterministic_welfare);
  return v;
}

// 3 -------------------------------------------------------------------------
Verdict ir_violation() {
  IrConfig cfg;
  cfg.trials = 100;
  const IrReport r = experiment_ir_violation(cfg, true, 77);
  std::size_t rejected = 0;
  for (const auto& row : r.rows) rejected += row.rmca_rejected ? 1 : 0;
  Verdict v;
  v.pass = r.min_rmca_true() >= -1e-6 && r.trials_with_negative_det() >= 1 && rejected == 0;
  v.detail = fmt("min RMCA true utility %.3g; deterministic negative in %.0f/100 trials",
                 r.min_rmca_true(), static_cast<double>(r.trials_with_negative_det()));
  return v;
}

// 4 -------------------------------------------------------------------------
Verdict bid_arc() {
  const BidTable table = reference_bid_table();
  std::vector<double> inc;
  for (int k = 0; k <= 20; ++k) inc.push_back(0.05 * k);
  const auto pts = sweep_bids(table, inc, 0.05, 3);
  const std::size_t node = table.varied_node;
  auto arc = [&](bool robust, std::string& note) {
    std::vector<double> a1;
    for (const auto& p : pts) a1.push_back((robust ? p.rmca_allocation : p.det_allocation)(node, 0));
    const double a3 = (robust ? pts[0].rmca_allocation : pts[0].det_allocation)(node, 2);
    const std::size_t peak = static_cast<std::size_t>(std::max_element(a1.begin(), a1.end()) - a1.begin());
    bool declines = peak + 1 < a1.size();
    for (std::size_t k = peak + 1; k < a1.size(); ++k) declines = declines && a1[k] <= a1[k - 1] + 1e-9;
    note += fmt("a53=%.2f a51(+0.10)=%.3f a51(+1.00)=%.3f", a3, a1[2], a1.back());
    return std::abs(a3 - 1.0) <= 1e-6 && a1[0] <= 1e-9 && a1[2] > 1e-6 && declines;
  };
  Verdict v;
  std::string det_note = "deterministic ", rob_note = "; rmca ";
  const bool det_ok = arc(false, det_note);
  const bool rob_ok = arc(true, rob_note);
  v.pass = det_ok && rob_ok;
  v.detail = det_note + rob_note;
  return v;
}

// 5 -------------------------------------------------------------------------
Verdict lp_correctness() {
  Rng rng(55);
  std::uniform_int_distribution<std::size_t> dim(1, 10);
  double worst_gap = 0.0, worst_cs = 0.0, worst_oracle = 0.0;
  std::size_t oracle_checks = 0, failures = 0;
  auto check = [&](std::size_t n, std::size_t m) {
    RandomMarketConfig rc;
    rc.value_min = 0.0;
    const RandomMarket mk = random_market(n, m, rng, rc);
    const Matrix& v = mk.set.center;
    const AllocationProblem prob = welfare_problem(v, mk.costs, mk.budgets);
    const LinearProgram lp = prob.build();
    const LpSolution s = solve_lp(lp);
    if (!s.optimal()) {
      ++failures;
      return;
    }
    const PricingDuals d = solve_pricing_dual(v, mk.costs, mk.budgets, {});
    worst_gap = std::max({worst_gap, std::abs(s.objective - s.dual_objective), std::abs(s.objective - d.objective)});
    for (std::size_t r = 0; r < lp.num_constraints(); ++r) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < lp.rows[r].size(); ++j) lhs += lp.rows[r][j] * s.x[j];
      worst_cs = std::max(worst_cs, std::abs(s.duals[r] * (lp.rhs[r] - lhs)));
      if (s.duals[r] < -1e-9) worst_cs = std::max(worst_cs, -s.duals[r]);
    }
    for (std::size_t j = 0; j < lp.num_variables(); ++j) {
      worst_cs = std::max(worst_cs, std::abs(s.x[j] * s.reduced_costs[j]));
      if (s.reduced_costs[j] > 1e-9) worst_cs = std::max(worst_cs, s.reduced_costs[j]);
    }
    if (n * m <= 9) {
      ++oracle_checks;
      worst_oracle = std::max(worst_oracle, std::abs(s.objective - brute_force_welfare(v, mk.costs, mk.budgets)));
    }
  };
  for (int t = 0; t < 1000; ++t) check(dim(rng), dim(rng));
  std::uniform_int_distribution<std::size_t> small(1, 3);
  for (int t = 0; t < 300; ++t) check(small(rng), small(rng));
  Verdict v;
  v.pass = failures == 0 && worst_gap <= 1e-6 && worst_cs <= 1e-6 && worst_oracle <= 1e-6;
  v.detail = fmt("max gap %.2g, max CS %.2g, oracle diff %.2g over %.0f small instances", worst_gap,
                 worst_cs, worst_oracle, static_cast<double>(oracle_checks));
  return v;
}

// 6 -------------------------------------------------------------------------
Verdict degenerate_sets() {
  Rng rng(66);
  std::uniform_int_distribution<std::size_t> dim(1, 10);
  RandomMarketConfig rc;
  rc.radius_fraction_max = 0.0;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const RandomMarket mk = random_market(dim(rng), dim(rng), rng, rc);
    const Matrix& bids = mk.set.center;
    const UncertaintySet set = mk.set;
    const AuctionOutcome det = det_run(bids, mk.budgets, mk.costs, rng);
    const RmcaPhaseAOutput a = rmca_phase_a(set, mk.budgets, mk.costs);
    const AuctionOutcome rob = rmca_phase_b(bids, a, set, mk.budgets, mk.costs, rng);
    worst = std::max(worst, rob.rejected ? 1.0 : rob.fractional.max_abs_diff(det.fractional));
  }
  Verdict v;
  v.pass = worst <= 1e-6;
  v.detail = fmt("max |a_rmca - a_det| = %.2g over 100 instances", worst);
  return v;
}

// 7 -------------------------------------------------------------------------
Verdict sampler_fidelity() {
  const std::vector<AlphaMuParams> sets{{2.0, 1.0, 1.0}, {2.0, 3.0, 0.5}, {1.5, 2.0, 2.0},
                                        {4.0, 0.5, 1.5}, {3.0, 1.5, 0.8}};
  const std::size_t n = 100000;
  double worst_ks = 0.0, worst_mean = 0.0;
  Rng rng(77);
  for (const auto& p : sets) {
    std::vector<double> xs(n);
    AlphaMuSampler draw(p);
    double sum = 0.0;
    for (auto& x : xs) sum += (x = draw(rng));
    std::sort(xs.begin(), xs.end());
    double ks = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double f = alpha_mu_cdf(p, xs[k]);
      ks = std::max({ks, std::abs(f - static_cast<double>(k + 1) / n), std::abs(f - static_cast<double>(k) / n)});
    }
    worst_ks = std::max(worst_ks, ks);
    worst_mean = std::max(worst_mean, std::abs(sum / n - p.mean_power) / p.mean_power);
  }
  Verdict v;
  v.pass = worst_ks < 0.01 && worst_mean <= 0.01;
  v.detail = fmt("max KS %.4f, max mean error %.3f%%", worst_ks, 100 * worst_mean);
  return v;
}

// 8 -------------------------------------------------------------------------
Verdict rounding_unbiased() {
  const Matrix a = Matrix::from_rows({{0.5, 0.2, 0.0}, {0.3, 0.0, 0.6}, {0.2, 0.7, 0.1}});
  const std::vector<double> pay{1.2, 2.0, 0.8};
  const std::size_t n = 3, rounds = 100000;
  std::vector<double> charge(n, 0.0), wins(n, 0.0);
  Rng rng(88);
  for (std::size_t t = 0; t < rounds; ++t) {
    const RoundingResult r = round_allocation(a, pay, rng);
    const auto c = r.charges_per_node(n);
    const auto w = r.wins_per_node(n);
    for (std::size_t i = 0; i < n; ++i) {
      charge[i] += c[i];
      wins[i] += w[i];
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(charge[i] / rounds - pay[i]) / pay[i]);
    worst = std::max(worst, std::abs(wins[i] / rounds - a.row_sum(i)) / a.row_sum(i));
  }
  Verdict v;
  v.pass = worst <= 0.01;
  v.detail = fmt("max relative deviation %.3f%% over 1e5 roundings", 100 * worst);
  return v;
}

// 9 -------------------------------------------------------------------------
Verdict expected_properties() {
  Rng rng(99);
  std::uniform_int_distribution<std::size_t> nodes(2, 4), channels(2, 3);
  std::size_t ir = 0, bf = 0, ic = 0;
  double worst_gain = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < 20; ++t) {
    const RandomMarket mk = random_market(nodes(rng), channels(rng), rng);
    const PropertyReport r = check_mechanism_properties(mk.set, mk.budgets, mk.costs, 1000, rng);
    ir += r.individually_rational() ? 1 : 0;
    bf += r.budget_feasible(mk.budgets) ? 1 : 0;
    ic += r.incentive_compatible() ? 1 : 0;
    worst_gain = std::max(worst_gain, r.mean_misreport_gain / std::max(r.misreport_gain_stderr, 1e-300));
  }
  Verdict v;
  v.pass = ir == 20 && bf == 20 && ic == 20;
  v.detail = fmt("IR %.0f/20, BF %.0f/20, IC %.0f/20 (max misreport gain %.2f SE)", static_cast<double>(ir),
                 static_cast<double>(bf), static_cast<double>(ic), worst_gain);
  return v;
}

// 10 ------------------------------------------------------------------------
Verdict timing() {
  const auto pts = bench_timing({5, 10, 20}, {3, 5, 10}, 1, 10);
  bool ordered = true;
  double big = 0.0, big_det = 0.0;
  for (const auto& p : pts) {
    ordered = ordered && p.rmca_seconds() >= p.det_seconds;
    if (p.nodes == 20 && p.channels == 10) {
      big = p.rmca_seconds();
      big_det = p.det_seconds;
    }
  }
  Verdict v;
  v.pass = ordered && big > 0.0 && big < 60.0;
  v.detail = fmt("(N=20, M=10) rmca %.1f s vs deterministic %.4f s", big, big_det) +
             (ordered ? "; rmca slower at every point" : "; ordering violated");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"covert trade-off under friendly jamming", covert_tradeoff},
      {"price of robustness over warden-box widths", price_of_robustness},
      {"individual rationality after warden displacement", ir_violation},
      {"allocation arc under rising bids", bid_arc},
      {"LP duality, slackness and vertex oracle", lp_correctness},
      {"radius-0 sets reproduce the deterministic allocation", degenerate_sets},
      {"alpha-mu sampler fidelity", sampler_fidelity},
      {"randomised rounding is unbiased", rounding_unbiased},
      {"IR, BF and IC in expectation", expected_properties},
      {"computation time", timing},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %zu %s: %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, v.detail.c_str());
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
