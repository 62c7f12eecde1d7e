#include "mapgrowth/lip_cost.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace mapgrowth {

bool atom_grows_slower(const CostAtom& a, const CostAtom& b) {
  if (a.pow_L != b.pow_L) return a.pow_L < b.pow_L;
  if (a.subexp != b.subexp) return !a.subexp;
  return a.pow_log < b.pow_log;
}

bool atom_grows_no_faster(const CostAtom& a, const CostAtom& b) {
  return a == b || atom_grows_slower(a, b);
}

namespace {

CostExpr canonical(std::vector<CostAtom> atoms) {
  std::sort(atoms.begin(), atoms.end(),
            [](const CostAtom& a, const CostAtom& b) { return atom_grows_slower(b, a); });
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  CostExpr out;
  out.atoms = std::move(atoms);
  return out;
}

double rational_to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace

CostExpr make_cost(CostAtom a) { return canonical({std::move(a)}); }

CostExpr cost_constant() { return make_cost(CostAtom{}); }

CostExpr cost_power(const Rational& e) { return make_cost(CostAtom{e, 0, false}); }

CostExpr cost_log_power(int k) { return make_cost(CostAtom{0, k, false}); }

CostExpr cost_subexp() { return make_cost(CostAtom{0, 0, true}); }

CostExpr cost_sum(const CostExpr& a, const CostExpr& b) {
  std::vector<CostAtom> atoms = a.atoms;
  atoms.insert(atoms.end(), b.atoms.begin(), b.atoms.end());
  return canonical(std::move(atoms));
}

CostExpr cost_max(const CostExpr& a, const CostExpr& b) {
  // With unspecified positive constants, max and sum define the same class.
  return cost_sum(a, b);
}

CostExpr cost_product(const CostExpr& a, const CostExpr& b) {
  std::vector<CostAtom> atoms;
  for (const CostAtom& x : a.atoms)
    for (const CostAtom& y : b.atoms)
      atoms.push_back(CostAtom{x.pow_L + y.pow_L, x.pow_log + y.pow_log, x.subexp || y.subexp});
  return canonical(std::move(atoms));
}

bool dominates(const CostExpr& a, const CostExpr& b) {
  if (a.atoms.empty()) return b.atoms.empty();
  return std::all_of(b.atoms.begin(), b.atoms.end(), [&](const CostAtom& y) {
    return std::any_of(a.atoms.begin(), a.atoms.end(),
                       [&](const CostAtom& x) { return atom_grows_no_faster(y, x); });
  });
}

bool strictly_dominates(const CostExpr& a, const CostExpr& b) {
  return dominates(a, b) && !dominates(b, a);
}

double cost_eval(const CostExpr& e, double L) {
  if (L <= 1.0) throw std::invalid_argument("cost_eval: scale must exceed 1");
  const double lnL = std::log(L);
  double total = 0.0;
  for (const CostAtom& a : e.atoms) {
    double v = std::pow(L, rational_to_double(a.pow_L)) * std::pow(lnL, a.pow_log);
    if (a.subexp) v *= std::exp(std::sqrt(lnL));
    total += v;
  }
  return total;
}

std::string cost_to_string(const CostExpr& e) {
  if (e.atoms.empty()) return "0";
  std::ostringstream out;
  bool first_atom = true;
  for (const CostAtom& a : e.atoms) {
    if (!first_atom) out << " + ";
    first_atom = false;
    std::vector<std::string> parts;
    if (a.pow_L != 0) parts.push_back(a.pow_L == 1 ? "L" : "L^(" + rational_to_string(a.pow_L) + ")");
    if (a.pow_log != 0)
      parts.push_back(a.pow_log == 1 ? "log(L)" : "log(L)^" + std::to_string(a.pow_log));
    if (a.subexp) parts.push_back("exp(k*sqrt(log L))");
    if (parts.empty()) parts.push_back("1");
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out << "*";
      out << parts[i];
    }
  }
  return out.str();
}

CostExpr cost_degree_map(int k, const Rational& e) {
  if (k < 1) throw std::invalid_argument("cost_degree_map: sphere dimension must be positive");
  return cost_power(e / k);
}

double degree_map_cost_value(const BigInt& d, int k) {
  if (k < 1) throw std::invalid_argument("degree_map_cost_value: sphere dimension must be positive");
  if (d == 0) return 0.0;
  return std::exp(log_abs_big(d) / k);
}

CostExpr cost_whitehead(const CostExpr& a, const CostExpr& b) { return cost_max(a, b); }

CostExpr cost_nullhomotopy(const CostExpr& c, bool assume_conjecture) {
  if (assume_conjecture) return cost_product(c, cost_constant());
  return cost_product(c, cost_subexp());
}

DistortionBounds distortion_bounds(const ComplexSpec& spec, const BigInt& N) {
  DistortionBounds out;
  const BigInt mag = N < 0 ? BigInt(-N) : N;
  if (mag <= 1) {
    out.lower = cost_constant();
    out.upper = cost_constant();
    return out;
  }
  int k_max = 0;
  for (int i = 0; i < spec.algebra->num_generators(); ++i)
    k_max = std::max(k_max, spec.algebra->generator(i).sphere_dim);
  out.lower = cost_power(Rational(1, spec.n));
  out.upper = cost_power(Rational(1, k_max));
  return out;
}

namespace {

BudgetStage make_stage(std::string name, double measured, std::string claimed,
                       double claimed_value, bool pass, Rational claim_exponent,
                       bool in_slope) {
  BudgetStage s;
  s.name = std::move(name);
  s.measured = measured;
  s.claimed = std::move(claimed);
  s.claimed_value = claimed_value;
  s.pass = pass;
  s.claim_exponent = std::move(claim_exponent);
  s.in_slope_analysis = in_slope;
  return s;
}

double root_value(const BigInt& x, int k) {
  if (x == 0) return 0.0;
  return std::exp(log_abs_big(x) / k);
}

}  // namespace

BudgetReport example_budget(const ComplexSpec& spec, long long L, const Rational& eps,
                            const BigInt& a, const BigInt& b, long long C) {
  if (spec.family != Family::example1)
    throw std::invalid_argument("example_budget: only the example1 construction is supported");
  if (L < 2) throw std::invalid_argument("example_budget: L must be at least 2");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("example_budget: eps must lie in (0, 1)");
  if (C < 1) throw std::invalid_argument("example_budget: C must be at least 1");

  const BigInt u = boost::multiprecision::numerator(eps);
  const BigInt v = boost::multiprecision::denominator(eps);
  const unsigned uv = v.convert_to<unsigned>();
  const unsigned uu = u.convert_to<unsigned>();
  const int ell = spec.ell, m = spec.m, n = spec.n;

  const BigInt capA = integer_root(ipow(L, static_cast<unsigned>(ell) * uv - uu), uv);
  const BigInt capB = integer_root(ipow(L, static_cast<unsigned>(m) * uv - uu), uv);
  const BigInt capM = integer_root(ipow(L, static_cast<unsigned>(n) * uv - 2 * uu), uv);
  const BigInt abs_a = a < 0 ? BigInt(-a) : a;
  const BigInt abs_b = b < 0 ? BigInt(-b) : b;
  if (abs_a > capA)
    throw BudgetBoundsError("example_budget: |a| exceeds L^(ell-eps) = " + capA.str());
  if (abs_b > capB)
    throw BudgetBoundsError("example_budget: |b| exceeds L^(m-eps) = " + capB.str());
  const BigInt X = a * a * b;
  const BigInt abs_X = X < 0 ? BigInt(-X) : X;
  if (abs_X > capM)
    throw BudgetBoundsError("example_budget: |a^2 b| exceeds L^(n-2eps) = " + capM.str());

  BudgetReport report;
  report.L = L;
  report.eps = eps;
  report.a = a;
  report.b = b;
  report.s = capA;  // floor(L^{ell-eps})
  report.t = floor_div(X, report.s);
  report.e = X - report.s * report.t;  // remainder mod s, so 0 <= e < s

  const BigInt cbig = C;
  const double dL = static_cast<double>(L);
  const double dC = static_cast<double>(C);
  const double deps = rational_to_double(eps);
  const BigInt abs_t = report.t < 0 ? BigInt(-report.t) : report.t;
  const BigInt abs_e = report.e < 0 ? BigInt(-report.e) : report.e;

  // Stage 1: the remainder e lives below s, far under the allowance L^{n-ell}.
  // Its ratio decays steeply with L, so it is checked for boundedness but kept
  // out of the two-sided flatness analysis.
  const bool pass_e = abs_e <= cbig * ipow(L, static_cast<unsigned>(n - ell));
  report.stages.push_back(make_stage(
      "e_size", abs_e.convert_to<double>(),
      "C*L^" + std::to_string(n - ell), dC * std::pow(dL, n - ell), pass_e,
      Rational(n - ell), false));

  // Stage 2: degree-s self map of S^ell.
  const Rational exp_quarter = 1 - eps / 4;
  const std::string claim_quarter = "C*L^(" + rational_to_string(exp_quarter) + ")";
  const double val_quarter = dC * std::pow(dL, 1.0 - deps / 4.0);
  const bool pass_s = ipow(report.s, 4 * uv) <=
                      ipow(cbig, static_cast<unsigned>(ell) * 4 * uv) *
                          ipow(L, static_cast<unsigned>(ell) * (4 * uv - uu));
  report.stages.push_back(make_stage("degree_map_s", root_value(report.s, ell), claim_quarter,
                                     val_quarter, pass_s, exp_quarter, true));

  // Stage 3: Whitehead product of the s- and t-parts; the t-part lives on
  // S^{n-ell}.
  const bool pass_t = ipow(abs_t, 4 * uv) <=
                      ipow(cbig, static_cast<unsigned>(n - ell) * 4 * uv) *
                          ipow(L, static_cast<unsigned>(n - ell) * (4 * uv - uu));
  report.stages.push_back(make_stage(
      "product_st", std::max(root_value(report.s, ell), root_value(abs_t, n - ell)),
      claim_quarter, val_quarter, pass_s && pass_t, exp_quarter, true));

  // Stage 4: correction cell for the remainder, on S^{n-1}.  Like e_size this
  // measures a residue mod s, so the ratio decays rather than tracking the
  // claim; it stays out of the flatness analysis.
  const Rational exp_corr = Rational(n - ell, n - 1);
  const bool pass_corr =
      abs_e <= ipow(cbig, static_cast<unsigned>(n - 1)) * ipow(L, static_cast<unsigned>(n - ell));
  report.stages.push_back(make_stage(
      "e_correction", root_value(abs_e, n - 1), "C*L^(" + rational_to_string(exp_corr) + ")",
      dC * std::pow(dL, rational_to_double(exp_corr)), pass_corr, exp_corr, false));

  // Stage 5: everything together against the linear budget.
  const bool pass_total =
      report.s <= ipow(cbig, static_cast<unsigned>(ell)) * ipow(L, static_cast<unsigned>(ell)) &&
      abs_t <= ipow(cbig, static_cast<unsigned>(n - ell)) * ipow(L, static_cast<unsigned>(n - ell)) &&
      abs_e <= ipow(cbig, static_cast<unsigned>(n - 1)) * ipow(L, static_cast<unsigned>(n - 1));
  report.stages.push_back(make_stage(
      "total",
      std::max({root_value(report.s, ell), root_value(abs_t, n - ell), root_value(abs_e, n - 1)}),
      "C*L", dC * dL, pass_total, Rational(1), true));

  report.ok = std::all_of(report.stages.begin(), report.stages.end(),
                          [](const BudgetStage& s) { return s.pass; });
  return report;
}

BudgetReport whitehead_square_checks(long long L, const BigInt& a, const BigInt& b, long long C) {
  if (L < 2) throw std::invalid_argument("whitehead_square_checks: L must be at least 2");
  if (C < 1) throw std::invalid_argument("whitehead_square_checks: C must be at least 1");
  const BigInt abs_a = a < 0 ? BigInt(-a) : a;
  const BigInt abs_b = b < 0 ? BigInt(-b) : b;
  const BigInt L2 = ipow(L, 2), L3 = ipow(L, 3), L4 = ipow(L, 4), L6 = ipow(L, 6);
  if (abs_a > L3) throw BudgetBoundsError("whitehead_square_checks: |a| exceeds L^3 = " + L3.str());
  if (abs_b > L4) throw BudgetBoundsError("whitehead_square_checks: |b| exceeds L^4 = " + L4.str());
  if (abs_a * abs_b > L6)
    throw BudgetBoundsError("whitehead_square_checks: |ab| exceeds L^6 = " + L6.str());

  BudgetReport report;
  report.L = L;
  report.a = a;
  report.b = b;
  report.s = (abs_a + L2 - 1) / L2;  // ceil(|a| / L^2)
  report.t = (abs_b + L3 - 1) / L3;  // ceil(|b| / L^3)
  report.e = 0;

  const BigInt bound = BigInt(C) * L;
  const double dv = static_cast<double>(C) * static_cast<double>(L);
  const BigInt st = report.s * report.t;
  const BigInt rst = (2 * report.s + 1) * report.t;
  report.stages.push_back(make_stage("st_bound", st.convert_to<double>(), "C*L", dv,
                                     st <= bound, Rational(1), true));
  report.stages.push_back(make_stage("refined_st_bound", rst.convert_to<double>(), "C*L", dv,
                                     rst <= bound, Rational(1), true));
  report.ok = report.stages[0].pass && report.stages[1].pass;
  return report;
}

namespace {

// Uniform in [0, cap] via rejection on the bit length (portable across
// platforms, unlike uniform_int_distribution).
BigInt uniform_bigint(std::mt19937_64& rng, const BigInt& cap) {
  if (cap <= 0) return 0;
  const unsigned bits = boost::multiprecision::msb(cap) + 1;
  while (true) {
    BigInt value = 0;
    for (unsigned got = 0; got < bits; got += 64) {
      value <<= 64;
      value += rng();
    }
    value &= (BigInt(1) << bits) - 1;
    if (value <= cap) return value;
  }
}

BigInt uniform_signed(std::mt19937_64& rng, const BigInt& cap) {
  BigInt value = uniform_bigint(rng, cap);
  if (value != 0 && (rng() & 1)) value = -value;
  return value;
}

}  // namespace

SweepResult run_budget_sweep(const ComplexSpec& spec, const std::vector<long long>& Ls,
                             const Rational& eps, int trials, std::uint64_t seed, long long C) {
  if (spec.family == Family::theorem32)
    throw std::invalid_argument("run_budget_sweep: only the example presets have budget checks");
  if (Ls.empty()) throw std::invalid_argument("run_budget_sweep: need at least one scale");
  if (trials < 1) throw std::invalid_argument("run_budget_sweep: need at least one trial");

  std::mt19937_64 rng(seed);
  SweepResult result;
  result.all_pass = true;

  // worst-case measured/claimed ratio per stage per scale
  std::vector<std::string> stage_names;
  std::vector<bool> stage_in_analysis;
  std::vector<std::vector<double>> max_ratio;  // [stage][scale index]

  for (std::size_t li = 0; li < Ls.size(); ++li) {
    const long long L = Ls[li];
    for (int trial = 0; trial < trials; ++trial) {
      BudgetReport report;
      if (spec.family == Family::example1) {
        const BigInt u = boost::multiprecision::numerator(eps);
        const BigInt v = boost::multiprecision::denominator(eps);
        const unsigned uv = v.convert_to<unsigned>();
        const unsigned uu = u.convert_to<unsigned>();
        const BigInt capA = integer_root(ipow(L, static_cast<unsigned>(spec.ell) * uv - uu), uv);
        const BigInt capB = integer_root(ipow(L, static_cast<unsigned>(spec.m) * uv - uu), uv);
        const BigInt capM =
            integer_root(ipow(L, static_cast<unsigned>(spec.n) * uv - 2 * uu), uv);
        const BigInt a = uniform_signed(rng, capA);
        const BigInt bquota = a == 0 ? capB : BigInt(capM / (a * a));
        const BigInt b = uniform_signed(rng, std::min(capB, bquota));
        report = example_budget(spec, L, eps, a, b, C);
      } else {
        const BigInt L3 = ipow(L, 3), L4 = ipow(L, 4), L6 = ipow(L, 6);
        const BigInt a = uniform_signed(rng, L3);
        const BigInt abs_a = a < 0 ? BigInt(-a) : a;
        const BigInt bquota = a == 0 ? L4 : BigInt(L6 / abs_a);
        const BigInt b = uniform_signed(rng, std::min(L4, bquota));
        report = whitehead_square_checks(L, a, b, C);
      }

      if (stage_names.empty()) {
        for (const BudgetStage& s : report.stages) {
          stage_names.push_back(s.name);
          stage_in_analysis.push_back(s.in_slope_analysis);
          max_ratio.emplace_back(Ls.size(), 0.0);
        }
      }
      for (std::size_t si = 0; si < report.stages.size(); ++si) {
        const BudgetStage& s = report.stages[si];
        max_ratio[si][li] = std::max(max_ratio[si][li], s.measured / s.claimed_value);
      }
      result.all_pass = result.all_pass && report.ok;
      result.reports.push_back(std::move(report));
    }
  }

  // Least-squares slope of ln(max ratio) against ln L per stage.
  for (std::size_t si = 0; si < stage_names.size(); ++si) {
    SweepStageSlope slope;
    slope.name = stage_names[si];
    slope.in_slope_analysis = stage_in_analysis[si];
    if (Ls.size() < 2) {
      slope.slope = 0.0;
    } else {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      int usable = 0;
      for (std::size_t li = 0; li < Ls.size(); ++li) {
        if (max_ratio[si][li] <= 0.0) continue;
        const double x = std::log(static_cast<double>(Ls[li]));
        const double y = std::log(max_ratio[si][li]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++usable;
      }
      if (usable < 2) {
        slope.slope = 0.0;
        slope.in_slope_analysis = false;
      } else {
        const double denom = usable * sxx - sx * sx;
        slope.slope = (usable * sxy - sx * sy) / denom;
      }
    }
    result.slopes.push_back(std::move(slope));
  }
  return result;
}

}  // namespace mapgrowth
