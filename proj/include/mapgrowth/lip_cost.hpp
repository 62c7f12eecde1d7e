#pragma once

// Symbolic Lipschitz-cost bookkeeping and concrete budget verification for
// the null-homotopy constructions attached to the preset spaces.
//
// A CostAtom stands for the asymptotic class  const * L^pow_L * (log L)^pow_log
// * exp(kappa * sqrt(log L))^[subexp]  with an unspecified positive constant;
// a CostExpr is a finite sum of such atoms.  Comparisons are asymptotic, i.e.
// constants never matter.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mapgrowth/cw_spaces.hpp"
#include "mapgrowth/numeric.hpp"

namespace mapgrowth {

struct CostAtom {
  Rational pow_L = 0;
  int pow_log = 0;
  bool subexp = false;
  bool operator==(const CostAtom&) const = default;
};

// Total asymptotic order on atoms: the L-power decides, then the
// subexponential factor, then the log power.
bool atom_grows_slower(const CostAtom& a, const CostAtom& b);   // a = o(b)
bool atom_grows_no_faster(const CostAtom& a, const CostAtom& b);  // a = O(b)

struct CostExpr {
  std::vector<CostAtom> atoms;  // canonical: strictly descending, no duplicates
  bool operator==(const CostExpr&) const = default;
};

CostExpr cost_constant();
CostExpr cost_power(const Rational& e);
CostExpr cost_log_power(int k);
CostExpr cost_subexp();
CostExpr make_cost(CostAtom a);

CostExpr cost_sum(const CostExpr& a, const CostExpr& b);
CostExpr cost_max(const CostExpr& a, const CostExpr& b);
CostExpr cost_product(const CostExpr& a, const CostExpr& b);

// Asymptotic order: true iff every atom of b is eventually O(some atom of a).
bool dominates(const CostExpr& a, const CostExpr& b);
bool strictly_dominates(const CostExpr& a, const CostExpr& b);

// Numeric value at a concrete scale with all constants and kappa set to 1.
double cost_eval(const CostExpr& e, double L);

std::string cost_to_string(const CostExpr& e);

// Lipschitz cost L^{e/k} of realizing a degree-L^e class on S^k by a map of
// controlled Lipschitz constant.
CostExpr cost_degree_map(int k, const Rational& e);

// Numeric |d|^{1/k} for a concrete degree.
double degree_map_cost_value(const BigInt& d, int k);

// Cost of a Whitehead product of maps with the given costs.
CostExpr cost_whitehead(const CostExpr& a, const CostExpr& b);

// Cost of filling a null-homotopic map of cost c: the unconditional theorem
// pays a subexponential factor, the conjectural linear isoperimetry only a
// constant.
CostExpr cost_nullhomotopy(const CostExpr& c, bool assume_conjecture);

struct DistortionBounds {
  CostExpr lower;  // in the variable N
  CostExpr upper;
};

// Lipschitz-norm bounds for N times the attaching class of spec: between
// N^{1/n} and N^{1/k_max} where k_max is the largest wedge sphere dimension.
DistortionBounds distortion_bounds(const ComplexSpec& spec, const BigInt& N);

// A measured quantity against its claimed bound at one scale.
struct BudgetStage {
  std::string name;
  double measured = 0.0;
  std::string claimed;          // human-readable bound
  double claimed_value = 0.0;   // numeric value of the bound
  bool pass = false;            // exact integer comparison, not the doubles
  Rational claim_exponent = 0;  // L-exponent of the claimed bound
  bool in_slope_analysis = true;
};

struct BudgetReport {
  long long L = 0;
  Rational eps = 0;
  BigInt a, b, s, t, e;
  std::vector<BudgetStage> stages;
  bool ok = false;
};

// Inputs outside the admissible ranges; the message names the violated bound.
class BudgetBoundsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Budget verification for the example1 null homotopy.  Requires 0 < eps < 1,
// |a| <= L^{ell-eps}, |b| <= L^{m-eps}, |a^2 b| <= L^{n-2eps}; splits
// a^2 b = s*t + e with s = floor(L^{ell-eps}) and t = floor(a^2 b / s), so
// 0 <= e < s, and checks each construction stage against its claimed bound.
BudgetReport example_budget(const ComplexSpec& spec, long long L, const Rational& eps,
                            const BigInt& a, const BigInt& b, long long C = 8);

// Budget verification for the example2 (Whitehead square) splitting:
// s = ceil(|a|/L^2), t = ceil(|b|/L^3), bounds s*t <= C*L and
// (2s+1)*t <= C*L under |a| <= L^3, |b| <= L^4, |ab| <= L^6.
BudgetReport whitehead_square_checks(long long L, const BigInt& a, const BigInt& b,
                                     long long C = 8);

struct SweepStageSlope {
  std::string name;
  double slope = 0.0;           // least-squares slope of ln(max ratio) vs ln L
  bool in_slope_analysis = true;
};

struct SweepResult {
  std::vector<BudgetReport> reports;
  std::vector<SweepStageSlope> slopes;
  bool all_pass = false;
};

// Run `trials` random admissible (a, b) pairs at every scale in Ls and
// aggregate worst-case stage ratios; works for the example1 and example2
// presets.
SweepResult run_budget_sweep(const ComplexSpec& spec, const std::vector<long long>& Ls,
                             const Rational& eps, int trials, std::uint64_t seed,
                             long long C = 8);

}  // namespace mapgrowth
