#pragma once

// Exact lattice-point counting for the constraint systems produced by
// cw_spaces, the closed-form growth exponent, and least-squares fitting of
// measured counts against pure-power and power-times-log models.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mapgrowth/cw_spaces.hpp"
#include "mapgrowth/numeric.hpp"

namespace mapgrowth {

struct GrowthSample {
  long long L = 0;
  BigInt count;
};

enum class FitModel { pure_power, power_log };

std::string fit_model_name(FitModel m);

struct FitResult {
  FitModel model = FitModel::pure_power;
  double r_hat = 0.0;      // exponent of L
  double gamma_hat = 0.0;  // exponent of log L (0 under the pure model)
  double residual = 0.0;   // RMS residual of the selected model in log space
  int n_samples = 0;
};

// Thrown when a direct count would exceed its iteration budget; the blocked
// counting mode has no such limit.
class ResourceGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CountOptions {
  std::uint64_t budget = 50'000'000;  // direct-mode iteration cap
  bool blocked = false;               // aggregate runs of equal monomial cap
};

// Number of integer pairs (a, b) with |a| <= L^ell, |b| <= L^m, and (when the
// system has a monomial) |a^p b^q| <= L^n.  Exact for every input.
BigInt count_pairs(const ConstraintSystem& sys, long long L, const CountOptions& opts = {});

struct ClosedForm {
  Rational exponent;
  bool has_log = false;
};

// Growth exponent of count_pairs as L -> infinity, with the extra log factor
// flagged when the two corner contributions balance exactly.
ClosedForm closed_form_exponent(const ConstraintSystem& sys);

enum class GridSpacing { log, linear };

// `points` scales between lmin and lmax inclusive, deduplicated and sorted.
std::vector<long long> make_grid(long long lmin, long long lmax, int points, GridSpacing spacing);

// Count over a grid, optionally fanned out over worker threads.  on_sample is
// invoked in grid order regardless of completion order; pass nullptr to skip.
std::vector<GrowthSample> sample_grid(const ConstraintSystem& sys,
                                      const std::vector<long long>& grid,
                                      const CountOptions& opts, int workers,
                                      const std::function<void(const GrowthSample&)>& on_sample);

// Least-squares fit of ln(count) against {1, ln L} and {1, ln L, ln ln L};
// the log model is selected only when it reduces the RMS residual by at
// least a factor of 0.8 AND fits a material log exponent (gamma >= 0.5).
FitResult fit_growth(const std::vector<GrowthSample>& samples);

}  // namespace mapgrowth
