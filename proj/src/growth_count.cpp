#include "mapgrowth/growth_count.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <optional>
#include <thread>

namespace mapgrowth {

std::string fit_model_name(FitModel m) {
  return m == FitModel::pure_power ? "pure_power" : "power_log";
}

namespace {

void validate_system(const ConstraintSystem& sys) {
  if (sys.ell < 1 || sys.m < 1)
    throw std::invalid_argument("count_pairs: ell and m must be at least 1");
  if (sys.has_monomial && (sys.p < 0 || sys.q < 0 || sys.n < 0))
    throw std::invalid_argument("count_pairs: negative monomial data");
}

// One-sided monomial: |a|^p <= N alone bounds a (q = 0), symmetrically for b.
BigInt count_degenerate(const ConstraintSystem& sys, const BigInt& A, const BigInt& B,
                        const BigInt& N) {
  BigInt ca = 2 * A + 1, cb = 2 * B + 1;
  if (sys.p > 0) ca = 2 * std::min(A, integer_root(N, static_cast<unsigned>(sys.p))) + 1;
  if (sys.q > 0) cb = 2 * std::min(B, integer_root(N, static_cast<unsigned>(sys.q))) + 1;
  return ca * cb;
}

BigInt count_direct_big(const ConstraintSystem& sys, const BigInt& A, const BigInt& B,
                        const BigInt& N) {
  const auto p = static_cast<unsigned>(sys.p);
  const auto q = static_cast<unsigned>(sys.q);
  BigInt total = 2 * B + 1;  // the a = 0 column
  for (BigInt a = 1; a <= A; ++a) {
    const BigInt ap = ipow(a, p);
    const BigInt cap = ap > N ? BigInt(0) : std::min(B, integer_root(N / ap, q));
    total += 2 * (2 * cap + 1);
  }
  return total;
}

BigInt count_blocked_big(const ConstraintSystem& sys, const BigInt& A, const BigInt& B,
                         const BigInt& N) {
  const auto p = static_cast<unsigned>(sys.p);
  const auto q = static_cast<unsigned>(sys.q);
  BigInt total = 2 * B + 1;
  BigInt a = 1;
  while (a <= A) {
    const BigInt ap = ipow(a, p);
    const BigInt t = ap > N ? BigInt(0) : std::min(B, integer_root(N / ap, q));
    if (t == 0) {
      // cap is non-increasing in a, so every remaining column holds b = 0 only.
      total += 2 * (A - a + 1);
      break;
    }
    // cap(a') >= t exactly while a'^p * t^q <= N; the run [a, a2] is constant.
    const BigInt a2 = std::min(A, integer_root(N / ipow(t, q), p));
    total += 2 * (a2 - a + 1) * (2 * t + 1);
    a = a2 + 1;
  }
  return total;
}

#if defined(__SIZEOF_INT128__)

BigInt u128_to_big(uint128 v) {
  BigInt out = static_cast<std::uint64_t>(v >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(v);
  return out;
}

BigInt count_direct_u128(const ConstraintSystem& sys, uint128 A, uint128 B, uint128 N) {
  const auto p = static_cast<unsigned>(sys.p);
  const auto q = static_cast<unsigned>(sys.q);
  uint128 total = 2 * B + 1;
  for (uint128 a = 1; a <= A; ++a) {
    uint128 ap;
    uint128 cap = 0;
    if (ipow_capped_u128(a, p, N, ap)) cap = std::min(B, integer_root_u128(N / ap, q));
    total += 2 * (2 * cap + 1);
  }
  return u128_to_big(total);
}

BigInt count_blocked_u128(const ConstraintSystem& sys, uint128 A, uint128 B, uint128 N) {
  const auto p = static_cast<unsigned>(sys.p);
  const auto q = static_cast<unsigned>(sys.q);
  uint128 total = 2 * B + 1;
  uint128 a = 1;
  while (a <= A) {
    uint128 ap;
    uint128 t = 0;
    if (ipow_capped_u128(a, p, N, ap)) t = std::min(B, integer_root_u128(N / ap, q));
    if (t == 0) {
      total += 2 * (A - a + 1);
      break;
    }
    uint128 tq;
    if (!ipow_capped_u128(t, q, N, tq)) throw std::logic_error("blocked count: cap inconsistency");
    const uint128 a2 = std::min(A, integer_root_u128(N / tq, p));
    total += 2 * (a2 - a + 1) * (2 * t + 1);
    a = a2 + 1;
  }
  return u128_to_big(total);
}

#endif  // __SIZEOF_INT128__

}  // namespace

BigInt count_pairs(const ConstraintSystem& sys, long long L, const CountOptions& opts) {
  validate_system(sys);
  if (L < 1) throw std::invalid_argument("count_pairs: L must be at least 1");

  const BigInt A = ipow(L, static_cast<unsigned>(sys.ell));
  const BigInt B = ipow(L, static_cast<unsigned>(sys.m));
  if (!sys.has_monomial) return (2 * A + 1) * (2 * B + 1);

  const BigInt N = ipow(L, static_cast<unsigned>(sys.n));
  if (sys.p == 0 || sys.q == 0) return count_degenerate(sys, A, B, N);

  if (!opts.blocked && A > opts.budget)
    throw ResourceGuardError(
        "direct count at L=" + std::to_string(L) + " needs " + A.str() +
        " column scans, over the budget of " + std::to_string(opts.budget) +
        "; use blocked mode or raise the budget");

#if defined(__SIZEOF_INT128__)
  // Fast path whenever every intermediate fits comfortably in 128 bits.
  const uint128 big_cap = uint128(1) << 120;
  const uint128 box_cap = uint128(1) << 62;
  uint128 a128, b128, n128;
  if (ipow_capped_u128(static_cast<uint128>(L), static_cast<unsigned>(sys.ell), box_cap, a128) &&
      ipow_capped_u128(static_cast<uint128>(L), static_cast<unsigned>(sys.m), box_cap, b128) &&
      ipow_capped_u128(static_cast<uint128>(L), static_cast<unsigned>(sys.n), big_cap, n128)) {
    return opts.blocked ? count_blocked_u128(sys, a128, b128, n128)
                        : count_direct_u128(sys, a128, b128, n128);
  }
#endif
  return opts.blocked ? count_blocked_big(sys, A, B, N) : count_direct_big(sys, A, B, N);
}

ClosedForm closed_form_exponent(const ConstraintSystem& sys) {
  validate_system(sys);
  if (!sys.has_monomial) return {Rational(sys.ell + sys.m), false};
  if (sys.p == 0 || sys.q == 0)
    throw std::invalid_argument("closed_form_exponent: degenerate monomial (p or q is zero)");
  if (sys.n >= sys.p * sys.ell + sys.q * sys.m) return {Rational(sys.ell + sys.m), false};

  // Exponent of the constrained region: the larger of the two corner terms,
  // never below the two axis contributions L^ell and L^m.
  const Rational e1 = Rational(sys.ell) + Rational(sys.n - sys.p * sys.ell, sys.q);
  const Rational e2 = Rational(sys.m) + Rational(sys.n - sys.q * sys.m, sys.p);
  const Rational area = std::max(e1, e2);
  const Rational axis = Rational(std::max(sys.ell, sys.m));
  ClosedForm out;
  out.exponent = std::max(area, axis);
  out.has_log = (e1 == e2) && area >= axis;
  return out;
}

std::vector<long long> make_grid(long long lmin, long long lmax, int points,
                                 GridSpacing spacing) {
  if (lmin < 2) throw std::invalid_argument("make_grid: smallest scale must be at least 2");
  if (lmax < lmin) throw std::invalid_argument("make_grid: lmax below lmin");
  if (points < 1) throw std::invalid_argument("make_grid: need at least one point");
  if (points == 1 && lmin != lmax)
    throw std::invalid_argument("make_grid: need at least two points to span distinct scales");
  std::vector<long long> grid;
  if (lmin == lmax) {
    grid.push_back(lmin);
  } else {
    for (int i = 0; i < points; ++i) {
      const double f = static_cast<double>(i) / (points - 1);
      double value;
      if (spacing == GridSpacing::log)
        value = std::exp(std::log(static_cast<double>(lmin)) +
                         f * (std::log(static_cast<double>(lmax)) -
                              std::log(static_cast<double>(lmin))));
      else
        value = static_cast<double>(lmin) + f * static_cast<double>(lmax - lmin);
      grid.push_back(std::llround(value));
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<GrowthSample> sample_grid(const ConstraintSystem& sys,
                                      const std::vector<long long>& grid,
                                      const CountOptions& opts, int workers,
                                      const std::function<void(const GrowthSample&)>& on_sample) {
  std::vector<GrowthSample> out(grid.size());
  if (grid.empty()) return out;

  const int n = static_cast<int>(grid.size());
  const int nthreads = std::max(1, std::min(workers, n));
  if (nthreads == 1) {
    for (int i = 0; i < n; ++i) {
      out[static_cast<std::size_t>(i)] = {grid[static_cast<std::size_t>(i)],
                                          count_pairs(sys, grid[static_cast<std::size_t>(i)], opts)};
      if (on_sample) on_sample(out[static_cast<std::size_t>(i)]);
    }
    return out;
  }

  // Fan out over a work queue; deliver results to on_sample in grid order no
  // matter which worker finishes first.
  std::mutex mu;
  std::condition_variable cv;
  std::vector<std::optional<BigInt>> done(grid.size());
  std::exception_ptr first_error;
  std::atomic<int> next{0};
  std::atomic<bool> stop{false};

  auto work = [&] {
    while (!stop.load()) {
      const int i = next.fetch_add(1);
      if (i >= n) return;
      try {
        BigInt c = count_pairs(sys, grid[static_cast<std::size_t>(i)], opts);
        std::lock_guard<std::mutex> lock(mu);
        done[static_cast<std::size_t>(i)] = std::move(c);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!first_error) first_error = std::current_exception();
        stop.store(true);
      }
      cv.notify_all();
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (int i = 0; i < nthreads; ++i) pool.emplace_back(work);

  int flushed = 0;
  {
    std::unique_lock<std::mutex> lock(mu);
    while (flushed < n && !first_error) {
      cv.wait(lock, [&] { return first_error || done[static_cast<std::size_t>(flushed)].has_value(); });
      while (flushed < n && done[static_cast<std::size_t>(flushed)].has_value()) {
        out[static_cast<std::size_t>(flushed)] = {grid[static_cast<std::size_t>(flushed)],
                                                  *done[static_cast<std::size_t>(flushed)]};
        if (on_sample) {
          lock.unlock();
          on_sample(out[static_cast<std::size_t>(flushed)]);
          lock.lock();
        }
        ++flushed;
      }
    }
  }
  stop.store(true);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

FitResult fit_growth(const std::vector<GrowthSample>& samples) {
  const int n = static_cast<int>(samples.size());
  if (n < 4) throw std::invalid_argument("fit_growth: need at least 4 samples");
  for (int i = 0; i < n; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    if (s.L < 2) throw std::invalid_argument("fit_growth: every scale must be at least 2");
    if (s.count < 1) throw std::invalid_argument("fit_growth: every count must be positive");
    for (int j = 0; j < i; ++j)
      if (samples[static_cast<std::size_t>(j)].L == s.L)
        throw std::invalid_argument("fit_growth: duplicate scale " + std::to_string(s.L));
  }

  Eigen::VectorXd y(n);
  Eigen::MatrixXd Xp(n, 2), Xl(n, 3);
  for (int i = 0; i < n; ++i) {
    const auto& s = samples[static_cast<std::size_t>(i)];
    const double lnL = std::log(static_cast<double>(s.L));
    y(i) = log_big(s.count);
    Xp(i, 0) = 1.0;
    Xp(i, 1) = lnL;
    Xl(i, 0) = 1.0;
    Xl(i, 1) = lnL;
    Xl(i, 2) = std::log(lnL);
  }

  auto solve = [&](const Eigen::MatrixXd& X) {
    Eigen::VectorXd beta = X.colPivHouseholderQr().solve(y);
    const double rms = std::sqrt((y - X * beta).squaredNorm() / n);
    return std::make_pair(beta, rms);
  };
  const auto [beta_pure, rms_pure] = solve(Xp);
  const auto [beta_log, rms_log] = solve(Xl);

  // Model selection, fixed: prefer the pure power unless the log factor both
  // improves the residual substantially and comes out with a material
  // exponent.  (Finite-size corrections otherwise masquerade as small logs.)
  FitResult fit;
  fit.n_samples = n;
  const bool pick_log =
      rms_pure >= 1e-12 && rms_log < 0.8 * rms_pure && beta_log(2) >= 0.5;
  if (pick_log) {
    fit.model = FitModel::power_log;
    fit.r_hat = beta_log(1);
    fit.gamma_hat = beta_log(2);
    fit.residual = rms_log;
  } else {
    fit.model = FitModel::pure_power;
    fit.r_hat = beta_pure(1);
    fit.gamma_hat = 0.0;
    fit.residual = rms_pure;
  }
  return fit;
}

}  // namespace mapgrowth
