#include <doctest.h>

#include <cmath>
#include <random>

#include "mapgrowth/cw_spaces.hpp"
#include "mapgrowth/growth_count.hpp"

using namespace mapgrowth;

namespace {

// Reference count by direct enumeration over the full box.  Only usable for
// tiny L, which is exactly the point: it shares no code with count_pairs.
BigInt brute_count(const ConstraintSystem& sys, long long L) {
  const BigInt A = ipow(BigInt(L), static_cast<unsigned>(sys.ell));
  const BigInt B = ipow(BigInt(L), static_cast<unsigned>(sys.m));
  BigInt total = 0;
  for (BigInt a = -A; a <= A; ++a)
    for (BigInt b = -B; b <= B; ++b) {
      if (sys.has_monomial) {
        BigInt mono = ipow(a, static_cast<unsigned>(sys.p)) *
                      ipow(b, static_cast<unsigned>(sys.q));
        if (mono < 0) mono = -mono;
        if (mono > ipow(BigInt(L), static_cast<unsigned>(sys.n))) continue;
      }
      ++total;
    }
  return total;
}

}  // namespace

TEST_CASE("frozen small-scale counts") {
  const ConstraintSystem ex1 = derive_constraints(make_example1());
  CHECK(count_pairs(ex1, 1) == 9);
  CHECK(count_pairs(ex1, 2) == 497);
  CHECK(count_pairs(ex1, 3) == 7273);

  const ConstraintSystem ex2 = derive_constraints(make_example2());
  CHECK(count_pairs(ex2, 1) == 9);
  CHECK(count_pairs(ex2, 2) == 461);
  CHECK(count_pairs(ex2, 3) == 6201);

  const ConstraintSystem t32 = derive_constraints(build_space(Family::theorem32, 2, 4, 2, 3));
  CHECK(count_pairs(t32, 1) == 9);
  CHECK(count_pairs(t32, 2) == 221);
  CHECK(count_pairs(t32, 3) == 1849);
}

TEST_CASE("count_pairs matches brute-force enumeration") {
  const ConstraintSystem systems[] = {
      derive_constraints(make_example1()),
      derive_constraints(make_example2()),
      derive_constraints(build_space(Family::theorem32, 2, 4, 2, 3)),
      derive_constraints(build_space(Family::theorem32, 3, 4, 1, 2)),
      box_system(1, 2),
      box_system(2, 3),
  };
  for (const ConstraintSystem& sys : systems)
    for (long long L = 1; L <= (sys.m >= 4 ? 3 : 4); ++L)
      CHECK(count_pairs(sys, L) == brute_count(sys, L));
}

TEST_CASE("blocked counting agrees with the direct scan") {
  const ConstraintSystem systems[] = {
      derive_constraints(make_example1()),
      derive_constraints(make_example2()),
      derive_constraints(build_space(Family::theorem32, 2, 4, 2, 3)),
  };
  CountOptions blocked;
  blocked.blocked = true;
  for (const ConstraintSystem& sys : systems)
    for (long long L : {2LL, 3LL, 5LL, 8LL, 16LL, 31LL})
      CHECK(count_pairs(sys, L, blocked) == count_pairs(sys, L));
}

TEST_CASE("counts depend only on the constraint system") {
  // box systems have the exact closed form (2L^ell+1)(2L^m+1).
  for (long long L : {1LL, 2LL, 10LL, 100LL}) {
    const BigInt a = 2 * ipow(BigInt(L), 1) + 1;
    const BigInt b = 2 * ipow(BigInt(L), 2) + 1;
    CHECK(count_pairs(box_system(1, 2), L) == a * b);
  }
}

TEST_CASE("counts are odd and monotone in L and n") {
  const ConstraintSystem ex1 = derive_constraints(make_example1());
  BigInt prev = 0;
  for (long long L = 1; L <= 8; ++L) {
    const BigInt c = count_pairs(ex1, L);
    CHECK(c % 2 == 1);  // the (a, b) -> (-a, -b) symmetry fixes only (0, 0)
    CHECK(c > prev);
    prev = c;
  }
  // Loosening the monomial bound can only add pairs.
  ConstraintSystem wider = ex1;
  wider.n = ex1.n + 1;
  for (long long L = 2; L <= 6; ++L)
    CHECK(count_pairs(wider, L) >= count_pairs(ex1, L));
}

TEST_CASE("the resource guard trips on direct mode only") {
  const ConstraintSystem ex1 = derive_constraints(make_example1());
  CountOptions tight;
  tight.budget = 10;
  CHECK_THROWS_AS(count_pairs(ex1, 16, tight), ResourceGuardError);
  tight.blocked = true;
  CHECK(count_pairs(ex1, 16, tight) == count_pairs(ex1, 16));
}

TEST_CASE("closed-form exponents") {
  ClosedForm cf = closed_form_exponent(derive_constraints(make_example1()));
  CHECK(cf.exponent == Rational(13, 2));
  CHECK_FALSE(cf.has_log);

  cf = closed_form_exponent(derive_constraints(make_example2()));
  CHECK(cf.exponent == 6);
  CHECK(cf.has_log);

  cf = closed_form_exponent(box_system(1, 2));
  CHECK(cf.exponent == 3);
  CHECK_FALSE(cf.has_log);

  // Monomial slack beyond p*ell + q*m makes the constraint vacuous.
  ConstraintSystem loose = derive_constraints(make_example1());
  loose.n = loose.p * loose.ell + loose.q * loose.m;
  cf = closed_form_exponent(loose);
  CHECK(cf.exponent == 7);
  CHECK_FALSE(cf.has_log);

  ConstraintSystem degenerate = derive_constraints(make_example1());
  degenerate.p = 0;
  CHECK_THROWS_AS(closed_form_exponent(degenerate), std::invalid_argument);
}

TEST_CASE("closed form is the exact max of the two corner exponents") {
  std::mt19937_64 rng(88);
  for (int trial = 0; trial < 200; ++trial) {
    ConstraintSystem sys;
    sys.ell = 1 + static_cast<int>(rng() % 4);
    sys.m = sys.ell + static_cast<int>(rng() % 3);
    sys.has_monomial = true;
    sys.p = 1 + static_cast<long long>(rng() % 5);
    sys.q = 1 + static_cast<long long>(rng() % 5);
    sys.n = 1 + static_cast<int>(rng() % 30);
    if (sys.n >= sys.p * sys.ell + sys.q * sys.m) continue;
    const ClosedForm cf = closed_form_exponent(sys);
    const Rational e1 = Rational(sys.ell) + Rational(sys.n - sys.p * sys.ell, sys.q);
    const Rational e2 = Rational(sys.m) + Rational(sys.n - sys.q * sys.m, sys.p);
    Rational expect = std::max({e1, e2, Rational(sys.ell), Rational(sys.m)});
    CHECK(cf.exponent == expect);
    CHECK(cf.has_log == (e1 == e2 && e1 >= std::max(Rational(sys.ell), Rational(sys.m))));
  }
}

TEST_CASE("make_grid spacing") {
  CHECK(make_grid(16, 256, 9, GridSpacing::log) ==
        std::vector<long long>{16, 23, 32, 45, 64, 91, 128, 181, 256});
  CHECK(make_grid(10, 50, 5, GridSpacing::linear) ==
        std::vector<long long>{10, 20, 30, 40, 50});
  CHECK(make_grid(2, 4, 9, GridSpacing::log) == std::vector<long long>{2, 3, 4});
  CHECK(make_grid(7, 7, 3, GridSpacing::log) == std::vector<long long>{7});
  CHECK_THROWS_AS(make_grid(2, 4, 1, GridSpacing::log), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(4, 2, 3, GridSpacing::log), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0, 4, 3, GridSpacing::log), std::invalid_argument);
}

TEST_CASE("sample_grid is deterministic across worker counts") {
  const ConstraintSystem ex1 = derive_constraints(make_example1());
  const auto grid = make_grid(2, 32, 6, GridSpacing::log);
  std::vector<long long> seen;
  const auto seq = sample_grid(ex1, grid, {}, 1, [&seen](const GrowthSample& s) {
    seen.push_back(s.L);
  });
  const auto par = sample_grid(ex1, grid, {}, 4, nullptr);
  REQUIRE(seq.size() == grid.size());
  REQUIRE(par.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(seq[i].L == grid[i]);
    CHECK(seq[i].count == par[i].count);
  }
  CHECK(seen == grid);  // callback fires in grid order even when threaded
}

TEST_CASE("sample_grid propagates failures") {
  const ConstraintSystem ex1 = derive_constraints(make_example1());
  CountOptions tight;
  tight.budget = 10;
  CHECK_THROWS_AS(sample_grid(ex1, {2, 4, 64}, tight, 2, nullptr), ResourceGuardError);
}

TEST_CASE("fit recovers pure power laws exactly") {
  for (const Rational& r : {Rational(2), Rational(7, 2), Rational(13, 2)}) {
    // With L = s^2 the value L^r = s^{2r} is an exact integer for every
    // exponent above, so the fit sees noiseless data.
    const long long two_r = (2 * numerator(r) / denominator(r)).convert_to<long long>();
    std::vector<GrowthSample> samples;
    for (long long s = 2; s <= 9; ++s) {
      GrowthSample g;
      g.L = s * s;
      g.count = ipow(BigInt(s), static_cast<unsigned>(two_r));
      samples.push_back(g);
    }
    const FitResult fit = fit_growth(samples);
    CHECK(fit.model == FitModel::pure_power);
    CHECK(fit.r_hat == doctest::Approx(r.convert_to<double>()).epsilon(1e-9));
    CHECK(fit.gamma_hat == 0.0);
    CHECK(fit.residual < 1e-12);
    CHECK(fit.n_samples == 8);
  }
}

TEST_CASE("fit recognizes a logarithmic factor") {
  std::vector<GrowthSample> samples;
  for (long long L : {16, 32, 64, 128, 256, 512, 1024}) {
    GrowthSample g;
    g.L = L;
    const double v = 3.0 * std::pow(static_cast<double>(L), 6.0) * std::log(static_cast<double>(L));
    g.count = BigInt(static_cast<long long>(v / 1e6)) * 1000000;  // keep magnitudes sane
    samples.push_back(g);
  }
  const FitResult fit = fit_growth(samples);
  CHECK(fit.model == FitModel::power_log);
  CHECK(fit.r_hat == doctest::Approx(6.0).epsilon(0.02));
  CHECK(fit.gamma_hat == doctest::Approx(1.0).epsilon(0.25));
}

TEST_CASE("fit stays pure on power data even with the log model available") {
  // L^5 with no log factor: the richer model must not be selected just
  // because it has an extra parameter.
  std::vector<GrowthSample> samples;
  for (long long L : {8, 16, 32, 64, 128, 256}) {
    GrowthSample g;
    g.L = L;
    g.count = ipow(BigInt(L), 5);
    samples.push_back(g);
  }
  const FitResult fit = fit_growth(samples);
  CHECK(fit.model == FitModel::pure_power);
  CHECK(fit.r_hat == doctest::Approx(5.0).epsilon(1e-10));
}

TEST_CASE("fit validates its input") {
  std::vector<GrowthSample> samples;
  for (long long L : {4, 8, 16}) {
    GrowthSample g;
    g.L = L;
    g.count = L * L;
    samples.push_back(g);
  }
  CHECK_THROWS_AS(fit_growth(samples), std::invalid_argument);  // too few
  GrowthSample dup;
  dup.L = 16;
  dup.count = 300;
  samples.push_back(dup);
  CHECK_THROWS_AS(fit_growth(samples), std::invalid_argument);  // repeated L
  samples[3].L = 32;
  samples[3].count = 0;
  CHECK_THROWS_AS(fit_growth(samples), std::invalid_argument);  // zero count
  samples[3].count = 1024;
  CHECK(fit_growth(samples).model == FitModel::pure_power);
  samples[0].L = 1;
  CHECK_THROWS_AS(fit_growth(samples), std::invalid_argument);  // L below 2
}

TEST_CASE("count_pairs validates the system") {
  ConstraintSystem bad = box_system(1, 2);
  bad.ell = 0;
  CHECK_THROWS_AS(count_pairs(bad, 4), std::invalid_argument);
  const ConstraintSystem ok = box_system(1, 2);
  CHECK_THROWS_AS(count_pairs(ok, 0), std::invalid_argument);
  ConstraintSystem neg = derive_constraints(make_example1());
  neg.q = -1;
  CHECK_THROWS_AS(count_pairs(neg, 4), std::invalid_argument);
}

TEST_CASE("large scales leave the fast path without changing results") {
  // n = 25 pushes L^n past 2^120 once L reaches 32, forcing the count onto
  // arbitrary-precision arithmetic; blocked and direct must still agree.
  const ConstraintSystem t32 = derive_constraints(build_space(Family::theorem32, 2, 4, 5, 6));
  CountOptions blocked;
  blocked.blocked = true;
  for (long long L : {31LL, 32LL, 33LL})
    CHECK(count_pairs(t32, L, blocked) == count_pairs(t32, L));
}
