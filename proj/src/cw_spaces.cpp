#include "mapgrowth/cw_spaces.hpp"

#include <stdexcept>

namespace mapgrowth {

std::string family_name(Family f) {
  switch (f) {
    case Family::example1: return "example1";
    case Family::example2: return "example2";
    case Family::theorem32: return "theorem32";
  }
  throw std::logic_error("unreachable family");
}

Family family_from_name(const std::string& name) {
  if (name == "example1") return Family::example1;
  if (name == "example2") return Family::example2;
  if (name == "theorem32") return Family::theorem32;
  throw std::invalid_argument("unknown family '" + name + "'");
}

namespace {

TreeId build_zeta(const LieAlgebra& alg, Family family, long long p, long long q) {
  const TreeId x = alg.leaf("x");
  const TreeId y = alg.leaf("y");
  switch (family) {
    case Family::example1:
      return alg.node(x, alg.node(x, y));
    case Family::example2: {
      const TreeId xy = alg.node(x, y);
      return alg.node(xy, xy);
    }
    case Family::theorem32: {
      // [x,...,[x,[y,...,[y,x]...]]...]: q nested y's around x, then p-1 x's.
      TreeId cur = x;
      for (long long i = 0; i < q; ++i) cur = alg.node(y, cur);
      for (long long i = 1; i < p; ++i) cur = alg.node(x, cur);
      return cur;
    }
  }
  throw std::logic_error("unreachable family");
}

}  // namespace

ComplexSpec build_space(Family family, int ell, int m, long long p, long long q) {
  switch (family) {
    case Family::example1:
      if (ell != 3 || m != 4 || p != 2 || q != 1)
        throw std::invalid_argument("example1 requires (ell, m, p, q) = (3, 4, 2, 1)");
      break;
    case Family::example2:
      if (ell != 3 || m != 4 || p != 2 || q != 2)
        throw std::invalid_argument("example2 requires (ell, m, p, q) = (3, 4, 2, 2)");
      break;
    case Family::theorem32:
      if (ell < 2) throw std::invalid_argument("theorem32 requires ell >= 2");
      if (m < 4) throw std::invalid_argument("theorem32 requires m >= 4");
      if (ell >= m) throw std::invalid_argument("theorem32 requires ell < m");
      if (m - ell != 1 && m - ell != 2)
        throw std::invalid_argument("theorem32 requires m - ell in {1, 2}");
      if (p < 1) throw std::invalid_argument("theorem32 requires p >= 1");
      if (p >= q) throw std::invalid_argument("theorem32 requires p < q");
      break;
  }

  ComplexSpec spec;
  spec.family = family;
  spec.ell = ell;
  spec.m = m;
  spec.p = p;
  spec.q = q;
  spec.n = static_cast<int>(p * (ell - 1) + q * (m - 1) + 2);
  spec.algebra = std::make_shared<LieAlgebra>(
      std::vector<Generator>{make_generator("x", ell), make_generator("y", m)});
  spec.zeta = build_zeta(*spec.algebra, family, p, q);

  if (spec.algebra->lie_degree(spec.zeta) != spec.n - 2)
    throw std::logic_error("attaching class has wrong lie degree");
  const auto multi = spec.algebra->leaf_multidegree(spec.zeta);
  if (multi[0] != p || multi[1] != q)
    throw std::logic_error("attaching class has wrong multidegree");

  // The class must be visibly nonzero: either already a basis monomial, or
  // certified nonzero through the associative embedding.
  if (!spec.algebra->is_hall(spec.zeta) &&
      spec.algebra->certify_nonzero(spec.zeta).verdict != EmbedVerdict::nonzero)
    throw std::invalid_argument("attaching class is not certified nonzero");

  return spec;
}

ComplexSpec make_example1() { return build_space(Family::example1, 3, 4, 2, 1); }

ComplexSpec make_example2() { return build_space(Family::example2, 3, 4, 2, 2); }

ComplexSpec make_preset(const std::string& name) {
  if (name == "example1") return make_example1();
  if (name == "example2") return make_example2();
  throw std::invalid_argument("unknown preset '" + name +
                              "' (theorem32 needs explicit parameters)");
}

SpaceParameters solve_parameters(const Rational& r) {
  if (r <= 4) throw std::invalid_argument("growth exponent must exceed 4");

  // The window (s-2, s-1] containing r fixes the sphere dimensions.
  const BigInt s_big = ceil_rational(r) + 1;
  const int s = s_big.convert_to<int>();
  SpaceParameters out;
  if (s % 2 == 1) {
    out.ell = (s - 1) / 2;
    out.m = (s + 1) / 2;
  } else {
    out.ell = s / 2 - 1;
    out.m = s / 2 + 1;
  }

  // r = ell + m - c with c = s - r in [1, 2); write c - 1 = u/v in lowest
  // terms, take q the smallest multiple of v exceeding 2 / (2 - c), and
  // p = (c - 1) q + 2.  Then p < q and ell + m + (2 - p - q)/q = r exactly.
  const Rational c = Rational(s) - r;
  const Rational cm1 = c - 1;
  const BigInt u = boost::multiprecision::numerator(cm1);
  const BigInt v = boost::multiprecision::denominator(cm1);
  const Rational threshold = 2 / (2 - c);
  const BigInt k = floor_rational(threshold / Rational(v)) + 1;
  const BigInt q = k * v;
  const BigInt p = u * k + 2;
  if (p > 1'000'000'000 || q > 1'000'000'000)
    throw std::invalid_argument("exponent r needs impractically large parameters");
  out.p = p.convert_to<long long>();
  out.q = q.convert_to<long long>();
  const long long n = out.p * (out.ell - 1) + out.q * (out.m - 1) + 2;
  if (n > std::numeric_limits<int>::max())
    throw std::invalid_argument("exponent r needs an impractically large cell dimension");
  out.n = static_cast<int>(n);

  const Rational check = Rational(out.ell + out.m) + Rational(2 - out.p - out.q, out.q);
  if (check != r) throw std::logic_error("parameter solution failed to round-trip");
  return out;
}

Pushforward pushforward(const ComplexSpec& spec, const BigInt& a, const BigInt& b) {
  Pushforward out;
  out.coefficient = ipow(a, static_cast<unsigned>(spec.p)) * ipow(b, static_cast<unsigned>(spec.q));
  out.monomial = spec.zeta;
  return out;
}

ConstraintSystem derive_constraints(const ComplexSpec& spec) {
  ConstraintSystem sys;
  sys.ell = spec.ell;
  sys.m = spec.m;
  sys.has_monomial = true;
  sys.p = spec.p;
  sys.q = spec.q;
  sys.n = spec.n;
  return sys;
}

ConstraintSystem box_system(int ell, int m) {
  if (ell < 1 || m < 1) throw std::invalid_argument("box system needs ell, m >= 1");
  ConstraintSystem sys;
  sys.ell = ell;
  sys.m = m;
  sys.has_monomial = false;
  return sys;
}

int gromov_predicted_exponent(const ComplexSpec& spec) { return spec.ell + spec.m; }

long long obstruction_count_exponent(
    const std::vector<std::pair<long long, long long>>& classes) {
  long long total = 0;
  for (const auto& [rank, weight] : classes) total += rank * weight;
  return total;
}

}  // namespace mapgrowth
