#pragma once

// Construction of the two-cell complex pairs whose mapping growth this
// project measures: a wedge of two spheres S^ell v S^m with one extra cell
// attached along a Whitehead-product word, together with the target sphere
// data and the integer constraint system the attaching map induces on
// mapping degrees.

#include <memory>
#include <string>
#include <vector>

#include "mapgrowth/graded_lie.hpp"
#include "mapgrowth/numeric.hpp"

namespace mapgrowth {

enum class Family { example1, example2, theorem32 };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

// A pair (X, Y): X = S^ell v S^m with an n-cell attached along zeta,
// Y = S^ell v S^m. zeta lives in the free graded Lie algebra on the two
// wedge factors (lie degrees ell-1 and m-1) and has lie degree n-2.
struct ComplexSpec {
  Family family = Family::example1;
  int ell = 0;
  int m = 0;
  long long p = 0;  // multiplicity of the degree-(ell-1) generator in zeta
  long long q = 0;  // multiplicity of the degree-(m-1) generator in zeta
  int n = 0;        // dimension of the attached cell
  std::shared_ptr<LieAlgebra> algebra;
  TreeId zeta = -1;
};

// Integer points counted at scale L: |a| <= L^ell, |b| <= L^m, and when a
// monomial constraint is present additionally |a^p b^q| <= L^n.
struct ConstraintSystem {
  int ell = 0;
  int m = 0;
  bool has_monomial = false;
  long long p = 0;
  long long q = 0;
  int n = 0;
};

ComplexSpec make_example1();
ComplexSpec make_example2();

// Preset lookup used by the command-line tool; theorem32 needs explicit
// parameters and is not constructible by name alone.
ComplexSpec make_preset(const std::string& name);

// Assemble and validate a ComplexSpec for the given family parameters;
// throws std::invalid_argument naming the violated constraint. Checks that
// zeta is either in Hall form or certified nonzero via the associative
// embedding.
ComplexSpec build_space(Family family, int ell, int m, long long p, long long q);

// Parameters of Theorem-3.2 type realizing the growth exponent r > 4:
// finds (ell, m, p, q) with m - ell in {1, 2}, 1 <= p < q, and
// ell + m + (2 - p - q) / q == r exactly.
struct SpaceParameters {
  int ell = 0;
  int m = 0;
  long long p = 0;
  long long q = 0;
  int n = 0;
};

SpaceParameters solve_parameters(const Rational& r);

// Image of zeta under the map of degree a on S^ell and degree b on S^m:
// each degree-(ell-1) leaf scales by a and each degree-(m-1) leaf by b, so
// the pushforward is a^p b^q times the normalized class of zeta.
struct Pushforward {
  BigInt coefficient;  // a^p * b^q
  TreeId monomial = -1;
};

Pushforward pushforward(const ComplexSpec& spec, const BigInt& a, const BigInt& b);

ConstraintSystem derive_constraints(const ComplexSpec& spec);

// Box-only system with no monomial constraint (growth exponent ell + m).
ConstraintSystem box_system(int ell, int m);

// Upper bound ell + m predicted by volume considerations for maps between
// the underlying sphere wedges.
int gromov_predicted_exponent(const ComplexSpec& spec);

// Sum of rank * weight over a list of obstruction classes.
long long obstruction_count_exponent(const std::vector<std::pair<long long, long long>>& classes);

}  // namespace mapgrowth
