#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqmod/equiangular.hpp"

namespace eqmod {

enum class Theorem {
  VlsModular,
  VlsNorm,
  VlsSpecial,
  GerzonModular,
  VlsAb,
  GerzonAb,
  ClassicalRelative,
  ClassicalGerzonReal,
  ClassicalGerzonComplex,
};
const char* to_string(Theorem theorem);

struct Hypothesis {
  std::string name;
  bool verdict = false;
  std::string detail;
};

/// One theorem evaluated against concrete inputs. `pass` is the theorem's
/// conclusion (witness positivity or the numeric cap) gated on its required
/// hypotheses; entries marked "informational" in their detail (norm-form
/// corollaries such as "n <= bound_value") are recorded verbatim but do not
/// gate pass.
struct BoundCertificate {
  Theorem theorem = Theorem::VlsModular;
  std::vector<Hypothesis> hypotheses;
  std::optional<AlgebraElement> witness;  // the PSD difference element, when one exists
  std::optional<double> bound_value;      // numeric cap on n, when one exists
  bool pass = false;
  double tol = kDefaultTol;
};

enum class ScalarField { Real, Complex };
enum class NormBoundMode { Classical, Modular };

/// Relative bound over a commutative algebra: witness = d(1-a) - n(1-da)
/// must be positive. When 1-da is invertible the norm-form cap
/// d*||(1-a)(1-da)^{-1}|| is recorded as bound_value.
/// Throws HypothesisViolation for noncommutative algebras and InvalidTarget
/// for non-positive a.
BoundCertificate vls_modular(int d, int n, const AlgebraElement& a, double tol = kDefaultTol);

/// Scalar relative bound n(1-d g^2) <= d(1-g^2); bound_value = d(1-g^2)/(1-d g^2)
/// when gamma < 1/sqrt(d). Classical mode stamps the certificate as the
/// classical theorem, modular mode as its norm-equiangular module version.
BoundCertificate vls_norm(int d, int n, double gamma, NormBoundMode mode,
                          double tol = kDefaultTol);

/// Noncommutative relative bound: records verify_special and
/// verify_norm_gamma as hypotheses, then evaluates the scalar conclusion.
BoundCertificate vls_special(const Configuration& config, double gamma, double tol = kDefaultTol);

struct IndependenceReport {
  int nullspace_dimension = 0;
  double smallest_singular_value = 0.0;
  bool independent = false;
  double threshold = 0.0;  // tol * largest singular value of the stacked system
};

/// A-linear independence of the rank-one operators t_j (x) t_j: solves
/// sum_j c_j outer(t_j) = 0 for c_j in A as a complex linear system
/// (d^2 * dim_C(A) equations, n * dim_C(A) unknowns) and reports the
/// nullspace dimension from its singular values.
IndependenceReport gerzon_independence(const Configuration& config, double tol = kDefaultTol);

/// Universal bound n <= d^2 for modular a-equiangular lines with 1-a
/// invertible. Hypothesis failures (including a non-equiangular input) are
/// recorded in the certificate, never thrown.
BoundCertificate gerzon_modular(const Configuration& config, const AlgebraElement& a,
                                double tol = kDefaultTol);

/// (a,b) relative bound over a commutative algebra: witness
/// d(b-a) - n(b^2-da) must be positive; norm-form cap recorded when b^2-da
/// is invertible. Same error behavior as vls_modular.
BoundCertificate vls_ab(int d, int n, const AlgebraElement& a, const AlgebraElement& b,
                        double tol = kDefaultTol);

/// (a,b) universal bound: n <= d^2 when b^2-a and (n-1)a+b^2 are invertible.
BoundCertificate gerzon_ab(const Configuration& config, const AlgebraElement& a,
                           const AlgebraElement& b, double tol = kDefaultTol);

/// Scalar universal bounds: n <= d(d+1)/2 over R, n <= d^2 over C.
BoundCertificate classical_gerzon(int d, int n, ScalarField field);

}  // namespace eqmod
