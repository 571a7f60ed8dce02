#include "eqmod/bounds.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace eqmod {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

Hypothesis spectral_hypothesis(const std::string& name, bool verdict, const SpectralReport& rep) {
  std::ostringstream detail;
  detail << "min eigenvalue " << num(rep.min_eigenvalue) << ", min singular value "
         << num(rep.min_singular_value) << ", threshold " << num(rep.threshold);
  return {name, verdict, detail.str()};
}

// Small Kronecker products for the independence system; A (x) I_p.
Eigen::MatrixXcd kron_with_identity(const Eigen::MatrixXcd& a, int p) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(a.rows() * p, a.cols() * p);
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * p, c * p, p, p) = a(r, c) * Eigen::MatrixXcd::Identity(p, p);
    }
  }
  return out;
}

void record_norm_cap(BoundCertificate& cert, int n, const AlgebraElement& numerator,
                     const AlgebraElement& denominator, int d, const std::string& denom_name,
                     double tol) {
  const auto inv_rep = spectral_tests(denominator, tol);
  cert.hypotheses.push_back(
      spectral_hypothesis(denom_name + " invertible (informational)", inv_rep.invertible, inv_rep));
  if (!inv_rep.invertible) return;
  const double bound = static_cast<double>(d) * op_norm(numerator * inverse(denominator, tol));
  cert.bound_value = bound;
  const bool within = static_cast<double>(n) <= bound + tol * (1.0 + std::abs(bound));
  cert.hypotheses.push_back({"n <= bound_value (informational)", within,
                             "n = " + std::to_string(n) + ", bound_value = " + num(bound)});
}

}  // namespace

const char* to_string(Theorem theorem) {
  switch (theorem) {
    case Theorem::VlsModular: return "vls-modular";
    case Theorem::VlsNorm: return "vls-norm";
    case Theorem::VlsSpecial: return "vls-special";
    case Theorem::GerzonModular: return "gerzon-modular";
    case Theorem::VlsAb: return "vls-ab";
    case Theorem::GerzonAb: return "gerzon-ab";
    case Theorem::ClassicalRelative: return "classical-relative";
    case Theorem::ClassicalGerzonReal: return "classical-gerzon-real";
    case Theorem::ClassicalGerzonComplex: return "classical-gerzon-complex";
  }
  return "unknown";
}

BoundCertificate vls_modular(int d, int n, const AlgebraElement& a, double tol) {
  if (d < 1 || n < 1) throw std::invalid_argument("vls_modular: d and n must be positive");
  const AlgebraDescriptor& desc = a.algebra();
  if (!desc.commutative()) {
    throw HypothesisViolation("vls_modular: the relative bound requires a commutative algebra");
  }
  const auto a_rep = spectral_tests(a, tol);
  if (!a_rep.positive) throw InvalidTarget("vls_modular: target a must be positive");

  BoundCertificate cert;
  cert.theorem = Theorem::VlsModular;
  cert.tol = tol;
  cert.hypotheses.push_back({"algebra commutative", true, "all blocks are 1x1"});
  cert.hypotheses.push_back(spectral_hypothesis("a positive", true, a_rep));

  const AlgebraElement one = AlgebraElement::identity(desc);
  const AlgebraElement one_minus_da = one - static_cast<double>(d) * a;
  AlgebraElement witness = static_cast<double>(d) * (one - a) - static_cast<double>(n) * one_minus_da;
  const auto w_rep = spectral_tests(witness, tol);
  cert.pass = w_rep.positive;
  cert.hypotheses.push_back(
      spectral_hypothesis("witness d(1-a) - n(1-da) positive", w_rep.positive, w_rep));
  cert.witness = std::move(witness);

  record_norm_cap(cert, n, one - a, one_minus_da, d, "1 - d*a", tol);
  return cert;
}

BoundCertificate vls_norm(int d, int n, double gamma, NormBoundMode mode, double tol) {
  if (d < 1 || n < 1) throw std::invalid_argument("vls_norm: d and n must be positive");
  if (gamma < 0.0 || gamma > 1.0) throw InvalidTarget("vls_norm: gamma must lie in [0, 1]");

  BoundCertificate cert;
  cert.theorem = mode == NormBoundMode::Classical ? Theorem::ClassicalRelative : Theorem::VlsNorm;
  cert.tol = tol;
  cert.hypotheses.push_back({"gamma in [0,1]", true, "gamma = " + num(gamma)});

  const double g2 = gamma * gamma;
  const double lhs = static_cast<double>(n) * (1.0 - static_cast<double>(d) * g2);
  const double rhs = static_cast<double>(d) * (1.0 - g2);
  cert.pass = lhs <= rhs + tol;
  cert.witness = AlgebraElement::scalar(scalars(), Complex(rhs - lhs, 0.0));
  cert.hypotheses.push_back({"n(1-d g^2) <= d(1-g^2)", cert.pass,
                             "lhs = " + num(lhs) + ", rhs = " + num(rhs)});

  const bool strict = gamma < 1.0 / std::sqrt(static_cast<double>(d));
  cert.hypotheses.push_back({"gamma < 1/sqrt(d) (informational)", strict,
                             "gamma = " + num(gamma) + ", 1/sqrt(d) = " +
                                 num(1.0 / std::sqrt(static_cast<double>(d)))});
  if (strict) {
    const double bound = rhs / (1.0 - static_cast<double>(d) * g2);
    cert.bound_value = bound;
    const bool within = static_cast<double>(n) <= bound + tol * (1.0 + std::abs(bound));
    cert.hypotheses.push_back({"n <= bound_value (informational)", within,
                               "n = " + std::to_string(n) + ", bound_value = " + num(bound)});
  }
  return cert;
}

BoundCertificate vls_special(const Configuration& config, double gamma, double tol) {
  BoundCertificate cert;
  cert.theorem = Theorem::VlsSpecial;
  cert.tol = tol;

  VerificationReport special = verify_special(config, tol);
  {
    std::ostringstream detail;
    const auto spectrum = hermitian_spectrum(*special.witness);
    detail << "witness d*B - n^2*1 min eigenvalue "
           << num(*std::min_element(spectrum.begin(), spectrum.end()));
    cert.hypotheses.push_back({"special condition n^2 <= d*B", special.pass, detail.str()});
  }
  VerificationReport norm = verify_norm_gamma(config, gamma, tol);
  {
    std::ostringstream detail;
    detail << "max unit deviation " << num(norm.max_unit_deviation) << ", max angle deviation "
           << num(norm.max_angle_deviation);
    cert.hypotheses.push_back({"norm-gamma equiangular", norm.pass, detail.str()});
  }
  cert.witness = std::move(special.witness);

  const int d = config.d();
  const int n = config.n();
  const double g2 = gamma * gamma;
  const double lhs = static_cast<double>(n) * (1.0 - static_cast<double>(d) * g2);
  const double rhs = static_cast<double>(d) * (1.0 - g2);
  const bool conclusion = lhs <= rhs + tol;
  cert.hypotheses.push_back({"n(1-d g^2) <= d(1-g^2)", conclusion,
                             "lhs = " + num(lhs) + ", rhs = " + num(rhs)});
  if (gamma < 1.0 / std::sqrt(static_cast<double>(d))) {
    cert.bound_value = rhs / (1.0 - static_cast<double>(d) * g2);
  }
  cert.pass = special.pass && norm.pass && conclusion;
  return cert;
}

IndependenceReport gerzon_independence(const Configuration& config, double tol) {
  const AlgebraDescriptor& desc = config.algebra();
  const int d = config.d();
  const int n = config.n();
  const int dim = desc.dim();
  const int rows = d * d * dim;
  const int cols = n * dim;

  // Left multiplication by the unknown c_j acts per block as
  // C -> C * M_j(r,s), i.e. vec(C M) = (M^T (x) I) vec(C).
  Eigen::MatrixXcd system = Eigen::MatrixXcd::Zero(rows, cols);
  std::vector<int> block_offset(static_cast<size_t>(desc.num_blocks()), 0);
  {
    int off = 0;
    for (int i = 0; i < desc.num_blocks(); ++i) {
      block_offset[static_cast<size_t>(i)] = off;
      off += desc.block_sizes()[static_cast<size_t>(i)] * desc.block_sizes()[static_cast<size_t>(i)];
    }
  }
  for (int j = 0; j < n; ++j) {
    const OuterOperatorMatrix outer = outer_operator(config.vector(j));
    for (int r = 0; r < d; ++r) {
      for (int s = 0; s < d; ++s) {
        const AlgebraElement& m = outer.entry(r, s);
        const int eq_base = (r * d + s) * dim;
        for (int i = 0; i < desc.num_blocks(); ++i) {
          const int p = desc.block_sizes()[static_cast<size_t>(i)];
          system.block(eq_base + block_offset[static_cast<size_t>(i)],
                       j * dim + block_offset[static_cast<size_t>(i)], p * p, p * p) =
              kron_with_identity(m.block(i).transpose(), p);
        }
      }
    }
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(system);
  const Eigen::VectorXd sigma = svd.singularValues();
  IndependenceReport rep;
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  rep.threshold = tol * sigma_max;
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > rep.threshold) ++rank;
  }
  rep.nullspace_dimension = cols - rank;
  rep.smallest_singular_value = rows >= cols && sigma.size() > 0 ? sigma(sigma.size() - 1) : 0.0;
  rep.independent = rep.nullspace_dimension == 0;
  return rep;
}

namespace {

// Shared tail of the two Gerzon certificates: independence check plus the
// n <= d^2 conclusion.
void finish_gerzon(BoundCertificate& cert, const Configuration& config, bool hypotheses_ok,
                   double tol) {
  const auto ind = gerzon_independence(config, tol);
  {
    std::ostringstream detail;
    detail << "nullspace dimension " << ind.nullspace_dimension << ", smallest singular value "
           << num(ind.smallest_singular_value) << ", threshold " << num(ind.threshold);
    cert.hypotheses.push_back(
        {"rank-one operators A-linearly independent", ind.independent, detail.str()});
  }
  const int d = config.d();
  const int n = config.n();
  cert.bound_value = static_cast<double>(d) * static_cast<double>(d);
  const bool conclusion = n <= d * d;
  cert.hypotheses.push_back({"n <= d^2", conclusion,
                             "n = " + std::to_string(n) + ", d^2 = " + std::to_string(d * d)});
  cert.pass = hypotheses_ok && ind.independent && conclusion;
}

Hypothesis equiangularity_hypothesis(const Configuration& config, const AlgebraElement& a,
                                     const std::optional<AlgebraElement>& b, bool a_ok, bool b_ok,
                                     double tol, bool* verdict_out) {
  if (!a_ok || !b_ok) {
    *verdict_out = false;
    return {"configuration equiangular for the targets", false,
            "skipped: target not positive within tolerance"};
  }
  const VerificationReport rep = verify_modular_ab(config, a, b, tol);
  *verdict_out = rep.pass;
  std::ostringstream detail;
  detail << "max unit deviation " << num(rep.max_unit_deviation) << ", max angle deviation "
         << num(rep.max_angle_deviation);
  return {"configuration equiangular for the targets", rep.pass, detail.str()};
}

}  // namespace

BoundCertificate gerzon_modular(const Configuration& config, const AlgebraElement& a, double tol) {
  if (!(a.algebra() == config.algebra())) {
    throw IncompatibleAlgebras("gerzon_modular: target a lives over a different algebra");
  }
  BoundCertificate cert;
  cert.theorem = Theorem::GerzonModular;
  cert.tol = tol;

  const auto a_rep = spectral_tests(a, tol);
  cert.hypotheses.push_back(spectral_hypothesis("a positive", a_rep.positive, a_rep));

  bool equiangular = false;
  cert.hypotheses.push_back(
      equiangularity_hypothesis(config, a, std::nullopt, a_rep.positive, true, tol, &equiangular));

  const AlgebraElement one = AlgebraElement::identity(config.algebra());
  const auto inv_rep = spectral_tests(one - a, tol);
  cert.hypotheses.push_back(spectral_hypothesis("1 - a invertible", inv_rep.invertible, inv_rep));

  // Automatic once a >= 0, still confirmed numerically.
  const auto shifted = spectral_tests(static_cast<double>(config.n() - 1) * a + one, tol);
  cert.hypotheses.push_back(
      spectral_hypothesis("(n-1)a + 1 invertible", shifted.invertible, shifted));

  cert.hypotheses.push_back({"algebra has invariant basis number", true,
                             "structural: finite direct sums of matrix algebras are stably finite"});

  const bool hyps = a_rep.positive && equiangular && inv_rep.invertible && shifted.invertible;
  finish_gerzon(cert, config, hyps, tol);
  return cert;
}

BoundCertificate vls_ab(int d, int n, const AlgebraElement& a, const AlgebraElement& b, double tol) {
  if (d < 1 || n < 1) throw std::invalid_argument("vls_ab: d and n must be positive");
  require_same_algebra(a, b);
  const AlgebraDescriptor& desc = a.algebra();
  if (!desc.commutative()) {
    throw HypothesisViolation("vls_ab: the relative bound requires a commutative algebra");
  }
  const auto a_rep = spectral_tests(a, tol);
  if (!a_rep.positive) throw InvalidTarget("vls_ab: target a must be positive");
  const auto b_rep = spectral_tests(b, tol);
  if (!b_rep.positive) throw InvalidTarget("vls_ab: target b must be positive");

  BoundCertificate cert;
  cert.theorem = Theorem::VlsAb;
  cert.tol = tol;
  cert.hypotheses.push_back({"algebra commutative", true, "all blocks are 1x1"});
  cert.hypotheses.push_back(spectral_hypothesis("a positive", true, a_rep));
  cert.hypotheses.push_back(spectral_hypothesis("b positive", true, b_rep));

  const AlgebraElement b2_minus_da = b * b - static_cast<double>(d) * a;
  AlgebraElement witness = static_cast<double>(d) * (b - a) - static_cast<double>(n) * b2_minus_da;
  const auto w_rep = spectral_tests(witness, tol);
  cert.pass = w_rep.positive;
  cert.hypotheses.push_back(
      spectral_hypothesis("witness d(b-a) - n(b^2-da) positive", w_rep.positive, w_rep));
  cert.witness = std::move(witness);

  record_norm_cap(cert, n, b - a, b2_minus_da, d, "b^2 - d*a", tol);
  return cert;
}

BoundCertificate gerzon_ab(const Configuration& config, const AlgebraElement& a,
                           const AlgebraElement& b, double tol) {
  if (!(a.algebra() == config.algebra()) || !(b.algebra() == config.algebra())) {
    throw IncompatibleAlgebras("gerzon_ab: targets live over a different algebra");
  }
  BoundCertificate cert;
  cert.theorem = Theorem::GerzonAb;
  cert.tol = tol;

  const auto a_rep = spectral_tests(a, tol);
  cert.hypotheses.push_back(spectral_hypothesis("a positive", a_rep.positive, a_rep));
  const auto b_rep = spectral_tests(b, tol);
  cert.hypotheses.push_back(spectral_hypothesis("b positive", b_rep.positive, b_rep));

  bool equiangular = false;
  cert.hypotheses.push_back(equiangularity_hypothesis(config, a, b, a_rep.positive,
                                                      b_rep.positive, tol, &equiangular));

  const auto gap = spectral_tests(b * b - a, tol);
  cert.hypotheses.push_back(spectral_hypothesis("b^2 - a invertible", gap.invertible, gap));
  const auto shifted = spectral_tests(static_cast<double>(config.n() - 1) * a + b * b, tol);
  cert.hypotheses.push_back(
      spectral_hypothesis("(n-1)a + b^2 invertible", shifted.invertible, shifted));
  cert.hypotheses.push_back({"algebra has invariant basis number", true,
                             "structural: finite direct sums of matrix algebras are stably finite"});

  const bool hyps = a_rep.positive && b_rep.positive && equiangular && gap.invertible &&
                    shifted.invertible;
  finish_gerzon(cert, config, hyps, tol);
  return cert;
}

BoundCertificate classical_gerzon(int d, int n, ScalarField field) {
  if (d < 1 || n < 1) throw std::invalid_argument("classical_gerzon: d and n must be positive");
  BoundCertificate cert;
  cert.theorem =
      field == ScalarField::Real ? Theorem::ClassicalGerzonReal : Theorem::ClassicalGerzonComplex;
  const double cap = field == ScalarField::Real
                         ? static_cast<double>(d) * static_cast<double>(d + 1) / 2.0
                         : static_cast<double>(d) * static_cast<double>(d);
  cert.bound_value = cap;
  cert.pass = static_cast<double>(n) <= cap;
  cert.hypotheses.push_back({field == ScalarField::Real ? "n <= d(d+1)/2" : "n <= d^2", cert.pass,
                             "n = " + std::to_string(n) + ", cap = " + num(cap)});
  return cert;
}

}  // namespace eqmod
