#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "eqmod/errors.hpp"

namespace eqmod {

using Complex = std::complex<double>;
using BlockMatrix = Eigen::MatrixXcd;

// Default tolerance for all spectral predicates. Every predicate scales it
// by (1 + ||x||) so verdicts stay meaningful across magnitudes.
inline constexpr double kDefaultTol = 1e-9;

/// A finite-dimensional C*-algebra, fixed as a direct sum of full complex
/// matrix algebras M_{n_1}(C) + ... + M_{n_m}(C). `real_flag` restricts
/// entries to real scalars for classical real-case checks and is only
/// allowed when every block has size 1 (storage stays complex either way).
class AlgebraDescriptor {
 public:
  explicit AlgebraDescriptor(std::vector<int> block_sizes, bool real_flag = false);

  const std::vector<int>& block_sizes() const { return block_sizes_; }
  bool real_flag() const { return real_flag_; }
  int num_blocks() const { return static_cast<int>(block_sizes_.size()); }
  int dim() const { return dim_; }          // complex dimension, sum n_i^2
  int rep_dim() const { return rep_dim_; }  // faithful representation size, sum n_i
  bool commutative() const;                 // true iff every block is 1x1

  bool operator==(const AlgebraDescriptor&) const = default;

 private:
  std::vector<int> block_sizes_;
  bool real_flag_ = false;
  int dim_ = 0;
  int rep_dim_ = 0;
};

/// The scalars C (or R when real_flag is set) as a one-block algebra.
AlgebraDescriptor scalars(bool real_flag = false);

/// An element of the algebra: one complex matrix per block. Treat values as
/// immutable once shared; all free operations below are pure.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraDescriptor algebra, std::vector<BlockMatrix> blocks);

  static AlgebraElement zero(const AlgebraDescriptor& algebra);
  static AlgebraElement identity(const AlgebraDescriptor& algebra);
  /// value * 1, the central scalar multiple of the unit.
  static AlgebraElement scalar(const AlgebraDescriptor& algebra, Complex value);

  const AlgebraDescriptor& algebra() const { return algebra_; }
  const std::vector<BlockMatrix>& blocks() const { return blocks_; }
  const BlockMatrix& block(int i) const { return blocks_[static_cast<size_t>(i)]; }
  BlockMatrix& block(int i) { return blocks_[static_cast<size_t>(i)]; }

  AlgebraElement adjoint() const;
  /// Frobenius norm squared summed over blocks.
  double squared_frobenius() const;

  AlgebraElement& operator+=(const AlgebraElement& rhs);
  AlgebraElement& operator-=(const AlgebraElement& rhs);

 private:
  AlgebraDescriptor algebra_;
  std::vector<BlockMatrix> blocks_;
};

AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator-(const AlgebraElement& x);
AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement operator*(Complex c, const AlgebraElement& x);
AlgebraElement operator*(double c, const AlgebraElement& x);

/// Throws IncompatibleAlgebras unless x and y share a descriptor.
void require_same_algebra(const AlgebraElement& x, const AlgebraElement& y);

/// C*-norm: max over blocks of the largest singular value.
double op_norm(const AlgebraElement& x);

/// Embed into the faithful representation: one rep_dim x rep_dim matrix with
/// the blocks along the diagonal.
Eigen::MatrixXcd to_dense(const AlgebraElement& x);

struct SpectralReport {
  bool hermitian = false;
  bool positive = false;    // hermitian with spectrum >= -threshold
  bool invertible = false;  // min singular value > threshold
  double min_eigenvalue = 0.0;      // over all blocks of the symmetrized element
  double min_singular_value = 0.0;  // over all blocks
  double threshold = 0.0;           // tol * (1 + ||x||), the scale actually used
};

/// Hermitian / positive / invertible predicates with relative tolerance.
SpectralReport spectral_tests(const AlgebraElement& x, double tol = kDefaultTol);

/// C*-order: x <= y iff y - x is positive. Throws OrderUndefined unless both
/// sides are hermitian within tol.
bool psd_leq(const AlgebraElement& x, const AlgebraElement& y, double tol = kDefaultTol);

/// x^{-1/2} for positive invertible x, blockwise through the eigendecomposition.
AlgebraElement inv_sqrt(const AlgebraElement& x, double tol = kDefaultTol);

/// Blockwise inverse; requires invertibility within tol.
AlgebraElement inverse(const AlgebraElement& x, double tol = kDefaultTol);

/// Eigenvalues of the symmetrized element, ascending per block, blocks concatenated.
std::vector<double> hermitian_spectrum(const AlgebraElement& x);

}  // namespace eqmod
