#pragma once

#include <span>
#include <vector>

#include "eqmod/algebra.hpp"

namespace eqmod {

/// An element of the standard left module A^d: d algebra elements.
class ModuleVector {
 public:
  explicit ModuleVector(std::vector<AlgebraElement> components);

  int dim() const { return static_cast<int>(components_.size()); }
  const AlgebraDescriptor& algebra() const { return components_.front().algebra(); }
  const AlgebraElement& component(int r) const { return components_[static_cast<size_t>(r)]; }
  AlgebraElement& component(int r) { return components_[static_cast<size_t>(r)]; }
  const std::vector<AlgebraElement>& components() const { return components_; }

  /// e_{index}: the unit in slot `index`, zero elsewhere.
  static ModuleVector basis(const AlgebraDescriptor& algebra, int d, int index);

 private:
  std::vector<AlgebraElement> components_;
};

/// <u, v> = sum_r u_r v_r^*, linear in the first slot (left-module convention).
AlgebraElement inner_product(const ModuleVector& u, const ModuleVector& v);

/// c . u, componentwise left multiplication.
ModuleVector left_multiply(const AlgebraElement& c, const ModuleVector& u);

/// u . U for a scalar d x d matrix U: component s of the result is
/// sum_r U(r, s) u_r. Unitary U leaves every Gram matrix unchanged.
ModuleVector right_multiply(const ModuleVector& u, const Eigen::MatrixXcd& scalar_matrix);

/// inv_sqrt(<u,u>) . u, so the result has self inner product 1 within tol.
/// Throws CannotNormalize when <u,u> is not positive invertible.
ModuleVector normalize(const ModuleVector& u, double tol = kDefaultTol);

/// All pairwise inner products of a family. Entry (j,k) = <v_j, v_k>; the
/// lower triangle is mirrored from the upper one, so entry(k,j) is
/// bit-identical to adjoint(entry(j,k)).
class GramMatrix {
 public:
  GramMatrix(int n, std::vector<AlgebraElement> entries);

  int size() const { return n_; }
  const AlgebraElement& entry(int j, int k) const {
    return entries_[static_cast<size_t>(j) * static_cast<size_t>(n_) + static_cast<size_t>(k)];
  }
  /// The n*rep_dim square complex matrix with the (j,k) entry embedded as a
  /// dense diagonal block; positive semidefinite for any true Gram matrix.
  Eigen::MatrixXcd assemble() const;

 private:
  int n_;
  std::vector<AlgebraElement> entries_;  // row-major
};

GramMatrix gram(std::span<const ModuleVector> vectors);

/// Matrix of the rank-one map x -> <x, t> t. Entry (r,s) = t_r^* t_s, so the
/// action reads (result)_s = sum_r x_r M(r,s).
class OuterOperatorMatrix {
 public:
  OuterOperatorMatrix(int d, std::vector<AlgebraElement> entries);

  int dim() const { return d_; }
  const AlgebraElement& entry(int r, int s) const {
    return entries_[static_cast<size_t>(r) * static_cast<size_t>(d_) + static_cast<size_t>(s)];
  }
  ModuleVector apply(const ModuleVector& x) const;

 private:
  int d_;
  std::vector<AlgebraElement> entries_;  // row-major
};

OuterOperatorMatrix outer_operator(const ModuleVector& t);

}  // namespace eqmod
