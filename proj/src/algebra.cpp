#include "eqmod/algebra.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace eqmod {

AlgebraDescriptor::AlgebraDescriptor(std::vector<int> block_sizes, bool real_flag)
    : block_sizes_(std::move(block_sizes)), real_flag_(real_flag) {
  if (block_sizes_.empty()) {
    throw std::invalid_argument("AlgebraDescriptor: block_sizes must be nonempty");
  }
  for (int s : block_sizes_) {
    if (s < 1) throw std::invalid_argument("AlgebraDescriptor: block sizes must be positive");
    dim_ += s * s;
    rep_dim_ += s;
  }
  if (real_flag_ && !commutative()) {
    throw std::invalid_argument("AlgebraDescriptor: real_flag requires all blocks of size 1");
  }
}

bool AlgebraDescriptor::commutative() const {
  return std::all_of(block_sizes_.begin(), block_sizes_.end(), [](int s) { return s == 1; });
}

AlgebraDescriptor scalars(bool real_flag) { return AlgebraDescriptor({1}, real_flag); }

AlgebraElement::AlgebraElement(AlgebraDescriptor algebra, std::vector<BlockMatrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (blocks_.size() != static_cast<size_t>(algebra_.num_blocks())) {
    throw std::invalid_argument("AlgebraElement: block count does not match descriptor");
  }
  for (int i = 0; i < algebra_.num_blocks(); ++i) {
    const int s = algebra_.block_sizes()[static_cast<size_t>(i)];
    if (blocks_[static_cast<size_t>(i)].rows() != s || blocks_[static_cast<size_t>(i)].cols() != s) {
      throw std::invalid_argument("AlgebraElement: block " + std::to_string(i) +
                                  " has wrong shape for descriptor");
    }
  }
}

AlgebraElement AlgebraElement::zero(const AlgebraDescriptor& algebra) {
  std::vector<BlockMatrix> blocks;
  blocks.reserve(static_cast<size_t>(algebra.num_blocks()));
  for (int s : algebra.block_sizes()) blocks.push_back(BlockMatrix::Zero(s, s));
  return {algebra, std::move(blocks)};
}

AlgebraElement AlgebraElement::identity(const AlgebraDescriptor& algebra) {
  std::vector<BlockMatrix> blocks;
  blocks.reserve(static_cast<size_t>(algebra.num_blocks()));
  for (int s : algebra.block_sizes()) blocks.push_back(BlockMatrix::Identity(s, s));
  return {algebra, std::move(blocks)};
}

AlgebraElement AlgebraElement::scalar(const AlgebraDescriptor& algebra, Complex value) {
  std::vector<BlockMatrix> blocks;
  blocks.reserve(static_cast<size_t>(algebra.num_blocks()));
  for (int s : algebra.block_sizes()) {
    blocks.push_back(value * BlockMatrix::Identity(s, s));
  }
  return {algebra, std::move(blocks)};
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<BlockMatrix> blocks;
  blocks.reserve(blocks_.size());
  for (const auto& b : blocks_) blocks.push_back(b.adjoint());
  return {algebra_, std::move(blocks)};
}

double AlgebraElement::squared_frobenius() const {
  double acc = 0.0;
  for (const auto& b : blocks_) acc += b.squaredNorm();
  return acc;
}

void require_same_algebra(const AlgebraElement& x, const AlgebraElement& y) {
  if (!(x.algebra() == y.algebra())) {
    throw IncompatibleAlgebras("operands live over different algebras");
  }
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& rhs) {
  require_same_algebra(*this, rhs);
  for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += rhs.blocks_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& rhs) {
  require_same_algebra(*this, rhs);
  for (size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= rhs.blocks_[i];
  return *this;
}

AlgebraElement operator+(const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement out = x;
  out += y;
  return out;
}

AlgebraElement operator-(const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement out = x;
  out -= y;
  return out;
}

AlgebraElement operator-(const AlgebraElement& x) { return Complex(-1.0, 0.0) * x; }

AlgebraElement operator*(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  std::vector<BlockMatrix> blocks;
  blocks.reserve(x.blocks().size());
  for (size_t i = 0; i < x.blocks().size(); ++i) blocks.push_back(x.blocks()[i] * y.blocks()[i]);
  return {x.algebra(), std::move(blocks)};
}

AlgebraElement operator*(Complex c, const AlgebraElement& x) {
  std::vector<BlockMatrix> blocks;
  blocks.reserve(x.blocks().size());
  for (const auto& b : x.blocks()) blocks.push_back(c * b);
  return {x.algebra(), std::move(blocks)};
}

AlgebraElement operator*(double c, const AlgebraElement& x) { return Complex(c, 0.0) * x; }

namespace {

// Singular values of one block, descending (Eigen's order).
Eigen::VectorXd block_singular_values(const BlockMatrix& b) {
  if (b.rows() == 1) {
    Eigen::VectorXd sv(1);
    sv(0) = std::abs(b(0, 0));
    return sv;
  }
  Eigen::JacobiSVD<BlockMatrix> svd(b);
  return svd.singularValues();
}

}  // namespace

double op_norm(const AlgebraElement& x) {
  double best = 0.0;
  for (const auto& b : x.blocks()) best = std::max(best, block_singular_values(b)(0));
  return best;
}

Eigen::MatrixXcd to_dense(const AlgebraElement& x) {
  const int n = x.algebra().rep_dim();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  int off = 0;
  for (const auto& b : x.blocks()) {
    out.block(off, off, b.rows(), b.cols()) = b;
    off += static_cast<int>(b.rows());
  }
  return out;
}

SpectralReport spectral_tests(const AlgebraElement& x, double tol) {
  if (tol < 0.0) throw std::invalid_argument("spectral_tests: tol must be nonnegative");
  SpectralReport rep;
  rep.threshold = tol * (1.0 + op_norm(x));

  rep.hermitian = op_norm(x - x.adjoint()) <= rep.threshold;

  double min_sv = std::numeric_limits<double>::infinity();
  double min_eig = std::numeric_limits<double>::infinity();
  for (const auto& b : x.blocks()) {
    const auto sv = block_singular_values(b);
    min_sv = std::min(min_sv, sv(sv.size() - 1));
    const BlockMatrix sym = 0.5 * (b + b.adjoint());
    Eigen::SelfAdjointEigenSolver<BlockMatrix> es(sym, Eigen::EigenvaluesOnly);
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
  }
  rep.min_singular_value = min_sv;
  rep.min_eigenvalue = min_eig;
  rep.invertible = min_sv > rep.threshold;
  rep.positive = rep.hermitian && min_eig >= -rep.threshold;
  return rep;
}

bool psd_leq(const AlgebraElement& x, const AlgebraElement& y, double tol) {
  require_same_algebra(x, y);
  if (!spectral_tests(x, tol).hermitian || !spectral_tests(y, tol).hermitian) {
    throw OrderUndefined("psd_leq: C*-order is defined for hermitian elements only");
  }
  return spectral_tests(y - x, tol).positive;
}

AlgebraElement inv_sqrt(const AlgebraElement& x, double tol) {
  const auto rep = spectral_tests(x, tol);
  if (!rep.positive || !rep.invertible) {
    throw DomainError("inv_sqrt: element must be positive and invertible");
  }
  std::vector<BlockMatrix> blocks;
  blocks.reserve(x.blocks().size());
  for (const auto& b : x.blocks()) {
    const BlockMatrix sym = 0.5 * (b + b.adjoint());
    Eigen::SelfAdjointEigenSolver<BlockMatrix> es(sym);
    Eigen::VectorXd vals = es.eigenvalues();
    for (Eigen::Index i = 0; i < vals.size(); ++i) vals(i) = 1.0 / std::sqrt(vals(i));
    blocks.push_back(es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint());
  }
  return {x.algebra(), std::move(blocks)};
}

AlgebraElement inverse(const AlgebraElement& x, double tol) {
  if (!spectral_tests(x, tol).invertible) {
    throw DomainError("inverse: element is not invertible within tolerance");
  }
  std::vector<BlockMatrix> blocks;
  blocks.reserve(x.blocks().size());
  for (const auto& b : x.blocks()) blocks.push_back(b.inverse());
  return {x.algebra(), std::move(blocks)};
}

std::vector<double> hermitian_spectrum(const AlgebraElement& x) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(x.algebra().rep_dim()));
  for (const auto& b : x.blocks()) {
    const BlockMatrix sym = 0.5 * (b + b.adjoint());
    Eigen::SelfAdjointEigenSolver<BlockMatrix> es(sym, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  }
  return out;
}

}  // namespace eqmod
