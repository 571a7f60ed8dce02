#include "eqmod/hilbert_module.hpp"

#include <stdexcept>
#include <utility>

namespace eqmod {

ModuleVector::ModuleVector(std::vector<AlgebraElement> components)
    : components_(std::move(components)) {
  if (components_.empty()) {
    throw std::invalid_argument("ModuleVector: needs at least one component");
  }
  for (size_t r = 1; r < components_.size(); ++r) {
    require_same_algebra(components_[0], components_[r]);
  }
}

ModuleVector ModuleVector::basis(const AlgebraDescriptor& algebra, int d, int index) {
  if (index < 0 || index >= d) throw std::invalid_argument("ModuleVector::basis: index out of range");
  std::vector<AlgebraElement> comps;
  comps.reserve(static_cast<size_t>(d));
  for (int r = 0; r < d; ++r) {
    comps.push_back(r == index ? AlgebraElement::identity(algebra) : AlgebraElement::zero(algebra));
  }
  return ModuleVector(std::move(comps));
}

AlgebraElement inner_product(const ModuleVector& u, const ModuleVector& v) {
  if (u.dim() != v.dim()) {
    throw std::invalid_argument("inner_product: vectors have different module dimensions");
  }
  require_same_algebra(u.component(0), v.component(0));
  AlgebraElement acc = AlgebraElement::zero(u.algebra());
  for (int r = 0; r < u.dim(); ++r) acc += u.component(r) * v.component(r).adjoint();
  return acc;
}

ModuleVector left_multiply(const AlgebraElement& c, const ModuleVector& u) {
  std::vector<AlgebraElement> comps;
  comps.reserve(static_cast<size_t>(u.dim()));
  for (int r = 0; r < u.dim(); ++r) comps.push_back(c * u.component(r));
  return ModuleVector(std::move(comps));
}

ModuleVector right_multiply(const ModuleVector& u, const Eigen::MatrixXcd& scalar_matrix) {
  if (scalar_matrix.rows() != u.dim()) {
    throw std::invalid_argument("right_multiply: matrix rows must match module dimension");
  }
  std::vector<AlgebraElement> comps;
  comps.reserve(static_cast<size_t>(scalar_matrix.cols()));
  for (Eigen::Index s = 0; s < scalar_matrix.cols(); ++s) {
    AlgebraElement acc = AlgebraElement::zero(u.algebra());
    for (int r = 0; r < u.dim(); ++r) acc += scalar_matrix(r, s) * u.component(r);
    comps.push_back(std::move(acc));
  }
  return ModuleVector(std::move(comps));
}

ModuleVector normalize(const ModuleVector& u, double tol) {
  const AlgebraElement self = inner_product(u, u);
  try {
    return left_multiply(inv_sqrt(self, tol), u);
  } catch (const DomainError&) {
    throw CannotNormalize("normalize: <u,u> is not positive invertible");
  }
}

GramMatrix::GramMatrix(int n, std::vector<AlgebraElement> entries) : n_(n), entries_(std::move(entries)) {
  if (n_ < 1 || entries_.size() != static_cast<size_t>(n_) * static_cast<size_t>(n_)) {
    throw std::invalid_argument("GramMatrix: entry count must be n*n");
  }
}

Eigen::MatrixXcd GramMatrix::assemble() const {
  const int rep = entries_.front().algebra().rep_dim();
  Eigen::MatrixXcd out(n_ * rep, n_ * rep);
  for (int j = 0; j < n_; ++j) {
    for (int k = 0; k < n_; ++k) {
      out.block(j * rep, k * rep, rep, rep) = to_dense(entry(j, k));
    }
  }
  return out;
}

GramMatrix gram(std::span<const ModuleVector> vectors) {
  const int n = static_cast<int>(vectors.size());
  if (n < 1) throw std::invalid_argument("gram: needs at least one vector");
  std::vector<AlgebraElement> entries(static_cast<size_t>(n) * static_cast<size_t>(n),
                                      AlgebraElement::zero(vectors[0].algebra()));
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      AlgebraElement e = inner_product(vectors[static_cast<size_t>(j)], vectors[static_cast<size_t>(k)]);
      if (k != j) {
        entries[static_cast<size_t>(k) * static_cast<size_t>(n) + static_cast<size_t>(j)] = e.adjoint();
      }
      entries[static_cast<size_t>(j) * static_cast<size_t>(n) + static_cast<size_t>(k)] = std::move(e);
    }
  }
  return GramMatrix(n, std::move(entries));
}

OuterOperatorMatrix::OuterOperatorMatrix(int d, std::vector<AlgebraElement> entries)
    : d_(d), entries_(std::move(entries)) {
  if (d_ < 1 || entries_.size() != static_cast<size_t>(d_) * static_cast<size_t>(d_)) {
    throw std::invalid_argument("OuterOperatorMatrix: entry count must be d*d");
  }
}

ModuleVector OuterOperatorMatrix::apply(const ModuleVector& x) const {
  if (x.dim() != d_) throw std::invalid_argument("OuterOperatorMatrix::apply: dimension mismatch");
  std::vector<AlgebraElement> comps;
  comps.reserve(static_cast<size_t>(d_));
  for (int s = 0; s < d_; ++s) {
    AlgebraElement acc = AlgebraElement::zero(x.algebra());
    for (int r = 0; r < d_; ++r) acc += x.component(r) * entry(r, s);
    comps.push_back(std::move(acc));
  }
  return ModuleVector(std::move(comps));
}

OuterOperatorMatrix outer_operator(const ModuleVector& t) {
  const int d = t.dim();
  std::vector<AlgebraElement> entries;
  entries.reserve(static_cast<size_t>(d) * static_cast<size_t>(d));
  for (int r = 0; r < d; ++r) {
    const AlgebraElement tr_adj = t.component(r).adjoint();
    for (int s = 0; s < d; ++s) entries.push_back(tr_adj * t.component(s));
  }
  return OuterOperatorMatrix(d, std::move(entries));
}

}  // namespace eqmod
