#include "eqmod/equiangular.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace eqmod {

Configuration::Configuration(AlgebraDescriptor algebra, int d, std::vector<ModuleVector> vectors,
                             std::optional<std::string> label)
    : algebra_(std::move(algebra)), d_(d), vectors_(std::move(vectors)), label_(std::move(label)) {
  if (d_ < 1) throw std::invalid_argument("Configuration: d must be positive");
  if (vectors_.empty()) throw std::invalid_argument("Configuration: needs at least one vector");
  for (const auto& v : vectors_) {
    if (v.dim() != d_) throw std::invalid_argument("Configuration: vector dimension != d");
    if (!(v.algebra() == algebra_)) {
      throw IncompatibleAlgebras("Configuration: vector algebra does not match descriptor");
    }
  }
}

Configuration::Configuration(const Configuration& other)
    : algebra_(other.algebra_), d_(other.d_), vectors_(other.vectors_), label_(other.label_) {
  std::lock_guard<std::mutex> lock(other.gram_mutex_);
  gram_cache_ = other.gram_cache_;
}

Configuration& Configuration::operator=(const Configuration& other) {
  if (this == &other) return *this;
  algebra_ = other.algebra_;
  d_ = other.d_;
  vectors_ = other.vectors_;
  label_ = other.label_;
  std::shared_ptr<const GramMatrix> snapshot;
  {
    std::lock_guard<std::mutex> lock(other.gram_mutex_);
    snapshot = other.gram_cache_;
  }
  std::lock_guard<std::mutex> lock(gram_mutex_);
  gram_cache_ = std::move(snapshot);
  return *this;
}

Configuration::Configuration(Configuration&& other) noexcept
    : algebra_(std::move(other.algebra_)),
      d_(other.d_),
      vectors_(std::move(other.vectors_)),
      label_(std::move(other.label_)),
      gram_cache_(std::move(other.gram_cache_)) {}

Configuration& Configuration::operator=(Configuration&& other) noexcept {
  if (this == &other) return *this;
  algebra_ = std::move(other.algebra_);
  d_ = other.d_;
  vectors_ = std::move(other.vectors_);
  label_ = std::move(other.label_);
  gram_cache_ = std::move(other.gram_cache_);
  return *this;
}

const GramMatrix& Configuration::gram() const {
  std::lock_guard<std::mutex> lock(gram_mutex_);
  if (!gram_cache_) {
    gram_cache_ = std::make_shared<const GramMatrix>(eqmod::gram(std::span<const ModuleVector>(vectors_)));
  }
  return *gram_cache_;
}

const char* to_string(VerificationKind kind) {
  switch (kind) {
    case VerificationKind::ModularA: return "modular-a";
    case VerificationKind::NormGamma: return "norm-gamma";
    case VerificationKind::Special: return "special";
    case VerificationKind::ModularAB: return "modular-ab";
  }
  return "unknown";
}

VerificationReport verify_modular_ab(const Configuration& config, const AlgebraElement& a,
                                     const std::optional<AlgebraElement>& b, double tol) {
  if (!(a.algebra() == config.algebra())) {
    throw IncompatibleAlgebras("verify_modular_ab: target a lives over a different algebra");
  }
  const AlgebraElement unit = b.value_or(AlgebraElement::identity(config.algebra()));
  if (!(unit.algebra() == config.algebra())) {
    throw IncompatibleAlgebras("verify_modular_ab: target b lives over a different algebra");
  }
  if (!spectral_tests(a, tol).positive) {
    throw InvalidTarget("verify_modular_ab: target a must be positive");
  }
  if (!spectral_tests(unit, tol).positive) {
    throw InvalidTarget("verify_modular_ab: target b must be positive");
  }

  VerificationReport rep;
  rep.kind = b.has_value() ? VerificationKind::ModularAB : VerificationKind::ModularA;
  rep.tol = tol;

  const GramMatrix& G = config.gram();
  const int n = config.n();
  for (int j = 0; j < n; ++j) {
    const double dev = op_norm(G.entry(j, j) - unit);
    if (rep.worst_unit_index < 0 || dev > rep.max_unit_deviation) {
      rep.max_unit_deviation = dev;
      rep.worst_unit_index = j;
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      const double dev = op_norm(G.entry(j, k) * G.entry(k, j) - a);
      if (rep.worst_pair_j < 0 || dev > rep.max_angle_deviation) {
        rep.max_angle_deviation = dev;
        rep.worst_pair_j = j;
        rep.worst_pair_k = k;
      }
    }
  }
  rep.pass = rep.max_unit_deviation <= tol && rep.max_angle_deviation <= tol;
  return rep;
}

VerificationReport verify_norm_gamma(const Configuration& config, double gamma, double tol) {
  if (gamma < 0.0 || gamma > 1.0) {
    throw InvalidTarget("verify_norm_gamma: gamma must lie in [0, 1]");
  }
  VerificationReport rep;
  rep.kind = VerificationKind::NormGamma;
  rep.tol = tol;

  const GramMatrix& G = config.gram();
  const AlgebraElement unit = AlgebraElement::identity(config.algebra());
  const int n = config.n();
  for (int j = 0; j < n; ++j) {
    const double dev = op_norm(G.entry(j, j) - unit);
    if (rep.worst_unit_index < 0 || dev > rep.max_unit_deviation) {
      rep.max_unit_deviation = dev;
      rep.worst_unit_index = j;
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      const double dev = std::abs(op_norm(G.entry(j, k)) - gamma);
      if (rep.worst_pair_j < 0 || dev > rep.max_angle_deviation) {
        rep.max_angle_deviation = dev;
        rep.worst_pair_j = j;
        rep.worst_pair_k = k;
      }
    }
  }
  rep.pass = rep.max_unit_deviation <= tol && rep.max_angle_deviation <= tol;
  return rep;
}

AlgebraElement compute_B(const Configuration& config) {
  const GramMatrix& G = config.gram();
  AlgebraElement acc = AlgebraElement::zero(config.algebra());
  for (int j = 0; j < config.n(); ++j) {
    for (int k = 0; k < config.n(); ++k) {
      acc += G.entry(j, k) * G.entry(k, j);
    }
  }
  return acc;
}

VerificationReport verify_special(const Configuration& config, double tol) {
  VerificationReport rep;
  rep.kind = VerificationKind::Special;
  rep.tol = tol;

  const double n = static_cast<double>(config.n());
  AlgebraElement witness = static_cast<double>(config.d()) * compute_B(config) -
                           AlgebraElement::scalar(config.algebra(), n * n);
  rep.pass = spectral_tests(witness, tol).positive;
  rep.witness = std::move(witness);
  return rep;
}

}  // namespace eqmod
