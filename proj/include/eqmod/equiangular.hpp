#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "eqmod/hilbert_module.hpp"

namespace eqmod {

/// n candidate lines in A^d. Immutable; the Gram matrix is computed once on
/// first use and shared by every verifier and certificate generator.
class Configuration {
 public:
  Configuration(AlgebraDescriptor algebra, int d, std::vector<ModuleVector> vectors,
                std::optional<std::string> label = {});

  int d() const { return d_; }
  int n() const { return static_cast<int>(vectors_.size()); }
  const AlgebraDescriptor& algebra() const { return algebra_; }
  const std::vector<ModuleVector>& vectors() const { return vectors_; }
  const ModuleVector& vector(int j) const { return vectors_[static_cast<size_t>(j)]; }
  const std::optional<std::string>& label() const { return label_; }

  const GramMatrix& gram() const;

  Configuration(const Configuration& other);
  Configuration& operator=(const Configuration& other);
  Configuration(Configuration&& other) noexcept;
  Configuration& operator=(Configuration&& other) noexcept;
  ~Configuration() = default;

 private:
  AlgebraDescriptor algebra_;
  int d_;
  std::vector<ModuleVector> vectors_;
  std::optional<std::string> label_;

  mutable std::mutex gram_mutex_;
  mutable std::shared_ptr<const GramMatrix> gram_cache_;
};

enum class VerificationKind { ModularA, NormGamma, Special, ModularAB };
const char* to_string(VerificationKind kind);

struct VerificationReport {
  VerificationKind kind = VerificationKind::ModularA;
  bool pass = false;
  /// Worst ||<t_j,t_j> - b|| over j (b = 1 when not supplied). Zero for the
  /// special check, which constrains nothing at the diagonal directly.
  double max_unit_deviation = 0.0;
  /// Worst ||<t_j,t_k><t_k,t_j> - a|| or | ||<t_j,t_k>|| - gamma | over
  /// ordered pairs j != k. Zero for the special check and when n = 1.
  double max_angle_deviation = 0.0;
  int worst_unit_index = -1;       // argmax j; ties go to the smallest index
  int worst_pair_j = -1;           // argmax (j,k); ties go lexicographically
  int worst_pair_k = -1;
  std::optional<AlgebraElement> witness;  // d*B - n^2*1 for the special check
  double tol = kDefaultTol;
};

/// Modular (a,b)-equiangularity: <t_j,t_j> = b and <t_j,t_k><t_k,t_j> = a for
/// all ordered pairs. Omitting b checks the a-equiangular case b = 1.
/// Both targets must be positive within tol (InvalidTarget otherwise).
VerificationReport verify_modular_ab(const Configuration& config, const AlgebraElement& a,
                                     const std::optional<AlgebraElement>& b = {},
                                     double tol = kDefaultTol);

/// Norm equiangularity: unit diagonal and ||<t_j,t_k>|| = gamma for j != k.
VerificationReport verify_norm_gamma(const Configuration& config, double gamma,
                                     double tol = kDefaultTol);

/// The Gram-product sum over all ordered pairs including j = k:
/// B = sum_{j,k} <t_j,t_k><t_k,t_j>. For an exact modular a-equiangular
/// family with unit diagonal, B = n + (n^2 - n) a.
AlgebraElement compute_B(const Configuration& config);

/// The order condition n^2 * 1 <= d * B, decided as positivity of the
/// witness W = d*B - n^2*1. Nothing else about the family is checked here.
VerificationReport verify_special(const Configuration& config, double tol = kDefaultTol);

}  // namespace eqmod
