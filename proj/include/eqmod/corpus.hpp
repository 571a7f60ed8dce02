#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqmod/equiangular.hpp"

namespace eqmod::corpus {

/// A reference configuration together with the targets it meets exactly
/// (to machine precision); every construction here is closed-form.
struct ReferenceConfiguration {
  Configuration config;
  std::optional<AlgebraElement> a;
  std::optional<AlgebraElement> b;
  std::optional<double> gamma;
};

/// e_1, ..., e_d in A^d; a = 0, gamma = 0.
ReferenceConfiguration orthonormal(int d, const AlgebraDescriptor& algebra = scalars());

/// 3 unit vectors in R^2 at mutual 60 degrees; a = 1/4, gamma = 1/2.
ReferenceConfiguration trine();

/// The 6 diagonals of the icosahedron in R^3; a = 1/5, gamma = 1/sqrt(5).
ReferenceConfiguration icosahedron();

/// The Bloch-tetrahedron SIC in C^2: 4 vectors with |<.,.>|^2 = 1/3.
ReferenceConfiguration sic_d2();

/// Harmonic equiangular tight frame of 3 vectors in C^2 at the Welch angle
/// gamma^2 = 1/4.
ReferenceConfiguration etf_3_2();

/// n copies of e_1 in C^d; a = 1, the degenerate all-lines-coincide family.
ReferenceConfiguration repeated_vector(int n, int d);

/// Multiply every scalar component by the unit of the target algebra. The
/// base must live over a one-block scalar algebra.
Configuration lift_configuration(const Configuration& base, const AlgebraDescriptor& target);
ReferenceConfiguration scalar_lift(const ReferenceConfiguration& base,
                                   const AlgebraDescriptor& target);

/// Block-combine two configurations with equal (n, d) over the direct sum of
/// their algebras. Targets combine blockwise; gamma survives only when the
/// two sides agree.
Configuration sum_configurations(const Configuration& c1, const Configuration& c2);
ReferenceConfiguration direct_sum(const ReferenceConfiguration& c1,
                                  const ReferenceConfiguration& c2);

/// Names accepted by the CLI's `corpus` subcommand.
std::vector<std::string> names();

}  // namespace eqmod::corpus
