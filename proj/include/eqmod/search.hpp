#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eqmod/equiangular.hpp"

namespace eqmod {

enum class SearchMode { TargetA, TargetGamma };

/// A feasibility instance: find n vectors in A^d with <t_j,t_j> = b and
/// <t_j,t_k><t_k,t_j> = a. TargetGamma optimizes the smooth surrogate
/// <t_j,t_k><t_k,t_j> = gamma^2 * 1, whose solutions form a subset of the
/// norm-gamma configurations.
struct SearchProblem {
  AlgebraDescriptor algebra{std::vector<int>{1}};
  int d = 1;
  int n = 1;
  SearchMode mode = SearchMode::TargetA;
  std::optional<AlgebraElement> a;  // required in TargetA mode
  std::optional<AlgebraElement> b;  // defaults to the unit
  double gamma = 0.0;               // used in TargetGamma mode
  std::uint64_t seed = 0;
  int restarts = 1;
  int max_iterations = 2000;
  int lbfgs_memory = 10;
  double success_loss = 1e-18;
  double gradient_tolerance = 1e-13;  // scaled by (1 + |loss|)
  bool record_traces = false;
};

struct SearchResult {
  std::optional<Configuration> best_config;  // always set on return from solve
  double best_loss = 0.0;
  int best_restart = 0;
  std::vector<double> restart_losses;
  std::vector<int> iterations_used;
  std::vector<std::vector<double>> traces;  // per restart, when record_traces
  bool converged = false;
  std::string algorithm;
};

/// Penalty objective: sum_j F(<t_j,t_j> - b) + sum_{ordered j != k}
/// F(<t_j,t_k><t_k,t_j> - a), with F the squared Frobenius norm summed over
/// blocks. Zero exactly at equiangular configurations for the targets.
double loss(const Configuration& config, const SearchProblem& problem);

/// Analytic gradient of `loss` with respect to the real and imaginary parts
/// of every block entry, in `pack` order.
std::vector<double> gradient(const Configuration& config, const SearchProblem& problem);

/// Flatten a configuration: vectors, then components, then blocks, entries
/// column-major, each entry contributing [re, im].
std::vector<double> pack(const Configuration& config);
Configuration unpack(const SearchProblem& problem, std::span<const double> x);

/// Multi-restart seeded minimization. Restart r draws standard-normal
/// entries from generator stream seed + r, normalizes once when possible,
/// then runs L-BFGS with Armijo backtracking until max_iterations or
/// loss <= success_loss. Deterministic given the problem.
SearchResult solve(const SearchProblem& problem);

/// Single minimization from an explicit starting configuration.
SearchResult solve_from(const SearchProblem& problem, const Configuration& initial);

/// Normalize every vector of a configuration; exact unit Gram diagonal
/// within tol afterwards. Throws CannotNormalize when a self inner product
/// is not invertible.
Configuration polish(const Configuration& config, double tol = kDefaultTol);

}  // namespace eqmod
