#include "eqmod/search.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace eqmod {

namespace {

struct EffectiveTargets {
  AlgebraElement a;
  AlgebraElement b;
};

EffectiveTargets effective_targets(const SearchProblem& p) {
  if (p.mode == SearchMode::TargetA) {
    if (!p.a.has_value()) throw InvalidTarget("search: TargetA mode needs a target a");
    if (!(p.a->algebra() == p.algebra)) {
      throw IncompatibleAlgebras("search: target a lives over a different algebra");
    }
    AlgebraElement b = p.b.value_or(AlgebraElement::identity(p.algebra));
    if (!(b.algebra() == p.algebra)) {
      throw IncompatibleAlgebras("search: target b lives over a different algebra");
    }
    if (!spectral_tests(*p.a).positive) throw InvalidTarget("search: target a must be positive");
    if (!spectral_tests(b).positive) throw InvalidTarget("search: target b must be positive");
    return {*p.a, std::move(b)};
  }
  if (p.gamma < 0.0 || p.gamma > 1.0) throw InvalidTarget("search: gamma must lie in [0, 1]");
  return {AlgebraElement::scalar(p.algebra, p.gamma * p.gamma),
          AlgebraElement::identity(p.algebra)};
}

void check_shape(const Configuration& config, const SearchProblem& p) {
  if (!(config.algebra() == p.algebra) || config.d() != p.d || config.n() != p.n) {
    throw std::invalid_argument("search: configuration does not match the problem shape");
  }
}

int packed_size(const SearchProblem& p) { return 2 * p.n * p.d * p.algebra.dim(); }

}  // namespace

std::vector<double> pack(const Configuration& config) {
  std::vector<double> x;
  x.reserve(static_cast<size_t>(2 * config.n() * config.d() * config.algebra().dim()));
  for (const auto& v : config.vectors()) {
    for (const auto& comp : v.components()) {
      for (const auto& blk : comp.blocks()) {
        for (Eigen::Index q = 0; q < blk.cols(); ++q) {
          for (Eigen::Index r = 0; r < blk.rows(); ++r) {
            x.push_back(blk(r, q).real());
            x.push_back(blk(r, q).imag());
          }
        }
      }
    }
  }
  return x;
}

Configuration unpack(const SearchProblem& p, std::span<const double> x) {
  if (static_cast<int>(x.size()) != packed_size(p)) {
    throw std::invalid_argument("unpack: parameter vector has the wrong length");
  }
  size_t idx = 0;
  std::vector<ModuleVector> vectors;
  vectors.reserve(static_cast<size_t>(p.n));
  for (int j = 0; j < p.n; ++j) {
    std::vector<AlgebraElement> comps;
    comps.reserve(static_cast<size_t>(p.d));
    for (int r = 0; r < p.d; ++r) {
      AlgebraElement e = AlgebraElement::zero(p.algebra);
      for (int i = 0; i < p.algebra.num_blocks(); ++i) {
        BlockMatrix& blk = e.block(i);
        for (Eigen::Index q = 0; q < blk.cols(); ++q) {
          for (Eigen::Index rr = 0; rr < blk.rows(); ++rr) {
            blk(rr, q) = Complex(x[idx], x[idx + 1]);
            idx += 2;
          }
        }
      }
      comps.push_back(std::move(e));
    }
    vectors.emplace_back(std::move(comps));
  }
  return Configuration(p.algebra, p.d, std::move(vectors));
}

double loss(const Configuration& config, const SearchProblem& problem) {
  check_shape(config, problem);
  const auto targets = effective_targets(problem);
  const GramMatrix& G = config.gram();
  double acc = 0.0;
  for (int j = 0; j < config.n(); ++j) {
    acc += (G.entry(j, j) - targets.b).squared_frobenius();
  }
  for (int j = 0; j < config.n(); ++j) {
    for (int k = 0; k < config.n(); ++k) {
      if (j == k) continue;
      acc += (G.entry(j, k) * G.entry(k, j) - targets.a).squared_frobenius();
    }
  }
  return acc;
}

std::vector<double> gradient(const Configuration& config, const SearchProblem& problem) {
  check_shape(config, problem);
  const auto targets = effective_targets(problem);
  const GramMatrix& G = config.gram();
  const int n = config.n();
  const int d = config.d();

  // d/dV of ||X||_F^2 terms, written as algebra elements per (vector,
  // component); the real gradient is 2*Re / 2*Im of their entries.
  std::vector<AlgebraElement> grads(static_cast<size_t>(n) * static_cast<size_t>(d),
                                    AlgebraElement::zero(config.algebra()));
  auto at = [&](int j, int r) -> AlgebraElement& {
    return grads[static_cast<size_t>(j) * static_cast<size_t>(d) + static_cast<size_t>(r)];
  };

  for (int j = 0; j < n; ++j) {
    const AlgebraElement diff = G.entry(j, j) - targets.b;
    const AlgebraElement sym = diff + diff.adjoint();
    for (int r = 0; r < d; ++r) at(j, r) += sym * config.vector(j).component(r);
  }
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      const AlgebraElement& gjk = G.entry(j, k);
      const AlgebraElement& gkj = G.entry(k, j);
      const AlgebraElement err = gjk * gkj - targets.a;
      const AlgebraElement sym = err + err.adjoint();
      const AlgebraElement sym_gjk = sym * gjk;
      const AlgebraElement gkj_sym = gkj * sym;
      for (int r = 0; r < d; ++r) {
        at(j, r) += sym_gjk * config.vector(k).component(r);
        at(k, r) += gkj_sym * config.vector(j).component(r);
      }
    }
  }

  std::vector<double> out;
  out.reserve(static_cast<size_t>(packed_size(problem)));
  for (int j = 0; j < n; ++j) {
    for (int r = 0; r < d; ++r) {
      for (const auto& blk : at(j, r).blocks()) {
        for (Eigen::Index q = 0; q < blk.cols(); ++q) {
          for (Eigen::Index rr = 0; rr < blk.rows(); ++rr) {
            out.push_back(2.0 * blk(rr, q).real());
            out.push_back(2.0 * blk(rr, q).imag());
          }
        }
      }
    }
  }
  return out;
}

namespace {

struct MinimizeOutcome {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  std::vector<double> trace;
};

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double inf_norm(const std::vector<double>& a) {
  double acc = 0.0;
  for (double v : a) acc = std::max(acc, std::abs(v));
  return acc;
}

// L-BFGS with Armijo backtracking. Deterministic; stops on target value,
// stalled gradient, failed line search, or the iteration cap.
MinimizeOutcome lbfgs_minimize(const SearchProblem& p, std::vector<double> x, bool record_trace) {
  const auto eval = [&](const std::vector<double>& xs, std::vector<double>* grad_out) {
    const Configuration c = unpack(p, xs);
    if (grad_out) *grad_out = gradient(c, p);
    return loss(c, p);
  };

  MinimizeOutcome out;
  std::vector<double> g;
  double f = eval(x, &g);
  if (record_trace) out.trace.push_back(f);

  std::deque<std::vector<double>> s_hist, y_hist;
  std::deque<double> rho_hist;
  const int memory = std::max(1, p.lbfgs_memory);

  std::vector<double> direction(x.size()), x_next(x.size()), g_next;
  int flat_steps = 0;  // consecutive iterations with sub-ulp decrease
  for (int iter = 0; iter < p.max_iterations; ++iter) {
    if (f <= p.success_loss) break;
    if (inf_norm(g) <= p.gradient_tolerance * (1.0 + std::abs(f))) break;

    // Two-loop recursion.
    direction = g;
    std::vector<double> alpha(s_hist.size());
    for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
      alpha[static_cast<size_t>(i)] =
          rho_hist[static_cast<size_t>(i)] * dot(s_hist[static_cast<size_t>(i)], direction);
      for (size_t k = 0; k < direction.size(); ++k) {
        direction[k] -= alpha[static_cast<size_t>(i)] * y_hist[static_cast<size_t>(i)][k];
      }
    }
    if (!s_hist.empty()) {
      const double sy = dot(s_hist.back(), y_hist.back());
      const double yy = dot(y_hist.back(), y_hist.back());
      const double scale = yy > 0.0 ? sy / yy : 1.0;
      for (double& v : direction) v *= scale;
    }
    for (size_t i = 0; i < s_hist.size(); ++i) {
      const double beta = rho_hist[i] * dot(y_hist[i], direction);
      for (size_t k = 0; k < direction.size(); ++k) {
        direction[k] += (alpha[i] - beta) * s_hist[i][k];
      }
    }
    for (double& v : direction) v = -v;

    double slope = dot(g, direction);
    if (!(slope < 0.0)) {  // not a descent direction; fall back to steepest descent
      for (size_t k = 0; k < direction.size(); ++k) direction[k] = -g[k];
      slope = dot(g, direction);
      if (!(slope < 0.0)) break;
    }

    double step = 1.0;
    constexpr double kArmijo = 1e-4;
    double f_next = 0.0;
    bool accepted = false;
    for (int ls = 0; ls < 80; ++ls) {
      for (size_t k = 0; k < x.size(); ++k) x_next[k] = x[k] + step * direction[k];
      f_next = eval(x_next, nullptr);
      if (f_next <= f + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
      if (step < 1e-20) break;
    }
    if (!accepted) break;

    eval(x_next, &g_next);

    std::vector<double> s(x.size()), y(x.size());
    for (size_t k = 0; k < x.size(); ++k) {
      s[k] = x_next[k] - x[k];
      y[k] = g_next[k] - g[k];
    }
    const double sy = dot(s, y);
    if (sy > 1e-12 * std::sqrt(dot(s, s)) * std::sqrt(dot(y, y))) {
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(y));
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }

    // Progress is measured relative to the value itself, so deep descent
    // toward zero never reads as a stall.
    if (f - f_next <= 1e-9 * std::abs(f)) {
      ++flat_steps;
    } else {
      flat_steps = 0;
    }

    x.swap(x_next);
    f = f_next;
    g.swap(g_next);
    out.iterations = iter + 1;
    if (record_trace) out.trace.push_back(f);
    if (flat_steps >= 10) break;
  }

  out.x = std::move(x);
  out.value = f;
  return out;
}

std::string algorithm_name(const SearchProblem& p) {
  std::ostringstream name;
  name << "lbfgs-armijo(m=" << std::max(1, p.lbfgs_memory) << ")";
  return name.str();
}

Configuration draw_initial(const SearchProblem& p, std::uint64_t stream) {
  std::mt19937_64 engine(stream);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> x(static_cast<size_t>(packed_size(p)));
  for (double& v : x) v = gauss(engine);
  Configuration raw = unpack(p, x);
  try {
    return polish(raw);
  } catch (const CannotNormalize&) {
    return raw;  // probability-zero degenerate draw; use it as is
  }
}

}  // namespace

SearchResult solve(const SearchProblem& problem) {
  if (problem.restarts < 1) throw std::invalid_argument("solve: restarts must be positive");
  if (problem.max_iterations < 1) throw std::invalid_argument("solve: max_iterations must be positive");
  if (!(problem.success_loss > 0.0)) throw std::invalid_argument("solve: success_loss must be positive");
  effective_targets(problem);  // validate targets up front

  SearchResult result;
  result.algorithm = algorithm_name(problem);
  result.restart_losses.reserve(static_cast<size_t>(problem.restarts));
  result.iterations_used.reserve(static_cast<size_t>(problem.restarts));

  std::vector<double> best_x;
  double best = std::numeric_limits<double>::infinity();
  int best_restart = -1;
  for (int r = 0; r < problem.restarts; ++r) {
    const Configuration initial = draw_initial(problem, problem.seed + static_cast<std::uint64_t>(r));
    MinimizeOutcome outcome = lbfgs_minimize(problem, pack(initial), problem.record_traces);
    result.restart_losses.push_back(outcome.value);
    result.iterations_used.push_back(outcome.iterations);
    if (problem.record_traces) result.traces.push_back(std::move(outcome.trace));
    if (outcome.value < best) {
      best = outcome.value;
      best_x = std::move(outcome.x);
      best_restart = r;
    }
  }

  result.best_loss = best;
  result.best_restart = best_restart;
  result.best_config = unpack(problem, best_x);
  result.converged = best <= problem.success_loss;
  return result;
}

SearchResult solve_from(const SearchProblem& problem, const Configuration& initial) {
  check_shape(initial, problem);
  effective_targets(problem);

  MinimizeOutcome outcome = lbfgs_minimize(problem, pack(initial), problem.record_traces);
  SearchResult result;
  result.algorithm = algorithm_name(problem);
  result.restart_losses.push_back(outcome.value);
  result.iterations_used.push_back(outcome.iterations);
  if (problem.record_traces) result.traces.push_back(std::move(outcome.trace));
  result.best_loss = outcome.value;
  result.best_restart = 0;
  result.best_config = unpack(problem, outcome.x);
  result.converged = outcome.value <= problem.success_loss;
  return result;
}

Configuration polish(const Configuration& config, double tol) {
  std::vector<ModuleVector> vectors;
  vectors.reserve(static_cast<size_t>(config.n()));
  for (const auto& v : config.vectors()) vectors.push_back(normalize(v, tol));
  return Configuration(config.algebra(), config.d(), std::move(vectors), config.label());
}

}  // namespace eqmod
