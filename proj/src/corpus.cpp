#include "eqmod/corpus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace eqmod::corpus {

namespace {

ModuleVector scalar_vector(const AlgebraDescriptor& algebra, const std::vector<Complex>& entries) {
  std::vector<AlgebraElement> comps;
  comps.reserve(entries.size());
  for (Complex z : entries) comps.push_back(AlgebraElement::scalar(algebra, z));
  return ModuleVector(std::move(comps));
}

ReferenceConfiguration with_scalar_targets(Configuration config, double a, double gamma) {
  AlgebraElement a_el = AlgebraElement::scalar(config.algebra(), a);
  AlgebraElement b_el = AlgebraElement::identity(config.algebra());
  return {std::move(config), std::move(a_el), std::move(b_el), gamma};
}

}  // namespace

ReferenceConfiguration orthonormal(int d, const AlgebraDescriptor& algebra) {
  if (d < 1) throw std::invalid_argument("corpus::orthonormal: d must be positive");
  std::vector<ModuleVector> vectors;
  vectors.reserve(static_cast<size_t>(d));
  for (int j = 0; j < d; ++j) vectors.push_back(ModuleVector::basis(algebra, d, j));
  Configuration config(algebra, d, std::move(vectors), "orthonormal(d=" + std::to_string(d) + ")");
  return with_scalar_targets(std::move(config), 0.0, 0.0);
}

ReferenceConfiguration trine() {
  const AlgebraDescriptor algebra = scalars(/*real_flag=*/true);
  const double h = std::sqrt(3.0) / 2.0;
  std::vector<ModuleVector> vectors;
  vectors.push_back(scalar_vector(algebra, {1.0, 0.0}));
  vectors.push_back(scalar_vector(algebra, {0.5, h}));
  vectors.push_back(scalar_vector(algebra, {-0.5, h}));
  Configuration config(algebra, 2, std::move(vectors), "trine");
  return with_scalar_targets(std::move(config), 0.25, 0.5);
}

ReferenceConfiguration icosahedron() {
  const AlgebraDescriptor algebra = scalars(/*real_flag=*/true);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  const double scale = 1.0 / std::sqrt(1.0 + phi * phi);
  const double u = scale;
  const double v = phi * scale;
  std::vector<ModuleVector> vectors;
  vectors.push_back(scalar_vector(algebra, {0.0, u, v}));
  vectors.push_back(scalar_vector(algebra, {0.0, -u, v}));
  vectors.push_back(scalar_vector(algebra, {u, v, 0.0}));
  vectors.push_back(scalar_vector(algebra, {-u, v, 0.0}));
  vectors.push_back(scalar_vector(algebra, {v, 0.0, u}));
  vectors.push_back(scalar_vector(algebra, {v, 0.0, -u}));
  Configuration config(algebra, 3, std::move(vectors), "icosahedron");
  return with_scalar_targets(std::move(config), 0.2, 1.0 / std::sqrt(5.0));
}

ReferenceConfiguration sic_d2() {
  const AlgebraDescriptor algebra = scalars();
  const double r0 = 1.0 / std::sqrt(3.0);
  const double r1 = std::sqrt(2.0 / 3.0);
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  std::vector<ModuleVector> vectors;
  vectors.push_back(scalar_vector(algebra, {1.0, 0.0}));
  vectors.push_back(scalar_vector(algebra, {r0, r1}));
  vectors.push_back(scalar_vector(algebra, {r0, r1 * omega}));
  vectors.push_back(scalar_vector(algebra, {r0, r1 * omega * omega}));
  Configuration config(algebra, 2, std::move(vectors), "sic_d2");
  return with_scalar_targets(std::move(config), 1.0 / 3.0, 1.0 / std::sqrt(3.0));
}

ReferenceConfiguration etf_3_2() {
  const AlgebraDescriptor algebra = scalars();
  const double s = 1.0 / std::sqrt(2.0);
  const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  std::vector<ModuleVector> vectors;
  vectors.push_back(scalar_vector(algebra, {s, s}));
  vectors.push_back(scalar_vector(algebra, {s, s * omega}));
  vectors.push_back(scalar_vector(algebra, {s, s * omega * omega}));
  Configuration config(algebra, 2, std::move(vectors), "etf_3_2");
  return with_scalar_targets(std::move(config), 0.25, 0.5);
}

ReferenceConfiguration repeated_vector(int n, int d) {
  if (n < 1 || d < 1) throw std::invalid_argument("corpus::repeated_vector: n, d must be positive");
  const AlgebraDescriptor algebra = scalars();
  std::vector<ModuleVector> vectors(static_cast<size_t>(n), ModuleVector::basis(algebra, d, 0));
  Configuration config(algebra, d, std::move(vectors),
                       "repeated_vector(n=" + std::to_string(n) + ",d=" + std::to_string(d) + ")");
  return with_scalar_targets(std::move(config), 1.0, 1.0);
}

Configuration lift_configuration(const Configuration& base, const AlgebraDescriptor& target) {
  if (base.algebra().num_blocks() != 1 || base.algebra().block_sizes()[0] != 1) {
    throw std::invalid_argument("scalar_lift: base must live over the scalars");
  }
  std::vector<ModuleVector> vectors;
  vectors.reserve(static_cast<size_t>(base.n()));
  for (const auto& v : base.vectors()) {
    std::vector<AlgebraElement> comps;
    comps.reserve(static_cast<size_t>(v.dim()));
    for (int r = 0; r < v.dim(); ++r) {
      comps.push_back(AlgebraElement::scalar(target, v.component(r).block(0)(0, 0)));
    }
    vectors.emplace_back(std::move(comps));
  }
  std::optional<std::string> label;
  if (base.label()) label = "lift(" + *base.label() + ")";
  return Configuration(target, base.d(), std::move(vectors), std::move(label));
}

ReferenceConfiguration scalar_lift(const ReferenceConfiguration& base,
                                   const AlgebraDescriptor& target) {
  ReferenceConfiguration out{lift_configuration(base.config, target), std::nullopt, std::nullopt,
                             base.gamma};
  if (base.a) out.a = AlgebraElement::scalar(target, base.a->block(0)(0, 0));
  if (base.b) out.b = AlgebraElement::scalar(target, base.b->block(0)(0, 0));
  return out;
}

namespace {

AlgebraElement concat_element(const AlgebraElement& x, const AlgebraElement& y,
                              const AlgebraDescriptor& combined) {
  std::vector<BlockMatrix> blocks;
  blocks.reserve(x.blocks().size() + y.blocks().size());
  for (const auto& b : x.blocks()) blocks.push_back(b);
  for (const auto& b : y.blocks()) blocks.push_back(b);
  return {combined, std::move(blocks)};
}

}  // namespace

Configuration sum_configurations(const Configuration& c1, const Configuration& c2) {
  if (c1.n() != c2.n() || c1.d() != c2.d()) {
    throw std::invalid_argument("direct_sum: configurations must share (n, d)");
  }
  std::vector<int> sizes = c1.algebra().block_sizes();
  sizes.insert(sizes.end(), c2.algebra().block_sizes().begin(), c2.algebra().block_sizes().end());
  const bool real = c1.algebra().real_flag() && c2.algebra().real_flag();
  AlgebraDescriptor combined(std::move(sizes), real);

  std::vector<ModuleVector> vectors;
  vectors.reserve(static_cast<size_t>(c1.n()));
  for (int j = 0; j < c1.n(); ++j) {
    std::vector<AlgebraElement> comps;
    comps.reserve(static_cast<size_t>(c1.d()));
    for (int r = 0; r < c1.d(); ++r) {
      comps.push_back(
          concat_element(c1.vector(j).component(r), c2.vector(j).component(r), combined));
    }
    vectors.emplace_back(std::move(comps));
  }
  std::optional<std::string> label;
  if (c1.label() && c2.label()) label = "sum(" + *c1.label() + "," + *c2.label() + ")";
  return Configuration(combined, c1.d(), std::move(vectors), std::move(label));
}

ReferenceConfiguration direct_sum(const ReferenceConfiguration& c1,
                                  const ReferenceConfiguration& c2) {
  ReferenceConfiguration out{sum_configurations(c1.config, c2.config), std::nullopt, std::nullopt,
                             std::nullopt};
  const AlgebraDescriptor& combined = out.config.algebra();
  if (c1.a && c2.a) out.a = concat_element(*c1.a, *c2.a, combined);
  if (c1.b && c2.b) out.b = concat_element(*c1.b, *c2.b, combined);
  if (c1.gamma && c2.gamma && *c1.gamma == *c2.gamma) out.gamma = c1.gamma;
  return out;
}

std::vector<std::string> names() {
  return {"orthonormal", "trine",       "icosahedron", "sic_d2",
          "etf_3_2",     "scalar_lift", "direct_sum",  "repeated_vector"};
}

}  // namespace eqmod::corpus
