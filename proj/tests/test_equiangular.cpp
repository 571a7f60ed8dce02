#include <doctest.h>

#include <cmath>
#include <random>

#include "eqmod/corpus.hpp"
#include "eqmod/equiangular.hpp"
#include "test_support.hpp"

using namespace eqmod;
using eqmod::testing::random_configuration;

namespace {

// Scale every vector of a configuration by a scalar factor.
Configuration scale_configuration(const Configuration& config, double factor) {
  std::vector<ModuleVector> vectors;
  for (const auto& v : config.vectors()) {
    vectors.push_back(left_multiply(AlgebraElement::scalar(config.algebra(), factor), v));
  }
  return Configuration(config.algebra(), config.d(), std::move(vectors), config.label());
}

// Random unitary element of the algebra (blockwise QR of a Gaussian draw).
AlgebraElement random_unitary_element(const AlgebraDescriptor& desc, std::mt19937& rng) {
  AlgebraElement e = AlgebraElement::zero(desc);
  for (int i = 0; i < desc.num_blocks(); ++i) {
    e.block(i) = eqmod::testing::random_unitary(desc.block_sizes()[static_cast<size_t>(i)], rng);
  }
  return e;
}

}  // namespace

TEST_CASE("verify_modular_ab on exact families") {
  const auto basis = corpus::orthonormal(3);
  const VerificationReport ortho =
      verify_modular_ab(basis.config, AlgebraElement::zero(basis.config.algebra()));
  CHECK(ortho.pass);
  CHECK(ortho.kind == VerificationKind::ModularA);
  CHECK(ortho.max_unit_deviation == 0.0);
  CHECK(ortho.max_angle_deviation == 0.0);

  const auto sic = corpus::sic_d2();
  const VerificationReport sic_rep = verify_modular_ab(sic.config, *sic.a, {}, 1e-10);
  CHECK(sic_rep.pass);
  CHECK(sic_rep.max_unit_deviation <= 1e-10);
  CHECK(sic_rep.max_angle_deviation <= 1e-10);
}

TEST_CASE("verify_modular_ab after scaling the trine by 2") {
  // Doubling each vector sends b to 4 and the cross products to 16 * (1/4).
  const auto trine = corpus::trine();
  const Configuration doubled = scale_configuration(trine.config, 2.0);
  const AlgebraDescriptor& desc = doubled.algebra();
  const VerificationReport rep = verify_modular_ab(
      doubled, AlgebraElement::scalar(desc, 4.0), AlgebraElement::scalar(desc, 4.0), 1e-10);
  CHECK(rep.pass);
  CHECK(rep.kind == VerificationKind::ModularAB);

  // Wrong target: deviation is reported rather than thrown.
  const VerificationReport wrong = verify_modular_ab(
      doubled, AlgebraElement::scalar(desc, 4.0), AlgebraElement::scalar(desc, 1.0), 1e-10);
  CHECK_FALSE(wrong.pass);
  CHECK(wrong.max_unit_deviation == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("verify_modular_ab rejects non-positive targets") {
  const auto trine = corpus::trine();
  const AlgebraDescriptor& desc = trine.config.algebra();
  CHECK_THROWS_AS(
      verify_modular_ab(trine.config, AlgebraElement::scalar(desc, -0.25)), InvalidTarget);
  CHECK_THROWS_AS(verify_modular_ab(trine.config, AlgebraElement::scalar(desc, 0.25),
                                    AlgebraElement::scalar(desc, -1.0)),
                  InvalidTarget);
}

TEST_CASE("verify_norm_gamma") {
  const auto basis = corpus::orthonormal(4);
  CHECK(verify_norm_gamma(basis.config, 0.0).pass);

  const auto trine = corpus::trine();
  CHECK(verify_norm_gamma(trine.config, 0.5, 1e-12).pass);
  const VerificationReport off = verify_norm_gamma(trine.config, 0.4, 1e-12);
  CHECK_FALSE(off.pass);
  CHECK(off.max_angle_deviation == doctest::Approx(0.1).epsilon(1e-10));

  CHECK_THROWS_AS(verify_norm_gamma(trine.config, 1.5), InvalidTarget);
  CHECK_THROWS_AS(verify_norm_gamma(trine.config, -0.1), InvalidTarget);
}

TEST_CASE("modular a-equiangular families are sqrt(norm a)-norm-equiangular") {
  for (const auto& ref : {corpus::trine(), corpus::sic_d2(), corpus::etf_3_2(),
                          corpus::icosahedron()}) {
    const double gamma = std::sqrt(op_norm(*ref.a));
    CHECK(verify_norm_gamma(ref.config, gamma, 1e-10).pass);
  }
}

TEST_CASE("compute_B identities") {
  // Orthonormal basis: only diagonal terms survive, B = n * 1 = d * 1.
  const auto basis = corpus::orthonormal(3);
  const AlgebraElement B0 = compute_B(basis.config);
  CHECK(op_norm(B0 - AlgebraElement::scalar(basis.config.algebra(), 3.0)) == 0.0);

  // Exact modular families satisfy B = n + (n^2 - n) a.
  for (const auto& ref : {corpus::trine(), corpus::sic_d2(), corpus::etf_3_2(),
                          corpus::icosahedron()}) {
    const int n = ref.config.n();
    const AlgebraElement expected =
        AlgebraElement::scalar(ref.config.algebra(), static_cast<double>(n)) +
        static_cast<double>(n) * static_cast<double>(n - 1) * (*ref.a);
    CHECK(op_norm(compute_B(ref.config) - expected) <= 1e-10);
  }

  // Trine, by hand: B = 3 + 6/4 = 4.5.
  const AlgebraElement Bt = compute_B(corpus::trine().config);
  CHECK(std::abs(Bt.block(0)(0, 0) - Complex(4.5, 0.0)) <= 1e-12);
}

TEST_CASE("verify_special") {
  // Orthonormal basis (n = d): W = d*(d*1) - d^2*1 = 0, boundary pass.
  const auto basis = corpus::orthonormal(3);
  const VerificationReport ortho = verify_special(basis.config);
  CHECK(ortho.pass);
  CHECK(op_norm(*ortho.witness) <= 1e-12);

  // Trine: W = 2*4.5 - 9 = 0, pass at the boundary.
  const VerificationReport trine = verify_special(corpus::trine().config);
  CHECK(trine.pass);
  CHECK(op_norm(*trine.witness) <= 1e-12);

  // Two copies of one unit vector in C^2: B = 4, W = 2*4 - 4 = 4 > 0.
  // "Special" does not require distinct lines.
  const auto repeated = corpus::repeated_vector(2, 2);
  const VerificationReport rep = verify_special(repeated.config);
  CHECK(rep.pass);
  CHECK(std::abs(rep.witness->block(0)(0, 0) - Complex(4.0, 0.0)) <= 1e-12);

  // A nearly-zero configuration has tiny B, so the condition fails.
  const Configuration tiny = scale_configuration(basis.config, 1e-3);
  CHECK_FALSE(verify_special(tiny).pass);
}

TEST_CASE("commutative reduction of the verifiers") {
  // Over C^m every verifier must agree with scalar recomputation.
  std::mt19937 rng(71);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int m = 3, d = 2, n = 3;
  const AlgebraDescriptor desc({1, 1, 1});
  for (int trial = 0; trial < 25; ++trial) {
    const Configuration config = random_configuration(desc, d, n, rng);
    AlgebraElement a = AlgebraElement::zero(desc);
    AlgebraElement b = AlgebraElement::zero(desc);
    for (int i = 0; i < m; ++i) {
      a.block(i)(0, 0) = std::abs(gauss(rng)) + 0.05;
      b.block(i)(0, 0) = std::abs(gauss(rng)) + 0.05;
    }

    // Scalar oracle: plain complex arithmetic per component.
    double unit_dev = 0.0, angle_dev = 0.0;
    for (int j = 0; j < n; ++j) {
      double dev = 0.0;
      for (int i = 0; i < m; ++i) {
        Complex gjj = 0.0;
        for (int r = 0; r < d; ++r) {
          const Complex z = config.vector(j).component(r).block(i)(0, 0);
          gjj += z * std::conj(z);
        }
        dev = std::max(dev, std::abs(gjj - b.block(i)(0, 0)));
      }
      unit_dev = std::max(unit_dev, dev);
    }
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        if (j == k) continue;
        double dev = 0.0;
        for (int i = 0; i < m; ++i) {
          Complex gjk = 0.0;
          for (int r = 0; r < d; ++r) {
            gjk += config.vector(j).component(r).block(i)(0, 0) *
                   std::conj(config.vector(k).component(r).block(i)(0, 0));
          }
          dev = std::max(dev, std::abs(gjk * std::conj(gjk) - a.block(i)(0, 0)));
        }
        angle_dev = std::max(angle_dev, dev);
      }
    }

    const VerificationReport rep = verify_modular_ab(config, a, b);
    CHECK(rep.max_unit_deviation == doctest::Approx(unit_dev).epsilon(1e-12));
    CHECK(rep.max_angle_deviation == doctest::Approx(angle_dev).epsilon(1e-12));
  }
}

TEST_CASE("left unitary invariance") {
  std::mt19937 rng(73);
  const AlgebraDescriptor desc({2});
  const Configuration config = random_configuration(desc, 2, 3, rng);

  std::vector<ModuleVector> turned;
  for (int j = 0; j < config.n(); ++j) {
    turned.push_back(left_multiply(random_unitary_element(desc, rng), config.vector(j)));
  }
  const Configuration rotated(desc, config.d(), std::move(turned));

  for (double gamma : {0.3, 0.7}) {
    const VerificationReport before = verify_norm_gamma(config, gamma);
    const VerificationReport after = verify_norm_gamma(rotated, gamma);
    CHECK(before.pass == after.pass);
    CHECK(before.max_angle_deviation == doctest::Approx(after.max_angle_deviation).epsilon(1e-9));
  }

  // Central targets commute with the rotation, so (a, b) deviations persist.
  const AlgebraElement a = AlgebraElement::scalar(desc, 0.4);
  const VerificationReport before = verify_modular_ab(config, a);
  const VerificationReport after = verify_modular_ab(rotated, a);
  CHECK(before.pass == after.pass);
  CHECK(before.max_unit_deviation == doctest::Approx(after.max_unit_deviation).epsilon(1e-9));
  CHECK(before.max_angle_deviation == doctest::Approx(after.max_angle_deviation).epsilon(1e-9));
}

TEST_CASE("direct sums pass iff both summands pass") {
  const auto trine = corpus::trine();
  const auto etf = corpus::etf_3_2();
  const auto good = corpus::direct_sum(trine, etf);
  CHECK(verify_modular_ab(good.config, *good.a, good.b, 1e-10).pass);

  // Break one summand: wrong target in the second slot.
  AlgebraElement bad_a = *good.a;
  bad_a.block(1)(0, 0) = 0.5;
  CHECK_FALSE(verify_modular_ab(good.config, bad_a, good.b, 1e-10).pass);
}

TEST_CASE("worst deviation argmax is lexicographic") {
  // Two equal off-diagonal deviations: the smaller (j,k) pair must win.
  const auto repeated = corpus::repeated_vector(3, 2);
  const VerificationReport rep =
      verify_modular_ab(repeated.config, AlgebraElement::scalar(repeated.config.algebra(), 0.5));
  CHECK(rep.worst_pair_j == 0);
  CHECK(rep.worst_pair_k == 1);
  CHECK(rep.worst_unit_index == 0);
}

TEST_CASE("single-vector configurations verify on the diagonal alone") {
  const AlgebraDescriptor desc({2});
  const Configuration single(desc, 3, {ModuleVector::basis(desc, 3, 1)});
  const VerificationReport rep =
      verify_modular_ab(single, AlgebraElement::zero(desc), {}, 1e-12);
  CHECK(rep.pass);
  CHECK(rep.max_angle_deviation == 0.0);
  CHECK(rep.worst_pair_j == -1);
  CHECK(verify_norm_gamma(single, 0.7).pass);  // no pairs to constrain
}

TEST_CASE("direct sums fail when either summand is perturbed") {
  const auto trine = corpus::trine();
  const auto etf = corpus::etf_3_2();

  // Perturb one vector of one summand; the combined family must fail while
  // the clean combination passes (both directions of the iff).
  std::vector<ModuleVector> bumped = etf.config.vectors();
  std::vector<AlgebraElement> comps = bumped[1].components();
  comps[0] += AlgebraElement::scalar(etf.config.algebra(), 1e-3);
  bumped[1] = ModuleVector(comps);
  const Configuration broken_etf(etf.config.algebra(), 2, std::move(bumped));

  const Configuration good = corpus::sum_configurations(trine.config, etf.config);
  const Configuration bad = corpus::sum_configurations(trine.config, broken_etf);
  const auto targets = corpus::direct_sum(trine, etf);

  CHECK(verify_modular_ab(good, *targets.a, targets.b, 1e-10).pass);
  CHECK_FALSE(verify_modular_ab(bad, *targets.a, targets.b, 1e-10).pass);
  // The perturbed summand alone already fails.
  CHECK_FALSE(verify_modular_ab(broken_etf, *etf.a, etf.b, 1e-10).pass);
  CHECK(verify_modular_ab(trine.config, *trine.a, trine.b, 1e-10).pass);
}
