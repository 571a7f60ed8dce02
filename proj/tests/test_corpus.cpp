#include <doctest.h>

#include <cmath>

#include "eqmod/bounds.hpp"
#include "eqmod/corpus.hpp"

using namespace eqmod;

TEST_CASE("trine meets its targets at machine precision") {
  const auto trine = corpus::trine();
  CHECK(trine.config.n() == 3);
  CHECK(trine.config.d() == 2);
  CHECK(trine.config.algebra().real_flag());
  CHECK(verify_modular_ab(trine.config, *trine.a, trine.b, 1e-12).pass);
  CHECK(verify_norm_gamma(trine.config, *trine.gamma, 1e-12).pass);
}

TEST_CASE("icosahedron saturates the classical relative bound") {
  const auto ico = corpus::icosahedron();
  CHECK(ico.config.n() == 6);
  CHECK(ico.config.d() == 3);
  CHECK(verify_modular_ab(ico.config, *ico.a, {}, 1e-12).pass);
  const BoundCertificate cert =
      vls_norm(3, 6, *ico.gamma, NormBoundMode::Classical, 1e-12);
  CHECK(cert.pass);
  CHECK(*cert.bound_value == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("sic_d2 saturates the modular Gerzon bound") {
  const auto sic = corpus::sic_d2();
  CHECK(sic.config.n() == 4);
  CHECK(verify_modular_ab(sic.config, *sic.a, {}, 1e-10).pass);
  const BoundCertificate cert = gerzon_modular(sic.config, *sic.a, 1e-10);
  CHECK(cert.pass);
  CHECK(sic.config.n() == sic.config.d() * sic.config.d());
}

TEST_CASE("etf_3_2 sits at the Welch angle") {
  const auto etf = corpus::etf_3_2();
  CHECK(verify_modular_ab(etf.config, *etf.a, {}, 1e-12).pass);
  // gamma^2 = (n-d)/(d(n-1)) = 1/4.
  CHECK(*etf.gamma == doctest::Approx(0.5));
  CHECK(verify_norm_gamma(etf.config, 0.5, 1e-12).pass);
}

TEST_CASE("repeated_vector is the degenerate a = 1 family") {
  const auto rep = corpus::repeated_vector(3, 2);
  CHECK(verify_modular_ab(rep.config, *rep.a, {}, 1e-14).pass);
  CHECK(op_norm(*rep.a - AlgebraElement::identity(rep.config.algebra())) == 0.0);
}

TEST_CASE("scalar_lift preserves targets and verdicts") {
  const AlgebraDescriptor target({2, 1});
  const auto lifted = corpus::scalar_lift(corpus::sic_d2(), target);
  CHECK(lifted.config.algebra() == target);
  CHECK(verify_modular_ab(lifted.config, *lifted.a, {}, 1e-10).pass);
  CHECK(verify_norm_gamma(lifted.config, *lifted.gamma, 1e-10).pass);

  CHECK_THROWS_AS(corpus::lift_configuration(lifted.config, scalars()), std::invalid_argument);
}

TEST_CASE("direct_sum block-combines families") {
  const auto sum = corpus::direct_sum(corpus::trine(), corpus::etf_3_2());
  CHECK(sum.config.algebra().num_blocks() == 2);
  CHECK(sum.config.n() == 3);
  CHECK(verify_modular_ab(sum.config, *sum.a, sum.b, 1e-12).pass);
  REQUIRE(sum.gamma.has_value());  // both summands sit at gamma = 1/2
  CHECK(verify_norm_gamma(sum.config, *sum.gamma, 1e-12).pass);

  CHECK_THROWS_AS(corpus::sum_configurations(corpus::trine().config, corpus::sic_d2().config),
                  std::invalid_argument);
}

TEST_CASE("corpus name list is stable") {
  const auto list = corpus::names();
  CHECK(list.size() == 8);
  CHECK(list.front() == "orthonormal");
}
