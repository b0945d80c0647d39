#include <doctest.h>

#include <random>

#include "fftmech/errors.hpp"
#include "fftmech/hyperelastic.hpp"
#include "fftmech/tensor_ops.hpp"
#include "oracles.hpp"

using namespace fftmech;
using testsupport::fd_tangent;
using testsupport::random_field;
using testsupport::tangent_rel_error;

namespace {

Tensor2Field eval_P(const Tensor2Field& F, const ElasticParams& params) {
  Tensor2Field P;
  Tensor4Field K;
  hyperelastic_evaluate(F, params, P, K);
  return P;
}

}  // namespace

TEST_CASE("undeformed state: P = 0 and K = C at every node") {
  const GridShape shape = grid_3d(2, 2, 2);
  const ElasticParams params{1.0, 0.3};
  const Tensor2Field F = identity2(shape, 3);
  Tensor2Field P;
  Tensor4Field K;
  hyperelastic_evaluate(F, params, P, K);

  CHECK(field_norm(P) == 0.0);

  const double lam = params.lame_lambda();
  const double mu = params.lame_mu();
  for (std::size_t q = 0; q < F.nodes(); ++q)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) {
            const double c = lam * (i == j) * (k == l) +
                             mu * ((i == l) * (j == k) + (i == k) * (j == l));
            CHECK(K.at(q, i, j, k, l) == doctest::Approx(c).epsilon(1e-14));
          }
}

TEST_CASE("uniaxial stretch matches the hand-evaluated closed form") {
  const GridShape shape = grid_3d(1, 1, 1);
  const ElasticParams params{1.0, 0.3};
  const double stretch = 1.1;
  Tensor2Field F = identity2(shape, 3);
  F.at(0, 0, 0) = stretch;

  Tensor2Field P;
  Tensor4Field K;
  hyperelastic_evaluate(F, params, P, K);

  const double lam = params.lame_lambda();
  const double mu = params.lame_mu();
  const double e11 = 0.5 * (stretch * stretch - 1.0);
  const double s11 = (lam + 2.0 * mu) * e11;
  const double s22 = lam * e11;

  CHECK(P.at(0, 0, 0) == doctest::Approx(stretch * s11).epsilon(1e-14));
  CHECK(P.at(0, 1, 1) == doctest::Approx(s22).epsilon(1e-14));
  CHECK(P.at(0, 2, 2) == doctest::Approx(s22).epsilon(1e-14));
  CHECK(std::abs(P.at(0, 0, 1)) < 1e-15);
}

TEST_CASE("tangent matches central finite differences near identity") {
  const GridShape shape = grid_3d(2, 2, 1);
  const ElasticParams params{1.0, 0.3};
  std::mt19937 rng(123);

  Tensor2Field F = random_field(shape, 3, rng, 0.15);
  F += identity2(shape, 3);

  Tensor2Field P;
  Tensor4Field K;
  hyperelastic_evaluate(F, params, P, K);
  const Tensor4Field K_fd =
      fd_tangent([&](const Tensor2Field& x) { return eval_P(x, params); }, F, 1e-6);
  CHECK(tangent_rel_error(K, K_fd) < 1e-6);
}

TEST_CASE("objectivity: P(R F) = R P(F) for random rotations") {
  const GridShape shape = grid_3d(1, 1, 1);
  const ElasticParams params{2.0, 0.25};
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> ang(-2.0, 2.0);

  for (int trial = 0; trial < 8; ++trial) {
    Tensor2Field F = random_field(shape, 3, rng, 0.2);
    F += identity2(shape, 3);

    // rotation from three Euler-like angles
    const double a = ang(rng), b = ang(rng), c = ang(rng);
    Tensor2 R(3);
    {
      const double ca = std::cos(a), sa = std::sin(a);
      const double cb = std::cos(b), sb = std::sin(b);
      const double cc = std::cos(c), sc = std::sin(c);
      Tensor2 Rz(3), Ry(3), Rx(3);
      Rz(0, 0) = ca; Rz(0, 1) = -sa; Rz(1, 0) = sa; Rz(1, 1) = ca; Rz(2, 2) = 1.0;
      Ry(0, 0) = cb; Ry(0, 2) = sb; Ry(1, 1) = 1.0; Ry(2, 0) = -sb; Ry(2, 2) = cb;
      Rx(0, 0) = 1.0; Rx(1, 1) = cc; Rx(1, 2) = -sc; Rx(2, 1) = sc; Rx(2, 2) = cc;
      R = dot(Rz, dot(Ry, Rx));
    }

    Tensor2Field RF(shape, 3);
    RF.set_tensor(0, dot(R, F.tensor(0)));

    const Tensor2Field P = eval_P(F, params);
    const Tensor2Field PR = eval_P(RF, params);
    const Tensor2 expected = dot(R, P.tensor(0));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(PR.at(0, i, j) == doctest::Approx(expected(i, j)).epsilon(1e-11));
  }
}

TEST_CASE("inverted nodes are reported") {
  const GridShape shape = grid_3d(2, 1, 1);
  Tensor2Field F = identity2(shape, 3);
  F.at(1, 0, 0) = -0.5;
  CHECK_THROWS_AS(
      [&] {
        Tensor2Field P;
        Tensor4Field K;
        hyperelastic_evaluate(F, ElasticParams{}, P, K);
      }(),
      InvertedElement);
}

TEST_CASE("per-node parameter fields pick up the phase values") {
  const GridShape shape = grid_2d(2, 1);
  ScalarField lam(shape), mu(shape);
  lam[0] = 0.5;
  mu[0] = 0.4;
  lam[1] = 5.0;
  mu[1] = 4.0;
  Tensor2Field F = identity2(shape, 2);
  F.at(0, 0, 0) = 1.05;
  F.at(1, 0, 0) = 1.05;

  Tensor2Field P;
  Tensor4Field K;
  hyperelastic_evaluate(F, lam, mu, P, K);
  // same kinematics, 10x parameters: stress scales tenfold
  CHECK(P.at(1, 0, 0) == doctest::Approx(10.0 * P.at(0, 0, 0)).epsilon(1e-12));
}
