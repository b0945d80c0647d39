#include <doctest.h>

#include <random>

#include "fftmech/errors.hpp"
#include "fftmech/tensor_ops.hpp"
#include "oracles.hpp"

using namespace fftmech;
using testsupport::random_field;

namespace {

// Index-notation reference for the double contraction, used to pin the
// convention independently of the slab kernels.
Tensor2 ddot42_reference(const Tensor4Field& A, const Tensor2Field& B, std::size_t node) {
  const int d = A.tdim();
  Tensor2 c(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) s += A.at(node, i, j, k, l) * B.at(node, l, k);
      c(i, j) = s;
    }
  return c;
}

Tensor2Field random_spd_field(const GridShape& shape, int tdim, std::mt19937& rng) {
  Tensor2Field A = random_field(shape, tdim, rng, 0.4);
  Tensor2Field spd(shape, tdim);
  for (std::size_t q = 0; q < A.nodes(); ++q) {
    Tensor2 a = A.tensor(q);
    Tensor2 s(tdim);
    for (int i = 0; i < tdim; ++i)
      for (int j = 0; j < tdim; ++j) {
        double v = (i == j) ? 1.0 : 0.0;  // shift keeps the spectrum positive
        for (int k = 0; k < tdim; ++k) v += a(i, k) * a(j, k);
        s(i, j) = v;
      }
    spd.set_tensor(q, s);
  }
  return spd;
}

}  // namespace

TEST_CASE("identities act as expected under the ddot convention") {
  const GridShape shape = grid_3d(2, 2, 1);
  std::mt19937 rng(42);
  const Tensor2Field A = random_field(shape, 3, rng);

  const Tensor2Field iddot = ddot42(identity4(shape, 3), A);
  const Tensor2Field rtdot = ddot42(identity4rt(shape, 3), A);
  const Tensor2Field symdot = ddot42(identity4sym(shape, 3), A);

  for (std::size_t q = 0; q < A.nodes(); ++q)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        CHECK(iddot.at(q, i, j) == doctest::Approx(A.at(q, i, j)).epsilon(1e-14));
        CHECK(rtdot.at(q, i, j) == doctest::Approx(A.at(q, j, i)).epsilon(1e-14));
        CHECK(symdot.at(q, i, j) ==
              doctest::Approx(0.5 * (A.at(q, i, j) + A.at(q, j, i))).epsilon(1e-14));
      }

  // identity2 dotted with A reproduces A
  const Tensor2Field idot = dot22(identity2(shape, 3), A);
  for (std::size_t q = 0; q < A.nodes(); ++q)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(idot.at(q, i, j) == doctest::Approx(A.at(q, i, j)));
}

TEST_CASE("ddot42 matches the index-notation oracle on random input") {
  const GridShape shape = grid_2d(3, 2);
  std::mt19937 rng(7);
  for (int tdim : {2, 3}) {
    Tensor4Field A(shape, tdim);
    for (double& v : A.data()) v = std::uniform_real_distribution<double>(-1, 1)(rng);
    const Tensor2Field B = random_field(shape, tdim, rng);
    const Tensor2Field C = ddot42(A, B);
    for (std::size_t q = 0; q < B.nodes(); ++q) {
      const Tensor2 ref = ddot42_reference(A, B, q);
      for (int i = 0; i < tdim; ++i)
        for (int j = 0; j < tdim; ++j)
          CHECK(C.at(q, i, j) == doctest::Approx(ref(i, j)).epsilon(1e-13));
    }
  }
}

TEST_CASE("dyad22(I, I) contracted with A gives tr(A) I") {
  const GridShape shape = grid_3d(2, 1, 1);
  std::mt19937 rng(3);
  const Tensor2Field A = random_field(shape, 3, rng);
  const Tensor2Field I = identity2(shape, 3);
  const Tensor2Field out = ddot42(dyad22(I, I), A);
  for (std::size_t q = 0; q < A.nodes(); ++q) {
    const double tr = A.at(q, 0, 0) + A.at(q, 1, 1) + A.at(q, 2, 2);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(out.at(q, i, j) == doctest::Approx(i == j ? tr : 0.0).epsilon(1e-13));
  }
}

TEST_CASE("isotropic stiffness annihilates a zero strain field") {
  const GridShape shape = grid_3d(2, 2, 2);
  const Tensor2Field zero(shape, 3);
  Tensor4Field C = dyad22(identity2(shape, 3), identity2(shape, 3));
  C *= 0.577;
  Tensor4Field Is = identity4sym(shape, 3);
  Is *= 2.0 * 0.385;
  C += Is;
  CHECK(field_norm(ddot42(C, zero)) == 0.0);
}

TEST_CASE("inv2 round-trips well-conditioned random tensors") {
  const GridShape shape = grid_3d(3, 2, 2);
  std::mt19937 rng(11);
  Tensor2Field F = random_field(shape, 3, rng, 0.3);
  F += identity2(shape, 3);
  const Tensor2Field round = dot22(inv2(F), F);
  const Tensor2Field I = identity2(shape, 3);
  for (std::size_t i = 0; i < round.size(); ++i)
    CHECK(round.data()[i] == doctest::Approx(I.data()[i]).epsilon(1e-12));
}

TEST_CASE("inv2 reports the offending node") {
  const GridShape shape = grid_2d(2, 1);
  Tensor2Field F = identity2(shape, 2);
  F.at(1, 0, 0) = 0.0;
  F.at(1, 1, 1) = 0.0;  // node 1 singular
  CHECK_THROWS_AS(inv2(F), SingularTensor);
  try {
    inv2(F);
  } catch (const SingularTensor& e) {
    CHECK(e.node == 1);
  }
}

TEST_CASE("ln_sym2 of diag(e^2, 1, 1) is diag(2, 0, 0)") {
  const GridShape shape = grid_3d(1, 1, 1);
  Tensor2Field A = identity2(shape, 3);
  A.at(0, 0, 0) = std::exp(2.0);
  const Tensor2Field L = ln_sym2(A);
  CHECK(L.at(0, 0, 0) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(L.at(0, 1, 1) == doctest::Approx(0.0));
  CHECK(L.at(0, 2, 2) == doctest::Approx(0.0));
  CHECK(std::abs(L.at(0, 0, 1)) < 1e-14);
}

TEST_CASE("exp_sym2(ln_sym2(B)) round-trips SPD fields") {
  const GridShape shape = grid_3d(3, 3, 2);
  std::mt19937 rng(17);
  const Tensor2Field B = random_spd_field(shape, 3, rng);
  const Tensor2Field round = exp_sym2(ln_sym2(B));
  double err = 0.0;
  for (std::size_t i = 0; i < B.size(); ++i)
    err = std::max(err, std::abs(round.data()[i] - B.data()[i]));
  CHECK(err < 1e-10);
}

TEST_CASE("ln_sym2 rejects non-symmetric and non-positive input") {
  const GridShape shape = grid_3d(1, 1, 1);
  Tensor2Field A = identity2(shape, 3);
  A.at(0, 0, 1) = 0.5;
  CHECK_THROWS_AS(ln_sym2(A), NotSymmetric);

  Tensor2Field B = identity2(shape, 3);
  B.at(0, 2, 2) = -1.0;
  CHECK_THROWS_AS(ln_sym2(B), NotPositiveDefinite);
}

TEST_CASE("field_norm and field_mean") {
  const GridShape shape = grid_2d(2, 1);
  Tensor2Field A(shape, 2);

  SUBCASE("zero field has zero norm") { CHECK(field_norm(A) == 0.0); }

  SUBCASE("hand-evaluated two-node norm") {
    A.at(0, 0, 1) = 3.0;
    A.at(1, 1, 0) = 4.0;
    CHECK(field_norm(A) == doctest::Approx(5.0));
  }

  SUBCASE("mean of a constant field is that constant") {
    Tensor2 c = Tensor2::identity(2);
    c *= 2.5;
    A.add_uniform(c);
    const Tensor2 mean = field_mean(A);
    CHECK(mean(0, 0) == doctest::Approx(2.5));
    CHECK(mean(1, 1) == doctest::Approx(2.5));
    CHECK(mean(0, 1) == doctest::Approx(0.0));
  }

  SUBCASE("mean is linear") {
    std::mt19937 rng(5);
    const Tensor2Field X = random_field(shape, 2, rng);
    const Tensor2Field Y = random_field(shape, 2, rng);
    Tensor2Field Z = X;
    Z *= 2.0;
    Tensor2Field Y3 = Y;
    Y3 *= -3.0;
    Z += Y3;
    const Tensor2 mz = field_mean(Z);
    const Tensor2 mx = field_mean(X);
    const Tensor2 my = field_mean(Y);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        CHECK(mz(i, j) == doctest::Approx(2.0 * mx(i, j) - 3.0 * my(i, j)));
  }
}

TEST_CASE("binary ops are node-local") {
  const GridShape shape = grid_3d(2, 2, 2);
  std::mt19937 rng(23);
  Tensor4Field A(shape, 3);
  for (double& v : A.data()) v = std::uniform_real_distribution<double>(-1, 1)(rng);
  Tensor2Field B = random_field(shape, 3, rng);

  const Tensor2Field base = ddot42(A, B);
  B.at(5, 1, 2) += 0.123;  // perturb one node
  const Tensor2Field bumped = ddot42(A, B);
  for (std::size_t q = 0; q < B.nodes(); ++q)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (q == 5) continue;
        CHECK(bumped.at(q, i, j) == base.at(q, i, j));
      }
}

TEST_CASE("trans4 variants move the expected indices") {
  const GridShape shape = grid_2d(2, 2);
  std::mt19937 rng(31);
  Tensor4Field A(shape, 2);
  for (double& v : A.data()) v = std::uniform_real_distribution<double>(-1, 1)(rng);
  const Tensor4Field L = trans4_left(A);
  const Tensor4Field R = trans4_right(A);
  for (std::size_t q = 0; q < A.nodes(); ++q)
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) {
            CHECK(L.at(q, j, i, k, l) == A.at(q, i, j, k, l));
            CHECK(R.at(q, i, j, l, k) == A.at(q, i, j, k, l));
          }
}
