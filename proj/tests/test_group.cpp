#include <doctest.h>

#include "oracles.hpp"
#include "xstates/bloch.hpp"
#include "xstates/error.hpp"
#include "xstates/group.hpp"
#include "xstates/xgeometry.hpp"

using namespace xstates;

namespace {

BlochState random_state(int n, Rng& rng) {
  BlochState b(n);
  for (std::size_t code = 1; code < word_count(n); ++code) b.set(PauliWord::from_code(n, code), rng.complex_normal());
  return b;
}

Mat2 random_gl2(Rng& rng) {
  Mat2 m;
  for (int e = 0; e < 4; ++e) m(e / 2, e % 2) = rng.complex_normal();
  return m;
}

// Conjugation by a tensor product of 2x2 matrices, computed on 2^n x 2^n matrices.
BlochState conjugate_oracle(const std::vector<Mat2>& mats, const BlochState& b) {
  const int n = b.n();
  oracle::M u = oracle::M::Identity(1, 1);
  oracle::M u_inv = oracle::M::Identity(1, 1);
  for (const Mat2& m : mats) {
    u = oracle::kron(u, m);
    u_inv = oracle::kron(u_inv, m.inverse());
  }
  const auto dim = Eigen::Index{1} << n;
  oracle::M rho = oracle::M::Identity(dim, dim);
  for (const auto& [w, c] : b.components()) rho += c * oracle::pauli(w.str());
  const oracle::M moved = u * rho * u_inv;
  BlochState out(n);
  for (std::size_t code = 1; code < word_count(n); ++code) {
    const PauliWord w = PauliWord::from_code(n, code);
    const Scalar c = (moved * oracle::pauli(w.str())).trace() / static_cast<double>(dim);
    if (std::abs(c) > 1e-13) out.set(w, c);
  }
  return out;
}

double distance(const BlochState& a, const BlochState& b) { return (to_dense(a) - to_dense(b)).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("local rotation validation") {
  Mat3 bad = Mat3::Identity();
  bad(0, 0) = 2.0;
  CHECK_THROWS_AS(LocalRotation({bad}), Error);
  CHECK_THROWS_AS(LocalRotation({Mat3::Identity() * -1.0}), Error);
  CHECK_THROWS_AS(LocalRotation(std::vector<Mat3>{}), Error);

  const LocalRotation g = random_rotation(3, 7);
  const LocalRotation e = g * g.inverse();
  CHECK(orthogonality_residual(e.blocks()) < 1e-12);
  for (const Mat3& b : e.blocks()) CHECK((b - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("generators and exponential") {
  const Vec3 ex(1, 0, 0);
  const Vec3 ey(0, 1, 0);
  const Vec3 ez(0, 0, 1);
  CHECK((so3_generator(0) * ey - ez).norm() == 0.0);
  CHECK((so3_generator(1) * ez - ex).norm() == 0.0);
  CHECK((so3_generator(2) * ex - ey).norm() == 0.0);

  const Scalar theta(0.4, 0.3);
  VecX coords = VecX::Zero(3);
  coords(2) = theta;
  const Mat3 r = exp(LieTangent::from_coordinates(coords)).block(0);
  Mat3 expected = Mat3::Identity();
  expected(0, 0) = expected(1, 1) = std::cos(theta);
  expected(1, 0) = std::sin(theta);
  expected(0, 1) = -std::sin(theta);
  CHECK((r - expected).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(LieTangent::from_coordinates(VecX::Zero(4)), Error);
}

TEST_CASE("act examples") {
  Rng rng(2);
  const BlochState b = random_state(2, rng);
  CHECK(distance(act(LocalRotation::identity(2), b), b) == 0.0);

  BlochState x(1);
  x.set("X", 1.0);
  Mat3 flip = Mat3::Identity();
  flip(0, 0) = flip(1, 1) = -1.0;
  const BlochState moved = act(LocalRotation({flip}), x);
  CHECK(moved.components().size() == 1);
  CHECK(moved["X"] == Scalar(-1.0));
  CHECK_THROWS_AS(act(LocalRotation::identity(3), b), Error);
}

TEST_CASE("act agrees with tensor conjugation") {
  Rng rng(4);
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<Mat2> mats;
      for (int i = 0; i < n; ++i) mats.push_back(random_gl2(rng));
      const BlochState b = random_state(n, rng);
      const BlochState lhs = act(from_sl2(mats), b);
      const BlochState rhs = conjugate_oracle(mats, b);
      CHECK(distance(lhs, rhs) < 1e-9 * (1.0 + rhs.max_abs()));
      CHECK((act_dense(from_sl2(mats), to_dense(b)) - to_dense(lhs)).cwiseAbs().maxCoeff() < 1e-12 * (1.0 + lhs.max_abs()));
    }
  }
}

TEST_CASE("act preserves one-point scalar products") {
  Rng rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const BlochState b = random_state(2, rng);
    const BlochState moved = act(random_rotation(2, rng), b);
    for (int i = 0; i < 2; ++i) {
      const Vec3 v = one_point(b, i);
      const Vec3 w = one_point(moved, i);
      CHECK(std::abs(scalar_product(v, v) - scalar_product(w, w)) < 1e-9 * (1.0 + std::abs(scalar_product(v, v))));
    }
  }
}

TEST_CASE("act is a group action") {
  Rng rng(10);
  const BlochState b = random_state(3, rng);
  const LocalRotation g = random_rotation(3, rng);
  const LocalRotation h = random_rotation(3, rng);
  const BlochState lhs = act(g * h, b);
  CHECK(distance(lhs, act(g, act(h, b))) < 1e-10 * (1.0 + lhs.max_abs()));
}

TEST_CASE("from_sl2 examples") {
  const LocalRotation e = from_sl2({Mat2::Identity(), Mat2::Identity()});
  for (const Mat3& b : e.blocks()) CHECK((b - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-15);

  Mat2 d = Mat2::Zero();
  d(0, 0) = kI;
  d(1, 1) = -kI;
  Mat3 expected = Mat3::Zero();
  expected.diagonal() << -1, -1, 1;
  CHECK((from_sl2({d}).block(0) - expected).cwiseAbs().maxCoeff() < 1e-15);

  const Mat2 scalar = Mat2::Identity() * Scalar(2.0, -3.0);
  CHECK((from_sl2({scalar}).block(0) - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(from_sl2({Mat2::Zero()}), Error);
}

TEST_CASE("random_rotation") {
  const LocalRotation zero = random_rotation(2, 1, 0.0);
  for (const Mat3& b : zero.blocks()) CHECK((b - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CHECK(orthogonality_residual(random_rotation(3, seed).blocks()) < 1e-9);
  }
  const LocalRotation a = random_rotation(2, 1);
  const LocalRotation b = random_rotation(2, 2);
  CHECK((a.block(0) - b.block(0)).norm() > 1e-3);
  CHECK((random_rotation(2, 1).block(1) - a.block(1)).norm() == 0.0);
}

TEST_CASE("infinitesimal action") {
  Rng rng(12);
  const BlochState b = random_state(2, rng);
  CHECK(infinitesimal_action(LieTangent::zero(2), b).components().empty());

  BlochState x(1);
  x.set("X", 1.0);
  const BlochState t = infinitesimal_action(LieTangent::basis(1, 2), x);
  CHECK(t.components().size() == 1);
  CHECK(std::abs(t["Y"] - 1.0) < 1e-15);

  VecX coords(6);
  for (Eigen::Index k = 0; k < 6; ++k) coords(k) = rng.complex_normal();
  const LieTangent xt = LieTangent::from_coordinates(coords);
  const double h = 1e-6;
  // The identity entry is fixed by to_dense, so compare the rest.
  const VecX fd = ((to_dense(act(exp(xt * h), b)) - to_dense(b)) / h).tail(15);
  const VecX exact = to_dense(infinitesimal_action(xt, b)).tail(15);
  CHECK((fd - exact).norm() < 1e-5 * (1.0 + exact.norm()));
}

TEST_CASE("so2 and multiplicative group") {
  CHECK((so2_from_gm(Scalar(1.0)) - Mat2::Identity()).cwiseAbs().maxCoeff() == 0.0);

  Mat2 expected;
  expected << 1.25, Scalar(0, -0.75), Scalar(0, 0.75), 1.25;
  CHECK((so2_from_gm(Scalar(2.0)) - expected).cwiseAbs().maxCoeff() < 1e-15);
  CHECK_THROWS_AS(so2_from_gm(Scalar(0.0)), Error);

  CHECK(gm_from_so2(Mat2::Identity()) == Scalar(1.0));
  Mat2 quarter;
  quarter << 0, 1, -1, 0;
  CHECK(std::abs(gm_from_so2(quarter) - kI) < 1e-15);
  CHECK_THROWS_AS(gm_from_so2(Mat2::Identity() * 2.0), Error);

  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    const Scalar l = std::exp(rng.complex_normal());
    CHECK(std::abs(gm_from_so2(so2_from_gm(l)) - l) / std::abs(l) < 1e-12);
    const Scalar m = std::exp(rng.complex_normal());
    const Mat2 a = so2_from_gm(l);
    const Mat2 b = so2_from_gm(m);
    CHECK(std::abs(gm_from_so2(a * b) - gm_from_so2(a) * gm_from_so2(b)) / std::abs(l * m) < 1e-10);
  }
}

TEST_CASE("weyl embedding") {
  const LocalRotation e = weyl_embed(WeylElement{{Mat2::Identity(), Mat2::Identity()}});
  for (const Mat3& b : e.blocks()) CHECK((b - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);

  Mat2 r = Mat2::Identity();
  r(1, 1) = -1.0;
  Mat3 expected = Mat3::Zero();
  expected.diagonal() << 1, -1, -1;
  CHECK((weyl_embed(WeylElement{{r}}).block(0) - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("weyl samples") {
  const WeylElement e = weyl_sample(3, 5, false, 0.0);
  for (const Mat2& b : e.planar) CHECK((b - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-15);

  const Vec3 ez(0, 0, 1);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const LocalRotation g = weyl_embed(weyl_sample(3, seed, true));
    CHECK(orthogonality_residual(g.blocks()) < 1e-9);
    for (const Mat3& b : g.blocks()) {
      const Vec3 image = b * ez;
      CHECK(image.head(2).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(std::abs(std::abs(image(2)) - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("central element acts trivially on fibers") {
  Rng rng(14);
  for (int n = 2; n <= 4; ++n) {
    const BlochState b = fiber_embed(random_fiber_point(n, rng));
    CHECK(distance(act(weyl_embed(weyl_central(n)), b), b) == 0.0);
  }
}
