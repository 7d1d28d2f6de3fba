#include "xstates/group.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace xstates {

namespace {

using Mat4 = Eigen::Matrix4cd;

// Applies `op` to the base-4 digit of `qubit` in a dense word-indexed vector.
VecX apply_mode(const VecX& in, int n, int qubit, const Mat4& op) {
  const Eigen::Index stride = Eigen::Index{1} << (2 * (n - 1 - qubit));
  const Eigen::Index block = 4 * stride;
  VecX out = VecX::Zero(in.size());
  for (Eigen::Index base = 0; base < in.size(); base += block) {
    for (Eigen::Index low = 0; low < stride; ++low) {
      const Eigen::Index origin = base + low;
      for (int r = 0; r < 4; ++r) {
        Scalar acc = 0.0;
        for (int c = 0; c < 4; ++c) acc += op(r, c) * in(origin + c * stride);
        out(origin + r * stride) = acc;
      }
    }
  }
  return out;
}

Mat4 lift(const Mat3& g, Scalar identity_entry) {
  Mat4 m = Mat4::Zero();
  m(0, 0) = identity_entry;
  m.bottomRightCorner<3, 3>() = g;
  return m;
}

void check_size(int expected, int got) {
  if (expected != got) throw Error(ErrorKind::InvalidArgument, "qubit count mismatch");
}

}  // namespace

double orthogonality_residual(const std::vector<Mat3>& blocks) {
  double r = 0.0;
  for (const Mat3& g : blocks) {
    r = std::max(r, (g.transpose() * g - Mat3::Identity()).cwiseAbs().maxCoeff());
    r = std::max(r, std::abs(g.determinant() - 1.0));
  }
  return r;
}

LocalRotation::LocalRotation(std::vector<Mat3> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw Error(ErrorKind::InvalidArgument, "rotation needs at least one block");
  if (!(orthogonality_residual(blocks_) <= kSolveTol)) {
    throw Error(ErrorKind::InvalidArgument, "block is not special orthogonal");
  }
}

LocalRotation LocalRotation::identity(int n) {
  return LocalRotation(std::vector<Mat3>(static_cast<std::size_t>(n), Mat3::Identity()));
}

LocalRotation LocalRotation::operator*(const LocalRotation& other) const {
  check_size(n(), other.n());
  std::vector<Mat3> out(blocks_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = blocks_[i] * other.blocks_[i];
  return LocalRotation(std::move(out));
}

LocalRotation LocalRotation::inverse() const {
  std::vector<Mat3> out;
  out.reserve(blocks_.size());
  for (const Mat3& g : blocks_) out.push_back(g.transpose());
  return LocalRotation(std::move(out));
}

Mat3 so3_generator(int axis) {
  Mat3 l = Mat3::Zero();
  const int from = (axis + 1) % 3;
  const int to = (axis + 2) % 3;
  l(to, from) = 1.0;
  l(from, to) = -1.0;
  return l;
}

LieTangent LieTangent::zero(int n) {
  LieTangent x;
  x.blocks_.assign(static_cast<std::size_t>(n), Mat3::Zero());
  return x;
}

LieTangent LieTangent::from_coordinates(const VecX& coords) {
  if (coords.size() % 3 != 0 || coords.size() == 0) {
    throw Error(ErrorKind::InvalidArgument, "Lie coordinates must come in triples");
  }
  LieTangent x = zero(static_cast<int>(coords.size() / 3));
  for (Eigen::Index k = 0; k < coords.size(); ++k) {
    x.blocks_[static_cast<std::size_t>(k / 3)] += coords(k) * so3_generator(static_cast<int>(k % 3));
  }
  return x;
}

LieTangent LieTangent::basis(int n, int k) {
  VecX c = VecX::Zero(3 * n);
  c(k) = 1.0;
  return from_coordinates(c);
}

LieTangent LieTangent::operator*(Scalar s) const {
  LieTangent x = *this;
  for (Mat3& m : x.blocks_) m *= s;
  return x;
}

LocalRotation exp(const LieTangent& x) {
  std::vector<Mat3> blocks;
  blocks.reserve(x.blocks().size());
  for (const Mat3& m : x.blocks()) blocks.push_back(m.exp());
  return LocalRotation(std::move(blocks));
}

VecX act_dense(const LocalRotation& g, const VecX& dense) {
  const int n = g.n();
  if (dense.size() != static_cast<Eigen::Index>(word_count(n))) {
    throw Error(ErrorKind::InvalidArgument, "dense vector has wrong length");
  }
  VecX out = dense;
  for (int i = 0; i < n; ++i) out = apply_mode(out, n, i, lift(g.block(i), 1.0));
  return out;
}

BlochState act(const LocalRotation& g, const BlochState& b) {
  check_size(g.n(), b.n());
  return from_dense(b.n(), act_dense(g, to_dense(b)));
}

BlochState infinitesimal_action(const LieTangent& x, const BlochState& b) {
  check_size(x.n(), b.n());
  const VecX dense = to_dense(b);
  VecX sum = VecX::Zero(dense.size());
  for (int i = 0; i < b.n(); ++i) {
    sum += apply_mode(dense, b.n(), i, lift(x.blocks()[static_cast<std::size_t>(i)], 0.0));
  }
  return from_dense(b.n(), sum);
}

LocalRotation from_sl2(const std::vector<Mat2>& mats) {
  std::array<Mat2, 3> sigma;
  for (int a = 0; a < 3; ++a) sigma[static_cast<std::size_t>(a)] = pauli_matrix(Vec3::Unit(a));
  std::vector<Mat3> blocks;
  for (const Mat2& m : mats) {
    if (!(std::abs(m.determinant()) > 1e-12)) throw Error(ErrorKind::InvalidArgument, "singular matrix");
    const Mat2 inv = m.inverse();
    Mat3 r;
    for (int b = 0; b < 3; ++b) {
      r.col(b) = pauli_coordinates(m * sigma[static_cast<std::size_t>(b)] * inv);
    }
    blocks.push_back(r);
  }
  return LocalRotation(std::move(blocks));
}

LocalRotation random_rotation(int n, Rng& rng, double scale) {
  VecX coords(3 * n);
  for (Eigen::Index k = 0; k < coords.size(); ++k) coords(k) = rng.complex_normal(scale);
  return exp(LieTangent::from_coordinates(coords));
}

LocalRotation random_rotation(int n, std::uint64_t seed, double scale) {
  Rng rng(seed);
  return random_rotation(n, rng, scale);
}

Scalar gm_from_so2(const Mat2& a) {
  const double residual = std::max((a.transpose() * a - Mat2::Identity()).cwiseAbs().maxCoeff(),
                                   std::abs(a.determinant() - 1.0));
  if (!(residual <= kSolveTol)) throw Error(ErrorKind::InvalidArgument, "matrix is not in SO2");
  return a(0, 0) + kI * a(0, 1);
}

LocalRotation weyl_embed(const WeylElement& w) {
  std::vector<Mat3> blocks;
  for (const Mat2& a : w.planar) {
    Mat3 g = Mat3::Zero();
    g.topLeftCorner<2, 2>() = a;
    g(2, 2) = a.determinant();
    blocks.push_back(g);
  }
  return LocalRotation(std::move(blocks));
}

WeylElement weyl_sample(int n, Rng& rng, bool with_reflection, double scale) {
  WeylElement w;
  Mat2 reflection;
  reflection << 1.0, 0.0, 0.0, -1.0;
  for (int i = 0; i < n; ++i) {
    Mat2 a = so2_from_gm(std::exp(rng.complex_normal(scale)));
    if (with_reflection && rng.coin()) a = a * reflection;
    w.planar.push_back(a);
  }
  return w;
}

WeylElement weyl_sample(int n, std::uint64_t seed, bool with_reflection, double scale) {
  Rng rng(seed);
  return weyl_sample(n, rng, with_reflection, scale);
}

WeylElement weyl_central(int n) {
  return WeylElement{std::vector<Mat2>(static_cast<std::size_t>(n), -Mat2::Identity())};
}

}  // namespace xstates
