#include "xstates/xgeometry.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "xstates/error.hpp"

namespace xstates {

namespace {

PauliWord single(int n, int i, char l) { return PauliWord::identity(n).with_letter(i, l); }

PauliWord pair(int n, int i, char li, int j, char lj) {
  return PauliWord::identity(n).with_letter(i, li).with_letter(j, lj);
}

double rel_diff(const SectionPoint2& a, const SectionPoint2& b) {
  double diff = std::max(std::abs(a.x - b.x), std::abs(a.y - b.y));
  double scale = std::max(std::abs(b.x), std::abs(b.y));
  for (int k = 0; k < 3; ++k) {
    diff = std::max(diff, std::abs(a.lambda[k] - b.lambda[k]));
    scale = std::max(scale, std::abs(b.lambda[k]));
  }
  return diff / (1.0 + scale);
}

}  // namespace

LongitudinalSystem::LongitudinalSystem(std::vector<Vec3> axes) : axes_(std::move(axes)) {
  for (const Vec3& z : axes_) {
    if (!(std::abs(scalar_product(z, z) - 1.0) <= kSolveTol)) {
      throw Error(ErrorKind::InvalidArgument, "longitudinal axis must satisfy <z,z> = 1");
    }
  }
}

LongitudinalSystem LongitudinalSystem::standard(int n) {
  return LongitudinalSystem(std::vector<Vec3>(static_cast<std::size_t>(n), Vec3::UnitZ()));
}

LongitudinalSystem LongitudinalSystem::transformed(const LocalRotation& g) const {
  std::vector<Vec3> out;
  for (std::size_t i = 0; i < axes_.size(); ++i) out.push_back(g.blocks()[i] * axes_[i]);
  return LongitudinalSystem(std::move(out));
}

bool is_admissible(const PauliWord& word) {
  return !word.is_identity() && word.transversal_count() % 2 == 0;
}

XFiberPoint::XFiberPoint(int n) : state_(n) {}

XFiberPoint::XFiberPoint(int n, BlochState::ComponentMap coefficients) : state_(n) {
  for (const auto& [word, value] : coefficients) set(word, value);
}

void XFiberPoint::set(const PauliWord& word, Scalar value) {
  if (!is_admissible(word)) {
    throw Error(ErrorKind::InvalidArgument, "word '" + word.str() + "' is not in the fiber");
  }
  state_.set(word, value);
}

bool is_x_pattern(const DensityMatrix& d, double tol) {
  const auto dim = d.matrix.rows();
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      const bool mixed = (std::popcount(static_cast<std::size_t>(r ^ c)) % 2) == 1;
      if (mixed && std::abs(d.matrix(r, c)) > tol) return false;
    }
  }
  return true;
}

BlochState fiber_embed(const XFiberPoint& p) { return BlochState(p.n(), p.coefficients()); }

XFiberPoint fiber_project(const BlochState& b, double tol) {
  const double scale = 1.0 + b.max_abs();
  XFiberPoint p(b.n());
  for (const auto& [word, value] : b.components()) {
    if (is_admissible(word)) {
      p.set(word, value);
    } else if (std::abs(value) > tol * scale) {
      throw Error(ErrorKind::InvalidArgument, "state has weight on '" + word.str() + "' outside the fiber");
    }
  }
  return p;
}

XFiberPoint random_fiber_point(int n, Rng& rng, double scale) {
  XFiberPoint p(n);
  for (std::size_t code = 1; code < word_count(n); ++code) {
    const PauliWord w = PauliWord::from_code(n, code);
    if (is_admissible(w)) p.set(w, rng.complex_normal(scale));
  }
  return p;
}

RandomXState random_xstate(int n, Rng& rng) {
  for (int attempt = 0; attempt < 16; ++attempt) {
    XFiberPoint p = random_fiber_point(n, rng);
    LocalRotation g = random_rotation(n, rng);
    BlochState b = act(g, fiber_embed(p));
    bool open = true;
    for (int i = 0; i < n && open; ++i) {
      const Vec3 v = one_point(b, i);
      open = std::abs(scalar_product(v, v)) > 1e-8;
    }
    if (open && n == 2) {
      try {
        reduce_to_section2(b);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotGeneric) throw;
        open = false;
      }
    }
    if (open) return RandomXState{std::move(b), std::move(g), std::move(p)};
  }
  throw Error(ErrorKind::DegenerateSample, "no sample in the open stratum after 16 attempts");
}

RandomXState random_xstate(int n, std::uint64_t seed) {
  Rng rng(seed);
  return random_xstate(n, rng);
}

std::uint64_t fiber_dimension_by_count(int n) {
  if (n < 1 || n > 30) throw Error(ErrorKind::InvalidArgument, "n must lie in 1..30");
  auto binom = [](std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 1;
    for (std::uint64_t k = 1; k <= b; ++k) r = r * (a - b + k) / k;
    return r;
  };
  const auto un = static_cast<std::uint64_t>(n);
  std::uint64_t total = 0;
  for (std::uint64_t s = 0; s <= un; ++s) {
    for (std::uint64_t t = 0; s + t <= un; t += 2) {
      if (s + t == 0) continue;
      total += binom(un, s) * binom(un - s, t) * (std::uint64_t{1} << t);
    }
  }
  return total;
}

DimFormulas dim_formulas(int n) {
  if (n < 2 || n > 30) throw Error(ErrorKind::InvalidArgument, "n must lie in 2..30");
  const auto un = static_cast<std::uint64_t>(n);
  const std::uint64_t half = std::uint64_t{1} << (2 * n - 1);
  DimFormulas d;
  d.dim_fiber = half - 1;
  d.dim_variety = half + 2 * un - 1;
  d.trdeg = half - un - 1;
  d.dim_xT = 5 * un - 4;
  d.dim_F = half + 3 - 5 * un;
  if (fiber_dimension_by_count(n) != d.dim_fiber) {
    throw Error(ErrorKind::InternalError, "fiber dimension count disagrees with closed form");
  }
  return d;
}

BlochState section_embed2(const SectionPoint2& s) {
  BlochState b(2);
  b.set("ZI", s.x);
  b.set("IZ", s.y);
  b.set("XX", s.lambda[0]);
  b.set("YY", s.lambda[1]);
  b.set("ZZ", s.lambda[2]);
  return b;
}

std::array<Scalar, 3> solve_cubic(Scalar a2, Scalar a1, Scalar a0) {
  const Scalar shift = a2 / 3.0;
  const Scalar p = a1 - a2 * a2 / 3.0;
  const Scalar q = 2.0 * a2 * a2 * a2 / 27.0 - a2 * a1 / 3.0 + a0;
  const Scalar root_d = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  Scalar u3 = -q / 2.0 + root_d;
  const Scalar other = -q / 2.0 - root_d;
  if (std::abs(other) > std::abs(u3)) u3 = other;

  std::array<Scalar, 3> roots{};
  if (std::abs(u3) == 0.0) {
    roots.fill(-shift);
  } else {
    const Scalar u = std::pow(u3, 1.0 / 3.0);
    const Scalar omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    Scalar rot = 1.0;
    for (auto& r : roots) {
      const Scalar uk = rot * u;
      r = uk - p / (3.0 * uk) - shift;
      rot *= omega;
    }
  }
  for (auto& r : roots) {
    const Scalar f = ((r + a2) * r + a1) * r + a0;
    const Scalar df = (3.0 * r + 2.0 * a2) * r + a1;
    if (std::abs(df) > 0.0) r -= f / df;
  }
  return roots;
}

SymmetricEigen3 symmetric_eigen3(const Mat3& s) {
  const Scalar tr = s.trace();
  const Scalar minors = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0) + s(0, 0) * s(2, 2) - s(0, 2) * s(2, 0) +
                        s(1, 1) * s(2, 2) - s(1, 2) * s(2, 1);
  SymmetricEigen3 out;
  out.values = solve_cubic(-tr, minors, -s.determinant());
  for (int k = 0; k < 3; ++k) {
    const Mat3 a = s - out.values[static_cast<std::size_t>(k)] * Mat3::Identity();
    // Null vector: the largest cross product of two rows.
    Vec3 best = Vec3::Zero();
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const Vec3 c = cross(a.row(i).transpose(), a.row(j).transpose());
        if (c.norm() > best.norm()) best = c;
      }
    }
    out.vectors.col(k) = best;
  }
  return out;
}

SectionReduction reduce_to_section2(const BlochState& b, double tol) {
  if (b.n() != 2) throw Error(ErrorKind::InvalidArgument, "section reduction needs two qubits");
  const double scale = b.max_abs();
  if (scale == 0.0) throw Error(ErrorKind::NotGeneric, "maximally mixed state");

  const Vec3 v = one_point(b, 0);
  const Vec3 w = one_point(b, 1);
  const Mat3 c = two_point(b, 0, 1);
  const Mat3 rows = c * c.transpose();

  const SymmetricEigen3 eig = symmetric_eigen3(rows);
  const auto& mu = eig.values;
  const Scalar disc = (mu[0] - mu[1]) * (mu[0] - mu[1]) * (mu[0] - mu[2]) * (mu[0] - mu[2]) *
                      (mu[1] - mu[2]) * (mu[1] - mu[2]);
  const double s2 = scale * scale;
  const double s6 = s2 * s2 * s2;
  if (!(std::abs(scalar_product(v, v)) / s2 > tol) || !(std::abs(scalar_product(w, w)) / s2 > tol) ||
      !(std::abs(rows.determinant()) / s6 > tol) || !(std::abs(disc) / (s6 * s6) > tol)) {
    throw Error(ErrorKind::NotGeneric, "state is not in general position");
  }

  std::array<Vec3, 3> u;
  for (int k = 0; k < 3; ++k) {
    Vec3 e = eig.vectors.col(k);
    const Scalar self = scalar_product(e, e);
    if (!(std::abs(self) / e.squaredNorm() > tol)) {
      throw Error(ErrorKind::NotGeneric, "isotropic eigenvector");
    }
    u[static_cast<std::size_t>(k)] = e / std::sqrt(self);
  }

  // The eigenvector carrying v goes last; the other two are ordered by eigenvalue.
  std::array<int, 3> order{0, 1, 2};
  int along_v = 0;
  double best = -1.0;
  for (int k = 0; k < 3; ++k) {
    const double overlap = std::abs(scalar_product(u[static_cast<std::size_t>(k)], v)) / u[static_cast<std::size_t>(k)].norm();
    if (overlap > best) {
      best = overlap;
      along_v = k;
    }
  }
  std::array<int, 2> rest{};
  for (int k = 0, m = 0; k < 3; ++k) {
    if (k != along_v) rest[static_cast<std::size_t>(m++)] = k;
  }
  auto lex_less = [&](int a, int bb) {
    const Scalar x = mu[static_cast<std::size_t>(a)];
    const Scalar y = mu[static_cast<std::size_t>(bb)];
    return x.real() < y.real() || (x.real() == y.real() && x.imag() < y.imag());
  };
  if (lex_less(rest[1], rest[0])) std::swap(rest[0], rest[1]);
  order = {rest[0], rest[1], along_v};

  Mat3 g1;
  std::array<Scalar, 3> lambda{};
  for (int r = 0; r < 3; ++r) {
    const auto k = static_cast<std::size_t>(order[static_cast<std::size_t>(r)]);
    g1.row(r) = u[k].transpose();
    lambda[static_cast<std::size_t>(r)] = std::sqrt(mu[k]);
  }
  if (std::real(g1.determinant()) < 0.0) g1.row(0) *= -1.0;

  // Rows of g2 are (C^T u_k) / lambda_k, which makes g1 C g2^T = diag(lambda).
  Mat3 g2;
  for (int r = 0; r < 3; ++r) {
    g2.row(r) = (c.transpose() * g1.row(r).transpose()).transpose() / lambda[static_cast<std::size_t>(r)];
  }
  if (std::real(g2.determinant()) < 0.0) {
    g2.row(0) *= -1.0;
    lambda[0] = -lambda[0];
  }

  const Vec3 v_out = g1 * v;
  const Vec3 w_out = g2 * w;
  SectionPoint2 point{v_out(2), w_out(2), lambda};

  if (!(orthogonality_residual({g1, g2}) <= kSolveTol)) {
    throw Error(ErrorKind::NotGeneric, "normalizing rotation is ill-conditioned");
  }
  LocalRotation g({g1, g2});

  const VecX moved = to_dense(act(g, b));
  const VecX target = to_dense(section_embed2(point));
  const double residual = (moved - target).cwiseAbs().maxCoeff() / (1.0 + scale);
  if (!(residual <= 1e-8)) {
    throw Error(ErrorKind::ReductionFailed, "state does not reduce to the section (not an X-state?)");
  }
  return SectionReduction{std::move(g), point};
}

std::vector<WeylElement> section_normalizer2() {
  std::vector<WeylElement> out;
  Mat2 swap;
  swap << 0.0, 1.0, 1.0, 0.0;
  for (int perm = 0; perm < 2; ++perm) {
    const Mat2 p = perm == 0 ? Mat2::Identity() : swap;
    for (int signs = 0; signs < 16; ++signs) {
      Mat2 d1 = Mat2::Zero();
      Mat2 d2 = Mat2::Zero();
      d1(0, 0) = (signs & 1) ? -1.0 : 1.0;
      d1(1, 1) = (signs & 2) ? -1.0 : 1.0;
      d2(0, 0) = (signs & 4) ? -1.0 : 1.0;
      d2(1, 1) = (signs & 8) ? -1.0 : 1.0;
      out.push_back(WeylElement{{d1 * p, d2 * p}});
    }
  }
  return out;
}

std::vector<SectionPoint2> weyl_orbit_section2(const SectionPoint2& s) {
  const BlochState base = section_embed2(s);
  std::vector<SectionPoint2> orbit;
  for (const WeylElement& w : section_normalizer2()) {
    const BlochState moved = act(weyl_embed(w), base);
    const SectionPoint2 image{moved["ZI"], moved["IZ"], {moved["XX"], moved["YY"], moved["ZZ"]}};
    const bool seen = std::any_of(orbit.begin(), orbit.end(),
                                  [&](const SectionPoint2& o) { return rel_diff(o, image) <= 1e-12; });
    if (!seen) orbit.push_back(image);
  }
  return orbit;
}

bool same_section_orbit(const SectionPoint2& a, const SectionPoint2& b, double tol) {
  const auto orbit = weyl_orbit_section2(a);
  return std::any_of(orbit.begin(), orbit.end(), [&](const SectionPoint2& o) { return rel_diff(o, b) <= tol; });
}

XTPoint truncate_to_xT(const XFiberPoint& p) {
  const int n = p.n();
  if (n < 2) throw Error(ErrorKind::InvalidArgument, "truncation needs at least two qubits");
  XTPoint t;
  for (int i = 0; i < n; ++i) t.alphas.push_back(p[single(n, i, 'Z')]);
  constexpr char kTransversal[2] = {'X', 'Y'};
  for (int j = 0; j + 1 < n; ++j) {
    Mat2 block;
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) block(r, c) = p[pair(n, j, kTransversal[r], n - 1, kTransversal[c])];
    }
    t.blocks.push_back(block);
  }
  return t;
}

XFiberPoint lift_xT(const XTPoint& t) {
  const int n = t.n();
  if (n < 2 || t.blocks.size() != static_cast<std::size_t>(n - 1)) {
    throw Error(ErrorKind::InvalidArgument, "malformed truncated point");
  }
  XFiberPoint p(n);
  for (int i = 0; i < n; ++i) p.set(single(n, i, 'Z'), t.alphas[static_cast<std::size_t>(i)]);
  constexpr char kTransversal[2] = {'X', 'Y'};
  for (int j = 0; j + 1 < n; ++j) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        p.set(pair(n, j, kTransversal[r], n - 1, kTransversal[c]), t.blocks[static_cast<std::size_t>(j)](r, c));
      }
    }
  }
  return p;
}

XTPoint random_xt_point(int n, Rng& rng, double scale) {
  XTPoint t;
  for (int i = 0; i < n; ++i) t.alphas.push_back(rng.complex_normal(scale));
  for (int j = 0; j + 1 < n; ++j) {
    Mat2 m;
    for (int k = 0; k < 4; ++k) m(k / 2, k % 2) = rng.complex_normal(scale);
    t.blocks.push_back(m);
  }
  return t;
}

}  // namespace xstates
