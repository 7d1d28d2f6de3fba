#include "xstates/invariants.hpp"

#include <algorithm>
#include <cmath>

#include "xstates/error.hpp"
#include "xstates/group.hpp"

namespace xstates {

double aux_relation_residual(const AuxInvariants& q) {
  const Scalar terms[4] = {q.delta * q.delta, q.t * q.t, q.a * q.a, q.b * q.b};
  double scale = 0.0;
  for (const Scalar& s : terms) scale = std::max(scale, std::abs(s));
  return std::abs(terms[0] - terms[1] + terms[2] + terms[3]) / (1.0 + scale);
}

Mat2 torsor_recover(const Mat2& m, const Mat2& m_prime, double tol) {
  const AuxInvariants q = aux_dtab(m);
  const AuxInvariants q2 = aux_dtab(m_prime);
  const double scale = 1.0 + std::max({std::abs(q.delta), std::abs(q.t), std::abs(q.a), std::abs(q.b)});
  const double diff = std::max({std::abs(q.delta - q2.delta), std::abs(q.t - q2.t), std::abs(q.a - q2.a),
                                std::abs(q.b - q2.b)});
  if (diff > tol * scale) throw Error(ErrorKind::NotSameOrbit, "invariants differ");
  if (!(std::abs(q.delta) > tol)) throw Error(ErrorKind::Degenerate, "det M vanishes");
  return m_prime * m.inverse();
}

MatX u_matrix(const std::vector<AuxInvariants>& aux) {
  const auto size = static_cast<Eigen::Index>(aux.size());
  MatX u(size, size);
  for (Eigen::Index j = 0; j < size; ++j) {
    const WPlusMinus wj = wpm(aux[static_cast<std::size_t>(j)].a, aux[static_cast<std::size_t>(j)].b);
    for (Eigen::Index k = 0; k < size; ++k) {
      const WPlusMinus wk = wpm(aux[static_cast<std::size_t>(k)].a, aux[static_cast<std::size_t>(k)].b);
      u(j, k) = 4.0 * wj.plus * wk.minus;
    }
  }
  return u;
}

WPrimeChain wprime_chain(const XTPoint& p) {
  if (p.n() < 2 || p.blocks.size() != static_cast<std::size_t>(p.n() - 1)) {
    throw Error(ErrorKind::InvalidArgument, "malformed truncated point");
  }
  WPrimeChain c;
  for (const Mat2& m : p.blocks) c.aux.push_back(aux_dtab(m));
  c.u = u_matrix(c.aux);
  const std::size_t edges = c.aux.size();
  c.s.assign(edges, Scalar{});
  c.v.assign(edges, Scalar{});
  for (std::size_t j = 1; j < edges; ++j) {
    const auto jj = static_cast<Eigen::Index>(j);
    c.s[j] = 0.5 * (c.u(0, jj) + c.u(jj, 0));
    c.v[j] = (c.u(0, jj) - c.u(jj, 0)) / (2.0 * kI);
  }
  return c;
}

VecX wprime_coords(const XTPoint& p) {
  const WPrimeChain c = wprime_chain(p);
  const auto edges = static_cast<Eigen::Index>(c.aux.size());
  VecX out(3 * edges - 1);
  const Scalar base = c.aux[0].delta * c.aux[0].delta - c.aux[0].t * c.aux[0].t;
  for (Eigen::Index k = 0; k < edges; ++k) {
    out(k) = c.aux[static_cast<std::size_t>(k)].t;
    out(edges + k) = c.aux[static_cast<std::size_t>(k)].delta;
  }
  for (Eigen::Index j = 1; j < edges; ++j) out(2 * edges + j - 1) = c.u(0, j) / base;
  return out;
}

VecX QuotientCoords::to_vector() const {
  VecX out(static_cast<Eigen::Index>(t_tilde.size() + delta_tilde.size() + s_tilde.size() + v_tilde.size() + 2));
  Eigen::Index k = 0;
  for (const auto* list : {&t_tilde, &delta_tilde, &s_tilde, &v_tilde}) {
    for (const Scalar& x : *list) out(k++) = x;
  }
  out(k++) = eta_first;
  out(k) = eta_last;
  return out;
}

QuotientCoords quotient_coords(const XTPoint& p) {
  const WPrimeChain c = wprime_chain(p);
  const Scalar alpha_last = p.alphas.back();
  QuotientCoords q;
  for (std::size_t k = 0; k < c.aux.size(); ++k) {
    q.t_tilde.push_back(c.aux[k].t);
    q.delta_tilde.push_back(p.alphas[k] * alpha_last * c.aux[k].delta);
  }
  for (std::size_t j = 1; j < c.aux.size(); ++j) {
    q.s_tilde.push_back(c.s[j]);
    q.v_tilde.push_back(alpha_last * c.v[j]);
  }
  q.eta_first = p.alphas.front() * p.alphas.front();
  q.eta_last = alpha_last * alpha_last;
  return q;
}

Scalar relation_rho(const WPrimeChain& chain, int j) {
  if (j < 1 || static_cast<std::size_t>(j) >= chain.aux.size()) {
    throw Error(ErrorKind::InvalidArgument, "relation index out of range");
  }
  const auto& a = chain.aux[static_cast<std::size_t>(j)];
  const auto& a0 = chain.aux[0];
  const Scalar s = chain.s[static_cast<std::size_t>(j)];
  const Scalar v = chain.v[static_cast<std::size_t>(j)];
  return s * s + v * v - (a.t * a.t - a.delta * a.delta) * (a0.t * a0.t - a0.delta * a0.delta);
}

Scalar relation_rho(const XTPoint& p, int j) { return relation_rho(wprime_chain(p), j); }

Scalar eta_reconstruct(const QuotientCoords& q, int j) {
  if (j < 1 || static_cast<std::size_t>(j) >= q.t_tilde.size()) {
    throw Error(ErrorKind::InvalidArgument, "eta index out of range");
  }
  const auto jj = static_cast<std::size_t>(j);
  const Scalar t0 = q.t_tilde[0];
  const Scalar d0 = q.delta_tilde[0];
  const Scalar tj = q.t_tilde[jj];
  const Scalar dj = q.delta_tilde[jj];
  const Scalar sj = q.s_tilde[jj - 1];
  const Scalar vj = q.v_tilde[jj - 1];
  const Scalar e1 = q.eta_first;
  const Scalar en = q.eta_last;

  const Scalar base = t0 * t0 * e1 * en - d0 * d0;
  const Scalar denom = en * (tj * tj * base - e1 * (sj * sj * en + vj * vj));
  if (!(std::abs(denom) > 1e-12)) {
    throw Error(ErrorKind::LocalizationViolated, "eta denominator vanishes");
  }
  return dj * dj * base / denom;
}

Invariants2 p_invariants(const BlochState& b) {
  if (b.n() != 2) throw Error(ErrorKind::InvalidArgument, "p invariants are defined for two qubits");
  const Vec3 v = one_point(b, 0);
  const Vec3 w = one_point(b, 1);
  const Mat3 c = two_point(b, 0, 1);
  return Invariants2{{scalar_product(v, v), scalar_product(w, w), (v.transpose() * c * w).value(),
                      (c.transpose() * c).trace(), c.determinant()}};
}

}  // namespace xstates
