#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "qip/matrix.hpp"

namespace qip {

struct EigenSystem {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column k is the eigenvector of values[k]
};

namespace detail {

// Re-orthonormalize eigenvector columns inside each (nearly) degenerate
// cluster by Gram-Schmidt in index order, so fixtures are stable across
// rotation orderings.
inline void orthonormalize_clusters(EigenSystem& es, double scale) {
  const std::size_t n = es.values.size();
  const double gap = 1e3 * tol::spectral * std::max(scale, 1.0);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && std::abs(es.values[end] - es.values[end - 1]) <= gap) ++end;
    for (std::size_t k = start; k < end; ++k) {
      for (std::size_t j = start; j < k; ++j) {
        cplx ov = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          ov += std::conj(es.vectors(i, j)) * es.vectors(i, k);
        for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) -= ov * es.vectors(i, j);
      }
      double nrm = 0.0;
      for (std::size_t i = 0; i < n; ++i) nrm += std::norm(es.vectors(i, k));
      nrm = std::sqrt(nrm);
      for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) /= nrm;
    }
    start = end;
  }
}

}  // namespace detail

// Cyclic Jacobi diagonalization of a Hermitian matrix. Deterministic sweep
// order, no external dependency; ample for the dimensions this toolkit uses
// (a few hundred at most).
inline EigenSystem eigendecompose_hermitian(const Matrix& h) {
  if (!h.is_hermitian(tol::spectral * std::max(1.0, h.max_abs())))
    throw std::invalid_argument("eigendecompose_hermitian: matrix is not Hermitian");

  const std::size_t n = h.rows();
  Matrix a = h;
  Matrix v = Matrix::identity(n);
  const double scale = std::max(a.max_abs(), 1.0);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= 1e-15 * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-18 * scale) continue;
        // Phase factor making the pivot real, then a real Jacobi rotation.
        const cplx phase = apq / r;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = 0.5 * std::atan2(-2.0 * r, app - aqq);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        const cplx sp = s * phase;  // column-q entry at row p of the rotation

        // A <- G^dagger A G with G = I except
        //   G(p,p)=c, G(p,q)=sp, G(q,p)=-conj(sp), G(q,q)=c.
        for (std::size_t i = 0; i < n; ++i) {
          const cplx aip = a(i, p);
          const cplx aiq = a(i, q);
          a(i, p) = c * aip - std::conj(sp) * aiq;
          a(i, q) = sp * aip + c * aiq;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const cplx apj = a(p, j);
          const cplx aqj = a(q, j);
          a(p, j) = c * apj - sp * aqj;
          a(q, j) = std::conj(sp) * apj + c * aqj;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const cplx vip = v(i, p);
          const cplx viq = v(i, q);
          v(i, p) = c * vip - std::conj(sp) * viq;
          v(i, q) = sp * vip + c * viq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] < diag[y]; });

  EigenSystem es;
  es.values.resize(n);
  es.vectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    es.values[k] = diag[order[k]];
    for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
  }
  detail::orthonormalize_clusters(es, scale);
  return es;
}

}  // namespace qip
