#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <vector>

#include "gsp/error.hpp"
#include "gsp/graph.hpp"
#include "gsp/matrix.hpp"

namespace gsp {

using GraphSignal = std::vector<double>;

enum class SourceKind { laplacian, adjacency, custom_symmetric };

/// Ascending eigenvalues and an orthonormal eigenvector basis (column k is u_k).
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  DenseMatrix eigenvectors;
  SourceKind source_kind = SourceKind::custom_symmetric;

  std::size_t size() const noexcept { return eigenvalues.size(); }
  std::vector<double> eigenvector(std::size_t k) const { return eigenvectors.column(k); }
};

/// GFT coefficients X(k), aligned with the eigenvalues of the decomposition they came from.
struct Spectrum {
  std::vector<double> coefficients;
};

struct JacobiOptions {
  double relative_tolerance = 1e-12;
  int max_sweeps = 100;
  double symmetry_tolerance = 1e-12;
  double laplacian_clamp = 1e-9;
};

namespace detail {

inline double off_diagonal_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) s += a(r, c) * a(r, c);
  return std::sqrt(s);
}

inline double frobenius_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (double v : a.entries()) s += v * v;
  return std::sqrt(s);
}

// Rotates rows/columns p and q of `a` so that a(p,q) becomes zero, accumulating into `v`.
inline void jacobi_rotate(DenseMatrix& a, DenseMatrix& v, std::size_t p, std::size_t q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const std::size_t n = a.rows();

  for (std::size_t r = 0; r < n; ++r) {
    if (r == p || r == q) continue;
    const double arp = a(r, p);
    const double arq = a(r, q);
    const double new_rp = c * arp - s * arq;
    const double new_rq = s * arp + c * arq;
    a(r, p) = new_rp;
    a(p, r) = new_rp;
    a(r, q) = new_rq;
    a(q, r) = new_rq;
  }
  a(p, p) -= t * apq;
  a(q, q) += t * apq;
  a(p, q) = 0.0;
  a(q, p) = 0.0;

  for (std::size_t r = 0; r < n; ++r) {
    const double vrp = v(r, p);
    const double vrq = v(r, q);
    v(r, p) = c * vrp - s * vrq;
    v(r, q) = s * vrp + c * vrq;
  }
}

// Flip so the largest-magnitude entry is positive; near-equal magnitudes go to the lowest index.
inline void canonicalize_sign(std::span<double> vec) {
  double largest = 0.0;
  for (double x : vec) largest = std::max(largest, std::abs(x));
  if (largest == 0.0) return;
  for (double x : vec) {
    if (std::abs(x) >= largest * (1.0 - 1e-12)) {
      if (x < 0.0)
        for (double& y : vec) y = -y;
      return;
    }
  }
}

}  // namespace detail

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Eigenvalues are returned ascending (stable with respect to the final
/// diagonal order), each eigenvector's largest-magnitude entry is positive,
/// and Laplacian eigenvalues within 1e-9 of zero are clamped to exactly zero.
inline SpectralDecomposition eigendecompose(const DenseMatrix& s,
                                            SourceKind kind = SourceKind::custom_symmetric,
                                            const JacobiOptions& options = {}) {
  if (!s.is_square()) throw Error(ErrorCode::NotSymmetric, "matrix is not square");
  if (!is_symmetric(s, options.symmetry_tolerance)) {
    throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric within tolerance");
  }
  const std::size_t n = s.rows();
  DenseMatrix a = s;
  // Work on the exactly symmetrized copy so row/column updates stay consistent.
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r + 1; c < n; ++c) {
      const double avg = 0.5 * (a(r, c) + a(c, r));
      a(r, c) = avg;
      a(c, r) = avg;
    }
  DenseMatrix v = DenseMatrix::identity(n);

  const double threshold = options.relative_tolerance * detail::frobenius_norm(a);
  bool converged = detail::off_diagonal_norm(a) <= threshold;
  for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
    converged = detail::off_diagonal_norm(a) <= threshold;
  }
  if (!converged) {
    throw Error(ErrorCode::NoConvergence,
                "Jacobi sweep budget of " + std::to_string(options.max_sweeps) + " exhausted");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  SpectralDecomposition out;
  out.source_kind = kind;
  out.eigenvalues.resize(n);
  out.eigenvectors = DenseMatrix(n, n);
  std::vector<double> column(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    double lambda = a(src, src);
    if (kind == SourceKind::laplacian && std::abs(lambda) < options.laplacian_clamp) {
      lambda = 0.0;
    }
    out.eigenvalues[k] = lambda;
    for (std::size_t r = 0; r < n; ++r) column[r] = v(r, src);
    detail::canonicalize_sign(column);
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = column[r];
  }
  return out;
}

inline SpectralDecomposition laplacian_decomposition(const Graph& g) {
  return eigendecompose(laplacian(g), SourceKind::laplacian);
}

/// X = Uᵀ x
inline Spectrum gft(const SpectralDecomposition& d, std::span<const double> x) {
  detail::require_same_length(d.size(), x.size(), "gft");
  return Spectrum{multiply_transposed(d.eigenvectors, x)};
}

/// x = U X
inline GraphSignal igft(const SpectralDecomposition& d, const Spectrum& spectrum) {
  detail::require_same_length(d.size(), spectrum.coefficients.size(), "igft");
  return multiply(d.eigenvectors, spectrum.coefficients);
}

}  // namespace gsp
