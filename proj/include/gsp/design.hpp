#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gsp/error.hpp"
#include "gsp/graph.hpp"
#include "gsp/matrix.hpp"
#include "gsp/spectral.hpp"
#include "gsp/systems.hpp"

namespace gsp {

/// Desired gain G(λ) = exp(-decay * λ).
struct ExponentialKernel {
  double decay = 1.0;
};

/// Target transfer function, either as a named kernel or explicit gains aligned
/// with the ascending eigenvalues, plus the number of filter coefficients M.
struct DesignSpec {
  std::variant<ExponentialKernel, std::vector<double>> target;
  std::size_t order = 4;
};

struct DesignResult {
  PolynomialFilter filter;
  std::vector<double> target_gains;
  std::vector<double> realized_gains;
  double residual_l2 = 0.0;
};

inline std::vector<double> target_gains(std::span<const double> eigenvalues, const DesignSpec& spec) {
  if (const auto* kernel = std::get_if<ExponentialKernel>(&spec.target)) {
    std::vector<double> g(eigenvalues.size());
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = std::exp(-kernel->decay * eigenvalues[k]);
    return g;
  }
  const auto& explicit_gains = std::get<std::vector<double>>(spec.target);
  detail::require_same_length(eigenvalues.size(), explicit_gains.size(), "design target gains");
  return explicit_gains;
}

/// N x M Vandermonde matrix V[k][m] = λ_k^m.
inline DenseMatrix vandermonde(std::span<const double> eigenvalues, std::size_t order) {
  DenseMatrix v(eigenvalues.size(), order);
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    double p = 1.0;
    for (std::size_t m = 0; m < order; ++m) {
      v(k, m) = p;
      p *= eigenvalues[k];
    }
  }
  return v;
}

namespace detail {

// Householder QR of a column-equilibrated matrix, kept for repeated solves.
class HouseholderQr {
 public:
  explicit HouseholderQr(DenseMatrix a) : qr_(std::move(a)), scale_(qr_.cols()), diag_(qr_.cols()) {
    const std::size_t rows = qr_.rows();
    const std::size_t cols = qr_.cols();
    for (std::size_t c = 0; c < cols; ++c) {
      double s = 0.0;
      for (std::size_t r = 0; r < rows; ++r) s += qr_(r, c) * qr_(r, c);
      s = std::sqrt(s);
      if (s == 0.0) {
        throw Error(ErrorCode::IllConditioned, "design column " + std::to_string(c) + " is identically zero");
      }
      scale_[c] = s;
      for (std::size_t r = 0; r < rows; ++r) qr_(r, c) /= s;
    }

    for (std::size_t c = 0; c < cols; ++c) {
      double norm = 0.0;
      for (std::size_t r = c; r < rows; ++r) norm += qr_(r, c) * qr_(r, c);
      norm = std::sqrt(norm);
      const double alpha = qr_(c, c) > 0.0 ? -norm : norm;
      diag_[c] = alpha;
      // Reflector v = x - alpha e_1, stored in place below the diagonal.
      qr_(c, c) -= alpha;
      double vnorm2 = 0.0;
      for (std::size_t r = c; r < rows; ++r) vnorm2 += qr_(r, c) * qr_(r, c);
      vnorm2_.push_back(vnorm2);
      if (vnorm2 == 0.0) continue;
      for (std::size_t j = c + 1; j < cols; ++j) {
        double dotp = 0.0;
        for (std::size_t r = c; r < rows; ++r) dotp += qr_(r, c) * qr_(r, j);
        const double f = 2.0 * dotp / vnorm2;
        for (std::size_t r = c; r < rows; ++r) qr_(r, j) -= f * qr_(r, c);
      }
    }

    double largest = 0.0;
    for (double d : diag_) largest = std::max(largest, std::abs(d));
    for (std::size_t c = 0; c < cols; ++c) {
      if (std::abs(diag_[c]) < 1e-13 * largest) {
        throw Error(ErrorCode::IllConditioned,
                    "Vandermonde system is rank deficient at column " + std::to_string(c) +
                        " (fewer distinct eigenvalues than coefficients?)");
      }
    }
  }

  /// argmin_h ||A h - b||
  std::vector<double> solve(std::vector<double> b) const {
    const std::size_t rows = qr_.rows();
    const std::size_t cols = qr_.cols();
    for (std::size_t c = 0; c < cols; ++c) {
      if (vnorm2_[c] == 0.0) continue;
      double dotp = 0.0;
      for (std::size_t r = c; r < rows; ++r) dotp += qr_(r, c) * b[r];
      const double f = 2.0 * dotp / vnorm2_[c];
      for (std::size_t r = c; r < rows; ++r) b[r] -= f * qr_(r, c);
    }
    std::vector<double> h(cols);
    for (std::size_t c = cols; c-- > 0;) {
      double s = b[c];
      for (std::size_t j = c + 1; j < cols; ++j) s -= qr_(c, j) * h[j];
      h[c] = s / diag_[c];
    }
    for (std::size_t c = 0; c < cols; ++c) h[c] /= scale_[c];
    return h;
  }

 private:
  DenseMatrix qr_;
  std::vector<double> scale_;
  std::vector<double> diag_;
  std::vector<double> vnorm2_;
};

// Vandermonde least squares with two steps of iterative refinement; the
// residual g - V h is accumulated in extended precision.
inline std::vector<double> vandermonde_least_squares(std::span<const double> eigenvalues, std::size_t order,
                                                     std::span<const double> g) {
  const HouseholderQr qr(vandermonde(eigenvalues, order));
  std::vector<double> h = qr.solve(std::vector<double>(g.begin(), g.end()));
  std::vector<double> residual(g.size());
  for (int step = 0; step < 2; ++step) {
    for (std::size_t k = 0; k < g.size(); ++k) {
      long double acc = 0.0L;
      for (std::size_t m = order; m-- > 0;) acc = acc * eigenvalues[k] + h[m];
      residual[k] = static_cast<double>(static_cast<long double>(g[k]) - acc);
    }
    const std::vector<double> correction = qr.solve(residual);
    for (std::size_t m = 0; m < order; ++m) h[m] += correction[m];
  }
  return h;
}

}  // namespace detail

/// Least-squares fit of polynomial coefficients so that H(λ_k) ≈ G(λ_k).
/// Eigenvalues are used unscaled; repeated eigenvalues keep their duplicated rows.
inline DesignResult design_ls(std::span<const double> eigenvalues, const DesignSpec& spec) {
  if (spec.order == 0) throw Error(ErrorCode::InvalidArgument, "filter order must be at least 1");
  if (spec.order > eigenvalues.size()) {
    throw Error(ErrorCode::OrderExceedsSize, "order " + std::to_string(spec.order) +
                                                 " exceeds the number of eigenvalues " +
                                                 std::to_string(eigenvalues.size()));
  }
  for (double l : eigenvalues)
    if (!std::isfinite(l)) throw Error(ErrorCode::InvalidArgument, "eigenvalue is not finite");

  std::vector<double> g = target_gains(eigenvalues, spec);
  for (double v : g)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "target gain is not finite");

  PolynomialFilter filter(detail::vandermonde_least_squares(eigenvalues, spec.order, g));
  std::vector<double> realized = spectral_response(filter, eigenvalues);
  double r2 = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) r2 += (realized[k] - g[k]) * (realized[k] - g[k]);
  return DesignResult{std::move(filter), std::move(g), std::move(realized), std::sqrt(r2)};
}

/// Non-negative smoothing weight of the denoising objective.
class Alpha {
 public:
  explicit Alpha(double value) : value_(value) {
    if (!std::isfinite(value)) throw Error(ErrorCode::InvalidArgument, "alpha is not finite");
    if (value < 0.0) throw Error(ErrorCode::NegativeAlpha, "alpha must be >= 0, got " + std::to_string(value));
  }
  double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Solves (I + 2αL) y = x with a Cholesky factorization.
inline GraphSignal denoise_vertex(const Graph& g, std::span<const double> x, Alpha alpha) {
  detail::require_same_length(g.vertex_count(), x.size(), "denoise_vertex");
  const double scale = 2.0 * alpha.value();
  const std::size_t n = g.vertex_count();
  DenseMatrix system = DenseMatrix::identity(n);
  for (Vertex v = 0; v < n; ++v) {
    for (const auto& nb : g.neighbors(v)) system(v, nb.vertex) = -scale * nb.weight;
    system(v, v) += scale * g.degree(v);
  }
  return cholesky_solve(system, x);
}

/// H(λ) = 1 / (1 + 2αλ)
inline std::vector<double> denoiser_response(std::span<const double> eigenvalues, Alpha alpha) {
  std::vector<double> h(eigenvalues.size());
  for (std::size_t k = 0; k < h.size(); ++k) h[k] = 1.0 / (1.0 + 2.0 * alpha.value() * eigenvalues[k]);
  return h;
}

inline GraphSignal denoise_spectral(const SpectralDecomposition& d, std::span<const double> x, Alpha alpha) {
  if (d.source_kind != SourceKind::laplacian) {
    throw Error(ErrorCode::InvalidArgument, "denoise_spectral requires a Laplacian decomposition");
  }
  detail::require_same_length(d.size(), x.size(), "denoise_spectral");
  return apply_spectral(d, denoiser_response(d.eigenvalues, alpha), x);
}

/// xᵀLx, evaluated as the edge sum of W_uv (x(u) - x(v))².
inline double smoothness(const Graph& g, std::span<const double> x) {
  detail::require_same_length(g.vertex_count(), x.size(), "smoothness");
  double s = 0.0;
  for (const auto& e : g.edges()) {
    const double diff = x[e.u] - x[e.v];
    s += e.weight * diff * diff;
  }
  return s;
}

/// J = ½‖y − x‖² + α yᵀLy
inline double denoise_objective(const Graph& g, std::span<const double> x, std::span<const double> y,
                                Alpha alpha) {
  detail::require_same_length(g.vertex_count(), x.size(), "denoise_objective observed");
  detail::require_same_length(g.vertex_count(), y.size(), "denoise_objective estimate");
  double fit = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) fit += (y[i] - x[i]) * (y[i] - x[i]);
  return 0.5 * fit + alpha.value() * smoothness(g, y);
}

/// ∂J/∂y = y − x + 2αLy
inline std::vector<double> denoise_gradient(const Graph& g, std::span<const double> x,
                                            std::span<const double> y, Alpha alpha) {
  detail::require_same_length(g.vertex_count(), x.size(), "denoise_gradient observed");
  detail::require_same_length(g.vertex_count(), y.size(), "denoise_gradient estimate");
  std::vector<double> ly = multiply(laplacian(g), y);
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) grad[i] = y[i] - x[i] + 2.0 * alpha.value() * ly[i];
  return grad;
}

}  // namespace gsp
