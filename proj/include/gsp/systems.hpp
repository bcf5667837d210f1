#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gsp/error.hpp"
#include "gsp/graph.hpp"
#include "gsp/matrix.hpp"
#include "gsp/spectral.hpp"

namespace gsp {

enum class ShiftKind { adjacency, weight, laplacian, random_walk };

constexpr std::string_view to_string(ShiftKind kind) {
  switch (kind) {
    case ShiftKind::adjacency: return "adjacency";
    case ShiftKind::weight: return "weight";
    case ShiftKind::laplacian: return "laplacian";
    case ShiftKind::random_walk: return "random_walk";
  }
  return "unknown";
}

inline std::optional<ShiftKind> parse_shift_kind(std::string_view name) {
  for (auto kind : {ShiftKind::adjacency, ShiftKind::weight, ShiftKind::laplacian,
                    ShiftKind::random_walk}) {
    if (name == to_string(kind)) return kind;
  }
  if (name == "random-walk") return ShiftKind::random_walk;
  return std::nullopt;
}

inline DenseMatrix shift_operator(const Graph& g, ShiftKind kind) {
  switch (kind) {
    case ShiftKind::adjacency: return adjacency(g);
    case ShiftKind::weight: return weight_matrix(g);
    case ShiftKind::laplacian: return laplacian(g);
    case ShiftKind::random_walk: return random_walk_matrix(g);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown shift kind");
}

/// Eigendecomposition of a symmetric shift. The random-walk operator is not
/// symmetric and has no orthonormal eigenbasis, so it is rejected here.
inline SpectralDecomposition shift_decomposition(const Graph& g, ShiftKind kind) {
  switch (kind) {
    case ShiftKind::laplacian: return eigendecompose(laplacian(g), SourceKind::laplacian);
    case ShiftKind::adjacency: return eigendecompose(adjacency(g), SourceKind::adjacency);
    case ShiftKind::weight: return eigendecompose(weight_matrix(g), SourceKind::custom_symmetric);
    case ShiftKind::random_walk: break;
  }
  throw Error(ErrorCode::InvalidArgument,
              "the random-walk shift is not symmetric; spectral paths need a symmetric shift");
}

/// Coefficients h_0 ... h_{M-1} of H(S) = sum_m h_m S^m.
class PolynomialFilter {
 public:
  explicit PolynomialFilter(std::vector<double> coefficients) : h_(std::move(coefficients)) {
    if (h_.empty()) throw Error(ErrorCode::InvalidArgument, "polynomial filter needs at least one coefficient");
    for (double v : h_)
      if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "filter coefficient is not finite");
  }

  std::size_t order() const noexcept { return h_.size(); }
  const std::vector<double>& coefficients() const noexcept { return h_; }
  double operator[](std::size_t m) const { return h_.at(m); }

 private:
  std::vector<double> h_;
};

inline GraphSignal shift(const Graph& g, ShiftKind kind, std::span<const double> x) {
  detail::require_same_length(g.vertex_count(), x.size(), "shift");
  return multiply(shift_operator(g, kind), x);
}

/// y = x + A x: each vertex accumulates its own value and its neighbors' values.
inline GraphSignal cumulative_sum(const Graph& g, std::span<const double> x) {
  detail::require_same_length(g.vertex_count(), x.size(), "cumulative_sum");
  GraphSignal y(x.begin(), x.end());
  for (Vertex n = 0; n < g.vertex_count(); ++n)
    for (const auto& nb : g.neighbors(n)) y[n] += x[nb.vertex];
  return y;
}

/// y = (x + D⁻¹W x) / 2. Constants are reproduced because the rows of D⁻¹W sum to one.
inline GraphSignal normalized_average(const Graph& g, std::span<const double> x) {
  detail::require_same_length(g.vertex_count(), x.size(), "normalized_average");
  GraphSignal y(x.size());
  for (Vertex n = 0; n < g.vertex_count(); ++n) {
    const double d = g.degree(n);
    if (!(d > 0.0)) {
      throw Error(ErrorCode::IsolatedVertex, "vertex " + std::to_string(n) + " has no neighbors");
    }
    double acc = 0.0;
    for (const auto& nb : g.neighbors(n)) acc += nb.weight * x[nb.vertex];
    y[n] = 0.5 * (x[n] + acc / d);
  }
  return y;
}

/// y = sum_m h_m S^m x, using repeated matrix-vector products.
inline GraphSignal apply_polynomial(const Graph& g, ShiftKind kind, const PolynomialFilter& h,
                                    std::span<const double> x) {
  detail::require_same_length(g.vertex_count(), x.size(), "apply_polynomial");
  const DenseMatrix s = h.order() > 1 ? shift_operator(g, kind) : DenseMatrix{};
  GraphSignal power(x.begin(), x.end());
  GraphSignal y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = h[0] * power[i];
  for (std::size_t m = 1; m < h.order(); ++m) {
    power = multiply(s, power);
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += h[m] * power[i];
  }
  return y;
}

/// H(λ_k) = sum_m h_m λ_k^m by Horner's rule.
inline std::vector<double> spectral_response(const PolynomialFilter& h,
                                             std::span<const double> eigenvalues) {
  std::vector<double> out(eigenvalues.size());
  const auto& c = h.coefficients();
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    double acc = c.back();
    for (std::size_t m = c.size() - 1; m-- > 0;) acc = acc * eigenvalues[k] + c[m];
    out[k] = acc;
  }
  return out;
}

/// y = U diag(response) Uᵀ x
inline GraphSignal apply_spectral(const SpectralDecomposition& d, std::span<const double> response,
                                  std::span<const double> x) {
  detail::require_same_length(d.size(), response.size(), "apply_spectral response");
  detail::require_same_length(d.size(), x.size(), "apply_spectral signal");
  Spectrum spectrum = gft(d, x);
  for (std::size_t k = 0; k < spectrum.coefficients.size(); ++k) spectrum.coefficients[k] *= response[k];
  return igft(d, spectrum);
}

}  // namespace gsp
