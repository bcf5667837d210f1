#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <numbers>

#include "gsp/spectral.hpp"
#include "test_support.hpp"

using namespace gsp;
using gsp::testing::max_abs_diff;

namespace {

std::vector<double> cycle_eigenvalues(std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * k / n);
  std::sort(out.begin(), out.end());
  return out;
}

void expect_orthonormal(const DenseMatrix& u, double tol) {
  const auto utu = multiply(transpose(u), u);
  for (std::size_t i = 0; i < u.cols(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) EXPECT_NEAR(utu(i, j), i == j ? 1.0 : 0.0, tol);
}

void expect_eigenpairs(const DenseMatrix& s, const SpectralDecomposition& d) {
  for (std::size_t k = 0; k < d.size(); ++k) {
    const auto uk = d.eigenvector(k);
    auto su = multiply(s, uk);
    for (std::size_t i = 0; i < su.size(); ++i) su[i] -= d.eigenvalues[k] * uk[i];
    EXPECT_LE(norm2(su), 1e-9 * std::max(1.0, std::abs(d.eigenvalues[k])));
  }
}

}  // namespace

TEST(Eigendecompose, Identity) {
  const auto d = eigendecompose(DenseMatrix::identity(3));
  EXPECT_EQ(d.eigenvalues, (std::vector<double>{1, 1, 1}));
  EXPECT_EQ(d.eigenvectors, DenseMatrix::identity(3));
}

TEST(Eigendecompose, SingleEdgeLaplacian) {
  const auto d = laplacian_decomposition(build_graph(2, {{0, 1, 1.0}}));
  EXPECT_NEAR(d.eigenvalues[0], 0.0, 1e-15);
  EXPECT_NEAR(d.eigenvalues[1], 2.0, 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(d.eigenvectors(0, 0)), r, 1e-15);
  EXPECT_NEAR(d.eigenvectors(0, 0), d.eigenvectors(1, 0), 1e-15);
  EXPECT_NEAR(d.eigenvectors(0, 1), -d.eigenvectors(1, 1), 1e-15);
}

TEST(Eigendecompose, CycleMatchesCirculantFormula) {
  for (std::size_t n : {3u, 4u, 5u, 8u, 16u, 33u}) {
    const auto d = laplacian_decomposition(gsp::testing::cycle_graph(n));
    EXPECT_LE(max_abs_diff(d.eigenvalues, cycle_eigenvalues(n)), 1e-9) << "n=" << n;
  }
}

TEST(Eigendecompose, RejectsAsymmetric) {
  DenseMatrix m(2, 2, std::vector<double>{1, 2, 3, 1});
  try {
    eigendecompose(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotSymmetric);
  }
}

TEST(Eigendecompose, NoConvergenceWhenBudgetExhausted) {
  SplitMix64 rng{5};
  const Graph g = gsp::testing::random_connected_graph(rng, 10, 0.5);
  JacobiOptions opts;
  opts.max_sweeps = 1;
  try {
    eigendecompose(laplacian(g), SourceKind::laplacian, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoConvergence);
  }
}

TEST(Eigendecompose, InvariantsOnRandomGraphs) {
  SplitMix64 rng{21};
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 2 + rng.next() % 40;
    const Graph g = gsp::testing::random_connected_graph(rng, n, 0.2);
    const auto l = laplacian(g);
    const auto d = eigendecompose(l, SourceKind::laplacian);
    expect_orthonormal(d.eigenvectors, 1e-10);
    expect_eigenpairs(l, d);
    EXPECT_TRUE(std::is_sorted(d.eigenvalues.begin(), d.eigenvalues.end()));
    EXPECT_EQ(d.eigenvalues[0], 0.0);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(d.eigenvectors(i, 0), 1.0 / std::sqrt(double(n)), 1e-10);

    // U diag(Λ) Uᵀ = L
    DenseMatrix scaled = d.eigenvectors;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) scaled(r, c) *= d.eigenvalues[c];
    EXPECT_LE(max_abs_diff(multiply(scaled, transpose(d.eigenvectors)).entries(), l.entries()), 1e-9);
  }
}

TEST(Eigendecompose, AgreesWithEigenOracle) {
  SplitMix64 rng{1234};
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 3 + rng.next() % 30;
    DenseMatrix s(n, n);
    Eigen::MatrixXd e(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = r; c < n; ++c) {
        const double v = 2.0 * rng.uniform() - 1.0;
        s(r, c) = s(c, r) = v;
        e(r, c) = e(c, r) = v;
      }
    const auto d = eigendecompose(s);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> oracle(e);
    for (std::size_t k = 0; k < n; ++k) EXPECT_NEAR(d.eigenvalues[k], oracle.eigenvalues()(k), 1e-10);
    expect_eigenpairs(s, d);
  }
}

TEST(Eigendecompose, SignConventionAndDeterminism) {
  SplitMix64 rng{77};
  const Graph g = gsp::testing::random_connected_graph(rng, 25, 0.2);
  const auto a = laplacian_decomposition(g);
  const auto b = laplacian_decomposition(g);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.eigenvectors, b.eigenvectors);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const auto u = a.eigenvector(k);
    const auto it = std::max_element(u.begin(), u.end(), [](double x, double y) { return std::abs(x) < std::abs(y); });
    EXPECT_GT(*it, 0.0);
  }
}

TEST(Eigendecompose, DegenerateSpectrumProjectorsMatch) {
  // Cycle eigenvalues come in pairs; compare eigenspace projectors, not vectors.
  const std::size_t n = 8;
  const auto d = laplacian_decomposition(gsp::testing::cycle_graph(n));
  for (std::size_t k = 1; k + 1 < n; k += 2) {
    ASSERT_NEAR(d.eigenvalues[k], d.eigenvalues[k + 1], 1e-9);
    const double theta = 2.0 * std::numbers::pi * double((k + 1) / 2) / n;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double proj = d.eigenvectors(i, k) * d.eigenvectors(j, k) + d.eigenvectors(i, k + 1) * d.eigenvectors(j, k + 1);
        const double expected = 2.0 / n * std::cos(theta * (double(i) - double(j)));
        EXPECT_NEAR(proj, expected, 1e-10);
      }
  }
}

class GftTest : public ::testing::Test {
 protected:
  const Graph& g = gsp::testing::demo_geometry().graph;
  SpectralDecomposition d = laplacian_decomposition(g);
};

TEST_F(GftTest, EigenvectorMapsToUnitVector) {
  const auto X = gft(d, d.eigenvector(3));
  for (std::size_t k = 0; k < d.size(); ++k) EXPECT_NEAR(X.coefficients[k], k == 3 ? 1.0 : 0.0, 1e-10);
}

TEST_F(GftTest, ZeroAndConstant) {
  const auto zero = gft(d, GraphSignal(d.size(), 0.0));
  for (double v : zero.coefficients) EXPECT_EQ(v, 0.0);
  const double c = 2.5;
  const auto X = gft(d, GraphSignal(d.size(), c));
  EXPECT_NEAR(std::abs(X.coefficients[0]), c * std::sqrt(double(d.size())), 1e-10);
  for (std::size_t k = 1; k < d.size(); ++k) EXPECT_NEAR(X.coefficients[k], 0.0, 1e-10);
}

TEST_F(GftTest, InverseOfUnitVectorIsEigenvector) {
  Spectrum e5{std::vector<double>(d.size(), 0.0)};
  e5.coefficients[5] = 1.0;
  EXPECT_LE(max_abs_diff(igft(d, e5), d.eigenvector(5)), 1e-15);
  const auto zero = igft(d, Spectrum{std::vector<double>(d.size(), 0.0)});
  for (double v : zero) EXPECT_EQ(v, 0.0);
}

TEST_F(GftTest, RoundTripParsevalLinearity) {
  SplitMix64 rng{2024};
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = gsp::testing::random_signal(rng, d.size(), 10.0);
    const auto y = gsp::testing::random_signal(rng, d.size(), 10.0);
    const auto X = gft(d, x);
    EXPECT_LE(max_abs_diff(igft(d, X), x), 1e-10);
    EXPECT_NEAR(norm2(X.coefficients), norm2(x), 1e-10 * norm2(x));

    const double a = 1.7, b = -0.3;
    GraphSignal combo(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) combo[i] = a * x[i] + b * y[i];
    const auto Y = gft(d, y);
    const auto C = gft(d, combo);
    for (std::size_t k = 0; k < d.size(); ++k) EXPECT_NEAR(C.coefficients[k], a * X.coefficients[k] + b * Y.coefficients[k], 1e-10);
  }
}

TEST_F(GftTest, LengthMismatch) {
  try {
    gft(d, GraphSignal(3, 0.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
  EXPECT_THROW(igft(d, Spectrum{{1.0}}), Error);
}
