// Acceptance suite: one PASS/FAIL line per criterion, each with its runtime budget.

#include <Eigen/Dense>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "gsp/gsp.hpp"
#include "test_support.hpp"

#ifndef GSP_CLI_PATH
#error "GSP_CLI_PATH must point at the gsp executable"
#endif

using namespace gsp;
using gsp::testing::max_abs_diff;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

const SpectralDecomposition& demo_spectrum() {
  static const SpectralDecomposition d = laplacian_decomposition(gsp::testing::demo_geometry().graph);
  return d;
}

// Coefficients of a random polynomial in λ/λ_max, expressed in powers of λ.
std::vector<double> random_normalized_filter(SplitMix64& rng, std::size_t order, double lambda_max) {
  std::vector<double> h(order);
  for (std::size_t m = 0; m < order; ++m) h[m] = (2.0 * rng.uniform() - 1.0) / std::pow(lambda_max, double(m));
  return h;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome laplacian_correctness() {
  Outcome o;
  SplitMix64 rng{0xA11CE};
  double worst_row = 0.0, worst_l1 = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.next() % 63;
    const Graph g = gsp::testing::random_graph(rng, n, 0.05 + 0.5 * rng.uniform());
    const DenseMatrix l = laplacian(g);
    o.check(is_symmetric(l, 0.0), "L not symmetric (trial " + std::to_string(trial) + ")");
    for (std::size_t r = 0; r < n; ++r) {
      double s = 0.0;
      for (double v : l.row(r)) s += v;
      worst_row = std::max(worst_row, std::abs(s));
    }
    for (double v : multiply(l, std::vector<double>(n, 1.0))) worst_l1 = std::max(worst_l1, std::abs(v));
  }
  o.check(worst_row <= 1e-12, "row sum " + fmt(worst_row));
  o.check(worst_l1 <= 1e-12, "L·1 " + fmt(worst_l1));
  o.detail = o.detail.empty() ? "max |row sum| " + fmt(worst_row) + ", max |L1| " + fmt(worst_l1) : o.detail;
  return o;
}

Outcome eigensolver_oracle() {
  Outcome o;
  double worst = 0.0;
  for (std::size_t n : {4u, 8u, 16u, 64u}) {
    const auto d = laplacian_decomposition(gsp::testing::cycle_graph(n));
    std::vector<double> expected(n);
    for (std::size_t k = 0; k < n; ++k) expected[k] = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * double(k) / double(n));
    std::sort(expected.begin(), expected.end());
    worst = std::max(worst, max_abs_diff(d.eigenvalues, expected));
  }
  o.check(worst <= 1e-9, "eigenvalue error " + fmt(worst));
  if (o.pass) o.detail = "max eigenvalue error " + fmt(worst);
  return o;
}

Outcome gft_pair() {
  Outcome o;
  const auto& d = demo_spectrum();
  SplitMix64 rng{0x6F7};
  double worst_rt = 0.0, worst_parseval = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto x = gsp::testing::random_signal(rng, d.size(), 50.0);
    const auto X = gft(d, x);
    worst_rt = std::max(worst_rt, max_abs_diff(igft(d, X), x));
    worst_parseval = std::max(worst_parseval, std::abs(norm2(X.coefficients) - norm2(x)) / norm2(x));
  }
  o.check(worst_rt <= 1e-10, "round trip " + fmt(worst_rt));
  o.check(worst_parseval <= 1e-10, "Parseval " + fmt(worst_parseval));
  if (o.pass) o.detail = "round trip " + fmt(worst_rt) + ", Parseval rel " + fmt(worst_parseval);
  return o;
}

Outcome vertex_spectral_equivalence() {
  Outcome o;
  const Graph& g = gsp::testing::demo_geometry().graph;
  const auto& d = demo_spectrum();
  SplitMix64 rng{0xE010};
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t order = 1 + rng.next() % 6;
    const PolynomialFilter h(random_normalized_filter(rng, order, d.eigenvalues.back()));
    const auto x = gsp::testing::random_signal(rng, d.size(), 50.0);
    worst = std::max(worst, max_abs_diff(apply_polynomial(g, ShiftKind::laplacian, h, x),
                                         apply_spectral(d, spectral_response(h, d.eigenvalues), x)));
  }
  o.check(worst <= 1e-9, "max deviation " + fmt(worst));
  if (o.pass) o.detail = "max deviation " + fmt(worst);
  return o;
}

Outcome shift_invariance_linearity() {
  Outcome o;
  const Graph& g = gsp::testing::demo_geometry().graph;
  constexpr ShiftKind kinds[] = {ShiftKind::adjacency, ShiftKind::weight, ShiftKind::laplacian, ShiftKind::random_walk};
  SplitMix64 rng{0x5417};
  double worst_lin = 0.0, worst_shift = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const ShiftKind kind = kinds[trial % 4];
    // Scale by the largest degree, which bounds every shift's spectral radius up to a factor 2.
    double dmax = 0.0;
    for (Vertex v = 0; v < g.vertex_count(); ++v) dmax = std::max(dmax, g.degree(v));
    const double scale = kind == ShiftKind::random_walk ? 1.0 : kind == ShiftKind::adjacency ? 64.0 : 2.0 * dmax;
    const PolynomialFilter h(random_normalized_filter(rng, 1 + rng.next() % 6, scale));
    const auto x1 = gsp::testing::random_signal(rng, 64, 50.0);
    const auto x2 = gsp::testing::random_signal(rng, 64, 50.0);
    const double a = 2.0 * rng.uniform() - 1.0, b = 2.0 * rng.uniform() - 1.0;
    GraphSignal mix(64);
    for (std::size_t i = 0; i < 64; ++i) mix[i] = a * x1[i] + b * x2[i];
    const auto y1 = apply_polynomial(g, kind, h, x1);
    const auto y2 = apply_polynomial(g, kind, h, x2);
    GraphSignal combo(64);
    for (std::size_t i = 0; i < 64; ++i) combo[i] = a * y1[i] + b * y2[i];
    worst_lin = std::max(worst_lin, max_abs_diff(apply_polynomial(g, kind, h, mix), combo));
    worst_shift = std::max(worst_shift, max_abs_diff(apply_polynomial(g, kind, h, shift(g, kind, x1)), shift(g, kind, y1)));
  }
  o.check(worst_lin <= 1e-9, "linearity " + fmt(worst_lin));
  o.check(worst_shift <= 1e-9, "shift invariance " + fmt(worst_shift));
  if (o.pass) o.detail = "linearity " + fmt(worst_lin) + ", shift invariance " + fmt(worst_shift);
  return o;
}

Outcome ls_design() {
  Outcome o;
  const auto& d = demo_spectrum();
  const auto r = design_ls(d.eigenvalues, DesignSpec{ExponentialKernel{1.0}, 4});

  // Monte-Carlo optimality witness.
  SplitMix64 rng{0x1E57};
  int beaten = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> h = r.filter.coefficients();
    const double scale = std::pow(10.0, -double(trial % 8));
    for (std::size_t m = 0; m < h.size(); ++m) h[m] += scale * (2.0 * rng.uniform() - 1.0) / std::pow(10.0, double(m));
    const auto g_hat = spectral_response(PolynomialFilter(h), d.eigenvalues);
    double res = 0.0;
    for (std::size_t k = 0; k < g_hat.size(); ++k) res += (g_hat[k] - r.target_gains[k]) * (g_hat[k] - r.target_gains[k]);
    if (std::sqrt(res) < r.residual_l2) ++beaten;
  }
  o.check(beaten == 0, std::to_string(beaten) + " random vectors beat the LS fit");

  // Independent normal-equations oracle (Eigen LDLᵀ on VᵀV).
  Eigen::MatrixXd v(d.size(), 4);
  for (std::size_t k = 0; k < d.size(); ++k)
    for (int m = 0; m < 4; ++m) v(Eigen::Index(k), m) = std::pow(d.eigenvalues[k], m);
  const Eigen::VectorXd gvec = Eigen::Map<const Eigen::VectorXd>(r.target_gains.data(), Eigen::Index(d.size()));
  const Eigen::VectorXd oracle = (v.transpose() * v).ldlt().solve(v.transpose() * gvec);
  double coeff_err = 0.0;
  for (int m = 0; m < 4; ++m) coeff_err = std::max(coeff_err, std::abs(oracle(m) - r.filter[std::size_t(m)]));
  o.check(coeff_err <= 1e-9, "normal-equation oracle differs by " + fmt(coeff_err));

  // Full-order interpolation on small graphs with distinct eigenvalues.
  SplitMix64 grng{0x1A7E};
  double worst_interp = 0.0;
  int graphs = 0;
  while (graphs < 30) {
    const std::size_t n = 2 + grng.next() % 11;
    const auto dd = laplacian_decomposition(gsp::testing::random_connected_graph(grng, n, 0.4));
    bool distinct = true;
    for (std::size_t k = 1; k < n; ++k) distinct &= dd.eigenvalues[k] - dd.eigenvalues[k - 1] > 1e-3;
    if (!distinct) continue;
    ++graphs;
    const auto target = gsp::testing::random_signal(grng, n);
    worst_interp = std::max(worst_interp, max_abs_diff(design_ls(dd.eigenvalues, DesignSpec{target, n}).realized_gains, target));
  }
  o.check(worst_interp <= 1e-7, "interpolation error " + fmt(worst_interp));
  if (o.pass) {
    o.detail = "0/1000 random vectors beat the fit, oracle diff " + fmt(coeff_err) + ", interpolation " + fmt(worst_interp) +
               " over 30 graphs";
  }
  return o;
}

Outcome denoiser() {
  Outcome o;
  const auto run = run_experiment(ExperimentConfig{}, OptimalDenoiserMethod{4.0});
  const Graph& g = run.geometry.graph;
  const Alpha a(4.0);
  const auto& x = run.noisy;
  const auto y = denoise_vertex(g, x, a);
  const double equiv = max_abs_diff(y, denoise_spectral(run.decomposition, x, a));
  o.check(equiv <= 1e-9, "vertex/spectral " + fmt(equiv));
  const double grad = norm2(denoise_gradient(g, x, y, a)) / norm2(x);
  o.check(grad <= 1e-7, "gradient/‖x‖ " + fmt(grad));
  const double best = denoise_objective(g, x, y, a);
  o.check(best <= denoise_objective(g, x, x, a), "J(y) > J(x)");
  SplitMix64 rng{0xDE70};
  int beaten = 0;
  for (int trial = 0; trial < 500; ++trial) {
    auto p = y;
    const double scale = std::pow(10.0, -double(trial % 5));
    for (auto& v : p) v += scale * (2.0 * rng.uniform() - 1.0);
    if (denoise_objective(g, x, p, a) < best) ++beaten;
  }
  o.check(beaten == 0, std::to_string(beaten) + " perturbations lower J");
  if (o.pass) o.detail = "vertex/spectral " + fmt(equiv) + ", gradient/‖x‖ " + fmt(grad) + ", 0/500 perturbations lower J";
  return o;
}

Outcome demo_experiment() {
  Outcome o;
  const ExperimentConfig cfg;
  const auto avg = run_experiment(cfg, NormalizedAverageMethod{});
  const auto filt = run_experiment(cfg, DesignedFilterMethod{1.0, 4});
  const auto den = run_experiment(cfg, OptimalDenoiserMethod{4.0});
  o.check(avg.report.improvement_db > 0.0, "(a) normalized average " + fmt(avg.report.improvement_db) + " dB <= 0");
  o.check(filt.report.improvement_db > 0.0, "(b) exp filter " + fmt(filt.report.improvement_db) + " dB <= 0");
  o.check(den.report.improvement_db >= 6.0, "(c) denoiser " + fmt(den.report.improvement_db) + " dB < 6");
  const auto again = run_experiment(cfg, OptimalDenoiserMethod{4.0});
  o.check(again.output == den.output && again.report.improvement_db == den.report.improvement_db, "not deterministic");
  const std::string summary = "SNR0 " + fmt(avg.report.snr_input_db) + " dB; gains: average " + fmt(avg.report.improvement_db) +
                              ", filter " + fmt(filt.report.improvement_db) + ", denoiser " + fmt(den.report.improvement_db) + " dB";
  o.detail = o.pass ? summary : o.detail + " [" + summary + "]";
  return o;
}

Outcome clustering_oracle() {
  Outcome o;
  const Graph g = gsp::testing::two_triangles();
  const auto p = fiedler_bipartition(laplacian_decomposition(g));
  o.check(gsp::testing::same_partition(p.labels, gsp::testing::brute_force_ratio_cut(g)), "Fiedler split differs from brute force");
  if (o.pass) o.detail = "matches exhaustive minimum ratio cut over 2^6 assignments";
  return o;
}

Outcome cli_determinism() {
  Outcome o;
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "gsp_acceptance_cli";
  fs::remove_all(base);
  for (const char* run : {"a", "b"}) {
    const std::string cmd = std::string("\"") + GSP_CLI_PATH + "\" demo --seed 12648430 --alpha 4 --method denoise --out \"" +
                            (base / run).string() + "\" > /dev/null";
    o.check(std::system(cmd.c_str()) == 0, std::string("demo run ") + run + " failed");
  }
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  int files = 0;
  if (o.pass) {
    for (const auto& entry : fs::directory_iterator(base / "a")) {
      ++files;
      o.check(slurp(entry.path()) == slurp(base / "b" / entry.path().filename()), entry.path().filename().string() + " differs");
    }
    o.check(files > 0, "no output files");
  }
  fs::remove_all(base);
  if (o.pass) o.detail = std::to_string(files) + " output files byte-identical";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "Laplacian correctness", 5, laplacian_correctness},
      {2, "Eigensolver circulant oracle", 5, eigensolver_oracle},
      {3, "GFT round trip and Parseval", 5, gft_pair},
      {4, "Vertex/spectral filter equivalence", 10, vertex_spectral_equivalence},
      {5, "Shift invariance and linearity", 10, shift_invariance_linearity},
      {6, "Least-squares design optimality", 10, ls_design},
      {7, "Denoiser equivalence and optimality", 10, denoiser},
      {8, "Demo experiment improvements", 10, demo_experiment},
      {9, "Clustering brute-force oracle", 1, clustering_oracle},
      {10, "CLI demo determinism", 10, cli_determinism},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_s) outcome.check(false, "runtime " + fmt(seconds) + " s over " + fmt(c.budget_s) + " s budget");
    if (!outcome.pass) ++failures;
    std::printf("[%s] %2d. %-38s %7.3fs  %s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name, seconds, outcome.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
