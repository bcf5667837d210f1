#pragma once

// Command implementations for the gsp tool. Kept in a header so tests can
// drive run_cli() in-process.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gsp/gsp.hpp"

namespace gsp::cli {

namespace fs = std::filesystem;

enum ExitCode : int { kSuccess = 0, kDomainError = 1, kUsageError = 2 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline ShiftKind shift_kind_or_throw(const std::string& name) {
  if (auto kind = parse_shift_kind(name)) return *kind;
  throw UsageError("unknown --kind '" + name + "' (adjacency|weight|laplacian|random_walk)");
}

/// "exp:<decay>" or "const:<gain>"
inline DesignSpec parse_kernel(const std::string& text, std::size_t order, std::size_t n) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("--kernel expects exp:<decay> or const:<gain>");
  const std::string name = text.substr(0, colon);
  double value = 0.0;
  try {
    value = io::detail::parse_real(text.substr(colon + 1), 0);
  } catch (const Error&) {
    throw UsageError("--kernel parameter '" + text.substr(colon + 1) + "' is not a number");
  }
  if (name == "exp") return DesignSpec{ExponentialKernel{value}, order};
  if (name == "const") return DesignSpec{std::vector<double>(n, value), order};
  throw UsageError("unknown kernel '" + name + "'");
}

inline std::vector<double> parse_coefficient_list(const std::string& text) {
  std::vector<double> h;
  for (auto field : io::detail::split(text, ',')) {
    try {
      h.push_back(io::detail::parse_real(field, 0));
    } catch (const Error&) {
      throw UsageError("--coeffs entry '" + std::string(field) + "' is not a number");
    }
  }
  return h;
}

inline DenoisingMethod parse_method(const std::string& name, double alpha, std::size_t order,
                                    const std::string& kernel) {
  if (name == "denoise" || name == "optimal_denoiser") return OptimalDenoiserMethod{alpha};
  if (name == "average" || name == "normalized_average") return NormalizedAverageMethod{};
  if (name == "filter" || name == "designed_filter") {
    const DesignSpec spec = parse_kernel(kernel, order, 0);
    const auto* exp_kernel = std::get_if<ExponentialKernel>(&spec.target);
    if (!exp_kernel) throw UsageError("demo filter method supports only exp:<decay> kernels");
    return DesignedFilterMethod{exp_kernel->decay, order};
  }
  throw UsageError("unknown --method '" + name + "' (denoise|average|filter)");
}

// Writes to the file when a path is given, otherwise to `out`.
template <typename WriteFn>
void emit(const std::string& path, std::ostream& out, WriteFn&& write) {
  if (path.empty() || path == "-") {
    write(out);
  } else {
    io::write_atomic(path, write);
  }
}

inline Graph load_graph(const std::string& path) { return io::read_file(path, io::read_edge_list); }
inline GraphSignal load_signal(const std::string& path) { return io::read_file(path, io::read_signal_csv); }

inline void report_info(std::ostream& out, const Graph& g) {
  double dmin = g.degree(0), dmax = g.degree(0), total = 0.0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const double d = g.degree(v);
    dmin = std::min(dmin, d);
    dmax = std::max(dmax, d);
    total += d;
  }
  out << "n=" << g.vertex_count() << " edges=" << g.edges().size()
      << " weighted=" << (g.is_unweighted() ? "false" : "true")
      << " connected=" << (is_connected(g) ? "true" : "false") << '\n'
      << "degree_min=" << io::format_real(dmin) << " degree_max=" << io::format_real(dmax)
      << " degree_mean=" << io::format_real(total / static_cast<double>(g.vertex_count())) << '\n';
}

struct DemoOptions {
  std::uint64_t seed = ExperimentConfig{}.seed;
  double alpha = 4.0;
  std::string method = "denoise";
  std::size_t order = 4;
  std::string kernel = "exp:1";
  std::size_t n = 64;
  double sigma = 4.0;
  std::string out_dir = "demo_out";
};

inline ExperimentRun run_demo(const DemoOptions& opt, std::ostream& out) {
  ExperimentConfig cfg;
  cfg.seed = opt.seed;
  cfg.n = opt.n;
  cfg.noise_sigma = opt.sigma;
  cfg.signal_terms.erase(std::remove_if(cfg.signal_terms.begin(), cfg.signal_terms.end(),
                                        [&](const SignalTerm& t) { return t.eigen_index >= cfg.n; }),
                         cfg.signal_terms.end());
  const DenoisingMethod method = parse_method(opt.method, opt.alpha, opt.order, opt.kernel);
  ExperimentRun run = run_experiment(cfg, method);

  const fs::path dir(opt.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create '" + dir.string() + "': " + ec.message());

  const auto& d = run.decomposition;
  io::write_atomic(dir / "graph.txt", [&](std::ostream& s) { io::write_edge_list(s, run.geometry.graph); });
  io::write_atomic(dir / "coordinates.csv",
                   [&](std::ostream& s) { io::write_coordinates_csv(s, run.geometry.coordinates); });
  io::write_atomic(dir / "clean.csv", [&](std::ostream& s) { io::write_signal_csv(s, run.clean); });
  io::write_atomic(dir / "noisy.csv", [&](std::ostream& s) { io::write_signal_csv(s, run.noisy); });
  io::write_atomic(dir / "output.csv", [&](std::ostream& s) { io::write_signal_csv(s, run.output); });
  io::write_atomic(dir / "spectrum_clean.csv",
                   [&](std::ostream& s) { io::write_spectrum_csv(s, d.eigenvalues, gft(d, run.clean)); });
  io::write_atomic(dir / "spectrum_noisy.csv",
                   [&](std::ostream& s) { io::write_spectrum_csv(s, d.eigenvalues, gft(d, run.noisy)); });
  io::write_atomic(dir / "spectrum_output.csv",
                   [&](std::ostream& s) { io::write_spectrum_csv(s, d.eigenvalues, gft(d, run.output)); });
  if (run.design) {
    io::write_atomic(dir / "design.csv", [&](std::ostream& s) { io::write_design_csv(s, d.eigenvalues, *run.design); });
  }
  io::write_atomic(dir / "report.csv", [&](std::ostream& s) { io::write_report_csv(s, run.report); });
  io::write_atomic(dir / "report.txt", [&](std::ostream& s) { io::write_report_summary(s, run.report); });
  io::write_report_summary(out, run.report);
  return run;
}

/// Runs one CLI invocation. argv[0] is the program name.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph signal processing toolkit", "gsp"};
  app.require_subcommand(1);

  std::string graph_path, signal_path, out_path, kind_name = "laplacian", kernel = "exp:1";
  std::string design_path, coeffs, spectrum_path, route = "vertex";
  std::size_t order = 4;
  double alpha = 4.0;
  bool inverse = false;
  DemoOptions demo;

  auto* info = app.add_subcommand("info", "Summarize an edge-list graph");
  info->add_option("--graph", graph_path, "Edge-list file")->required();

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of a symmetric shift operator");
  spectrum->add_option("--graph", graph_path, "Edge-list file")->required();
  spectrum->add_option("--kind", kind_name, "laplacian|adjacency|weight");
  spectrum->add_option("--out", out_path, "Output CSV (k,lambda); stdout if omitted");

  auto* gft_cmd = app.add_subcommand("gft", "Graph Fourier transform (or inverse with --inverse)");
  gft_cmd->add_option("--graph", graph_path, "Edge-list file")->required();
  gft_cmd->add_option("--kind", kind_name, "laplacian|adjacency|weight");
  gft_cmd->add_option("--signal", signal_path, "Signal CSV (forward transform)");
  gft_cmd->add_option("--spectrum", spectrum_path, "Spectrum CSV (inverse transform)");
  gft_cmd->add_flag("--inverse", inverse, "Reconstruct a signal from a spectrum CSV");
  gft_cmd->add_option("--out", out_path, "Output CSV; stdout if omitted");

  auto* design = app.add_subcommand("filter-design", "Least-squares polynomial filter design");
  design->add_option("--graph", graph_path, "Edge-list file")->required();
  design->add_option("--kernel", kernel, "exp:<decay> or const:<gain>");
  design->add_option("--order", order, "Number of coefficients M");
  design->add_option("--out", out_path, "Output design CSV; stdout if omitted");

  auto* apply = app.add_subcommand("filter-apply", "Apply a polynomial graph filter");
  apply->add_option("--graph", graph_path, "Edge-list file")->required();
  apply->add_option("--signal", signal_path, "Signal CSV")->required();
  apply->add_option("--design", design_path, "Design CSV from filter-design");
  apply->add_option("--coeffs", coeffs, "Comma-separated coefficients h0,h1,...");
  apply->add_option("--kind", kind_name, "Shift operator");
  apply->add_option("--out", out_path, "Output signal CSV; stdout if omitted");

  auto* denoise = app.add_subcommand("denoise", "Smoothness-regularized denoising");
  denoise->add_option("--graph", graph_path, "Edge-list file")->required();
  denoise->add_option("--signal", signal_path, "Signal CSV")->required();
  denoise->add_option("--alpha", alpha, "Smoothing weight (>= 0)");
  denoise->add_option("--route", route, "vertex|spectral");
  denoise->add_option("--out", out_path, "Output signal CSV; stdout if omitted");

  auto* shift_cmd = app.add_subcommand("shift", "One graph shift of a signal");
  shift_cmd->add_option("--graph", graph_path, "Edge-list file")->required();
  shift_cmd->add_option("--signal", signal_path, "Signal CSV")->required();
  shift_cmd->add_option("--kind", kind_name, "adjacency|weight|laplacian|random_walk");
  shift_cmd->add_option("--out", out_path, "Output signal CSV; stdout if omitted");

  auto* cluster = app.add_subcommand("cluster", "Spectral bipartition by the Fiedler vector");
  cluster->add_option("--graph", graph_path, "Edge-list file")->required();
  cluster->add_option("--out", out_path, "Output partition CSV; stdout if omitted");

  auto* demo_cmd = app.add_subcommand("demo", "Reproducible synthetic denoising experiment");
  demo_cmd->add_option("--seed", demo.seed, "Generator seed");
  demo_cmd->add_option("--alpha", demo.alpha, "Denoiser smoothing weight");
  demo_cmd->add_option("--method", demo.method, "denoise|average|filter");
  demo_cmd->add_option("--order", demo.order, "Designed filter order M");
  demo_cmd->add_option("--kernel", demo.kernel, "Designed filter kernel exp:<decay>");
  demo_cmd->add_option("--n", demo.n, "Vertex count");
  demo_cmd->add_option("--sigma", demo.sigma, "Noise standard deviation");
  demo_cmd->add_option("--out", demo.out_dir, "Output directory");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsageError;
  }

  try {
    if (*info) {
      report_info(out, load_graph(graph_path));
    } else if (*spectrum) {
      const Graph g = load_graph(graph_path);
      const auto d = shift_decomposition(g, shift_kind_or_throw(kind_name));
      emit(out_path, out, [&](std::ostream& s) { io::write_eigenvalues_csv(s, d.eigenvalues); });
    } else if (*gft_cmd) {
      const Graph g = load_graph(graph_path);
      const auto d = shift_decomposition(g, shift_kind_or_throw(kind_name));
      if (inverse) {
        if (spectrum_path.empty()) throw UsageError("--inverse requires --spectrum");
        const auto table = io::read_file(spectrum_path, io::read_spectrum_csv);
        const GraphSignal x = igft(d, table.spectrum);
        emit(out_path, out, [&](std::ostream& s) { io::write_signal_csv(s, x); });
      } else {
        if (signal_path.empty()) throw UsageError("gft requires --signal (or --inverse --spectrum)");
        const Spectrum X = gft(d, load_signal(signal_path));
        emit(out_path, out, [&](std::ostream& s) { io::write_spectrum_csv(s, d.eigenvalues, X); });
      }
    } else if (*design) {
      const Graph g = load_graph(graph_path);
      const auto d = laplacian_decomposition(g);
      const auto result = design_ls(d.eigenvalues, parse_kernel(kernel, order, g.vertex_count()));
      emit(out_path, out, [&](std::ostream& s) { io::write_design_csv(s, d.eigenvalues, result); });
    } else if (*apply) {
      if (design_path.empty() == coeffs.empty()) throw UsageError("give exactly one of --design or --coeffs");
      const Graph g = load_graph(graph_path);
      const PolynomialFilter h = design_path.empty()
                                     ? PolynomialFilter(parse_coefficient_list(coeffs))
                                     : io::read_file(design_path, io::read_design_coefficients);
      const GraphSignal y = apply_polynomial(g, shift_kind_or_throw(kind_name), h, load_signal(signal_path));
      emit(out_path, out, [&](std::ostream& s) { io::write_signal_csv(s, y); });
    } else if (*denoise) {
      const Graph g = load_graph(graph_path);
      const GraphSignal x = load_signal(signal_path);
      GraphSignal y;
      if (route == "vertex") {
        y = denoise_vertex(g, x, Alpha(alpha));
      } else if (route == "spectral") {
        y = denoise_spectral(laplacian_decomposition(g), x, Alpha(alpha));
      } else {
        throw UsageError("unknown --route '" + route + "' (vertex|spectral)");
      }
      emit(out_path, out, [&](std::ostream& s) { io::write_signal_csv(s, y); });
    } else if (*shift_cmd) {
      const Graph g = load_graph(graph_path);
      const GraphSignal y = shift(g, shift_kind_or_throw(kind_name), load_signal(signal_path));
      emit(out_path, out, [&](std::ostream& s) { io::write_signal_csv(s, y); });
    } else if (*cluster) {
      const Partition p = fiedler_bipartition(laplacian_decomposition(load_graph(graph_path)));
      emit(out_path, out, [&](std::ostream& s) { io::write_partition_csv(s, p); });
    } else if (*demo_cmd) {
      run_demo(demo, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
  return kSuccess;
}

}  // namespace gsp::cli
