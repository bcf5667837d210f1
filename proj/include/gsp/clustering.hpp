#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "gsp/error.hpp"
#include "gsp/spectral.hpp"

namespace gsp {

struct Partition {
  std::vector<int> labels;
  double fiedler_value = 0.0;
};

/// Two-way split by the sign of the Fiedler vector u_1. Entries with
/// |u_1(n)| <= 1e-10 go to class 1.
inline Partition fiedler_bipartition(const SpectralDecomposition& d) {
  if (d.source_kind != SourceKind::laplacian) {
    throw Error(ErrorCode::InvalidArgument, "fiedler_bipartition requires a Laplacian decomposition");
  }
  if (d.size() < 2) throw Error(ErrorCode::TooSmall, "bipartition needs at least two vertices");
  const double lambda1 = d.eigenvalues[1];
  if (lambda1 <= 1e-9) {
    throw Error(ErrorCode::Disconnected,
                "second-smallest Laplacian eigenvalue " + std::to_string(lambda1) +
                    " is zero; the graph is disconnected and the Fiedler vector is ambiguous");
  }
  Partition p;
  p.fiedler_value = lambda1;
  p.labels.resize(d.size());
  for (std::size_t n = 0; n < d.size(); ++n) {
    const double value = d.eigenvectors(n, 1);
    p.labels[n] = (value >= 0.0 || std::abs(value) <= 1e-10) ? 1 : 0;
  }
  return p;
}

}  // namespace gsp
