#pragma once

#include <vector>

#include "psc/matrix.hpp"
#include "psc/rng.hpp"

namespace psc {

/// Haar-distributed m x k frame: QR of a complex Ginibre matrix with the
/// diagonal phases of R moved into Q, so that R has a positive diagonal.
/// Without the phase correction the law is not unitarily invariant.
/// k = 0 gives the empty frame (used for width-0 Schur complements).
Frame sample_haar_frame(Index m, Index k, RngStream& rng);

/// Uniform unit vector on the complex sphere in C^m.
CVector sample_unit_vector(Index m, RngStream& rng);

/// n x n matrix with i.i.d. standard complex Gaussian entries scaled by
/// `scale` (pass 1/sqrt(n) for the circular-law normalization).
CMatrix sample_ginibre(Index n, RngStream& rng, double scale = 1.0);

/// Haar unitary n x n.
CMatrix sample_haar_unitary(Index n, RngStream& rng);

/// The polarization net in C^ell: the standard basis together with every
/// e_j + w^a e_k for j != k and a in {0, 1, 2}, w = exp(2 pi i / 3).
/// Vectors are returned unnormalized; the set has 3 ell^2 - 2 ell elements.
std::vector<CVector> polarization_net(int ell);

struct NetReport {
  double lhs = 0.0;  ///< ||B||
  double rhs = 0.0;  ///< ell * max over the net of |v* B v|
  bool holds = false;
};

/// Checks ||B|| <= ell * max_{v in net} |v* B v| with slack 1e-10 ||B||.
NetReport verify_net_inequality(const CMatrix& b);

}  // namespace psc
