#pragma once

#include <random>
#include <vector>

#include "qmd/types.hpp"

namespace qmd {

/// All stochastic routines take an explicit generator (or a seed) so that
/// results are reproducible and independent of any global state.
using Rng = std::mt19937_64;

/// i.i.d. standard complex Gaussian entries.
ComplexMatrix random_gaussian(Index rows, Index cols, Rng& rng);

ComplexMatrix random_hermitian(Index n, Rng& rng);

/// Haar-like unitary: QR of a Gaussian matrix with the R-diagonal phases
/// absorbed.
ComplexMatrix random_unitary(Index n, Rng& rng);

/// rows x cols matrix with orthonormal columns (rows >= cols).
ComplexMatrix random_isometry(Index rows, Index cols, Rng& rng);

/// k Kraus operators of a trace-preserving CP map on C^n: Gaussian draws
/// followed by polar correction of the stacked (k n) x n matrix, which makes
/// sum E_i^dag E_i = I hold to machine precision.
std::vector<ComplexMatrix> random_cptp_kraus(Index n, int k, Rng& rng);

/// Random mixture of k unitaries: unital AND trace-preserving.
std::vector<ComplexMatrix> random_mixed_unitary_kraus(Index n, int k, Rng& rng);

}  // namespace qmd
