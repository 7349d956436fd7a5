#pragma once

// Shared helpers for the unit and acceptance suites: seeded samplers for
// block algebras, embedded codes and channels, plus small independent
// oracles that deliberately avoid the library code paths they check.

#include <cstdint>
#include <vector>

#include "qmd/algebra.hpp"
#include "qmd/channel.hpp"
#include "qmd/qec.hpp"
#include "qmd/random.hpp"

namespace qmd::test {

/// Random block structure with sum dimA*dimB + kernel = ambient_dim and a
/// random embedding unitary.
OperatorAlgebra random_block_algebra(Index ambient_dim, Rng& rng);

/// Random embedded code: dims drawn with dimA*dimB <= ambient_dim.
SubsystemCode random_code(Index ambient_dim, Rng& rng);

QuantumChannel random_cptp_channel(Index n, int k, Rng& rng);
QuantumChannel random_unital_cptp_channel(Index n, int k, Rng& rng);

/// Partial trace by explicit index summation; oracle for the library's
/// partial_trace.
ComplexMatrix partial_trace_loops(const ComplexMatrix& m, Index dim_a,
                                  Index dim_b, Factor traced_out);

/// Depolarizing channel on M_n with Kraus {|i><j| / sqrt(n)}.
QuantumChannel depolarizing_channel(Index n);

}  // namespace qmd::test
