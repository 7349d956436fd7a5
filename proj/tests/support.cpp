#include "support.hpp"

#include <cmath>

namespace qmd::test {

OperatorAlgebra random_block_algebra(Index ambient_dim, Rng& rng) {
  std::uniform_int_distribution<Index> nblocks_dist(1, 2);
  const Index nblocks = nblocks_dist(rng);
  std::vector<AlgebraBlock> blocks;
  Index used = 0;
  for (Index b = 0; b < nblocks; ++b) {
    const Index room = ambient_dim - used - (nblocks - 1 - b);
    if (room < 1) break;
    std::uniform_int_distribution<Index> a_dist(1, std::min<Index>(3, room));
    const Index da = a_dist(rng);
    std::uniform_int_distribution<Index> b_dist(1, std::min<Index>(3, room / da));
    const Index db = b_dist(rng);
    blocks.push_back({da, db});
    used += da * db;
  }
  const Index kernel = ambient_dim - used;
  return algebra_from_blocks(blocks, kernel, random_unitary(ambient_dim, rng));
}

SubsystemCode random_code(Index ambient_dim, Rng& rng) {
  std::uniform_int_distribution<Index> a_dist(1, 2);
  Index da = a_dist(rng);
  std::uniform_int_distribution<Index> b_dist(1, std::max<Index>(1, ambient_dim / da));
  Index db = std::min<Index>(3, b_dist(rng));
  if (da * db > ambient_dim) {
    da = 1;
    db = std::min<Index>(2, ambient_dim);
  }
  return SubsystemCode(da, db, random_isometry(ambient_dim, da * db, rng));
}

QuantumChannel random_cptp_channel(Index n, int k, Rng& rng) {
  return QuantumChannel(random_cptp_kraus(n, k, rng));
}

QuantumChannel random_unital_cptp_channel(Index n, int k, Rng& rng) {
  return QuantumChannel(random_mixed_unitary_kraus(n, k, rng));
}

ComplexMatrix partial_trace_loops(const ComplexMatrix& m, Index dim_a,
                                  Index dim_b, Factor traced_out) {
  if (traced_out == Factor::B) {
    ComplexMatrix out = ComplexMatrix::Zero(dim_a, dim_a);
    for (Index i = 0; i < dim_a; ++i)
      for (Index j = 0; j < dim_a; ++j) {
        Complex sum = 0.0;
        for (Index b = 0; b < dim_b; ++b) sum += m(i * dim_b + b, j * dim_b + b);
        out(i, j) = sum;
      }
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(dim_b, dim_b);
  for (Index b = 0; b < dim_b; ++b)
    for (Index c = 0; c < dim_b; ++c) {
      Complex sum = 0.0;
      for (Index i = 0; i < dim_a; ++i) sum += m(i * dim_b + b, i * dim_b + c);
      out(b, c) = sum;
    }
  return out;
}

QuantumChannel depolarizing_channel(Index n) {
  std::vector<ComplexMatrix> kraus;
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      ComplexMatrix e = ComplexMatrix::Zero(n, n);
      e(i, j) = s;
      kraus.push_back(std::move(e));
    }
  return QuantumChannel(std::move(kraus));
}

}  // namespace qmd::test
