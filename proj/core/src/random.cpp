#include "qmd/random.hpp"

#include <cmath>

#include <Eigen/QR>
#include <Eigen/SVD>

namespace qmd {

ComplexMatrix random_gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  return m;
}

ComplexMatrix random_hermitian(Index n, Rng& rng) {
  ComplexMatrix g = random_gaussian(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

ComplexMatrix random_unitary(Index n, Rng& rng) {
  ComplexMatrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
  ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

ComplexMatrix random_isometry(Index rows, Index cols, Rng& rng) {
  if (cols > rows)
    throw std::invalid_argument("random_isometry: cols > rows");
  ComplexMatrix g = random_gaussian(rows, cols, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  return qr.householderQ() * ComplexMatrix::Identity(rows, cols);
}

std::vector<ComplexMatrix> random_cptp_kraus(Index n, int k, Rng& rng) {
  if (k < 1) throw std::invalid_argument("random_cptp_kraus: need k >= 1");
  ComplexMatrix stacked = random_gaussian(n * k, n, rng);
  Eigen::JacobiSVD<ComplexMatrix> svd(stacked,
                                      Eigen::ComputeThinU | Eigen::ComputeThinV);
  ComplexMatrix isom = svd.matrixU() * svd.matrixV().adjoint();
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) kraus.push_back(isom.middleRows(i * n, n));
  return kraus;
}

std::vector<ComplexMatrix> random_mixed_unitary_kraus(Index n, int k, Rng& rng) {
  std::uniform_real_distribution<double> uni(0.1, 1.0);
  std::vector<double> w(static_cast<std::size_t>(k));
  double total = 0.0;
  for (auto& x : w) {
    x = uni(rng);
    total += x;
  }
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(w.size());
  for (int i = 0; i < k; ++i)
    kraus.push_back(std::sqrt(w[static_cast<std::size_t>(i)] / total) *
                    random_unitary(n, rng));
  return kraus;
}

}  // namespace qmd
