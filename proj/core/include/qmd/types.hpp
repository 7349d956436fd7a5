#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace qmd {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Default relative rank / comparison tolerance. Double precision leaves
/// ~1e-13 residuals on the bundled fixtures, so 1e-9 separates signal from
/// noise by several orders. Overridable in every operation that uses it.
inline constexpr double kDefaultTol = 1e-9;

/// Thrown when a characterization is invoked outside its hypotheses
/// (e.g. a unital-only or trace-preserving-only criterion on a map that
/// is not). Deliberately distinct from a condition evaluating to false:
/// the question was ill-posed, not answered "no".
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qmd
