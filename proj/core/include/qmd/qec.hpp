#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qmd/algebra.hpp"
#include "qmd/channel.hpp"
#include "qmd/multdom.hpp"
#include "qmd/representation.hpp"
#include "qmd/types.hpp"

namespace qmd {

/// A subsystem code: a factorization C = A (x) B of a subspace of C^n given
/// by an isometric embedding W : A (x) B -> C^n (columns indexed a*dim_b + b).
/// Carries the derived projector P_C = W W^dag and the algebra
/// A_B = W (I_A (x) L(B)) W^dag (+) 0 on the orthocomplement.
class SubsystemCode {
 public:
  SubsystemCode(Index dim_a, Index dim_b, const ComplexMatrix& embedding,
                double tol = kDefaultTol);

  /// Subspace code (dim A = 1) spanned by the given vectors, which are
  /// orthonormalized; throws if they are linearly dependent.
  static SubsystemCode from_span(const std::vector<ComplexVector>& span,
                                 double tol = kDefaultTol);

  Index dim_a() const { return dim_a_; }
  Index dim_b() const { return dim_b_; }
  Index ambient_dim() const { return embedding_.rows(); }
  const ComplexMatrix& embedding() const { return embedding_; }
  const ComplexMatrix& projector() const { return projector_; }
  const OperatorAlgebra& algebra() const { return algebra_; }

 private:
  Index dim_a_;
  Index dim_b_;
  ComplexMatrix embedding_;
  ComplexMatrix projector_;
  OperatorAlgebra algebra_;
};

// ---------------------------------------------------------------------------
// Correctability tests
// ---------------------------------------------------------------------------

struct KnillLaflammeResult {
  bool correctable = false;
  /// The scalar matrix lambda with P E_i^dag E_j P = lambda_ij P. Hermitian;
  /// its trace is 1 for trace-preserving channels.
  Eigen::MatrixXcd lambda;
  double residual = 0.0;
};

/// Subspace (dim A = 1) correctability: every compression P E_i^dag E_j P
/// must be a scalar multiple of P. Use subsystem_correctable_test for
/// dim A > 1.
KnillLaflammeResult knill_laflamme_test(const QuantumChannel& channel,
                                        const SubsystemCode& code,
                                        double tol = kDefaultTol);

struct SubsystemTestResult {
  bool correctable = false;
  double residual = 0.0;
};

/// Operator-QEC criterion: B is correctable iff every compression
/// W^dag E_i^dag E_j W factors as g_ij (x) I_B.
SubsystemTestResult subsystem_correctable_test(const QuantumChannel& channel,
                                               const SubsystemCode& code,
                                               double tol = kDefaultTol);

/// Solve for the representation pi with
/// pi(a) E_i P_C = E_i a and P_C E_i^dag pi(a) = a E_i^dag for all i and all
/// a in the code algebra. The linear system determines pi(a) uniquely on the
/// support Q of channel(P_C) (minimum-norm solve via pseudoinverse, then
/// compression to Q); the result is post-verified as a representation and
/// against both equality families. Absence of a solution is the
/// "not correctable" answer, so returns nullopt rather than throwing.
/// Refuses channels that are not trace-preserving.
std::optional<Representation> find_correcting_representation(
    const QuantumChannel& channel, const SubsystemCode& code,
    double tol = kDefaultTol);

struct CompressionIdentityResult {
  bool holds = false;
  double residual = 0.0;
};

/// pi(a) channel(P_C) = channel(P_C) pi(a) = channel(a) over the code
/// algebra basis.
CompressionIdentityResult check_compression_identity(
    const QuantumChannel& channel, const SubsystemCode& code,
    const Representation& pi, double tol = kDefaultTol);

/// Construct a recovery channel from a representation satisfying the
/// compression identity: read off C' = A' (x) B' from the canonical form of
/// pi, extract sigma_{A'} from the compression of channel(P_C) (which must
/// factor as sigma (x) I within factor_tol), and return the completely
/// depolarizing map A' -> A tensored with the inverse subsystem isometry,
/// completed off C' by rank-one Kraus operators into a fixed code state so
/// the trace-preservation sum is exact.
QuantumChannel build_recovery(const QuantumChannel& channel,
                              const SubsystemCode& code,
                              const Representation& pi,
                              double tol = kDefaultTol,
                              double factor_tol = 1e-7);

struct CorrectionVerification {
  bool corrected = false;
  /// The extracted map F_A with recovery . channel . P_C = (F_A (x) id) . P_C,
  /// present when the factorization holds and F_A is CPTP.
  std::optional<QuantumChannel> factor_map;
  double residual = 0.0;
};

/// Check that recovery . channel . P_C factors as (F_A (x) id_B) . P_C,
/// probing product inputs to extract a candidate F_A and verifying it is a
/// channel. For dim A = 1 this reduces to recovery . channel . P_C = P_C.
CorrectionVerification verify_correction(const QuantumChannel& channel,
                                         const QuantumChannel& recovery,
                                         const SubsystemCode& code,
                                         double tol = kDefaultTol);

/// Kraus-level conditions with pi = id: a E_i P_C = E_i a and
/// P_C E_i^dag a = a E_i^dag for all i and all a in the code algebra.
/// Holds exactly when B needs no active correction (recovery = identity).
bool noiseless_check(const QuantumChannel& channel, const SubsystemCode& code,
                     double tol = kDefaultTol);

// ---------------------------------------------------------------------------
// The equivalence suite
// ---------------------------------------------------------------------------

/// Verdicts for the four equivalent correctability conditions:
/// (1) the subsystem compression test, (2) the compression identity for the
/// solved representation, (3) existence of the Kraus-intertwining
/// representation, (4) the generalized multiplicative domain of the solved
/// representation equals the code algebra.
struct CorrectionReport {
  bool subsystem_correctable = false;
  double subsystem_residual = 0.0;

  bool representation_found = false;

  bool domain_match = false;
  double domain_angle = 0.0;

  bool compression_identity = false;
  double compression_residual = 0.0;

  std::optional<Representation> representation;
  std::optional<QuantumChannel> recovery;
  bool recovery_verified = false;
  std::optional<QuantumChannel> factor_map;
  bool noiseless = false;

  bool correctable() const { return subsystem_correctable; }
};

/// Run all four conditions and require them to agree (disagreement at
/// tolerance is a hard logic error, never a silently inconsistent report).
/// On success attaches the solved representation, the built recovery and
/// its verification, and the noiseless flag. Refuses channels that are not
/// trace-preserving.
CorrectionReport run_correction_suite(const QuantumChannel& channel,
                                      const SubsystemCode& code,
                                      double tol = kDefaultTol,
                                      std::uint64_t seed = 0);

// ---------------------------------------------------------------------------
// Fixtures and model generators
// ---------------------------------------------------------------------------
namespace fixtures {

/// The k-th bit-flip subspace code (k = 0..3), dim A = 1, dim B = 2.
SubsystemCode bit_flip_code(int k = 0);

}  // namespace fixtures

struct NoiselessModel {
  QuantumChannel channel;
  SubsystemCode code;
  QuantumChannel factor_channel;  // the A-side noise F_A
};

/// A channel of the form W (F_A (x) id_B) W^dag (+) (arbitrary channel on
/// the orthocomplement) for a random isometry W and random CPTP F_A: the
/// subsystem B is noiseless by construction. Seeded and reproducible.
NoiselessModel random_noiseless_model(Index dim_a, Index dim_b, Index ambient_dim,
                                      int kraus_count, std::uint64_t seed);

}  // namespace qmd
