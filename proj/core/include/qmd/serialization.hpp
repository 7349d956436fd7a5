#pragma once

#include <filesystem>
#include <string>

#include "qmd/algebra.hpp"
#include "qmd/channel.hpp"
#include "qmd/qec.hpp"
#include "qmd/representation.hpp"
#include "qmd/types.hpp"

namespace qmd {

/// Input validation failure, carrying the index path of the offending
/// element (e.g. "kraus[2][1][3]").
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string path, const std::string& message)
      : std::runtime_error(path.empty() ? message : path + ": " + message),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Complex scalars are 2-element arrays [re, im]; matrices are arrays of
// rows of complex scalars.
//
// Channel:        {"dim": n, "kraus": [matrix, ...]}
// Algebra:        {"generators": [matrix, ...]}
//            or   {"blocks": [{"dimA": a, "dimB": b}, ...],
//                  "kernel_dim": k, "embedding": matrix-or-null}
// Representation: {"domain": <algebra object or file path>,
//                  "images": [matrix, ...]}
//            or   {"domain": ..., "kraus_conjugation": [matrix, ...]}
// Code:           {"dimA": a, "dimB": b, "embedding": matrix}
//                  (embedding columns are the embedded A (x) B basis)
//            or   {"span": [vector, ...]}  (dim A = 1 implied)

QuantumChannel channel_from_json_text(const std::string& text);
QuantumChannel load_channel(const std::filesystem::path& path);
std::string channel_to_json_text(const QuantumChannel& ch);
void save_channel(const QuantumChannel& ch, const std::filesystem::path& path);

OperatorAlgebra algebra_from_json_text(const std::string& text,
                                       double tol = kDefaultTol,
                                       std::uint64_t seed = 0);
OperatorAlgebra load_algebra(const std::filesystem::path& path,
                             double tol = kDefaultTol, std::uint64_t seed = 0);

/// `base_dir` resolves a relative "domain" file reference.
Representation representation_from_json_text(
    const std::string& text, const std::filesystem::path& base_dir = {},
    double tol = kDefaultTol, std::uint64_t seed = 0);
Representation load_representation(const std::filesystem::path& path,
                                   double tol = kDefaultTol,
                                   std::uint64_t seed = 0);

SubsystemCode code_from_json_text(const std::string& text,
                                  double tol = kDefaultTol);
SubsystemCode load_code(const std::filesystem::path& path,
                        double tol = kDefaultTol);
std::string code_to_json_text(const SubsystemCode& code);

std::string matrix_to_json_text(const ComplexMatrix& m);

}  // namespace qmd
