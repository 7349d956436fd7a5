#pragma once

#include <cstdint>
#include <string>

namespace qmdcli {

// Exit codes: 0 success, 1 condition/assertion failure, 2 input error,
// 3 hypothesis refusal. "The criterion does not apply" is deliberately a
// different exit class from "the criterion is false".
inline constexpr int kExitOk = 0;
inline constexpr int kExitConditionFailed = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitRefused = 3;

struct Options {
  double tol = 1e-9;
  std::uint64_t seed = 0;
  bool json = false;
};

int cmd_info(const std::string& channel_path, const Options& opts);
int cmd_md(const std::string& channel_path, const Options& opts);
int cmd_mdpi(const std::string& channel_path, const std::string& rep_path,
             const std::string& method, const Options& opts);
int cmd_bimodule(const std::string& channel_path, const std::string& algebra_path,
                 const Options& opts);
int cmd_qec(const std::string& channel_path, const std::string& code_path,
            const Options& opts);

}  // namespace qmdcli
