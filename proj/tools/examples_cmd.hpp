#pragma once

#include <string>

#include "commands.hpp"

namespace qmdcli {

/// Replay a bundled worked example ("2.1", "3.2", "3.5", "4.2" or "all") as
/// a sequence of assertions; prints per-example counts and returns 0 only
/// if every assertion passes.
int cmd_examples(const std::string& name, const Options& opts);

}  // namespace qmdcli
