#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "geodepth/error.hpp"

namespace geodepth::cli {

/// 2 input validation, 3 degenerate computation, 4 sampler failure.
int exit_code_for(Errc code) noexcept;

/// Runs the geodepth command line; returns the process exit code. Usage
/// errors return 1, --help returns 0.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Replaces every `--config FILE` pair by the flags it holds. The file is
/// INI/TOML-style `key = value` text; `flag = true` becomes a bare flag and
/// array values are joined with commas.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

}  // namespace geodepth::cli
