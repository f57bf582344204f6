#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace nzeta {

// Exit codes of the command-line front end.
inline constexpr int exit_ok = 0;
inline constexpr int exit_invalid = 1;  // parse/validation/precondition errors
inline constexpr int exit_mismatch = 2; // verification found differing classes

// Runs `nzeta <command> FILE [--cutoff p/q] [--output table|machine] [--bound N]`.
// args excludes the program name.
int run_cli(std::vector<std::string> const &args, std::ostream &out, std::ostream &err);

} // namespace nzeta
