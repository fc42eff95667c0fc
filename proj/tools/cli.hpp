#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mixeff::cli {

// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kUsage = 2, kData = 3, kCompute = 4 };

// Runs the command line in-process. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Lowercase hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& bytes);

// Parses newline-delimited decimal reals; blank lines and lines starting with '#' are skipped.
// Throws std::runtime_error naming the 1-based line number of the first bad line.
std::vector<double> parse_data(const std::string& text);

}  // namespace mixeff::cli
