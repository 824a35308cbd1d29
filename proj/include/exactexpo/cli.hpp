#pragma once

// Command-line front end. Solve verbs emit one versioned JSON report on
// standard output; the bench verb emits CSV; verify verbs emit a JSON
// pass/fail report. Exit codes: 0 = decision true / witness found /
// verification passed, 1 = decision false / none / verification failed,
// 2 = usage or input error (message on standard error).

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace exactexpo::cli {

// 64-bit FNV-1a over raw bytes; the instance digest in run reports.
std::uint64_t fnv1a(const std::string& bytes);

// Full dispatcher, stream-injectable for tests. `args` excludes the program
// name. Reports go to `out`, error messages to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Convenience wrapper over std::cout / std::cerr for main().
int run(int argc, const char* const* argv);

}  // namespace exactexpo::cli
