#pragma once

// Command-line front end. run() is the whole program minus process setup so
// tests can drive it with in-memory streams.

#include <iosfwd>
#include <string>
#include <vector>

namespace ggchain::cli {

enum ExitCode : int {
    kOk = 0,
    kDomain = 2,
    kSelfCheck = 3,
    kInsufficientData = 4,
    kStatistical = 5,
};

/// argv[0] is the program name, as in main().
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace ggchain::cli
