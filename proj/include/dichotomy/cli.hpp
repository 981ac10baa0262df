#pragma once

// Command-line front end and the regenerated worked-example files.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace dichotomy {

/// Exit codes: 0 success, 1 negative decision, 2 usage or input error, 3 internal inconsistency.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Golden file name -> contents, regenerated from scratch.
std::map<std::string, std::string> golden_files();

/// Directory of the committed goldens in the source tree.
std::string default_golden_dir();

}  // namespace dichotomy
