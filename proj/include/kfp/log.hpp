#pragma once

#include <string>

namespace kfp::log {

// Verbosity comes from the KFP_LOG environment variable:
// unset or 0 prints warnings only, 1 adds info, 2 adds debug.
int level();

void warn(const std::string& msg);
void info(const std::string& msg);
void debug(const std::string& msg);

// Worker cap for the few parallel scans in the toolkit. Defaults to 1 so
// results are reproducible run to run; the CLI raises it via --threads.
int threads();
void set_threads(int n);

}  // namespace kfp::log
