#include "kfp/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>

namespace kfp::log {

int level() {
  static const int lvl = [] {
    const char* v = std::getenv("KFP_LOG");
    if (!v) return 0;
    return std::atoi(v);
  }();
  return lvl;
}

void warn(const std::string& msg) { std::cerr << "[kfp warn] " << msg << "\n"; }

void info(const std::string& msg) {
  if (level() >= 1) std::cerr << "[kfp] " << msg << "\n";
}

void debug(const std::string& msg) {
  if (level() >= 2) std::cerr << "[kfp debug] " << msg << "\n";
}

namespace {
std::atomic<int> g_threads{1};
}

int threads() { return g_threads.load(); }

void set_threads(int n) { g_threads.store(n < 1 ? 1 : n); }

}  // namespace kfp::log
