#include "depclust/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace depclust {
namespace {
std::atomic<bool> g_muted{false};
std::mutex g_stderr_mutex;
}  // namespace

void log_warning(std::string_view message) {
    if (g_muted.load()) return;
    std::lock_guard lock(g_stderr_mutex);
    std::cerr << "depclust: warning: " << message << '\n';
}

void set_warnings_muted(bool muted) { g_muted.store(muted); }

}  // namespace depclust
