#include "relex/par.hpp"

#include <atomic>

namespace relex::par {

namespace {
std::atomic<int> g_jobs{1};
}

int jobs() { return g_jobs.load(std::memory_order_relaxed); }

void set_jobs(int n) { g_jobs.store(n < 1 ? 1 : n, std::memory_order_relaxed); }

}  // namespace relex::par
