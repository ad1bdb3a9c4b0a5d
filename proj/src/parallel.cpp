#include "qnoise/parallel.hpp"

#include <atomic>
#include <cstdlib>

namespace qnoise {

namespace {
std::atomic<unsigned> override_count{0};
}

unsigned worker_count() {
    if (unsigned n = override_count.load()) return n;
    if (const char* env = std::getenv("QNOISE_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void set_worker_count(unsigned n) { override_count.store(n); }

} // namespace qnoise
