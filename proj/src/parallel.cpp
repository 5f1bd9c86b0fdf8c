#include "weilmono/parallel.hpp"

namespace wm {

namespace {
std::atomic<unsigned> g_workers{0};
}

unsigned worker_count() {
    unsigned w = g_workers.load();
    if (w) return w;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void set_worker_count(unsigned n) { g_workers = n; }

}  // namespace wm
