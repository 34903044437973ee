#include "ethics2vec/threading.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace e2v {

namespace {

std::atomic<int> g_override{0};

int env_threads() {
    const char* s = std::getenv("ETHICS_AUDIT_THREADS");
    if (s == nullptr) return 0;
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end == s || v < 1) return 0;
    return static_cast<int>(v);
}

} // namespace

void set_thread_cap(int n) { g_override.store(n < 1 ? 0 : n); }

int thread_cap() {
    if (const int o = g_override.load(); o > 0) return o;
    if (const int e = env_threads(); e > 0) return e;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

} // namespace e2v
