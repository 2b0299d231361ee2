#include "flatlab/parallel.hpp"

#include <atomic>

namespace flatlab {

namespace {
std::atomic<unsigned> g_threads{1};
}

void set_thread_count(unsigned n) { g_threads.store(n == 0 ? 1 : n); }
unsigned thread_count() { return g_threads.load(); }

}  // namespace flatlab
