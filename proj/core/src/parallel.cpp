#include "saddle/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>

namespace saddle {

namespace {
std::atomic<int> g_min_parallel_size{4096};
}  // namespace

void set_thread_count(int threads) { omp_set_num_threads(std::max(1, threads)); }

int thread_count() { return omp_get_max_threads(); }

int default_thread_count() {
  if (const char* env = std::getenv("SADDLE_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n > 0) return n;
    } catch (const std::exception&) {
    }
  }
  return omp_get_max_threads();
}

void set_min_parallel_size(int size) { g_min_parallel_size.store(std::max(0, size)); }

int min_parallel_size() { return g_min_parallel_size.load(); }

}  // namespace saddle
