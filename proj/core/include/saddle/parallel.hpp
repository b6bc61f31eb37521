#pragma once

namespace saddle {

// Thread budget for the data-parallel kernels (mat-vecs and per-root
// treeplex traversals). Kernels are written so that results are identical
// for every thread count.
void set_thread_count(int threads);
int thread_count();
// SADDLE_THREADS from the environment, else the OpenMP default.
int default_thread_count();

// Kernels with less work than this run on the calling thread.
void set_min_parallel_size(int size);
int min_parallel_size();

}  // namespace saddle
