// Worker-thread budget for the parallel fan-out loops, capped by CH_THREADS.
#pragma once

namespace sws {

// Number of worker threads the parallel loops may use. Defaults to the
// hardware concurrency (or the OpenMP default); the CH_THREADS environment
// variable lowers it. Always at least 1. Returns 1 when built without OpenMP.
int worker_threads();

// Installs worker_threads() as the OpenMP default so CH_THREADS caps every
// parallel loop in the process. No-op without OpenMP.
void apply_thread_cap();

}  // namespace sws
