#pragma once

#include <atomic>

namespace clockxy::runtime {

// Worker count for the deterministic chunked reductions (energy sums,
// plaquette scans). Results are bit-stable for any value: work is split
// into fixed-size chunks and partial results are merged in chunk order.
void set_thread_count(int n);
int thread_count();

}  // namespace clockxy::runtime
