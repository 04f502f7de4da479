// Thread-count control for the OpenMP kernels.
//
// Every parallel kernel in this library has a serial twin with the same
// signature and an identical result; the parallel versions only differ in
// scheduling. ORDMATCH_THREADS caps the worker count.

#ifndef ORDMATCH_PARALLEL_H_
#define ORDMATCH_PARALLEL_H_

namespace ordmatch {

// Applies ORDMATCH_THREADS (if set to a positive integer) to the OpenMP
// runtime. Returns the resulting maximum thread count.
int configure_threads_from_env();

int max_threads();
void set_max_threads(int threads);

}  // namespace ordmatch

#endif  // ORDMATCH_PARALLEL_H_
