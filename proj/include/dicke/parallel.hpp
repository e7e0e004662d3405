#ifndef DICKE_PARALLEL_HPP
#define DICKE_PARALLEL_HPP

#ifdef _OPENMP
#include <omp.h>
#endif

#include <stdexcept>
#include <string>
#include <utility>

namespace dicke {

/// Number of worker threads the OpenMP kernels will use (1 without OpenMP).
int hardware_threads();

/// Caps the OpenMP thread count; 0 restores the runtime default.
void set_thread_count(int n);

/// Runs fn(i) for i in [0, n). Each index owns its output slot, so the
/// result is identical whichever schedule or thread count executes it; the
/// serial path is the reference the tests compare against.
template <typename F>
void parallel_for_indexed(int n, F&& fn, bool parallel = true)
{
    if (!parallel) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr first_error = nullptr;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < n; ++i) {
        try {
            fn(i);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            {
                if (!first_error) first_error = std::current_exception();
            }
        }
    }
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace dicke

#endif
