#pragma once

#include <cstddef>
#include <exception>
#include <span>

#include "ethics2vec/threading.hpp"

namespace e2v::kernels {

// Per-threshold tail counts: out[i] = #{ j : sorted[j] >= taus[i] }.
// `sorted` must be ascending. The serial and OpenMP variants compute
// identical results; use tail_counts() to dispatch on the thread cap.
void tail_counts_serial(std::span<const double> sorted, std::span<const double> taus,
                        std::span<std::size_t> out);
void tail_counts_omp(std::span<const double> sorted, std::span<const double> taus,
                     std::span<std::size_t> out, int n_threads);
void tail_counts(std::span<const double> sorted, std::span<const double> taus,
                 std::span<std::size_t> out);

// Row-parallel driver: fill(i) writes only row i, so scheduling never
// changes the result. Exceptions thrown by fill are captured and rethrown
// on the calling thread.
template <class Fill>
void fill_rows_serial(std::size_t n, Fill&& fill) {
    for (std::size_t i = 0; i < n; ++i) fill(i);
}

template <class Fill>
void fill_rows_omp(std::size_t n, Fill&& fill, int n_threads) {
#ifdef _OPENMP
    std::exception_ptr error;
#pragma omp parallel for schedule(static) num_threads(n_threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
        try {
            fill(static_cast<std::size_t>(i));
        } catch (...) {
#pragma omp critical(e2v_fill_rows_error)
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
#else
    (void)n_threads;
    fill_rows_serial(n, fill);
#endif
}

template <class Fill>
void fill_rows(std::size_t n, Fill&& fill) {
    const int nt = thread_cap();
    if (nt <= 1 || n < 2)
        fill_rows_serial(n, fill);
    else
        fill_rows_omp(n, fill, nt);
}

} // namespace e2v::kernels
