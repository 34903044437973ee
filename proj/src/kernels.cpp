#include "ethics2vec/kernels.hpp"

#include <algorithm>

namespace e2v::kernels {

void tail_counts_serial(std::span<const double> sorted, std::span<const double> taus,
                        std::span<std::size_t> out) {
    const std::size_t n = sorted.size();
    for (std::size_t i = 0; i < taus.size(); ++i) {
        auto it = std::lower_bound(sorted.begin(), sorted.end(), taus[i]);
        out[i] = n - static_cast<std::size_t>(it - sorted.begin());
    }
}

void tail_counts_omp(std::span<const double> sorted, std::span<const double> taus,
                     std::span<std::size_t> out, int n_threads) {
    fill_rows_omp(
        taus.size(),
        [&](std::size_t i) {
            auto it = std::lower_bound(sorted.begin(), sorted.end(), taus[i]);
            out[i] = sorted.size() - static_cast<std::size_t>(it - sorted.begin());
        },
        n_threads);
}

void tail_counts(std::span<const double> sorted, std::span<const double> taus,
                 std::span<std::size_t> out) {
    const int nt = thread_cap();
    if (nt <= 1 || taus.size() < 64)
        tail_counts_serial(sorted, taus, out);
    else
        tail_counts_omp(sorted, taus, out, nt);
}

} // namespace e2v::kernels
