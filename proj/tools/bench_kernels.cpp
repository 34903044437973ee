#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "ethics2vec/continuous.hpp"
#include "ethics2vec/harness.hpp"
#include "ethics2vec/kernels.hpp"
#include "ethics2vec/rng.hpp"
#include "ethics2vec/threading.hpp"

namespace {

double seconds_now() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <class F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const double t0 = seconds_now();
        f();
        best = std::min(best, seconds_now() - t0);
    }
    return best;
}

void report(const char* name, double serial_s, double parallel_s, bool match) {
    std::printf("%-22s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx   identical %s\n",
                name, serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
                match ? "yes" : "NO");
}

} // namespace

int main(int argc, char** argv) {
    bool smoke = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--smoke") == 0) smoke = true;

    const int threads = e2v::thread_cap();
    std::printf("worker threads: %d\n", threads);
    const int reps = smoke ? 2 : 5;

    {
        const std::size_t n_scores = smoke ? 20000 : 2000000;
        const std::size_t n_taus = smoke ? 2000 : 200000;
        e2v::Rng rng(42);
        std::vector<double> scores(n_scores);
        for (double& s : scores) s = rng.normal(0.0, 1.0);
        std::sort(scores.begin(), scores.end());
        std::vector<double> taus(n_taus);
        for (std::size_t i = 0; i < n_taus; ++i)
            taus[i] = -4.0 + 8.0 * static_cast<double>(i) / static_cast<double>(n_taus - 1);

        std::vector<std::size_t> out_serial(n_taus), out_parallel(n_taus);
        const double ts = best_of(reps, [&] {
            e2v::kernels::tail_counts_serial(scores, taus, out_serial);
        });
        const double tp = best_of(reps, [&] {
            e2v::kernels::tail_counts_omp(scores, taus, out_parallel, threads);
        });
        report("tail_counts", ts, tp, out_serial == out_parallel);
    }

    {
        e2v::CarExperimentConfig cfg;
        cfg.dt = smoke ? 0.001 : 0.0001;
        const auto laws = e2v::default_control_laws(cfg);
        const std::vector<e2v::RiskModel> risks = {
            e2v::accident_risk_model(cfg.accident_k, cfg.accident_u0),
            e2v::lateness_risk_model(cfg.destination, cfg.horizon_T, cfg.lateness_a)};
        const e2v::Trajectory traj =
            e2v::simulate_trajectory(laws[0], cfg.horizon_T, cfg.dt, cfg.destination, cfg.u_cap);

        e2v::EthicsTrace serial, parallel;
        const double ts = best_of(reps, [&] { serial = e2v::ethics_trace_serial(traj, risks); });
        const double tp = best_of(reps, [&] { parallel = e2v::ethics_trace(traj, risks); });
        report("ethics_trace", ts, tp, serial.values == parallel.values);
    }

    return 0;
}
