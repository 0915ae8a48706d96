// Benchmarks the OpenMP Monte-Carlo kernels against the serial reference and
// verifies that both produce bit-identical estimates.
#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "ehrelay/mc.hpp"
#include "ehrelay/model.hpp"

using namespace ehrelay;

namespace {

double time_run(mc::OutageEstimate (*fn)(const schemes::SchemeKind&, const model::SystemParams&,
                                         const mc::TrialConfig&),
                const schemes::SchemeKind& kind, const model::SystemParams& params,
                const mc::TrialConfig& cfg, mc::OutageEstimate& out) {
    const auto start = std::chrono::steady_clock::now();
    out = fn(kind, params, cfg);
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void bench(const char* label, const schemes::SchemeKind& kind, const mc::TrialConfig& cfg) {
    const auto params = model::SystemParams::defaults();
    mc::OutageEstimate serial, parallel;
    const double t_serial = time_run(mc::estimate_outage_serial, kind, params, cfg, serial);
    const double t_parallel = time_run(mc::estimate_outage, kind, params, cfg, parallel);
    const double mslots_serial = cfg.trials / t_serial / 1e6;
    const double mslots_parallel = cfg.trials / t_parallel / 1e6;
    std::printf("%-8s %9.2fM slots  serial %6.2fs (%6.2f Mslot/s)  parallel %6.2fs "
                "(%6.2f Mslot/s)  speedup %4.2fx  p_hat %.6g  bitwise %s\n",
                label, cfg.trials / 1e6, t_serial, mslots_serial, t_parallel, mslots_parallel,
                t_serial / t_parallel, parallel.p_hat,
                serial.p_hat == parallel.p_hat ? "equal" : "DIFFERENT");
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel path runs serially\n");
#endif
    mc::TrialConfig memoryless;
    memoryless.trials = 2'000'000;
    memoryless.seed = 99;
    bench("ops", schemes::SchemeKind::ops(), memoryless);
    bench("eps", schemes::SchemeKind::eps(), memoryless);

    mc::TrialConfig battery;
    battery.trials = 1'000'000;
    battery.warmup = 2'000;
    battery.chains = 8;
    battery.seed = 99;
    bench("ehb_df", schemes::SchemeKind::ehb_df(), battery);
    bench("ehb_af", schemes::SchemeKind::ehb_af(), battery);
    return 0;
}
