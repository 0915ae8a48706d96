#ifndef EHRELAY_MC_HPP
#define EHRELAY_MC_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ehrelay/model.hpp"
#include "ehrelay/schemes.hpp"

namespace ehrelay::mc {

struct TrialConfig {
    std::uint64_t trials = 1'000'000;  // slots counted toward the estimate
    std::uint64_t warmup = 1'000;      // discarded leading slots (battery schemes only)
    std::uint64_t seed = 1;
    int chains = 8;                    // independent trajectories (battery schemes only)
    double confidence = 0.99;

    void validate() const;  // throws std::invalid_argument
};

struct OutageEstimate {
    double p_hat = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t trials_used = 0;
    schemes::SchemeKind scheme;
};

// Two-sided standard normal quantile for the given central confidence level.
double normal_quantile_two_sided(double confidence);

// Outage probability Pr(end-to-end capacity < R).  Memoryless schemes run
// i.i.d. slots split over fixed per-stream batches; battery schemes run
// cfg.chains trajectories with the battery carried across slots and the
// first cfg.warmup slots of each chain discarded.  Outage counts are integers
// reduced in batch order, so the result depends only on (seed, chains) and
// never on thread count.  The default entry point parallelizes with OpenMP;
// the _serial variant is the reference implementation and produces
// bit-identical results.
OutageEstimate estimate_outage(const schemes::SchemeKind& kind,
                               const model::SystemParams& params, const TrialConfig& cfg);
OutageEstimate estimate_outage_serial(const schemes::SchemeKind& kind,
                                      const model::SystemParams& params, const TrialConfig& cfg);

enum class SweepAxis { gamma_db, eta, rate, n_relays, rho_fixed };

// Throws std::invalid_argument if any value is outside the axis domain or
// the axis does not apply to the scheme (rho_fixed is TPS-only).
void validate_axis_values(const schemes::SchemeKind& kind, SweepAxis axis,
                          std::span<const double> values);

// Rewrites the scheme/parameter pair for one axis value.  New relays added
// by the n_relays axis inherit the first relay's variances.
void apply_axis(schemes::SchemeKind& kind, model::SystemParams& params, SweepAxis axis,
                double value);

struct SweepPoint {
    double axis_value = 0.0;
    OutageEstimate estimate;
};

// One estimate per axis value with a per-point sub-seed derived from
// (cfg.seed, point index).  All values are validated before any simulation
// runs; rho_fixed is only accepted for the TPS scheme.
std::vector<SweepPoint> sweep(const schemes::SchemeKind& kind, const model::SystemParams& params,
                              SweepAxis axis, std::span<const double> values,
                              const TrialConfig& cfg);

}  // namespace ehrelay::mc

#endif
