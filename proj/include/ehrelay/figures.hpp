#ifndef EHRELAY_FIGURES_HPP
#define EHRELAY_FIGURES_HPP

#include "ehrelay/mc.hpp"
#include "ehrelay/report.hpp"

namespace ehrelay::figures {

enum class RunMode { analytic, simulate, both };

// Evaluates one (scheme, parameter) point.  Analytic values are attached for
// the schemes that have a closed form; Monte-Carlo values when the mode asks
// for simulation.  cfg.seed is used as-is.
report::Row evaluate_point(const schemes::SchemeKind& kind, const model::SystemParams& params,
                           RunMode mode, const mc::TrialConfig& cfg);

// Figure campaigns 3..10: hard-coded parameter grids around the defaults
// (gamma = 15 dB, eta = 0.5, R = 1, N = 6, sigma^2 = 1, battery cap 30 dB).
// Per-row sub-seeds are derived from cfg.seed and the row index, so output
// is byte-stable for a given seed regardless of thread count.
std::vector<report::Row> figure(int number, RunMode mode, const mc::TrialConfig& cfg);

}  // namespace ehrelay::figures

#endif
