#ifndef EHRELAY_MODEL_HPP
#define EHRELAY_MODEL_HPP

#include <cstdint>
#include <vector>

#include "ehrelay/rng.hpp"

namespace ehrelay::model {

double db_to_linear(double db);
double linear_to_db(double x);  // throws std::domain_error for x <= 0

// Network-wide constants.  All powers are SNR-normalized (divided by the
// noise power), so gamma = P/N0 and gamma_b_max = P_b_max/N0.  The slot
// duration is fixed to 1 so harvested energy and power coincide.
struct SystemParams {
    double gamma = 0.0;                // linear SNR
    double eta = 0.5;                  // energy conversion efficiency, (0, 1]
    double rate = 1.0;                 // target rate R in bit/s/Hz
    int n_relays = 1;                  // N
    std::vector<double> sigma_si2;     // per-relay mean of |h_si|^2
    std::vector<double> sigma_id2;     // per-relay mean of |h_id|^2
    double gamma_b_max = 0.0;          // linear battery-cap SNR

    // Symmetric network with unit channel variances.
    static SystemParams symmetric(double gamma_linear, double eta, double rate, int n_relays,
                                  double sigma2 = 1.0, double gamma_b_max_linear = 1000.0);
    // gamma = 15 dB, eta = 0.5, R = 1, N = 6, sigma^2 = 1, battery cap 30 dB.
    static SystemParams defaults();

    void validate() const;  // throws std::invalid_argument on violated invariants
};

// alpha = 2(2^{2R}-1)/(gamma eta), beta = 2(2^{2R}-1)/gamma,
// delta = (2^{2R}-1)/(gamma eta).
struct DerivedThresholds {
    double alpha = 0.0;
    double beta = 0.0;
    double delta = 0.0;
};

DerivedThresholds derive_thresholds(const SystemParams& params);

// One slot's realized squared channel gains.
struct ChannelDraw {
    std::vector<double> g_si;
    std::vector<double> g_id;
};

// Draws g_si[i] ~ Exp(sigma_si2[i]), g_id[i] ~ Exp(sigma_id2[i]) by inverse
// CDF, interleaved per relay (g_si[i] then g_id[i]) so the sequence is pinned
// to the uniform stream.
void draw_channels(const SystemParams& params, Rng& rng, ChannelDraw& out);
ChannelDraw draw_channels(const SystemParams& params, Rng& rng);

}  // namespace ehrelay::model

#endif
