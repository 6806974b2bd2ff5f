#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "opo/model.hpp"
#include "opo/spectra.hpp"
#include "opo/transfer.hpp"

namespace opo::oracle {

// Unknowns (a1, a2, a0, a1^dag, a2^dag, a0^dag); row r carries source r.
enum class Injection { z1, z2, z0, z1_dag, z2_dag, z0_dag, pump_eps, pump_phi };
const char* injection_name(Injection inj);

struct LinearSystem6 {
    std::array<std::array<cplx, 6>, 6> m{};
    std::array<cplx, 6> rhs{};
};

LinearSystem6 assemble(const NormalizedParams& np, double E, cplx w, Injection inj);
// max |M(w) - P conj(M(-conj w)) P| with P swapping each unknown with its partner
double dagger_residual(const NormalizedParams& np, double E, cplx w);

// Throws NumericalError at a pole.
std::array<cplx, 6> direct_solve(const NormalizedParams& np, double E, cplx w, Injection inj);

// All K's from one inverse: K0 = row j + row j^dag, Kpi = row j - row j^dag.
TransferEval direct_k(const NormalizedParams& np, double E, cplx w);
// Largest |a - b| / max(|a|, |b|, floor) over the 14 responses.
double max_relative_deviation(const TransferEval& a, const TransferEval& b, double floor = 1e-300);

struct SdeConfig {
    std::int64_t n_steps = 1'000'000;   // production steps summed over chunks
    int chunks = 4;                     // independent RNG streams
    int segment = 16384;                // Welch segment length
    double dt = 0.0;                    // 0: largest step allowed by the stability rule
    double burn_in = 0.0;               // 0: 20 slowest decay times
    std::uint64_t seed = 1;
    double drive_scale = 1.0;           // 0 gives the zero-drive run
    bool record_trajectory = false;     // keep chunk 0 trajectory
};

struct SdeRun {
    double dt = 0.0;
    double duration = 0.0;
    std::uint64_t seed = 0;
    std::array<double, 3> zeta{};
    int segments = 0;
    double m_eff = 0.0;                          // segments corrected for overlap
    std::string window = "hann, 50% overlap";
    std::vector<double> omega;                   // positive-frequency bins
    std::array<std::vector<double>, 2> psd;      // mu_1, mu_2
    std::array<std::vector<double>, 2> stderr_;  // psd / sqrt(m_eff)
    std::array<double, 2> variance{};            // time-domain variance of mu_j
    std::array<double, 2> parseval{};            // integral of the PSD over all bins
    std::vector<std::array<cplx, 3>> trajectory;
};

SdeRun sde_psd(const NormalizedParams& np, double E, const NoiseWeights& nw, const SdeConfig& cfg);

// dt <= 0.01 / max(1, g0, sqrt(2 E g0))
double max_stable_step(const NormalizedParams& np, double E);

// Welch estimate of mu_j estimates s_mu/4 on the internal target.
double expected_psd(const NormalizedParams& np, double E, const NoiseWeights& nw, int j, double w);

// Pearson form: residuals scaled by the analytic value over sqrt(m_eff).
struct ChiSquare {
    double reduced = 0.0;
    int points = 0;
};

ChiSquare chi_square(const SdeRun& run, const NormalizedParams& np, double E,
                     const NoiseWeights& nw, int j, double w_lo = 0.2, double w_hi = 5.0);

// Frequency of the largest PSD bin inside [w_lo, w_hi].
double peak_frequency(const SdeRun& run, int j, double w_lo, double w_hi);

} // namespace opo::oracle
