#pragma once

#include <array>
#include <vector>

#include "opo/model.hpp"
#include "opo/transfer.hpp"

namespace opo {

struct NoiseWeights {
    std::array<double, 3> zeta{};   // zeta_0 = 2/(script_e - 1), zeta_j = 2 cos(psi)
    double s_eps = 0.0;             // flat pump amplitude-noise level
    double dnu_L = 0.0;
    double pump_gain = 0.0;         // (E/(script_e - 1))^2
    double s_phi(double w) const { return dnu_L * dnu_L / (w * w); }
};

NoiseWeights noise_weights(const NormalizedParams& np, double E, double dnu_L = 0.0,
                           double s_eps_level = 0.0);

enum class Target { internal, output, difference };
const char* target_name(Target t);

// Every component is already even-symmetrized; output and difference series
// are divided by their shot-noise level `snl`.
struct SpectrumSeries {
    Target target = Target::internal;
    int j = 1;
    std::vector<double> omega;
    std::vector<double> s_mu;
    std::vector<double> s_eps_shape;   // S_eps_j (transfer only)
    std::vector<double> s_phi_shape;   // S_phi_j
    std::vector<double> s_eps;         // gain * S_eps * S_eps_j
    std::vector<double> s_phi;         // gain * S_phi(w) * S_phi_j
    std::vector<double> s_comm;
    std::vector<double> s_j;           // s_mu + s_eps + s_phi: the photocurrent spectrum
    std::vector<double> total;         // s_j + s_comm as typeset; double counts the ordering term
    double snl = 1.0;
};

// Shot-noise level of an output beam: gamma_j'/(gamma_j cos psi).
double output_snl(const NormalizedParams& np, int j);
// Intensity weights I_j/(I_1 + I_2).
std::array<double, 3> difference_weights(const NormalizedParams& np);
double difference_snl(const NormalizedParams& np);

SpectrumSeries single_beam_spectrum(const NormalizedParams& np, double E, const NoiseWeights& nw,
                                    Target target, int j, const std::vector<double>& omega);

// Commutator part alone, unnormalized.
std::vector<double> commutator_spectrum(const NormalizedParams& np, double E,
                                        const NoiseWeights& nw, int j,
                                        const std::vector<double>& omega);

SpectrumSeries difference_spectrum(const NormalizedParams& np, double E, const NoiseWeights& nw,
                                   const std::vector<double>& omega);

// Unsymmetrized one-sided pieces at a single frequency.
double sigma_mu(const NormalizedParams& np, double E, const NoiseWeights& nw, Target target,
                int j, double w);
// k = K0_{j0}(w), kd = its dagger value conj(K0_{j0}(-conj w)).
double sigma_eps(cplx k, cplx kd, double psi_p);
double sigma_phi(cplx k, cplx kd, double psi_p);

struct DifferenceOrigin {
    cplx dk0_numeric;     // intensity-weighted K0_{10} - K0_{20} at w -> 0
    cplx dk0_derived;     // (1 - i tan/E_eff)/2 * (w_1 - w_2)
    cplx dk0_printed;     // (1 - i tan/E_eff) delta kappa/(1 - delta^2) cos psi
    double sig_eps_numeric = 0, sig_phi_numeric = 0;
    double sig_eps_printed = 0, sig_phi_printed = 0;
};

// Symmetric signal/idler crystal loss is assumed by the printed closed forms.
DifferenceOrigin difference_origin(const NormalizedParams& np, double E);

} // namespace opo
