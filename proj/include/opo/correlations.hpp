#pragma once

#include <array>
#include <vector>

#include "opo/model.hpp"
#include "opo/spectra.hpp"
#include "opo/transfer.hpp"

namespace opo {

enum class KernelKind { phiphi, mumu, muphi, phimu };
const char* kernel_name(KernelKind k);

// Exponential sums K_xy(tau) = sum_k zeta_k sum_r e^{i Omega_r tau} Res K^x_{jk,r} conj(K^y_{lk}(conj Omega_r)),
// j, l in {1, 2}. tau = 0 means the one-sided limit 0+.
class KernelSet {
public:
    KernelSet(const NormalizedParams& np, double E, const NoiseWeights& nw);

    cplx operator()(KernelKind kind, int j, int l, double tau) const;
    // d/dtau at tau
    cplx derivative(KernelKind kind, int j, int l, double tau) const;
    const ResidueTable& table() const { return table_; }
    const std::array<cplx, 5>& poles() const { return table_.poles.omega; }
    double slowest_rate() const;

private:
    ResidueTable table_;
    // coef_[kind][j-1][l-1][r]
    std::array<std::array<std::array<std::array<cplx, 5>, 2>, 2>, 4> coef_{};
};

struct CorrelationKernel {
    int j = 1, l = 1;
    std::vector<double> tau;
    std::vector<cplx> phiphi, mumu, muphi, phimu;
};

CorrelationKernel kernels(const KernelSet& ks, int j, int l, const std::vector<double>& tau);

struct LinewidthReport {
    double dnu = 0.0;            // total phase-diffusion rate
    double f_phi = 0.0;          // pump-linewidth broadening factor
    double spontaneous = 0.0;    // (1 - delta^2)^2 / (8 C^2 cos^4 psi)
};

LinewidthReport linewidth(const NormalizedParams& np, double E, double c_sq, double dnu_L, int j);
// Spontaneous floor from the origin residue of the phase response; agrees with
// the typeset floor at psi = 0.
double spontaneous_floor_from_residue(const NormalizedParams& np, double c_sq);

// Operator correlations are complex once psi != 0; their imaginary parts are
// half the corresponding commutators and are checked against them.
struct Correlations {
    cplx phase_structure;   // <(phi(tau) - phi(0)) phi(0)>
    cplx mumu;              // <mu_j(tau) mu_j(0)>
    cplx cross;             // <mu_j(tau) phi_l(0)> - <phi_j(tau) mu_l(0)>
    double commutator_mismatch = 0.0;
};

Correlations correlations(const KernelSet& ks, int j, int l, double c_sq, double dnu, double tau);

struct Commutators {
    cplx phiphi;     // <[phi(0), phi(tau)]>
    cplx mumu;       // <[mu(0), mu(tau)]>
    cplx anti;       // <[phi(0), mu(tau)]_+>
    cplx phimu;      // <[phi(0), mu(tau)]>
};

// Cross terms use K^ = -i K_muphi(tau): the later-time mu carries the residues (see README).
Commutators commutators(const KernelSet& ks, int j, double c_sq, double tau);
// Same four expressions with the cross kernel exactly as typeset.
Commutators commutators_as_printed(const KernelSet& ks, int j, double c_sq, double tau);

struct FieldCorrelations {
    cplx phase_factor;        // <e^{i phi_j(tau)} e^{-i phi_j(0)}>
    cplx phase_factor_cross;  // <e^{-i phi_j(tau)} e^{-i phi_j'(0)}>
    cplx first_order;         // <a_j^dag(tau) a_j(0)>
    cplx pair;                // <a_j(tau) a_j'(0)>
};

FieldCorrelations field_correlations(const KernelSet& ks, const SteadyState& st, int j,
                                     double c_sq, double dnu, double tau);

// Time-normally-ordered intensity correlation normalized by r_j^4/(2 C^2):
// symmetrized mu term and commutator term returned separately.
struct IntensityVariance {
    double mu_term = 0.0;
    double comm_term = 0.0;
    double total() const { return mu_term + comm_term; }
};

IntensityVariance intensity_variance(const KernelSet& ks, int j, double tau);

// 2 * integral_0^T cos(w tau) f(tau) dtau by composite Simpson, T from the slowest decay.
std::vector<double> cosine_transform(const std::function<double(double)>& f,
                                     const std::vector<double>& omega, double t_max, int n_steps);

} // namespace opo
