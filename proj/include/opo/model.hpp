#pragma once

#include <array>

#include "opo/types.hpp"

namespace opo {

// Raw cavity description. Rates in rad/s, index 0 = pump, 1 = signal, 2 = idler.
struct OpoParams {
    std::array<double, 3> gamma_mirror{2.0, 1.0, 1.0};
    std::array<double, 3> kappa_crystal{0.0, 0.0, 0.0};
    double psi = 0.0;
    double psi0 = 0.0;         // must equal psi; kept only to reject attempts to split them
    bool psi0_set = false;
    double chi = 0.5;
    double dnu_L = 0.0;
    double s_eps_level = 0.0;

    double total(int k) const { return gamma_mirror[k] + kappa_crystal[k]; }
    void validate() const;
};

// Everything downstream works in units of the mean signal/idler damping.
struct NormalizedParams {
    double gamma_mean = 1.0;
    double g0 = 2.0;                    // total pump damping / gamma
    double delta = 0.0;                 // mismatch
    double psi = 0.0;
    std::array<double, 3> loss{0.0, 0.0, 0.0}; // crystal losses / gamma

    static NormalizedParams make(double g0, double delta, double psi,
                                 std::array<double, 3> loss = {0.0, 0.0, 0.0});

    double total(int k) const;          // 1+delta, 1-delta, g0
    double mirror(int k) const { return total(k) - loss[k]; }
    double delta_j(int j) const { return j == 1 ? delta : -delta; }
    cplx kappa(int k) const;            // complex damping; real for the pump
    void validate() const;
};

struct Excitation {
    double E = 1.0;
    double script_e = 1.0;   // detuning-corrected excitation
    double e_eff = 1.0;
    double psi_p = 0.0;
};

struct SteadyState {
    double eps_th = 0.0;
    double E = 1.0;
    double script_e = 1.0;
    double e_eff = 1.0;
    double r0 = 0.0, r1 = 0.0, r2 = 0.0;
    double c_sq = 0.0;
    double psi_p = 0.0;
    std::array<double, 3> i_out{0.0, 0.0, 0.0}; // index 1,2 used
    double lock_sum = 0.0;     // <phi1+phi2-phi0>
    double lock_pump = 0.0;    // <phi_p-phi0>
};

NormalizedParams normalize(const OpoParams& p);

struct ThresholdResult {
    double eps_th;
    double r0;
};
ThresholdResult threshold(const OpoParams& p);

Excitation effective_excitation(double E, double psi);
// closed-form inverse of the script-E relation
double excitation_from_script(double script_e, double psi);

SteadyState steady_state(const OpoParams& p, double E);

} // namespace opo
