#include "opo/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace opo {

void OpoParams::validate() const
{
    for (int k = 0; k < 3; ++k) {
        if (!(gamma_mirror[k] >= 0.0) || !(kappa_crystal[k] >= 0.0))
            throw DomainError("rates must be non-negative (mode " + std::to_string(k) + ")");
        if (!(total(k) > 0.0))
            throw DomainError("total damping of mode " + std::to_string(k) + " must be positive");
    }
    if (!(std::abs(psi) < M_PI / 2))
        throw DomainError("detuning angle must satisfy |psi| < pi/2");
    if (psi0_set && psi0 != psi)
        throw DomainError("pump detuning is locked to psi; psi0 cannot be set independently");
    if (!(chi > 0.0))
        throw DomainError("coupling chi must be positive");
    if (dnu_L < 0.0 || s_eps_level < 0.0)
        throw DomainError("pump noise levels must be non-negative");
}

NormalizedParams NormalizedParams::make(double g0, double delta, double psi,
                                        std::array<double, 3> loss)
{
    NormalizedParams n;
    n.g0 = g0;
    n.delta = delta;
    n.psi = psi;
    n.loss = loss;
    n.validate();
    return n;
}

double NormalizedParams::total(int k) const
{
    switch (k) {
    case 0: return g0;
    case 1: return 1.0 + delta;
    case 2: return 1.0 - delta;
    }
    throw std::out_of_range("mode index");
}

cplx NormalizedParams::kappa(int k) const
{
    if (k == 0) return {g0, 0.0};
    return total(k) * cplx(1.0, std::tan(psi));
}

void NormalizedParams::validate() const
{
    if (!(std::abs(delta) < 1.0))
        throw DomainError("mismatch must satisfy |delta| < 1");
    if (!(g0 > 0.0))
        throw DomainError("pump damping must be positive");
    if (!(std::abs(psi) < M_PI / 2))
        throw DomainError("detuning angle must satisfy |psi| < pi/2");
    for (int k = 0; k < 3; ++k) {
        if (loss[k] < 0.0) throw DomainError("crystal loss must be non-negative");
        if (loss[k] > total(k)) throw DomainError("crystal loss exceeds total damping");
    }
}

NormalizedParams normalize(const OpoParams& p)
{
    p.validate();
    const double g1 = p.total(1), g2 = p.total(2);
    const double gamma = 0.5 * (g1 + g2);
    if (!(gamma > 0.0)) throw DomainError("mean damping is zero");
    NormalizedParams n;
    n.gamma_mean = gamma;
    n.g0 = p.total(0) / gamma;
    n.delta = (g1 - g2) / (2.0 * gamma);
    n.psi = p.psi;
    for (int k = 0; k < 3; ++k) n.loss[k] = p.kappa_crystal[k] / gamma;
    n.validate();
    return n;
}

ThresholdResult threshold(const OpoParams& p)
{
    p.validate();
    const double c = std::cos(p.psi);
    const double eps = p.total(0) * std::sqrt(p.total(1) * p.total(2)) / (2.0 * p.chi * c);
    // |kappa_j'| = gamma_j'/cos(psi)
    const double r0 = std::sqrt(p.total(1) * p.total(2)) / c / (2.0 * p.chi);
    return {eps, r0};
}

Excitation effective_excitation(double E, double psi)
{
    const double s = std::sin(psi), c = std::cos(psi);
    const double rad = E * E - s * s;
    if (rad < 0.0)
        throw DomainError("E below the phase-locking range (E^2 < sin^2 psi)");
    Excitation x;
    x.E = E;
    x.script_e = std::sqrt(rad) + 1.0 - c;
    x.e_eff = 1.0 + (x.script_e - 1.0) / c;
    x.psi_p = (E > 0.0) ? std::asin(std::clamp(s / E, -1.0, 1.0)) : 0.0;
    return x;
}

double excitation_from_script(double script_e, double psi)
{
    const double s = std::sin(psi), c = std::cos(psi);
    const double a = script_e - 1.0 + c;
    if (a < 0.0) throw DomainError("script-E out of range for this detuning");
    return std::sqrt(a * a + s * s);
}

SteadyState steady_state(const OpoParams& p, double E)
{
    p.validate();
    if (!(E > 1.0))
        throw DomainError("steady state requires E > 1 (above threshold)");
    const auto th = threshold(p);
    const auto x = effective_excitation(E, p.psi);
    const double c = std::cos(p.psi);

    SteadyState st;
    st.eps_th = th.eps_th;
    st.E = E;
    st.script_e = x.script_e;
    st.e_eff = x.e_eff;
    st.psi_p = x.psi_p;
    st.r0 = th.r0;
    const double k0 = p.total(0);  // pump damping is real
    const double k1 = p.total(1) / c, k2 = p.total(2) / c;
    st.c_sq = (x.script_e - 1.0) * k0 * th.r0 * th.r0;
    st.r1 = std::sqrt(st.c_sq / k1);
    st.r2 = std::sqrt(st.c_sq / k2);
    st.i_out[1] = 2.0 * p.gamma_mirror[1] * st.r1 * st.r1;
    st.i_out[2] = 2.0 * p.gamma_mirror[2] * st.r2 * st.r2;
    st.lock_sum = p.psi;
    st.lock_pump = p.psi - x.psi_p;
    return st;
}

} // namespace opo
