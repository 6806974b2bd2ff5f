#include "opo/spectra.hpp"

#include <cmath>

#include "opo/kernels.hpp"
#include "opo/parallel.hpp"

namespace opo {

NoiseWeights noise_weights(const NormalizedParams& np, double E, double dnu_L, double s_eps_level)
{
    const auto x = effective_excitation(E, np.psi);
    if (!(x.script_e > 1.0)) throw DomainError("noise weights need script-E > 1");
    if (dnu_L < 0.0 || s_eps_level < 0.0) throw DomainError("pump noise levels must be non-negative");
    NoiseWeights nw;
    nw.zeta[0] = 2.0 / (x.script_e - 1.0);
    nw.zeta[1] = nw.zeta[2] = 2.0 * std::cos(np.psi);
    nw.s_eps = s_eps_level;
    nw.dnu_L = dnu_L;
    const double g = E / (x.script_e - 1.0);
    nw.pump_gain = g * g;
    return nw;
}

const char* target_name(Target t)
{
    switch (t) {
    case Target::internal: return "internal";
    case Target::output: return "output";
    case Target::difference: return "difference";
    }
    return "?";
}

namespace {

double mirror_rate(const NormalizedParams& np, int j)
{
    const double g = np.mirror(j);
    if (!(g > 0.0)) throw DomainError("output spectra need a transmitting mirror (gamma_j > 0)");
    return g;
}

// Rows K_r and weights w_r such that sigma_mu = sum_r w_r |K_r|^2.
struct Rows {
    int m = 0;
    std::array<cplx, 5> k{};
    std::array<double, 5> w{};
};

Rows make_rows(const NormalizedParams& np, const NoiseWeights& nw, const TransferEval& t,
               Target target, int j)
{
    Rows r;
    if (target == Target::internal) {
        const int jp = 3 - j;
        r.m = 3;
        r.k = {t.k0[j][j], t.k0[j][jp], t.k0[j][0]};
        r.w = {nw.zeta[j], nw.zeta[jp], nw.zeta[0]};
        return r;
    }
    if (target == Target::output) {
        const int jp = 3 - j;
        const double gm = mirror_rate(np, j), gt = np.total(j);
        r.m = 4;
        r.k = {t.k0[j][j] - np.kappa(j) / (2.0 * gm), t.k0[j][j], t.k0[j][jp], t.k0[j][0]};
        r.w = {gm / gt * nw.zeta[j], np.loss[j] / gt * nw.zeta[j], nw.zeta[jp], nw.zeta[0]};
        return r;
    }
    const auto dw = difference_weights(np);
    auto dk = [&](int k) { return dw[1] * t.k0[1][k] - dw[2] * t.k0[2][k]; };
    r.m = 5;
    const double g1 = mirror_rate(np, 1), g2 = mirror_rate(np, 2);
    r.k = {dk(1) - dw[1] * np.kappa(1) / (2.0 * g1), dk(1),
           dk(2) + dw[2] * np.kappa(2) / (2.0 * g2), dk(2), dk(0)};
    r.w = {g1 / np.total(1) * nw.zeta[1], np.loss[1] / np.total(1) * nw.zeta[1],
           g2 / np.total(2) * nw.zeta[2], np.loss[2] / np.total(2) * nw.zeta[2], nw.zeta[0]};
    return r;
}

// Mode weights c_i: the observable is sum_i c_i (response of mode i).
std::array<double, 3> observable(const NormalizedParams& np, Target target, int j)
{
    if (target != Target::difference) {
        std::array<double, 3> c{0.0, 0.0, 0.0};
        c[j] = 1.0;
        return c;
    }
    const auto dw = difference_weights(np);
    return {0.0, dw[1], -dw[2]};
}

cplx pump_k(const TransferEval& t, const std::array<double, 3>& c)
{
    return c[1] * t.k0[1][0] + c[2] * t.k0[2][0];
}

std::vector<double> commutator_for(const NormalizedParams& np, double E, const NoiseWeights& nw,
                                   const std::array<double, 3>& c,
                                   const std::vector<double>& omega)
{
    const auto rt = residues(np, E);
    // R[k][r] = sum_i c_i Res K0_{ik}; V[k][r] = sum_i c_i Kpi_{ik}(conj Omega_r)
    std::array<std::array<cplx, 5>, 3> R{}, V{};
    for (int r = 0; r < 5; ++r) {
        const auto t = k_eval(np, E, std::conj(rt.poles.omega[r]));
        for (int k = 0; k < 3; ++k) {
            for (int i = 1; i <= 2; ++i) {
                if (c[i] == 0.0) continue;
                R[k][r] += c[i] * rt.res[rt.slot({Quad::amp, i, k})][r];
                V[k][r] += c[i] * t.kpi[i][k];
            }
        }
    }
    auto sigma = [&](double w) {
        cplx acc = 0.0;
        for (int k = 0; k < 3; ++k)
            for (int r = 0; r < 5; ++r)
                acc += nw.zeta[k] * R[k][r] / (w - rt.poles.omega[r]) * std::conj(V[k][r]);
        return acc.real();
    };
    std::vector<double> out(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) out[i] = sigma(omega[i]) + sigma(-omega[i]);
    return out;
}

SpectrumSeries assemble(const NormalizedParams& np, double E, const NoiseWeights& nw,
                        Target target, int j, const std::vector<double>& omega)
{
    if (target != Target::difference && j != 1 && j != 2)
        throw DomainError("beam index must be 1 or 2");
    const std::size_t n = omega.size();
    std::vector<TransferEval> ev(2 * n);
    parallel_for(2 * n, [&](std::size_t i) {
        const double w = i < n ? omega[i] : -omega[i - n];
        ev[i] = k_eval(np, E, w);
    });

    const int m = make_rows(np, nw, ev.empty() ? TransferEval{} : ev[0], target, j).m;
    std::vector<cplx> K(2 * n * m);
    std::array<double, 5> wts{};
    for (std::size_t i = 0; i < 2 * n; ++i) {
        const auto rows = make_rows(np, nw, ev[i], target, j);
        for (int r = 0; r < m; ++r) K[i * m + r] = rows.k[r];
        wts = rows.w;
    }
    std::vector<double> sig(2 * n);
    if (n) kernels::weighted_abs2(K.data(), wts.data(), m, sig.data(), 2 * n);

    SpectrumSeries s;
    s.target = target;
    s.j = j;
    s.omega = omega;
    if (target == Target::output) s.snl = output_snl(np, j);
    if (target == Target::difference) s.snl = difference_snl(np);
    const auto c = observable(np, target, j);
    const double psi_p = effective_excitation(E, np.psi).psi_p;
    s.s_comm = commutator_for(np, E, nw, c, omega);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx kp = pump_k(ev[i], c), km = pump_k(ev[n + i], c);
        // at -w the dagger partner is conj(K(w)) and vice versa
        const double se = sigma_eps(kp, std::conj(km), psi_p) + sigma_eps(km, std::conj(kp), psi_p);
        const double sp = sigma_phi(kp, std::conj(km), psi_p) + sigma_phi(km, std::conj(kp), psi_p);
        const double inv = 1.0 / s.snl;
        s.s_mu.push_back((sig[i] + sig[n + i]) * inv);
        s.s_eps_shape.push_back(se * inv);
        s.s_phi_shape.push_back(sp * inv);
        s.s_eps.push_back(nw.pump_gain * nw.s_eps * se * inv);
        const double w = omega[i];
        s.s_phi.push_back(nw.dnu_L == 0.0 ? 0.0 : nw.pump_gain * nw.s_phi(w) * sp * inv);
        s.s_comm[i] *= inv;
        s.s_j.push_back(s.s_mu.back() + s.s_eps.back() + s.s_phi.back());
        s.total.push_back(s.s_j.back() + s.s_comm[i]);
    }
    return s;
}

} // namespace

double output_snl(const NormalizedParams& np, int j)
{
    return np.total(j) / (mirror_rate(np, j) * std::cos(np.psi));
}

std::array<double, 3> difference_weights(const NormalizedParams& np)
{
    const double a = mirror_rate(np, 1) / np.total(1), b = mirror_rate(np, 2) / np.total(2);
    return {0.0, a / (a + b), b / (a + b)};
}

double difference_snl(const NormalizedParams& np)
{
    const auto w = difference_weights(np);
    return w[1] * w[1] * output_snl(np, 1) + w[2] * w[2] * output_snl(np, 2);
}

double sigma_mu(const NormalizedParams& np, double E, const NoiseWeights& nw, Target target,
                int j, double w)
{
    const auto rows = make_rows(np, nw, k_eval(np, E, w), target, j);
    double s = 0.0;
    for (int r = 0; r < rows.m; ++r) s += rows.w[r] * std::norm(rows.k[r]);
    return s;
}

double sigma_eps(cplx k, cplx kd, double psi_p)
{
    return std::norm(0.5 * (std::polar(1.0, psi_p) * k + std::polar(1.0, -psi_p) * kd));
}

double sigma_phi(cplx k, cplx kd, double psi_p)
{
    return std::norm(0.5 * (std::polar(1.0, psi_p) * k - std::polar(1.0, -psi_p) * kd));
}

SpectrumSeries single_beam_spectrum(const NormalizedParams& np, double E, const NoiseWeights& nw,
                                    Target target, int j, const std::vector<double>& omega)
{
    if (target == Target::difference)
        throw DomainError("use difference_spectrum for the difference photocurrent");
    return assemble(np, E, nw, target, j, omega);
}

std::vector<double> commutator_spectrum(const NormalizedParams& np, double E,
                                        const NoiseWeights& nw, int j,
                                        const std::vector<double>& omega)
{
    if (j != 1 && j != 2) throw DomainError("beam index must be 1 or 2");
    return commutator_for(np, E, nw, observable(np, Target::internal, j), omega);
}

SpectrumSeries difference_spectrum(const NormalizedParams& np, double E, const NoiseWeights& nw,
                                   const std::vector<double>& omega)
{
    return assemble(np, E, nw, Target::difference, 0, omega);
}

DifferenceOrigin difference_origin(const NormalizedParams& np, double E)
{
    const auto x = effective_excitation(E, np.psi);
    const auto dw = difference_weights(np);
    const double t = std::tan(np.psi), c = std::cos(np.psi);
    DifferenceOrigin o;
    o.dk0_numeric = dw[1] * origin_limit(np, E, {Quad::amp, 1, 0})
                    - dw[2] * origin_limit(np, E, {Quad::amp, 2, 0});
    o.dk0_derived = 0.5 * (1.0 - I * t / x.e_eff) * (dw[1] - dw[2]);
    const double kap = np.loss[1], d = np.delta;
    const double pref = d * kap / (1.0 - d * d);
    o.dk0_printed = (1.0 - I * t / x.e_eff) * pref * c;
    // at w = 0 the dagger partner is the plain conjugate
    o.sig_eps_numeric = sigma_eps(o.dk0_numeric, std::conj(o.dk0_numeric), x.psi_p);
    o.sig_phi_numeric = sigma_phi(o.dk0_numeric, std::conj(o.dk0_numeric), x.psi_p);
    const double s = std::sin(np.psi), cp = std::cos(x.psi_p), sp = std::sin(x.psi_p);
    o.sig_eps_printed = pref * pref * std::pow(c * cp + s / x.e_eff * sp, 2);
    o.sig_phi_printed = pref * pref * std::pow(c * sp - s / x.e_eff * cp, 2);
    return o;
}

} // namespace opo
