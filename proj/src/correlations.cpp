#include "opo/correlations.hpp"

#include <cmath>
#include <limits>

#include "opo/parallel.hpp"

namespace opo {

const char* kernel_name(KernelKind k)
{
    switch (k) {
    case KernelKind::phiphi: return "phiphi";
    case KernelKind::mumu: return "mumu";
    case KernelKind::muphi: return "muphi";
    case KernelKind::phimu: return "phimu";
    }
    return "?";
}

namespace {

Quad left_quad(KernelKind k) { return (k == KernelKind::phiphi || k == KernelKind::phimu) ? Quad::phase : Quad::amp; }
Quad right_quad(KernelKind k) { return (k == KernelKind::phiphi || k == KernelKind::muphi) ? Quad::phase : Quad::amp; }

void check_beam(int j)
{
    if (j != 1 && j != 2) throw DomainError("beam index must be 1 or 2");
}

} // namespace

KernelSet::KernelSet(const NormalizedParams& np, double E, const NoiseWeights& nw)
    : table_(residues(np, E))
{
    std::array<TransferEval, 5> at{};
    for (int r = 0; r < 5; ++r) at[r] = k_eval(np, E, std::conj(table_.poles.omega[r]));
    for (int kind = 0; kind < 4; ++kind) {
        const auto kk = KernelKind(kind);
        for (int j = 1; j <= 2; ++j)
            for (int l = 1; l <= 2; ++l)
                for (int r = 0; r < 5; ++r) {
                    cplx acc = 0.0;
                    for (int k = 0; k < 3; ++k) {
                        const cplx res = table_.res[table_.slot({left_quad(kk), j, k})][r];
                        const cplx val = at[r].get({right_quad(kk), l, k});
                        acc += nw.zeta[k] * res * std::conj(val);
                    }
                    coef_[kind][j - 1][l - 1][r] = acc;
                }
    }
}

cplx KernelSet::operator()(KernelKind kind, int j, int l, double tau) const
{
    check_beam(j);
    check_beam(l);
    if (tau < 0.0) throw DomainError("kernels are defined for tau >= 0");
    const auto& c = coef_[int(kind)][j - 1][l - 1];
    cplx acc = 0.0;
    for (int r = 0; r < 5; ++r) acc += std::exp(I * table_.poles.omega[r] * tau) * c[r];
    return acc;
}

cplx KernelSet::derivative(KernelKind kind, int j, int l, double tau) const
{
    check_beam(j);
    check_beam(l);
    const auto& c = coef_[int(kind)][j - 1][l - 1];
    cplx acc = 0.0;
    for (int r = 0; r < 5; ++r) {
        const cplx o = table_.poles.omega[r];
        acc += I * o * std::exp(I * o * tau) * c[r];
    }
    return acc;
}

double KernelSet::slowest_rate() const
{
    double m = std::numeric_limits<double>::infinity();
    for (const auto& o : table_.poles.omega) m = std::min(m, o.imag());
    return m;
}

CorrelationKernel kernels(const KernelSet& ks, int j, int l, const std::vector<double>& tau)
{
    CorrelationKernel ck;
    ck.j = j;
    ck.l = l;
    ck.tau = tau;
    const std::size_t n = tau.size();
    ck.phiphi.resize(n);
    ck.mumu.resize(n);
    ck.muphi.resize(n);
    ck.phimu.resize(n);
    parallel_for(n, [&](std::size_t i) {
        ck.phiphi[i] = ks(KernelKind::phiphi, j, l, tau[i]);
        ck.mumu[i] = ks(KernelKind::mumu, j, l, tau[i]);
        ck.muphi[i] = ks(KernelKind::muphi, j, l, tau[i]);
        ck.phimu[i] = ks(KernelKind::phimu, j, l, tau[i]);
    });
    return ck;
}

LinewidthReport linewidth(const NormalizedParams& np, double E, double c_sq, double dnu_L, int j)
{
    check_beam(j);
    if (!(E > 1.0)) throw DomainError("linewidth needs E > 1");
    if (!(c_sq > 0.0)) throw DomainError("linewidth needs C^2 > 0");
    const auto x = effective_excitation(E, np.psi);
    const double c = std::cos(np.psi), d2 = np.delta * np.delta;
    LinewidthReport r;
    const cplx amp = kpi_j0_origin(np, E, j) * (E * c / (x.e_eff - 1.0));
    r.f_phi = std::norm(amp);
    r.spontaneous = (1.0 - d2) * (1.0 - d2) / (8.0 * c_sq * std::pow(c, 4));
    r.dnu = r.f_phi * dnu_L + r.spontaneous;
    return r;
}

double spontaneous_floor_from_residue(const NormalizedParams& np, double c_sq)
{
    const double z = 2.0 * std::cos(np.psi);
    const double s = z * std::norm(kpi_origin_residue(np, 1, 1)) + z * std::norm(kpi_origin_residue(np, 1, 2));
    return s / (8.0 * c_sq);
}

Correlations correlations(const KernelSet& ks, int j, int l, double c_sq, double dnu, double tau)
{
    if (!(c_sq > 0.0)) throw DomainError("correlations need C^2 > 0");
    const cplx pre = I / (4.0 * c_sq);
    Correlations c;
    c.phase_structure = pre * (ks(KernelKind::phiphi, j, j, tau) - ks(KernelKind::phiphi, j, j, 0.0))
                        - dnu * tau;
    const cplx kmm = ks(KernelKind::mumu, j, j, tau);
    c.mumu = pre * kmm;
    c.cross = (ks(KernelKind::muphi, j, l, tau) + ks(KernelKind::phimu, j, l, tau)) / (4.0 * c_sq);
    // <mu(tau)mu(0)> - <mu(0)mu(tau)> = 2i Im<...> must equal -<[mu(0),mu(tau)]>
    const cplx comm = -I / (2.0 * c_sq) * kmm.real();
    c.commutator_mismatch = std::abs(2.0 * I * c.mumu.imag() + comm);
    if (c.commutator_mismatch > 1e-10 * (1.0 + std::abs(kmm) / c_sq))
        throw NumericalError("correlation imaginary part disagrees with the commutator");
    return c;
}

namespace {

Commutators assemble_commutators(const KernelSet& ks, int j, double c_sq, double tau,
                                 KernelKind cross, cplx cross_factor)
{
    if (!(c_sq > 0.0)) throw DomainError("commutators need C^2 > 0");
    const cplx kpm = cross_factor * ks(cross, j, j, tau);
    Commutators c;
    c.phiphi = I / (2.0 * c_sq) * ks(KernelKind::phiphi, j, j, tau).real();
    c.mumu = -I / (2.0 * c_sq) * ks(KernelKind::mumu, j, j, tau).real();
    c.anti = kpm.imag() / (2.0 * c_sq);
    c.phimu = I / (2.0 * c_sq) * kpm.real();
    return c;
}

} // namespace

Commutators commutators(const KernelSet& ks, int j, double c_sq, double tau)
{
    // mu(tau) carries the residues, so the cross term is built on K_muphi
    return assemble_commutators(ks, j, c_sq, tau, KernelKind::muphi, -I);
}

Commutators commutators_as_printed(const KernelSet& ks, int j, double c_sq, double tau)
{
    return assemble_commutators(ks, j, c_sq, tau, KernelKind::phimu, 1.0);
}

FieldCorrelations field_correlations(const KernelSet& ks, const SteadyState& st, int j,
                                     double c_sq, double dnu, double tau)
{
    check_beam(j);
    const int jp = 3 - j;
    const cplx pre = I / (4.0 * c_sq);
    const double decay = std::exp(-dnu * tau);
    const double rj = j == 1 ? st.r1 : st.r2, rjp = j == 1 ? st.r2 : st.r1;
    auto K = [&](KernelKind k, int a, int b, double t) { return ks(k, a, b, t); };
    FieldCorrelations f;
    f.phase_factor = decay * (1.0 + pre * (K(KernelKind::phiphi, j, j, tau) - K(KernelKind::phiphi, j, j, 0.0)));
    f.phase_factor_cross = decay * (1.0 + pre * (K(KernelKind::phiphi, j, jp, tau) - K(KernelKind::phiphi, j, jp, 0.0)));
    f.first_order = rj * rj * decay
                    * (1.0 + pre * (K(KernelKind::mumu, j, j, tau) + K(KernelKind::phiphi, j, j, tau)
                                    - K(KernelKind::phiphi, j, j, 0.0) - K(KernelKind::muphi, j, j, tau)
                                    - K(KernelKind::phimu, j, j, tau)));
    f.pair = rj * rjp * decay
             * (1.0 + pre * (K(KernelKind::mumu, j, jp, tau) + K(KernelKind::phiphi, j, jp, tau)
                             - K(KernelKind::phiphi, j, jp, 0.0) - K(KernelKind::muphi, j, jp, tau)
                             - K(KernelKind::phimu, j, jp, tau)));
    return f;
}

IntensityVariance intensity_variance(const KernelSet& ks, int j, double tau)
{
    IntensityVariance v;
    // 2<mu mu + mu mu> -> 2 Re(i K_mumu); i<[phi(0),mu(tau)]> -> -Im K_muphi
    v.mu_term = 2.0 * (I * ks(KernelKind::mumu, j, j, tau)).real();
    v.comm_term = -ks(KernelKind::muphi, j, j, tau).imag();
    return v;
}

std::vector<double> cosine_transform(const std::function<double(double)>& f,
                                     const std::vector<double>& omega, double t_max, int n_steps)
{
    if (n_steps < 2 || n_steps % 2) throw DomainError("Simpson rule needs an even step count");
    const double h = t_max / n_steps;
    std::vector<double> fv(n_steps + 1);
    for (int i = 0; i <= n_steps; ++i) fv[i] = f(i * h);
    std::vector<double> out(omega.size());
    for (std::size_t k = 0; k < omega.size(); ++k) {
        double acc = 0.0;
        for (int i = 0; i <= n_steps; ++i) {
            const double wgt = (i == 0 || i == n_steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
            acc += wgt * fv[i] * std::cos(omega[k] * i * h);
        }
        out[k] = 2.0 * acc * h / 3.0;
    }
    return out;
}

} // namespace opo
