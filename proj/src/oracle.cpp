#include "opo/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "opo/parallel.hpp"
#include "opo/resonances.hpp"

namespace opo::oracle {

namespace {

using Mat6 = Eigen::Matrix<cplx, 6, 6>;
using Vec6 = Eigen::Matrix<cplx, 6, 1>;

Mat6 to_eigen(const LinearSystem6& s)
{
    Mat6 m;
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) m(r, c) = s.m[r][c];
    return m;
}

std::array<std::array<cplx, 6>, 6> system_matrix(const NormalizedParams& np, double E, cplx w)
{
    const auto x = effective_excitation(E, np.psi);
    const auto D = delta_set(np, x.script_e, w);
    std::array<std::array<cplx, 6>, 6> m{};
    // a_j: Delta_j a_j - a0 - a_j'^dag = Z_j
    m[0] = {D.d[1], 0.0, -1.0, 0.0, -1.0, 0.0};
    m[1] = {0.0, D.d[2], -1.0, -1.0, 0.0, 0.0};
    // a0: Delta0 a0 + a1 + a2 = Z0
    m[2] = {1.0, 1.0, D.d[0], 0.0, 0.0, 0.0};
    m[3] = {0.0, -1.0, 0.0, D.dd[1], 0.0, -1.0};
    m[4] = {-1.0, 0.0, 0.0, 0.0, D.dd[2], -1.0};
    m[5] = {0.0, 0.0, 0.0, 1.0, 1.0, D.dd[0]};
    return m;
}

Eigen::PartialPivLU<Mat6> factor(const Mat6& m)
{
    Eigen::PartialPivLU<Mat6> lu(m);
    if (!(lu.rcond() > 1e-13)) throw NumericalError("direct solve: frequency is at a resonance");
    return lu;
}

} // namespace

const char* injection_name(Injection inj)
{
    switch (inj) {
    case Injection::z1: return "z1";
    case Injection::z2: return "z2";
    case Injection::z0: return "z0";
    case Injection::z1_dag: return "z1_dag";
    case Injection::z2_dag: return "z2_dag";
    case Injection::z0_dag: return "z0_dag";
    case Injection::pump_eps: return "pump_eps";
    case Injection::pump_phi: return "pump_phi";
    }
    return "?";
}

LinearSystem6 assemble(const NormalizedParams& np, double E, cplx w, Injection inj)
{
    LinearSystem6 s;
    s.m = system_matrix(np, E, w);
    const int idx = int(inj);
    if (idx < 6) {
        s.rhs[idx] = 1.0;
        return s;
    }
    // pump fluctuations enter the pump row scaled by E/(script_e - 1) e^{i psi_p}
    const auto x = effective_excitation(E, np.psi);
    const cplx c = E / (x.script_e - 1.0) * std::polar(1.0, x.psi_p);
    const cplx f = inj == Injection::pump_eps ? cplx(1.0) : I;
    s.rhs[2] = f * c;
    s.rhs[5] = std::conj(f * c);
    return s;
}

double dagger_residual(const NormalizedParams& np, double E, cplx w)
{
    const auto a = system_matrix(np, E, w);
    const auto b = system_matrix(np, E, mirror(w));
    double r = 0.0;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            r = std::max(r, std::abs(a[i][j] - std::conj(b[(i + 3) % 6][(j + 3) % 6])));
    return r;
}

std::array<cplx, 6> direct_solve(const NormalizedParams& np, double E, cplx w, Injection inj)
{
    const auto s = assemble(np, E, w, inj);
    Vec6 rhs;
    for (int i = 0; i < 6; ++i) rhs(i) = s.rhs[i];
    const Vec6 x = factor(to_eigen(s)).solve(rhs);
    std::array<cplx, 6> out{};
    for (int i = 0; i < 6; ++i) out[i] = x(i);
    return out;
}

TransferEval direct_k(const NormalizedParams& np, double E, cplx w)
{
    LinearSystem6 s;
    s.m = system_matrix(np, E, w);
    const Mat6 inv = factor(to_eigen(s)).inverse();
    // unknown order (a1, a2, a0, ...) -> mode index (1, 2, 0)
    constexpr int col[3] = {2, 0, 1};
    TransferEval t;
    t.route = Route::general;
    t.omega = w;
    for (int j = 1; j <= 2; ++j)
        for (int k = 0; k < 3; ++k) {
            t.k0[j][k] = inv(j - 1, col[k]) + inv(j + 2, col[k]);
            t.kpi[j][k] = inv(j - 1, col[k]) - inv(j + 2, col[k]);
        }
    for (int j = 1; j <= 2; ++j) t.k0[0][j] = inv(2, col[j]) + inv(5, col[j]);
    return t;
}

double max_relative_deviation(const TransferEval& a, const TransferEval& b, double floor)
{
    double m = 0.0;
    for (const auto& x : all_kindex()) {
        const cplx u = a.get(x), v = b.get(x);
        const double scale = std::max({std::abs(u), std::abs(v), floor});
        m = std::max(m, std::abs(u - v) / scale);
    }
    return m;
}

double max_stable_step(const NormalizedParams& np, double E)
{
    return 0.01 / std::max({1.0, np.g0, std::sqrt(2.0 * E * np.g0)});
}

double expected_psd(const NormalizedParams& np, double E, const NoiseWeights& nw, int j, double w)
{
    return 0.25 * (sigma_mu(np, E, nw, Target::internal, j, w)
                   + sigma_mu(np, E, nw, Target::internal, j, -w));
}

namespace {

struct ChunkOut {
    std::vector<std::array<double, 2>> sum;   // per bin
    std::array<double, 2> var_sum{}, parseval_sum{};
    std::int64_t var_count = 0;
    int segments = 0;
    std::vector<std::array<cplx, 3>> trajectory;
};

void check_finite(const std::array<cplx, 3>& a)
{
    for (const auto& v : a)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) > 1e12)
            throw NumericalError("SDE trajectory blew up; reduce the step size");
}

} // namespace

SdeRun sde_psd(const NormalizedParams& np, double E, const NoiseWeights& nw, const SdeConfig& cfg)
{
    np.validate();
    const auto x = effective_excitation(E, np.psi);
    if (!(x.script_e > 1.0)) throw DomainError("SDE oracle needs an operating point above threshold");
    if (cfg.chunks < 1 || cfg.segment < 64 || cfg.n_steps < 1) throw DomainError("invalid SDE run configuration");
    if (cfg.drive_scale < 0.0) throw DomainError("drive scale must be non-negative");
    const double dt_max = max_stable_step(np, E);
    const double dt = cfg.dt > 0.0 ? cfg.dt : dt_max;
    if (dt > dt_max * (1.0 + 1e-12)) throw DomainError("SDE step exceeds the stability bound");

    const auto rs = roots(charpoly(np, E));
    double slow = INFINITY;
    for (int r = 0; r < 5; ++r)
        if (rs.cls[r] != RootClass::origin) slow = std::min(slow, rs.omega[r].imag());
    const std::int64_t per_chunk = cfg.n_steps / cfg.chunks;
    const double T = double(per_chunk * cfg.chunks) * dt;
    if (T * slow < 1e3) throw DomainError("SDE run shorter than 1000 correlation times");
    const int L = cfg.segment, hop = L / 2;
    if (per_chunk < L) throw DomainError("SDE chunk shorter than one Welch segment");
    const double burn = cfg.burn_in > 0.0 ? cfg.burn_in : 20.0 / slow;
    const std::int64_t n_burn = std::int64_t(std::ceil(burn / dt));

    const cplx k1 = np.kappa(1), k2 = np.kappa(2);
    const double g0 = np.g0;
    const cplx pump = (x.script_e - 1.0) * std::polar(1.0, -np.psi);
    std::array<double, 3> amp{};
    for (int k = 0; k < 3; ++k) amp[k] = cfg.drive_scale * std::sqrt(nw.zeta[k] * dt / 2.0);

    std::vector<double> win(L);
    for (int n = 0; n < L; ++n) win[n] = 0.5 * (1.0 - std::cos(2.0 * M_PI * n / L));
    const double w2 = std::inner_product(win.begin(), win.end(), win.begin(), 0.0);
    // correlation of periodograms from half-overlapping segments
    const double overlap = std::inner_product(win.begin() + hop, win.end(), win.begin(), 0.0) / w2;
    const int nbin = L / 2 + 1;

    std::vector<ChunkOut> out(cfg.chunks);
    parallel_for(std::size_t(cfg.chunks), [&](std::size_t c) {
        std::seed_seq seq{std::uint32_t(cfg.seed), std::uint32_t(cfg.seed >> 32), std::uint32_t(c)};
        std::mt19937_64 gen(seq);
        std::normal_distribution<double> nd;
        std::array<cplx, 3> a{};
        auto step = [&] {
            cplx dz[3];
            for (int k = 0; k < 3; ++k) {
                const double re = nd(gen), im = nd(gen);
                dz[k] = amp[k] * cplx(re, im);
            }
            const cplx a1 = a[1], a2 = a[2], a0 = a[0];
            a[1] += k1 * ((-a1 + std::conj(a2) + a0) * dt + dz[1]);
            a[2] += k2 * ((-a2 + std::conj(a1) + a0) * dt + dz[2]);
            a[0] += g0 * ((-a0 - pump * (a1 + a2)) * dt + pump * dz[0]);
        };
        for (std::int64_t n = 0; n < n_burn; ++n) {
            step();
            if ((n & 1023) == 0) check_finite(a);
        }
        auto& o = out[c];
        std::vector<std::array<double, 2>> mu(per_chunk);
        if (cfg.record_trajectory && c == 0) o.trajectory.resize(per_chunk);
        for (std::int64_t n = 0; n < per_chunk; ++n) {
            step();
            if ((n & 1023) == 0) check_finite(a);
            mu[n] = {a[1].real(), a[2].real()};
            if (!o.trajectory.empty()) o.trajectory[n] = a;
            for (int j = 0; j < 2; ++j) o.var_sum[j] += mu[n][j] * mu[n][j];
        }
        o.var_count = per_chunk;
        o.sum.assign(nbin, {0.0, 0.0});
        Eigen::FFT<double> fft;
        std::vector<double> buf(L);
        std::vector<cplx> spec;
        for (std::int64_t s0 = 0; s0 + L <= per_chunk; s0 += hop) {
            for (int j = 0; j < 2; ++j) {
                for (int n = 0; n < L; ++n) buf[n] = win[n] * mu[s0 + n][j];
                fft.fwd(spec, buf);
                double total = 0.0;
                for (int b = 0; b < L; ++b) total += std::norm(spec[b]);
                o.parseval_sum[j] += total / (L * w2);
                for (int b = 0; b < nbin; ++b) {
                    const double p = dt * std::norm(spec[b]) / w2;
                    o.sum[b][j] += p;
                }
            }
            ++o.segments;
        }
    });

    SdeRun run;
    run.dt = dt;
    run.duration = T;
    run.seed = cfg.seed;
    for (int k = 0; k < 3; ++k) run.zeta[k] = cfg.drive_scale * cfg.drive_scale * nw.zeta[k];
    std::vector<std::array<double, 2>> sum(nbin, {0.0, 0.0});
    std::array<double, 2> var_sum{}, pars{};
    std::int64_t var_count = 0;
    for (const auto& o : out) {
        run.segments += o.segments;
        for (int b = 0; b < nbin; ++b)
            for (int j = 0; j < 2; ++j) sum[b][j] += o.sum[b][j];
        for (int j = 0; j < 2; ++j) {
            var_sum[j] += o.var_sum[j];
            pars[j] += o.parseval_sum[j];
        }
        var_count += o.var_count;
    }
    if (cfg.record_trajectory) run.trajectory = std::move(out[0].trajectory);
    const double M = run.segments;
    run.m_eff = M / (1.0 + 2.0 * overlap * overlap);
    run.omega.resize(nbin);
    for (int b = 0; b < nbin; ++b) run.omega[b] = 2.0 * M_PI * b / (L * dt);
    for (int j = 0; j < 2; ++j) {
        run.psd[j].resize(nbin);
        run.stderr_[j].resize(nbin);
        for (int b = 0; b < nbin; ++b) {
            // each periodogram bin is exponentially distributed: sd = mean
            run.psd[j][b] = sum[b][j] / M;
            run.stderr_[j][b] = run.psd[j][b] / std::sqrt(run.m_eff);
        }
        run.variance[j] = var_sum[j] / double(var_count);
        run.parseval[j] = pars[j] / M;
    }
    return run;
}

ChiSquare chi_square(const SdeRun& run, const NormalizedParams& np, double E,
                     const NoiseWeights& nw, int j, double w_lo, double w_hi)
{
    if (j != 1 && j != 2) throw DomainError("beam index must be 1 or 2");
    ChiSquare c;
    double acc = 0.0;
    for (std::size_t b = 0; b < run.omega.size(); ++b) {
        const double w = run.omega[b];
        if (w < w_lo || w > w_hi) continue;
        const double expect = expected_psd(np, E, nw, j, w);
        const double se = expect / std::sqrt(run.m_eff);
        if (!(se > 0.0)) throw NumericalError("analytic spectrum vanishes inside the chi-square band");
        const double r = (run.psd[j - 1][b] - expect) / se;
        acc += r * r;
        ++c.points;
    }
    if (c.points == 0) throw DomainError("no SDE bins inside the chi-square band");
    c.reduced = acc / c.points;
    return c;
}

double peak_frequency(const SdeRun& run, int j, double w_lo, double w_hi)
{
    double best = -1.0, at = NAN;
    for (std::size_t b = 0; b < run.omega.size(); ++b) {
        const double w = run.omega[b];
        if (w < w_lo || w > w_hi) continue;
        if (run.psd[j - 1][b] > best) {
            best = run.psd[j - 1][b];
            at = w;
        }
    }
    return at;
}

} // namespace opo::oracle
