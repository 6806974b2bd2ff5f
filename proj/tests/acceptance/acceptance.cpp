// Acceptance suite: one PASS/FAIL line per criterion, details indented below it.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "opo/correlations.hpp"
#include "opo/gaussian.hpp"
#include "opo/oracle.hpp"
#include "opo/resonances.hpp"
#include "opo/spectra.hpp"
#include "opo/tasks.hpp"
#include "opo/transfer.hpp"

using namespace opo;
namespace fs = std::filesystem;

namespace {

struct Report {
    bool pass = true;
    std::vector<std::string> lines;
    void check(bool ok, const std::string& what)
    {
        pass = pass && ok;
        lines.push_back(std::string(ok ? "ok   " : "miss ") + what);
    }
    void note(const std::string& what) { lines.push_back("     " + what); }
};

std::string fmt(const char* f, double v)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::string fmt2(const char* f, double a, double b)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double min_dist(const std::array<cplx, 5>& set, cplx z)
{
    double best = INFINITY;
    for (const auto& s : set) best = std::min(best, std::abs(s - z));
    return best;
}

RunConfig preset_config(const std::string& name)
{
    RunConfig c;
    find_preset(name).apply(c);
    return c;
}

// --- 1 -------------------------------------------------------------------

Report oracle_equivalence()
{
    Report r;
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> ug(0.3, 6.0), ud(-0.5, 0.5), up(-1.0, 1.0), ul(0.0, 0.2),
        ue(1.1, 8.0), uw(-8.0, 8.0);
    double worst = 0.0;
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < 40; ++i) {
        const auto np = NormalizedParams::make(ug(rng), ud(rng), up(rng), {ul(rng), ul(rng), ul(rng)});
        const double E = ue(rng);
        double w = uw(rng);
        if (std::abs(w) < 1e-3) w = 0.5;
        worst = std::max(worst, oracle::max_relative_deviation(oracle::direct_k(np, E, w), k_eval(np, E, w)));
    }
    const double dt = seconds_since(t0);
    r.check(worst < 1e-10, fmt("max relative deviation over 40 draws = %.3e (< 1e-10)", worst));
    r.check(dt < 1.0, fmt("runtime %.3f s (< 1 s)", dt));
    return r;
}

// --- 2 -------------------------------------------------------------------

Report root_structure()
{
    Report r;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ug(0.1, 8.0), ud(-0.6, 0.6), up(-1.2, 1.2), ue(1.01, 12.0);
    double pair = 0.0, vieta = 0.0, min_im = INFINITY;
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < 1000; ++i) {
        const auto np = NormalizedParams::make(ug(rng), ud(rng), up(rng));
        const double E = ue(rng);
        const auto rs = roots(charpoly(np, E));
        for (const auto& w : rs.omega) {
            pair = std::max(pair, min_dist(rs.omega, mirror(w)));
            min_im = std::min(min_im, w.imag());
        }
        vieta = std::max(vieta, std::abs(rs.sum() - cplx(0, 2.0 * (np.g0 + 2.0))));
    }
    const double dt = seconds_since(t0);
    r.check(pair < 1e-8, fmt("worst (Omega, -conj Omega) pairing residual = %.3e (< 1e-8)", pair));
    r.check(min_im > 0.0, fmt("smallest Im Omega = %.3e (> 0)", min_im));
    r.check(vieta < 1e-8, fmt("worst |sum Omega - 2i(g0+2)| = %.3e (< 1e-8)", vieta));
    r.check(dt < 5.0, fmt("runtime %.3f s (< 5 s)", dt));
    return r;
}

// --- 3 -------------------------------------------------------------------

Report balanced_detuned()
{
    Report r;
    double worst = 0.0;
    for (double g0 : {0.5, 2.0, 4.0})
        for (double psi : {0.1, 0.3, 0.6, 0.9, 1.2})
            for (double E : {1.2, 2.0, 3.0, 5.0, 10.0}) {
                const auto a = charpoly(NormalizedParams::make(g0, 0.0, psi), E);
                const double e_eff = effective_excitation(E, psi).e_eff;
                const auto b = charpoly(NormalizedParams::make(g0, 0.0, 0.0), e_eff);
                for (int k = 0; k < 6; ++k)
                    worst = std::max(worst, std::abs(a.c[k] - b.c[k]) / std::max(1.0, std::abs(b.c[k])));
            }
    r.check(worst < 1e-12, fmt("worst coefficient mismatch on a 3x5x5 grid = %.3e (< 1e-12)", worst));
    return r;
}

// --- 4 -------------------------------------------------------------------

Report peninsula()
{
    Report r;
    const double delta = 0.05;
    std::vector<double> g0;
    for (int i = 0; i <= 118; ++i) g0.push_back(0.1 + 0.05 * i);
    const auto pts = emax_boundary(g0, delta);
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& p : pts)
        if (p.detached()) {
            lo = std::min(lo, p.g0);
            hi = std::max(hi, p.g0);
        }
    const bool found = std::isfinite(lo);
    r.check(found && lo <= 2.75 && hi >= 1.5,
            found ? fmt2("detached all-imaginary region found for g0 in [%.2f, %.2f]", lo, hi)
                  : std::string("no detached region found"));

    // classification agreement on the scan grid; points whose Sturm margins
    // are zero to rounding sit on the boundary itself and are counted separately
    int total = 0, disagree = 0, on_boundary = 0;
    for (double g : g0)
        for (int k = 0; k < 200; ++k) {
            const double E = 1.01 + (12.0 - 1.01) * k / 199.0;
            const auto np = NormalizedParams::make(g, delta, 0.0);
            const auto m = sturm_margins(np, E);
            const double slack = std::min({std::abs(m.first), std::abs(m.second), std::abs(m.third)});
            ++total;
            if (m.all() != numeric_dplus_imaginary(np, E)) {
                if (slack < 1e-9) ++on_boundary;
                else ++disagree;
            }
        }
    r.check(disagree == 0, "Sturm vs numeric classification: " + std::to_string(disagree) + " disagreements in "
                               + std::to_string(total) + " grid points (" + std::to_string(on_boundary)
                               + " on the boundary to rounding)");
    return r;
}

// --- 5 -------------------------------------------------------------------

Report fig1_behaviour()
{
    Report r;
    const auto np = NormalizedParams::make(2.0, 0.1, 0.3);
    std::vector<double> E;
    for (int i = 1; i <= 900; ++i) E.push_back(1.0 + 9.0 * i / 900.0);
    std::vector<std::optional<RootLabels>> lab;
    for (double e : E) lab.push_back(label_roots(roots(charpoly(np, e))));
    std::size_t first = E.size();
    for (std::size_t i = E.size(); i-- > 0;) {
        if (!lab[i]) break;
        first = i;
    }
    if (first == E.size()) {
        r.check(false, "no labelled region found");
        return r;
    }
    double w2 = 0.0, at = 0.0;
    for (std::size_t i = first; i < E.size(); ++i) {
        const double d = std::abs(lab[i]->omega2.imag() - 2.0);
        if (d > w2) {
            w2 = d;
            at = E[i];
        }
    }
    r.note(fmt("labelled crossover at E = %.4f", E[first]));
    r.check(w2 < 1e-6, fmt2("max |w2 - 2| = %.3e at E = %.3f (< 1e-6)", w2, at));
    bool mono1 = true, mono4 = true;
    double prev1 = INFINITY, prev4 = INFINITY;
    for (std::size_t i = 0; i < E.size(); ++i) {
        if (E[i] < 2.0 || !lab[i]) continue;
        const double d1 = std::abs(lab[i]->omega1.imag() - 2.0), d4 = std::abs(lab[i]->omega4.imag() - 1.0);
        mono1 = mono1 && d1 <= prev1 + 1e-12;
        mono4 = mono4 && d4 <= prev4 + 1e-12;
        prev1 = d1;
        prev4 = d4;
    }
    r.check(mono1, fmt("|w1 - 2| shrinks monotonically on [2,10]; at E=10: %.3e", prev1));
    r.check(mono4, fmt("|w4 - 1| shrinks monotonically on [2,10]; at E=10: %.3e", prev4));
    return r;
}

// --- 6 -------------------------------------------------------------------

Report relaxation()
{
    Report r;
    const auto np = NormalizedParams::make(1.0, 0.1, 0.0);
    std::vector<double> e1, e2, l1, l2;
    for (double E : {10.0, 30.0, 100.0, 300.0}) {
        const auto ex = relaxation_exact(np, E);
        const auto as = relaxation_asymptote(np, E);
        const auto li = relaxation_limit(np, E);
        e1.push_back(std::abs(as.omega1 - ex.omega1) / std::abs(ex.omega1));
        e2.push_back(std::abs(as.omega2 - ex.omega2) / std::abs(ex.omega2));
        l1.push_back(std::abs(li.omega1 - ex.omega1) / std::abs(ex.omega1));
        l2.push_back(std::abs(li.omega2 - ex.omega2) / std::abs(ex.omega2));
    }
    auto decreasing = [](const std::vector<double>& v) {
        for (std::size_t i = 1; i < v.size(); ++i)
            if (!(v[i] < v[i - 1])) return false;
        return true;
    };
    auto list = [](const std::vector<double>& v) {
        std::string s;
        for (double x : v) s += fmt(" %.3e", x);
        return s;
    };
    r.check(decreasing(e1) && e1.back() < 0.05, "Omega1 published form, errors at E=10,30,100,300:" + list(e1));
    r.check(decreasing(e2) && e2.back() < 0.05, "Omega2 published form, errors:" + list(e2));
    r.note("limit from the resonant factorization, Omega1 errors:" + list(l1));
    r.note("limit from the resonant factorization, Omega2 errors:" + list(l2));
    return r;
}

// --- 7 -------------------------------------------------------------------

Report transfer_limits()
{
    Report r;
    for (double psi : {0.0, 0.3}) {
        const auto np = NormalizedParams::make(2.0, 0.1, psi);
        const double E = 3.0;
        const cplx w(1e3, 0.0);
        const auto k = k_eval(np, E, w);
        const auto d = delta_set(np, effective_excitation(E, psi).script_e, w);
        for (int j = 1; j <= 2; ++j) {
            const int jp = 3 - j;
            const double a = std::abs(k.k0[j][j] * d.d[j] - 1.0);
            const double b = std::abs(k.k0[j][jp] * d.dd[j] * d.d[jp] - 1.0);
            const double c = std::abs(k.k0[j][0] * d.dd[j] * d.d[0] - 1.0);
            const std::string tag = fmt("psi=%.1f", psi) + " j=" + std::to_string(j);
            r.check(a < 5e-3, tag + fmt(": |K0_jj D_j - 1| = %.3e", a));
            r.check(b < 5e-3, tag + fmt(": |K0_jj' D_j^+ D_j' - 1| = %.3e", b));
            r.check(c < 5e-3, tag + fmt(": |K0_j0 D_j^+ D_0 - 1| = %.3e", c)
                                  + fmt(" (product phase %.4f rad)", std::arg(k.k0[j][0] * d.dd[j] * d.d[0])));
        }
    }
    const auto np = NormalizedParams::make(2.0, 0.1, 0.3);
    const auto rd = resolve_low_frequency_reading(np, 3.0);
    r.note(std::string("low-frequency denominator reading resolved: ") + (rd.eeff_reading ? "E_eff" : "E_eff - 1")
           + fmt(" (phase errors %.2e", rd.phase_err_eeff) + fmt(" vs %.2e)", rd.phase_err_eeff_m1));
    const double phase_ok = rd.eeff_reading ? rd.phase_err_eeff : rd.phase_err_eeff_m1;
    r.check(phase_ok < 1e-6, fmt("K0_j0(0) phase matches the resolved reading to %.2e", phase_ok));
    r.check(std::abs(rd.scale - 1.0) < 1e-6,
            fmt("K0_j0(0) magnitude / published magnitude = %.6f", rd.scale));
    return r;
}

// --- 8 -------------------------------------------------------------------

Report spectra()
{
    Report r;
    {
        const auto np = NormalizedParams::make(2.0, 0.1, 0.0);
        for (int j = 1; j <= 2; ++j) {
            const auto s = single_beam_spectrum(np, 3.0, noise_weights(np, 3.0), Target::output, j, {1e3});
            r.check(std::abs(s.s_mu[0] - 1.0) < 1e-4,
                    "(a) beam " + std::to_string(j) + fmt(" output S_mu(1e3) = %.8f", s.s_mu[0]));
        }
    }
    {
        const auto np = NormalizedParams::make(2.0, 0.0, 0.0);
        const auto s = difference_spectrum(np, 3.0, noise_weights(np, 3.0), {0.0});
        r.check(s.s_mu[0] < 1e-8, fmt("(b) balanced lossless S_d(0) = %.3e (< 1e-8)", s.s_mu[0]));
    }
    // (c) S_j = S_mu + pump parts is the photocurrent spectrum the figures show
    const auto top = preset_config("fig6-top");
    const auto w = top.omega.points();
    for (double psi : {0.0, 0.25, 0.5}) {
        const auto np = NormalizedParams::make(top.np.g0, top.np.delta, psi, top.np.loss);
        const auto s = single_beam_spectrum(np, top.E, noise_weights(np, top.E, top.dnu_L, top.s_eps),
                                            Target::output, top.beam, w);
        const bool want_below = psi < 0.4;
        const bool ok = want_below ? s.s_j[0] < 1.0 : s.s_j[0] >= 1.0;
        r.check(ok, fmt("(c) fig6-top psi=%.2f", psi) + fmt(": S_j(0) = %.4f", s.s_j[0])
                        + (want_below ? " (expected < 1)" : " (expected >= 1)"));
    }
    for (const char* name : {"fig6-top", "fig6-bottom"}) {
        const auto c = preset_config(name);
        const auto grid = c.omega.points();
        for (double psi : {0.0, 0.25, 0.5}) {
            const auto np = NormalizedParams::make(c.np.g0, c.np.delta, psi, c.np.loss);
            const auto rs = roots(charpoly(np, c.E));
            // least-damped complex pole with positive real part
            std::optional<cplx> om2;
            for (int k = 0; k < 5; ++k)
                if (rs.cls[k] == RootClass::complex_pair && rs.omega[k].real() > 0
                    && (!om2 || rs.omega[k].imag() < om2->imag()))
                    om2 = rs.omega[k];
            if (!om2) continue;
            const auto s = single_beam_spectrum(np, c.E, noise_weights(np, c.E), Target::output, c.beam, grid);
            std::size_t best = 0;
            for (std::size_t i = 0; i < grid.size(); ++i)
                if (grid[i] > 0 && (best == 0 || s.s_j[i] > s.s_j[best])) best = i;
            const double gap = std::abs(grid[best] - om2->real());
            r.check(gap <= om2->imag(), std::string("(c) ") + name + fmt(" psi=%.2f", psi)
                                            + fmt2(": peak at %.3f, Re Omega2 = %.3f", grid[best], om2->real())
                                            + fmt(", w2 = %.3f", om2->imag()));
        }
    }
    {
        const auto c = preset_config("fig8-top");
        const auto s = difference_spectrum(c.np, c.E, noise_weights(c.np, c.E, c.dnu_L, c.s_eps), c.omega.points());
        const double worst = *std::max_element(s.s_j.begin(), s.s_j.end());
        r.check(worst < 1.0, fmt("(c) fig8-top: max S_d over the band = %.4f (< 1)", worst));
        r.note(fmt("fig8-top: max of S_d + S_comm as typeset = %.4f",
                   *std::max_element(s.total.begin(), s.total.end())));
    }
    return r;
}

// --- 9 -------------------------------------------------------------------

Report duality()
{
    Report r;
    struct Case {
        std::string name;
        NormalizedParams np;
        double E;
    };
    const auto f5 = preset_config("fig5");
    const auto t6 = preset_config("fig6-top");
    const auto b6 = preset_config("fig6-bottom");
    const std::vector<Case> cases{
        {"fig5", f5.np, f5.E},
        {"fig6-top psi=0.25", NormalizedParams::make(t6.np.g0, t6.np.delta, 0.25, t6.np.loss), t6.E},
        {"fig6-bottom psi=0.25", NormalizedParams::make(b6.np.g0, b6.np.delta, 0.25, b6.np.loss), b6.E},
    };
    std::vector<double> w;
    for (int i = 0; i <= 48; ++i) w.push_back(0.2 + 0.1 * i);
    for (const auto& c : cases) {
        const auto nw = noise_weights(c.np, c.E);
        const KernelSet ks(c.np, c.E, nw);
        const double T = 60.0 / ks.slowest_rate();
        const auto ft = cosine_transform([&](double t) { return -2.0 * ks(KernelKind::mumu, 1, 1, t).imag(); }, w,
                                         T, 40000);
        const auto sp = single_beam_spectrum(c.np, c.E, nw, Target::internal, 1, w);
        double worst = 0.0;
        for (std::size_t i = 0; i < w.size(); ++i) worst = std::max(worst, std::abs(ft[i] / sp.s_mu[i] - 1.0));
        r.check(worst < 0.01, c.name + fmt(": max relative deviation on [0.2,5] = %.3e (< 1%%)", worst));
    }
    return r;
}

// --- 10 ------------------------------------------------------------------

Report commutator_structure()
{
    Report r;
    const auto t6 = preset_config("fig6-top");
    const std::vector<double> taus = [] {
        std::vector<double> v;
        for (int i = 0; i <= 200; ++i) v.push_back(0.05 * i);
        return v;
    }();
    auto worst_abc = [&](double psi) {
        const auto np = NormalizedParams::make(t6.np.g0, t6.np.delta, psi, t6.np.loss);
        const KernelSet ks(np, t6.E, noise_weights(np, t6.E));
        double m = 0.0, d = 0.0;
        for (double t : taus) {
            const auto c = commutators(ks, 1, 1.0, t);
            m = std::max({m, std::abs(c.phiphi), std::abs(c.mumu), std::abs(c.anti)});
            d = std::max(d, std::abs(c.phimu));
        }
        return std::pair{m, d};
    };
    const auto [res, res_d] = worst_abc(0.0);
    const auto [det, det_d] = worst_abc(0.1);
    r.check(res < 1e-10, fmt("psi=0: max |(a)|,|(b)|,|(c)| over tau in [0,10] = %.3e (< 1e-10)", res));
    r.note(fmt("psi=0: max |(d)| = %.3e (survives at resonance)", res_d));
    r.check(det > 1e-6, fmt("psi=0.1: max |(a)|,|(b)|,|(c)| = %.3e (nonzero)", det));

    const auto f5 = preset_config("fig5");
    for (double se : {1.5, 4.0}) {
        const double E = excitation_from_script(se, f5.np.psi);
        const bool ring = underdamped(roots(charpoly(f5.np, E)));
        const KernelSet ks(f5.np, E, noise_weights(f5.np, E));
        int changes = 0;
        double prev = 0.0;
        for (int i = 1; i <= 5000; ++i) {
            const double v = commutators(ks, 1, 1.0, 0.002 * i).mumu.imag();
            if (i > 1 && v * prev < 0) ++changes;
            prev = v;
        }
        const bool expected_ring = se > 2.0;
        r.check(ring == expected_ring && (ring ? changes >= 2 : changes <= 1),
                fmt("fig5 script_e=%.1f: poles ", se) + (ring ? "ring" : "do not ring") + ", [mu,mu] changes sign "
                    + std::to_string(changes) + " times on (0,10]");
    }
    return r;
}

// --- 11 ------------------------------------------------------------------

Report gaussian_module()
{
    Report r;
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> un(std::log(0.5), std::log(4.0)), uk(0.5, 2.0);
    double trace_err = 0.0, printed_err = 0.0, exact_err = 0.0, conj = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double a = std::exp(un(rng)), b = std::exp(un(rng)), k = uk(rng);
        gaussian::OracleResult o;
        try {
            o = gaussian::fock_oracle(a, b, k, 200);
        } catch (const NumericalError&) {
            o = gaussian::fock_oracle(a, b, k, 400);
        }
        const double t = gaussian::trace(gaussian::disentangle(a, b));
        trace_err = std::max(trace_err, std::abs(t / o.trace_single - 1.0));
        auto merr = [&](const gaussian::Moments& m) {
            return std::max({std::abs(m.mu2 / o.moments.mu2 - 1.0), std::abs(m.phi2 / o.moments.phi2 - 1.0),
                             std::abs(m.comm - o.moments.comm) / std::abs(o.moments.comm)});
        };
        printed_err = std::max(printed_err, merr(gaussian::moments_printed(a, b, k)));
        exact_err = std::max(exact_err, merr(gaussian::moments_exact(a, b, k)));
        conj = std::max(conj, o.conj_residual);
    }
    r.check(trace_err < 1e-6, fmt("trace formula vs Fock oracle, 100 draws: max relative error %.3e", trace_err));
    r.check(printed_err < 1e-6, fmt("published moment relations vs Fock oracle: max relative error %.3e", printed_err));
    r.note(fmt("thermal-oscillator moments vs Fock oracle: max relative error %.3e", exact_err));
    r.check(conj < 1e-6, fmt("squeeze-to-thermal conjugation residual %.3e", conj));
    return r;
}

// --- 12 ------------------------------------------------------------------

Report monte_carlo()
{
    Report r;
    const auto t0 = std::chrono::steady_clock::now();
    for (const char* name : {"sde-a", "sde-b"}) {
        auto c = preset_config(name);
        c.sde.seed = 1;
        c.sde.n_steps = 1'000'000;
        const auto nw = noise_weights(c.np, c.E);
        const auto run = oracle::sde_psd(c.np, c.E, nw, c.sde);
        for (int j = 1; j <= 2; ++j) {
            const auto chi = oracle::chi_square(run, c.np, c.E, nw, j);
            r.check(chi.reduced >= 0.5 && chi.reduced <= 1.5,
                    std::string(name) + " beam " + std::to_string(j) + fmt(": reduced chi2 = %.3f", chi.reduced)
                        + " over " + std::to_string(chi.points) + " bins (seed 1, 1e6 steps)");
        }
    }
    const double dt = seconds_since(t0);
    r.check(dt < 60.0, fmt("runtime %.2f s (< 60 s)", dt));
    return r;
}

// --- 13 ------------------------------------------------------------------

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

Report determinism()
{
    Report r;
    const auto dir = fs::temp_directory_path() / ("opo_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::vector<std::string> runs{"roots",      "boundary --preset fig2", "fig1",  "fig3",
                                        "fig4",       "fig5",                   "fig6",  "fig7-bottom",
                                        "fig8",       "transfer", "direct", "relaxation",
                                        "correlations", "commutator",           "linewidth", "gaussian",
                                        "sde --preset sde-b --seed 1"};
    for (const auto& args : runs) {
        std::string out[3];
        bool ok = true;
        // default thread count twice, then a single worker
        for (int k = 0; k < 3; ++k) {
            const auto file = dir / ("run" + std::to_string(k) + ".csv");
            const std::string env = k == 2 ? "OPO_THREADS=1 " : "";
            const std::string cmd = env + OPO_CLI_PATH + std::string(" ") + args + " --out " + file.string();
            const int st = std::system(cmd.c_str());
            ok = ok && WIFEXITED(st) && WEXITSTATUS(st) == 0;
            out[k] = slurp(file);
        }
        r.check(ok && !out[0].empty() && out[0] == out[1] && out[0] == out[2],
                "opo " + args + (ok ? "" : " (failed to run)"));
    }
    fs::remove_all(dir);
    return r;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Report()>>> criteria{
        {"oracle equivalence", oracle_equivalence},
        {"root structure", root_structure},
        {"balanced-detuned equivalence", balanced_detuned},
        {"detached region at delta=0.05", peninsula},
        {"labelled-root behaviour at psi=0.3", fig1_behaviour},
        {"large-E relaxation asymptotics", relaxation},
        {"transfer limits", transfer_limits},
        {"spectra", spectra},
        {"kernel/spectrum duality", duality},
        {"commutator structure", commutator_structure},
        {"Gaussian module", gaussian_module},
        {"Monte-Carlo", monte_carlo},
        {"determinism", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Report rep;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            rep = criteria[i].second();
        } catch (const std::exception& e) {
            rep.pass = false;
            rep.lines.push_back(std::string("error ") + e.what());
        }
        const double dt = seconds_since(t0);
        std::printf("%s criterion %zu: %s (%.2f s)\n", rep.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    dt);
        for (const auto& l : rep.lines) std::printf("    %s\n", l.c_str());
        std::fflush(stdout);
        if (!rep.pass) ++failed;
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
