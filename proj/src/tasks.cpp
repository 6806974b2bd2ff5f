#include "opo/tasks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "opo/correlations.hpp"
#include "opo/gaussian.hpp"
#include "opo/oracle.hpp"
#include "opo/parallel.hpp"
#include "opo/resonances.hpp"
#include "opo/spectra.hpp"
#include "opo/transfer.hpp"

namespace opo {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void set_np(RunConfig& c, double g0, double delta, double psi, std::array<double, 3> loss = {0, 0, 0})
{
    c.raw = false;
    c.np = NormalizedParams::make(g0, delta, psi, loss);
}

// Fig. 6-8 crystal losses: kappa_1/gamma = 0.3, kappa_0 = kappa_1/3.
constexpr std::array<double, 3> kFigLoss{0.1, 0.3, 0.3};

std::vector<Preset> make_presets()
{
    std::vector<Preset> p;
    p.push_back({"fig1", "fig1", "psi=0.3 g0=2 delta=0.1", [](RunConfig& c) {
                     set_np(c, 2.0, 0.1, 0.3);
                     c.e_grid = {1.01, 10.0, 400, false};
                 }});
    p.push_back({"fig2", "fig2", "delta=0.05", [](RunConfig& c) {
                     set_np(c, 2.0, 0.05, 0.0);
                     c.g0_grid = {0.1, 6.0, 60, false};
                 }});
    p.push_back({"fig3", "fig3", "psi=0 delta=0 g0 in {0.5,2.5,4.5,6.5}", [](RunConfig& c) {
                     set_np(c, 0.5, 0.0, 0.0);
                     c.e_grid = {1.01, 10.0, 200, false};
                 }});
    p.push_back({"fig4", "fig4", "psi=0 g0=1 delta=0.05 E in {2,3,4}", [](RunConfig& c) {
                     set_np(c, 1.0, 0.05, 0.0);
                     c.E = 2.0;
                     c.omega = {0.0, 6.0, 301, false};
                 }});
    p.push_back({"fig5", "fig5", "g0=4 script_e in {1.5,4} psi=0.1", [](RunConfig& c) {
                     set_np(c, 4.0, 0.0, 0.1);
                     c.E = excitation_from_script(1.5, 0.1);
                     c.tau = {0.0, 10.0, 201, false};
                 }});
    for (const auto& [suffix, g0] : {std::pair{"top", 4.0}, std::pair{"bottom", 0.5}}) {
        const std::string s = suffix;
        const double g = g0;
        p.push_back({"fig6-" + s, "fig6",
                     "g0=" + format_double(g) + " delta=0.05 E=3 psi in {0,0.25,0.5} kappa1/gamma=0.3 kappa0=kappa1/3",
                     [g](RunConfig& c) {
                         set_np(c, g, 0.05, 0.0, kFigLoss);
                         c.E = 3.0;
                         c.target = Target::output;
                         c.beam = 1;
                         c.omega = {0.0, 10.0, 401, false};
                     }});
        p.push_back({"fig7-" + s, "fig7",
                     "g0=" + format_double(g) + " delta=0.05 E=3 psi in {0,0.25,0.5} kappa1/gamma=0.3 kappa0=kappa1/3",
                     [g](RunConfig& c) {
                         set_np(c, g, 0.05, 0.0, kFigLoss);
                         c.E = 3.0;
                         c.target = Target::output;
                         c.beam = 1;
                         c.omega = {0.0, 10.0, 401, false};
                     }});
        p.push_back({"fig8-" + s, "fig8",
                     "g0=" + format_double(g) + " delta=0.05 E=3 psi=0 kappa1,2/gamma=0.3 kappa0=kappa1/3",
                     [g](RunConfig& c) {
                         set_np(c, g, 0.05, 0.0, kFigLoss);
                         c.E = 3.0;
                         c.target = Target::difference;
                         c.omega = {0.0, 10.0, 401, false};
                     }});
    }
    // Monte-Carlo cross-checks; not figure panels.
    p.push_back({"sde-a", "sde", "g0=0.25 delta=0.1 psi=0 E=2", [](RunConfig& c) {
                     set_np(c, 0.25, 0.1, 0.0);
                     c.E = 2.0;
                     c.omega = {0.2, 5.0, 2, false};
                 }});
    p.push_back({"sde-b", "sde", "g0=0.5 delta=0.05 psi=0.25 E=2", [](RunConfig& c) {
                     set_np(c, 0.5, 0.05, 0.25);
                     c.E = 2.0;
                     c.omega = {0.2, 5.0, 2, false};
                 }});
    // Unsuffixed names pick the top panel.
    for (const char* n : {"fig6", "fig7", "fig8"}) {
        auto top = std::find_if(p.begin(), p.end(), [&](const Preset& x) { return x.name == std::string(n) + "-top"; });
        Preset alias = *top;
        alias.name = n;
        p.push_back(alias);
    }
    return p;
}

// --- resonances ---------------------------------------------------------

Table task_roots(const RunConfig& c)
{
    Table t;
    t.columns = {"E"};
    for (int r = 1; r <= 5; ++r) {
        const auto s = std::to_string(r);
        t.columns.insert(t.columns.end(), {"re_" + s, "im_" + s, "class_" + s});
    }
    const auto E = c.e_grid.points();
    std::vector<ResonanceSet> rs(E.size());
    parallel_for(E.size(), [&](std::size_t i) { rs[i] = roots(charpoly(c.np, E[i]), c.root_tol); });
    for (std::size_t i = 0; i < E.size(); ++i) {
        std::vector<Cell> row{E[i]};
        for (int r = 0; r < 5; ++r) {
            row.emplace_back(rs[i].omega[r].real());
            row.emplace_back(rs[i].omega[r].imag());
            row.emplace_back(std::string(class_name(rs[i].cls[r])));
        }
        t.add(std::move(row));
    }
    return t;
}

Table task_fig1(const RunConfig& c)
{
    Table t;
    t.columns = {"E", "w1", "re2", "w2", "re4", "w4"};
    t.notes.push_back("labels need one imaginary root and two complex pairs; nan elsewhere");
    const auto E = c.e_grid.points();
    std::vector<std::optional<RootLabels>> lab(E.size());
    parallel_for(E.size(), [&](std::size_t i) { lab[i] = label_roots(roots(charpoly(c.np, E[i]), c.root_tol)); });
    for (std::size_t i = 0; i < E.size(); ++i) {
        if (lab[i]) {
            const auto& l = *lab[i];
            t.add({E[i], l.omega1.imag(), l.omega2.real(), l.omega2.imag(), l.omega4.real(), l.omega4.imag()});
        } else {
            t.add({E[i], kNaN, kNaN, kNaN, kNaN, kNaN});
        }
    }
    return t;
}

Table task_boundary(const RunConfig& c)
{
    Table t;
    t.columns = {"g0", "e_max"};
    const auto g = c.g0_grid.points();
    const auto b = emax_boundary(g, c.np.delta);
    Table iv;
    iv.notes.push_back("peninsula intervals (detached all-imaginary regions)");
    iv.columns = {"g0", "e_lo", "e_hi"};
    for (const auto& p : b) {
        t.add({p.g0, p.e_max});
        for (std::size_t k = 1; k < p.intervals.size(); ++k)
            iv.add({p.g0, p.intervals[k].first, p.intervals[k].second});
    }
    t.sections.push_back(std::move(iv));
    return t;
}

Table task_relaxation(const RunConfig& c)
{
    Table t;
    t.columns = {"E", "re_omega1", "im_omega1", "re_omega2", "im_omega2", "asym_im_omega1", "asym_re_omega2",
                 "asym_im_omega2", "limit_im_omega1", "limit_re_omega2", "limit_im_omega2"};
    for (double E : c.e_grid.points()) {
        const auto ex = relaxation_exact(c.np, E);
        const auto as = relaxation_asymptote(c.np, E);
        const auto li = relaxation_limit(c.np, E);
        t.add({E, ex.omega1.real(), ex.omega1.imag(), ex.omega2.real(), ex.omega2.imag(), as.omega1.imag(),
               as.omega2.real(), as.omega2.imag(), li.omega1.imag(), li.omega2.real(), li.omega2.imag()});
    }
    return t;
}

// The two D+ roots that coalesce into the relaxation pair.
std::pair<cplx, cplx> relaxation_pair(const NormalizedParams& np, double E)
{
    const auto f = resonant_factors(np, E);
    auto r = f.roots_plus;
    const double scale = 1e-9 * (1.0 + std::abs(r[0]) + std::abs(r[1]) + std::abs(r[2]));
    double best = std::numeric_limits<double>::infinity();
    std::pair<cplx, cplx> out;
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            const bool complex_pair = std::abs(r[a].real()) > scale && std::abs(r[b].real()) > scale;
            const double d = complex_pair ? -1.0 : std::abs(r[a] - r[b]);
            if (d < best) {
                best = d;
                out = r[a].real() >= r[b].real() ? std::pair{r[a], r[b]} : std::pair{r[b], r[a]};
            }
        }
    return out;
}

Table task_fig3(const RunConfig& c)
{
    Table t;
    t.columns = {"g0", "E", "omega2", "w2", "w3"};
    t.notes.push_back("w2 = w3 once the pair is complex");
    for (double g0 : {0.5, 2.5, 4.5, 6.5}) {
        const auto np = NormalizedParams::make(g0, c.np.delta, 0.0, c.np.loss);
        for (double E : c.e_grid.points()) {
            const auto [a, b] = relaxation_pair(np, E);
            t.add({g0, E, a.real(), a.imag(), b.imag()});
        }
    }
    return t;
}

// --- transfer -----------------------------------------------------------

void require_origin_regular(const RunConfig& c, const std::vector<double>& w)
{
    if (c.eps_shift == 0.0 && std::any_of(w.begin(), w.end(), [](double x) { return x == 0.0; }))
        throw DomainError("phase responses have a pole at w = 0; set eps_shift > 0 or start the grid above 0");
}

Table task_transfer(const RunConfig& c)
{
    const auto w = c.omega.points();
    require_origin_regular(c, w);
    Table t;
    t.columns = {"omega"};
    for (const auto& k : all_kindex()) t.columns.insert(t.columns.end(), {"re_" + k.name(), "im_" + k.name()});
    std::vector<TransferEval> ev(w.size());
    parallel_for(w.size(), [&](std::size_t i) { ev[i] = k_eval(c.np, c.E, w[i], c.route, c.eps_shift); });
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::vector<Cell> row{w[i]};
        for (const auto& k : all_kindex()) {
            const cplx v = ev[i].get(k);
            row.emplace_back(v.real());
            row.emplace_back(v.imag());
        }
        t.add(std::move(row));
    }
    return t;
}

Table task_fig4(const RunConfig& c)
{
    Table t;
    t.columns = {"E", "omega", "abs2_K0_11", "abs2_K0_12", "abs2_K0_10"};
    const auto w = c.omega.points();
    for (double E : {2.0, 3.0, 4.0}) {
        std::vector<TransferEval> ev(w.size());
        parallel_for(w.size(), [&](std::size_t i) { ev[i] = k_eval(c.np, E, w[i]); });
        for (std::size_t i = 0; i < w.size(); ++i)
            t.add({E, w[i], std::norm(ev[i].k0[1][1]), std::norm(ev[i].k0[1][2]), std::norm(ev[i].k0[1][0])});
    }
    return t;
}

Table task_direct(const RunConfig& c)
{
    const auto w = c.omega.points();
    require_origin_regular(c, w);
    Table t;
    t.columns = {"omega", "max_rel_dev", "dagger_residual"};
    std::vector<double> dev(w.size()), dag(w.size());
    parallel_for(w.size(), [&](std::size_t i) {
        dev[i] = oracle::max_relative_deviation(oracle::direct_k(c.np, c.E, w[i]), k_eval(c.np, c.E, w[i]));
        dag[i] = oracle::dagger_residual(c.np, c.E, w[i]);
    });
    for (std::size_t i = 0; i < w.size(); ++i) t.add({w[i], dev[i], dag[i]});
    return t;
}

// --- spectra ------------------------------------------------------------

SpectrumSeries spectrum_for(const RunConfig& c, const NormalizedParams& np, const std::vector<double>& w)
{
    const auto nw = noise_weights(np, c.E, c.dnu_L, c.s_eps);
    if (c.target == Target::difference) return difference_spectrum(np, c.E, nw, w);
    return single_beam_spectrum(np, c.E, nw, c.target, c.beam, w);
}

Table task_spectrum(const RunConfig& c)
{
    const auto w = c.omega.points();
    const auto s = spectrum_for(c, c.np, w);
    Table t;
    t.columns = {"omega", "S_mu", "S_eps", "S_phi", "S_j", "S_comm", "total"};
    t.notes.push_back("normalized by snl=" + format_double(s.snl));
    t.notes.push_back("S_j = S_mu + S_eps + S_phi is the photocurrent spectrum; total adds S_comm");
    for (std::size_t i = 0; i < w.size(); ++i)
        t.add({w[i], s.s_mu[i], s.s_eps[i], s.s_phi[i], s.s_j[i], s.s_comm[i], s.total[i]});
    return t;
}

Table task_fig6(const RunConfig& c)
{
    Table t;
    t.columns = {"psi", "omega", "S_mu", "S_eps", "S_phi", "S_j", "S_comm", "total"};
    const auto w = c.omega.points();
    for (double psi : {0.0, 0.25, 0.5}) {
        const auto np = NormalizedParams::make(c.np.g0, c.np.delta, psi, c.np.loss);
        const auto s = spectrum_for(c, np, w);
        for (std::size_t i = 0; i < w.size(); ++i)
            t.add({psi, w[i], s.s_mu[i], s.s_eps[i], s.s_phi[i], s.s_j[i], s.s_comm[i], s.total[i]});
    }
    return t;
}

Table task_fig7(const RunConfig& c)
{
    Table t;
    t.columns = {"psi", "omega", "gain_S_eps_j"};
    t.notes.push_back("gain_S_eps_j = (E/(script_e-1))^2 S_eps_j, normalized by the output shot-noise level");
    const auto w = c.omega.points();
    for (double psi : {0.0, 0.25, 0.5}) {
        const auto np = NormalizedParams::make(c.np.g0, c.np.delta, psi, c.np.loss);
        const auto nw = noise_weights(np, c.E, c.dnu_L, c.s_eps);
        const auto s = single_beam_spectrum(np, c.E, nw, Target::output, c.beam, w);
        for (std::size_t i = 0; i < w.size(); ++i) t.add({psi, w[i], nw.pump_gain * s.s_eps_shape[i]});
    }
    return t;
}

Table task_fig8(const RunConfig& c)
{
    RunConfig d = c;
    d.target = Target::difference;
    return task_spectrum(d);
}

// --- correlations -------------------------------------------------------

Table task_correlations(const RunConfig& c)
{
    const auto nw = noise_weights(c.np, c.E, c.dnu_L, c.s_eps);
    const KernelSet ks(c.np, c.E, nw);
    const auto ck = kernels(ks, c.beam, c.beam, c.tau.points());
    Table t;
    t.columns = {"tau", "re_phiphi", "im_phiphi", "re_mumu", "im_mumu", "re_muphi", "im_muphi", "re_phimu", "im_phimu"};
    for (std::size_t i = 0; i < ck.tau.size(); ++i)
        t.add({ck.tau[i], ck.phiphi[i].real(), ck.phiphi[i].imag(), ck.mumu[i].real(), ck.mumu[i].imag(),
               ck.muphi[i].real(), ck.muphi[i].imag(), ck.phimu[i].real(), ck.phimu[i].imag()});
    return t;
}

Table task_commutator(const RunConfig& c)
{
    const auto nw = noise_weights(c.np, c.E, c.dnu_L, c.s_eps);
    const KernelSet ks(c.np, c.E, nw);
    Table t;
    t.columns = {"tau", "im_phiphi", "im_mumu", "anti", "im_phimu"};
    for (double tau : c.tau.points()) {
        const auto m = commutators(ks, c.beam, c.c_sq, tau);
        t.add({tau, m.phiphi.imag(), m.mumu.imag(), m.anti.real(), m.phimu.imag()});
    }
    return t;
}

std::string pole_character(const NormalizedParams& np, double E)
{
    return underdamped(roots(charpoly(np, E))) ? "oscillatory (least-damped poles ring)"
                                                : "damped (least-damped poles do not ring)";
}

Table task_fig5(const RunConfig& c)
{
    Table t;
    t.columns = {"script_e", "E", "tau", "im_phiphi", "im_mumu"};
    for (double se : {1.5, 4.0}) {
        const double E = excitation_from_script(se, c.np.psi);
        const auto nw = noise_weights(c.np, E);
        const KernelSet ks(c.np, E, nw);
        t.notes.push_back("script_e=" + format_double(se) + ": " + pole_character(c.np, E));
        for (double tau : c.tau.points()) {
            const auto m = commutators(ks, c.beam, c.c_sq, tau);
            t.add({se, E, tau, m.phiphi.imag(), m.mumu.imag()});
        }
    }
    return t;
}

Table task_linewidth(const RunConfig& c)
{
    Table t;
    t.columns = {"beam", "dnu", "f_phi", "spontaneous", "spontaneous_from_residue"};
    for (int j = 1; j <= 2; ++j) {
        const auto r = linewidth(c.np, c.E, c.c_sq, c.dnu_L, j);
        t.add({(long long)j, r.dnu, r.f_phi, r.spontaneous, spontaneous_floor_from_residue(c.np, c.c_sq)});
    }
    return t;
}

// --- gaussian / oracle --------------------------------------------------

Table task_gaussian(const RunConfig& c)
{
    namespace g = gaussian;
    const auto d = g::disentangle(c.n_mu, c.n_phi);
    const auto o = g::fock_oracle(c.n_mu, c.n_phi, c.k, c.fock_n);
    const auto ex = g::moments_exact(c.n_mu, c.n_phi, c.k);
    const auto pr = g::moments_printed(c.n_mu, c.n_phi, c.k);
    const auto st = g::squeeze_to_thermal(c.n_mu, c.n_phi);
    Table t;
    t.columns = {"quantity", "formula", "oracle", "as_typeset"};
    t.add({std::string("u"), d.u, kNaN, kNaN});
    t.add({std::string("v"), d.v, kNaN, kNaN});
    t.add({std::string("w"), d.w, kNaN, kNaN});
    t.add({std::string("trace"), g::trace(d), o.trace_single, kNaN});
    t.add({std::string("trace_product"), g::trace(d), o.trace_product, kNaN});
    t.add({std::string("im_comm"), ex.comm.imag(), o.moments.comm.imag(), pr.comm.imag()});
    t.add({std::string("mu2"), ex.mu2, o.moments.mu2, pr.mu2});
    t.add({std::string("phi2"), ex.phi2, o.moments.phi2, pr.phi2});
    t.add({std::string("theta"), st.theta, kNaN, kNaN});
    t.add({std::string("conj_residual"), kNaN, o.conj_residual, kNaN});
    t.add({std::string("fock_tail"), kNaN, o.tail, kNaN});
    return t;
}

Table task_sde(const RunConfig& c)
{
    const auto nw = noise_weights(c.np, c.E);
    const auto run = oracle::sde_psd(c.np, c.E, nw, c.sde);
    Table t;
    t.columns = {"omega", "psd_1", "stderr_1", "expected_1", "psd_2", "stderr_2", "expected_2"};
    t.notes.push_back("dt=" + format_double(run.dt) + " duration=" + format_double(run.duration)
                      + " segments=" + std::to_string(run.segments) + " window=" + run.window);
    for (int j = 1; j <= 2; ++j) {
        const auto chi = oracle::chi_square(run, c.np, c.E, nw, j);
        t.notes.push_back("reduced_chi2_" + std::to_string(j) + "=" + format_double(chi.reduced)
                          + " over " + std::to_string(chi.points) + " bins in [0.2,5]");
    }
    for (std::size_t b = 1; b < run.omega.size(); ++b) {
        const double w = run.omega[b];
        if (w > c.omega.hi) break;
        if (w < c.omega.lo) continue;
        t.add({w, run.psd[0][b], run.stderr_[0][b], oracle::expected_psd(c.np, c.E, nw, 1, w), run.psd[1][b],
               run.stderr_[1][b], oracle::expected_psd(c.np, c.E, nw, 2, w)});
    }
    return t;
}

using Runner = Table (*)(const RunConfig&);

struct Entry {
    TaskInfo info;
    Runner run;
};

const std::vector<Entry>& registry()
{
    static const std::vector<Entry> r = {
        {{"roots", "resonances over the E grid"}, task_roots},
        {{"boundary", "E_max boundary and detached intervals over the g0 grid"}, task_boundary},
        {{"relaxation", "exact vs large-E relaxation roots over the E grid"}, task_relaxation},
        {{"transfer", "all fourteen K responses over the omega grid"}, task_transfer},
        {{"direct", "6x6 direct solve vs closed-form K over the omega grid"}, task_direct},
        {{"spectrum", "shot-noise-normalized spectrum for the configured target"}, task_spectrum},
        {{"correlations", "correlation kernels over the tau grid"}, task_correlations},
        {{"commutator", "two-time commutators over the tau grid"}, task_commutator},
        {{"linewidth", "phase-diffusion linewidth"}, task_linewidth},
        {{"gaussian", "Gaussian-state maps against the Fock oracle"}, task_gaussian},
        {{"sde", "Monte-Carlo PSD of the linearized equations"}, task_sde},
        {{"fig1", "labelled roots vs E"}, task_fig1},
        {{"fig2", "boundary curve"}, task_boundary},
        {{"fig3", "relaxation frequency and damping vs E"}, task_fig3},
        {{"fig4", "|K0_11|^2, |K0_12|^2, |K0_10|^2 for E in {2,3,4}"}, task_fig4},
        {{"fig5", "phase commutator vs tau for script_e in {1.5,4}"}, task_fig5},
        {{"fig6", "single-beam spectra for psi in {0,0.25,0.5}"}, task_fig6},
        {{"fig7", "pump excess-noise transfer for psi in {0,0.25,0.5}"}, task_fig7},
        {{"fig8", "difference spectrum"}, task_fig8},
    };
    return r;
}

} // namespace

const std::vector<Preset>& presets()
{
    static const std::vector<Preset> p = make_presets();
    return p;
}

const Preset& find_preset(const std::string& name)
{
    for (const auto& p : presets())
        if (p.name == name) return p;
    throw ConfigError("unknown preset '" + name + "'");
}

const std::vector<TaskInfo>& tasks()
{
    static const std::vector<TaskInfo> t = [] {
        std::vector<TaskInfo> v;
        for (const auto& e : registry()) v.push_back(e.info);
        return v;
    }();
    return t;
}

Table run_task(const RunConfig& c)
{
    for (const auto& e : registry())
        if (e.info.name == c.task) return e.run(c);
    throw ConfigError("unknown task '" + c.task + "'");
}

} // namespace opo
