#include "opo/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace opo {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

cplx checked_inv(cplx den, double scale, const char* what)
{
    if (!(std::abs(den) > 1e-14 * (1.0 + scale)))
        throw NumericalError(std::string("evaluation at a pole: ") + what + " vanishes");
    return 1.0 / den;
}

struct RawAB {
    std::array<cplx, 3> A{}, B{};
};

RawAB raw_ab(const DeltaSet& D)
{
    RawAB r;
    for (int j = 1; j <= 2; ++j) {
        const int jp = 3 - j;
        const cplx p = D.d[jp] * D.d[0], q = D.dd[jp] * D.dd[0];
        const cplx i1 = checked_inv(p + 1.0, std::abs(p), "Delta_j' Delta_0 + 1");
        const cplx i2 = checked_inv(q + 1.0, std::abs(q), "Delta_j'^+ Delta_0^+ + 1");
        r.A[j] = D.d[j] + D.d[jp] * i1 - D.dd[0] * i2;
        r.B[j] = i1 + i2;
    }
    const cplx p = D.d[2] * D.dd[1], q = D.d[1] * D.dd[2];
    const cplx i1 = checked_inv(p - 1.0, std::abs(p), "Delta_2 Delta_1^+ - 1");
    const cplx i2 = checked_inv(q - 1.0, std::abs(q), "Delta_1 Delta_2^+ - 1");
    r.A[0] = D.d[0] + D.dd[1] * i1 + D.dd[2] * i2;
    r.B[0] = i1 + i2;
    return r;
}

double script_of(const NormalizedParams& np, double E)
{
    return effective_excitation(E, np.psi).script_e;
}

TransferEval general_route(const NormalizedParams& np, double E, cplx w)
{
    const double se = script_of(np, E);
    const auto D = delta_set(np, se, w);
    const auto F = abf(np, se, w);
    TransferEval t;
    t.route = Route::general;
    t.omega = w;
    for (int j = 1; j <= 2; ++j) {
        const int jp = 3 - j;
        const cplx p = D.d[jp] * D.d[0];
        const cplx inv = checked_inv(p + 1.0, std::abs(p), "Delta_j' Delta_0 + 1");
        t.k0[j][j] = F.Fmd[j];
        t.k0[j][jp] = (F.Fm[j] * D.d[0] - F.Fmd[j]) * inv;
        t.k0[j][0] = (F.Fmd[j] * D.d[jp] + F.Fm[j]) * inv;
        t.kpi[j][j] = F.Fpd[j];
        t.kpi[j][jp] = -(F.Fp[j] * D.d[0] + F.Fpd[j]) * inv;
        t.kpi[j][0] = (F.Fpd[j] * D.d[jp] - F.Fp[j]) * inv;
        const cplx q = D.d[j] * D.dd[jp];
        t.k0[0][j] = -(F.Fm[0] + F.Fmd[0] * D.dd[jp])
                     * checked_inv(q - 1.0, std::abs(q), "Delta_j Delta_j'^+ - 1");
    }
    t.k0[0][0] = cplx(kNaN, kNaN);
    return t;
}

void require_resonant(const NormalizedParams& np, const char* route)
{
    if (np.psi != 0.0)
        throw DomainError(std::string(route) + " closed forms hold for psi = 0 only");
}

cplx pole_guard(cplx den, cplx w, const char* what)
{
    return checked_inv(den, std::norm(w), what);
}

TransferEval resonant_route(const NormalizedParams& np, double E, cplx w)
{
    require_resonant(np, "resonant");
    if (!(E > 1.0)) throw DomainError("resonant closed forms need E > 1");
    const auto f = resonant_factors(np, E);
    const double g0 = np.g0, d2 = np.delta * np.delta;
    const cplx ip = pole_guard(horner(f.d_plus, w), w, "D_+");
    const cplx im = pole_guard(horner(f.d_minus, w), w, "D_-");
    const cplx iw = checked_inv(w, 0.0, "w");
    TransferEval t;
    t.route = Route::resonant;
    t.omega = w;
    for (int j = 1; j <= 2; ++j) {
        const int jp = 3 - j;
        const double dj = np.delta_j(j);
        const cplx quad = w * w - I * (1.0 + g0 - dj) * w - g0 * E * (1.0 - dj);
        t.k0[j][j] = -I * (1.0 + dj) * quad * ip;
        t.k0[j][jp] = -(1.0 - d2) * (w + I * g0 * (E - 2.0)) * ip;
        t.k0[j][0] = -g0 * (E - 1.0) * (1.0 + dj) * (w - 2.0 * I * (1.0 - dj)) * ip;
        t.kpi[j][j] = -I * (1.0 + dj) * quad * im * iw;
        t.kpi[j][jp] = (1.0 - d2) * (w - I * g0 * E) * im * iw;
        t.kpi[j][0] = -g0 * (E - 1.0) * (1.0 + dj) * im;
        t.k0[0][j] = cplx(kNaN, kNaN);
    }
    t.k0[0][0] = cplx(kNaN, kNaN);
    return t;
}

TransferEval adiabatic_route(const NormalizedParams& np, double E, cplx w)
{
    require_resonant(np, "adiabatic");
    if (!(E > 1.0)) throw DomainError("adiabatic closed forms need E > 1");
    const double d2 = np.delta * np.delta;
    const cplx Q = w * w - 2.0 * I * E * w - 4.0 * (E - 1.0) * (1.0 - d2);
    const cplx iq = pole_guard(Q, w, "adiabatic quadratic");
    const cplx il = pole_guard(w - 2.0 * I * E, w, "w - 2iE");
    const cplx iw = checked_inv(w, 0.0, "w");
    TransferEval t;
    t.route = Route::adiabatic;
    t.omega = w;
    for (int j = 1; j <= 2; ++j) {
        const int jp = 3 - j;
        const double dj = np.delta_j(j);
        const cplx lin = w - I * E * (1.0 - dj);
        t.k0[j][j] = -I * (1.0 + dj) * lin * iq;
        t.k0[j][jp] = (E - 2.0) * (1.0 - d2) * iq;
        t.k0[j][0] = -I * (E - 1.0) * (1.0 + dj) * (w - 2.0 * I * (1.0 - dj)) * iq;
        t.kpi[j][j] = -I * (1.0 + dj) * lin * il * iw;
        t.kpi[j][jp] = E * (1.0 - d2) * il * iw;
        t.kpi[j][0] = -I * (E - 1.0) * (1.0 + dj) * il;
        t.k0[0][j] = cplx(kNaN, kNaN);
    }
    t.k0[0][0] = cplx(kNaN, kNaN);
    return t;
}

} // namespace

DeltaSet delta_set(const NormalizedParams& np, double script_e, cplx w)
{
    if (!(script_e > 1.0)) throw DomainError("transfer functions need script-E > 1");
    DeltaSet D;
    const cplx ph = std::polar(1.0, np.psi);
    for (int j = 1; j <= 2; ++j) {
        const cplx k = np.kappa(j);
        D.d[j] = 1.0 + I * w / k;
        D.dd[j] = 1.0 + I * w / std::conj(k);
    }
    const cplx base = (1.0 + I * w / np.g0) / (script_e - 1.0);
    D.d[0] = base * ph;
    D.dd[0] = base * std::conj(ph);
    return D;
}

ABF abf(const NormalizedParams& np, double script_e, cplx w)
{
    const auto here = raw_ab(delta_set(np, script_e, w));
    const auto there = raw_ab(delta_set(np, script_e, mirror(w)));
    ABF r;
    for (int k = 0; k < 3; ++k) {
        r.A[k] = here.A[k];
        r.B[k] = here.B[k];
        r.Ad[k] = std::conj(there.A[k]);
        r.Bd[k] = std::conj(there.B[k]);
        const cplx den = r.A[k] * r.Ad[k] - r.B[k] * r.B[k];
        const cplx inv = checked_inv(den, std::abs(r.A[k] * r.Ad[k]) + std::norm(r.B[k]),
                                     "A A^+ - B^2");
        const cplx dend = r.Ad[k] * r.A[k] - r.Bd[k] * r.Bd[k];
        const cplx invd = checked_inv(dend, std::abs(r.A[k] * r.Ad[k]) + std::norm(r.Bd[k]),
                                      "A^+ A - B^+2");
        r.Fm[k] = (r.A[k] - r.B[k]) * inv;
        r.Fp[k] = (r.A[k] + r.B[k]) * inv;
        r.Fmd[k] = (r.Ad[k] - r.Bd[k]) * invd;
        r.Fpd[k] = (r.Ad[k] + r.Bd[k]) * invd;
    }
    return r;
}

const char* route_name(Route r)
{
    switch (r) {
    case Route::general: return "general";
    case Route::resonant: return "resonant";
    case Route::adiabatic: return "adiabatic";
    }
    return "?";
}

std::string KIndex::name() const
{
    return std::string(q == Quad::amp ? "K0_" : "Kpi_") + char('0' + j) + char('0' + k);
}

const std::vector<KIndex>& all_kindex()
{
    static const std::vector<KIndex> list = [] {
        std::vector<KIndex> v;
        for (int j = 1; j <= 2; ++j) {
            const int jp = 3 - j;
            v.push_back({Quad::amp, j, j});
            v.push_back({Quad::amp, j, jp});
            v.push_back({Quad::amp, j, 0});
            v.push_back({Quad::amp, 0, j});
            v.push_back({Quad::phase, j, j});
            v.push_back({Quad::phase, j, jp});
            v.push_back({Quad::phase, j, 0});
        }
        return v;
    }();
    return list;
}

TransferEval k_eval(const NormalizedParams& np, double E, cplx w, Route route, double eps_shift)
{
    if (eps_shift < 0.0) throw DomainError("eps_shift must be non-negative");
    auto eval = [&](cplx z) {
        switch (route) {
        case Route::resonant: return resonant_route(np, E, z);
        case Route::adiabatic: return adiabatic_route(np, E, z);
        default: return general_route(np, E, z);
        }
    };
    if (w == 0.0) {
        // removable 0/0 in the compositions: average over a small circle, exact to O(h^4)
        constexpr double h = 1e-3;
        TransferEval t;
        t.route = route;
        t.omega = w;
        for (int m = 0; m < 4; ++m) {
            const cplx z = h * std::polar(1.0, M_PI / 4 + M_PI / 2 * m);
            const auto e = eval(z);
            const cplx s = eps_shift > 0.0 ? z / (z - I * eps_shift) : cplx(1.0);
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    const bool pole = j > 0 && k > 0;
                    t.k0[j][k] += 0.25 * e.k0[j][k];
                    t.kpi[j][k] += 0.25 * (pole ? e.kpi[j][k] * s : e.kpi[j][k]);
                }
        }
        if (eps_shift == 0.0)
            for (int j = 1; j <= 2; ++j) t.kpi[j][j] = t.kpi[j][3 - j] = cplx(INFINITY, 0.0);
        return t;
    }
    TransferEval t = eval(w);
    if (eps_shift > 0.0) {
        // w/(w - i eps) replaces the 1/w origin factor by 1/(w - i eps)
        const cplx s = w / (w - I * eps_shift);
        for (int j = 1; j <= 2; ++j) {
            t.kpi[j][j] *= s;
            t.kpi[j][3 - j] *= s;
        }
    }
    return t;
}

int expected_numerator_degree(const KIndex& x)
{
    if (x.q == Quad::amp) return x.k == x.j ? 4 : 3;
    if (x.k == x.j) return 5;
    return x.k == 0 ? 3 : 4;
}

cplx expected_numerator_leading(const NormalizedParams& np, double E, const KIndex& x)
{
    const double c = std::cos(np.psi), d2 = np.delta * np.delta;
    const double em = effective_excitation(E, np.psi).e_eff - 1.0;
    const int j = x.j == 0 ? x.k : x.j;
    const double dj = np.delta_j(j);
    const cplx self = -I * (1.0 + dj) * std::polar(1.0, np.psi) / c;
    const double cross = (1.0 - d2) / (c * c);
    const double pump = np.g0 * em * (1.0 + dj);
    if (x.j == 0) return pump;
    if (x.k == x.j) return self;
    if (x.k == 0) return -pump;
    return x.q == Quad::amp ? -cross : cross;
}

cplx printed_numerator_leading(const NormalizedParams& np, double E, const KIndex& x)
{
    const double c = std::cos(np.psi), d2 = np.delta * np.delta;
    const double em = effective_excitation(E, np.psi).e_eff - 1.0;
    if (x.j == 0) return cplx(kNaN, kNaN);   // no polynomial form typeset
    const double dj = np.delta_j(x.j);
    const cplx self = I * (1.0 + dj) * std::polar(1.0, np.psi) / c;
    if (x.k == x.j) return x.q == Quad::amp ? -self : self;
    if (x.k == 0) return np.g0 * em * (1.0 + dj);
    return -(1.0 - d2) / (c * c);
}

namespace {

double pole_radius(const NormalizedParams& np, double E)
{
    const auto r = poly_roots(charpoly(np, E).poly());
    double m = 1.0;
    for (const auto& z : r) m = std::max(m, std::abs(z));
    return 1.5 * m;
}

KNumerator fit_numerator(const NormalizedParams& np, double E, const KIndex& x,
                         const CharPoly& cp, double radius)
{
    auto f = [&](cplx z) {
        cplx v = k_eval(np, E, z).get(x) * cp(z);
        if (x.origin_pole()) v *= z;
        return v;
    };
    const int fit_deg = 6;
    KNumerator out;
    out.which = x;
    Poly c = fit_on_circle(f, fit_deg, 0.0, radius, &out.fit_residual);
    const int deg = expected_numerator_degree(x);
    double big = 0.0;
    for (int k = 0; k <= fit_deg; ++k) big = std::max(big, std::abs(c[k]) * std::pow(radius, k));
    for (int k = deg + 1; k <= fit_deg; ++k) {
        if (std::abs(c[k]) * std::pow(radius, k) > 1e-8 * big)
            throw NumericalError("numerator of " + x.name() + " exceeds its expected degree");
    }
    if (out.fit_residual > 1e-8)
        throw NumericalError("numerator fit of " + x.name() + " is not polynomial (residual "
                             + std::to_string(out.fit_residual) + ")");
    c.resize(deg + 1);
    out.coeffs = c;
    out.degree = deg;
    out.leading = c[deg];
    out.expected_leading = expected_numerator_leading(np, E, x);
    if (std::abs(out.leading - out.expected_leading) > 1e-7 * (1.0 + std::abs(out.expected_leading)))
        throw NumericalError("leading numerator coefficient of " + x.name()
                             + " does not match its closed form");
    return out;
}

} // namespace

KNumerator k_times_dprime_poly(const NormalizedParams& np, double E, const KIndex& x)
{
    const auto cp = charpoly(np, E);
    return fit_numerator(np, E, x, cp, pole_radius(np, E));
}

std::size_t ResidueTable::slot(const KIndex& x) const
{
    for (std::size_t i = 0; i < index.size(); ++i)
        if (index[i] == x) return i;
    throw std::out_of_range("unknown transfer index");
}

ResidueTable residues(const NormalizedParams& np, double E)
{
    const auto cp = charpoly(np, E);
    ResidueTable t;
    t.poles = roots(cp);
    double rmax = 1.0;
    for (const auto& z : t.poles.omega) rmax = std::max(rmax, std::abs(z));

    std::array<cplx, 6> all{};
    for (int r = 0; r < 5; ++r) all[r] = t.poles.omega[r];
    all[5] = 0.0;
    for (int a = 0; a < 6; ++a)
        for (int b = a + 1; b < 6; ++b)
            if (std::abs(all[a] - all[b]) < 1e-6)
                throw NumericalError("near-degenerate poles; perturb the parameters slightly "
                                     "(simple-pole residues are undefined here)");

    const Poly dprime = cp.poly();
    const Poly dd = derivative(dprime);
    const Poly dw = derivative(multiply(dprime, Poly{0.0, 1.0}));
    for (const auto& x : all_kindex()) {
        const auto n = fit_numerator(np, E, x, cp, 1.5 * rmax);
        std::array<cplx, 5> rs{};
        for (int r = 0; r < 5; ++r) {
            const cplx p = t.poles.omega[r];
            rs[r] = horner(n.coeffs, p) / horner(x.origin_pole() ? dw : dd, p);
        }
        t.index.push_back(x);
        t.res.push_back(rs);
        t.origin.push_back(x.origin_pole() ? horner(n.coeffs, 0.0) / dprime[0] : cplx(0.0));
        t.numer.push_back(n.coeffs);
    }
    return t;
}

cplx k0_j0_origin(const NormalizedParams& np, double E)
{
    const double ee = effective_excitation(E, np.psi).e_eff;
    return 0.5 * (1.0 - I * std::tan(np.psi) / ee);
}

cplx k0_j0_origin_printed(const NormalizedParams& np, double E, bool eeff_minus_one)
{
    const double ee = effective_excitation(E, np.psi).e_eff;
    return 0.25 * (1.0 - I * std::tan(np.psi) / (eeff_minus_one ? ee - 1.0 : ee));
}

cplx kpi_j0_origin(const NormalizedParams& np, double E, int j)
{
    const double ee = effective_excitation(E, np.psi).e_eff, t = std::tan(np.psi);
    const double dj = np.delta_j(j);
    return ((ee - 1.0) - (t * t - (ee - 1.0) + I * ee * t) * dj) / (2.0 * ee);
}

cplx kpi_origin_residue(const NormalizedParams& np, int j, int k)
{
    const double c = std::cos(np.psi);
    const cplx v = -I * (1.0 - np.delta * np.delta) / (2.0 * c * c);
    if (k == 0) return 0.0;
    return k == j ? v : -v;
}

cplx kpi_origin_residue_printed(const NormalizedParams& np, int j, int k)
{
    const double c = std::cos(np.psi);
    const cplx v = I * (1.0 - np.delta * np.delta) / (4.0 * c * c);
    if (k == 0) return 0.0;
    return k == j ? v : -v;
}

cplx origin_limit(const NormalizedParams& np, double E, const KIndex& x, double h)
{
    cplx acc = 0.0;
    for (int m = 0; m < 4; ++m) {
        const cplx z = h * std::polar(1.0, M_PI / 4 + M_PI / 2 * m);
        cplx v = k_eval(np, E, z).get(x);
        if (x.origin_pole()) v *= z;
        acc += v;
    }
    return 0.25 * acc;
}

LowFrequencyReading resolve_low_frequency_reading(const NormalizedParams& np, double E)
{
    LowFrequencyReading r;
    r.numeric = origin_limit(np, E, {Quad::amp, 1, 0});
    r.printed_eeff = k0_j0_origin_printed(np, E, false);
    r.printed_eeff_m1 = k0_j0_origin_printed(np, E, true);
    r.phase_err_eeff = std::abs(std::arg(r.numeric / r.printed_eeff));
    r.phase_err_eeff_m1 = std::abs(std::arg(r.numeric / r.printed_eeff_m1));
    r.eeff_reading = r.phase_err_eeff <= r.phase_err_eeff_m1;
    r.scale = std::abs(r.numeric) / std::abs(r.eeff_reading ? r.printed_eeff : r.printed_eeff_m1);
    return r;
}

} // namespace opo
