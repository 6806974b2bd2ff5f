#include "opo/resonances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "opo/parallel.hpp"

namespace opo {

namespace {

CharPoly assemble(double g0, double d, double t, double ee, bool printed)
{
    const double d2 = d * d, t2 = t * t, em = ee - 1.0;
    CharPoly p;
    p.c[5] = 1.0;
    p.c[4] = cplx(0.0, -2.0 * (g0 + 2.0));
    p.c[3] = -(g0 + 2.0) * (g0 + 2.0) - 4.0 * g0 - 4.0 * d2 * t2 - 4.0 * em * g0;
    const double d3_mix = printed ? (1.0 + ee) : (1.0 - ee + 2.0 * t2);
    p.c[2] = cplx(0.0, 4.0 * g0 * (ee * g0 + 2.0 + 3.0 * em + d3_mix * d2));
    p.c[1] = 4.0 * g0 * ((em * em + 3.0 * em + 1.0) * g0 + 2.0 * em
                         - ((2.0 + g0) * em - g0 * t2) * d2);
    const double d1_g = printed ? g0 : g0 * g0;
    p.c[0] = cplx(0.0, -8.0 * d1_g * ee * em * (1.0 - d2));
    return p;
}

void require_above(double E)
{
    if (!(E >= 1.0)) throw DomainError("characteristic polynomial needs E >= 1");
}

} // namespace

cplx CharPoly::operator()(cplx w) const
{
    cplx acc = 0.0;
    for (int k = 5; k >= 0; --k) acc = acc * w + c[k];
    return acc;
}

CharPoly charpoly(const NormalizedParams& np, double E)
{
    require_above(E);
    const auto x = effective_excitation(E, np.psi);
    return assemble(np.g0, np.delta, std::tan(np.psi), x.e_eff, false);
}

CharPoly charpoly_as_printed(const NormalizedParams& np, double E)
{
    require_above(E);
    const auto x = effective_excitation(E, np.psi);
    return assemble(np.g0, np.delta, std::tan(np.psi), x.e_eff, true);
}

const char* class_name(RootClass c)
{
    switch (c) {
    case RootClass::origin: return "origin";
    case RootClass::imaginary: return "imaginary";
    case RootClass::complex_pair: return "complex";
    }
    return "?";
}

cplx ResonanceSet::sum() const
{
    cplx s = 0.0;
    for (const auto& o : omega) s += o;
    return s;
}

int ResonanceSet::count(RootClass c) const
{
    return int(std::count(cls.begin(), cls.end(), c));
}

ResonanceSet roots(const CharPoly& poly, double tol)
{
    if (!(tol > 0.0)) throw DomainError("root tolerance must be positive");
    auto r = poly_roots(poly.poly());
    if (r.size() != 5) throw NumericalError("quintic root count mismatch");

    ResonanceSet rs;
    std::array<bool, 5> axis{};
    for (int i = 0; i < 5; ++i) {
        if (std::abs(r[i].real()) < tol * (1.0 + std::abs(r[i]))) {
            r[i] = cplx(0.0, r[i].imag());
            axis[i] = true;
        }
    }
    std::array<int, 5> idx{0, 1, 2, 3, 4};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        if (r[a].imag() != r[b].imag()) return r[a].imag() < r[b].imag();
        return r[a].real() < r[b].real();
    });
    // conjugate-mirror pairs share Im only up to rounding; order each such group by Re
    for (int i = 0; i + 1 < 5; ++i) {
        const cplx a = r[idx[i]], b = r[idx[i + 1]];
        const double scale = 1.0 + std::max(std::abs(a), std::abs(b));
        if (std::abs(a.imag() - b.imag()) < 1e-8 * scale && a.real() > b.real())
            std::swap(idx[i], idx[i + 1]);
    }
    for (int i = 0; i < 5; ++i) {
        rs.omega[i] = r[idx[i]];
        rs.cls[i] = axis[idx[i]] ? RootClass::imaginary : RootClass::complex_pair;
        rs.partner[i] = -1;
    }
    for (int i = 0; i < 5; ++i) {
        if (rs.cls[i] != RootClass::complex_pair || rs.partner[i] >= 0) continue;
        const cplx target = -std::conj(rs.omega[i]);
        int best = -1;
        double bd = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 5; ++k) {
            if (k == i || rs.cls[k] != RootClass::complex_pair || rs.partner[k] >= 0) continue;
            const double dd = std::abs(rs.omega[k] - target);
            if (dd < bd) { bd = dd; best = k; }
        }
        if (best >= 0) {
            rs.partner[i] = best;
            rs.partner[best] = i;
        }
    }
    return rs;
}

bool underdamped(const ResonanceSet& rs)
{
    double slow = INFINITY;
    for (int r = 0; r < 5; ++r)
        if (rs.cls[r] != RootClass::origin) slow = std::min(slow, rs.omega[r].imag());
    for (int r = 0; r < 5; ++r)
        if (rs.cls[r] != RootClass::origin && rs.omega[r].imag() < slow + 1e-6
            && std::abs(rs.omega[r].real()) > rs.omega[r].imag())
            return true;
    return false;
}

ResonantFactors resonant_factors(const NormalizedParams& np, double E)
{
    if (np.psi != 0.0)
        throw DomainError("resonant factorization is defined for psi = 0 only");
    require_above(E);
    ResonantFactors f;
    f.g1 = 2.0 + np.g0;
    f.g2 = 2.0 * E * np.g0;
    f.g3 = 4.0 * (E - 1.0) * np.g0 * (1.0 - np.delta * np.delta);
    f.d_minus = {cplx(-f.g2), cplx(0.0, -f.g1), cplx(1.0)};
    f.d_plus = {cplx(0.0, f.g3), cplx(-f.g2), cplx(0.0, -f.g1), cplx(1.0)};

    // quadratic: w = i g1/2 +- sqrt(g2 - g1^2/4)
    const cplx disc = std::sqrt(cplx(f.g2 - 0.25 * f.g1 * f.g1, 0.0));
    f.roots_minus = {cplx(0.0, 0.5 * f.g1) - disc, cplx(0.0, 0.5 * f.g1) + disc};
    const auto rp = poly_roots(f.d_plus);
    for (int i = 0; i < 3; ++i) f.roots_plus[i] = rp[i];
    std::sort(f.roots_plus.begin(), f.roots_plus.end(), [](cplx a, cplx b) {
        return a.imag() != b.imag() ? a.imag() < b.imag() : a.real() < b.real();
    });
    return f;
}

namespace {

double sturm_e(const NormalizedParams& np, double E)
{
    if (np.psi == 0.0) return E;
    if (np.delta == 0.0) return effective_excitation(E, np.psi).e_eff;
    throw DomainError("imaginarity test needs psi = 0 or a balanced cavity");
}

} // namespace

SturmMargins sturm_margins(const NormalizedParams& np, double E)
{
    const double e = sturm_e(np, E);
    const double g1 = 2.0 + np.g0;
    const double g2 = 2.0 * e * np.g0;
    const double g3 = 4.0 * (e - 1.0) * np.g0 * (1.0 - np.delta * np.delta);
    SturmMargins m;
    m.first = g1 * g1 - 3.0 * g2;
    m.second = g1 * g2 - 9.0 * g3;
    m.third = (g1 * g1 - 4.0 * g2) * g2 * g2
              - (27.0 * g3 * g3 + 2.0 * (2.0 * g1 * g1 * g1 - 9.0 * g1 * g2) * g3);
    return m;
}

bool sturm_all_imaginary(const NormalizedParams& np, double E)
{
    return sturm_margins(np, E).all();
}

bool numeric_dplus_imaginary(const NormalizedParams& np, double E, double tol)
{
    const double e = sturm_e(np, E);
    NormalizedParams res = np;
    res.psi = 0.0;
    const auto rs = roots(charpoly(res, e), tol);
    const auto f = resonant_factors(res, e);
    std::array<bool, 5> used{};
    for (const auto& m : f.roots_minus) {
        int best = -1;
        double bd = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 5; ++i) {
            if (used[i]) continue;
            const double d = std::abs(rs.omega[i] - m);
            if (d < bd) { bd = d; best = i; }
        }
        used[best] = true;
    }
    for (int i = 0; i < 5; ++i)
        if (!used[i] && rs.cls[i] != RootClass::imaginary) return false;
    return true;
}

std::vector<BoundaryPoint> emax_boundary(const std::vector<double>& g0_grid, double delta,
                                         int n_scan, double e_hi)
{
    if (!(delta >= 0.0 && delta < 1.0)) throw DomainError("boundary scan needs 0 <= delta < 1");
    if (n_scan < 2 || !(e_hi > 1.0)) throw DomainError("bad boundary scan grid");
    std::vector<BoundaryPoint> out(g0_grid.size());
    parallel_for(g0_grid.size(), [&](std::size_t gi) {
        const auto np = NormalizedParams::make(g0_grid[gi], delta, 0.0);
        std::vector<double> E(n_scan);
        std::vector<char> ok(n_scan);
        for (int i = 0; i < n_scan; ++i) {
            E[i] = std::pow(e_hi, double(i) / double(n_scan - 1));
            ok[i] = sturm_all_imaginary(np, E[i]);
        }
        auto edge = [&](double lo, double hi, bool lo_state) {
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (sturm_all_imaginary(np, mid) == lo_state) lo = mid; else hi = mid;
            }
            return 0.5 * (lo + hi);
        };
        BoundaryPoint bp;
        bp.g0 = g0_grid[gi];
        double start = ok[0] ? E[0] : 0.0;
        for (int i = 1; i < n_scan; ++i) {
            if (ok[i] == ok[i - 1]) continue;
            const double x = edge(E[i - 1], E[i], ok[i - 1]);
            if (ok[i]) start = x;
            else bp.intervals.emplace_back(start, x);
        }
        if (ok[n_scan - 1]) bp.intervals.emplace_back(start, E[n_scan - 1]);
        bp.e_max = (ok[0] && !bp.intervals.empty()) ? bp.intervals.front().second : 1.0;
        out[gi] = std::move(bp);
    });
    return out;
}

RelaxationPair relaxation_asymptote(const NormalizedParams& np, double E)
{
    if (!(E > 1.0)) throw DomainError("relaxation estimate needs E > 1");
    const double d2 = np.delta * np.delta;
    return {cplx(0.0, 1.0 - d2),
            cplx(std::sqrt(2.0 * E * np.g0), 0.5 * (1.0 + d2 + np.g0))};
}

RelaxationPair relaxation_limit(const NormalizedParams& np, double E)
{
    if (!(E > 1.0)) throw DomainError("relaxation estimate needs E > 1");
    const double d2 = np.delta * np.delta;
    return {cplx(0.0, 2.0 * (1.0 - d2)),
            cplx(std::sqrt(2.0 * E * np.g0), 0.5 * (np.g0 + 2.0 * d2))};
}

RelaxationPair relaxation_exact(const NormalizedParams& np, double E)
{
    const auto rs = roots(charpoly(np, E));
    RelaxationPair p{cplx(std::nan(""), std::nan("")), cplx(std::nan(""), std::nan(""))};
    double best1 = std::numeric_limits<double>::infinity();
    double best2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 5; ++i) {
        const cplx o = rs.omega[i];
        if (rs.cls[i] == RootClass::imaginary && o.imag() < best1) {
            best1 = o.imag();
            p.omega1 = o;
        }
        if (rs.cls[i] == RootClass::complex_pair && o.real() > 0.0 && o.imag() < best2) {
            best2 = o.imag();
            p.omega2 = o;
        }
    }
    return p;
}

std::optional<RootLabels> label_roots(const ResonanceSet& rs)
{
    if (rs.count(RootClass::imaginary) != 1 || rs.count(RootClass::complex_pair) != 4)
        return std::nullopt;
    RootLabels l;
    std::vector<cplx> pos;
    for (int i = 0; i < 5; ++i) {
        if (rs.cls[i] == RootClass::imaginary) l.omega1 = rs.omega[i];
        else if (rs.omega[i].real() > 0.0) pos.push_back(rs.omega[i]);
    }
    if (pos.size() != 2) return std::nullopt;
    if (pos[0].imag() < pos[1].imag()) std::swap(pos[0], pos[1]);
    l.omega2 = pos[0];
    l.omega4 = pos[1];
    return l;
}

Poly adiabatic_charpoly(const NormalizedParams& np, double E)
{
    require_above(E);
    const auto x = effective_excitation(E, np.psi);
    const double em = x.e_eff - 1.0, t2 = std::pow(std::tan(np.psi), 2), d2 = np.delta * np.delta;
    // leading pump-damping order of D', divided by -g0^2
    return {cplx(0.0, 8.0 * x.e_eff * em * (1.0 - d2)),
            cplx(-4.0 * ((em * em + 3.0 * em + 1.0) - (em - t2) * d2)),
            cplx(0.0, -4.0 * x.e_eff),
            cplx(1.0)};
}

} // namespace opo
