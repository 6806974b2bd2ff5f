#pragma once

#include <array>
#include <string>
#include <vector>

#include "opo/model.hpp"
#include "opo/poly.hpp"
#include "opo/resonances.hpp"

namespace opo {

// f^dagger(w) = conj(f(-conj(w)))
struct DeltaSet {
    std::array<cplx, 3> d{};    // index = mode (0 pump, 1 signal, 2 idler)
    std::array<cplx, 3> dd{};   // dagger partners
};

DeltaSet delta_set(const NormalizedParams& np, double script_e, cplx w);

struct ABF {
    std::array<cplx, 3> A{}, Ad{}, B{}, Bd{};
    std::array<cplx, 3> Fm{}, Fp{}, Fmd{}, Fpd{};   // F_{k-}, F_{k+} and daggers
};

ABF abf(const NormalizedParams& np, double script_e, cplx w);

enum class Route { general, resonant, adiabatic };
const char* route_name(Route r);

enum class Quad { amp, phase };   // 0 and pi/2 quadratures

// One transfer function K^q_{jk}.
struct KIndex {
    Quad q;
    int j;
    int k;
    std::string name() const;                 // e.g. K0_12, Kpi_10, K0_01
    bool origin_pole() const { return q == Quad::phase && k != 0; }
    bool operator==(const KIndex&) const = default;
};

// The 14 responses: K0_{jj}, K0_{jj'}, K0_{j0}, K0_{0j}, Kpi_{jj}, Kpi_{jj'}, Kpi_{j0}.
const std::vector<KIndex>& all_kindex();

struct TransferEval {
    Route route = Route::general;
    cplx omega;
    std::array<std::array<cplx, 3>, 3> k0{};   // k0[j][k]; k0[0][0] unused
    std::array<std::array<cplx, 3>, 3> kpi{};  // kpi[j][k], j = 1,2
    cplx get(const KIndex& x) const { return x.q == Quad::amp ? k0[x.j][x.k] : kpi[x.j][x.k]; }
};

// eps_shift > 0 moves the origin pole of Kpi_{jj}, Kpi_{jj'} to i*eps.
// Resonant and adiabatic closed forms need psi = 0 and leave K0_{0j} as NaN.
// At w = 0 exactly the removable singularities are averaged out; the origin-pole
// entries are infinite unless eps_shift > 0.
TransferEval k_eval(const NormalizedParams& np, double E, cplx w, Route route = Route::general,
                    double eps_shift = 0.0);

// Numerator N(w) = K(w) D'(w) (times w for the origin-singular pair).
struct KNumerator {
    KIndex which;
    Poly coeffs;
    int degree = 0;
    cplx leading;
    cplx expected_leading;
    double fit_residual = 0.0;
};

int expected_numerator_degree(const KIndex& x);
cplx expected_numerator_leading(const NormalizedParams& np, double E, const KIndex& x);
// Same coefficient as typeset next to the general K lists.
cplx printed_numerator_leading(const NormalizedParams& np, double E, const KIndex& x);

KNumerator k_times_dprime_poly(const NormalizedParams& np, double E, const KIndex& x);

struct ResidueTable {
    ResonanceSet poles;
    std::vector<KIndex> index;                 // same order as all_kindex()
    std::vector<std::array<cplx, 5>> res;      // res[i][r] at poles.omega[r]
    std::vector<cplx> origin;                  // residue at 0; zero for regular entries
    std::vector<Poly> numer;
    std::size_t slot(const KIndex& x) const;
};

// Throws NumericalError when two poles (origin included) are closer than 1e-6.
ResidueTable residues(const NormalizedParams& np, double E);

// Origin behaviour.
cplx k0_j0_origin(const NormalizedParams& np, double E);            // derived: (1 - i tan/E_eff)/2
cplx k0_j0_origin_printed(const NormalizedParams& np, double E, bool eeff_minus_one);
cplx kpi_j0_origin(const NormalizedParams& np, double E, int j);    // as typeset
cplx kpi_origin_residue(const NormalizedParams& np, int j, int k);  // derived
cplx kpi_origin_residue_printed(const NormalizedParams& np, int j, int k);

// Limit of a general-route K at w -> 0, averaged over four directions.
cplx origin_limit(const NormalizedParams& np, double E, const KIndex& x, double h = 1e-4);

struct LowFrequencyReading {
    cplx numeric;              // general-route limit of K0_{j0}
    cplx printed_eeff;         // 1/4 (1 - i tan/E_eff)
    cplx printed_eeff_m1;      // 1/4 (1 - i tan/(E_eff-1))
    double phase_err_eeff = 0; // |arg numeric - arg candidate|
    double phase_err_eeff_m1 = 0;
    bool eeff_reading = true;
    double scale = 0;          // |numeric| / |chosen candidate|
};

LowFrequencyReading resolve_low_frequency_reading(const NormalizedParams& np, double E);

} // namespace opo
