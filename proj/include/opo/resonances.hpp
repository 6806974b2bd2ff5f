#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "opo/model.hpp"
#include "opo/poly.hpp"

namespace opo {

// Monic quintic D'(w) = w^5 + D5 w^4 + D4 w^3 + D3 w^2 + D2 w + D1.
// The full characteristic polynomial is D'(w) * w.
struct CharPoly {
    std::array<cplx, 6> c{};   // ascending; c[k-1] = D^(k), c[5] = 1
    cplx d(int k) const { return c[k - 1]; }
    Poly poly() const { return Poly(c.begin(), c.end()); }
    cplx operator()(cplx w) const;
};

CharPoly charpoly(const NormalizedParams& np, double E);
// Coefficients exactly as typeset in the source derivation; D3 and D1 there do
// not match the determinant of the fluctuation system. Kept for comparison.
CharPoly charpoly_as_printed(const NormalizedParams& np, double E);

enum class RootClass { origin, imaginary, complex_pair };
const char* class_name(RootClass c);

struct ResonanceSet {
    std::array<cplx, 5> omega{};
    std::array<RootClass, 5> cls{};
    std::array<int, 5> partner{};   // index of -conj(omega) for complex roots, else -1
    cplx sum() const;
    int count(RootClass c) const;
};

ResonanceSet roots(const CharPoly& poly, double tol = 1e-9);

// True when the least-damped poles ring: some pole within 1e-6 of the smallest
// damping has |Re| > Im, i.e. more than one radian of oscillation per decay time.
bool underdamped(const ResonanceSet& rs);

struct ResonantFactors {
    Poly d_minus;   // w^2 - i g1 w - g2
    Poly d_plus;    // w^3 - i g1 w^2 - g2 w + i g3
    double g1 = 0, g2 = 0, g3 = 0;
    std::array<cplx, 2> roots_minus{};
    std::array<cplx, 3> roots_plus{};
};

// psi must be zero.
ResonantFactors resonant_factors(const NormalizedParams& np, double E);

struct SturmMargins {
    double first = 0, second = 0, third = 0;  // lhs - rhs of each inequality
    bool all() const { return first > 0 && second > 0 && third > 0; }
};

// psi = 0, or a balanced detuned cavity (evaluated at E_eff).
SturmMargins sturm_margins(const NormalizedParams& np, double E);
bool sturm_all_imaginary(const NormalizedParams& np, double E);
// Numeric counterpart: the three roots of D_+ taken from the full quintic.
bool numeric_dplus_imaginary(const NormalizedParams& np, double E, double tol = 1e-9);

struct BoundaryPoint {
    double g0 = 0;
    double e_max = 1;                                  // end of the region attached to E=1
    std::vector<std::pair<double, double>> intervals;  // every all-imaginary interval found
    bool detached() const { return intervals.size() > 1; }
};

std::vector<BoundaryPoint> emax_boundary(const std::vector<double>& g0_grid, double delta,
                                         int n_scan = 512, double e_hi = 50.0);

struct RelaxationPair {
    cplx omega1;
    cplx omega2;
};

// Large-E estimates as published.
RelaxationPair relaxation_asymptote(const NormalizedParams& np, double E);
// Same limit taken from the resonant factorization (Vieta on D_+).
RelaxationPair relaxation_limit(const NormalizedParams& np, double E);
// Exact roots matched to the two estimates: omega1 the slowest imaginary root,
// omega2 the least damped complex root with positive real part.
RelaxationPair relaxation_exact(const NormalizedParams& np, double E);

// Labels for the detuned spectrum: one imaginary root and two complex pairs.
struct RootLabels {
    cplx omega1;   // imaginary
    cplx omega2;   // pair with the larger imaginary part (Re >= 0 member)
    cplx omega4;   // pair with the smaller imaginary part (Re >= 0 member)
};
std::optional<RootLabels> label_roots(const ResonanceSet& rs);

// Large pump-damping limit: monic cubic, ascending coefficients.
Poly adiabatic_charpoly(const NormalizedParams& np, double E);

} // namespace opo
