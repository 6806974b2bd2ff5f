#pragma once

#include <functional>
#include <vector>

#include "opo/types.hpp"

namespace opo {

// Coefficients in ascending order: c[0] + c[1] z + ... + c[n] z^n.
using Poly = std::vector<cplx>;

cplx horner(const Poly& c, cplx z);
Poly derivative(const Poly& c);
Poly multiply(const Poly& a, const Poly& b);
Poly from_roots(const std::vector<cplx>& roots);  // monic

// Companion-matrix eigenvalues followed by a single Newton step on each root.
std::vector<cplx> poly_roots(const Poly& c);

// Polynomial of given degree sampled on a circle and recovered by a discrete
// Fourier sum. `residual` gets the worst relative mismatch on an offset circle.
Poly fit_on_circle(const std::function<cplx(cplx)>& f, int degree, cplx center,
                   double radius, double* residual = nullptr);

} // namespace opo
