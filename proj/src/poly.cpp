#include "opo/poly.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace opo {

cplx horner(const Poly& c, cplx z)
{
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

Poly derivative(const Poly& c)
{
    if (c.size() <= 1) return {cplx(0.0)};
    Poly d(c.size() - 1);
    for (size_t k = 1; k < c.size(); ++k) d[k - 1] = double(k) * c[k];
    return d;
}

Poly multiply(const Poly& a, const Poly& b)
{
    Poly r(a.size() + b.size() - 1, cplx(0.0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly from_roots(const std::vector<cplx>& roots)
{
    Poly p{cplx(1.0)};
    for (const auto& r : roots) p = multiply(p, Poly{-r, cplx(1.0)});
    return p;
}

std::vector<cplx> poly_roots(const Poly& c_in)
{
    Poly c = c_in;
    while (c.size() > 1 && c.back() == cplx(0.0)) c.pop_back();
    const int n = int(c.size()) - 1;
    if (n < 1) return {};
    const cplx lead = c.back();

    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[i] / lead;

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    if (es.info() != Eigen::Success)
        throw NumericalError("companion eigen-solver failed to converge");

    const Poly dc = derivative(c);
    std::vector<cplx> roots(n);
    for (int i = 0; i < n; ++i) {
        cplx z = es.eigenvalues()[i];
        const cplx fz = horner(c, z), dz = horner(dc, z);
        if (std::abs(dz) > 0.0) {
            const cplx step = fz / dz;
            // one polish step; skip it when it would move the root far (clusters)
            if (std::abs(step) < 1e-3 * (1.0 + std::abs(z))) z -= step;
        }
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NumericalError("root finder produced a non-finite root");
        roots[i] = z;
    }
    return roots;
}

Poly fit_on_circle(const std::function<cplx(cplx)>& f, int degree, cplx center,
                   double radius, double* residual)
{
    const int n = 4 * (degree + 1);
    std::vector<cplx> samples(n);
    for (int m = 0; m < n; ++m) {
        const cplx e = std::polar(1.0, 2.0 * M_PI * m / n);
        samples[m] = f(center + radius * e);
    }
    // shifted-basis coefficients b_k (w.r.t. z - center)
    Poly b(degree + 1);
    for (int k = 0; k <= degree; ++k) {
        cplx acc = 0.0;
        for (int m = 0; m < n; ++m) acc += samples[m] * std::polar(1.0, -2.0 * M_PI * k * m / n);
        b[k] = acc / double(n) / std::pow(radius, k);
    }
    // expand sum b_k (z - c)^k into powers of z
    Poly out(degree + 1, cplx(0.0));
    for (int k = 0; k <= degree; ++k) {
        double binom = 1.0;
        for (int i = 0; i <= k; ++i) {
            out[i] += b[k] * binom * std::pow(-center, k - i);
            binom = binom * double(k - i) / double(i + 1);
        }
    }
    if (residual) {
        double worst = 0.0, scale = 0.0;
        for (int m = 0; m < n; ++m) {
            const cplx z = center + 0.7 * radius * std::polar(1.0, 2.0 * M_PI * (m + 0.5) / n);
            const cplx fz = f(z);
            scale = std::max(scale, std::abs(fz));
            worst = std::max(worst, std::abs(fz - horner(out, z)));
        }
        *residual = scale > 0.0 ? worst / scale : worst;
    }
    return out;
}

} // namespace opo
