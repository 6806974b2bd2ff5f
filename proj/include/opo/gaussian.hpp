#pragma once

#include <utility>

#include "opo/types.hpp"

// Single-mode Gaussian states written with the SU(1,1) generators
// 2K+ = a^dag^2, 2K- = a^2, 4K0 = a^dag a + a a^dag:
//   rho ~ exp(-(n_mu + n_phi) K0 + (n_mu - n_phi)/2 (K+ + K-)) = N e^{2u K0} e^{v K+} e^{-w K-}.
namespace opo::gaussian {

struct Disentangled {
    double u = 0, v = 0, w = 0;
};

struct StateParams {
    double n_mu = 1, n_phi = 1;
    double q() const;        // sqrt(n_mu n_phi)
    double theta_big() const; // Theta with sinh Theta = 2q/(n_mu - n_phi); sign follows n_mu - n_phi
};

Disentangled disentangle(double n_mu, double n_phi);
// Inverse map from the trace identity; returns (n_mu, n_phi).
std::pair<double, double> entangle(const Disentangled& d);

// 1/sqrt((vw + 1) e^u - 2 + e^{-u}); throws when the radicand is not positive.
double trace(const Disentangled& d);

struct Moments {
    cplx comm;      // <[phi, mu]>
    double mu2 = 0;
    double phi2 = 0;
};

// As typeset: i k^2/2, (k^2/2)(1/n + 1/2).
Moments moments_printed(double n_mu, double n_phi, double k);
// Thermal-oscillator values of the same state.
Moments moments_exact(double n_mu, double n_phi, double k);

struct SqueezeThermal {
    double theta = 0;   // tanh(2 theta) = (n_mu - n_phi)/(n_mu + n_phi)
    double norm = 0;    // 2 sinh(sqrt(n_mu n_phi)/2)
    double beta = 0;    // thermal exponent 2 sqrt(n_mu n_phi) on K0
};

SqueezeThermal squeeze_to_thermal(double n_mu, double n_phi);

struct OracleResult {
    int n_basis = 0;
    double trace_single = 0;     // Tr exp(-(n_mu+n_phi)K0 + ...)
    double trace_product = 0;    // Tr e^{2uK0} e^{vK+} e^{-wK-}
    double tail = 0;             // occupancy beyond 0.8 N of the normalized state
    Moments moments;
    double conj_residual = 0;    // || S^dag rho S - thermal || / || thermal ||
};

// Number basis truncated at N; throws NumericalError when the tail exceeds 1e-8.
OracleResult fock_oracle(double n_mu, double n_phi, double k, int n_max = 200);
// Trace of the disentangled product alone.
double fock_trace_product(const Disentangled& d, int n_max = 200);

} // namespace opo::gaussian
