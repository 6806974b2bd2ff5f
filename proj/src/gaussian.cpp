#include "opo/gaussian.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace opo::gaussian {

namespace {

void require_positive(double n_mu, double n_phi)
{
    if (!(n_mu > 0.0) || !(n_phi > 0.0))
        throw DomainError("Gaussian state needs n_mu > 0 and n_phi > 0");
}

// sinh(q + Theta) = X/d with X = s sinh q + 2q cosh q; finite on the diagonal d = 0.
double x_of(double s, double q) { return s * std::sinh(q) + 2.0 * q * std::cosh(q); }

using Mat = Eigen::MatrixXd;

struct Generators {
    Mat k0, kp, km;
};

Generators generators(int n_max)
{
    const int n = n_max + 1;
    Generators g{Mat::Zero(n, n), Mat::Zero(n, n), Mat::Zero(n, n)};
    for (int i = 0; i < n; ++i) g.k0(i, i) = (2.0 * i + 1.0) / 4.0;
    for (int i = 0; i + 2 < n; ++i) g.kp(i + 2, i) = 0.5 * std::sqrt((i + 1.0) * (i + 2.0));
    g.km = g.kp.transpose();
    return g;
}

} // namespace

double StateParams::q() const { return std::sqrt(n_mu * n_phi); }

double StateParams::theta_big() const
{
    const double d = n_mu - n_phi;
    if (d == 0.0) return std::copysign(INFINITY, 1.0);
    return std::asinh(2.0 * q() / d);
}

Disentangled disentangle(double n_mu, double n_phi)
{
    require_positive(n_mu, n_phi);
    const double s = n_mu + n_phi, d = n_mu - n_phi, q = std::sqrt(n_mu * n_phi);
    const double X = x_of(s, q), sh = std::sinh(q);
    Disentangled r;
    r.w = -sh * d / X;
    r.v = sh * X * d / (4.0 * q * q);
    r.u = std::log(2.0 * q / X);
    return r;
}

std::pair<double, double> entangle(const Disentangled& dz)
{
    const double rad = (dz.v * dz.w + 1.0) * std::exp(dz.u) - 2.0 + std::exp(-dz.u);
    if (!(rad > 0.0)) throw DomainError("disentangled parameters are not trace class");
    // radicand = 4 sinh^2(q/2)
    const double q = 2.0 * std::asinh(0.5 * std::sqrt(rad));
    const double sh = std::sinh(q);
    const double d2 = -4.0 * q * q * dz.v * dz.w / (sh * sh);
    const double d = std::copysign(std::sqrt(std::max(d2, 0.0)), dz.v);
    const double X = 2.0 * q * std::exp(-dz.u);
    const double s = (X - 2.0 * q * std::cosh(q)) / sh;
    return {(s + d) / 2.0, (s - d) / 2.0};
}

double trace(const Disentangled& d)
{
    const double rad = (d.v * d.w + 1.0) * std::exp(d.u) - 2.0 + std::exp(-d.u);
    if (!(rad > 0.0)) throw DomainError("non-normalizable state: trace radicand is not positive");
    return 1.0 / std::sqrt(rad);
}

Moments moments_printed(double n_mu, double n_phi, double k)
{
    require_positive(n_mu, n_phi);
    const double h = 0.5 * k * k;
    return {I * h, h * (1.0 / n_mu + 0.5), h * (1.0 / n_phi + 0.5)};
}

Moments moments_exact(double n_mu, double n_phi, double k)
{
    require_positive(n_mu, n_phi);
    const double q = std::sqrt(n_mu * n_phi), h = 0.5 * k * k;
    const double c = 0.5 / std::tanh(0.5 * q);
    return {I * h, h * std::sqrt(n_phi / n_mu) * c, h * std::sqrt(n_mu / n_phi) * c};
}

SqueezeThermal squeeze_to_thermal(double n_mu, double n_phi)
{
    require_positive(n_mu, n_phi);
    const double s = n_mu + n_phi, d = n_mu - n_phi, q = std::sqrt(n_mu * n_phi);
    const double t = d / s;
    if (!(std::abs(t) < 1.0)) throw NumericalError("squeeze parameter out of range");
    SqueezeThermal r;
    r.theta = 0.5 * std::atanh(t);
    r.norm = 2.0 * std::sinh(0.5 * q);
    r.beta = 2.0 * q;
    return r;
}

double fock_trace_product(const Disentangled& d, int n_max)
{
    const auto g = generators(n_max);
    const int n = n_max + 1;
    Mat left = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) left(i, i) = std::exp(2.0 * d.u * g.k0(i, i));
    const Mat up = (d.v * g.kp).exp();
    const Mat down = (-d.w * g.km).exp();
    return (left * up * down).trace();
}

OracleResult fock_oracle(double n_mu, double n_phi, double k, int n_max)
{
    require_positive(n_mu, n_phi);
    if (n_max < 10) throw DomainError("Fock basis too small");
    const auto g = generators(n_max);
    const int n = n_max + 1;
    const double s = n_mu + n_phi, d = n_mu - n_phi;

    const Mat H = s * g.k0 - 0.5 * d * (g.kp + g.km);
    Eigen::SelfAdjointEigenSolver<Mat> es(H);
    if (es.info() != Eigen::Success) throw NumericalError("Fock oracle eigen-solver failed");
    const Eigen::VectorXd ex = (-es.eigenvalues().array()).exp();
    const Mat rho = es.eigenvectors() * ex.asDiagonal() * es.eigenvectors().transpose();

    OracleResult r;
    r.n_basis = n_max;
    r.trace_single = rho.trace();
    const Mat rn = rho / r.trace_single;
    for (int i = int(0.8 * n); i < n; ++i) r.tail += rn(i, i);
    if (r.tail > 1e-8)
        throw NumericalError("Fock truncation too small for this state (tail " + std::to_string(r.tail) + ")");

    r.trace_product = fock_trace_product(disentangle(n_mu, n_phi), n_max);

    const double h = 0.5 * k * k;
    const Mat p2 = 2.0 * g.k0 - (g.kp + g.km);
    const Mat x2 = 2.0 * g.k0 + (g.kp + g.km);
    r.moments.mu2 = h * (rn * p2).trace();
    r.moments.phi2 = h * (rn * x2).trace();
    // truncated [a, a^dag] = diag(1, ..., 1, -N)
    r.moments.comm = I * h * (1.0 - double(n) * rn(n - 1, n - 1));

    const auto st = squeeze_to_thermal(n_mu, n_phi);
    const Mat S = (st.theta * (g.km - g.kp)).exp();
    Mat thermal = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i) thermal(i, i) = std::exp(-st.beta * g.k0(i, i));
    thermal *= st.norm;   // unit trace in the untruncated space
    const int b = n / 2;  // stay clear of the truncation edge
    const Mat a1 = (S.transpose() * rn * S).topLeftCorner(b, b);
    const Mat a2 = (S * rn * S.transpose()).topLeftCorner(b, b);
    const Mat tb = thermal.topLeftCorner(b, b);
    r.conj_residual = std::min((a1 - tb).norm(), (a2 - tb).norm()) / tb.norm();
    return r;
}

} // namespace opo::gaussian
