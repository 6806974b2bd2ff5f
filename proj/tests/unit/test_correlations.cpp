#include <doctest.h>

#include <cmath>

#include "opo/correlations.hpp"

using namespace opo;

namespace {

struct Setup {
    NormalizedParams np;
    double E;
    NoiseWeights nw;
    KernelSet ks;
    Setup(double g0, double delta, double psi, double e)
        : np(NormalizedParams::make(g0, delta, psi, {0.1, 0.2, 0.2})), E(e), nw(noise_weights(np, e)),
          ks(np, e, nw)
    {
    }
};

} // namespace

TEST_CASE("kernels decay")
{
    Setup s(2.0, 0.1, 0.3, 3.0);
    const double far = 80.0 / s.ks.slowest_rate();
    for (auto k : {KernelKind::phiphi, KernelKind::mumu, KernelKind::muphi, KernelKind::phimu})
        CHECK(std::abs(s.ks(k, 1, 2, far)) < 1e-12);
}

TEST_CASE("kernel derivative matches a finite difference")
{
    Setup s(2.0, 0.1, 0.3, 3.0);
    const double t = 0.7, h = 1e-5;
    const cplx fd = (s.ks(KernelKind::mumu, 1, 1, t + h) - s.ks(KernelKind::mumu, 1, 1, t - h)) / (2 * h);
    CHECK(std::abs(s.ks.derivative(KernelKind::mumu, 1, 1, t) - fd) < 1e-7);
}

TEST_CASE("phase structure function")
{
    Setup s(2.0, 0.1, 0.3, 3.0);
    const double dnu = linewidth(s.np, s.E, 50.0, 0.0, 1).dnu;
    CHECK(std::abs(correlations(s.ks, 1, 1, 50.0, dnu, 0.0).phase_structure) < 1e-14);
    // linear diffusion once the kernels have decayed; the offset is the O(1/C^2) equal-time term
    const double t = 100.0 / s.ks.slowest_rate();
    const cplx a = correlations(s.ks, 1, 1, 50.0, dnu, t).phase_structure;
    const cplx b = correlations(s.ks, 1, 1, 50.0, dnu, 2.0 * t).phase_structure;
    CHECK((b - a).real() == doctest::Approx(-dnu * t).epsilon(1e-9));
    const cplx offset = -I / (4.0 * 50.0) * s.ks(KernelKind::phiphi, 1, 1, 0.0);
    CHECK(std::abs(a + dnu * t - offset) < 1e-12);
}

TEST_CASE("commutators vanish at resonance and not when detuned")
{
    Setup r(2.0, 0.1, 0.0, 3.0);
    Setup d(2.0, 0.1, 0.1, 3.0);
    for (double t : {0.1, 0.5, 1.0, 3.0}) {
        const auto c = commutators(r.ks, 1, 10.0, t);
        CHECK(std::abs(c.phiphi) < 1e-10);
        CHECK(std::abs(c.mumu) < 1e-10);
        CHECK(std::abs(c.anti) < 1e-10);
    }
    double biggest = 0.0;
    for (double t : {0.1, 0.5, 1.0, 3.0}) {
        const auto c = commutators(d.ks, 1, 10.0, t);
        biggest = std::max({biggest, std::abs(c.phiphi), std::abs(c.mumu), std::abs(c.anti)});
    }
    CHECK(biggest > 1e-6);
}

TEST_CASE("linewidth")
{
    const auto np = NormalizedParams::make(2.0, 0.2, 0.3);
    const double c_sq = 5.0;
    const auto lw = linewidth(np, 3.0, c_sq, 0.0, 1);
    const double floor = std::pow(1.0 - 0.04, 2) / (8.0 * c_sq * std::pow(std::cos(0.3), 4));
    CHECK(lw.spontaneous == doctest::Approx(floor));
    CHECK(lw.dnu == doctest::Approx(floor));

    const auto r = NormalizedParams::make(2.0, 0.0, 0.0);
    CHECK(linewidth(r, 3.0, 1.0, 0.0, 1).f_phi == doctest::Approx(0.25));
    const auto big = linewidth(r, 3.0, 1e12, 0.4, 1);
    CHECK(big.dnu == doctest::Approx(big.f_phi * 0.4).epsilon(1e-9));
    CHECK(spontaneous_floor_from_residue(r, c_sq) == doctest::Approx(linewidth(r, 3.0, c_sq, 0.0, 1).spontaneous));
}

TEST_CASE("field correlations settle on the diffusing phase")
{
    Setup s(2.0, 0.0, 0.0, 3.0);
    OpoParams p;
    p.gamma_mirror = {2.0, 1.0, 1.0};
    const auto st = steady_state(p, 3.0);
    const double dnu = 0.01;
    const double t = 100.0 / s.ks.slowest_rate();
    // residual departure from r^2 e^{-dnu t} is the equal-time phase term, O(1/C^2)
    const double base = st.r1 * st.r1 * std::exp(-dnu * t);
    const double dev1 = std::abs(field_correlations(s.ks, st, 1, st.c_sq, dnu, t).first_order / base - 1.0);
    const double dev2 = std::abs(field_correlations(s.ks, st, 1, 10.0 * st.c_sq, dnu, t).first_order / base - 1.0);
    CHECK(dev1 > 0.0);
    CHECK(dev2 == doctest::Approx(dev1 / 10.0).epsilon(1e-9));
}

TEST_CASE("intensity variance decays")
{
    Setup s(2.0, 0.1, 0.2, 3.0);
    const double t = 100.0 / s.ks.slowest_rate();
    CHECK(std::abs(intensity_variance(s.ks, 1, t).total()) < 1e-12);
}

TEST_CASE("spectrum is the cosine transform of the amplitude kernel")
{
    for (double psi : {0.0, 0.3}) {
        Setup s(2.0, 0.1, psi, 3.0);
        const std::vector<double> w{0.2, 1.0, 3.0, 5.0};
        const double T = 60.0 / s.ks.slowest_rate();
        const auto ft = cosine_transform([&](double t) { return -2.0 * s.ks(KernelKind::mumu, 1, 1, t).imag(); },
                                         w, T, 20000);
        const auto sp = single_beam_spectrum(s.np, s.E, s.nw, Target::internal, 1, w);
        for (std::size_t i = 0; i < w.size(); ++i) CHECK(ft[i] == doctest::Approx(sp.s_mu[i]).epsilon(1e-6));
    }
}
