#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "opo/spectra.hpp"

using namespace opo;

TEST_CASE("noise weights")
{
    auto nw = noise_weights(NormalizedParams::make(2.0, 0.0, 0.0), 3.0);
    CHECK(nw.zeta[1] == doctest::Approx(2.0));
    CHECK(nw.zeta[2] == doctest::Approx(2.0));
    CHECK(nw.zeta[0] == doctest::Approx(1.0));
    nw = noise_weights(NormalizedParams::make(2.0, 0.0, 0.5), 3.0);
    CHECK(nw.zeta[1] == doctest::Approx(2.0 * std::cos(0.5)));
}

TEST_CASE("shot-noise calibration of the output beam")
{
    for (double delta : {0.0, 0.1})
        for (double E : {1.5, 4.0}) {
            const auto np = NormalizedParams::make(2.0, delta, 0.0);
            const auto s = single_beam_spectrum(np, E, noise_weights(np, E), Target::output, 1, {1e3});
            CHECK(s.s_mu[0] == doctest::Approx(1.0).epsilon(1e-4));
        }
}

TEST_CASE("twin-beam difference of a balanced lossless cavity")
{
    const auto np = NormalizedParams::make(2.0, 0.0, 0.0);
    const double E = 2.0;
    const std::vector<double> w{0.0, 0.5, 1.0, 2.0, 5.0};
    const auto s = difference_spectrum(np, E, noise_weights(np, E), w);
    CHECK(s.s_mu[0] < 1e-8);
    // intensity difference of ideal twins: w^2 / (w^2 + 4)
    for (std::size_t i = 0; i < w.size(); ++i)
        CHECK(s.s_mu[i] == doctest::Approx(w[i] * w[i] / (w[i] * w[i] + 4.0)).epsilon(1e-8));
}

TEST_CASE("photocurrent spectrum sums its parts")
{
    const auto np = NormalizedParams::make(4.0, 0.05, 0.25, {0.1, 0.3, 0.3});
    const auto nw = noise_weights(np, 3.0, 0.2, 0.01);
    const auto s = single_beam_spectrum(np, 3.0, nw, Target::output, 1, {0.3, 1.0, 4.0});
    for (std::size_t i = 0; i < s.omega.size(); ++i) {
        CHECK(s.s_j[i] == doctest::Approx(s.s_mu[i] + s.s_eps[i] + s.s_phi[i]));
        CHECK(s.total[i] == doctest::Approx(s.s_j[i] + s.s_comm[i]));
        CHECK(s.s_eps[i] >= 0.0);
        CHECK(s.s_phi[i] >= 0.0);
    }
}

TEST_CASE("pump noise pieces")
{
    // a real response carries no phase-noise conversion at resonance
    CHECK(sigma_phi(cplx(0.3, 0), cplx(0.3, 0), 0.0) == doctest::Approx(0.0));
    CHECK(sigma_eps(cplx(0.3, 0), cplx(0.3, 0), 0.0) > 0.0);
}

TEST_CASE("difference spectrum at the origin")
{
    const auto np = NormalizedParams::make(2.0, 0.05, 0.2, {0.0, 0.1, 0.1});
    const auto o = difference_origin(np, 3.0);
    CHECK(std::abs(o.dk0_numeric - o.dk0_derived) < 1e-5 * std::max(1.0, std::abs(o.dk0_derived)));
}

TEST_CASE("output target without an output mirror is rejected")
{
    const auto np = NormalizedParams::make(2.0, 0.0, 0.0, {0.0, 1.0, 0.0});
    CHECK_THROWS_AS(single_beam_spectrum(np, 2.0, noise_weights(np, 2.0), Target::output, 1, {1.0}), DomainError);
}
