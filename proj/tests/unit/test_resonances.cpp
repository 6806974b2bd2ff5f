#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Dense>

#include "opo/oracle.hpp"
#include "opo/resonances.hpp"

using namespace opo;

namespace {

double min_dist(const std::vector<cplx>& set, cplx z)
{
    double best = 1e300;
    for (const auto& s : set) best = std::min(best, std::abs(s - z));
    return best;
}

} // namespace

TEST_CASE("charpoly: published coefficient values")
{
    const auto np = NormalizedParams::make(2.0, 0.1, 0.3);
    CHECK(std::abs(charpoly(np, 3.0).d(5) - cplx(0, -8)) < 1e-14);
    const auto np0 = NormalizedParams::make(2.0, 0.0, 0.0);
    CHECK(std::abs(charpoly(np0, 1.0).d(1)) < 1e-14);
}

TEST_CASE("charpoly matches the determinant of the fluctuation system")
{
    // det M(w) is a degree-6 polynomial proportional to w * D'(w)
    const auto np = NormalizedParams::make(2.0, 0.1, 0.3);
    const double E = 3.0;
    const auto cp = charpoly(np, E);
    auto det = [&](cplx w) {
        const auto sys = oracle::assemble(np, E, w, oracle::Injection::z1);
        Eigen::Matrix<cplx, 6, 6> m;
        for (int r = 0; r < 6; ++r)
            for (int c = 0; c < 6; ++c) m(r, c) = sys.m[r][c];
        return m.determinant();
    };
    const cplx w0(0.7, 0.4), w1(-1.3, 2.1), w2(2.5, -0.6);
    const cplx ratio0 = det(w0) / (w0 * cp(w0));
    CHECK(std::abs(det(w1) / (w1 * cp(w1)) - ratio0) < 1e-10 * std::abs(ratio0));
    CHECK(std::abs(det(w2) / (w2 * cp(w2)) - ratio0) < 1e-10 * std::abs(ratio0));
}

TEST_CASE("charpoly is invariant under the dagger pairing")
{
    const auto np = NormalizedParams::make(1.3, -0.2, 0.4);
    const auto cp = charpoly(np, 2.5);
    // D(w) = conj(D(-conj w)) up to the sign of the odd degree
    for (cplx w : {cplx(0.3, 0.2), cplx(-2.0, 1.0), cplx(4.0, -3.0)}) {
        const cplx a = cp(w);
        const cplx b = -std::conj(cp(mirror(w)));
        CHECK(std::abs(a - b) < 1e-11 * std::max(1.0, std::abs(a)));
    }
}

TEST_CASE("roots: pairing, damping and the Vieta sum")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ug(0.2, 6.0), ud(-0.5, 0.5), up(-1.0, 1.0), ue(1.05, 8.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto np = NormalizedParams::make(ug(rng), ud(rng), up(rng));
        const double E = ue(rng);
        const auto rs = roots(charpoly(np, E));
        std::vector<cplx> all(rs.omega.begin(), rs.omega.end());
        for (const auto& w : all) {
            CHECK(w.imag() > 0.0);
            CHECK(min_dist(all, mirror(w)) < 1e-8);
        }
        CHECK(std::abs(rs.sum() - cplx(0, 2.0 * (np.g0 + 2.0))) < 1e-8);
    }
}

TEST_CASE("resonant factorization reproduces the quintic roots")
{
    const auto np = NormalizedParams::make(2.5, 0.2, 0.0);
    const double E = 3.0;
    const auto f = resonant_factors(np, E);
    CHECK(f.g1 == doctest::Approx(2.0 + 2.5));
    CHECK(f.g2 == doctest::Approx(2.0 * E * 2.5));
    CHECK(f.g3 == doctest::Approx(4.0 * (E - 1.0) * 2.5 * (1.0 - 0.04)));
    const auto rs = roots(charpoly(np, E));
    std::vector<cplx> all(rs.omega.begin(), rs.omega.end());
    for (const auto& r : f.roots_minus) CHECK(min_dist(all, r) < 1e-8);
    for (const auto& r : f.roots_plus) CHECK(min_dist(all, r) < 1e-8);
    CHECK_THROWS_AS(resonant_factors(NormalizedParams::make(2.5, 0.2, 0.1), E), DomainError);
}

TEST_CASE("Sturm predicate agrees with numerics")
{
    const auto np = NormalizedParams::make(0.5, 0.0, 0.0);
    CHECK(sturm_all_imaginary(np, 1.0 + 1e-9));
    for (double g0 : {0.3, 1.0, 2.0, 4.0})
        for (double E : {1.2, 2.0, 5.0, 20.0}) {
            const auto p = NormalizedParams::make(g0, 0.05, 0.0);
            const auto m = sturm_margins(p, E);
            const double slack = std::min({std::abs(m.first), std::abs(m.second), std::abs(m.third)});
            if (slack > 1e-6) CHECK(sturm_all_imaginary(p, E) == numeric_dplus_imaginary(p, E));
        }
}

TEST_CASE("Fig. 1 setting keeps w2 near 2")
{
    const auto np = NormalizedParams::make(2.0, 0.1, 0.3);
    for (double E : {4.0, 6.0, 10.0}) {
        const auto lab = label_roots(roots(charpoly(np, E)));
        REQUIRE(lab.has_value());
        CHECK(lab->omega2.imag() == doctest::Approx(2.0).epsilon(2e-3));
    }
}

TEST_CASE("relaxation asymptotes")
{
    const auto a = relaxation_asymptote(NormalizedParams::make(2.0, 0.0, 0.0), 50.0);
    CHECK(std::abs(a.omega1 - cplx(0, 1)) < 1e-12);
    const auto b = relaxation_asymptote(NormalizedParams::make(1.0, 0.0, 0.0), 100.0);
    CHECK(b.omega2.real() == doctest::Approx(std::sqrt(200.0)).epsilon(1e-2));
    const auto ex = relaxation_exact(NormalizedParams::make(1.0, 0.0, 0.0), 100.0);
    CHECK(ex.omega2.real() == doctest::Approx(std::sqrt(200.0)).epsilon(2e-2));
}

TEST_CASE("adiabatic limit")
{
    const auto np = NormalizedParams::make(400.0, 0.0, 0.0);
    const double E = 3.0;
    const auto cubic = poly_roots(adiabatic_charpoly(np, E));
    const auto rs = roots(charpoly(np, E));
    std::vector<cplx> all(rs.omega.begin(), rs.omega.end());
    // the non-origin cubic roots reappear among the quintic roots
    int matched = 0;
    for (const auto& c : cubic)
        if (std::abs(c) > 1e-6 && min_dist(all, c) < 0.05) ++matched;
    CHECK(matched >= 1);
    int fast = 0;
    for (const auto& w : all)
        if (w.imag() > 100.0) ++fast;
    CHECK(fast >= 1);
}

TEST_CASE("boundary scan finds the attached region")
{
    const auto pts = emax_boundary({0.5, 1.0, 4.0}, 0.05, 256, 30.0);
    REQUIRE(pts.size() == 3);
    for (const auto& p : pts) CHECK(p.e_max > 1.0);
}
