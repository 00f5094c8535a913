#include <doctest.h>

#include <cmath>

#include "gamow/delta_shell.hpp"

using namespace gamow;

namespace {

// frozen root of exp(2ika) - 1 + 2ik/g for g=20, a=1, m=1, branch 1,
// confirmed below against the pole equation itself
const cplx kGoldenPole(2.9957751761810036, -0.020542952649148929);

}  // namespace

TEST_CASE("pole finder satisfies the pole equation") {
    const ShellResonance res = find_pole(20.0, 1.0, 1.0, 1);
    CHECK(res.pole_residual() <= 1e-12);
    CHECK(res.k_pole.imag() < 0.0);
    CHECK(res.width() > 0.0);
    CHECK(std::abs(res.k_pole - kGoldenPole) <= 1e-10);
}

TEST_CASE("impenetrable-shell limit pins the pole at branch*pi/a") {
    const ShellResonance res = find_pole(1e6, 1.0, 1.0, 1);
    CHECK(std::abs(res.k_pole.real() - M_PI) <= 1e-5);
    CHECK(std::abs(res.k_pole.imag()) <= 1e-5);
}

TEST_CASE("stronger shells give narrower resonances") {
    const double g20 = find_pole(20.0, 1.0, 1.0, 1).width();
    const double g200 = find_pole(200.0, 1.0, 1.0, 1).width();
    CHECK(g200 < g20);
}

TEST_CASE("pole finder error paths") {
    CHECK_THROWS_AS(find_pole(-1.0, 1.0, 1.0, 1), domain_error);
    CHECK_THROWS_AS(find_pole(20.0, 0.0, 1.0, 1), domain_error);
    CHECK_THROWS_AS(find_pole(20.0, 1.0, 1.0, 0), domain_error);
}

TEST_CASE("gamow state is continuous at the shell and grows outside") {
    const ShellResonance res = find_pole(20.0, 1.0, 1.0, 1);
    const double a = res.a;
    const cplx inside = gamow_u(res, a * (1.0 - 1e-13));
    const cplx outside = gamow_u(res, a * (1.0 + 1e-13));
    CHECK(std::abs(inside - outside) <= 1e-10 * std::abs(inside));

    // |u| ~ exp(|Im k| r)/r far outside the shell
    const double r1 = 20.0, r2 = 40.0;
    const double growth = std::abs(gamow_u(res, r2) * r2) / std::abs(gamow_u(res, r1) * r1);
    CHECK(growth ==
          doctest::Approx(std::exp(-res.k_pole.imag() * (r2 - r1))).epsilon(1e-10));

    CHECK_THROWS_AS(gamow_u(res, 0.0), domain_error);
}

TEST_CASE("gamow state has the outgoing logarithmic derivative") {
    const ShellResonance res = find_pole(20.0, 1.0, 1.0, 1);
    const double r = 50.0 * res.a;
    const double h = 3e-6;
    const cplx fd = (gamow_u(res, r + h) - gamow_u(res, r - h)) / (2.0 * h * gamow_u(res, r));
    // the reduced 1/r state carries ik - 1/r; r * u obeys ik exactly
    const cplx expect = cplx(0.0, 1.0) * res.k_pole - 1.0 / r;
    CHECK(std::abs(fd - expect) <= 1e-10 * std::abs(res.k_pole));
}

TEST_CASE("pseudo-norm is independent of the enclosing radius") {
    const ShellResonance res = find_pole(20.0, 1.0, 1.0, 1);
    const double r0 = 5.0 * res.a;
    const cplx n1 = pseudo_norm_1p(res, 2.0 * r0);
    const cplx n2 = pseudo_norm_1p(res, 4.0 * r0);
    CHECK(std::abs(n1 - n2) <= 1e-8 * std::abs(n1));
    CHECK_THROWS_AS(pseudo_norm_1p(res, 0.5 * res.a), domain_error);
}

TEST_CASE("analytic and quadrature norm paths agree") {
    const ShellResonance res = find_pole(20.0, 1.0, 1.0, 1);
    const cplx na = pseudo_norm_1p(res, 10.0);
    const cplx nq = pseudo_norm_1p(res, 10.0, NormMethod::Quadrature);
    CHECK(std::abs(na - nq) <= 1e-10 * std::abs(na));
}

TEST_CASE("impenetrable limit gives an essentially real positive norm") {
    const ShellResonance res = find_pole(1e6, 1.0, 1.0, 1);
    const cplx n = pseudo_norm_1p(res, 8.0);
    CHECK(n.real() > 0.0);
    CHECK(std::abs(n.imag()) <= 1e-3 * n.real());
}

TEST_CASE("free-shell green function reduces to the outgoing kernel") {
    // independent closed form: jump matching of sin(k r<) to exp(i k r>)
    // gives G = -(2m/k) sin(k r<) exp(i k r>)
    const double m = 1.0;
    const cplx e(1.3, 0.0);
    const cplx k = std::sqrt(2.0 * m * e);
    for (auto [r, rp] : {std::pair{0.7, 2.0}, std::pair{2.5, 1.1}}) {
        const cplx got = green_function(0.0, 1.0, m, e, r, rp);
        const double rlo = std::min(r, rp), rhi = std::max(r, rp);
        const cplx expect =
            -(2.0 * m / k) * std::sin(k * rlo) * std::exp(cplx(0.0, 1.0) * k * rhi);
        CHECK(std::abs(got - expect) <= 1e-12 * std::abs(expect));
    }
}

TEST_CASE("green function is symmetric in its radii") {
    for (const cplx e : {cplx(1.7, 0.0), cplx(2.2, -0.4)}) {
        const cplx a = green_function(20.0, 1.0, 1.0, e, 0.5, 3.0);
        const cplx b = green_function(20.0, 1.0, 1.0, e, 3.0, 0.5);
        CHECK(std::abs(a - b) <= 1e-12 * std::abs(a));
    }
}

TEST_CASE("green function obeys the outgoing boundary condition") {
    const double m = 1.0;
    const cplx e(2.0, 0.0);
    const cplx k = std::sqrt(2.0 * m * e);
    const double r = 50.0;
    const double h = 3e-6;
    const cplx g0 = green_function(20.0, 1.0, m, e, r, 2.0);
    const cplx fd =
        (green_function(20.0, 1.0, m, e, r + h, 2.0) - green_function(20.0, 1.0, m, e, r - h, 2.0)) /
        (2.0 * h * g0);
    CHECK(std::abs(fd - cplx(0.0, 1.0) * k) <= 1e-8 * std::abs(k));
}

TEST_CASE("green function refuses evaluation on a pole") {
    const ShellResonance res = find_pole(20.0, 1.0, 1.0, 1);
    CHECK_THROWS_AS(green_function(20.0, 1.0, 1.0, res.energy(), 2.0, 3.0), domain_error);
}

TEST_CASE("contour residue matches the gamow factorization") {
    const ShellResonance res = find_pole(20.0, 1.0, 1.0, 1);
    const ResidueCheck rc = residue_check(res, 2.0, 2.0);
    CHECK(std::abs(rc.residue - rc.factorized) <= 1e-6 * std::abs(rc.factorized));

    // swapping radii cannot change either side
    const ResidueCheck ab = residue_check(res, 2.0, 3.0);
    const ResidueCheck ba = residue_check(res, 3.0, 2.0);
    CHECK(ab.residue == ba.residue);
    CHECK(ab.factorized == ba.factorized);
}

TEST_CASE("residue is stable under contour shrinking") {
    const ShellResonance res = find_pole(20.0, 1.0, 1.0, 1);
    const cplx full = residue_check(res, 2.0, 3.0).residue;
    const cplx half = residue_check(res, 2.0, 3.0, 0.5).residue;
    CHECK(std::abs(full - half) <= 1e-8 * std::abs(full));
}

TEST_CASE("residue factorization across branches and strengths") {
    for (double g : {10.0, 20.0, 100.0}) {
        for (int branch : {1, 2, 3}) {
            const ShellResonance res = find_pole(g, 1.0, 1.0, branch);
            const ResidueCheck rc = residue_check(res, 2.0, 3.0);
            CHECK(std::abs(rc.residue - rc.factorized) <= 1e-6 * std::abs(rc.factorized));
        }
    }
}
