#include <doctest.h>

#include <cmath>

#include "gamow/kinematics.hpp"
#include "test_support.hpp"

using namespace gamow;
using gamow::testing::random_instance;
using gamow::testing::rel_err;

namespace {

std::vector<cplx> to_cplx(std::initializer_list<double> xs) {
    return std::vector<cplx>(xs.begin(), xs.end());
}

}  // namespace

TEST_CASE("dispersion energy, symmetric unit case") {
    ParticleSystem sys({1.0, 1.0}, Dispersion::Nonrelativistic);
    const auto p = to_cplx({1.0, 1.0});
    CHECK(dispersion_energy(sys, std::span<const cplx>(p)).real() == doctest::Approx(1.0));
}

TEST_CASE("dispersion energy, relativistic rest and Pythagorean cases") {
    ParticleSystem rest({1.0, 2.0}, Dispersion::Relativistic);
    const auto zero = to_cplx({0.0, 0.0});
    CHECK(dispersion_energy(rest, std::span<const cplx>(zero)).real() == doctest::Approx(3.0));

    ParticleSystem single({4.0}, Dispersion::Relativistic);
    const auto p = to_cplx({3.0});
    CHECK(dispersion_energy(single, std::span<const cplx>(p)).real() == doctest::Approx(5.0));
}

TEST_CASE("velocity maps") {
    ParticleSystem nonrel({2.0}, Dispersion::Nonrelativistic);
    const auto p1 = to_cplx({3.0});
    CHECK(velocity_of_momentum(nonrel, std::span<const cplx>(p1))[0].real() ==
          doctest::Approx(1.5));

    ParticleSystem rel({4.0}, Dispersion::Relativistic);
    const auto p2 = to_cplx({3.0});
    CHECK(velocity_of_momentum(rel, std::span<const cplx>(p2))[0].real() ==
          doctest::Approx(0.6));
}

TEST_CASE("momentum<->velocity roundtrip property") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> mom(0.1, 10.0);
    for (Dispersion d : {Dispersion::Nonrelativistic, Dispersion::Relativistic}) {
        for (int s = 0; s < 50; ++s) {
            const auto inst = random_instance(rng, d, false);
            std::vector<cplx> p(inst.sys.size());
            for (auto& x : p) x = mom(rng);
            const auto v = velocity_of_momentum(inst.sys, std::span<const cplx>(p));
            const auto back = momentum_of_velocity(inst.sys, std::span<const cplx>(v));
            for (std::size_t n = 0; n < p.size(); ++n) CHECK(rel_err(back[n], p[n]) <= 1e-12);
        }
    }
}

TEST_CASE("mass matrix values") {
    ParticleSystem nonrel({1.0, 3.0}, Dispersion::Nonrelativistic);
    const auto p = to_cplx({0.7, 0.2});
    const MassMatrix mm = mass_matrix(nonrel, std::span<const cplx>(p));
    CHECK(mm.diag[0].real() == doctest::Approx(1.0));
    CHECK(mm.diag[1].real() == doctest::Approx(3.0));

    // relativistic m gamma^3, gamma = 5/4 for m=4, p=3
    ParticleSystem rel({4.0}, Dispersion::Relativistic);
    const auto p2 = to_cplx({3.0});
    const MassMatrix mm2 = mass_matrix(rel, std::span<const cplx>(p2));
    CHECK(mm2.diag[0].real() == doctest::Approx(4.0 * std::pow(1.25, 3)).epsilon(1e-12));

    // finite-difference oracle on dv/dp
    const double h = 1e-6;
    const auto up = to_cplx({3.0 + h});
    const auto dn = to_cplx({3.0 - h});
    const cplx fd = (velocity_of_momentum(rel, std::span<const cplx>(up))[0] -
                     velocity_of_momentum(rel, std::span<const cplx>(dn))[0]) /
                    (2.0 * h);
    CHECK(rel_err(1.0 / fd, mm2.diag[0]) <= 1e-8);
}

TEST_CASE("mass matrix is the reciprocal diagonal") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> mom(0.1, 5.0);
    for (Dispersion d : {Dispersion::Nonrelativistic, Dispersion::Relativistic}) {
        for (int s = 0; s < 25; ++s) {
            const auto inst = random_instance(rng, d, false);
            std::vector<cplx> p(inst.sys.size());
            for (auto& x : p) x = mom(rng);
            const MassMatrix mm = mass_matrix(inst.sys, std::span<const cplx>(p));
            for (std::size_t n = 0; n < p.size(); ++n)
                CHECK(std::abs(mm.diag[n] * mm.inv_diag[n] - 1.0) <= 1e-14);
        }
    }
}

TEST_CASE("analytic velocity matches finite differences of the energy") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> mom(0.1, 3.0);
    for (Dispersion d : {Dispersion::Nonrelativistic, Dispersion::Relativistic}) {
        for (int s = 0; s < 25; ++s) {
            const auto inst = random_instance(rng, d, false);
            std::vector<cplx> p(inst.sys.size());
            for (auto& x : p) x = mom(rng);
            const auto v = velocity_of_momentum(inst.sys, std::span<const cplx>(p));
            for (std::size_t n = 0; n < p.size(); ++n) {
                const double h = 1e-5 * std::max(1.0, std::abs(p[n]));
                auto shifted = p;
                shifted[n] = p[n] + h;
                const cplx up = dispersion_energy(inst.sys, std::span<const cplx>(shifted));
                shifted[n] = p[n] - h;
                const cplx dn = dispersion_energy(inst.sys, std::span<const cplx>(shifted));
                CHECK(rel_err((up - dn) / (2.0 * h), v[n]) <= 1e-7);
            }
        }
    }
}

TEST_CASE("relativistic kinetic energy approaches the nonrelativistic form") {
    ParticleSystem rel({1.0, 2.0}, Dispersion::Relativistic);
    ParticleSystem nonrel({1.0, 2.0}, Dispersion::Nonrelativistic);
    const auto p = to_cplx({1e-3, 1.5e-3});
    const cplx kinetic = dispersion_energy(rel, std::span<const cplx>(p)) - cplx(3.0);
    const cplx expect = dispersion_energy(nonrel, std::span<const cplx>(p));
    CHECK(rel_err(kinetic, expect) <= 1e-5);
}

TEST_CASE("complex momenta follow the principal branch") {
    ParticleSystem rel({1.0}, Dispersion::Relativistic);
    const std::vector<cplx> p{cplx(2.0, -0.3)};
    const cplx e = dispersion_energy(rel, std::span<const cplx>(p));
    CHECK(e.real() > 0.0);
    // continuation agrees with the real formula when the imaginary part vanishes
    const std::vector<cplx> preal{cplx(2.0, 0.0)};
    CHECK(dispersion_energy(rel, std::span<const cplx>(preal)).real() ==
          doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("kinematics error paths") {
    CHECK_THROWS_AS(ParticleSystem({0.0}, Dispersion::Nonrelativistic), domain_error);
    CHECK_THROWS_AS(ParticleSystem({1.0, 0.0}, Dispersion::Relativistic), domain_error);
    CHECK_NOTHROW(ParticleSystem({1.0, 0.0}, Dispersion::Relativistic, true));
    CHECK_THROWS_AS(ParticleSystem({}, Dispersion::Nonrelativistic), domain_error);

    ParticleSystem sys({1.0, 1.0}, Dispersion::Nonrelativistic);
    const auto p = to_cplx({1.0});
    CHECK_THROWS_AS(dispersion_energy(sys, std::span<const cplx>(p)), domain_error);

    ParticleSystem rel({1.0}, Dispersion::Relativistic);
    const auto fast = to_cplx({1.0});
    CHECK_THROWS_AS(momentum_of_velocity(rel, std::span<const cplx>(fast)), domain_error);

    ParticleSystem photon({0.0}, Dispersion::Relativistic, true);
    const auto v = to_cplx({0.5});
    CHECK_THROWS_AS(momentum_of_velocity(photon, std::span<const cplx>(v)), domain_error);
    CHECK_THROWS_AS(mass_matrix(photon, std::span<const cplx>(v)), domain_error);
}
