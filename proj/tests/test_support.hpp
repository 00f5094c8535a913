#pragma once

#include <complex>
#include <random>
#include <vector>

#include "gamow/kinematics.hpp"
#include "gamow/types.hpp"

namespace gamow::testing {

struct Instance {
    ParticleSystem sys;
    RadialPoint r;
    ComplexEnergy e;
};

/// Random well-conditioned instance: masses in [0.3, 3], radii in [0.1, 4],
/// energy comfortably above threshold; optionally a narrow width.
inline Instance random_instance(std::mt19937_64& rng, Dispersion d, bool allow_complex) {
    std::uniform_int_distribution<int> pick_n(1, 4);
    std::uniform_real_distribution<double> mass(0.3, 3.0);
    std::uniform_real_distribution<double> radius(0.1, 4.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const int n = pick_n(rng);
    std::vector<double> masses(n), coords(n);
    for (int i = 0; i < n; ++i) masses[i] = mass(rng);
    for (int i = 0; i < n; ++i) coords[i] = radius(rng);
    ParticleSystem sys(masses, d);

    const double e0 = d == Dispersion::Nonrelativistic
                          ? 0.5 + 4.5 * unit(rng)
                          : sys.threshold() * (1.05 + 2.0 * unit(rng));
    double gamma = 0.0;
    if (allow_complex && unit(rng) < 0.5) gamma = 0.02 * e0 * unit(rng);
    return {std::move(sys), RadialPoint(std::move(coords)), ComplexEnergy(e0, gamma)};
}

inline double rel_err(cplx got, cplx want) {
    return std::abs(got - want) / std::abs(want);
}

}  // namespace gamow::testing
