#pragma once

#include <vector>

#include "gamow/kinematics.hpp"
#include "gamow/types.hpp"

namespace gamow {

/// Closed-form front time for nonrelativistic systems:
/// tau = sqrt(sum(m_n r_n^2 / 2) / E), principal root with Re(tau) > 0.
cplx tau_nonrel_closed(const RadialPoint& r, const ParticleSystem& sys, const ComplexEnergy& e);

/// Generic front time: solves E(v = r/tau) = E for tau. Real energies use a
/// bracketed safeguarded Newton iteration; complex energies run a complex
/// Newton iteration seeded from the real-part solution. The returned tau
/// satisfies |E(r/tau) - E| <= 1e-12 |E| and Re(tau) > 0.
cplx tau_implicit(const RadialPoint& r, const ParticleSystem& sys, const ComplexEnergy& e);

struct TauGradient {
    std::vector<cplx> grad;  // dtau/dr_n
    cplx t_norm;             // sqrt(sum grad^2), principal branch
};

/// Implicit-differentiation gradient of the front time and its magnitude T.
TauGradient grad_tau(const RadialPoint& r, const ParticleSystem& sys, const ComplexEnergy& e);

/// Points in the positive orthant lying on the front surface tau(r) = tau_R
/// for a real above-threshold energy. Directions come from a deterministic
/// grid on the unit sphere restricted to the orthant; relativistic systems
/// rescale each direction by bisection.
std::vector<RadialPoint> front_surface_sample(const ParticleSystem& sys, double energy,
                                              double tau_R, std::size_t count);

/// Per-particle factors 1/sqrt(1 - (r_n/tau)^2). With real inputs each
/// r_n must satisfy r_n < tau.
std::vector<cplx> lorentz_factors(const RadialPoint& r, cplx tau, const ParticleSystem& sys);

/// Relative energy mismatch |E(r/tau) - E| / |E| of a candidate front time.
double front_residual(const RadialPoint& r, cplx tau, const ParticleSystem& sys, cplx energy);

/// Full front data at one radial point: tau, velocities, stationary
/// momenta, action, gradient, T, and (relativistic only) Lorentz factors.
FrontSolution solve_front(const RadialPoint& r, const ParticleSystem& sys, const ComplexEnergy& e);

}  // namespace gamow
