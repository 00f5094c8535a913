#pragma once

#include <vector>

#include "gamow/kinematics.hpp"
#include "gamow/tau_front.hpp"
#include "gamow/types.hpp"

namespace gamow {

struct StationaryPoint {
    std::vector<cplx> momenta;  // p_s
    cplx action;                // S = p_s . r
};

/// Momenta dominating the outgoing-wave integral at large radii: the
/// velocities are r/tau and the action is their momentum dotted with r.
StationaryPoint stationary_momenta(const RadialPoint& r, const ParticleSystem& sys,
                                   const ComplexEnergy& e);

struct ActionDerivative {
    cplx ds_de;  // central finite difference of the action in E
    cplx tau;    // front time at E, which dS/dE must reproduce
};

/// Central-difference dS/dE at a real energy with relative step h, together
/// with the front time it is expected to equal. A step-halving probe guards
/// against an unconverged difference.
ActionDerivative action_energy_derivative(const RadialPoint& r, const ParticleSystem& sys,
                                          double energy, double h);

/// Leading-edge time factor: 0 before the front arrival at tau0, afterwards
/// exp(-i (E0 - i Gamma/2)(t - tau0)). Time-independent phases are dropped.
cplx wavefront_factor(double t, double tau0, const ComplexEnergy& e);

/// Independent check of wavefront_factor: truncated frequency integral of
/// the resonance kernel exp(-i dE (t-tau0)) / (dE + i Gamma/2) over
/// [-cutoff, cutoff], normalized by the residue convention. `nodes` is the
/// total Gauss-Legendre node budget; it must resolve the oscillation.
cplx wavefront_factor_oracle(double t, double tau0, const ComplexEnergy& e, double cutoff,
                             std::size_t nodes);

/// Smallest node budget wavefront_factor_oracle accepts for the given
/// cutoff and time offset.
std::size_t wavefront_oracle_nodes(double cutoff, double t_minus_tau0);

}  // namespace gamow
