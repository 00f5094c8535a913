#pragma once

#include <functional>
#include <vector>

#include "gamow/kinematics.hpp"
#include "gamow/tau_front.hpp"
#include "gamow/types.hpp"

namespace gamow {

/// Surface weight 2T <grad_p E | M | grad_p E> evaluated at the stationary
/// point of (r, E): sum of m v^2 terms nonrelativistically, m gamma^3 v^2
/// relativistically. Complex energies follow principal branches throughout.
cplx surface_weight(const RadialPoint& r, const ParticleSystem& sys, const ComplexEnergy& e);

/// Nonrelativistic closed form of the same weight:
/// (2/tau) * sqrt(sum (m_n r_n)^2).
cplx weight_nonrel_closed(const RadialPoint& r, const ParticleSystem& sys,
                          const ComplexEnergy& e);

enum class StateKind { SeparableProduct, PartitionIntegral, Custom };

/// An s-wave-reduced N-particle state: a complex amplitude on the positive
/// radial orthant. Angular measure factors 4*pi*r_n^2 are applied by the
/// integrators, never baked into the evaluator.
struct ReducedState {
    std::function<cplx(const RadialPoint&)> evaluator;
    ComplexEnergy energy;
    StateKind kind = StateKind::Custom;
};

/// Two-particle outgoing state built by integrating the product of two
/// outgoing spherical waves over the energy split E1 + E2 = E, weighted by
/// a smooth profile on [0, E]. The substitution E1 = E sin^2(theta)
/// regularizes both endpoints.
cplx partition_state_eval(const RadialPoint& r, const ParticleSystem& sys,
                          const ComplexEnergy& e_d,
                          const std::function<double(double)>& profile);

/// Smooth normalized bump on [0, E] vanishing quadratically at both ends.
std::function<double(double)> default_partition_profile(double energy);

ReducedState make_partition_state(const ParticleSystem& sys, const ComplexEnergy& e_d);
ReducedState make_partition_state(const ParticleSystem& sys, const ComplexEnergy& e_d,
                                  std::function<double(double)> profile);

/// Product of fixed outgoing waves exp(i k_n r_n)/(k_n r_n) with the energy
/// split among particles by `fractions` (nonnegative, summing to 1).
ReducedState make_separable_state(const ParticleSystem& sys, const ComplexEnergy& e_d,
                                  std::vector<double> fractions);

struct IntegrationOptions {
    /// Lower end of the front-time range. Negative means automatic: zero,
    /// except for partition-integral states where an inner ball of
    /// inner_cutoff * tau_R is excluded around the coordinate singularities.
    double tau_min = -1.0;
    double inner_cutoff = 1e-3;
    /// Apply the s-wave measure prod_n (4 pi r_n^2). Disabled only by tests
    /// that target planar closed forms.
    bool radial_weight = true;
    /// Front times where the state is only piecewise smooth (e.g. a
    /// potential shell); radial panels never straddle these.
    std::vector<double> tau_breakpoints;
    int threads = 1;
};

/// Integral of u^2 (times the s-wave measure) over the region enclosed by
/// the front surface tau(r) = tau_R, evaluated shell-by-shell in tau.
/// `resolution` is the panel count per axis; 0 picks one from the
/// oscillation scale, and an explicit value below that scale is an error.
cplx volume_integral(const ReducedState& state, const ParticleSystem& sys,
                     const ComplexEnergy& e, double tau_R, int resolution,
                     const IntegrationOptions& opts = {});

/// Integral of u^2 times the s-wave measure, divided pointwise by the
/// surface weight, over the front surface tau(r) = tau_R (Euclidean surface
/// measure). For N = 1 this is the point evaluation 4 pi R^2 u^2(R) / (2k).
cplx surface_integral(const ReducedState& state, const ParticleSystem& sys,
                      const ComplexEnergy& e, double tau_R, int resolution,
                      const IntegrationOptions& opts = {});

/// Regularized square norm of the state over the front region tau < tau_R:
/// volume term plus i times the weighted surface term. Becomes independent
/// of tau_R once the state reaches its outgoing asymptotics.
cplx pseudo_norm(const ReducedState& state, const ParticleSystem& sys, const ComplexEnergy& e_d,
                 double tau_R, int resolution, const IntegrationOptions& opts = {});

struct NormScan {
    std::vector<double> tau_grid;
    std::vector<cplx> volume_terms;
    std::vector<cplx> surface_terms;
    std::vector<cplx> norms;
};

/// Norm convergence scan over an increasing tau_R grid. Volume terms are
/// accumulated incrementally from the first grid point so the whole scan
/// shares one inner cutoff.
NormScan norm_convergence_scan(const ReducedState& state, const ParticleSystem& sys,
                               const ComplexEnergy& e_d, const std::vector<double>& tau_grid,
                               int resolution, const IntegrationOptions& opts = {});

/// Panel count per axis below which the tau direction cannot resolve the
/// u^2 oscillation over [tau_min, tau_R].
int oscillation_panel_floor(const ComplexEnergy& e, double tau_min, double tau_R);

}  // namespace gamow
