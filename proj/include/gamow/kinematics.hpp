#pragma once

#include <span>
#include <vector>

#include "gamow/types.hpp"

namespace gamow {

enum class Dispersion { Nonrelativistic, Relativistic };

/// N free outgoing particles: their masses and the dispersion law that maps
/// the radial momentum multiplet to a total energy.
///
/// Masses must be finite and positive; a massless entry is admitted only
/// under relativistic dispersion and only when `allow_massless` is set.
class ParticleSystem {
  public:
    ParticleSystem(std::vector<double> masses, Dispersion dispersion,
                   bool allow_massless = false);

    std::size_t size() const { return masses_.size(); }
    const std::vector<double>& masses() const { return masses_; }
    double mass(std::size_t n) const { return masses_[n]; }
    Dispersion dispersion() const { return dispersion_; }
    bool nonrelativistic() const { return dispersion_ == Dispersion::Nonrelativistic; }
    bool has_massless() const;

    /// Sum of rest masses: the threshold below which no real front exists
    /// (zero for nonrelativistic dispersion).
    double threshold() const;

  private:
    std::vector<double> masses_;
    Dispersion dispersion_;
};

/// Total free energy of the momentum multiplet: sum of p^2/2m terms, or of
/// sqrt(m^2 + p^2) terms with c = 1. Complex momenta are continued with the
/// principal square root (real part >= 0).
cplx dispersion_energy(const ParticleSystem& sys, std::span<const cplx> p);
cplx dispersion_energy(const ParticleSystem& sys, std::span<const double> p);

/// Group velocities v_n = dE/dp_n.
std::vector<cplx> velocity_of_momentum(const ParticleSystem& sys, std::span<const cplx> p);

/// Inverse of velocity_of_momentum. Massive relativistic particles require
/// |v| < 1 on the real axis; massless particles cannot be inverted.
std::vector<cplx> momentum_of_velocity(const ParticleSystem& sys, std::span<const cplx> v);

/// Total free energy as a function of velocity, E(v = p(v)).
cplx energy_of_velocity(const ParticleSystem& sys, std::span<const cplx> v);

/// dE/dv_n; m*v for nonrelativistic, m*gamma^3*v for relativistic particles.
std::vector<cplx> denergy_dvelocity(const ParticleSystem& sys, std::span<const cplx> v);

/// The dispersion Hessian d2E/dp_n dp_m is diagonal for both supported
/// laws; `inv_diag` holds its entries (dv_n/dp_n) and `diag` the entries of
/// the inverse (the mass matrix proper).
struct MassMatrix {
    std::vector<cplx> diag;
    std::vector<cplx> inv_diag;
};
MassMatrix mass_matrix(const ParticleSystem& sys, std::span<const cplx> p);

}  // namespace gamow
