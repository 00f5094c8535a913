#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace gamow {

using cplx = std::complex<double>;

/// Thrown when an argument violates a documented precondition.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative scheme fails to reach its tolerance.
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Complex eigenvalue E0 - i*Gamma/2 of a decaying state. Gamma = 0
/// degenerates to an ordinary real energy.
struct ComplexEnergy {
    double e0 = 0.0;
    double gamma = 0.0;

    ComplexEnergy() = default;
    ComplexEnergy(double e0_, double gamma_ = 0.0) : e0(e0_), gamma(gamma_) {
        if (!(gamma >= 0.0)) throw domain_error("ComplexEnergy: width must be >= 0");
    }
    static ComplexEnergy from_value(cplx e) { return {e.real(), -2.0 * e.imag()}; }

    cplx value() const { return {e0, -0.5 * gamma}; }
    bool is_real() const { return gamma == 0.0; }
};

/// Multiplet of radial coordinates, one per particle; the positive orthant
/// of the reduced radial configuration space.
struct RadialPoint {
    std::vector<double> r;

    RadialPoint() = default;
    explicit RadialPoint(std::vector<double> coords) : r(std::move(coords)) { validate(); }

    std::size_t size() const { return r.size(); }
    double operator[](std::size_t i) const { return r[i]; }
    double max_coordinate() const;

    void validate() const;
};

/// Everything the front solver knows about one radial point: the front
/// time tau, per-particle velocities and stationary momenta, the radial
/// action S = p.r, the gradient of tau and its magnitude T, and (for
/// relativistic systems) the per-particle Lorentz factors.
struct FrontSolution {
    cplx tau{};
    std::vector<cplx> velocities;
    std::vector<cplx> momenta;
    cplx action{};
    std::vector<cplx> grad_tau;
    cplx t_norm{};
    std::vector<cplx> rho;  // empty for nonrelativistic systems
};

}  // namespace gamow
