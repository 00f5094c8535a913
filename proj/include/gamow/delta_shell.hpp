#pragma once

#include "gamow/types.hpp"

namespace gamow {

/// One s-wave resonance of the potential V(r) = lambda * delta(r - a),
/// parameterized by the shell strength g = 2 m lambda. The pole wavenumber
/// solves exp(2ika) - 1 + 2ik/g = 0 with Im k < 0.
struct ShellResonance {
    double g = 0.0;   // shell strength, 1/length
    double a = 0.0;   // shell radius
    double m = 0.0;   // mass
    int branch = 0;   // pole family index, seeded at k = branch*pi/a
    cplx k_pole{};

    cplx energy() const { return k_pole * k_pole / (2.0 * m); }
    double e0() const { return energy().real(); }
    double width() const { return -2.0 * energy().imag(); }
    /// |exp(2ika) - 1 + 2ik/g| at the stored pole.
    double pole_residual() const;
};

/// Locate the branch-th resonance pole by complex Newton iteration.
ShellResonance find_pole(double g, double a, double m, int branch);

/// Reduced s-wave Gamow state: sin(kr)/r inside the shell, continuity
/// matched to C exp(ikr)/r outside. Grows exponentially since Im k < 0.
cplx gamow_u(const ShellResonance& res, double r);

enum class NormMethod { Analytic, Quadrature };

/// Regularized square norm of the Gamow state over radius R: the radial
/// volume integral of u^2 plus the outgoing surface compensation
/// (i/2k) * 4*pi*R^2 u^2(R). Independent of R for R > a.
cplx pseudo_norm_1p(const ShellResonance& res, double R,
                    NormMethod method = NormMethod::Analytic);

/// Reduced radial outgoing Green's function of the shell Hamiltonian,
/// (E - H) G = delta(r - r'); built from the regular solution (sin(kr)
/// inside the shell) and the outgoing solution exp(ikr), divided by their
/// Wronskian. g = 0 gives the free kernel.
cplx green_function(double g, double a, double m, cplx energy, double r, double rp);

struct ResidueCheck {
    cplx residue;     // contour integral of the spherical s-wave kernel
    cplx factorized;  // u(r) u(r') / pseudo-norm
};

/// Extract the Green's-function residue at the resonance by a 64-node
/// circular contour and compare with the Gamow-state factorization.
/// radius_scale shrinks the default contour radius (for analyticity checks).
ResidueCheck residue_check(const ShellResonance& res, double r, double rp,
                           double radius_scale = 1.0);

}  // namespace gamow
