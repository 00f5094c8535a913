#include "gamow/stationary_phase.hpp"

#include <cmath>

#include "gamow/quadrature.hpp"

namespace gamow {

namespace {

cplx action_at(const RadialPoint& r, const ParticleSystem& sys, const ComplexEnergy& e) {
    const cplx tau = tau_implicit(r, sys, e);
    std::vector<cplx> v(r.size());
    for (std::size_t n = 0; n < r.size(); ++n) v[n] = r[n] / tau;
    const std::vector<cplx> p = momentum_of_velocity(sys, std::span<const cplx>(v));
    cplx s = 0.0;
    for (std::size_t n = 0; n < r.size(); ++n) s += p[n] * r[n];
    return s;
}

int oracle_panels(std::size_t nodes) {
    return static_cast<int>((nodes + GaussLegendre16::order - 1) / GaussLegendre16::order);
}

double oracle_max_panel_width(double t_minus_tau0) {
    return M_PI / (8.0 * std::max(1.0, std::abs(t_minus_tau0)));
}

}  // namespace

StationaryPoint stationary_momenta(const RadialPoint& r, const ParticleSystem& sys,
                                   const ComplexEnergy& e) {
    const cplx tau = tau_implicit(r, sys, e);
    std::vector<cplx> v(r.size());
    for (std::size_t n = 0; n < r.size(); ++n) v[n] = r[n] / tau;
    StationaryPoint sp;
    sp.momenta = momentum_of_velocity(sys, std::span<const cplx>(v));
    sp.action = 0.0;
    for (std::size_t n = 0; n < r.size(); ++n) sp.action += sp.momenta[n] * r[n];
    return sp;
}

ActionDerivative action_energy_derivative(const RadialPoint& r, const ParticleSystem& sys,
                                          double energy, double h) {
    if (!(h > 0.0) || h > 0.1)
        throw domain_error("action_energy_derivative: step must be in (0, 0.1]");
    const double de = h * std::max(1.0, std::abs(energy));
    if (!(energy - de > sys.threshold()))
        throw domain_error("action_energy_derivative: step crosses the energy threshold");

    auto central = [&](double step) {
        const cplx up = action_at(r, sys, ComplexEnergy(energy + step));
        const cplx dn = action_at(r, sys, ComplexEnergy(energy - step));
        return (up - dn) / (2.0 * step);
    };
    const cplx d1 = central(de);
    const cplx d2 = central(0.5 * de);
    if (std::abs(d1 - d2) > 1e-4 * std::max(std::abs(d1), 1e-30))
        throw convergence_error("action_energy_derivative: finite-difference step too large");

    return {d1, tau_implicit(r, sys, ComplexEnergy(energy))};
}

cplx wavefront_factor(double t, double tau0, const ComplexEnergy& e) {
    if (t < tau0) return 0.0;
    const cplx minus_i(0.0, -1.0);
    return std::exp(minus_i * e.value() * (t - tau0));
}

cplx wavefront_factor_oracle(double t, double tau0, const ComplexEnergy& e, double cutoff,
                             std::size_t nodes) {
    if (!(cutoff > 0.0)) throw domain_error("wavefront oracle: cutoff must be positive");
    if (!(e.gamma > 0.0)) throw domain_error("wavefront oracle: needs a positive width");
    const double x = t - tau0;
    const int panels = oracle_panels(nodes);
    const double width = 2.0 * cutoff / panels;
    if (width > oracle_max_panel_width(x))
        throw domain_error("wavefront oracle: node budget does not resolve the oscillation");

    const cplx minus_i(0.0, -1.0);
    const cplx pole_shift(0.0, 0.5 * e.gamma);
    auto kernel = [&](double de) { return std::exp(minus_i * de * x) / (de + pole_shift); };
    const cplx integral = integrate_gl16(kernel, -cutoff, cutoff, panels);

    // i/(2*pi) normalization closes the contour without free constants; the
    // carrier restores the t-dependent part of the dropped common phase.
    const cplx carrier = std::exp(minus_i * e.e0 * x);
    return carrier * integral * cplx(0.0, 1.0 / (2.0 * M_PI));
}

std::size_t wavefront_oracle_nodes(double cutoff, double t_minus_tau0) {
    const double width = oracle_max_panel_width(t_minus_tau0);
    const int panels = static_cast<int>(std::ceil(2.0 * cutoff / width));
    return static_cast<std::size_t>(panels) * GaussLegendre16::order;
}

}  // namespace gamow
