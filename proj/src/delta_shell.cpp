#include "gamow/delta_shell.hpp"

#include <cmath>

#include "gamow/quadrature.hpp"

namespace gamow {

namespace {

constexpr cplx kImag(0.0, 1.0);

cplx pole_equation(cplx k, double g, double a) {
    return std::exp(2.0 * kImag * k * a) - 1.0 + 2.0 * kImag * k / g;
}

cplx matching_constant(const ShellResonance& res) {
    // continuity of sin(kr) with C exp(ikr) across the shell
    return std::sin(res.k_pole * res.a) * std::exp(-kImag * res.k_pole * res.a);
}

cplx wavenumber(double m, cplx energy) { return std::sqrt(2.0 * m * energy); }

}  // namespace

double ShellResonance::pole_residual() const {
    return std::abs(pole_equation(k_pole, g, a));
}

ShellResonance find_pole(double g, double a, double m, int branch) {
    if (!(g > 0.0)) throw domain_error("find_pole: shell strength must be positive");
    if (!(a > 0.0)) throw domain_error("find_pole: shell radius must be positive");
    if (!(m > 0.0)) throw domain_error("find_pole: mass must be positive");
    if (branch < 1) throw domain_error("find_pole: branch must be >= 1");

    cplx k(branch * M_PI / a, 0.0);
    for (int iter = 0; iter < 100; ++iter) {
        const cplx f = pole_equation(k, g, a);
        if (std::abs(f) <= 1e-13) break;
        const cplx df = 2.0 * kImag * a * std::exp(2.0 * kImag * k * a) + 2.0 * kImag / g;
        k -= f / df;
    }
    if (std::abs(pole_equation(k, g, a)) > 1e-12)
        throw convergence_error("find_pole: Newton iteration did not converge");
    if (!(k.imag() < 0.0))
        throw convergence_error("find_pole: converged to a non-decaying root (Im k >= 0)");

    ShellResonance res;
    res.g = g;
    res.a = a;
    res.m = m;
    res.branch = branch;
    res.k_pole = k;
    return res;
}

cplx gamow_u(const ShellResonance& res, double r) {
    if (!(r > 0.0)) throw domain_error("gamow_u: radius must be positive");
    const cplx k = res.k_pole;
    if (r <= res.a) return std::sin(k * r) / r;
    return matching_constant(res) * std::exp(kImag * k * r) / r;
}

cplx pseudo_norm_1p(const ShellResonance& res, double R, NormMethod method) {
    if (!(R > res.a)) throw domain_error("pseudo_norm_1p: R must exceed the shell radius");
    const cplx k = res.k_pole;
    const cplx c2 = matching_constant(res) * matching_constant(res);

    cplx radial;
    if (method == NormMethod::Analytic) {
        // elementary antiderivatives of sin^2(kr) and exp(2ikr)
        const cplx inside = 0.5 * res.a - std::sin(2.0 * k * res.a) / (4.0 * k);
        const cplx outside = c2 * (std::exp(2.0 * kImag * k * R) - std::exp(2.0 * kImag * k * res.a)) /
                             (2.0 * kImag * k);
        radial = inside + outside;
    } else {
        auto usq = [&](double r) {
            const cplx u = gamow_u(res, r) * r;
            return u * u;
        };
        const int per_unit = static_cast<int>(std::ceil(8.0 * std::abs(k) / M_PI)) + 1;
        radial = integrate_gl16(usq, 0.0, res.a, per_unit * static_cast<int>(std::ceil(res.a)) + 8) +
                 integrate_gl16(usq, res.a, R, per_unit * static_cast<int>(std::ceil(R - res.a)) + 8);
    }
    const cplx surface = (kImag / (2.0 * k)) * c2 * std::exp(2.0 * kImag * k * R);
    return 4.0 * M_PI * (radial + surface);
}

cplx green_function(double g, double a, double m, cplx energy, double r, double rp) {
    if (g < 0.0) throw domain_error("green_function: shell strength must be >= 0");
    if (!(a > 0.0) || !(m > 0.0)) throw domain_error("green_function: need a > 0 and m > 0");
    if (!(r > 0.0) || !(rp > 0.0)) throw domain_error("green_function: radii must be positive");

    const cplx k = wavenumber(m, energy);
    const cplx s = std::sin(k * a);
    const cplx c = std::cos(k * a);
    const cplx eika = std::exp(kImag * k * a);

    // regular solution: sin(kr) inside, alpha e^{ikr} + beta e^{-ikr} outside
    const cplx mix = c + (g / k) * s;
    const cplx alpha = 0.5 * (s - kImag * mix) / eika;
    const cplx beta = 0.5 * (s + kImag * mix) * eika;
    // outgoing solution: e^{ikr} outside, gamma e^{ikr} + delta e^{-ikr} inside
    const cplx gamma_in = 1.0 + kImag * g / (2.0 * k);
    const cplx delta_in = -kImag * g * eika * eika / (2.0 * k);

    const cplx wronskian = 2.0 * kImag * k * beta;
    if (std::abs(beta) < 1e-11)
        throw domain_error("green_function: energy is at (or numerically on) a resonance pole");

    const double rlo = std::min(r, rp);
    const double rhi = std::max(r, rp);
    const cplx regular = rlo <= a ? std::sin(k * rlo)
                                  : alpha * std::exp(kImag * k * rlo) +
                                        beta * std::exp(-kImag * k * rlo);
    const cplx outgoing = rhi >= a ? std::exp(kImag * k * rhi)
                                   : gamma_in * std::exp(kImag * k * rhi) +
                                         delta_in * std::exp(-kImag * k * rhi);
    return 2.0 * m * regular * outgoing / wronskian;
}

ResidueCheck residue_check(const ShellResonance& res, double r, double rp, double radius_scale) {
    if (!(r > res.a) || !(rp > res.a) || r > 10.0 * res.a || rp > 10.0 * res.a)
        throw domain_error("residue_check: radii must lie in (a, 10a)");
    if (!(radius_scale > 0.0) || radius_scale > 1.0)
        throw domain_error("residue_check: radius_scale must be in (0, 1]");

    // contour radius: fraction of the width, and of the gap to the nearest
    // neighboring pole, so exactly one pole is enclosed
    double spacing = res.width();
    for (int nb : {res.branch - 1, res.branch + 1}) {
        if (nb < 1) continue;
        const ShellResonance other = find_pole(res.g, res.a, res.m, nb);
        spacing = std::min(spacing, std::abs(other.energy() - res.energy()));
    }
    const double radius = radius_scale * std::min(res.width() / 4.0, spacing / 4.0);
    if (!(radius > 0.0)) throw convergence_error("residue_check: degenerate contour radius");

    const int n = 64;
    std::vector<cplx> samples(n);
    for (int j = 0; j < n; ++j) {
        const double theta = 2.0 * M_PI * j / n;
        const cplx offset = radius * std::exp(kImag * theta);
        samples[j] = green_function(res.g, res.a, res.m, res.energy() + offset, r, rp) * offset;
    }
    const cplx contour = pairwise_sum(std::span<const cplx>(samples)) / static_cast<double>(n);

    ResidueCheck out;
    out.residue = contour / (4.0 * M_PI * r * rp);  // spherical s-wave kernel
    out.factorized = gamow_u(res, r) * gamow_u(res, rp) / pseudo_norm_1p(res, 10.0 * res.a);
    return out;
}

}  // namespace gamow
