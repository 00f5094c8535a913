#include "gamow/tau_front.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gamow {

namespace {

constexpr int kMaxNewtonIter = 200;
constexpr double kResidualTol = 1e-12;  // relative to |E|
constexpr double kTargetTol = 1e-13;

void check_front_inputs(const RadialPoint& r, const ParticleSystem& sys) {
    r.validate();
    if (r.size() != sys.size())
        throw domain_error("front time: radial point length does not match particle count");
    if (!sys.nonrelativistic() && sys.has_massless())
        throw domain_error(
            "front time: massless relativistic coordinate is unconstrained, no finite front time");
}

std::vector<cplx> velocities_at(const RadialPoint& r, cplx tau) {
    std::vector<cplx> v(r.size());
    for (std::size_t n = 0; n < r.size(); ++n) v[n] = r[n] / tau;
    return v;
}

cplx energy_at_tau(const RadialPoint& r, const ParticleSystem& sys, cplx tau) {
    const std::vector<cplx> v = velocities_at(r, tau);
    return energy_of_velocity(sys, std::span<const cplx>(v));
}

// d/dtau E(r/tau) = -(1/tau) * sum_n v_n dE/dv_n
cplx denergy_dtau(const RadialPoint& r, const ParticleSystem& sys, cplx tau) {
    const std::vector<cplx> v = velocities_at(r, tau);
    const std::vector<cplx> dedv = denergy_dvelocity(sys, std::span<const cplx>(v));
    cplx acc = 0.0;
    for (std::size_t n = 0; n < v.size(); ++n) acc += v[n] * dedv[n];
    return -acc / tau;
}

// Bracketed Newton for real energies. E(r/tau) decreases monotonically in
// tau for both dispersion laws, so a sign-change bracket always pins the
// root once one is found.
double solve_real_energy(const RadialPoint& r, const ParticleSystem& sys, double energy) {
    double lo, hi;
    if (sys.nonrelativistic()) {
        if (!(energy > 0.0)) throw domain_error("front time: energy must be positive");
        lo = hi = 1.0;
        int guard = 0;
        while (energy_at_tau(r, sys, lo).real() <= energy) {
            lo *= 0.5;
            if (++guard > 2000) throw convergence_error("front time: bracketing failed");
        }
        guard = 0;
        while (energy_at_tau(r, sys, hi).real() >= energy) {
            hi *= 2.0;
            if (++guard > 2000) throw convergence_error("front time: bracketing failed");
        }
        if (lo > hi) std::swap(lo, hi);
    } else {
        if (!(energy > sys.threshold()))
            throw domain_error("front time: energy at or below the rest-mass threshold");
        const double rmax = r.max_coordinate();
        lo = rmax * (1.0 + 1e-12);
        if (!(energy_at_tau(r, sys, lo).real() > energy))
            throw convergence_error("front time: energy exceeds the reachable range at the bracket edge");
        hi = std::max(2.0 * rmax, rmax + 1.0);
        int guard = 0;
        while (energy_at_tau(r, sys, hi).real() >= energy) {
            hi *= 2.0;
            if (++guard > 1024) throw convergence_error("front time: bracketing failed");
        }
    }

    double x = 0.5 * (lo + hi);
    for (int iter = 0; iter < kMaxNewtonIter; ++iter) {
        const double fx = energy_at_tau(r, sys, x).real() - energy;
        if (std::abs(fx) <= kTargetTol * std::abs(energy)) return x;
        if (fx > 0.0)
            lo = x;
        else
            hi = x;
        const double dfx = denergy_dtau(r, sys, x).real();
        double next = x - fx / dfx;
        if (!std::isfinite(next) || next <= lo || next >= hi) next = 0.5 * (lo + hi);
        if (hi - lo <= 8.0 * std::numeric_limits<double>::epsilon() * x) {
            x = next;
            break;
        }
        x = next;
    }
    if (std::abs(energy_at_tau(r, sys, x).real() - energy) <= kResidualTol * std::abs(energy))
        return x;
    throw convergence_error("front time: Newton iteration did not converge");
}

cplx solve_complex_energy(const RadialPoint& r, const ParticleSystem& sys, cplx energy) {
    cplx x = solve_real_energy(r, sys, energy.real());
    for (int iter = 0; iter < kMaxNewtonIter; ++iter) {
        const cplx fx = energy_at_tau(r, sys, x) - energy;
        if (std::abs(fx) <= kTargetTol * std::abs(energy)) break;
        const cplx dfx = denergy_dtau(r, sys, x);
        x -= fx / dfx;
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw convergence_error("front time: complex Newton iteration diverged");
    }
    if (std::abs(energy_at_tau(r, sys, x) - energy) > kResidualTol * std::abs(energy))
        throw convergence_error("front time: complex Newton iteration did not converge");
    if (!(x.real() > 0.0))
        throw convergence_error("front time: converged root has nonpositive real part");
    return x;
}

// Deterministic direction grid on the unit sphere restricted to the
// positive orthant. Directions are emitted in lexicographic order of the
// underlying angle grid.
std::vector<std::vector<double>> direction_grid(std::size_t n, std::size_t count) {
    if (count == 0) throw domain_error("front sampling: count must be >= 1");
    std::vector<std::vector<double>> dirs;
    if (n == 1) {
        dirs.push_back({1.0});
        return dirs;
    }
    const std::size_t axes = n - 1;
    std::size_t per_axis =
        axes == 1 ? count
                  : static_cast<std::size_t>(
                        std::ceil(std::pow(static_cast<double>(count), 1.0 / axes)));
    std::vector<double> angles;
    if (count == 1) {
        per_axis = 1;
        angles.assign(1, 0.0);
    } else {
        per_axis = std::max<std::size_t>(per_axis, 2);
        angles.resize(per_axis);
        // divide first so the final angle is exactly the double pi/2 and its
        // cosine stays nonnegative
        for (std::size_t k = 0; k < per_axis; ++k)
            angles[k] =
                (M_PI / 2.0) * (static_cast<double>(k) / static_cast<double>(per_axis - 1));
    }

    std::vector<std::size_t> idx(axes, 0);
    bool wrapped = false;
    while (dirs.size() < count && !wrapped) {
        std::vector<double> omega(n);
        double sines = 1.0;
        for (std::size_t j = 0; j < axes; ++j) {
            omega[j] = std::max(0.0, sines * std::cos(angles[idx[j]]));
            sines *= std::sin(angles[idx[j]]);
        }
        omega[axes] = sines;
        dirs.push_back(std::move(omega));
        // advance the lexicographic multi-index
        wrapped = true;
        for (std::size_t j = axes; j-- > 0;) {
            if (++idx[j] < per_axis) {
                wrapped = false;
                break;
            }
            idx[j] = 0;
        }
    }
    return dirs;
}

}  // namespace

cplx tau_nonrel_closed(const RadialPoint& r, const ParticleSystem& sys, const ComplexEnergy& e) {
    check_front_inputs(r, sys);
    if (!sys.nonrelativistic())
        throw domain_error("tau_nonrel_closed: system must be nonrelativistic");
    if (!(e.e0 > 0.0)) throw domain_error("tau_nonrel_closed: Re(E) must be positive");
    double half_mr2 = 0.0;
    for (std::size_t n = 0; n < r.size(); ++n) half_mr2 += 0.5 * sys.mass(n) * r[n] * r[n];
    cplx tau = std::sqrt(half_mr2 / e.value());
    if (tau.real() < 0.0) tau = -tau;
    return tau;
}

cplx tau_implicit(const RadialPoint& r, const ParticleSystem& sys, const ComplexEnergy& e) {
    check_front_inputs(r, sys);
    if (!(e.e0 > sys.threshold()))
        throw domain_error(sys.nonrelativistic()
                               ? "front time: energy must be positive"
                               : "front time: energy at or below the rest-mass threshold");
    if (e.is_real()) return solve_real_energy(r, sys, e.e0);
    return solve_complex_energy(r, sys, e.value());
}

TauGradient grad_tau(const RadialPoint& r, const ParticleSystem& sys, const ComplexEnergy& e) {
    const cplx tau = tau_implicit(r, sys, e);
    TauGradient out;
    out.grad.resize(r.size());
    if (sys.nonrelativistic()) {
        for (std::size_t n = 0; n < r.size(); ++n)
            out.grad[n] = sys.mass(n) * r[n] / (2.0 * e.value() * tau);
    } else {
        const std::vector<cplx> v = velocities_at(r, tau);
        const std::vector<cplx> dedv = denergy_dvelocity(sys, std::span<const cplx>(v));
        cplx denom = 0.0;
        for (std::size_t n = 0; n < v.size(); ++n) denom += dedv[n] * v[n];
        for (std::size_t n = 0; n < v.size(); ++n) out.grad[n] = dedv[n] / denom;
    }
    cplx sum_sq = 0.0;
    for (const cplx& g : out.grad) sum_sq += g * g;
    out.t_norm = std::sqrt(sum_sq);
    return out;
}

std::vector<RadialPoint> front_surface_sample(const ParticleSystem& sys, double energy,
                                              double tau_R, std::size_t count) {
    if (!(tau_R > 0.0)) throw domain_error("front sampling: tau_R must be positive");
    if (!(energy > sys.threshold()))
        throw domain_error("front sampling: energy at or below threshold");
    if (!sys.nonrelativistic() && sys.has_massless())
        throw domain_error("front sampling: massless relativistic coordinate is unconstrained");

    const std::size_t n = sys.size();
    const auto dirs = direction_grid(n, count);
    std::vector<RadialPoint> points;
    points.reserve(dirs.size());

    for (const auto& omega : dirs) {
        std::vector<double> coords(n);
        if (sys.nonrelativistic()) {
            for (std::size_t k = 0; k < n; ++k)
                coords[k] = tau_R * std::sqrt(2.0 * energy / sys.mass(k)) * omega[k];
        } else {
            // radial rescaling s of the direction, bisected on the monotone
            // map s -> E(s*omega/tau_R)
            const double omax = *std::max_element(omega.begin(), omega.end());
            const double smax = tau_R / omax;
            auto eval = [&](double s) {
                cplx acc = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vk = s * omega[k] / tau_R;
                    acc += sys.mass(k) / std::sqrt(cplx(1.0) - cplx(vk) * cplx(vk));
                }
                return acc.real() - energy;
            };
            double lo = 0.0, hi = smax * (1.0 - 1e-9);
            int guard = 0;
            while (eval(hi) < 0.0) {
                hi = smax - 0.25 * (smax - hi);
                if (++guard > 200)
                    throw convergence_error("front sampling: direction rescaling failed");
            }
            for (int iter = 0; iter < 200; ++iter) {
                const double mid = 0.5 * (lo + hi);
                if (eval(mid) < 0.0)
                    lo = mid;
                else
                    hi = mid;
                if (hi - lo <= std::numeric_limits<double>::epsilon() * hi) break;
            }
            const double s = 0.5 * (lo + hi);
            for (std::size_t k = 0; k < n; ++k) coords[k] = s * omega[k];
        }
        points.emplace_back(std::move(coords));
    }
    return points;
}

std::vector<cplx> lorentz_factors(const RadialPoint& r, cplx tau, const ParticleSystem& sys) {
    if (r.size() != sys.size())
        throw domain_error("lorentz_factors: radial point length does not match particle count");
    if (!sys.nonrelativistic() && sys.has_massless())
        throw domain_error("lorentz_factors: undefined for massless particles");
    std::vector<cplx> rho(r.size());
    for (std::size_t n = 0; n < r.size(); ++n) {
        const cplx v = r[n] / tau;
        if (tau.imag() == 0.0 && r[n] >= tau.real())
            throw domain_error("lorentz_factors: r_n >= tau");
        rho[n] = 1.0 / std::sqrt(cplx(1.0) - v * v);
    }
    return rho;
}

double front_residual(const RadialPoint& r, cplx tau, const ParticleSystem& sys, cplx energy) {
    return std::abs(energy_at_tau(r, sys, tau) - energy) / std::abs(energy);
}

FrontSolution solve_front(const RadialPoint& r, const ParticleSystem& sys,
                          const ComplexEnergy& e) {
    FrontSolution sol;
    sol.tau = tau_implicit(r, sys, e);
    sol.velocities = velocities_at(r, sol.tau);
    sol.momenta = momentum_of_velocity(sys, std::span<const cplx>(sol.velocities));
    sol.action = 0.0;
    for (std::size_t n = 0; n < r.size(); ++n) sol.action += sol.momenta[n] * r[n];
    const TauGradient tg = grad_tau(r, sys, e);
    sol.grad_tau = tg.grad;
    sol.t_norm = tg.t_norm;
    if (!sys.nonrelativistic()) sol.rho = lorentz_factors(r, sol.tau, sys);
    return sol;
}

}  // namespace gamow
