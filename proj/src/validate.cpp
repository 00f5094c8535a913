#include "gamow/validate.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "gamow/delta_shell.hpp"
#include "gamow/kinematics.hpp"
#include "gamow/pseudo_norm.hpp"
#include "gamow/quadrature.hpp"
#include "gamow/stationary_phase.hpp"
#include "gamow/tau_front.hpp"

namespace gamow {

namespace {

struct Instance {
    ParticleSystem sys;
    RadialPoint r;
    ComplexEnergy e;
};

Instance random_instance(std::mt19937_64& rng, Dispersion d, bool allow_complex) {
    std::uniform_int_distribution<int> pick_n(1, 4);
    std::uniform_real_distribution<double> mass(0.3, 3.0);
    std::uniform_real_distribution<double> radius(0.1, 4.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const int n = pick_n(rng);
    std::vector<double> masses(n), coords(n);
    for (int i = 0; i < n; ++i) masses[i] = mass(rng);
    for (int i = 0; i < n; ++i) coords[i] = radius(rng);
    ParticleSystem sys(masses, d);

    double e0;
    if (d == Dispersion::Nonrelativistic) {
        e0 = 0.5 + 4.5 * unit(rng);
    } else {
        e0 = sys.threshold() * (1.05 + 2.0 * unit(rng));
    }
    double gamma = 0.0;
    if (allow_complex && unit(rng) < 0.5) gamma = 0.02 * e0 * unit(rng);
    return {std::move(sys), RadialPoint(std::move(coords)), ComplexEnergy(e0, gamma)};
}

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << x;
    return os.str();
}

struct Tracker {
    double worst = 0.0;
    void update(double x) { worst = std::max(worst, x); }
    CheckResult result(const std::string& name, double bound) const {
        return {name, worst <= bound, "worst " + fmt(worst) + " vs bound " + fmt(bound)};
    }
};

CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
    try {
        return body();
    } catch (const std::exception& ex) {
        return {name, false, std::string("exception: ") + ex.what()};
    }
}

CheckResult check_kinematics_gradient(int samples) {
    return guarded("kinematics/velocity-vs-finite-difference", [&] {
        std::mt19937_64 rng(101);
        Tracker t;
        for (Dispersion d : {Dispersion::Nonrelativistic, Dispersion::Relativistic}) {
            for (int s = 0; s < samples; ++s) {
                const Instance inst = random_instance(rng, d, false);
                std::uniform_real_distribution<double> mom(0.1, 3.0);
                std::vector<cplx> p(inst.sys.size());
                for (auto& x : p) x = mom(rng);
                const auto v = velocity_of_momentum(inst.sys, std::span<const cplx>(p));
                for (std::size_t n = 0; n < p.size(); ++n) {
                    const double h = 1e-5 * std::max(1.0, std::abs(p[n]));
                    auto shifted = p;
                    shifted[n] = p[n] + h;
                    const cplx up = dispersion_energy(inst.sys, std::span<const cplx>(shifted));
                    shifted[n] = p[n] - h;
                    const cplx dn = dispersion_energy(inst.sys, std::span<const cplx>(shifted));
                    const cplx fd = (up - dn) / (2.0 * h);
                    t.update(std::abs(fd - v[n]) / std::abs(v[n]));
                }
            }
        }
        return t.result("kinematics/velocity-vs-finite-difference", 1e-7);
    });
}

CheckResult check_mass_matrix(int samples) {
    return guarded("kinematics/mass-matrix", [&] {
        std::mt19937_64 rng(102);
        Tracker t;
        for (Dispersion d : {Dispersion::Nonrelativistic, Dispersion::Relativistic}) {
            for (int s = 0; s < samples; ++s) {
                const Instance inst = random_instance(rng, d, false);
                std::uniform_real_distribution<double> mom(0.1, 3.0);
                std::vector<cplx> p(inst.sys.size());
                for (auto& x : p) x = mom(rng);
                const MassMatrix mm = mass_matrix(inst.sys, std::span<const cplx>(p));
                for (std::size_t n = 0; n < p.size(); ++n) {
                    // dv_n/dp_n by central differences
                    const double h = 1e-5 * std::max(1.0, std::abs(p[n]));
                    auto shifted = p;
                    shifted[n] = p[n] + h;
                    const cplx up =
                        velocity_of_momentum(inst.sys, std::span<const cplx>(shifted))[n];
                    shifted[n] = p[n] - h;
                    const cplx dn =
                        velocity_of_momentum(inst.sys, std::span<const cplx>(shifted))[n];
                    const cplx fd = (up - dn) / (2.0 * h);
                    t.update(std::abs(fd - mm.inv_diag[n]) / std::abs(mm.inv_diag[n]));
                    if (std::abs(mm.diag[n] * mm.inv_diag[n] - 1.0) > 1e-14)
                        return CheckResult{"kinematics/mass-matrix", false,
                                           "diag * inv_diag drifts from identity"};
                }
            }
        }
        return t.result("kinematics/mass-matrix", 1e-6);
    });
}

CheckResult check_roundtrip(int samples) {
    return guarded("kinematics/momentum-velocity-roundtrip", [&] {
        std::mt19937_64 rng(103);
        Tracker t;
        for (Dispersion d : {Dispersion::Nonrelativistic, Dispersion::Relativistic}) {
            for (int s = 0; s < samples; ++s) {
                const Instance inst = random_instance(rng, d, false);
                std::uniform_real_distribution<double> mom(0.1, 10.0);
                std::vector<cplx> p(inst.sys.size());
                for (auto& x : p) x = mom(rng);
                const auto v = velocity_of_momentum(inst.sys, std::span<const cplx>(p));
                const auto back = momentum_of_velocity(inst.sys, std::span<const cplx>(v));
                for (std::size_t n = 0; n < p.size(); ++n)
                    t.update(std::abs(back[n] - p[n]) / std::abs(p[n]));
            }
        }
        return t.result("kinematics/momentum-velocity-roundtrip", 1e-12);
    });
}

CheckResult check_nonrel_limit(int samples) {
    return guarded("kinematics/nonrelativistic-limit", [&] {
        std::mt19937_64 rng(104);
        Tracker t;
        for (int s = 0; s < samples; ++s) {
            std::uniform_real_distribution<double> mass(0.3, 3.0);
            std::uniform_real_distribution<double> frac(0.1, 1.0);
            std::uniform_int_distribution<int> pick_n(1, 4);
            const int n = pick_n(rng);
            std::vector<double> masses(n);
            for (auto& m : masses) m = mass(rng);
            ParticleSystem rel(masses, Dispersion::Relativistic);
            ParticleSystem nonrel(masses, Dispersion::Nonrelativistic);
            std::vector<cplx> p(n);
            for (int i = 0; i < n; ++i) p[i] = 1e-3 * masses[i] * frac(rng);
            const cplx rest = rel.threshold();
            const cplx kinetic =
                dispersion_energy(rel, std::span<const cplx>(p)) - rest;
            const cplx expect = dispersion_energy(nonrel, std::span<const cplx>(p));
            t.update(std::abs(kinetic - expect) / std::abs(expect));
        }
        return t.result("kinematics/nonrelativistic-limit", 1e-5);
    });
}

CheckResult check_tau_homogeneity(int samples) {
    return guarded("tau/homogeneity", [&] {
        std::mt19937_64 rng(105);
        Tracker t;
        for (Dispersion d : {Dispersion::Nonrelativistic, Dispersion::Relativistic}) {
            for (int s = 0; s < samples; ++s) {
                const Instance inst = random_instance(rng, d, true);
                const cplx tau = tau_implicit(inst.r, inst.sys, inst.e);
                for (double lambda : {0.5, 2.0, 10.0}) {
                    std::vector<double> scaled(inst.r.r);
                    for (auto& x : scaled) x *= lambda;
                    const cplx tau_scaled =
                        tau_implicit(RadialPoint(scaled), inst.sys, inst.e);
                    t.update(std::abs(tau_scaled - lambda * tau) / (lambda * std::abs(tau)));
                }
            }
        }
        return t.result("tau/homogeneity", 1e-10);
    });
}

CheckResult check_tau_residual(int samples) {
    return guarded("tau/solver-residual-and-closed-form", [&] {
        std::mt19937_64 rng(106);
        Tracker resid;
        Tracker agree;
        for (Dispersion d : {Dispersion::Nonrelativistic, Dispersion::Relativistic}) {
            for (int s = 0; s < samples; ++s) {
                const Instance inst = random_instance(rng, d, true);
                const cplx tau = tau_implicit(inst.r, inst.sys, inst.e);
                resid.update(front_residual(inst.r, tau, inst.sys, inst.e.value()));
                if (d == Dispersion::Nonrelativistic) {
                    const cplx closed = tau_nonrel_closed(inst.r, inst.sys, inst.e);
                    resid.update(front_residual(inst.r, closed, inst.sys, inst.e.value()));
                    agree.update(std::abs(closed - tau) / std::abs(closed));
                }
            }
        }
        if (resid.worst > 1e-12)
            return CheckResult{"tau/solver-residual-and-closed-form", false,
                               "residual " + fmt(resid.worst)};
        return agree.result("tau/solver-residual-and-closed-form", 1e-10);
    });
}

CheckResult check_tau_monotonicity(int samples) {
    return guarded("tau/relativistic-monotonicity", [&] {
        std::mt19937_64 rng(107);
        for (int s = 0; s < samples; ++s) {
            const Instance inst = random_instance(rng, Dispersion::Relativistic, false);
            const double rmax = inst.r.max_coordinate();
            double prev = 0.0;
            for (int k = 0; k < 40; ++k) {
                const double tau = rmax * (1.0 + 0.01 * std::pow(1.25, k));
                std::vector<cplx> v(inst.r.size());
                for (std::size_t n = 0; n < inst.r.size(); ++n) v[n] = inst.r[n] / tau;
                const double ef = energy_of_velocity(inst.sys, std::span<const cplx>(v)).real();
                if (k > 0 && !(ef < prev))
                    return CheckResult{"tau/relativistic-monotonicity", false,
                                       "not strictly decreasing at tau=" + fmt(tau)};
                prev = ef;
            }
        }
        return CheckResult{"tau/relativistic-monotonicity", true, "strictly decreasing"};
    });
}

CheckResult check_front_samples() {
    return guarded("front/surface-residuals", [&] {
        Tracker t;
        {
            ParticleSystem sys({1.0, 1.0}, Dispersion::Nonrelativistic);
            for (const auto& pt : front_surface_sample(sys, 1.0, 1.0, 33))
                t.update(std::abs(pt[0] * pt[0] + pt[1] * pt[1] - 2.0) / 2.0);
        }
        {
            ParticleSystem sys({1.0, 1.0}, Dispersion::Relativistic);
            for (const auto& pt : front_surface_sample(sys, 4.0, 1.0, 33)) {
                t.update(front_residual(pt, 1.0, sys, 4.0));
                const auto rho = lorentz_factors(pt, 1.0, sys);
                cplx sum = 0.0;
                for (std::size_t n = 0; n < rho.size(); ++n) sum += sys.mass(n) * rho[n];
                t.update(std::abs(sum - 4.0) / 4.0);
            }
        }
        return t.result("front/surface-residuals", 1e-10);
    });
}

CheckResult check_action_derivative(int samples) {
    return guarded("stationary/action-energy-derivative", [&] {
        std::mt19937_64 rng(108);
        Tracker t;
        for (Dispersion d : {Dispersion::Nonrelativistic, Dispersion::Relativistic}) {
            for (int s = 0; s < samples; ++s) {
                const Instance inst = random_instance(rng, d, false);
                const auto ad = action_energy_derivative(inst.r, inst.sys, inst.e.e0, 1e-5);
                t.update(std::abs(ad.ds_de - ad.tau) / std::abs(ad.tau));
            }
        }
        return t.result("stationary/action-energy-derivative", 1e-6);
    });
}

CheckResult check_vector_identity(int samples) {
    return guarded("stationary/front-gradient-identity", [&] {
        std::mt19937_64 rng(109);
        Tracker t;
        for (Dispersion d : {Dispersion::Nonrelativistic, Dispersion::Relativistic}) {
            for (int s = 0; s < samples; ++s) {
                const Instance inst = random_instance(rng, d, false);
                const FrontSolution front = solve_front(inst.r, inst.sys, inst.e);
                const MassMatrix mm =
                    mass_matrix(inst.sys, std::span<const cplx>(front.momenta));
                const auto dedv =
                    denergy_dvelocity(inst.sys, std::span<const cplx>(front.velocities));
                cplx bracket = 0.0;
                for (std::size_t n = 0; n < inst.r.size(); ++n) bracket += inst.r[n] * dedv[n];
                for (std::size_t m = 0; m < inst.r.size(); ++m) {
                    const cplx rebuilt = bracket * front.grad_tau[m] * mm.inv_diag[m];
                    t.update(std::abs(rebuilt - inst.r[m]) / inst.r[m]);
                }
            }
        }
        return t.result("stationary/front-gradient-identity", 1e-8);
    });
}

CheckResult check_wavefront_oracle(bool full) {
    return guarded("wavefront/oracle-vs-closed-form", [&] {
        const ComplexEnergy e(1.0, 0.2);
        const double tau0 = 3.0;
        const double cutoff = 400.0 * e.gamma;
        Tracker t;
        const int points = full ? 10 : 4;
        for (int i = 0; i < points; ++i) {
            const double x =
                -5.0 / e.gamma + (10.0 / e.gamma) * (i + 0.5) / points;  // skips x = 0
            const double tt = tau0 + x;
            const std::size_t nodes = wavefront_oracle_nodes(cutoff, x);
            const cplx oracle = wavefront_factor_oracle(tt, tau0, e, cutoff, nodes);
            const cplx closed = wavefront_factor(tt, tau0, e);
            t.update(std::abs(oracle - closed));
        }
        return t.result("wavefront/oracle-vs-closed-form", 2e-3);
    });
}

CheckResult check_weight(int samples) {
    return guarded("weight/closed-form-vs-generic", [&] {
        std::mt19937_64 rng(110);
        Tracker t;
        for (int s = 0; s < samples; ++s) {
            const Instance inst = random_instance(rng, Dispersion::Nonrelativistic, true);
            const cplx generic = surface_weight(inst.r, inst.sys, inst.e);
            const cplx closed = weight_nonrel_closed(inst.r, inst.sys, inst.e);
            t.update(std::abs(generic - closed) / std::abs(closed));
        }
        // single-particle reduction to 2 k
        std::uniform_real_distribution<double> unit(0.5, 2.0);
        for (int s = 0; s < samples; ++s) {
            const double m = unit(rng), rr = unit(rng), e0 = unit(rng);
            const double gamma = s % 2 ? 0.05 * e0 : 0.0;
            ParticleSystem sys({m}, Dispersion::Nonrelativistic);
            const ComplexEnergy e(e0, gamma);
            const cplx w = weight_nonrel_closed(RadialPoint({rr}), sys, e);
            const cplx two_k = 2.0 * std::sqrt(2.0 * m * e.value());
            const double err = std::abs(w - two_k) / std::abs(two_k);
            if (err > 1e-12)
                return CheckResult{"weight/closed-form-vs-generic", false,
                                   "single-particle reduction off by " + fmt(err)};
        }
        return t.result("weight/closed-form-vs-generic", 1e-10);
    });
}

CheckResult check_shell_poles() {
    return guarded("shell/pole-residuals", [&] {
        Tracker t;
        for (double g : {10.0, 20.0, 100.0}) {
            for (int branch : {1, 2, 3}) {
                const ShellResonance res = find_pole(g, 1.0, 1.0, branch);
                t.update(res.pole_residual());
                if (!(res.k_pole.imag() < 0.0) || !(res.width() > 0.0))
                    return CheckResult{"shell/pole-residuals", false, "non-decaying pole"};
            }
        }
        return t.result("shell/pole-residuals", 1e-12);
    });
}

CheckResult check_shell_norm() {
    return guarded("shell/norm-radius-independence", [&] {
        const ShellResonance res = find_pole(20.0, 1.0, 1.0, 1);
        const cplx n1 = pseudo_norm_1p(res, 10.0);
        const cplx n2 = pseudo_norm_1p(res, 20.0);
        const double drift = std::abs(n1 - n2) / std::abs(n1);
        const cplx nq = pseudo_norm_1p(res, 10.0, NormMethod::Quadrature);
        const double paths = std::abs(n1 - nq) / std::abs(n1);
        if (paths > 1e-10)
            return CheckResult{"shell/norm-radius-independence", false,
                               "analytic and quadrature paths disagree: " + fmt(paths)};
        return CheckResult{"shell/norm-radius-independence", drift <= 1e-8,
                           "radius drift " + fmt(drift)};
    });
}

CheckResult check_shell_residue(bool full) {
    return guarded("shell/residue-factorization", [&] {
        Tracker t;
        const auto strengths = full ? std::vector<double>{10.0, 20.0, 100.0}
                                    : std::vector<double>{20.0};
        const auto branches = full ? std::vector<int>{1, 2, 3} : std::vector<int>{1};
        for (double g : strengths) {
            for (int branch : branches) {
                const ShellResonance res = find_pole(g, 1.0, 1.0, branch);
                const ResidueCheck rc = residue_check(res, 2.0, 3.0);
                t.update(std::abs(rc.residue - rc.factorized) / std::abs(rc.factorized));
            }
        }
        return t.result("shell/residue-factorization", 1e-6);
    });
}

CheckResult check_keystone() {
    return guarded("norm/single-particle-keystone", [&] {
        const ShellResonance res = find_pole(20.0, 1.0, 1.0, 1);
        ParticleSystem sys({res.m}, Dispersion::Nonrelativistic);
        const ComplexEnergy e_d = ComplexEnergy::from_value(res.energy());
        ReducedState state;
        state.energy = e_d;
        state.kind = StateKind::Custom;
        state.evaluator = [res](const RadialPoint& r) { return gamow_u(res, r[0]); };

        const double axis = std::sqrt(2.0 * e_d.e0 / res.m);
        const double big_r = 8.0 * res.a;
        IntegrationOptions opts;
        opts.tau_breakpoints = {res.a / axis};
        const cplx via_machinery = pseudo_norm(state, sys, e_d, big_r / axis, 0, opts);
        const cplx oracle = pseudo_norm_1p(res, big_r);
        const double err = std::abs(via_machinery - oracle) / std::abs(oracle);
        return CheckResult{"norm/single-particle-keystone", err <= 1e-8,
                           "relative difference " + fmt(err)};
    });
}

CheckResult check_asymptotic_constancy() {
    return guarded("norm/asymptotic-state-constancy", [&] {
        ParticleSystem sys({1.0}, Dispersion::Nonrelativistic);
        const ComplexEnergy e_d(0.5, 0.05);
        const ReducedState state = make_separable_state(sys, e_d, {1.0});
        const double axis = std::sqrt(2.0 * e_d.e0 / 1.0);
        IntegrationOptions opts;
        opts.tau_min = 5.0 / axis;  // shell [R0, tau_R] with R0 = 5
        const cplx n1 = pseudo_norm(state, sys, e_d, 10.0 / axis, 0, opts);
        const cplx n2 = pseudo_norm(state, sys, e_d, 20.0 / axis, 0, opts);
        const double err = std::abs(n1 - n2) / std::abs(n1);
        return CheckResult{"norm/asymptotic-state-constancy", err <= 1e-10,
                           "relative drift " + fmt(err)};
    });
}

CheckResult check_coarea() {
    return guarded("norm/coarea-vs-direct", [&] {
        ParticleSystem sys({1.0, 2.0}, Dispersion::Nonrelativistic);
        const ComplexEnergy e(1.0);
        ReducedState state;
        state.energy = e;
        state.kind = StateKind::Custom;
        state.evaluator = [](const RadialPoint& r) {
            return cplx(std::exp(-0.5 * (r[0] * r[0] + 0.6 * r[1] * r[1])));
        };
        const double tau_R = 1.5;
        const cplx shells = volume_integral(state, sys, e, tau_R, 0);

        // direct iterated quadrature over the quarter-ellipse region
        const double a1 = std::sqrt(2.0 * e.e0 / sys.mass(0));
        const double a2 = std::sqrt(2.0 * e.e0 / sys.mass(1));
        auto outer = [&](double r1) {
            const double frac = 1.0 - r1 * r1 / (a1 * a1 * tau_R * tau_R);
            const double top = a2 * tau_R * std::sqrt(std::max(0.0, frac));
            auto inner = [&](double r2) {
                const RadialPoint pt({r1, r2});
                const cplx u = state.evaluator(pt);
                return u * u * (4.0 * M_PI * r1 * r1) * (4.0 * M_PI * r2 * r2);
            };
            return integrate_gl16(inner, 0.0, top, 24);
        };
        const cplx direct = integrate_gl16(outer, 0.0, a1 * tau_R, 24);
        const double err = std::abs(shells - direct) / std::abs(direct);
        return CheckResult{"norm/coarea-vs-direct", err <= 1e-6, "relative difference " + fmt(err)};
    });
}

}  // namespace

std::vector<CheckResult> run_validation(bool full) {
    const int samples = full ? 100 : 20;
    std::vector<CheckResult> results;
    results.push_back(check_kinematics_gradient(samples));
    results.push_back(check_mass_matrix(samples));
    results.push_back(check_roundtrip(samples));
    results.push_back(check_nonrel_limit(samples));
    results.push_back(check_tau_homogeneity(samples));
    results.push_back(check_tau_residual(samples));
    results.push_back(check_tau_monotonicity(full ? 10 : 4));
    results.push_back(check_front_samples());
    results.push_back(check_action_derivative(samples));
    results.push_back(check_vector_identity(samples));
    results.push_back(check_wavefront_oracle(full));
    results.push_back(check_weight(samples));
    results.push_back(check_shell_poles());
    results.push_back(check_shell_norm());
    results.push_back(check_shell_residue(full));
    results.push_back(check_keystone());
    if (full) {
        results.push_back(check_asymptotic_constancy());
        results.push_back(check_coarea());
    }
    return results;
}

}  // namespace gamow
