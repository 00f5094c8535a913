#include "gamow/pseudo_norm.hpp"

#include <algorithm>
#include <cmath>

#include "gamow/quadrature.hpp"

namespace gamow {

namespace {

constexpr cplx kImag(0.0, 1.0);

void require_nonrel(const ParticleSystem& sys, const char* what) {
    if (!sys.nonrelativistic())
        throw domain_error(std::string(what) +
                           ": only nonrelativistic systems are supported; the relativistic "
                           "surface-weight normalization is an open question");
}

// Semi-axes of the front ellipsoid tau(r) = 1 at the real part of E.
std::vector<double> front_axes(const ParticleSystem& sys, double e0) {
    if (!(e0 > 0.0)) throw domain_error("front integrals: Re(E) must be positive");
    std::vector<double> a(sys.size());
    for (std::size_t n = 0; n < sys.size(); ++n) a[n] = std::sqrt(2.0 * e0 / sys.mass(n));
    return a;
}

// Tensor Gauss-Legendre grid over the angle cube [0, pi/2]^(N-1) of the
// positive-orthant unit sphere. Weights carry the sphere Jacobian
// prod_i sin^(N-2-i)(theta_i).
struct AngularGrid {
    std::size_t count = 0;
    std::size_t dim = 0;
    std::vector<double> omega;   // count x dim, row-major
    std::vector<double> weight;  // count
};

AngularGrid angular_grid(std::size_t n, int panels) {
    AngularGrid grid;
    grid.dim = n;
    if (n == 1) {
        grid.count = 1;
        grid.omega = {1.0};
        grid.weight = {1.0};
        return grid;
    }
    const std::size_t axes = n - 1;
    const PanelRule rule = composite_gl16(0.0, M_PI / 2.0, panels);
    const std::size_t per_axis = rule.x.size();

    std::size_t total = 1;
    for (std::size_t j = 0; j < axes; ++j) total *= per_axis;
    grid.count = total;
    grid.omega.resize(total * n);
    grid.weight.resize(total);

    std::vector<std::size_t> idx(axes, 0);
    for (std::size_t node = 0; node < total; ++node) {
        double w = 1.0;
        double sines = 1.0;
        for (std::size_t j = 0; j < axes; ++j) {
            const double theta = rule.x[idx[j]];
            const double s = std::sin(theta);
            w *= rule.w[idx[j]] * std::pow(s, static_cast<double>(axes - 1 - j));
            grid.omega[node * n + j] = sines * std::cos(theta);
            sines *= s;
        }
        grid.omega[node * n + axes] = sines;
        grid.weight[node] = w;
        for (std::size_t j = axes; j-- > 0;) {
            if (++idx[j] < per_axis) break;
            idx[j] = 0;
        }
    }
    return grid;
}

double resolve_tau_min(const ReducedState& state, double tau_R, const IntegrationOptions& opts) {
    if (opts.tau_min >= 0.0) {
        if (opts.tau_min >= tau_R)
            throw domain_error("front integrals: tau_min must be below tau_R");
        return opts.tau_min;
    }
    return state.kind == StateKind::PartitionIntegral ? opts.inner_cutoff * tau_R : 0.0;
}

int radial_panels(const ComplexEnergy& e, double tau_lo, double tau_hi, int resolution) {
    const int floor_panels = oscillation_panel_floor(e, tau_lo, tau_hi);
    if (resolution > 0) {
        if (resolution < floor_panels)
            throw domain_error(
                "front integrals: resolution cannot resolve the u^2 oscillation; need at least " +
                std::to_string(floor_panels) + " panels");
        return resolution;
    }
    return floor_panels + 8;
}

double radial_measure(const RadialPoint& r) {
    double w = 1.0;
    for (double x : r.r) w *= 4.0 * M_PI * x * x;
    return w;
}

// Volume contribution of one tau slab [lo, hi] through the coarea
// parameterization r = tau * (a .* omega).
cplx volume_slab(const ReducedState& state, const ParticleSystem& sys, const ComplexEnergy& e,
                 double lo, double hi, int resolution, const IntegrationOptions& opts) {
    const std::size_t n = sys.size();
    const std::vector<double> axes = front_axes(sys, e.e0);
    double axes_prod = 1.0;
    for (double a : axes) axes_prod *= a;

    const PanelRule radial = composite_gl16(lo, hi, radial_panels(e, lo, hi, resolution));
    const AngularGrid grid = angular_grid(n, resolution > 0 ? resolution : 16);

    const std::size_t total = radial.x.size() * grid.count;
    std::vector<cplx> contrib(total);
    parallel_chunks(radial.x.size(), opts.threads, [&](std::size_t begin, std::size_t end) {
        RadialPoint point;
        point.r.resize(n);
        for (std::size_t i = begin; i < end; ++i) {
            const double tau = radial.x[i];
            const double shell = std::pow(tau, static_cast<double>(n - 1)) * axes_prod;
            for (std::size_t j = 0; j < grid.count; ++j) {
                for (std::size_t c = 0; c < n; ++c)
                    point.r[c] = tau * axes[c] * grid.omega[j * n + c];
                const cplx u = state.evaluator(point);
                const double measure = opts.radial_weight ? radial_measure(point) : 1.0;
                contrib[i * grid.count + j] =
                    radial.w[i] * grid.weight[j] * shell * measure * u * u;
            }
        }
    });
    return pairwise_sum(std::span<const cplx>(contrib));
}

// Split [lo, hi] at the declared breakpoints and integrate each piece.
cplx volume_range(const ReducedState& state, const ParticleSystem& sys, const ComplexEnergy& e,
                  double lo, double hi, int resolution, const IntegrationOptions& opts) {
    std::vector<double> cuts{lo};
    for (double b : opts.tau_breakpoints)
        if (b > lo && b < hi) cuts.push_back(b);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cplx total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += volume_slab(state, sys, e, cuts[i], cuts[i + 1], resolution, opts);
    return total;
}

}  // namespace

int oscillation_panel_floor(const ComplexEnergy& e, double tau_min, double tau_R) {
    const double rate = 8.0 * (e.e0 + e.gamma) / M_PI;
    return std::max(1, static_cast<int>(std::ceil((tau_R - tau_min) * rate)));
}

cplx surface_weight(const RadialPoint& r, const ParticleSystem& sys, const ComplexEnergy& e) {
    const cplx tau = tau_implicit(r, sys, e);
    const TauGradient tg = grad_tau(r, sys, e);
    std::vector<cplx> v(r.size());
    for (std::size_t n = 0; n < r.size(); ++n) v[n] = r[n] / tau;
    const std::vector<cplx> dedv = denergy_dvelocity(sys, std::span<const cplx>(v));
    cplx bracket = 0.0;  // <grad_p E | M | grad_p E> = sum v_n dE/dv_n
    for (std::size_t n = 0; n < r.size(); ++n) bracket += v[n] * dedv[n];
    return 2.0 * tg.t_norm * bracket;
}

cplx weight_nonrel_closed(const RadialPoint& r, const ParticleSystem& sys,
                          const ComplexEnergy& e) {
    require_nonrel(sys, "weight_nonrel_closed");
    const cplx tau = tau_nonrel_closed(r, sys, e);
    double sum_sq = 0.0;
    for (std::size_t n = 0; n < r.size(); ++n) {
        const double mr = sys.mass(n) * r[n];
        sum_sq += mr * mr;
    }
    return 2.0 * std::sqrt(sum_sq) / tau;
}

cplx partition_state_eval(const RadialPoint& r, const ParticleSystem& sys,
                          const ComplexEnergy& e_d,
                          const std::function<double(double)>& profile) {
    require_nonrel(sys, "partition_state_eval");
    if (sys.size() != 2)
        throw domain_error("partition_state_eval: only two-particle partitions are implemented");
    if (!(r.size() == 2) || !(r[0] > 0.0) || !(r[1] > 0.0))
        throw domain_error("partition_state_eval: both radii must be positive");
    const double energy = e_d.e0;
    if (!(energy > 0.0)) throw domain_error("partition_state_eval: Re(E) must be positive");

    const double k1max = std::sqrt(2.0 * sys.mass(0) * energy);
    const double k2max = std::sqrt(2.0 * sys.mass(1) * std::abs(e_d.value()));
    const double span = r[0] * k1max + r[1] * k2max;
    // floor of 48 keeps moderately concentrated profiles resolved; beyond
    // that the phase span across the energy split sets the cost
    const int panels = std::max(48, static_cast<int>(std::ceil(span / M_PI)));

    const PanelRule rule = composite_gl16(0.0, M_PI / 2.0, panels);
    std::vector<cplx> contrib(rule.x.size());
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double s = std::sin(rule.x[i]);
        const double c = std::cos(rule.x[i]);
        const double e1 = energy * s * s;
        const cplx k1 = k1max * s;
        const cplx k2 = std::sqrt(2.0 * sys.mass(1) * (e_d.value() - e1));
        const cplx phase = std::exp(kImag * (k1 * r[0] + k2 * r[1]));
        contrib[i] = rule.w[i] * profile(e1) * 2.0 * energy * s * c * phase /
                     (k1 * r[0] * k2 * r[1]);
    }
    return pairwise_sum(std::span<const cplx>(contrib));
}

std::function<double(double)> default_partition_profile(double energy) {
    if (!(energy > 0.0)) throw domain_error("partition profile: energy must be positive");
    const double norm = 30.0 / std::pow(energy, 5);
    return [energy, norm](double e1) {
        const double t = e1 * (energy - e1);
        return norm * t * t;
    };
}

ReducedState make_partition_state(const ParticleSystem& sys, const ComplexEnergy& e_d) {
    return make_partition_state(sys, e_d, default_partition_profile(e_d.e0));
}

ReducedState make_partition_state(const ParticleSystem& sys, const ComplexEnergy& e_d,
                                  std::function<double(double)> profile) {
    require_nonrel(sys, "make_partition_state");
    if (sys.size() != 2)
        throw domain_error("make_partition_state: only two-particle partitions are implemented");
    ReducedState state;
    state.energy = e_d;
    state.kind = StateKind::PartitionIntegral;
    state.evaluator = [sys, e_d, profile = std::move(profile)](const RadialPoint& r) {
        return partition_state_eval(r, sys, e_d, profile);
    };
    return state;
}

ReducedState make_separable_state(const ParticleSystem& sys, const ComplexEnergy& e_d,
                                  std::vector<double> fractions) {
    if (fractions.size() != sys.size())
        throw domain_error("make_separable_state: one energy fraction per particle");
    double total = 0.0;
    for (double f : fractions) {
        if (f < 0.0) throw domain_error("make_separable_state: fractions must be >= 0");
        total += f;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw domain_error("make_separable_state: fractions must sum to 1");

    std::vector<cplx> ks(sys.size());
    for (std::size_t n = 0; n < sys.size(); ++n) {
        if (sys.nonrelativistic()) {
            ks[n] = std::sqrt(2.0 * sys.mass(n) * fractions[n] * e_d.value());
        } else {
            const cplx en = fractions[n] * e_d.value();
            ks[n] = std::sqrt(en * en - cplx(sys.mass(n) * sys.mass(n)));
        }
    }
    ReducedState state;
    state.energy = e_d;
    state.kind = StateKind::SeparableProduct;
    state.evaluator = [ks](const RadialPoint& r) {
        cplx u = 1.0;
        for (std::size_t n = 0; n < ks.size(); ++n)
            u *= std::exp(kImag * ks[n] * r[n]) / (ks[n] * r[n]);
        return u;
    };
    return state;
}

cplx volume_integral(const ReducedState& state, const ParticleSystem& sys,
                     const ComplexEnergy& e, double tau_R, int resolution,
                     const IntegrationOptions& opts) {
    require_nonrel(sys, "volume_integral");
    if (!(tau_R > 0.0)) throw domain_error("volume_integral: tau_R must be positive");
    const double lo = resolve_tau_min(state, tau_R, opts);
    return volume_range(state, sys, e, lo, tau_R, resolution, opts);
}

cplx surface_integral(const ReducedState& state, const ParticleSystem& sys,
                      const ComplexEnergy& e, double tau_R, int resolution,
                      const IntegrationOptions& opts) {
    require_nonrel(sys, "surface_integral");
    if (!(tau_R > 0.0)) throw domain_error("surface_integral: tau_R must be positive");
    const std::size_t n = sys.size();
    const std::vector<double> axes = front_axes(sys, e.e0);
    double axes_prod = 1.0;
    for (double a : axes) axes_prod *= a;
    const double shell = std::pow(tau_R, static_cast<double>(n - 1)) * axes_prod;

    const AngularGrid grid = angular_grid(n, resolution > 0 ? resolution : 16);
    std::vector<cplx> contrib(grid.count);
    parallel_chunks(grid.count, opts.threads, [&](std::size_t begin, std::size_t end) {
        RadialPoint point;
        point.r.resize(n);
        for (std::size_t j = begin; j < end; ++j) {
            for (std::size_t c = 0; c < n; ++c)
                point.r[c] = tau_R * axes[c] * grid.omega[j * n + c];
            const cplx u = state.evaluator(point);
            const double measure = opts.radial_weight ? radial_measure(point) : 1.0;
            // Euclidean surface element: |grad tau| at Re(E) times the
            // coarea Jacobian. The weight divisor uses the full complex E.
            double t0_sq = 0.0;
            for (std::size_t c = 0; c < n; ++c) {
                const double g = sys.mass(c) * point.r[c] / (2.0 * e.e0 * tau_R);
                t0_sq += g * g;
            }
            const cplx w = weight_nonrel_closed(point, sys, e);
            contrib[j] = grid.weight[j] * shell * measure * std::sqrt(t0_sq) * u * u / w;
        }
    });
    return pairwise_sum(std::span<const cplx>(contrib));
}

cplx pseudo_norm(const ReducedState& state, const ParticleSystem& sys, const ComplexEnergy& e_d,
                 double tau_R, int resolution, const IntegrationOptions& opts) {
    require_nonrel(sys, "pseudo_norm");
    const cplx vol = volume_integral(state, sys, e_d, tau_R, resolution, opts);
    const cplx surf = surface_integral(state, sys, e_d, tau_R, resolution, opts);
    return vol + kImag * surf;
}

NormScan norm_convergence_scan(const ReducedState& state, const ParticleSystem& sys,
                               const ComplexEnergy& e_d, const std::vector<double>& tau_grid,
                               int resolution, const IntegrationOptions& opts) {
    require_nonrel(sys, "norm_convergence_scan");
    if (tau_grid.size() < 2)
        throw domain_error("norm_convergence_scan: need at least two grid points");
    for (std::size_t i = 0; i + 1 < tau_grid.size(); ++i)
        if (!(tau_grid[i] < tau_grid[i + 1]))
            throw domain_error("norm_convergence_scan: grid must be strictly increasing");
    if (!(tau_grid.front() > 0.0))
        throw domain_error("norm_convergence_scan: grid must be positive");

    NormScan scan;
    scan.tau_grid = tau_grid;
    scan.volume_terms.reserve(tau_grid.size());
    scan.surface_terms.reserve(tau_grid.size());
    scan.norms.reserve(tau_grid.size());

    // one inner cutoff for the whole scan, anchored at the first grid point
    const double lo0 = resolve_tau_min(state, tau_grid.front(), opts);
    cplx vol = volume_range(state, sys, e_d, lo0, tau_grid.front(), resolution, opts);
    for (std::size_t i = 0; i < tau_grid.size(); ++i) {
        if (i > 0)
            vol += volume_range(state, sys, e_d, tau_grid[i - 1], tau_grid[i], resolution, opts);
        const cplx surf = surface_integral(state, sys, e_d, tau_grid[i], resolution, opts);
        scan.volume_terms.push_back(vol);
        scan.surface_terms.push_back(surf);
        scan.norms.push_back(vol + kImag * surf);
    }
    return scan;
}

}  // namespace gamow
