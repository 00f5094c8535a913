#include "gamow/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace gamow {

namespace {

void check_length(const ParticleSystem& sys, std::size_t n, const char* what) {
    if (n != sys.size())
        throw domain_error(std::string(what) + ": multiplet length does not match particle count");
}

}  // namespace

ParticleSystem::ParticleSystem(std::vector<double> masses, Dispersion dispersion,
                               bool allow_massless)
    : masses_(std::move(masses)), dispersion_(dispersion) {
    if (masses_.empty()) throw domain_error("ParticleSystem: need at least one particle");
    for (double m : masses_) {
        if (!std::isfinite(m) || m < 0.0)
            throw domain_error("ParticleSystem: masses must be finite and >= 0");
        if (m == 0.0) {
            if (dispersion_ == Dispersion::Nonrelativistic)
                throw domain_error("ParticleSystem: massless particle has no nonrelativistic dispersion");
            if (!allow_massless)
                throw domain_error("ParticleSystem: massless particle requires allow_massless");
        }
    }
}

bool ParticleSystem::has_massless() const {
    return std::any_of(masses_.begin(), masses_.end(), [](double m) { return m == 0.0; });
}

double ParticleSystem::threshold() const {
    if (nonrelativistic()) return 0.0;
    double sum = 0.0;
    for (double m : masses_) sum += m;
    return sum;
}

cplx dispersion_energy(const ParticleSystem& sys, std::span<const cplx> p) {
    check_length(sys, p.size(), "dispersion_energy");
    cplx e = 0.0;
    if (sys.nonrelativistic()) {
        for (std::size_t n = 0; n < p.size(); ++n) e += p[n] * p[n] / (2.0 * sys.mass(n));
    } else {
        for (std::size_t n = 0; n < p.size(); ++n) {
            const double m = sys.mass(n);
            e += std::sqrt(cplx(m * m) + p[n] * p[n]);
        }
    }
    return e;
}

cplx dispersion_energy(const ParticleSystem& sys, std::span<const double> p) {
    std::vector<cplx> pc(p.begin(), p.end());
    return dispersion_energy(sys, std::span<const cplx>(pc));
}

std::vector<cplx> velocity_of_momentum(const ParticleSystem& sys, std::span<const cplx> p) {
    check_length(sys, p.size(), "velocity_of_momentum");
    std::vector<cplx> v(p.size());
    if (sys.nonrelativistic()) {
        for (std::size_t n = 0; n < p.size(); ++n) v[n] = p[n] / sys.mass(n);
    } else {
        for (std::size_t n = 0; n < p.size(); ++n) {
            const double m = sys.mass(n);
            v[n] = p[n] / std::sqrt(cplx(m * m) + p[n] * p[n]);
        }
    }
    return v;
}

std::vector<cplx> momentum_of_velocity(const ParticleSystem& sys, std::span<const cplx> v) {
    check_length(sys, v.size(), "momentum_of_velocity");
    std::vector<cplx> p(v.size());
    if (sys.nonrelativistic()) {
        for (std::size_t n = 0; n < v.size(); ++n) p[n] = sys.mass(n) * v[n];
    } else {
        for (std::size_t n = 0; n < v.size(); ++n) {
            const double m = sys.mass(n);
            if (m == 0.0)
                throw domain_error("momentum_of_velocity: massless velocity map is not invertible");
            if (v[n].imag() == 0.0 && std::abs(v[n].real()) >= 1.0)
                throw domain_error("momentum_of_velocity: |v| >= 1 for a massive particle");
            p[n] = m * v[n] / std::sqrt(cplx(1.0) - v[n] * v[n]);
        }
    }
    return p;
}

cplx energy_of_velocity(const ParticleSystem& sys, std::span<const cplx> v) {
    check_length(sys, v.size(), "energy_of_velocity");
    cplx e = 0.0;
    if (sys.nonrelativistic()) {
        for (std::size_t n = 0; n < v.size(); ++n) e += 0.5 * sys.mass(n) * v[n] * v[n];
    } else {
        for (std::size_t n = 0; n < v.size(); ++n)
            e += sys.mass(n) / std::sqrt(cplx(1.0) - v[n] * v[n]);
    }
    return e;
}

std::vector<cplx> denergy_dvelocity(const ParticleSystem& sys, std::span<const cplx> v) {
    check_length(sys, v.size(), "denergy_dvelocity");
    std::vector<cplx> d(v.size());
    if (sys.nonrelativistic()) {
        for (std::size_t n = 0; n < v.size(); ++n) d[n] = sys.mass(n) * v[n];
    } else {
        for (std::size_t n = 0; n < v.size(); ++n) {
            const cplx gamma = 1.0 / std::sqrt(cplx(1.0) - v[n] * v[n]);
            d[n] = sys.mass(n) * gamma * gamma * gamma * v[n];
        }
    }
    return d;
}

MassMatrix mass_matrix(const ParticleSystem& sys, std::span<const cplx> p) {
    check_length(sys, p.size(), "mass_matrix");
    MassMatrix mm;
    mm.diag.resize(p.size());
    mm.inv_diag.resize(p.size());
    if (sys.nonrelativistic()) {
        for (std::size_t n = 0; n < p.size(); ++n) {
            mm.diag[n] = sys.mass(n);
            mm.inv_diag[n] = 1.0 / sys.mass(n);
        }
    } else {
        for (std::size_t n = 0; n < p.size(); ++n) {
            const double m = sys.mass(n);
            if (m == 0.0)
                throw domain_error("mass_matrix: diverges for a massless relativistic particle");
            const cplx e2 = cplx(m * m) + p[n] * p[n];
            const cplx e = std::sqrt(e2);
            mm.inv_diag[n] = m * m / (e2 * e);  // m^2 / (m^2 + p^2)^{3/2}
            mm.diag[n] = 1.0 / mm.inv_diag[n];
        }
    }
    return mm;
}

}  // namespace gamow
