#include "gamow/quadrature.hpp"

#include <stdexcept>
#include <thread>

namespace gamow {

// Abscissae and weights for the 16-point Gauss-Legendre rule (symmetric
// about zero, listed in ascending order).
const std::array<double, 16> GaussLegendre16::nodes = {
    -0.9894009349916499325961542, -0.9445750230732325760779884,
    -0.8656312023878317438804679, -0.7554044083550030338951012,
    -0.6178762444026437484466718, -0.4580167776572273863424194,
    -0.2816035507792589132304605, -0.0950125098376374401853193,
    0.0950125098376374401853193,  0.2816035507792589132304605,
    0.4580167776572273863424194,  0.6178762444026437484466718,
    0.7554044083550030338951012,  0.8656312023878317438804679,
    0.9445750230732325760779884,  0.9894009349916499325961542};

const std::array<double, 16> GaussLegendre16::weights = {
    0.0271524594117540948517806, 0.0622535239386478928628438,
    0.0951585116824927848099251, 0.1246289712555338720524763,
    0.1495959888165767320815017, 0.1691565193950025381893121,
    0.1826034150449235888667637, 0.1894506104550684962853967,
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806};

namespace {

template <class T>
T pairwise_impl(std::span<const T> xs) {
    if (xs.size() <= 8) {
        T acc{};
        for (const T& x : xs) acc += x;
        return acc;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_impl(xs.subspan(0, half)) + pairwise_impl(xs.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> xs) { return pairwise_impl(xs); }
cplx pairwise_sum(std::span<const cplx> xs) { return pairwise_impl(xs); }

PanelRule composite_gl16(double a, double b, int panels) {
    if (panels < 1) throw std::invalid_argument("composite_gl16: panels must be >= 1");
    PanelRule rule;
    rule.x.reserve(static_cast<std::size_t>(panels) * GaussLegendre16::order);
    rule.w.reserve(rule.x.capacity());
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double left = a + p * h;
        const double mid = left + 0.5 * h;
        for (std::size_t i = 0; i < GaussLegendre16::order; ++i) {
            rule.x.push_back(mid + 0.5 * h * GaussLegendre16::nodes[i]);
            rule.w.push_back(0.5 * h * GaussLegendre16::weights[i]);
        }
    }
    return rule;
}

cplx integrate_gl16(const std::function<cplx(double)>& f, double a, double b, int panels) {
    const PanelRule rule = composite_gl16(a, b, panels);
    std::vector<cplx> contrib(rule.x.size());
    for (std::size_t i = 0; i < rule.x.size(); ++i) contrib[i] = rule.w[i] * f(rule.x[i]);
    return pairwise_sum(std::span<const cplx>(contrib));
}

void parallel_chunks(std::size_t n, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t workers =
        threads < 1 ? 1 : std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    if (workers == 1) {
        fn(0, n);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(fn, begin, end);
    }
    for (auto& t : pool) t.join();
}

}  // namespace gamow
