#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gamow {

using cplx = std::complex<double>;

/// 16-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre16 {
    static constexpr std::size_t order = 16;
    static const std::array<double, 16> nodes;
    static const std::array<double, 16> weights;
};

/// Deterministic pairwise (cascade) summation. The reduction tree depends
/// only on the element count, so sums are bit-identical no matter how the
/// elements were produced (serially or by a worker pool).
double pairwise_sum(std::span<const double> xs);
cplx pairwise_sum(std::span<const cplx> xs);

/// Nodes and weights of a composite 16-point Gauss-Legendre rule with
/// `panels` equal panels on [a, b].
struct PanelRule {
    std::vector<double> x;
    std::vector<double> w;
};
PanelRule composite_gl16(double a, double b, int panels);

/// Integrate f over [a, b] with `panels` equal Gauss-Legendre panels.
/// Contributions are accumulated with pairwise summation in node order.
cplx integrate_gl16(const std::function<cplx(double)>& f, double a, double b, int panels);

/// Run fn(begin, end) over contiguous chunks of [0, n) on `threads` workers.
/// Chunk boundaries depend only on n and threads, never on scheduling.
void parallel_chunks(std::size_t n, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace gamow
