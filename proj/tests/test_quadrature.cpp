#include <doctest.h>

#include <cmath>

#include "gamow/quadrature.hpp"

using namespace gamow;

TEST_CASE("gl16 integrates polynomials of degree <= 31 exactly") {
    const auto& xs = GaussLegendre16::nodes;
    const auto& ws = GaussLegendre16::weights;
    double total = 0.0;
    for (double w : ws) total += w;
    CHECK(total == doctest::Approx(2.0).epsilon(1e-15));

    for (int degree : {2, 10, 21, 31}) {
        double acc = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) acc += ws[i] * std::pow(xs[i], degree);
        const double exact = degree % 2 ? 0.0 : 2.0 / (degree + 1);
        CHECK(std::abs(acc - exact) < 1e-14);
    }
}

TEST_CASE("composite rule reproduces an oscillatory antiderivative") {
    const double omega = 37.0;
    auto f = [&](double x) { return std::exp(cplx(0.0, omega * x)); };
    const cplx exact = (std::exp(cplx(0.0, omega * 2.0)) - 1.0) / cplx(0.0, omega);
    const cplx got = integrate_gl16(f, 0.0, 2.0, 24);
    CHECK(std::abs(got - exact) < 1e-12);
}

TEST_CASE("pairwise sum matches plain sum and is order-deterministic") {
    std::vector<double> xs(1000);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = std::sin(0.1 * i) / (i + 1.0);
    double plain = 0.0;
    for (double x : xs) plain += x;
    const double paired = pairwise_sum(std::span<const double>(xs));
    CHECK(paired == doctest::Approx(plain).epsilon(1e-13));
    CHECK(paired == pairwise_sum(std::span<const double>(xs)));
}

TEST_CASE("parallel chunk boundaries cover the range once") {
    std::vector<int> hits(103, 0);
    parallel_chunks(hits.size(), 4, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) hits[i] += 1;
    });
    for (int h : hits) CHECK(h == 1);
}
