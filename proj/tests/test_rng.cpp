#include <doctest.h>

#include <cmath>
#include <vector>

#include "kesten/rng.hpp"

using namespace kesten;

TEST_CASE("replaying a stream is bit-exact") {
    RngStream a(123456789, 42);
    RngStream b(123456789, 42);
    for (int i = 0; i < 200; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream c(123456789, 42);
    std::vector<double> first;
    for (int i = 0; i < 50; ++i) first.push_back(c.next_gaussian(0.0, 1.0));
    RngStream d(123456789, 42);
    for (int i = 0; i < 50; ++i) CHECK(d.next_gaussian(0.0, 1.0) == first[i]);
}

TEST_CASE("distinct stream ids decorrelate") {
    RngStream a(7, 1);
    RngStream b(7, 2);
    const int n = 100000;
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double x = a.next_uniform();
        const double y = b.next_uniform();
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    const double mx = sx / n, my = sy / n;
    const double rho = (sxy / n - mx * my) / std::sqrt((sxx / n - mx * mx) * (syy / n - my * my));
    CHECK(std::abs(rho) < 0.01);

    // substreams with distinct (salt, index) differ too
    RngStream base(7, 0);
    CHECK(base.substream(1, 0).next_u64() != base.substream(1, 1).next_u64());
    CHECK(base.substream(1, 0).next_u64() != base.substream(2, 0).next_u64());
}

TEST_CASE("gaussian draws") {
    RngStream rng(2024, 0);
    CHECK(rng.next_gaussian(3.25, 0.0) == 3.25);  // sd = 0 returns the mean exactly

    const int n = 1000000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.next_gaussian(0.0, 1.0);
        sum += x;
        sumsq += x * x;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(n)));  // 4 standard errors
    CHECK(var > 0.99);
    CHECK(var < 1.01);
}

TEST_CASE("uniform draws stay inside the open interval") {
    RngStream rng(5, 5);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.next_uniform();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("inverse normal CDF reference values") {
    CHECK(inverse_normal_cdf(0.5) == 0.0);
    CHECK(inverse_normal_cdf(0.975) == doctest::Approx(1.959963985).epsilon(1e-9));
    CHECK(inverse_normal_cdf(0.025) == doctest::Approx(-1.959963985).epsilon(1e-9));
    CHECK(inverse_normal_cdf(0.9999) == doctest::Approx(3.719016485).epsilon(1e-8));
    CHECK(inverse_normal_cdf(1e-10) == doctest::Approx(-6.361340902).epsilon(1e-8));
}
