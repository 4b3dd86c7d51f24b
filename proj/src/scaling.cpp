#include "kesten/scaling.hpp"

#include <algorithm>
#include <cmath>

#include "kesten/errors.hpp"

namespace kesten {

namespace {

ScalingFit ols(ScalingFit::Mode mode, const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw NonPositiveDataError("scaling fit: need at least 3 points");
    for (std::size_t i = 0; i + 1 < points.size(); ++i)
        if (!(points[i].first < points[i + 1].first))
            throw NonPositiveDataError("scaling fit: R must be strictly increasing");

    std::vector<double> xs, ys;
    xs.reserve(points.size());
    ys.reserve(points.size());
    for (const auto& [r, tau] : points) {
        if (!(r > 0.0) || !(tau > 0.0)) throw NonPositiveDataError("scaling fit: R and mean_tau must be positive");
        xs.push_back(std::log(r));
        ys.push_back(mode == ScalingFit::Mode::LogLog ? std::log(tau) : tau);
    }

    const double n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }

    ScalingFit fit;
    fit.mode = mode;
    fit.points_used = static_cast<int>(xs.size());
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double resid = ys[i] - (fit.intercept + fit.slope * xs[i]);
        ssr += resid * resid;
        fit.residual_max = std::max(fit.residual_max, std::abs(resid));
    }
    fit.r_squared = syy > 0.0 ? std::max(0.0, 1.0 - ssr / syy) : 1.0;
    return fit;
}

}  // namespace

ScalingFit fit_contractive(const std::vector<std::pair<double, double>>& points) {
    return ols(ScalingFit::Mode::LogLog, points);
}

ScalingFit fit_explosive(const std::vector<std::pair<double, double>>& points) {
    return ols(ScalingFit::Mode::SemiLog, points);
}

HillEstimate hill_tail_index(std::vector<double> samples, long k) {
    if (k < 10) throw ConfigError("hill_tail_index: k must be >= 10");
    if (static_cast<std::size_t>(k) >= samples.size())
        throw ConfigError("hill_tail_index: k must be smaller than the sample count");
    for (double v : samples)
        if (!(v >= 0.0)) throw ConfigError("hill_tail_index: samples must be nonnegative");

    std::sort(samples.begin(), samples.end(), std::greater<>());
    const double pivot = samples[static_cast<std::size_t>(k)];
    if (!(pivot > 0.0)) throw DegenerateTailError("hill_tail_index: order statistic X_(k+1) is zero");

    double sum = 0.0;
    for (long i = 0; i < k; ++i) sum += std::log(samples[static_cast<std::size_t>(i)] / pivot);
    if (!(sum > 0.0)) throw DegenerateTailError("hill_tail_index: top order statistics are tied");

    HillEstimate h;
    h.alpha_hill = static_cast<double>(k) / sum;
    h.k = k;
    h.n_samples = static_cast<long>(samples.size());
    return h;
}

}  // namespace kesten
