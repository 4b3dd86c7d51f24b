#ifndef KESTEN_SCALING_HPP
#define KESTEN_SCALING_HPP

#include <utility>
#include <vector>

namespace kesten {

struct ScalingFit {
    enum class Mode { LogLog, SemiLog };
    Mode mode = Mode::LogLog;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double residual_max = 0.0;
    int points_used = 0;
};

struct HillEstimate {
    double alpha_hill = 0.0;
    long k = 0;
    long n_samples = 0;
};

// OLS of log(mean_tau) on log(R); the slope estimates the contractive exit
// exponent. Points must have R increasing and mean_tau > 0, at least 3.
ScalingFit fit_contractive(const std::vector<std::pair<double, double>>& points);

// OLS of mean_tau on log(R); the slope is compared downstream to 1/gamma_L.
ScalingFit fit_explosive(const std::vector<std::pair<double, double>>& points);

// alpha = k / sum_{i=1..k} log(X_(i) / X_(k+1)) over descending order
// statistics. Throws DegenerateTailError when the top order statistics tie.
HillEstimate hill_tail_index(std::vector<double> samples, long k);

}  // namespace kesten

#endif  // KESTEN_SCALING_HPP
