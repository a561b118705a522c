#pragma once

#include <span>

namespace eoc {

/// Two-sided 97.5% Student-t quantile (for 95% confidence intervals).
double t_quantile_975(int dof);

struct MeanCi {
    double mean = 0.0;
    double sd = 0.0;         // sample standard deviation
    double ci95_halfwidth = 0.0;  // t-interval; 0 for a single sample
    int count = 0;
};

MeanCi mean_ci95(std::span<const double> xs);

}  // namespace eoc
