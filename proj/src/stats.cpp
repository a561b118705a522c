#include "eoc/stats.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace eoc {

double t_quantile_975(int dof) {
    if (dof < 1) throw std::invalid_argument("t quantile needs dof >= 1");
    return boost::math::quantile(boost::math::students_t(static_cast<double>(dof)), 0.975);
}

MeanCi mean_ci95(std::span<const double> xs) {
    MeanCi r;
    r.count = static_cast<int>(xs.size());
    if (r.count == 0) return r;
    double sum = 0.0;
    for (double x : xs) sum += x;
    r.mean = sum / r.count;
    if (r.count < 2) return r;
    double ss = 0.0;
    for (double x : xs) ss += (x - r.mean) * (x - r.mean);
    r.sd = std::sqrt(ss / (r.count - 1));
    r.ci95_halfwidth = t_quantile_975(r.count - 1) * r.sd / std::sqrt(static_cast<double>(r.count));
    return r;
}

}  // namespace eoc
