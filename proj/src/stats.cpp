#include "memevo/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace memevo {

double mean(std::span<const double> x) {
    if (x.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

namespace {

double sample_variance(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    double ss = 0.0;
    for (double v : x) ss += (v - m) * (v - m);
    return ss / static_cast<double>(x.size() - 1);
}

}  // namespace

double stddev(std::span<const double> x) { return std::sqrt(sample_variance(x)); }

double median(std::span<const double> x) {
    if (x.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::vector<double> v(x.begin(), x.end());
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("welch_t_test: each sample needs >= 2 values");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double va = sample_variance(a) / na;
    const double vb = sample_variance(b) / nb;
    const double diff = mean(a) - mean(b);
    const double se2 = va + vb;
    if (se2 == 0.0) {
        if (diff == 0.0) return {0.0, na + nb - 2.0, 1.0};
        return {std::copysign(std::numeric_limits<double>::infinity(), diff), na + nb - 2.0, 0.0};
    }
    TTestResult r;
    r.t = diff / std::sqrt(se2);
    r.dof = se2 * se2 / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
    // Two-sided tail of Student's t: I_{dof / (dof + t^2)}(dof / 2, 1 / 2).
    r.p = boost::math::ibeta(r.dof / 2.0, 0.5, r.dof / (r.dof + r.t * r.t));
    return r;
}

}  // namespace memevo
