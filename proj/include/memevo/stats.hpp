#pragma once

#include <span>

namespace memevo {

struct TTestResult {
    double t = 0.0;
    double dof = 0.0;
    double p = 1.0;
};

/// Welch's unequal-variance t-test, two-sided. Each sample needs at least two values.
/// When both samples have zero variance, p is 1 for equal means and 0 otherwise.
TTestResult welch_t_test(std::span<const double> a, std::span<const double> b);

double mean(std::span<const double> x);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double stddev(std::span<const double> x);
double median(std::span<const double> x);

}  // namespace memevo
