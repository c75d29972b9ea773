#pragma once

#include <vector>

#include "hybesov/field.hpp"

namespace hybesov {

class RegressionError : public Error {
public:
    using Error::Error;
};

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    int points = 0;
};

// Ordinary least squares y ≈ slope·x + intercept. Needs two distinct x values.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);
// Fit of log y against log x; every value must be positive.
LinearFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace hybesov
