#pragma once

#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rds/linalg.hpp"

namespace rds {

/// Writes b(x) into out (size d).
using DriftFn = std::function<void(std::span<const double> x, std::span<double> out)>;
/// Writes sigma(x) into out, row-major d x m.
using DiffusionFn = std::function<void(std::span<const double> x, std::span<double> out)>;

using FieldParams = std::map<std::string, double>;

/// Time-homogeneous coefficients of dX = b(X) dt + sigma(X) dZ with X in R^d
/// and an m-dimensional driver.
struct CoefficientField {
    std::string name;
    int dim = 1;        ///< d
    int noise_dim = 1;  ///< m
    DriftFn drift_fn;
    DiffusionFn diffusion_fn;
    std::string domain_note;
    FieldParams params;
    /// Non-decreasing g with 2<b(x),x> + tr(sigma sigma^T) <= g(|x|^2) where one
    /// is known; empty otherwise.
    std::function<double(double)> growth_bound;

    [[nodiscard]] Vec drift(std::span<const double> x) const;
    [[nodiscard]] Matrix diffusion(std::span<const double> x) const;
    /// Shape checks: d, m >= 1 and both callables set.
    void validate() const;
};

class UnknownFieldError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Stable registry names: ou, gbm, cubic, quadratic_blowup, singular_1d,
/// bounded_smooth.
[[nodiscard]] const std::vector<std::string>& registry_names();

/// Named example field. Parameters (defaults in brackets):
///   ou               b = -lambda x, sigma = c I             lambda[1] c[1] dim[1]
///   gbm              b = mu x, sigma = nu x (d = 1)         mu[0.05] nu[0.8]
///   cubic            b = -x^3, sigma = c (d = 1)            c[1]
///   quadratic_blowup b = x^2, sigma = 0 (d = 1)             -
///   singular_1d      b = sign(x)|x|^{-1/4} on 0<|x|<=1, 0 elsewhere; sigma = 1
///   bounded_smooth   b_i = tanh(x_i), sigma = s (I + eps S(x)),
///                    S_ij = sin(x_i + x_j)/d                dim[2] eps[0.1] sigma_scale[1]
/// Unknown names or parameter keys are rejected with the accepted list.
[[nodiscard]] CoefficientField registry(const std::string& name, const FieldParams& params = {});

}  // namespace rds
