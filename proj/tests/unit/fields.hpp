#pragma once

#include <functional>
#include <string>

#include "rds/coefficients.hpp"

namespace rds::testing {

// Scalar field dX = b(X) dt + s(X) dW in one dimension.
inline CoefficientField scalar_field(std::string name, std::function<double(double)> b,
                                     std::function<double(double)> s) {
    CoefficientField f;
    f.name = std::move(name);
    f.drift_fn = [b](std::span<const double> x, std::span<double> out) { out[0] = b(x[0]); };
    f.diffusion_fn = [s](std::span<const double> x, std::span<double> out) { out[0] = s(x[0]); };
    return f;
}

// Constant diffusion matrix (row-major d x m) and zero drift.
inline CoefficientField constant_diffusion(int d, int m, std::vector<double> sigma) {
    CoefficientField f;
    f.name = "constant_diffusion";
    f.dim = d;
    f.noise_dim = m;
    f.drift_fn = [](std::span<const double>, std::span<double> out) {
        for (auto& v : out) v = 0.0;
    };
    f.diffusion_fn = [sigma](std::span<const double>, std::span<double> out) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = sigma[i];
    };
    return f;
}

}  // namespace rds::testing
