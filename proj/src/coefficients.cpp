#include "rds/coefficients.hpp"

#include <cmath>
#include <sstream>

namespace rds {

Vec CoefficientField::drift(std::span<const double> x) const {
    Vec out(static_cast<std::size_t>(dim));
    drift_fn(x, out);
    return out;
}

Matrix CoefficientField::diffusion(std::span<const double> x) const {
    Matrix out(static_cast<std::size_t>(dim), static_cast<std::size_t>(noise_dim));
    diffusion_fn(x, out.data);
    return out;
}

void CoefficientField::validate() const {
    if (dim < 1 || noise_dim < 1) throw std::invalid_argument("field dimensions must be >= 1");
    if (!drift_fn || !diffusion_fn) throw std::invalid_argument("field " + name + " is incomplete");
}

const std::vector<std::string>& registry_names() {
    static const std::vector<std::string> names{"ou",          "gbm",         "cubic",
                                                "quadratic_blowup", "singular_1d",
                                                "bounded_smooth"};
    return names;
}

namespace {

std::string joined(const std::vector<std::string>& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
    return s;
}

FieldParams resolve(const std::string& name, FieldParams defaults, const FieldParams& given) {
    for (const auto& [key, value] : given) {
        if (!defaults.contains(key)) {
            std::vector<std::string> keys;
            for (const auto& [k, v] : defaults) keys.push_back(k);
            throw std::invalid_argument("field " + name + " has no parameter '" + key +
                                        "' (accepted: " + (keys.empty() ? "none" : joined(keys)) + ")");
        }
        defaults[key] = value;
    }
    return defaults;
}

int as_dim(double v) {
    if (!(v >= 1.0) || v != std::floor(v) || v > 64.0)
        throw std::invalid_argument("dim must be an integer in [1, 64]");
    return static_cast<int>(v);
}

CoefficientField make_ou(const FieldParams& p) {
    const double lambda = p.at("lambda"), c = p.at("c");
    const int d = as_dim(p.at("dim"));
    CoefficientField f;
    f.dim = d;
    f.noise_dim = d;
    f.drift_fn = [lambda](std::span<const double> x, std::span<double> out) {
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = -lambda * x[i];
    };
    f.diffusion_fn = [c, d](std::span<const double>, std::span<double> out) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) out[static_cast<std::size_t>(i * d + j)] = i == j ? c : 0.0;
    };
    const double g0 = d * c * c + 1.0;
    if (lambda >= 0.0) f.growth_bound = [g0](double) { return g0; };
    return f;
}

CoefficientField make_gbm(const FieldParams& p) {
    const double mu = p.at("mu"), nu = p.at("nu");
    CoefficientField f;
    f.drift_fn = [mu](std::span<const double> x, std::span<double> out) { out[0] = mu * x[0]; };
    f.diffusion_fn = [nu](std::span<const double> x, std::span<double> out) { out[0] = nu * x[0]; };
    const double slope = std::max(0.0, 2.0 * mu + nu * nu);
    f.growth_bound = [slope](double u) { return slope * u + 1.0; };
    return f;
}

CoefficientField make_cubic(const FieldParams& p) {
    const double c = p.at("c");
    CoefficientField f;
    f.drift_fn = [](std::span<const double> x, std::span<double> out) { out[0] = -x[0] * x[0] * x[0]; };
    f.diffusion_fn = [c](std::span<const double>, std::span<double> out) { out[0] = c; };
    f.growth_bound = [g0 = c * c + 1.0](double) { return g0; };
    return f;
}

CoefficientField make_quadratic_blowup(const FieldParams&) {
    CoefficientField f;
    f.drift_fn = [](std::span<const double> x, std::span<double> out) { out[0] = x[0] * x[0]; };
    f.diffusion_fn = [](std::span<const double>, std::span<double> out) { out[0] = 0.0; };
    // No g with a divergent reciprocal integral bounds 2x^3; this one is tight.
    f.growth_bound = [](double u) { return 2.0 * std::pow(u, 1.5) + 1.0; };
    return f;
}

CoefficientField make_singular_1d(const FieldParams&) {
    CoefficientField f;
    f.drift_fn = [](std::span<const double> x, std::span<double> out) {
        const double a = std::abs(x[0]);
        // b is an L_p class; the value at the singular point 0 is set to 0.
        out[0] = (a > 0.0 && a <= 1.0) ? std::copysign(std::pow(a, -0.25), x[0]) : 0.0;
    };
    f.diffusion_fn = [](std::span<const double>, std::span<double> out) { out[0] = 1.0; };
    f.growth_bound = [](double) { return 3.0; };
    f.domain_note = "drift singular at 0, supported on |x| <= 1";
    return f;
}

CoefficientField make_bounded_smooth(const FieldParams& p) {
    const int d = as_dim(p.at("dim"));
    const double eps = p.at("eps"), s = p.at("sigma_scale");
    CoefficientField f;
    f.dim = d;
    f.noise_dim = d;
    f.drift_fn = [](std::span<const double> x, std::span<double> out) {
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = std::tanh(x[i]);
    };
    f.diffusion_fn = [d, eps, s](std::span<const double> x, std::span<double> out) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                const double pert = std::sin(x[static_cast<std::size_t>(i)] + x[static_cast<std::size_t>(j)]) / d;
                out[static_cast<std::size_t>(i * d + j)] = s * ((i == j ? 1.0 : 0.0) + eps * pert);
            }
    };
    const double tr = s * s * (std::sqrt(double(d)) + std::abs(eps)) * (std::sqrt(double(d)) + std::abs(eps));
    f.growth_bound = [d, tr](double u) { return 2.0 * std::sqrt(d * std::max(0.0, u)) + tr + 1.0; };
    return f;
}

struct Entry {
    FieldParams defaults;
    CoefficientField (*make)(const FieldParams&);
};

const std::map<std::string, Entry>& table() {
    static const std::map<std::string, Entry> entries{
        {"ou", {{{"lambda", 1.0}, {"c", 1.0}, {"dim", 1.0}}, make_ou}},
        {"gbm", {{{"mu", 0.05}, {"nu", 0.8}}, make_gbm}},
        {"cubic", {{{"c", 1.0}}, make_cubic}},
        {"quadratic_blowup", {{}, make_quadratic_blowup}},
        {"singular_1d", {{}, make_singular_1d}},
        {"bounded_smooth", {{{"dim", 2.0}, {"eps", 0.1}, {"sigma_scale", 1.0}}, make_bounded_smooth}},
    };
    return entries;
}

}  // namespace

CoefficientField registry(const std::string& name, const FieldParams& params) {
    const auto it = table().find(name);
    if (it == table().end())
        throw UnknownFieldError("unknown field '" + name + "' (known: " + joined(registry_names()) + ")");
    const FieldParams resolved = resolve(name, it->second.defaults, params);
    CoefficientField f = it->second.make(resolved);
    f.name = name;
    f.params = resolved;
    return f;
}

}  // namespace rds
