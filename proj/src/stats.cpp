#include "rds/stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rds {

double kolmogorov_q(double lambda) {
    if (lambda < 0.2) return 1.0;
    const double a = -2.0 * lambda * lambda;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = sign * std::exp(a * j * j);
        sum += term;
        if (std::abs(term) <= 1e-12 * std::abs(sum)) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("KS test needs non-empty samples");
    std::vector<double> x(a.begin(), a.end());
    std::vector<double> y(b.begin(), b.end());
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double n1 = static_cast<double>(x.size());
    const double n2 = static_cast<double>(y.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < x.size() && j < y.size()) {
        const double v = std::min(x[i], y[j]);
        while (i < x.size() && x[i] == v) ++i;
        while (j < y.size() && y[j] == v) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / n1 - static_cast<double>(j) / n2));
    }
    const double ne = std::sqrt(n1 * n2 / (n1 + n2));
    return {d, kolmogorov_q((ne + 0.12 + 0.11 / ne) * d)};
}

double StatReport::min_pvalue() const {
    return pvalues.empty() ? 1.0 : *std::min_element(pvalues.begin(), pvalues.end());
}

namespace {

void finalize(StatReport& r) { r.pass = r.min_pvalue() >= r.threshold; }

}  // namespace

StatReport test_stationary_increments(std::span<const NoisePath> ensemble,
                                      std::int64_t window_length,
                                      std::span<const std::int64_t> offsets, std::uint64_t seed,
                                      double threshold, std::size_t min_ensemble) {
    if (offsets.size() < 2) throw std::invalid_argument("need at least 2 offsets");
    if (ensemble.size() < min_ensemble) {
        std::ostringstream os;
        os << "ensemble of " << ensemble.size() << " paths is below the minimum of "
           << min_ensemble;
        throw std::invalid_argument(os.str());
    }
    if (window_length < 1) throw std::invalid_argument("window_length must be >= 1");
    const int dim = ensemble.front().dim();

    StatReport r;
    r.name = "stationary_increments";
    r.threshold = threshold;
    r.seed = seed;

    auto sample = [&](std::int64_t offset, int c) {
        std::vector<double> s;
        s.reserve(ensemble.size());
        for (const auto& p : ensemble) s.push_back(p.increment(offset, offset + window_length)[static_cast<std::size_t>(c)]);
        return s;
    };
    for (int c = 0; c < dim; ++c) {
        const auto ref = sample(offsets[0], c);
        for (std::size_t q = 1; q < offsets.size(); ++q) {
            const auto other = sample(offsets[q], c);
            const auto ks = ks_two_sample(ref, other);
            std::ostringstream label;
            label << "offset " << offsets[q] << " vs " << offsets[0] << ", component " << c + 1;
            r.labels.push_back(label.str());
            r.statistics.push_back(ks.statistic);
            r.pvalues.push_back(ks.pvalue);
        }
    }
    finalize(r);
    return r;
}

std::vector<PathFunctional> default_functionals() {
    return {
        {"terminal_value", 1, [](const PathWindow& w) { return w.at(w.steps, 0); }},
        {"running_max", 1,
         [](const PathWindow& w) {
             double m = w.at(0, 0);
             for (std::int64_t j = 1; j <= w.steps; ++j) m = std::max(m, w.at(j, 0));
             return m;
         }},
        {"quadratic_variation", 1,
         [](const PathWindow& w) {
             double qv = 0.0;
             for (std::int64_t j = 0; j < w.steps; ++j)
                 for (int c = 0; c < w.dim; ++c) {
                     const double d = w.at(j + 1, c) - w.at(j, c);
                     qv += d * d;
                 }
             return qv;
         }},
    };
}

namespace {

PathWindow window_of(const NoisePath& p, std::int64_t start, std::int64_t steps, bool reanchor) {
    PathWindow w;
    w.dim = p.dim();
    w.steps = steps;
    w.values.reserve(static_cast<std::size_t>((steps + 1) * w.dim));
    if (reanchor) {
        const NoisePath q = shift(p, start, 0, steps);
        for (std::int64_t j = 0; j <= steps; ++j)
            for (int c = 0; c < w.dim; ++c) w.values.push_back(q.value(j, c));
    } else {
        for (std::int64_t j = 0; j <= steps; ++j)
            for (int c = 0; c < w.dim; ++c) w.values.push_back(p.value(start + j, c));
    }
    return w;
}

}  // namespace

StatReport test_measure_preserving(std::span<const NoisePath> ensemble, std::int64_t k,
                                   std::int64_t window_length,
                                   std::span<const PathFunctional> functionals, std::uint64_t seed,
                                   double threshold, ShiftMode mode) {
    if (ensemble.empty()) throw std::invalid_argument("empty ensemble");
    if (functionals.empty()) throw std::invalid_argument("no functionals given");
    for (const auto& f : functionals)
        if (window_length < f.min_steps) {
            std::ostringstream os;
            os << "window of " << window_length << " steps too short for functional " << f.name
               << " (needs " << f.min_steps << ")";
            throw std::invalid_argument(os.str());
        }

    StatReport r;
    r.name = mode == ShiftMode::Reanchored ? "measure_preserving" : "measure_preserving_translated";
    r.threshold = threshold;
    r.seed = seed;

    std::vector<std::vector<double>> base(functionals.size()), moved(functionals.size());
    for (const auto& p : ensemble) {
        const auto w0 = window_of(p, 0, window_length, true);
        const auto wk = window_of(p, k, window_length, mode == ShiftMode::Reanchored);
        for (std::size_t f = 0; f < functionals.size(); ++f) {
            base[f].push_back(functionals[f].eval(w0));
            moved[f].push_back(functionals[f].eval(wk));
        }
    }
    for (std::size_t f = 0; f < functionals.size(); ++f) {
        const auto ks = ks_two_sample(base[f], moved[f]);
        r.labels.push_back(functionals[f].name + " under shift " + std::to_string(k));
        r.statistics.push_back(ks.statistic);
        r.pvalues.push_back(ks.pvalue);
    }
    finalize(r);
    return r;
}

}  // namespace rds
