#include "rds/perfection.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "rds/rng.hpp"

namespace rds {

FlowState CrudeFlow::evaluate(std::int64_t s, std::int64_t t, const Vec& x,
                              const NoisePath& path) const {
    if (!defects.contains(s)) return integrate(field, path, s, t, FlowState::interior(x), levels);
    switch (mode) {
        case DefectMode::ReturnInput: return FlowState::interior(x);
        case DefectMode::ReturnCoffin: return FlowState::coffin();
        case DefectMode::Scramble: {
            Vec y = x;
            for (auto& v : y) v += static_cast<double>(s) + 0.5;
            return FlowState::interior(std::move(y));
        }
    }
    return FlowState::coffin();
}

CrudeFlow inject_defect(const CoefficientField& field, const ExplosionLevels& levels,
                        std::set<std::int64_t> defects, DefectMode mode) {
    return CrudeFlow{field, levels, std::move(defects), mode};
}

FlowState perfect_estimate(const CrudeFlow& crude, std::int64_t s, std::int64_t t, const Vec& x,
                           const NoisePath& path, std::size_t m, std::int64_t eps,
                           std::uint64_t seed) {
    if (m < 3) throw std::invalid_argument("perfect_estimate needs m >= 3");
    if (eps < static_cast<std::int64_t>(m))
        throw std::invalid_argument("perfect_estimate needs eps >= m distinct offsets");
    if (path.grid().first > -eps)
        throw WindowError("path window does not cover the negative shifts up to eps");
    if (s > t) throw std::invalid_argument("perfect_estimate needs s <= t");

    // Partial Fisher-Yates over 1..eps.
    std::vector<std::int64_t> offsets(static_cast<std::size_t>(eps));
    std::iota(offsets.begin(), offsets.end(), std::int64_t{1});
    Rng rng(derive_seed(seed, "offsets"));
    for (std::size_t i = 0; i < m; ++i) {
        const auto j = static_cast<std::size_t>(
            rng.uniform_int(static_cast<std::int64_t>(i), eps - 1));
        std::swap(offsets[i], offsets[j]);
    }

    std::vector<FlowState> values;
    std::vector<std::size_t> votes;
    values.reserve(m);
    for (std::size_t i = 0; i < m; ++i) {
        const std::int64_t r = offsets[i];
        FlowState v = crude.evaluate(s + r, t + r, x, shift(path, -r));
        const auto it = std::find_if(values.begin(), values.end(),
                                     [&v](const FlowState& w) { return bitwise_equal(v, w); });
        if (it == values.end()) {
            values.push_back(std::move(v));
            votes.push_back(1);
        } else {
            ++votes[static_cast<std::size_t>(it - values.begin())];
        }
    }
    const auto best = std::max_element(votes.begin(), votes.end());
    if (2 * *best <= m) {
        std::ostringstream os;
        os << "no strict majority among " << m << " crude evaluations (largest agreeing group "
           << *best << ") for s=" << s << " t=" << t;
        throw InconsistentCrudeFlow(os.str());
    }
    return values[static_cast<std::size_t>(best - votes.begin())];
}

VerificationReport verify_perfection_conclusions(const CoefficientField& field,
                                                 const NoisePath& path,
                                                 const ExplosionLevels& levels, std::size_t probes,
                                                 std::uint64_t seed, const PerfectionSetup& setup) {
    if (probes < 1) throw std::invalid_argument("probes must be >= 1");
    const auto& g = path.grid();
    if (g.last < 1) throw WindowError("perfection check needs a window reaching past 0");

    VerificationReport rep;
    rep.law = "perfection_conclusions";
    rep.anchor = "perfect_{s,t}(x, omega) = perfect_{0,t-s}(x, theta_s omega) = phi_{s,t}(x, omega)";
    rep.probes = probes;
    rep.seed = seed;
    for (const char* part : {"shift", "recovery", "identity", "interior"}) rep.parts[part] = 0.0;

    Rng rng(derive_seed(seed, "perfection"));
    std::set<std::int64_t> defects;
    while (defects.size() < setup.defect_count) defects.insert(rng.uniform_int(0, g.last - 1));
    const std::vector<std::int64_t> defect_list(defects.begin(), defects.end());
    const CrudeFlow crude = inject_defect(field, levels, defects, setup.mode);

    auto fail = [&rep](const char* part, double res, const std::string& where) {
        rep.parts[part] = std::max(rep.parts[part], res);
        rep.max_residual = std::max(rep.max_residual, res);
        rep.exact_pass = false;
        ++rep.failures;
        if (rep.failure_samples.size() < 5) rep.failure_samples.push_back(std::string(part) + ": " + where);
    };

    for (std::size_t p = 0; p < probes; ++p) {
        std::int64_t s = p % 4 == 0
                             ? defect_list[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(defect_list.size()) - 1))]
                             : rng.uniform_int(0, g.last);
        const std::int64_t t = rng.uniform_int(s, g.last);
        Vec x(static_cast<std::size_t>(field.dim));
        for (auto& v : x) v = rng.uniform(-kProbeBoxHalfWidth, kProbeBoxHalfWidth);
        const std::uint64_t draw = derive_seed(seed, p);
        std::ostringstream loc;
        loc.precision(17);
        loc << "s=" << s << " t=" << t << " x0=" << x[0] << (defects.contains(s) ? " (defect)" : "");

        try {
            const FlowState est = perfect_estimate(crude, s, t, x, path, setup.m, setup.eps, draw);
            const FlowState base = integrate(field, path, s, t, FlowState::interior(x), levels);
            const FlowState via = perfect_estimate(crude, 0, t - s, x, shift(path, s), setup.m,
                                                   setup.eps, derive_seed(draw, "shifted"));
            const FlowState same = perfect_estimate(crude, s, s, x, path, setup.m, setup.eps, draw);
            if (!bitwise_equal(est, via)) fail("shift", residual(est, via), loc.str());
            if (!bitwise_equal(est, base)) fail("recovery", residual(est, base), loc.str());
            if (!bitwise_equal(same, FlowState::interior(x)))
                fail("identity", residual(same, FlowState::interior(x)), loc.str());
            if (est.is_interior() != base.is_interior())
                fail("interior", std::numeric_limits<double>::infinity(), loc.str());
        } catch (const InconsistentCrudeFlow& e) {
            fail("recovery", std::numeric_limits<double>::infinity(), loc.str() + " " + e.what());
        }
    }
    return rep;
}

}  // namespace rds
