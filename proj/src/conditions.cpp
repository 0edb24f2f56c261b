#include "rds/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "rds/grid.hpp"
#include "rds/noise.hpp"
#include "rds/quadrature.hpp"
#include "rds/rng.hpp"
#include "rds/semiflow.hpp"

namespace rds {

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

Vec sample_in_ball(Rng& rng, int d, double R) {
    Vec x(static_cast<std::size_t>(d));
    double r2 = 0.0;
    do {
        r2 = 0.0;
        for (auto& v : x) {
            v = rng.normal();
            r2 += v * v;
        }
    } while (r2 == 0.0);
    const double radius = R * std::pow(rng.uniform(), 1.0 / d);
    const double scale = radius / std::sqrt(r2);
    for (auto& v : x) v *= scale;
    return x;
}

void clamp_to_ball(Vec& x, double R) {
    const double r = norm(x);
    if (r > R) {
        const double s = R / r;
        for (auto& v : x) v *= s;
    }
}

std::string describe(std::span<const double> x) {
    std::ostringstream os;
    os.precision(17);
    os << '(';
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ')';
    return os.str();
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double a) { return std::isfinite(a); });
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw std::invalid_argument(std::string(what) + " must be finite and > 0");
}

ConditionReport base_report(const char* condition, const CoefficientField& field,
                            std::uint64_t seed) {
    field.validate();
    ConditionReport r;
    r.condition = condition;
    r.field = field.name;
    r.seed = seed;
    return r;
}

}  // namespace

ConditionReport check_local_monotonicity(const CoefficientField& field, double mu, double R,
                                         std::size_t n_pairs, std::uint64_t seed) {
    require_positive(R, "R");
    if (n_pairs < 1) throw std::invalid_argument("n_pairs must be >= 1");
    if (!std::isfinite(mu)) throw std::invalid_argument("mu must be finite");
    auto rep = base_report("local_monotonicity", field, seed);
    rep.params = {{"mu", mu}, {"R", R}};
    if (mu <= field.dim + 2.0) {
        std::ostringstream os;
        os << "mu = " << mu << " <= d + 2 = " << field.dim + 2;
        rep.notes.push_back(os.str());
    }

    Rng rng(derive_seed(seed, "monotonicity"));
    double k_hat = -std::numeric_limits<double>::infinity();
    Vec argmax_x, argmax_y;
    for (std::size_t i = 0; i < n_pairs; ++i) {
        Vec x = sample_in_ball(rng, field.dim, R);
        Vec y;
        if (i % 2 == 0) {
            y = sample_in_ball(rng, field.dim, R);
        } else {
            y = x;
            const Vec u = sample_in_ball(rng, field.dim, 1e-3 * R);
            for (std::size_t c = 0; c < y.size(); ++c) y[c] += u[c];
            clamp_to_ball(y, R);
        }
        Vec diff(x.size());
        for (std::size_t c = 0; c < x.size(); ++c) diff[c] = x[c] - y[c];
        const double dist2 = dot(diff, diff);
        if (dist2 == 0.0) continue;

        const Vec bx = field.drift(x), by = field.drift(y);
        const Matrix sx = field.diffusion(x), sy = field.diffusion(y);
        if (!all_finite(bx) || !all_finite(sx.data) || !all_finite(by) || !all_finite(sy.data)) {
            rep.verdict = Verdict::Inconclusive;
            rep.estimate = std::numeric_limits<double>::quiet_NaN();
            rep.n = i + 1;
            const bool x_ok = all_finite(bx) && all_finite(sx.data);
            rep.notes.push_back("coefficients not finite at " + describe(x_ok ? y : x));
            return rep;
        }
        Vec db(bx.size());
        for (std::size_t c = 0; c < db.size(); ++c) db[c] = bx[c] - by[c];
        const Matrix ds = subtract(sx, sy);
        const double opn = operator_norm(ds);
        const double q = (2.0 * dot(db, diff) + frobenius_sq(ds) + mu * opn * opn) / dist2;
        if (q > k_hat) {
            k_hat = q;
            argmax_x = x;
            argmax_y = y;
        }
    }
    rep.n = n_pairs;
    rep.estimate = k_hat;
    rep.verdict = std::isfinite(k_hat) ? Verdict::Pass : Verdict::Inconclusive;
    if (!argmax_x.empty())
        rep.notes.push_back("max attained at x = " + describe(argmax_x) + ", y = " + describe(argmax_y));
    return rep;
}

ReciprocalIntegralProfile reciprocal_integral_profile(const std::function<double(double)>& g) {
    if (!g) throw std::invalid_argument("growth function g is empty");
    ReciprocalIntegralProfile prof;
    auto inv = [&g](double u) {
        const double v = g(u);
        if (!std::isfinite(v) || !(v > 0.0)) {
            std::ostringstream os;
            os << "growth function g must be finite and > 0; g(" << u << ") = " << v;
            throw std::invalid_argument(os.str());
        }
        return 1.0 / v;
    };
    double prev_upper = 0.0, acc = 0.0;
    for (int k = 1; k <= 6; ++k) {
        const double M = std::pow(10.0, k);
        double piece = 0.0;
        if (k == 1) {
            piece = integrate_log_panels(inv, M, 16);
        } else {
            piece = integrate(inv, prev_upper, M, 16, 32);
        }
        acc += piece;
        prof.upper.push_back(M);
        prof.partial.push_back(acc);
        prev_upper = M;
    }
    // Least squares of ln(increment) on ln(M) over the decades 10^2..10^6.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t k = 1; k < prof.partial.size(); ++k) {
        const double inc = prof.partial[k] - prof.partial[k - 1];
        if (!(inc > 0.0)) continue;
        const double lx = std::log(prof.upper[k]);
        const double ly = std::log(inc);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++n;
    }
    if (n < 2) {
        prof.decay = std::numeric_limits<double>::infinity();
    } else {
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        prof.decay = -slope;
    }
    if (prof.decay <= kDivergentDecayMax)
        prof.divergence = Verdict::Pass;
    else if (prof.decay >= kConvergentDecayMin)
        prof.divergence = Verdict::Fail;
    else
        prof.divergence = Verdict::Inconclusive;
    return prof;
}

ConditionReport check_growth(const CoefficientField& field, const std::function<double(double)>& g,
                             double R_max, std::size_t n_samples, std::uint64_t seed) {
    require_positive(R_max, "R_max");
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    if (!g) throw std::invalid_argument("growth function g is empty");
    auto rep = base_report("growth", field, seed);
    rep.params = {{"R_max", R_max}};

    for (int k = 0; k <= 64; ++k) {
        const double u = R_max * R_max * k / 64.0;
        if (!std::isfinite(g(u)))
            throw std::invalid_argument("growth function g is not finite on [0, R_max^2]");
    }

    Rng rng(derive_seed(seed, "growth"));
    double worst = -std::numeric_limits<double>::infinity();
    Vec worst_x;
    bool violated = false;
    for (std::size_t i = 0; i < n_samples; ++i) {
        Vec x = sample_in_ball(rng, field.dim, R_max);
        if (i % 8 == 0) {
            const double r = norm(x);
            if (r > 0.0)
                for (auto& v : x) v *= R_max / r;
        }
        const Vec b = field.drift(x);
        const Matrix s = field.diffusion(x);
        const double lhs = 2.0 * dot(b, x) + frobenius_sq(s);
        const double rhs = g(dot(x, x));
        if (!std::isfinite(lhs)) {
            rep.verdict = Verdict::Inconclusive;
            rep.n = i + 1;
            rep.notes.push_back("coefficients not finite at " + describe(x));
            return rep;
        }
        const double margin = lhs - rhs;
        if (margin > worst) {
            worst = margin;
            worst_x = x;
        }
        const double tol = 1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
        if (margin > tol) violated = true;
    }
    rep.n = n_samples;
    rep.estimate = worst;

    const auto prof = reciprocal_integral_profile(g);
    rep.details["decay"] = prof.decay;
    rep.details["growth_exponent"] = 1.0 + prof.decay;
    rep.details["integral_to_1e6"] = prof.partial.back();

    if (violated) {
        rep.verdict = Verdict::Fail;
        rep.notes.push_back("pointwise bound violated at " + describe(worst_x));
    } else if (prof.divergence == Verdict::Fail) {
        rep.verdict = Verdict::Fail;
        rep.notes.push_back("int_0^M 1/g appears to converge");
    } else if (prof.divergence == Verdict::Inconclusive) {
        rep.verdict = Verdict::Inconclusive;
        rep.notes.push_back("divergence of int_0^M 1/g is ambiguous at M <= 1e6");
    } else {
        rep.verdict = Verdict::Pass;
    }
    return rep;
}

ConditionReport check_ellipticity(const CoefficientField& field, double R, std::size_t n_samples,
                                  std::uint64_t seed) {
    require_positive(R, "R");
    if (n_samples < 1) throw std::invalid_argument("n_samples must be >= 1");
    auto rep = base_report("ellipticity", field, seed);
    rep.params = {{"R", R}};

    auto eval_a = [&](const Vec& x) {
        const Matrix a = gram(field.diffusion(x));
        for (std::size_t i = 0; i < a.rows; ++i)
            for (std::size_t j = i + 1; j < a.cols; ++j) {
                const double scale = 1.0 + std::abs(a(i, j)) + std::abs(a(j, i));
                if (std::abs(a(i, j) - a(j, i)) > 1e-12 * scale)
                    throw std::logic_error("sigma sigma^T is not symmetric at " + describe(x));
            }
        return a;
    };

    Rng rng(derive_seed(seed, "ellipticity"));
    double lmin = std::numeric_limits<double>::infinity();
    double lmax = 0.0;
    Vec lmin_x;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const Vec x = i == 0 ? Vec(static_cast<std::size_t>(field.dim), 0.0)
                             : sample_in_ball(rng, field.dim, R);
        const Matrix a = eval_a(x);
        if (!all_finite(a.data)) {
            rep.verdict = Verdict::Inconclusive;
            rep.n = i + 1;
            rep.notes.push_back("diffusion not finite at " + describe(x));
            return rep;
        }
        const Vec ev = symmetric_eigenvalues(a);
        if (ev.front() < lmin) {
            lmin = ev.front();
            lmin_x = x;
        }
        lmax = std::max(lmax, ev.back());
    }

    double modulus = 0.0;
    const double delta = R / 10.0;
    const std::size_t n_pairs = std::max<std::size_t>(1, n_samples / 2);
    for (std::size_t i = 0; i < n_pairs; ++i) {
        const Vec x = sample_in_ball(rng, field.dim, R);
        Vec y = x;
        const Vec u = sample_in_ball(rng, field.dim, delta);
        for (std::size_t c = 0; c < y.size(); ++c) y[c] += u[c];
        clamp_to_ball(y, R);
        const Matrix diff = subtract(eval_a(x), eval_a(y));
        modulus = std::max(modulus, operator_norm(diff));
    }

    rep.n = n_samples;
    rep.details["lambda_min"] = lmin;
    rep.details["lambda_max"] = lmax;
    rep.details["modulus"] = modulus;
    rep.details["modulus_delta"] = delta;
    const double floor = 1e-12 * std::max(1.0, lmax);
    if (lmin <= floor) {
        rep.estimate = std::numeric_limits<double>::infinity();
        rep.verdict = Verdict::Fail;
        rep.notes.push_back("sigma sigma^T degenerate at " + describe(lmin_x));
    } else {
        rep.estimate = std::max(lmax, 1.0 / lmin);
        rep.verdict = Verdict::Pass;
    }
    return rep;
}

ConditionReport check_drift_integrability(const CoefficientField& field, double p,
                                          const std::vector<Vec>& centers, double radius,
                                          int quad_points) {
    require_positive(radius, "radius");
    if (!(p >= 1.0) || !std::isfinite(p)) throw std::invalid_argument("p must be finite and >= 1");
    if (field.dim < 1 || field.dim > 3)
        throw std::invalid_argument("drift integrability quadrature supports d in {1, 2, 3}");
    if (centers.empty()) throw std::invalid_argument("at least one center is required");
    auto rep = base_report("drift_integrability", field, 0);
    rep.params = {{"p", p}, {"radius", radius}};

    const ScalarField abs_b = [&field](std::span<const double> x) { return norm(field.drift(x)); };
    double sup = 0.0;
    for (const auto& z : centers) {
        if (z.size() != static_cast<std::size_t>(field.dim))
            throw std::invalid_argument("center dimension does not match the field");
        try {
            sup = std::max(sup, lp_norm_ball(abs_b, p, z, radius, quad_points));
        } catch (const NonIntegrableError&) {
            rep.estimate = std::numeric_limits<double>::infinity();
            rep.verdict = Verdict::Fail;
            rep.n = centers.size();
            rep.notes.push_back("|b|^p not integrable on the ball around " + describe(z));
            return rep;
        }
    }
    rep.n = centers.size();
    rep.estimate = sup;
    rep.details["d_over_p"] = field.dim / p;
    if (field.dim / p >= 1.0) {
        rep.verdict = Verdict::Fail;
        rep.notes.push_back("d/p >= 1");
    } else {
        rep.verdict = Verdict::Pass;
    }
    return rep;
}

ConditionReport check_exp_moment(const CoefficientField& field,
                                 const std::function<double(double)>& f, double gamma, double t0,
                                 double R, std::size_t n_paths, double dt, std::uint64_t seed) {
    require_positive(gamma, "gamma");
    require_positive(t0, "t0");
    require_positive(dt, "dt");
    if (!(R >= 0.0) || !std::isfinite(R)) throw std::invalid_argument("R must be finite and >= 0");
    if (n_paths < 1) throw std::invalid_argument("n_paths must be >= 1");
    if (!f) throw std::invalid_argument("moment function f is empty");
    auto rep = base_report("exp_moment", field, seed);
    rep.params = {{"gamma", gamma}, {"t0", t0}, {"R", R}, {"dt", dt}};
    rep.notes.push_back("heavy tails cannot be ruled out by sampling; a stable estimate is not a proof of finiteness");

    const TimeGrid grid = make_grid(0.0, t0, dt);
    const std::int64_t steps = grid.last;
    const std::int64_t stride = std::max<std::int64_t>(1, steps / 50);
    std::vector<std::int64_t> checkpoints;
    for (std::int64_t k = 0; k < steps; k += stride) checkpoints.push_back(k);
    checkpoints.push_back(steps);

    std::vector<Vec> starts;
    const std::size_t d = static_cast<std::size_t>(field.dim);
    starts.emplace_back(d, 0.0);
    if (R > 0.0) {
        for (std::size_t i = 0; i < d; ++i)
            for (double sgn : {1.0, -1.0}) {
                Vec x(d, 0.0);
                x[i] = sgn * R;
                starts.push_back(x);
                if (d == 1) {
                    x[i] = sgn * R / 2.0;
                    starts.push_back(x);
                }
            }
        Rng rng(derive_seed(seed, "moment-starts"));
        if (d > 1)
            for (int k = 0; k < 4; ++k) starts.push_back(sample_in_ball(rng, field.dim, R));
    }

    const ExplosionLevels levels = ExplosionLevels::decades();
    const std::size_t total = 4 * n_paths;
    const std::size_t n_cells = starts.size() * checkpoints.size();
    std::vector<double> sums(n_cells, 0.0);
    std::vector<double> rungs;

    for (std::size_t p = 0; p < total; ++p) {
        const NoisePath path = sample_wiener(grid, field.noise_dim, derive_seed(seed, p));
        for (std::size_t si = 0; si < starts.size(); ++si) {
            const Trajectory tr = flow(field, path, 0, starts[si], levels, false);
            for (std::size_t ci = 0; ci < checkpoints.size(); ++ci) {
                const std::int64_t k = checkpoints[ci];
                const FlowState& st = tr.at(k);
                if (st.is_coffin()) {
                    rep.verdict = Verdict::Fail;
                    rep.estimate = std::numeric_limits<double>::infinity();
                    rep.n = p + 1;
                    std::ostringstream os;
                    os << "explosion before s = " << grid.time(k) << " from x = " << describe(starts[si]);
                    rep.notes.push_back(os.str());
                    return rep;
                }
                const double v = std::exp(gamma * f(norm(st.point())));
                double& cell = sums[si * checkpoints.size() + ci];
                cell += v;
                if (!std::isfinite(v) || !std::isfinite(cell)) {
                    rep.verdict = Verdict::Fail;
                    rep.estimate = std::numeric_limits<double>::infinity();
                    rep.n = p + 1;
                    std::ostringstream os;
                    os << "fail-by-overflow at x = " << describe(starts[si]) << ", s = " << grid.time(k);
                    rep.notes.push_back(os.str());
                    return rep;
                }
            }
        }
        const std::size_t done = p + 1;
        if (done == n_paths || done == 2 * n_paths || done == 4 * n_paths) {
            const double best = *std::max_element(sums.begin(), sums.end());
            rungs.push_back(best / static_cast<double>(done));
        }
    }

    rep.n = total;
    rep.estimate = rungs.back();
    bool stable = true;
    for (std::size_t i = 0; i < rungs.size(); ++i) {
        rep.details["estimate_n" + std::to_string(n_paths << i)] = rungs[i];
        if (i > 0 && std::abs(rungs[i] / rungs[i - 1] - 1.0) > kMomentStability) stable = false;
    }
    rep.details["stable"] = stable ? 1.0 : 0.0;
    if (stable) {
        rep.verdict = Verdict::Inconclusive;
    } else {
        rep.verdict = Verdict::Fail;
        rep.notes.push_back("fail-by-growth: estimate not stable across path-count doublings");
    }
    return rep;
}

}  // namespace rds
