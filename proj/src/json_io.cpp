#include "rds/json_io.hpp"

#include <cmath>

namespace rds {

using nlohmann::json;

json number_json(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

namespace {

json number_map(const std::map<std::string, double>& m) {
    json out = json::object();
    for (const auto& [k, v] : m) out[k] = number_json(v);
    return out;
}

json index_or_null(const std::optional<std::int64_t>& v) {
    return v ? json(*v) : json(nullptr);
}

}  // namespace

json to_json(const StatReport& r) {
    json pv = json::array(), st = json::array();
    for (double p : r.pvalues) pv.push_back(number_json(p));
    for (double s : r.statistics) st.push_back(number_json(s));
    return {{"name", r.name},         {"labels", r.labels},         {"statistics", st},
            {"pvalues", pv},          {"min_pvalue", number_json(r.min_pvalue())},
            {"threshold", r.threshold}, {"pass", r.pass},           {"seed", r.seed}};
}

json to_json(const ConditionReport& r) {
    return {{"condition", r.condition},
            {"field", r.field},
            {"params", number_map(r.params)},
            {"estimate", number_json(r.estimate)},
            {"verdict", std::string(to_string(r.verdict))},
            {"n", r.n},
            {"seed", r.seed},
            {"notes", r.notes},
            {"details", number_map(r.details)}};
}

json to_json(const VerificationReport& r) {
    return {{"law", r.law},
            {"anchor", r.anchor},
            {"probes", r.probes},
            {"max_residual", number_json(r.max_residual)},
            {"exact_pass", r.exact_pass},
            {"tolerance", r.tolerance},
            {"seed", r.seed},
            {"failures", r.failures},
            {"failure_samples", r.failure_samples},
            {"parts", number_map(r.parts)}};
}

json to_json(const ConvergenceTable& t) {
    json rows = json::array();
    for (const auto& row : t.rows)
        rows.push_back({{"dt", row.dt}, {"rms_error", number_json(row.rms_error)}});
    return {{"field", t.field},   {"rows", rows},         {"order", number_json(t.order)},
            {"n_paths", t.n_paths}, {"seed", t.seed},     {"horizon", t.horizon}};
}

json to_json(const ExplosionEstimate& e, const TimeGrid& grid) {
    json exits = json::array();
    for (const auto& x : e.level_exits) exits.push_back(index_or_null(x));
    json out = {{"level_exits", exits},
                {"theta_index", index_or_null(e.theta)},
                {"censored", e.censored()},
                {"horizon_index", e.horizon}};
    out["theta"] = e.theta ? json(grid.time(*e.theta)) : json("> horizon");
    return out;
}

}  // namespace rds
