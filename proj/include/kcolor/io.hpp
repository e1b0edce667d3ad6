#pragma once

// JSON records for the computations. Big integers and rationals are written as
// decimal strings so no consumer truncates them to 53 bits.

#include "kcolor/coloring.hpp"
#include "kcolor/extrapolation.hpp"
#include "kcolor/series.hpp"
#include "kcolor/trace_algebra.hpp"
#include "kcolor/transfer.hpp"

#include <json.hpp>

namespace kcolor {

using nlohmann::json;

inline json matrix_json(const TransferMatrix& m) {
    json rows = json::array();
    const auto& e = m.entries();
    for (std::size_t i = 0; i < e.dim(); ++i) rows.push_back(json(std::vector<std::int64_t>(e.row(i).begin(), e.row(i).end())));
    json out = {{"k", m.k()}, {"p", m.p()}, {"rows", std::move(rows)}};
    out["n"] = m.kind() == TransferKind::a_component ? json(m.n()) : json(nullptr);
    return out;
}

inline json eigen_json(int k, int p, const EigenResult& r) {
    return {{"k", k},
            {"p", p},
            {"lambda_max", r.lambda_max},
            {"per_site", r.per_site_estimate},
            {"iterations", r.iterations},
            {"residual", r.residual}};
}

inline json strip_json(int m, int p, const BigInt& z) {
    return {{"m", m}, {"p", p}, {"Z", to_decimal(z)}, {"per_site", per_site(z, m, p)}};
}

inline json series_json(const SeriesEstimate& s) {
    json corr = json::array();
    for (const auto& c : s.corrections) corr.push_back({{"n", c.cycle_length}, {"value", to_fraction(c.value)}});
    return {{"k", s.k},
            {"M_k", s.vertex_configs},
            {"pauling", to_fraction(s.pauling)},
            {"corrections", std::move(corr)},
            {"estimate", s.estimate},
            {"note", "three-edge (non-Eulerian) contributions are not included"}};
}

inline json fit_json(const FitResult& f) {
    json data = json::array();
    for (const auto& d : f.data) data.push_back({{"p", d.p}, {"value", d.value}});
    return {{"degree", f.degree},
            {"coefficients", f.coefficients},
            {"a0", f.coefficients.at(0)},
            {"residual_rms", f.residual_rms},
            {"condition", f.condition},
            {"data", std::move(data)}};
}

}  // namespace kcolor
