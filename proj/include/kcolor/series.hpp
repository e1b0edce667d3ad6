#pragma once

// Cluster expansion of W(k) around the independent-vertex (Pauling) estimate.
//
// With A(xi, xi') the 0/1 compatibility of neighboring vertex configurations
// and C = 1/(k-1), the shifted matrix a = (A - C) / C has entries k-2
// (compatible) and -1 (incompatible) and zero row sums, so open-ended graphs
// cancel. An elementary cycle of n vertices contributes Tr[a^n] / M_k^n with
// Tr[a^n] = (k-2)(k-1)^n.

#include "kcolor/bigint.hpp"
#include "kcolor/coloring.hpp"
#include "kcolor/dense_matrix.hpp"

#include <array>
#include <initializer_list>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kcolor {

/// Edge positions in VertexConfig::states.
enum EdgePosition : int { edge_up = 0, edge_right = 1, edge_down = 2, edge_left = 3 };

struct CompatibilityMatrix {
    int k = 3;
    std::vector<VertexConfig> configs;
    /// A(i, j) = 1 iff configs[i] (left) and configs[j] (right) agree on their shared edge.
    DenseMatrix<std::int64_t> compat;
    /// a = (k-1) A - 1.
    DenseMatrix<std::int64_t> shifted;

    std::size_t dim() const { return configs.size(); }
};

inline bool compatible(const VertexConfig& left, const VertexConfig& right, int k) {
    return (left.states[edge_right] + right.states[edge_left]) % k == 0;
}

/// Dense matrices over all M_k configurations; xi_j sits to the right of xi_i.
inline CompatibilityMatrix build_compatibility(int k, std::size_t max_dim = 4096) {
    require_valid_k(k);
    CompatibilityMatrix out;
    out.k = k;
    if (static_cast<std::size_t>(vertex_count_closed(k)) > max_dim)
        throw BudgetExceeded("compatibility matrix for k=" + std::to_string(k) + " exceeds dimension budget");
    out.configs = enumerate_vertex_configs(k);
    const std::size_t n = out.configs.size();
    out.compat = DenseMatrix<std::int64_t>(n, 0);
    out.shifted = DenseMatrix<std::int64_t>(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const bool c = compatible(out.configs[i], out.configs[j], k);
            out.compat(i, j) = c ? 1 : 0;
            out.shifted(i, j) = c ? k - 2 : -1;
        }
    return out;
}

/// (a^n(compatible), a^n(incompatible)) from the two-class recursion
///   a^i(<->) = (k-2) [a^{i-1}(<->) - a^{i-1}(!=)],  a^i(!=) = -[a^{i-1}(<->) - a^{i-1}(!=)].
inline std::pair<BigInt, BigInt> power_classes(int k, int n) {
    if (n < 1) throw std::invalid_argument("power must be at least 1");
    BigInt comp = k - 2, incomp = -1;
    for (int i = 2; i <= n; ++i) {
        const BigInt diff = comp - incomp;
        comp = (k - 2) * diff;
        incomp = -diff;
    }
    return {comp, incomp};
}

/// Tr[a^n] = (k-2)(k-1)^n.
inline BigInt shifted_trace(int k, int n) {
    require_valid_k(k);
    if (n < 1) throw std::invalid_argument("power must be at least 1");
    return (k - 2) * ipow(k - 1, static_cast<unsigned>(n));
}

/// Tr[a^n] from the two-class recursion: (k-1)^2 compatible diagonal entries, the rest incompatible.
inline BigInt shifted_trace_recursive(int k, int n) {
    const auto [comp, incomp] = power_classes(k, n);
    const BigInt diag_compat = ipow(k - 1, 2);
    return diag_compat * comp + (BigInt(vertex_count_closed(k)) - diag_compat) * incomp;
}

/// Tr[a^n] by explicit matrix power.
inline BigInt shifted_trace_explicit(const CompatibilityMatrix& cm, int n) {
    const auto a = cm.shifted.cast<BigInt>();
    return power(a, static_cast<unsigned>(n)).trace();
}

/// Tr[a^n] / M_k^n for an elementary cycle of n vertices. For k <= verify_max_k
/// and n <= verify_max_n the trace is also computed by explicit matrix power
/// and by the two-class recursion; a mismatch throws std::logic_error.
inline BigRational eulerian_cycle_contribution(int k, int n, int verify_max_k = 6, int verify_max_n = 6) {
    require_valid_k(k);
    if (n < 3) throw std::invalid_argument("a cycle needs at least 3 vertices, got n=" + std::to_string(n));
    const BigInt tr = shifted_trace(k, n);
    if (shifted_trace_recursive(k, n) != tr) throw std::logic_error("two-class recursion disagrees with closed form");
    if (k <= verify_max_k && n <= verify_max_n && shifted_trace_explicit(build_compatibility(k), n) != tr)
        throw std::logic_error("explicit matrix power disagrees with closed-form trace");
    return BigRational(tr, ipow(vertex_count_closed(k), static_cast<unsigned>(n)));
}

/// Neighbor states l1, l2, l3 on three of a vertex's edges (w.r.t. the neighbors).
using Triple = std::array<EdgeState, 3>;

/// Configurations xi_i sorted by which of the three neighbors they are compatible
/// with; the fourth edge is free.
struct TripleCaseCounts {
    std::int64_t all = 0;
    /// Compatible with both neighbors except index j.
    std::array<std::int64_t, 3> all_but{};
    /// Compatible with neighbor j only.
    std::array<std::int64_t, 3> only{};
    std::int64_t none = 0;
};

namespace detail {

inline void require_triple(int k, const Triple& l) {
    require_valid_k(k);
    for (EdgeState s : l)
        if (!is_edge_state(s, k))
            throw std::invalid_argument("neighbor state " + std::to_string(s) + " outside 1.." + std::to_string(k - 1));
}

/// |{a in F_k \ {0, excluded} : a == t1 or a == t2 (mod k)}|.
inline std::int64_t hits(int k, int excluded, std::initializer_list<long long> targets) {
    std::int64_t n = 0;
    for (int a = 1; a < k; ++a) {
        if (a == mod_k(excluded, k)) continue;
        for (long long t : targets)
            if (a == mod_k(t, k)) {
                ++n;
                break;
            }
    }
    return n;
}

}  // namespace detail

/// Case counts by the counting formulas, without enumerating configurations.
inline TripleCaseCounts triple_case_counts(int k, const Triple& l) {
    detail::require_triple(k, l);
    const std::int64_t q = k - 2;
    TripleCaseCounts out;
    out.all = mod_k(l[0] + l[1] + l[2], k) != 0 ? 1 : 0;
    for (int x = 0; x < 3; ++x) {
        const int i = (x + 1) % 3, j = (x + 2) % 3;
        out.all_but[static_cast<std::size_t>(x)] = q - detail::hits(k, -l[static_cast<std::size_t>(x)], {l[static_cast<std::size_t>(i)] + l[static_cast<std::size_t>(j)]});
    }
    for (int i = 0; i < 3; ++i) {
        const int j = (i + 1) % 3, x = (i + 2) % 3;
        const long long li = l[static_cast<std::size_t>(i)], lx = l[static_cast<std::size_t>(x)];
        out.only[static_cast<std::size_t>(i)] =
            q * q - (q - detail::hits(k, -l[static_cast<std::size_t>(j)], {li, li + lx}));
    }
    const std::int64_t eq = detail::hits(k, -l[0], {l[1]});
    const std::int64_t eq_or = detail::hits(k, -l[0], {l[2], l[1] + l[2]});
    out.none = q * q * q - (q * q - (2 * q - eq - eq_or));
    return out;
}

/// Case counts by classifying every admissible configuration.
inline TripleCaseCounts triple_case_counts_enumerated(int k, const Triple& l) {
    detail::require_triple(k, l);
    TripleCaseCounts out;
    for (const auto& xi : enumerate_vertex_configs(k)) {
        // Edges 0..2 meet the three neighbors; edge 3 is free.
        std::array<bool, 3> c{};
        for (std::size_t j = 0; j < 3; ++j) c[j] = (xi.states[j] + l[j]) % k == 0;
        const int n = c[0] + c[1] + c[2];
        if (n == 3)
            ++out.all;
        else if (n == 2)
            ++out.all_but[static_cast<std::size_t>(!c[0] ? 0 : !c[1] ? 1 : 2)];
        else if (n == 1)
            ++out.only[static_cast<std::size_t>(c[0] ? 0 : c[1] ? 1 : 2)];
        else
            ++out.none;
    }
    return out;
}

/// sum_{xi_i} a(xi_i, xi_j) a(xi_i, xi_l) a(xi_i, xi_m) from the case counts.
inline std::int64_t triple_sum(int k, const TripleCaseCounts& c) {
    const std::int64_t q = k - 2;
    return c.all * q * q * q - (c.all_but[0] + c.all_but[1] + c.all_but[2]) * q * q +
           (c.only[0] + c.only[1] + c.only[2]) * q - c.none;
}

/// (k-2) - 2(k-2)^2 - (k-2)^3 + 2, valid when l1 + l2 + l3 == 0 mod k.
inline std::int64_t non_eulerian_triple_closed(int k) {
    const std::int64_t q = k - 2;
    return q - 2 * q * q - q * q * q + 2;
}

/// Three-edge vertex sum for neighbor states with l1 + l2 + l3 == 0 mod k,
/// cross-checked by explicit summation over all configurations.
inline std::int64_t non_eulerian_triple(int k, EdgeState l1, EdgeState l2, EdgeState l3) {
    const Triple l{l1, l2, l3};
    detail::require_triple(k, l);
    if ((l1 + l2 + l3) % k != 0)
        throw std::invalid_argument("closed form covers l1 + l2 + l3 == 0 mod k only; got " + std::to_string(l1) + "+" +
                                    std::to_string(l2) + "+" + std::to_string(l3) + " mod " + std::to_string(k));
    const std::int64_t closed = non_eulerian_triple_closed(k);
    if (triple_sum(k, triple_case_counts_enumerated(k, l)) != closed)
        throw std::logic_error("explicit three-edge sum disagrees with closed form");
    return closed;
}

struct SeriesCorrection {
    int cycle_length = 0;
    BigRational value;
};

struct SeriesEstimate {
    int k = 3;
    std::int64_t vertex_configs = 0;
    /// M_k / (k-1)^2.
    BigRational pauling;
    std::vector<SeriesCorrection> corrections;
    /// pauling * (1 + sum of corrections), exact.
    BigRational estimate_exact;
    double estimate = 0.0;
};

/// W(k) ~ M_k/(k-1)^2 * (1 + (k-2)(k-1)^4 / M_k^4): Pauling term plus the
/// square-cycle correction. Three-edge (non-Eulerian) terms are not included.
inline SeriesEstimate w_estimate(int k) {
    require_valid_k(k);
    SeriesEstimate out;
    out.k = k;
    out.vertex_configs = vertex_count_closed(k);
    out.pauling = BigRational(BigInt(out.vertex_configs), ipow(k - 1, 2));
    // Explicit-power verification only where the matrix is small.
    out.corrections.push_back({4, eulerian_cycle_contribution(k, 4, 6, 6)});
    BigRational factor = 1;
    for (const auto& c : out.corrections) factor += c.value;
    out.estimate_exact = out.pauling * factor;
    out.estimate = to_double(out.estimate_exact);
    return out;
}

}  // namespace kcolor
