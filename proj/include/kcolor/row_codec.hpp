#pragma once

// Row configurations of vertical-edge states and their canonical ordering.
//
// A row of p vertical edges carries states in {1, ..., k-1}. The ordered set
// L_{p+1} lists every configuration starting with state 1 (followed by L_p in
// order), then every configuration starting with state 2, and so on. The
// position of a configuration in that list is therefore the base-(k-1) number
// whose most significant digit is (first state - 1). Indices are 0-based.

#include "kcolor/bigint.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kcolor {

using EdgeState = int;

inline void require_valid_k(int k) {
    if (k < 3) throw std::invalid_argument("k must be at least 3, got " + std::to_string(k));
}

inline bool is_edge_state(EdgeState s, int k) { return s >= 1 && s <= k - 1; }

/// The same edge seen from its other endpoint.
inline EdgeState conjugate(EdgeState s, int k) { return (k - s) % k; }

/// Floor-mod into [0, k).
inline int mod_k(long long v, int k) {
    const long long r = v % k;
    return static_cast<int>(r < 0 ? r + k : r);
}

/// Number of row configurations, (k-1)^p.
inline std::uint64_t row_config_count(int k, int p) {
    require_valid_k(k);
    if (p < 0) throw std::invalid_argument("p must be non-negative");
    return upow(static_cast<std::uint64_t>(k - 1), static_cast<unsigned>(p));
}

struct RowConfig {
    int k = 3;
    std::vector<EdgeState> states;
    std::uint64_t index = 0;
};

inline std::uint64_t encode(std::span<const EdgeState> states, int k) {
    require_valid_k(k);
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (!is_edge_state(states[i], k))
            throw std::invalid_argument("edge state " + std::to_string(states[i]) + " at position " +
                                        std::to_string(i) + " is outside {1.." + std::to_string(k - 1) +
                                        "}");
        index = index * static_cast<std::uint64_t>(k - 1) + static_cast<std::uint64_t>(states[i] - 1);
    }
    return index;
}

/// As above, additionally checking the row length against p.
inline std::uint64_t encode(std::span<const EdgeState> states, int p, int k) {
    if (p < 0 || states.size() != static_cast<std::size_t>(p))
        throw std::invalid_argument("row has " + std::to_string(states.size()) + " states, expected p=" +
                                    std::to_string(p));
    return encode(states, k);
}

inline std::vector<EdgeState> decode(std::uint64_t index, int p, int k) {
    const std::uint64_t n = row_config_count(k, p);
    if (index >= n)
        throw std::out_of_range("row index " + std::to_string(index) + " out of range for p=" +
                                std::to_string(p) + ", k=" + std::to_string(k));
    std::vector<EdgeState> states(static_cast<std::size_t>(p));
    for (int i = p - 1; i >= 0; --i) {
        states[static_cast<std::size_t>(i)] = static_cast<EdgeState>(index % static_cast<std::uint64_t>(k - 1)) + 1;
        index /= static_cast<std::uint64_t>(k - 1);
    }
    return states;
}

inline RowConfig make_row_config(std::span<const EdgeState> states, int k) {
    return RowConfig{k, {states.begin(), states.end()}, encode(states, k)};
}

inline RowConfig row_config_at(std::uint64_t index, int p, int k) {
    return RowConfig{k, decode(index, p, k), index};
}

}  // namespace kcolor
