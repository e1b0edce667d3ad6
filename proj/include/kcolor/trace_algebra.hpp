#pragma once

// Exact trace identities for the k = 3 component matrix A_p and the closed-form
// counts of m x p cylindrical strips they lead to.
//
//   Tr[A_p^n]          = 2^p
//   Tr[A_p^n A_p^T]    = (n+2)^p
//   Tr[B_p^2]          = 2 (2^p + 3^p)
//   Tr[B_p^3]          = 2^{p+1} + 6 * 4^p
//   Tr[B_p^4]          = 2 * 2^p + 8 * 5^p + 4 x_p + 2 y_p,
//                        (x_p, y_p) = [[4,2],[4,3]]^p (1,1)^T
//
// where x_p = Tr[A^2 (A^T)^2] and y_p = Tr[A A^T A A^T].

#include "kcolor/bigint.hpp"
#include "kcolor/dense_matrix.hpp"
#include "kcolor/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace kcolor {

using BigMatrix = DenseMatrix<BigInt>;

inline BigMatrix to_big(const IntMatrix& m) { return m.cast<BigInt>(); }

/// Natural log of a positive big integer, valid far beyond double range.
inline double log_big(const BigInt& v) {
    if (v <= 0) throw std::domain_error("log of non-positive integer");
    const auto bits = boost::multiprecision::msb(v);
    if (bits < 1000) return std::log(v.convert_to<double>());
    const unsigned shift = static_cast<unsigned>(bits) - 60U;
    const BigInt top = v >> shift;
    return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

/// Dense A_p and its transpose for k = 3, in exact arithmetic.
struct IceMatrices {
    BigMatrix a;
    BigMatrix at;

    explicit IceMatrices(int p) : a(to_big(build_A_recursive(3, 1, p).entries())), at(a.transposed()) {}
};

/// Rotation-minimal representative of a trace word over {A, T}.
inline std::string canonical_word(std::string_view word) {
    std::string best(word);
    std::string rot(word);
    for (std::size_t i = 1; i < word.size(); ++i) {
        std::rotate(rot.begin(), rot.begin() + 1, rot.end());
        best = std::min(best, rot);
    }
    return best;
}

/// Tr of the product named by word, where 'A' is A_p and 'T' is A_p^T.
inline BigInt trace_word(const IceMatrices& m, std::string_view word) {
    if (word.empty()) return BigInt(m.a.dim());
    auto letter = [&](char c) -> const BigMatrix& {
        if (c == 'A') return m.a;
        if (c == 'T') return m.at;
        throw std::invalid_argument(std::string("trace word letter must be A or T, got '") + c + "'");
    };
    for (char c : word) letter(c);
    if (word.size() == 1) return letter(word[0]).trace();
    BigMatrix prod = letter(word[0]);
    for (std::size_t i = 1; i + 1 < word.size(); ++i) prod = prod * letter(word[i]);
    return trace_of_product(prod, letter(word.back()));
}

/// Exact values of trace words for one p; lookups are invariant under rotation.
class TraceLedger {
public:
    explicit TraceLedger(int p) : p_(p), mats_(p) {}

    int k() const noexcept { return 3; }
    int p() const noexcept { return p_; }

    const BigInt& get(std::string_view word) {
        const auto key = canonical_word(word);
        auto it = entries_.find(key);
        if (it == entries_.end()) it = entries_.emplace(key, trace_word(mats_, key)).first;
        return it->second;
    }

    const std::map<std::string, BigInt>& entries() const noexcept { return entries_; }
    const IceMatrices& matrices() const noexcept { return mats_; }

private:
    int p_;
    IceMatrices mats_;
    std::map<std::string, BigInt> entries_;
};

inline void require_trace_args(int p, int n) {
    if (p < 0) throw std::invalid_argument("p must be non-negative");
    if (n < 1) throw std::invalid_argument("n must be at least 1");
}

/// Tr[A_p^n] = 2^p.
inline BigInt trace_power(int p, int n) {
    require_trace_args(p, n);
    return ipow(2, static_cast<unsigned>(p));
}

/// Tr[A_p^n A_p^T] = (n+2)^p.
inline BigInt trace_power_transpose(int p, int n) {
    require_trace_args(p, n);
    return ipow(n + 2, static_cast<unsigned>(p));
}

inline BigInt trace_power_dense(int p, int n) {
    require_trace_args(p, n);
    return TraceLedger(p).get(std::string(static_cast<std::size_t>(n), 'A'));
}

inline BigInt trace_power_transpose_dense(int p, int n) {
    require_trace_args(p, n);
    return TraceLedger(p).get(std::string(static_cast<std::size_t>(n), 'A') + "T");
}

/// Closed form cross-checked against dense arithmetic when p <= max_dense_p.
inline BigInt trace_power_checked(int p, int n, int max_dense_p = 8) {
    BigInt closed = trace_power(p, n);
    if (p <= max_dense_p && trace_power_dense(p, n) != closed)
        throw std::logic_error("Tr[A^n] closed form disagrees with dense value");
    return closed;
}

inline BigInt trace_power_transpose_checked(int p, int n, int max_dense_p = 8) {
    BigInt closed = trace_power_transpose(p, n);
    if (p <= max_dense_p && trace_power_transpose_dense(p, n) != closed)
        throw std::logic_error("Tr[A^n A^T] closed form disagrees with dense value");
    return closed;
}

/// (x_p, y_p) = [[4,2],[4,3]]^p (1,1)^T in exact arithmetic.
inline std::pair<BigInt, BigInt> coupled_traces(int p) {
    if (p < 0) throw std::invalid_argument("p must be non-negative");
    BigMatrix step(2);
    step(0, 0) = 4;
    step(0, 1) = 2;
    step(1, 0) = 4;
    step(1, 1) = 3;
    const BigMatrix m = power(step, static_cast<unsigned>(p));
    return {m(0, 0) + m(0, 1), m(1, 0) + m(1, 1)};
}

inline void require_strip_m(int m) {
    if (m < 2 || m > 4)
        throw std::invalid_argument("closed-form strip counts exist for m in {2,3,4}, got m=" + std::to_string(m));
}

/// Number of k = 3 edge-state assignments of the m x p cylinder, m in {2,3,4}.
inline BigInt strip_count(int m, int p) {
    require_strip_m(m);
    if (p < 1) throw std::invalid_argument("p must be at least 1");
    const auto up = static_cast<unsigned>(p);
    switch (m) {
        case 2:
            return 2 * (ipow(2, up) + ipow(3, up));
        case 3:
            return ipow(2, up + 1) + 6 * ipow(4, up);
        default: {
            const auto [x, y] = coupled_traces(p);
            return 2 * trace_power(p, 4) + 8 * trace_power_transpose(p, 3) + 4 * x + 2 * y;
        }
    }
}

/// Tr[B_p^m] by exact dense matrix arithmetic, any m >= 1 and any k.
inline BigInt strip_count_dense(int m, int p, int k = 3, const Budget& budget = {}) {
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    const BigMatrix b = to_big(build_B_recursive(k, p, budget).entries());
    if (m == 1) return b.trace();
    const BigMatrix head = power(b, static_cast<unsigned>(m - 1));
    return trace_of_product(head, b);
}

/// lim_{p -> inf} Z^{1/(m p)} for the m x p cylinder.
inline double strip_limit(int m) {
    require_strip_m(m);
    switch (m) {
        case 2:
            return std::sqrt(3.0);
        case 3:
            return std::cbrt(4.0);
        default:
            return std::pow((7.0 + std::sqrt(33.0)) / 2.0, 0.25);
    }
}

/// Z^{1/(m p)}.
inline double per_site(const BigInt& z, int m, int p) { return std::exp(log_big(z) / (static_cast<double>(m) * p)); }

/// (Z_{p+1} / Z_p)^{1/m}: growth per added column of m sites.
inline double strip_column_growth(int m, int p) {
    return std::exp((log_big(strip_count(m, p + 1)) - log_big(strip_count(m, p))) / m);
}

/// Sum of all entries of B_p^{m-1}: the open m-layer lattice.
inline BigInt open_lattice_count(int m, int p, int k = 3, const Budget& budget = {}) {
    if (m < 1) throw std::invalid_argument("m must be at least 1");
    if (p < 1) throw std::invalid_argument("p must be at least 1");
    const TransferMatrix b = build_B_recursive(k, p, budget);
    std::vector<BigInt> v(static_cast<std::size_t>(b.dim()), BigInt(1));
    for (int i = 1; i < m; ++i) v = b.apply<BigInt>(v);
    BigInt total = 0;
    for (const auto& e : v) total += e;
    return total;
}

}  // namespace kcolor
