#pragma once

// Transfer matrices for the k-state vertex model on rows of p sites with open
// (non-periodic) row boundaries.
//
// B_p(phi, phi') counts the horizontal-edge assignments of one row of p
// vertices whose vertical edges below carry phi and whose vertical edges above
// carry phi'. It splits as B_p = sum_{n=1}^{k-1} A_{n,p}, where A_{n,p} fixes
// the state of the left dangling edge. The A matrices obey a Toeplitz block
// recursion: the (i, j) block of A_{n,p+1} is A_{(n+j-i) mod k, p}, with
// A_{0,p} = 0 and A_{n,0} = [1] for n != 0 mod k.

#include "kcolor/dense_matrix.hpp"
#include "kcolor/errors.hpp"
#include "kcolor/row_codec.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kcolor {

using IntMatrix = DenseMatrix<std::int64_t>;

struct Budget {
    /// Largest dimension (k-1)^p for which a dense matrix may be materialized.
    std::uint64_t max_dense_dim = std::uint64_t{1} << 14;
    /// Largest dimension for implicit (matrix-free) products.
    std::uint64_t max_implicit_dim = std::uint64_t{1} << 26;
};

enum class TransferKind { a_component, b_full };
enum class Storage { dense, implicit };

namespace detail {

inline std::uint64_t checked_dim(int k, int p, std::uint64_t limit, const char* what) {
    require_valid_k(k);
    if (p < 0) throw std::invalid_argument("p must be non-negative");
    // (k-1)^p may overflow before the comparison; stop multiplying once past the limit.
    std::uint64_t dim = 1;
    for (int i = 0; i < p; ++i) {
        dim *= static_cast<std::uint64_t>(k - 1);
        if (dim > limit)
            throw BudgetExceeded(std::string(what) + " dimension (" + std::to_string(k - 1) + ")^" +
                                 std::to_string(p) + " exceeds budget " + std::to_string(limit));
    }
    return dim;
}

inline void require_component(int k, int n) {
    if (n < 1 || n > k - 1)
        throw std::invalid_argument("component index n=" + std::to_string(n) + " outside 1.." +
                                    std::to_string(k - 1));
}

/// Applies every A_{c,p}, c = 0..k-1, to x at once. Result[c] = A_{c,p} x; Result[0] is zero.
///
/// Works digit by digit from the least significant row position: each stage
/// contracts one column digit j_t against one row digit i_t, carrying the
/// running edge label c -> c + j_t - i_t and dropping terms where it hits 0.
/// Cost is p (k-1)^2 (k-1)^p scalar operations.
template <class T>
std::vector<std::vector<T>> apply_all_components(int k, int p, std::span<const T> x) {
    const std::size_t q = static_cast<std::size_t>(k - 1);
    const std::size_t dim = x.size();
    std::vector<std::vector<T>> cur(static_cast<std::size_t>(k), std::vector<T>(x.begin(), x.end()));
    std::fill(cur[0].begin(), cur[0].end(), T{0});
    std::vector<std::vector<T>> next(static_cast<std::size_t>(k), std::vector<T>(dim, T{0}));

    std::size_t stride = 1;
    for (int t = 0; t < p; ++t, stride *= q) {
        const std::size_t span_len = stride * q;
        for (int c = 1; c < k; ++c) {
            auto& dst = next[static_cast<std::size_t>(c)];
            std::fill(dst.begin(), dst.end(), T{0});
            for (std::size_t hi = 0; hi < dim; hi += span_len) {
                for (std::size_t lo = 0; lo < stride; ++lo) {
                    const std::size_t base = hi + lo;
                    for (std::size_t i = 0; i < q; ++i) {
                        T acc{0};
                        for (std::size_t j = 0; j < q; ++j) {
                            const int c2 = mod_k(static_cast<long long>(c) + static_cast<long long>(j) -
                                                     static_cast<long long>(i),
                                                 k);
                            if (c2 != 0) acc += cur[static_cast<std::size_t>(c2)][base + j * stride];
                        }
                        dst[base + i * stride] = acc;
                    }
                }
            }
        }
        std::swap(cur, next);
    }
    return cur;
}

}  // namespace detail

/// A_{n,p} (kind a_component) or B_p (kind b_full), either materialized or as an operator.
class TransferMatrix {
public:
    static TransferMatrix dense(int k, int p, TransferKind kind, int n, IntMatrix entries) {
        TransferMatrix m(k, p, kind, n, Storage::dense);
        m.entries_ = std::move(entries);
        return m;
    }

    static TransferMatrix implicit(int k, int p, TransferKind kind, int n) {
        return TransferMatrix(k, p, kind, n, Storage::implicit);
    }

    int k() const noexcept { return k_; }
    int p() const noexcept { return p_; }
    TransferKind kind() const noexcept { return kind_; }
    /// Component index for a_component; 0 for b_full.
    int n() const noexcept { return n_; }
    Storage storage() const noexcept { return storage_; }
    std::uint64_t dim() const { return row_config_count(k_, p_); }

    const IntMatrix& entries() const {
        if (storage_ != Storage::dense) throw std::logic_error("implicit transfer matrix has no stored entries");
        return entries_;
    }

    /// Matrix-vector product. Dense storage multiplies directly; implicit storage
    /// runs the block recursion. Both give identical results in exact arithmetic.
    template <class T>
    std::vector<T> apply(std::span<const T> v) const {
        if (v.size() != dim())
            throw std::invalid_argument("vector length " + std::to_string(v.size()) + " does not match dimension " +
                                        std::to_string(dim()));
        if (storage_ == Storage::dense) {
            std::vector<T> out(v.size(), T{0});
            for (std::size_t i = 0; i < v.size(); ++i)
                for (std::size_t j = 0; j < v.size(); ++j) {
                    const auto e = entries_(i, j);
                    if (e != 0) out[i] += T(e) * v[j];
                }
            return out;
        }
        auto parts = detail::apply_all_components<T>(k_, p_, v);
        if (kind_ == TransferKind::a_component) return std::move(parts[static_cast<std::size_t>(n_)]);
        std::vector<T> out(v.size(), T{0});
        for (int c = 1; c < k_; ++c)
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += parts[static_cast<std::size_t>(c)][i];
        return out;
    }

private:
    TransferMatrix(int k, int p, TransferKind kind, int n, Storage s)
        : k_(k), p_(p), kind_(kind), n_(n), storage_(s) {}

    int k_;
    int p_;
    TransferKind kind_;
    int n_;
    Storage storage_;
    IntMatrix entries_;
};

/// Dense A_{c,p} for every c = 0..k-1 (index 0 is the zero matrix).
inline std::vector<IntMatrix> build_A_family(int k, int p, const Budget& budget = {}) {
    detail::checked_dim(k, p, budget.max_dense_dim, "dense transfer matrix");
    const std::size_t q = static_cast<std::size_t>(k - 1);
    std::vector<IntMatrix> level(static_cast<std::size_t>(k), IntMatrix(1, 1));
    level[0] = IntMatrix(1, 0);
    for (int step = 0; step < p; ++step) {
        const std::size_t b = level[0].dim();
        std::vector<IntMatrix> next(static_cast<std::size_t>(k), IntMatrix(b * q, 0));
        for (int c = 1; c < k; ++c)
            for (std::size_t i = 0; i < q; ++i)
                for (std::size_t j = 0; j < q; ++j) {
                    const int src = mod_k(static_cast<long long>(c) + static_cast<long long>(j) -
                                              static_cast<long long>(i),
                                          k);
                    if (src != 0) next[static_cast<std::size_t>(c)].set_block(i, j, level[static_cast<std::size_t>(src)]);
                }
        level = std::move(next);
    }
    return level;
}

inline TransferMatrix build_A_recursive(int k, int n, int p, const Budget& budget = {}) {
    require_valid_k(k);
    detail::require_component(k, n);
    auto family = build_A_family(k, p, budget);
    return TransferMatrix::dense(k, p, TransferKind::a_component, n, std::move(family[static_cast<std::size_t>(n)]));
}

/// B_p assembled as the sum of the recursively built components.
inline TransferMatrix build_B_recursive(int k, int p, const Budget& budget = {}) {
    auto family = build_A_family(k, p, budget);
    IntMatrix b = family[1];
    for (int c = 2; c < k; ++c) b += family[static_cast<std::size_t>(c)];
    return TransferMatrix::dense(k, p, TransferKind::b_full, 0, std::move(b));
}

/// Number of horizontal-edge assignments of one open row. below[i] is the state
/// of the i-th lower vertical edge w.r.t. vertex i; above[i] is the state of the
/// i-th upper vertical edge w.r.t. the vertex of the next row, so vertex i sees
/// k - above[i]. Each choice of the left dangling state is swept left to right
/// and the right-edge state is forced by the vertex rule.
inline std::int64_t count_row_sweep(std::span<const EdgeState> below, std::span<const EdgeState> above, int k) {
    std::int64_t count = 0;
    for (int left = 1; left < k; ++left) {
        int l = left;
        bool ok = true;
        for (std::size_t i = 0; i < below.size() && ok; ++i) {
            const int r = mod_k(-(static_cast<long long>(below[i]) + (k - above[i]) + l), k);
            if (r == 0) ok = false;
            l = conjugate(r, k);
        }
        if (ok) ++count;
    }
    return count;
}

/// B_p by direct enumeration of each entry; independent of the block recursion.
inline TransferMatrix build_B_direct(int k, int p, const Budget& budget = {}) {
    if (p < 1) throw std::invalid_argument("build_B_direct needs p >= 1");
    const auto dim = detail::checked_dim(k, p, budget.max_dense_dim, "dense transfer matrix");
    std::vector<std::vector<EdgeState>> rows(dim);
    for (std::uint64_t i = 0; i < dim; ++i) rows[i] = decode(i, p, k);
    IntMatrix b(dim, 0);
    for (std::uint64_t i = 0; i < dim; ++i)
        for (std::uint64_t j = 0; j < dim; ++j) b(i, j) = count_row_sweep(rows[i], rows[j], k);
    return TransferMatrix::dense(k, p, TransferKind::b_full, 0, std::move(b));
}

inline TransferMatrix implicit_A(int k, int n, int p, const Budget& budget = {}) {
    detail::require_component(k, n);
    detail::checked_dim(k, p, budget.max_implicit_dim, "implicit transfer operator");
    return TransferMatrix::implicit(k, p, TransferKind::a_component, n);
}

inline TransferMatrix implicit_B(int k, int p, const Budget& budget = {}) {
    detail::checked_dim(k, p, budget.max_implicit_dim, "implicit transfer operator");
    return TransferMatrix::implicit(k, p, TransferKind::b_full, 0);
}

template <class T>
std::vector<T> matvec_implicit(const TransferMatrix& m, std::span<const T> v) {
    return m.apply<T>(v);
}

/// True when block (i, j) (0-based) of A_{n,p+1} is identically zero for every p.
inline bool is_zero_block(int k, int n, int i, int j) { return mod_k(static_cast<long long>(n) + j - i, k) == 0; }

struct EigenOptions {
    double tolerance = 1e-12;
    long max_iterations = 1'000'000;
};

struct EigenResult {
    double lambda_max = 0.0;
    /// lambda_max^(1/p).
    double per_site_estimate = 0.0;
    long iterations = 0;
    double residual = 0.0;
};

/// Largest eigenvalue of B_p by power iteration from the all-ones vector.
/// B_p is symmetric, so the Rayleigh quotient is used as the estimate and the
/// stopping test is ||B v - lambda v||_inf / (lambda ||v||_inf) < tolerance.
inline EigenResult lambda_max(int k, int p, const EigenOptions& opts = {}, const Budget& budget = {}) {
    if (p < 1) throw std::invalid_argument("lambda_max needs p >= 1");
    const TransferMatrix op = implicit_B(k, p, budget);
    const auto dim = static_cast<std::size_t>(op.dim());
    std::vector<double> v(dim, 1.0);

    auto inf_norm = [](const std::vector<double>& x) {
        double m = 0.0;
        for (double e : x) m = std::max(m, std::abs(e));
        return m;
    };

    EigenResult res;
    for (long it = 1; it <= opts.max_iterations; ++it) {
        std::vector<double> w = op.apply<double>(v);
        const double vw = std::inner_product(v.begin(), v.end(), w.begin(), 0.0);
        const double vv = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
        const double lambda = vw / vv;
        double r = 0.0;
        for (std::size_t i = 0; i < dim; ++i) r = std::max(r, std::abs(w[i] - lambda * v[i]));
        r /= lambda * inf_norm(v);
        res = {lambda, std::pow(lambda, 1.0 / p), it, r};
        if (r < opts.tolerance) return res;
        const double scale = inf_norm(w);
        for (std::size_t i = 0; i < dim; ++i) v[i] = w[i] / scale;
    }
    throw NonConvergence("power iteration for k=" + std::to_string(k) + ", p=" + std::to_string(p) +
                             " did not reach tolerance after " + std::to_string(opts.max_iterations) +
                             " iterations (residual " + std::to_string(res.residual) + ")",
                         res.residual);
}

}  // namespace kcolor
