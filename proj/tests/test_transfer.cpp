#include "kcolor/transfer.hpp"

#include <gtest/gtest.h>

#include <array>
#include <numeric>
#include <random>
#include <vector>

using namespace kcolor;

namespace {

IntMatrix from_rows(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    IntMatrix m(rows.size(), 0);
    std::size_t i = 0;
    for (const auto& r : rows) {
        std::size_t j = 0;
        for (auto v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

// Reference per-site values (5 decimals) lambda_max(B_p)^(1/p) for k = 3.
constexpr std::array<double, 10> kTable{3.00000, 2.13578, 1.91037, 1.80789, 1.74955,
                                        1.71195, 1.68573, 1.66641, 1.65159, 1.63987};

}  // namespace

TEST(Transfer, BuildAExamples) {
    EXPECT_EQ(build_A_recursive(3, 1, 1).entries(), from_rows({{1, 1}, {0, 1}}));
    EXPECT_EQ(build_A_recursive(3, 1, 0).entries(), from_rows({{1}}));
    EXPECT_EQ(build_A_recursive(4, 2, 1).entries(), from_rows({{1, 1, 0}, {1, 1, 1}, {0, 1, 1}}));
}

TEST(Transfer, BuildBDirectExamples) {
    EXPECT_EQ(build_B_direct(3, 1).entries(), from_rows({{2, 1}, {1, 2}}));
    const std::vector<EdgeState> down_down{2, 2}, up_up{1, 1};
    EXPECT_EQ(build_B_direct(3, 2).entries()(encode(down_down, 3), encode(up_up, 3)), 0);
    EXPECT_EQ(count_row_sweep(down_down, up_up, 3), 0);
}

TEST(Transfer, RecursionMatchesDirectSweep) {
    for (int k = 3; k <= 5; ++k)
        for (int p = 1; p <= 4; ++p) {
            IntMatrix sum(row_config_count(k, p), 0);
            for (int n = 1; n < k; ++n) sum += build_A_recursive(k, n, p).entries();
            EXPECT_EQ(sum, build_B_direct(k, p).entries()) << "k=" << k << " p=" << p;
            EXPECT_EQ(build_B_recursive(k, p).entries(), sum);
        }
}

TEST(Transfer, EntriesNonNegativeAndBSymmetric) {
    for (int k = 3; k <= 6; ++k)
        for (int p = 1; p <= 4 && row_config_count(k, p) <= 1024; ++p) {
            const auto b = build_B_recursive(k, p).entries();
            EXPECT_TRUE(b.is_symmetric()) << "k=" << k << " p=" << p;
            for (std::size_t i = 0; i < b.dim(); ++i)
                for (std::size_t j = 0; j < b.dim(); ++j) EXPECT_GE(b(i, j), 0);
        }
}

TEST(Transfer, TransposePairing) {
    for (int k = 3; k <= 6; ++k)
        for (int p = 0; p <= 3; ++p) {
            const auto family = build_A_family(k, p);
            for (int n = 1; n < k; ++n)
                EXPECT_EQ(family[static_cast<std::size_t>(k - n)], family[static_cast<std::size_t>(n)].transposed())
                    << "k=" << k << " n=" << n << " p=" << p;
        }
    // k = 3: B_p = A_p + A_p^T.
    for (int p = 1; p <= 6; ++p) {
        const auto a = build_A_recursive(3, 1, p).entries();
        EXPECT_EQ(build_B_recursive(3, p).entries(), a + a.transposed());
    }
}

TEST(Transfer, LowerLeftBlockZeroForIce) {
    for (int p = 0; p <= 6; ++p) {
        const auto a = build_A_recursive(3, 1, p + 1).entries();
        const auto b = row_config_count(3, p);
        EXPECT_TRUE(a.block(1, 0, b).is_zero());
        EXPECT_FALSE(a.block(0, 1, b).is_zero());
    }
}

TEST(Transfer, ZeroBlocksGeneralK) {
    // Block (i, j) of A_{n,p+1} vanishes exactly when n + j - i == 0 mod k.
    for (int k = 3; k <= 6; ++k)
        for (int p = 0; p <= 2; ++p) {
            const auto b = row_config_count(k, p);
            for (int n = 1; n < k; ++n) {
                const auto a = build_A_recursive(k, n, p + 1).entries();
                for (int i = 0; i < k - 1; ++i)
                    for (int j = 0; j < k - 1; ++j)
                        EXPECT_EQ(a.block(static_cast<std::size_t>(i), static_cast<std::size_t>(j), b).is_zero(),
                                  is_zero_block(k, n, i, j))
                            << "k=" << k << " n=" << n << " block " << i << "," << j;
            }
        }
}

TEST(Transfer, ImplicitMatvecExamples) {
    const auto b1 = implicit_B(3, 1);
    EXPECT_EQ(matvec_implicit<std::int64_t>(b1, std::vector<std::int64_t>{1, 1}), (std::vector<std::int64_t>{3, 3}));
    const auto a = implicit_A(4, 2, 3);
    const std::vector<double> zero(a.dim(), 0.0);
    for (double x : matvec_implicit<double>(a, zero)) EXPECT_EQ(x, 0.0);
    for (int p = 1; p <= 6; ++p) {
        const auto dense = build_B_recursive(3, p).entries();
        std::vector<std::int64_t> e1(dense.dim(), 0);
        e1[0] = 1;
        const auto col = matvec_implicit<std::int64_t>(implicit_B(3, p), e1);
        for (std::size_t i = 0; i < dense.dim(); ++i) EXPECT_EQ(col[i], dense(i, 0));
    }
}

TEST(Transfer, ImplicitMatchesDenseExactly) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> pick(-50, 50);
    for (int k = 3; k <= 5; ++k)
        for (int p = 0; p <= 4; ++p) {
            const auto family = build_A_family(k, p);
            std::vector<std::int64_t> v(row_config_count(k, p));
            for (auto& x : v) x = pick(rng);
            for (int n = 1; n < k; ++n)
                EXPECT_EQ(implicit_A(k, n, p).apply<std::int64_t>(v), family[static_cast<std::size_t>(n)] * v);
            if (p >= 1) EXPECT_EQ(implicit_B(k, p).apply<std::int64_t>(v), build_B_recursive(k, p).entries() * v);
        }
}

TEST(Transfer, ImplicitMatchesDenseInFloatingPoint) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pick(0.0, 1.0);
    const auto dense = build_B_recursive(4, 5).entries().cast<double>();
    std::vector<double> v(dense.dim());
    for (auto& x : v) x = pick(rng);
    const auto want = dense * v;
    const auto got = implicit_B(4, 5).apply<double>(v);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-12 * std::abs(want[i]));
}

TEST(Transfer, LambdaMaxMatchesTable) {
    for (int p = 1; p <= 10; ++p) {
        const auto r = lambda_max(3, p);
        EXPECT_NEAR(r.per_site_estimate, kTable[static_cast<std::size_t>(p - 1)], 5e-6) << "p=" << p;
        EXPECT_LT(r.residual, 1e-12);
        EXPECT_GT(r.lambda_max, 0.0);
    }
    EXPECT_DOUBLE_EQ(lambda_max(3, 1).lambda_max, 3.0);
}

TEST(Transfer, PerSiteStrictlyDecreasing) {
    double prev = lambda_max(3, 1).per_site_estimate;
    for (int p = 2; p <= 10; ++p) {
        const double cur = lambda_max(3, p).per_site_estimate;
        EXPECT_LT(cur, prev) << "p=" << p;
        prev = cur;
    }
}

TEST(Transfer, LambdaMaxConstantRowSums) {
    // k = 4, p = 1: every row of B_1 sums to 7, so 7 is the Perron eigenvalue.
    const auto b = build_B_recursive(4, 1).entries();
    for (std::size_t i = 0; i < b.dim(); ++i) {
        const auto row = b.row(i);
        EXPECT_EQ(std::accumulate(row.begin(), row.end(), std::int64_t{0}), 7);
    }
    EXPECT_NEAR(lambda_max(4, 1).lambda_max, 7.0, 1e-10);
}

TEST(Transfer, Errors) {
    EXPECT_THROW(build_A_recursive(3, 0, 2), std::invalid_argument);
    EXPECT_THROW(build_A_recursive(3, 3, 2), std::invalid_argument);
    EXPECT_THROW(build_A_recursive(2, 1, 2), std::invalid_argument);
    EXPECT_THROW(build_B_direct(3, 0), std::invalid_argument);
    Budget tiny;
    tiny.max_dense_dim = 8;
    EXPECT_THROW(build_B_recursive(3, 4, tiny), BudgetExceeded);
    EXPECT_NO_THROW(build_B_recursive(3, 3, tiny));
    tiny.max_implicit_dim = 8;
    EXPECT_THROW(lambda_max(3, 4, {}, tiny), BudgetExceeded);
    EXPECT_THROW(implicit_B(3, 2).apply<double>(std::vector<double>(3, 1.0)), std::invalid_argument);
    EXPECT_THROW(implicit_B(3, 2).entries(), std::logic_error);
    EXPECT_THROW(lambda_max(3, 0), std::invalid_argument);
}

TEST(Transfer, NonConvergenceReportsResidual) {
    EigenOptions opts;
    opts.max_iterations = 1;
    try {
        lambda_max(3, 6, opts);
        FAIL() << "expected NonConvergence";
    } catch (const NonConvergence& e) {
        EXPECT_GT(e.residual(), opts.tolerance);
    }
}
