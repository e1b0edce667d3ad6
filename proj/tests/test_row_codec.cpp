#include "kcolor/row_codec.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

using namespace kcolor;

namespace {

// L_{p+1}: prepend state 1 to every member of L_p, then state 2, ..., then k-1.
std::vector<std::vector<EdgeState>> ordered_rows(int k, int p) {
    std::vector<std::vector<EdgeState>> rows{{}};
    for (int len = 1; len <= p; ++len) {
        std::vector<std::vector<EdgeState>> next;
        for (EdgeState s = 1; s < k; ++s)
            for (const auto& tail : rows) {
                std::vector<EdgeState> r{s};
                r.insert(r.end(), tail.begin(), tail.end());
                next.push_back(std::move(r));
            }
        rows = std::move(next);
    }
    return rows;
}

}  // namespace

TEST(RowCodec, EncodeExamples) {
    EXPECT_EQ(encode(std::vector<EdgeState>{1}, 3), 0u);
    EXPECT_EQ(encode(std::vector<EdgeState>{2, 1}, 3), 2u);
    EXPECT_EQ(encode(std::vector<EdgeState>{3, 1, 2}, 4), 19u);
}

TEST(RowCodec, DecodeExamples) {
    EXPECT_EQ(decode(0, 2, 3), (std::vector<EdgeState>{1, 1}));
    EXPECT_EQ(decode(3, 2, 3), (std::vector<EdgeState>{2, 2}));
    EXPECT_EQ(decode(19, 3, 4), (std::vector<EdgeState>{3, 1, 2}));
}

TEST(RowCodec, EmptyRowIsLegal) {
    EXPECT_EQ(row_config_count(3, 0), 1u);
    EXPECT_TRUE(decode(0, 0, 5).empty());
    EXPECT_EQ(encode(std::vector<EdgeState>{}, 0, 5), 0u);
}

TEST(RowCodec, MatchesPrependConstruction) {
    for (int k = 3; k <= 5; ++k)
        for (int p = 0; p <= 4; ++p) {
            const auto rows = ordered_rows(k, p);
            ASSERT_EQ(rows.size(), row_config_count(k, p));
            for (std::size_t i = 0; i < rows.size(); ++i) {
                EXPECT_EQ(encode(rows[i], p, k), i);
                EXPECT_EQ(decode(i, p, k), rows[i]);
            }
        }
}

TEST(RowCodec, RandomRoundTrip) {
    std::mt19937_64 rng(20240611);
    for (int k = 3; k <= 6; ++k)
        for (int p = 1; p <= 8; ++p) {
            std::uniform_int_distribution<std::uint64_t> pick(0, row_config_count(k, p) - 1);
            for (int t = 0; t < 200; ++t) {
                const auto i = pick(rng);
                EXPECT_EQ(encode(decode(i, p, k), k), i);
            }
        }
}

TEST(RowCodec, PrefixBlockLaw) {
    for (int k = 3; k <= 6; ++k)
        for (int p = 0; p <= 4; ++p) {
            const auto block = row_config_count(k, p);
            for (std::uint64_t i = 0; i < row_config_count(k, p + 1); ++i)
                EXPECT_EQ(decode(i, p + 1, k).front(), static_cast<EdgeState>(i / block) + 1);
        }
}

TEST(RowCodec, ConjugateStaysNonzero) {
    for (int k = 3; k <= 9; ++k)
        for (EdgeState s = 1; s < k; ++s) {
            EXPECT_TRUE(is_edge_state(conjugate(s, k), k));
            EXPECT_EQ(conjugate(conjugate(s, k), k), s);
        }
}

TEST(RowCodec, Errors) {
    EXPECT_THROW(encode(std::vector<EdgeState>{0}, 3), std::invalid_argument);
    EXPECT_THROW(encode(std::vector<EdgeState>{3}, 3), std::invalid_argument);
    EXPECT_THROW(encode(std::vector<EdgeState>{1, 1}, 3, 3), std::invalid_argument);
    EXPECT_THROW(encode(std::vector<EdgeState>{}, 2, 3), std::invalid_argument);
    EXPECT_THROW(decode(4, 2, 3), std::out_of_range);
    EXPECT_THROW(decode(0, 1, 2), std::invalid_argument);
    EXPECT_THROW(row_config_count(3, -1), std::invalid_argument);
}
