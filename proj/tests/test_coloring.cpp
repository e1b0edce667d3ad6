#include "kcolor/coloring.hpp"
#include "kcolor/trace_algebra.hpp"

#include <gtest/gtest.h>

#include <set>
#include <vector>

using namespace kcolor;

namespace {

// Independent oracle: try all k^(m p) color vectors.
std::int64_t colorings_by_exhaustion(const FaceGrid& g, int k) {
    const int n = g.faces();
    std::vector<int> col(static_cast<std::size_t>(n), 1);
    std::int64_t count = 0;
    while (true) {
        if (LatticeColoring{k, g, col}.is_proper()) ++count;
        int i = 0;
        while (i < n && col[static_cast<std::size_t>(i)] == k) col[static_cast<std::size_t>(i++)] = 1;
        if (i == n) break;
        ++col[static_cast<std::size_t>(i)];
    }
    return count;
}

// Independent oracle: try all (k-1)^E edge-state vectors on the dual lattice.
std::int64_t edge_states_by_exhaustion(const FaceGrid& g, int k) {
    FaceEdgeStates a{g, k, std::vector<EdgeState>(static_cast<std::size_t>(g.edge_count()), 1)};
    std::int64_t count = 0;
    while (true) {
        try {
            validate_assignment(a);
            ++count;
        } catch (const InvalidAssignment&) {
        }
        std::size_t i = 0;
        while (i < a.states.size() && a.states[i] == k - 1) a.states[i++] = 1;
        if (i == a.states.size()) break;
        ++a.states[i];
    }
    return count;
}

LatticeColoring sample_coloring() {
    // A proper 3-coloring of an open 3 x 3 face grid.
    return LatticeColoring{3, FaceGrid{3, 3, Boundary::open}, {1, 2, 3, 2, 3, 1, 3, 1, 2}};
}

}  // namespace

TEST(Coloring, VertexCountExamples) {
    EXPECT_EQ(vertex_count(3), 6);
    EXPECT_EQ(vertex_count(4), 21);
    EXPECT_EQ(vertex_count(5), 52);
}

TEST(Coloring, VertexEnumerationMatchesClosedForm) {
    for (int k = 3; k <= 10; ++k) {
        const auto configs = enumerate_vertex_configs(k);
        EXPECT_EQ(static_cast<std::int64_t>(configs.size()), vertex_count_closed(k));
        for (const auto& v : configs) EXPECT_TRUE(v.is_valid(k));
        EXPECT_EQ(std::set<VertexConfig>(configs.begin(), configs.end()).size(), configs.size());
    }
}

TEST(Coloring, BruteForceColoringExamples) {
    EXPECT_EQ(brute_force_count(1, 1, 3, Boundary::open, CountTarget::colorings), 3);
    EXPECT_EQ(brute_force_count(1, 2, 3, Boundary::open, CountTarget::colorings), 6);
    EXPECT_EQ(brute_force_count(2, 2, 4, Boundary::open, CountTarget::colorings), 84);
}

TEST(Coloring, BacktrackingMatchesExhaustion) {
    for (auto b : {Boundary::open, Boundary::cylinder, Boundary::torus})
        for (int k = 3; k <= 4; ++k)
            for (int m = 1; m <= 3; ++m)
                for (int p = 1; p <= 3; ++p) {
                    const FaceGrid g{m, p, b};
                    EXPECT_EQ(count_colorings(g, k), colorings_by_exhaustion(g, k))
                        << to_string(b) << " k=" << k << " " << m << "x" << p;
                }
}

TEST(Coloring, EdgeStateSearchMatchesExhaustion) {
    for (auto b : {Boundary::open, Boundary::cylinder, Boundary::torus})
        for (int m = 1; m <= 3; ++m)
            for (int p = 1; p <= 3; ++p) {
                const FaceGrid g{m, p, b};
                if (g.edge_count() > 14) continue;
                EXPECT_EQ(count_edge_states(dual_lattice(g), 3), edge_states_by_exhaustion(g, 3))
                    << to_string(b) << " " << m << "x" << p;
            }
}

TEST(Coloring, CylinderConsistency) {
    for (int m = 1; m <= 4; ++m)
        for (int p = 1; p <= 3; ++p)
            EXPECT_EQ(brute_force_count(m, p, 3, Boundary::cylinder, CountTarget::edge_states),
                      strip_count_dense(m, p))
                << "m=" << m << " p=" << p;
}

TEST(Coloring, OpenConsistency) {
    for (int m = 1; m <= 3; ++m)
        for (int p = 1; p <= 3; ++p)
            EXPECT_EQ(brute_force_count(m, p, 3, Boundary::open, CountTarget::edge_states), open_lattice_count(m, p))
                << "m=" << m << " p=" << p;
}

TEST(Coloring, OpenFaceGridIsKToOne) {
    // An open face grid is simply connected: every assignment lifts to k colorings.
    for (int k = 3; k <= 4; ++k)
        for (int m = 1; m <= 3; ++m)
            for (int p = 2; p <= 3; ++p)
                EXPECT_EQ(count_colorings(FaceGrid{m, p, Boundary::open}, k), k * open_lattice_count(m, p - 1, k))
                    << "k=" << k << " " << m << "x" << p;
}

TEST(Coloring, TorusColoringsAreKTimesLiftable) {
    for (int k = 3; k <= 4; ++k)
        for (int m = 2; m <= 3; ++m)
            for (int p = 2; p <= 3; ++p) {
                const FaceGrid g{m, p, Boundary::torus};
                EXPECT_EQ(count_colorings(g, k), k * count_liftable_edge_states(g, k));
            }
}

TEST(Coloring, TorusHasUnliftableAssignments) {
    // Frozen: states with nonzero winding sum satisfy every vertex but lift to no coloring.
    const FaceGrid g{3, 3, Boundary::torus};
    EXPECT_EQ(count_colorings(g, 3), 12);
    EXPECT_EQ(count_edge_states(dual_lattice(g), 3), 148);
    EXPECT_EQ(count_liftable_edge_states(g, 3), 4);
}

TEST(Coloring, RoundTripGivesKShiftedColorings) {
    const auto original = sample_coloring();
    ASSERT_TRUE(original.is_proper());
    const auto states = coloring_to_edge_states(original);
    EXPECT_NO_THROW(validate_assignment(states));
    const auto lifted = edgestates_to_colorings(states);
    ASSERT_EQ(lifted.size(), 3u);
    EXPECT_NE(std::find(lifted.begin(), lifted.end(), original), lifted.end());
    for (const auto& c : lifted) {
        EXPECT_TRUE(c.is_proper());
        const int shift = mod_k(c.at(0, 0) - original.at(0, 0), 3);
        for (int f = 0; f < 9; ++f)
            EXPECT_EQ(mod_k(c.colors[static_cast<std::size_t>(f)] - original.colors[static_cast<std::size_t>(f)], 3),
                      shift);
    }
}

TEST(Coloring, EveryAssignmentLiftsToKShiftedColoringsK4) {
    const FaceGrid g{2, 3, Boundary::open};
    int assignments = 0;
    for_each_edge_state(dual_lattice(g), 4, [&](std::span<const EdgeState> s) {
        ++assignments;
        const FaceEdgeStates a{g, 4, std::vector<EdgeState>(s.begin(), s.end())};
        const auto cols = edgestates_to_colorings(a);
        ASSERT_EQ(cols.size(), 4u);
        for (std::size_t i = 0; i < cols.size(); ++i) {
            EXPECT_TRUE(cols[i].is_proper());
            EXPECT_EQ(coloring_to_edge_states(cols[i]).states, a.states);
            for (std::size_t f = 0; f < cols[i].colors.size(); ++f)
                EXPECT_EQ(mod_k(cols[i].colors[f] - cols[0].colors[f], 4), static_cast<int>(i));
        }
    });
    EXPECT_EQ(assignments * 4, count_colorings(g, 4));
}

TEST(Coloring, SingleFacePair) {
    // Two faces share one edge: the neighbor color is fixed by the first.
    const FaceEdgeStates a{FaceGrid{1, 2, Boundary::open}, 3, {2}};
    const auto cols = edgestates_to_colorings(a);
    ASSERT_EQ(cols.size(), 3u);
    EXPECT_EQ(cols[0].colors, (std::vector<int>{1, 3}));
}

TEST(Coloring, InvalidAssignmentsNameTheProblem) {
    auto states = coloring_to_edge_states(sample_coloring());
    auto zero = states;
    zero.states[0] = 0;
    try {
        validate_assignment(zero);
        FAIL();
    } catch (const InvalidAssignment& e) {
        EXPECT_NE(std::string(e.what()).find("edge between faces"), std::string::npos);
    }
    auto bad_sum = states;
    bad_sum.states[0] = bad_sum.states[0] == 1 ? 2 : 1;
    try {
        validate_assignment(bad_sum);
        FAIL();
    } catch (const InvalidAssignment& e) {
        EXPECT_NE(std::string(e.what()).find("vertex at corner"), std::string::npos);
    }
    EXPECT_THROW(edgestates_to_colorings(bad_sum), InvalidAssignment);
    auto short_states = states;
    short_states.states.pop_back();
    EXPECT_THROW(validate_assignment(short_states), std::invalid_argument);
}

TEST(Coloring, UnliftableTorusAssignmentRejected) {
    // Some torus assignments satisfy every vertex yet wind around a periodic direction.
    const FaceGrid g{2, 2, Boundary::torus};
    bool found = false;
    for_each_edge_state(dual_lattice(g), 3, [&](std::span<const EdgeState> s) {
        const FaceEdgeStates a{g, 3, std::vector<EdgeState>(s.begin(), s.end())};
        if (!found && !lifts_to_coloring(a)) {
            found = true;
            EXPECT_THROW(edgestates_to_colorings(a), InvalidAssignment);
        }
    });
    EXPECT_TRUE(found);
}

TEST(Coloring, DegenerateTorusHasNoColorings) {
    EXPECT_EQ(count_colorings(FaceGrid{1, 3, Boundary::torus}, 3), 0);
    EXPECT_EQ(count_colorings(FaceGrid{3, 1, Boundary::torus}, 4), 0);
    EXPECT_EQ(count_colorings(FaceGrid{3, 1, Boundary::cylinder}, 4), 4 * 3 * 2);
}

TEST(Coloring, Errors) {
    EXPECT_THROW(vertex_count(2), std::invalid_argument);
    EXPECT_THROW(parse_boundary("mobius"), std::invalid_argument);
    EXPECT_THROW(parse_count_target("faces"), std::invalid_argument);
    EXPECT_THROW(brute_force_count(0, 2, 3, Boundary::open, CountTarget::colorings), std::invalid_argument);
    EXPECT_THROW(brute_force_count(5, 5, 4, Boundary::open, CountTarget::colorings, SearchBudget{1e6}),
                 BudgetExceeded);
    EXPECT_THROW(brute_force_count(4, 4, 5, Boundary::torus, CountTarget::edge_states, SearchBudget{1e3}),
                 BudgetExceeded);
}
