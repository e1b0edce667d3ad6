#pragma once

// Face k-colorings of square grids and the equivalent edge-state (vertex) model.
//
// A coloring assigns each face a color in {1..k} with edge-adjacent faces
// distinct. Every lattice edge separates two faces; its state with respect to
// one endpoint is the color difference (mod k) of those faces taken clockwise
// about that endpoint, so the two endpoints see conjugate states and the four
// states around a vertex sum to 0 mod k. Conversely, on a simply connected
// patch every admissible assignment of states lifts to exactly k colorings.
//
// Geometry: an m x p grid of faces, face (r, c) in row r and column c. The
// lattice edge between faces (r, c) and (r, c+1) is `right(r, c)`; its state is
// stored w.r.t. its lower endpoint, the corner below-right of face (r, c), and
// equals color(r, c+1) - color(r, c). The edge between faces (r, c) and
// (r+1, c) is `down(r, c)`; its state is stored w.r.t. its left endpoint and
// equals color(r+1, c) - color(r, c). Corner (r, c) is the corner below-right of
// face (r, c); it is a lattice vertex when it is surrounded by four faces.

#include "kcolor/bigint.hpp"
#include "kcolor/errors.hpp"
#include "kcolor/row_codec.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kcolor {

struct VertexConfig {
    /// States w.r.t. the vertex, clockwise: up, right, down, left.
    std::array<EdgeState, 4> states{};

    bool is_valid(int k) const {
        int sum = 0;
        for (EdgeState s : states) {
            if (!is_edge_state(s, k)) return false;
            sum += s;
        }
        return sum % k == 0;
    }

    auto operator<=>(const VertexConfig&) const = default;
};

/// All admissible vertex configurations in lexicographic order.
inline std::vector<VertexConfig> enumerate_vertex_configs(int k) {
    require_valid_k(k);
    std::vector<VertexConfig> out;
    for (int a = 1; a < k; ++a)
        for (int b = 1; b < k; ++b)
            for (int c = 1; c < k; ++c)
                for (int d = 1; d < k; ++d)
                    if ((a + b + c + d) % k == 0) out.push_back(VertexConfig{{a, b, c, d}});
    return out;
}

/// M_k = (k-1)^3 - (k-1)^2 + (k-1).
inline std::int64_t vertex_count_closed(int k) {
    require_valid_k(k);
    const std::int64_t x = k - 1;
    return x * x * x - x * x + x;
}

/// M_k by enumeration, checked against the closed form.
inline std::int64_t vertex_count(int k) {
    const auto n = static_cast<std::int64_t>(enumerate_vertex_configs(k).size());
    if (n != vertex_count_closed(k)) throw std::logic_error("vertex enumeration disagrees with closed form");
    return n;
}

enum class Boundary { open, cylinder, torus };

inline std::string_view to_string(Boundary b) {
    switch (b) {
        case Boundary::open:
            return "open";
        case Boundary::cylinder:
            return "cylinder";
        default:
            return "torus";
    }
}

inline Boundary parse_boundary(std::string_view s) {
    if (s == "open") return Boundary::open;
    if (s == "cylinder") return Boundary::cylinder;
    if (s == "torus") return Boundary::torus;
    throw std::invalid_argument("unknown boundary '" + std::string(s) + "' (expected open, cylinder or torus)");
}

/// m x p faces. Cylinder wraps the row-stacking (m) direction; torus wraps both.
struct FaceGrid {
    int m = 1;
    int p = 1;
    Boundary boundary = Boundary::open;

    bool wraps_rows() const { return boundary != Boundary::open; }
    bool wraps_cols() const { return boundary == Boundary::torus; }
    int faces() const { return m * p; }
    int face(int r, int c) const { return r * p + c; }

    /// Right-adjacencies per face row.
    int right_per_row() const { return wraps_cols() ? p : p - 1; }
    /// Face rows that have a down-adjacency.
    int down_rows() const { return wraps_rows() ? m : m - 1; }
    int right_edge_count() const { return m * right_per_row(); }
    int edge_count() const { return right_edge_count() + down_rows() * p; }

    int right_id(int r, int c) const { return r * right_per_row() + c; }
    int down_id(int r, int c) const { return right_edge_count() + r * p + c; }

    void validate() const {
        if (m < 1 || p < 1) throw std::invalid_argument("face grid needs m, p >= 1");
    }
};

/// Edge with endpoint vertex ids; -1 marks a dangling end. State is stored w.r.t. tail.
struct LatticeEdge {
    int tail = -1;
    int head = -1;
};

struct EdgeLattice {
    int vertex_count = 0;
    std::vector<LatticeEdge> edges;
};

namespace detail {

inline int wrap(int v, int n) { return ((v % n) + n) % n; }

/// Vertex id of corner (r, c), or -1 when the corner is on the outer boundary.
inline int corner_id(const FaceGrid& g, int r, int c) {
    const int rows = g.wraps_rows() ? g.m : g.m - 1;
    const int cols = g.wraps_cols() ? g.p : g.p - 1;
    if (g.wraps_rows()) r = wrap(r, g.m);
    if (g.wraps_cols()) c = wrap(c, g.p);
    if (r < 0 || r >= rows || c < 0 || c >= cols) return -1;
    return r * cols + c;
}

}  // namespace detail

/// The vertex/edge lattice whose edges separate the faces of g.
inline EdgeLattice dual_lattice(const FaceGrid& g) {
    g.validate();
    EdgeLattice lat;
    const int rows = g.wraps_rows() ? g.m : g.m - 1;
    const int cols = g.wraps_cols() ? g.p : g.p - 1;
    lat.vertex_count = rows * cols;
    lat.edges.resize(static_cast<std::size_t>(g.edge_count()));
    for (int r = 0; r < g.m; ++r)
        for (int c = 0; c < g.right_per_row(); ++c)
            lat.edges[static_cast<std::size_t>(g.right_id(r, c))] = {detail::corner_id(g, r, c),
                                                                      detail::corner_id(g, r - 1, c)};
    for (int r = 0; r < g.down_rows(); ++r)
        for (int c = 0; c < g.p; ++c)
            lat.edges[static_cast<std::size_t>(g.down_id(r, c))] = {detail::corner_id(g, r, c - 1),
                                                                     detail::corner_id(g, r, c)};
    return lat;
}

/// Face grid whose dual is the transfer-matrix lattice with the given parameters:
///   cylinder: m rows of p vertices, rows stacked periodically, dangling row ends;
///   open:     m layers of p vertical edges (m-1 vertex rows), all boundary edges dangling;
///   torus:    m x p vertices, periodic both ways.
inline FaceGrid edge_state_grid(int m, int p, Boundary b) {
    if (m < 1 || p < 1) throw std::invalid_argument("lattice needs m, p >= 1");
    return b == Boundary::torus ? FaceGrid{m, p, b} : FaceGrid{m, p + 1, b};
}

/// Edge states of a face grid, stored in dual_lattice edge order.
struct FaceEdgeStates {
    FaceGrid grid;
    int k = 3;
    std::vector<EdgeState> states;

    EdgeState right(int r, int c) const {
        return states[static_cast<std::size_t>(grid.right_id(r, c))];
    }
    EdgeState down(int r, int c) const { return states[static_cast<std::size_t>(grid.down_id(r, c))]; }
};

struct LatticeColoring {
    int k = 3;
    FaceGrid grid;
    /// Row-major face colors in {1..k}.
    std::vector<int> colors;

    int at(int r, int c) const { return colors[static_cast<std::size_t>(grid.face(r, c))]; }

    bool is_proper() const {
        for (int r = 0; r < grid.m; ++r)
            for (int c = 0; c < grid.p; ++c) {
                if (at(r, c) < 1 || at(r, c) > k) return false;
                if (c + 1 < grid.p || grid.wraps_cols())
                    if (at(r, c) == at(r, (c + 1) % grid.p)) return false;
                if (r + 1 < grid.m || grid.wraps_rows())
                    if (at(r, c) == at((r + 1) % grid.m, c)) return false;
            }
        return true;
    }

    bool operator==(const LatticeColoring& o) const { return k == o.k && colors == o.colors; }
};

inline FaceEdgeStates coloring_to_edge_states(const LatticeColoring& col) {
    const FaceGrid& g = col.grid;
    FaceEdgeStates out{g, col.k, std::vector<EdgeState>(static_cast<std::size_t>(g.edge_count()))};
    for (int r = 0; r < g.m; ++r)
        for (int c = 0; c < g.right_per_row(); ++c)
            out.states[static_cast<std::size_t>(g.right_id(r, c))] = mod_k(col.at(r, (c + 1) % g.p) - col.at(r, c), col.k);
    for (int r = 0; r < g.down_rows(); ++r)
        for (int c = 0; c < g.p; ++c)
            out.states[static_cast<std::size_t>(g.down_id(r, c))] = mod_k(col.at((r + 1) % g.m, c) - col.at(r, c), col.k);
    return out;
}

/// Throws InvalidAssignment naming the first edge with state 0 (or out of range)
/// or the first vertex whose four states do not sum to 0 mod k.
inline void validate_assignment(const FaceEdgeStates& a) {
    const FaceGrid& g = a.grid;
    g.validate();
    if (a.states.size() != static_cast<std::size_t>(g.edge_count()))
        throw std::invalid_argument("assignment has " + std::to_string(a.states.size()) + " states, grid has " +
                                    std::to_string(g.edge_count()) + " edges");
    for (int r = 0; r < g.m; ++r)
        for (int c = 0; c < g.right_per_row(); ++c)
            if (!is_edge_state(a.right(r, c), a.k))
                throw InvalidAssignment("edge between faces (" + std::to_string(r) + "," + std::to_string(c) +
                                        ") and (" + std::to_string(r) + "," + std::to_string((c + 1) % g.p) +
                                        ") has state " + std::to_string(a.right(r, c)) +
                                        "; states must be nonzero mod k");
    for (int r = 0; r < g.down_rows(); ++r)
        for (int c = 0; c < g.p; ++c)
            if (!is_edge_state(a.down(r, c), a.k))
                throw InvalidAssignment("edge between faces (" + std::to_string(r) + "," + std::to_string(c) +
                                        ") and (" + std::to_string((r + 1) % g.m) + "," + std::to_string(c) +
                                        ") has state " + std::to_string(a.down(r, c)) +
                                        "; states must be nonzero mod k");
    const EdgeLattice lat = dual_lattice(g);
    std::vector<long long> sums(static_cast<std::size_t>(lat.vertex_count), 0);
    for (std::size_t e = 0; e < lat.edges.size(); ++e) {
        const auto& edge = lat.edges[e];
        if (edge.tail >= 0) sums[static_cast<std::size_t>(edge.tail)] += a.states[e];
        if (edge.head >= 0) sums[static_cast<std::size_t>(edge.head)] += a.k - a.states[e];
    }
    const int cols = g.wraps_cols() ? g.p : g.p - 1;
    for (int v = 0; v < lat.vertex_count; ++v)
        if (sums[static_cast<std::size_t>(v)] % a.k != 0)
            throw InvalidAssignment("vertex at corner (" + std::to_string(v / cols) + "," + std::to_string(v % cols) +
                                    ") has edge states summing to " + std::to_string(sums[static_cast<std::size_t>(v)]) +
                                    ", not 0 mod " + std::to_string(a.k));
}

namespace detail {

/// Propagates colors from face (0,0) = first_color. Returns the coloring, or the
/// description of the first edge where two propagation routes disagree.
inline std::variant<LatticeColoring, std::string> propagate_colors(const FaceEdgeStates& a, int first_color) {
    const FaceGrid& g = a.grid;
    const int k = a.k;
    std::vector<int> color(static_cast<std::size_t>(g.faces()), 0);
    std::vector<int> queue{0};
    color[0] = first_color;
    // Neighbor color: (X - A) mod k == e, colors in {1..k}.
    auto step = [k](int from, int e) { return mod_k(from - 1 + e, k) + 1; };
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        const int f = queue[qi];
        const int r = f / g.p, c = f % g.p;
        struct Move {
            int r, c;
            int delta;
            bool exists;
        };
        const Move moves[4] = {
            {r, (c + 1) % g.p, (c + 1 < g.p || g.wraps_cols()) ? a.right(r, c) : 0, c + 1 < g.p || g.wraps_cols()},
            {r, wrap(c - 1, g.p), (c > 0 || g.wraps_cols()) ? k - a.right(r, wrap(c - 1, g.p)) : 0,
             c > 0 || g.wraps_cols()},
            {(r + 1) % g.m, c, (r + 1 < g.m || g.wraps_rows()) ? a.down(r, c) : 0, r + 1 < g.m || g.wraps_rows()},
            {wrap(r - 1, g.m), c, (r > 0 || g.wraps_rows()) ? k - a.down(wrap(r - 1, g.m), c) : 0,
             r > 0 || g.wraps_rows()},
        };
        for (const auto& mv : moves) {
            if (!mv.exists) continue;
            const int nf = g.face(mv.r, mv.c);
            const int want = step(color[static_cast<std::size_t>(f)], mv.delta);
            if (color[static_cast<std::size_t>(nf)] == 0) {
                color[static_cast<std::size_t>(nf)] = want;
                queue.push_back(nf);
            } else if (color[static_cast<std::size_t>(nf)] != want) {
                return "edge between faces (" + std::to_string(r) + "," + std::to_string(c) + ") and (" +
                       std::to_string(mv.r) + "," + std::to_string(mv.c) +
                       ") closes a loop with nonzero total state; no coloring exists";
            }
        }
    }
    return LatticeColoring{k, g, std::move(color)};
}

}  // namespace detail

/// True when every closed loop of faces (including loops around the periodic
/// directions) has zero total state, i.e. the assignment lifts to colorings.
inline bool lifts_to_coloring(const FaceEdgeStates& a) {
    return std::holds_alternative<LatticeColoring>(detail::propagate_colors(a, 1));
}

/// The k face colorings inducing an admissible edge-state assignment, ordered by
/// the color of face (0, 0).
inline std::vector<LatticeColoring> edgestates_to_colorings(const FaceEdgeStates& a) {
    require_valid_k(a.k);
    validate_assignment(a);
    std::vector<LatticeColoring> out;
    for (int first = 1; first <= a.k; ++first) {
        auto res = detail::propagate_colors(a, first);
        if (auto* err = std::get_if<std::string>(&res)) throw InvalidAssignment(*err);
        out.push_back(std::move(std::get<LatticeColoring>(res)));
    }
    return out;
}

struct SearchBudget {
    /// Upper bound on the estimated number of search leaves.
    double max_leaves = 2e9;
};

/// Proper k-colorings of the face grid by backtracking in row-major order.
inline BigInt count_colorings(const FaceGrid& g, int k, const SearchBudget& budget = {}) {
    require_valid_k(k);
    g.validate();
    const double leaves = k * std::pow(static_cast<double>(k - 1), g.faces() - 1);
    if (leaves > budget.max_leaves)
        throw BudgetExceeded("coloring search on " + std::to_string(g.m) + "x" + std::to_string(g.p) +
                             " faces with k=" + std::to_string(k) + " exceeds the search budget");
    // Constraints against faces earlier in row-major order.
    std::vector<std::vector<int>> earlier(static_cast<std::size_t>(g.faces()));
    auto link = [&](int f1, int f2) {
        if (f1 == f2) {
            earlier[static_cast<std::size_t>(f1)].push_back(f1);
            return;
        }
        const int hi = std::max(f1, f2), lo = std::min(f1, f2);
        earlier[static_cast<std::size_t>(hi)].push_back(lo);
    };
    for (int r = 0; r < g.m; ++r)
        for (int c = 0; c < g.p; ++c) {
            if (c + 1 < g.p || g.wraps_cols()) link(g.face(r, c), g.face(r, (c + 1) % g.p));
            if (r + 1 < g.m || g.wraps_rows()) link(g.face(r, c), g.face((r + 1) % g.m, c));
        }
    for (int f = 0; f < g.faces(); ++f)
        for (int n : earlier[static_cast<std::size_t>(f)])
            if (n == f) return 0;

    std::vector<int> color(static_cast<std::size_t>(g.faces()), -1);
    std::uint64_t count = 0;
    std::function<void(int)> go = [&](int f) {
        if (f == g.faces()) {
            ++count;
            return;
        }
        for (int c = 0; c < k; ++c) {
            bool ok = true;
            for (int n : earlier[static_cast<std::size_t>(f)])
                if (color[static_cast<std::size_t>(n)] == c) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            color[static_cast<std::size_t>(f)] = c;
            go(f + 1);
        }
        color[static_cast<std::size_t>(f)] = -1;
    };
    go(0);
    return BigInt(count);
}

namespace detail {

/// Depth-first enumeration of admissible edge states. Edges are visited in an
/// order that completes vertices early; the last edge of a vertex is forced by
/// the vertex rule. When skip_free is set, edges touching no vertex are left out
/// and the caller accounts for them.
class EdgeStateSearch {
public:
    EdgeStateSearch(const EdgeLattice& lat, int k, bool skip_free) : lat_(lat), k_(k) {
        std::vector<std::vector<int>> incident(static_cast<std::size_t>(lat.vertex_count));
        for (std::size_t e = 0; e < lat.edges.size(); ++e) {
            const auto& ed = lat.edges[e];
            if (ed.tail >= 0) incident[static_cast<std::size_t>(ed.tail)].push_back(static_cast<int>(e));
            if (ed.head >= 0 && ed.head != ed.tail)
                incident[static_cast<std::size_t>(ed.head)].push_back(static_cast<int>(e));
            if (ed.tail < 0 && ed.head < 0) ++free_edges_;
        }
        std::vector<char> placed(lat.edges.size(), 0);
        for (int v = 0; v < lat.vertex_count; ++v)
            for (int e : incident[static_cast<std::size_t>(v)])
                if (!placed[static_cast<std::size_t>(e)]) {
                    placed[static_cast<std::size_t>(e)] = 1;
                    order_.push_back(e);
                }
        if (!skip_free)
            for (std::size_t e = 0; e < lat.edges.size(); ++e)
                if (!placed[e]) order_.push_back(static_cast<int>(e));
        std::vector<int> last(static_cast<std::size_t>(lat.vertex_count), -1);
        for (std::size_t t = 0; t < order_.size(); ++t) {
            const auto& ed = lat.edges[static_cast<std::size_t>(order_[t])];
            if (ed.tail >= 0) last[static_cast<std::size_t>(ed.tail)] = static_cast<int>(t);
            if (ed.head >= 0) last[static_cast<std::size_t>(ed.head)] = static_cast<int>(t);
        }
        completes_.resize(order_.size());
        for (int v = 0; v < lat.vertex_count; ++v)
            if (last[static_cast<std::size_t>(v)] >= 0)
                completes_[static_cast<std::size_t>(last[static_cast<std::size_t>(v)])].push_back(v);
        // Isolated vertices have an empty sum, which is admissible.
    }

    int free_edges() const noexcept { return free_edges_; }
    std::size_t searched_edges() const noexcept { return order_.size(); }

    template <class Visit>
    void run(Visit&& visit) {
        states_.assign(lat_.edges.size(), 0);
        sums_.assign(static_cast<std::size_t>(lat_.vertex_count), 0);
        go(0, visit);
    }

private:
    void apply(const LatticeEdge& ed, int s, int sign) {
        if (ed.tail >= 0) sums_[static_cast<std::size_t>(ed.tail)] += sign * s;
        if (ed.head >= 0) sums_[static_cast<std::size_t>(ed.head)] += sign * (k_ - s);
    }

    template <class Visit>
    void go(std::size_t t, Visit& visit) {
        if (t == order_.size()) {
            visit(std::span<const EdgeState>(states_));
            return;
        }
        const int e = order_[t];
        const auto& ed = lat_.edges[static_cast<std::size_t>(e)];
        const auto& done = completes_[t];
        int lo = 1, hi = k_ - 1;
        if (!done.empty() && ed.tail != ed.head) {
            const int v = done.front();
            const long long partial = sums_[static_cast<std::size_t>(v)];
            const int s = ed.tail == v ? mod_k(-partial, k_) : mod_k(partial, k_);
            if (s == 0) return;
            lo = hi = s;
        }
        for (int s = lo; s <= hi; ++s) {
            apply(ed, s, +1);
            bool ok = true;
            for (int v : done)
                if (sums_[static_cast<std::size_t>(v)] % k_ != 0) {
                    ok = false;
                    break;
                }
            if (ok) {
                states_[static_cast<std::size_t>(e)] = s;
                go(t + 1, visit);
            }
            apply(ed, s, -1);
        }
    }

    const EdgeLattice& lat_;
    int k_;
    int free_edges_ = 0;
    std::vector<int> order_;
    std::vector<std::vector<int>> completes_;
    std::vector<EdgeState> states_;
    std::vector<long long> sums_;
};

}  // namespace detail

/// Admissible edge-state assignments of a lattice; dangling edges are free.
inline BigInt count_edge_states(const EdgeLattice& lat, int k, const SearchBudget& budget = {}) {
    require_valid_k(k);
    detail::EdgeStateSearch search(lat, k, /*skip_free=*/true);
    const double leaves =
        std::pow(static_cast<double>(k - 1),
                 std::max(0, static_cast<int>(search.searched_edges()) - lat.vertex_count));
    if (leaves > budget.max_leaves) throw BudgetExceeded("edge-state search exceeds the search budget");
    std::uint64_t count = 0;
    search.run([&](std::span<const EdgeState>) { ++count; });
    return BigInt(count) * ipow(k - 1, static_cast<unsigned>(search.free_edges()));
}

/// Calls visit(states) for every admissible assignment, states in lattice edge order.
inline void for_each_edge_state(const EdgeLattice& lat, int k,
                                const std::function<void(std::span<const EdgeState>)>& visit,
                                const SearchBudget& budget = {}) {
    require_valid_k(k);
    detail::EdgeStateSearch search(lat, k, /*skip_free=*/false);
    const double leaves = std::pow(static_cast<double>(k - 1),
                                   std::max(0, static_cast<int>(lat.edges.size()) - lat.vertex_count));
    if (leaves > budget.max_leaves) throw BudgetExceeded("edge-state enumeration exceeds the search budget");
    search.run(visit);
}

/// Admissible assignments of the grid's edges that lift to colorings.
inline BigInt count_liftable_edge_states(const FaceGrid& g, int k, const SearchBudget& budget = {}) {
    std::uint64_t count = 0;
    FaceEdgeStates a{g, k, {}};
    for_each_edge_state(
        dual_lattice(g), k,
        [&](std::span<const EdgeState> s) {
            a.states.assign(s.begin(), s.end());
            if (lifts_to_coloring(a)) ++count;
        },
        budget);
    return BigInt(count);
}

enum class CountTarget { colorings, edge_states };

inline std::string_view to_string(CountTarget w) { return w == CountTarget::colorings ? "colorings" : "edge-states"; }

inline CountTarget parse_count_target(std::string_view s) {
    if (s == "colorings") return CountTarget::colorings;
    if (s == "edge-states") return CountTarget::edge_states;
    throw std::invalid_argument("unknown count target '" + std::string(s) + "' (expected colorings or edge-states)");
}

/// Exhaustive count. Colorings are counted on an m x p face grid; edge states on
/// the transfer-matrix lattice described by edge_state_grid.
inline BigInt brute_force_count(int m, int p, int k, Boundary boundary, CountTarget what,
                                const SearchBudget& budget = {}) {
    require_valid_k(k);
    if (what == CountTarget::colorings) return count_colorings(FaceGrid{m, p, boundary}, k, budget);
    return count_edge_states(dual_lattice(edge_state_grid(m, p, boundary)), k, budget);
}

}  // namespace kcolor
