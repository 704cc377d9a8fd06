#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "eehm/bitmat.hpp"

namespace eehm {

/// Exact nonnegative rational, kept in lowest terms.
struct Ratio {
    long long num = 0;
    long long den = 1;

    static Ratio of(long long n, long long d);
    friend bool operator==(const Ratio& a, const Ratio& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Ratio& a, const Ratio& b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(const Ratio& a, const Ratio& b) { return a.num * b.den <= b.num * a.den; }
    friend bool operator>(const Ratio& a, const Ratio& b) { return b < a; }
    friend bool operator>=(const Ratio& a, const Ratio& b) { return b <= a; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Hypergraph held as an edge–vertex incidence matrix (rows are edges,
/// columns are vertices). Edges may repeat; zero-weight edges are rejected.
class Hypergraph {
  public:
    Hypergraph(std::size_t vertices, BitMatrix incidence);
    static Hypergraph from_edges(std::size_t vertices,
                                 const std::vector<std::vector<std::size_t>>& edges);
    /// Cycle graph C_n.
    static Hypergraph cycle(std::size_t n);

    std::size_t vertex_count() const { return vertices_; }
    std::size_t edge_count() const { return incidence_.rows(); }
    const BitMatrix& incidence() const { return incidence_; }

    std::size_t degree(std::size_t v) const { return incidence_.col_weight(v); }
    std::vector<std::size_t> edge_vertices(std::size_t e) const { return incidence_.row(e).ones(); }

    void add_edge(std::size_t u, std::size_t v);

  private:
    std::size_t vertices_;
    BitMatrix incidence_;
};

struct CheegerOptions {
    std::size_t vertex_cap = 24;   // exhaustive enumeration limit
};

/// Edges with odd intersection with s.
std::vector<std::size_t> boundary(const Hypergraph& g, std::span<const std::size_t> s);

/// min |∂S|/|S| over nonempty S with |S| ≤ |V|/2, by exhaustive enumeration.
Ratio cheeger(const Hypergraph& g, const CheegerOptions& opts = {});

/// A subset achieving the Cheeger minimum; ties break to the
/// lexicographically smallest sorted vertex list.
std::vector<std::size_t> sparsest_cut(const Hypergraph& g, const CheegerOptions& opts = {});

struct ExpandResult {
    Hypergraph graph;
    std::vector<std::pair<std::size_t, std::size_t>> added_edges;
    std::vector<Ratio> cheeger_trace;   // constant after each added edge
};

/// Greedy edge additions across sparsest cuts until the Cheeger constant
/// reaches 1. Every added edge has weight two.
ExpandResult expand_edges(const Hypergraph& g, const CheegerOptions& opts = {});

struct HyperedgeExpansionResult {
    Hypergraph graph;
    /// For each edge of the new graph, the edge of the input it replaces
    /// (identity for untouched weight-≤2 edges). Drives f₀ column duplication.
    std::vector<std::size_t> source_edge;
};

/// Replaces every edge on more than two vertices by weight/2 disjoint
/// weight-two edges covering the same vertices, choosing the perfect
/// matching that keeps the Cheeger constant highest (greedily, one
/// hyperedge at a time). Requires even edge weights.
HyperedgeExpansionResult expand_hyperedges(const Hypergraph& g, const CheegerOptions& opts = {});

/// Full-row-rank N with ker N = im M: rows span ker Mᵀ. Columns index edges.
BitMatrix cycle_basis(const Hypergraph& g);

struct CellulationResult {
    Hypergraph graph;
    BitMatrix cycles;           // updated basis over the enlarged edge set
    std::size_t chords_added = 0;
    bool within_bounds = true;  // false when some row stays above the weight bound
};

/// Adds chords inside heavy cycles to split them into smaller ones, keeping
/// every vertex degree at or below max_degree. Input rows at or above
/// max_cycle_weight get one split attempt; split pieces are only re-split
/// while strictly above the bound. Rows that are not simple cycles pass
/// through untouched.
CellulationResult cellulate(const Hypergraph& g, const BitMatrix& cycles,
                            std::size_t max_cycle_weight, std::size_t max_degree);

} // namespace eehm
