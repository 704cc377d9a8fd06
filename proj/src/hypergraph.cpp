#include "eehm/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "eehm/errors.hpp"

namespace eehm {

Ratio Ratio::of(long long n, long long d) {
    if (d <= 0) throw std::invalid_argument("ratio denominator must be positive");
    long long g = std::gcd(n, d);
    if (g == 0) g = 1;
    return Ratio{n / g, d / g};
}

Hypergraph::Hypergraph(std::size_t vertices, BitMatrix incidence)
    : vertices_(vertices), incidence_(std::move(incidence)) {
    if (incidence_.rows() > 0 && incidence_.cols() != vertices_)
        throw std::invalid_argument("incidence column count must equal vertex count");
    if (incidence_.rows() == 0) incidence_ = BitMatrix(0, vertices_);
    for (std::size_t e = 0; e < incidence_.rows(); ++e)
        if (incidence_.row_weight(e) == 0)
            throw std::invalid_argument("zero-weight edge row");
}

Hypergraph Hypergraph::from_edges(std::size_t vertices,
                                  const std::vector<std::vector<std::size_t>>& edges) {
    BitMatrix m(edges.size(), vertices);
    for (std::size_t e = 0; e < edges.size(); ++e)
        for (std::size_t v : edges[e]) {
            if (v >= vertices) throw std::invalid_argument("edge vertex out of range");
            m.set(e, v, true);
        }
    return Hypergraph(vertices, std::move(m));
}

Hypergraph Hypergraph::cycle(std::size_t n) {
    std::vector<std::vector<std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n});
    return from_edges(n, edges);
}

void Hypergraph::add_edge(std::size_t u, std::size_t v) {
    if (u >= vertices_ || v >= vertices_ || u == v)
        throw std::invalid_argument("bad edge endpoints");
    BitVec row(vertices_);
    row.set(u, true);
    row.set(v, true);
    incidence_.append_row(row);
}

std::vector<std::size_t> boundary(const Hypergraph& g, std::span<const std::size_t> s) {
    BitVec ind(g.vertex_count());
    for (std::size_t v : s) {
        if (v >= g.vertex_count()) throw std::invalid_argument("vertex out of range");
        ind.set(v, true);
    }
    return g.incidence().mul_vec(ind).ones();
}

namespace {

struct CutSearch {
    Ratio h;
    std::uint32_t mask = 0;
};

// a < b as sorted vertex lists (prefix-smaller): decided by the lowest
// differing vertex, which belongs to the smaller set.
bool mask_less(std::uint32_t a, std::uint32_t b) {
    std::uint32_t d = a ^ b;
    if (d == 0) return false;
    return (a >> std::countr_zero(d)) & 1u;
}

CutSearch sparsest_cut_impl(const Hypergraph& g, const CheegerOptions& opts) {
    std::size_t nv = g.vertex_count();
    if (nv < 2) throw std::invalid_argument("cheeger needs at least two vertices");
    if (nv > opts.vertex_cap)
        throw resource_limit_error("cheeger enumeration over " + std::to_string(nv) +
                                   " vertices exceeds cap " + std::to_string(opts.vertex_cap));

    std::size_t ne = g.edge_count();
    std::vector<std::uint32_t> edge_mask(ne, 0);
    std::vector<std::vector<std::size_t>> incident(nv);
    for (std::size_t e = 0; e < ne; ++e)
        for (std::size_t v : g.edge_vertices(e)) {
            edge_mask[e] |= 1u << v;
            incident[v].push_back(e);
        }

    std::vector<std::uint8_t> parity(ne, 0);
    std::size_t bd = 0;          // |∂S| for the current subset
    std::uint32_t mask = 0;
    long long best_num = -1, best_den = 1;   // invalid until first candidate
    std::uint32_t best_mask = 0;

    const std::uint64_t end = 1ull << nv;
    for (std::uint64_t i = 1; i < end; ++i) {
        std::size_t v = static_cast<std::size_t>(std::countr_zero(i));
        mask ^= 1u << v;
        for (std::size_t e : incident[v]) {
            parity[e] ^= 1;
            bd += parity[e] ? 1 : -1;
        }
        std::size_t size = static_cast<std::size_t>(std::popcount(mask));
        if (size == 0 || 2 * size > nv) continue;
        long long num = static_cast<long long>(bd);
        long long den = static_cast<long long>(size);
        if (best_num < 0 || num * best_den < best_num * den ||
            (num * best_den == best_num * den && mask_less(mask, best_mask))) {
            best_num = num;
            best_den = den;
            best_mask = mask;
        }
    }
    return {Ratio::of(best_num, best_den), best_mask};
}

} // namespace

Ratio cheeger(const Hypergraph& g, const CheegerOptions& opts) {
    return sparsest_cut_impl(g, opts).h;
}

std::vector<std::size_t> sparsest_cut(const Hypergraph& g, const CheegerOptions& opts) {
    std::uint32_t mask = sparsest_cut_impl(g, opts).mask;
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if ((mask >> v) & 1u) out.push_back(v);
    return out;
}

ExpandResult expand_edges(const Hypergraph& g, const CheegerOptions& opts) {
    ExpandResult out{g, {}, {}};
    const Ratio one{1, 1};
    std::size_t guard = 16 * g.vertex_count() * g.vertex_count() + 64;
    while (cheeger(out.graph, opts) < one) {
        if (out.added_edges.size() > guard)
            throw resource_limit_error("edge expansion failed to converge");
        std::vector<std::size_t> cut = sparsest_cut(out.graph, opts);
        std::vector<bool> in_cut(out.graph.vertex_count(), false);
        for (std::size_t v : cut) in_cut[v] = true;

        auto min_degree_vertices = [&](bool side) {
            std::size_t best = SIZE_MAX;
            std::vector<std::size_t> vs;
            for (std::size_t v = 0; v < out.graph.vertex_count(); ++v) {
                if (in_cut[v] != side) continue;
                std::size_t d = out.graph.degree(v);
                if (d < best) {
                    best = d;
                    vs.assign(1, v);
                } else if (d == best) {
                    vs.push_back(v);
                }
            }
            return vs;
        };
        std::vector<std::size_t> inside = min_degree_vertices(true);
        std::vector<std::size_t> outside = min_degree_vertices(false);

        bool have_best = false;
        Ratio best_h{0, 1};
        std::pair<std::size_t, std::size_t> best_edge{0, 0};
        for (std::size_t v1 : inside)
            for (std::size_t v2 : outside) {
                Hypergraph cand = out.graph;
                cand.add_edge(v1, v2);
                Ratio h = cheeger(cand, opts);
                if (!have_best || h > best_h) {
                    have_best = true;
                    best_h = h;
                    best_edge = {v1, v2};
                }
            }
        out.graph.add_edge(best_edge.first, best_edge.second);
        out.added_edges.push_back(best_edge);
        out.cheeger_trace.push_back(best_h);
    }
    return out;
}

namespace {

// All perfect matchings of `verts`, in lexicographic order.
void enumerate_matchings(std::vector<std::size_t>& verts, std::vector<bool>& used,
                         std::vector<std::pair<std::size_t, std::size_t>>& cur,
                         std::vector<std::vector<std::pair<std::size_t, std::size_t>>>& out) {
    std::size_t first = verts.size();
    for (std::size_t i = 0; i < verts.size(); ++i)
        if (!used[i]) {
            first = i;
            break;
        }
    if (first == verts.size()) {
        out.push_back(cur);
        return;
    }
    used[first] = true;
    for (std::size_t j = first + 1; j < verts.size(); ++j) {
        if (used[j]) continue;
        used[j] = true;
        cur.emplace_back(verts[first], verts[j]);
        enumerate_matchings(verts, used, cur, out);
        cur.pop_back();
        used[j] = false;
    }
    used[first] = false;
}

} // namespace

HyperedgeExpansionResult expand_hyperedges(const Hypergraph& g, const CheegerOptions& opts) {
    std::vector<BitVec> rows;
    std::vector<std::size_t> source;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        rows.push_back(g.incidence().row(e));
        source.push_back(e);
    }

    for (std::size_t e = 0; e < g.edge_count(); ++e) {
        std::vector<std::size_t> verts = g.edge_vertices(e);
        if (verts.size() <= 2) continue;
        if (verts.size() % 2 != 0)
            throw std::invalid_argument("hyperedge of odd weight cannot be expanded");

        // locate the row for edge e in the current working set
        std::size_t pos = 0;
        while (source[pos] != e) ++pos;

        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> matchings;
        std::vector<bool> used(verts.size(), false);
        std::vector<std::pair<std::size_t, std::size_t>> scratch;
        enumerate_matchings(verts, used, scratch, matchings);

        bool have_best = false;
        Ratio best_h{0, 1};
        std::vector<std::pair<std::size_t, std::size_t>> best;
        for (const auto& m : matchings) {
            std::vector<BitVec> cand_rows;
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (i != pos) cand_rows.push_back(rows[i]);
            for (auto [u, v] : m) {
                BitVec r(g.vertex_count());
                r.set(u, true);
                r.set(v, true);
                cand_rows.push_back(r);
            }
            Hypergraph cand(g.vertex_count(),
                            BitMatrix::from_row_vecs(cand_rows, g.vertex_count()));
            Ratio h = cheeger(cand, opts);
            if (!have_best || h > best_h) {
                have_best = true;
                best_h = h;
                best = m;
            }
        }

        rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(pos));
        source.erase(source.begin() + static_cast<std::ptrdiff_t>(pos));
        for (auto [u, v] : best) {
            BitVec r(g.vertex_count());
            r.set(u, true);
            r.set(v, true);
            rows.push_back(r);
            source.push_back(e);
        }
    }
    return {Hypergraph(g.vertex_count(), BitMatrix::from_row_vecs(rows, g.vertex_count())),
            std::move(source)};
}

BitMatrix cycle_basis(const Hypergraph& g) {
    return nullspace(g.incidence().transposed());
}

namespace {

struct WorkRow {
    std::vector<std::size_t> edges;
    bool fresh;
};

// Orders the edges of a simple cycle into a vertex ring; empty when the row
// is not a single closed cycle with all interior degrees equal to two.
std::vector<std::size_t> trace_ring(const Hypergraph& g, const std::vector<std::size_t>& edges) {
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(g.vertex_count());
    for (std::size_t e : edges) {
        auto vs = g.edge_vertices(e);
        if (vs.size() != 2) return {};
        adj[vs[0]].push_back({vs[1], e});
        adj[vs[1]].push_back({vs[0], e});
    }
    std::size_t start = SIZE_MAX;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (adj[v].empty()) continue;
        if (adj[v].size() != 2) return {};
        if (start == SIZE_MAX) start = v;
    }
    if (start == SIZE_MAX) return {};
    std::vector<std::size_t> ring{start};
    std::size_t prev_edge = SIZE_MAX;
    std::size_t cur = start;
    while (true) {
        auto [next, via] = adj[cur][0].second != prev_edge ? adj[cur][0] : adj[cur][1];
        if (next == start) {
            prev_edge = via;
            break;
        }
        ring.push_back(next);
        prev_edge = via;
        cur = next;
    }
    if (ring.size() != edges.size()) return {};   // multiple components
    return ring;
}

} // namespace

CellulationResult cellulate(const Hypergraph& g, const BitMatrix& cycles,
                            std::size_t max_cycle_weight, std::size_t max_degree) {
    // cycle rows must live in ker Mᵀ
    for (std::size_t r = 0; r < cycles.rows(); ++r)
        if (g.incidence().transposed().mul_vec(cycles.row(r)).any())
            throw std::invalid_argument("cycle row is not a cycle of the graph");

    Hypergraph work = g;
    std::deque<WorkRow> queue;
    for (std::size_t r = 0; r < cycles.rows(); ++r)
        queue.push_back({cycles.row(r).ones(), true});

    std::vector<std::vector<std::size_t>> done;
    std::size_t chords = 0;
    bool ok = true;

    while (!queue.empty()) {
        WorkRow row = queue.front();
        queue.pop_front();
        std::size_t w = row.edges.size();
        bool trigger = row.fresh ? (w >= max_cycle_weight) : (w > max_cycle_weight);
        if (!trigger) {
            done.push_back(row.edges);
            continue;
        }

        std::vector<std::size_t> ring = trace_ring(work, row.edges);
        if (ring.empty()) {
            done.push_back(row.edges);
            if (w > max_cycle_weight) ok = false;
            continue;
        }

        // ring edge r connects ring[r] and ring[r+1 mod m]
        std::size_t m = ring.size();
        std::vector<std::size_t> ring_edges(m);
        for (std::size_t i = 0; i < m; ++i) {
            std::size_t u = ring[i], v = ring[(i + 1) % m];
            for (std::size_t e : row.edges) {
                auto vs = work.edge_vertices(e);
                if ((vs[0] == u && vs[1] == v) || (vs[0] == v && vs[1] == u)) {
                    ring_edges[i] = e;
                    break;
                }
            }
        }

        bool have_best = false;
        std::size_t best_score = 0;
        std::pair<std::size_t, std::size_t> best_pos{0, 0};
        for (std::size_t i = 0; i < m; ++i) {
            if (work.degree(ring[i]) >= max_degree) continue;
            for (std::size_t j = i + 2; j < m; ++j) {
                if (i == 0 && j == m - 1) continue;   // ring-adjacent
                if (work.degree(ring[j]) >= max_degree) continue;
                std::size_t span = j - i;
                std::size_t part1 = span + 1, part2 = m - span + 1;
                std::size_t score = std::max(part1, part2);
                auto verts = std::minmax(ring[i], ring[j]);
                auto best_verts = std::minmax(ring[best_pos.first], ring[best_pos.second]);
                if (!have_best || score < best_score ||
                    (score == best_score && verts < best_verts)) {
                    have_best = true;
                    best_score = score;
                    best_pos = {i, j};
                }
            }
        }
        if (!have_best) {
            done.push_back(row.edges);
            if (w > max_cycle_weight) ok = false;
            continue;
        }

        auto [i, j] = best_pos;
        std::size_t chord = work.edge_count();
        work.add_edge(ring[i], ring[j]);
        ++chords;
        std::vector<std::size_t> piece1{chord}, piece2{chord};
        for (std::size_t p = i; p < j; ++p) piece1.push_back(ring_edges[p]);
        for (std::size_t p = j; p < m; ++p) piece2.push_back(ring_edges[p]);
        for (std::size_t p = 0; p < i; ++p) piece2.push_back(ring_edges[p]);
        queue.push_front({std::move(piece2), false});
        queue.push_front({std::move(piece1), false});
    }

    BitMatrix out_cycles(done.size(), work.edge_count());
    for (std::size_t r = 0; r < done.size(); ++r)
        for (std::size_t e : done[r]) out_cycles.set(r, e, true);
    for (std::size_t r = 0; r < out_cycles.rows(); ++r)
        if (out_cycles.row_weight(r) > max_cycle_weight) ok = false;
    return {std::move(work), std::move(out_cycles), chords, ok};
}

} // namespace eehm
