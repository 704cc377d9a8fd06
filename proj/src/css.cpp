#include "eehm/css.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "eehm/errors.hpp"

namespace eehm {

CssCode::CssCode(BitMatrix hx_, BitMatrix hz_) : hx(std::move(hx_)), hz(std::move(hz_)) {
    if (hx.cols() != hz.cols()) throw std::invalid_argument("hx and hz must act on the same qubits");
    if (!hz.mul(hx.transposed()).is_zero())
        throw std::invalid_argument("stabilizer matrices do not commute (hz hxT != 0)");
}

std::size_t PauliOperator::weight() const {
    std::size_t c = 0;
    auto xw = x.words();
    auto zw = z.words();
    for (std::size_t i = 0; i < xw.size(); ++i) c += std::popcount(xw[i] | zw[i]);
    return c;
}

bool symplectic_commutes(const PauliOperator& a, const PauliOperator& b) {
    if (a.n() != b.n()) throw std::invalid_argument("operator length mismatch");
    return !(a.x.dot(b.z) ^ a.z.dot(b.x));
}

SymplecticCode::SymplecticCode(BitMatrix stab_, std::vector<int> signs_)
    : stab(std::move(stab_)), signs(std::move(signs_)) {
    if (stab.cols() % 2 != 0) throw std::invalid_argument("symplectic matrix needs 2n columns");
    if (signs.size() != stab.rows()) throw std::invalid_argument("one sign per generator required");
    for (std::size_t i = 0; i < stab.rows(); ++i)
        for (std::size_t j = i + 1; j < stab.rows(); ++j)
            if (!symplectic_commutes(generator(i), generator(j)))
                throw std::invalid_argument("generators do not commute symplectically");
}

PauliOperator SymplecticCode::generator(std::size_t r) const {
    std::size_t half = n();
    PauliOperator p = PauliOperator::identity(half);
    for (std::size_t c = 0; c < half; ++c) {
        if (stab.get(r, c)) p.x.set(c, true);
        if (stab.get(r, half + c)) p.z.set(c, true);
    }
    return p;
}

std::size_t SymplecticCode::k() const { return n() - rank(stab); }

std::pair<std::size_t, std::size_t> params(const CssCode& code) {
    return {code.n(), code.n() - rank(code.hx) - rank(code.hz)};
}

namespace {

std::size_t total_ones(const BitMatrix& m) {
    std::size_t t = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) t += m.row_weight(r);
    return t;
}

} // namespace

WeightProfile weight_profile(const CssCode& code) {
    WeightProfile p;
    if (code.n() == 0) return p;
    p.q_x = code.hx.max_col_weight();
    p.w_x = code.hx.max_row_weight();
    p.q_z = code.hz.max_col_weight();
    p.w_z = code.hz.max_row_weight();
    BitMatrix stacked = vstack(code.hx, code.hz);
    p.q = stacked.max_col_weight();
    p.w = stacked.max_row_weight();

    double ox = static_cast<double>(total_ones(code.hx));
    double oz = static_cast<double>(total_ones(code.hz));
    if (code.hx.rows()) p.w_x_avg = ox / static_cast<double>(code.hx.rows());
    if (code.hz.rows()) p.w_z_avg = oz / static_cast<double>(code.hz.rows());
    p.q_x_avg = ox / static_cast<double>(code.n());
    p.q_z_avg = oz / static_cast<double>(code.n());
    p.q_avg = (ox + oz) / static_cast<double>(code.n());
    if (stacked.rows()) p.w_avg = (ox + oz) / static_cast<double>(stacked.rows());
    return p;
}

namespace {

// Extends the row space of `seed_rref` by kernel rows, returning the selected
// original kernel rows (coset representatives independent of the seed span).
std::vector<BitVec> coset_representatives(const BitMatrix& kernel, const Rref& seed_rref) {
    std::vector<BitVec> reducers;
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < seed_rref.pivots.size(); ++i) {
        reducers.push_back(seed_rref.mat.row(i));
        pivots.push_back(seed_rref.pivots[i]);
    }
    std::vector<BitVec> picked;
    for (std::size_t r = 0; r < kernel.rows(); ++r) {
        BitVec v = kernel.row(r);
        for (std::size_t i = 0; i < reducers.size(); ++i)
            if (v.get(pivots[i])) v ^= reducers[i];
        if (!v.any()) continue;
        picked.push_back(kernel.row(r));
        std::size_t piv = v.ones().front();
        for (auto& red : reducers)
            if (red.get(piv)) red ^= v;
        reducers.push_back(v);
        pivots.push_back(piv);
    }
    return picked;
}

} // namespace

BitMatrix logical_basis(const CssCode& code, Sector sector) {
    const BitMatrix& h_opp = code.checks(opposite(sector));
    const BitMatrix& h_same = code.checks(sector);
    auto reps = coset_representatives(nullspace(h_opp), rref(h_same));
    BitMatrix out(0, code.n());
    for (const auto& v : reps) out.append_row(v);
    return out;
}

namespace {

// Gray-code sweep over all combinations of basis rows with the given prefix
// fixed; returns the minimum weight over states with a nonzero logical part.
std::size_t sweep_chunk(const std::vector<BitVec>& basis, std::uint64_t logical_mask,
                        std::uint64_t prefix_bits, std::size_t suffix_len, std::size_t n) {
    BitVec cur(n);
    std::uint64_t combo = 0;
    for (std::size_t j = 0; suffix_len + j < basis.size(); ++j)
        if ((prefix_bits >> j) & 1) {
            cur ^= basis[suffix_len + j];
            combo |= 1ull << (suffix_len + j);
        }
    std::size_t best = kInfiniteDistance;
    if (combo & logical_mask) best = cur.weight();
    const std::uint64_t end = 1ull << suffix_len;
    for (std::uint64_t i = 1; i < end; ++i) {
        std::size_t p = static_cast<std::size_t>(std::countr_zero(i));
        cur ^= basis[p];
        combo ^= 1ull << p;
        if (combo & logical_mask) best = std::min(best, cur.weight());
    }
    return best;
}

std::size_t enumerate_min_weight(const std::vector<BitVec>& basis, std::size_t n_logical,
                                 std::size_t n, unsigned workers) {
    if (n_logical == 0) return kInfiniteDistance;
    std::size_t dim = basis.size();
    std::uint64_t logical_mask = n_logical >= 64 ? ~0ull : ((1ull << n_logical) - 1);
    if (workers <= 1 || dim < 12) return sweep_chunk(basis, logical_mask, 0, dim, n);

    std::size_t prefix_len = std::min<std::size_t>(6, dim - 8);
    std::size_t suffix_len = dim - prefix_len;
    std::size_t chunks = std::size_t(1) << prefix_len;
    std::vector<std::size_t> results(chunks, kInfiniteDistance);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&, w]() {
            for (std::size_t c = w; c < chunks; c += workers)
                results[c] = sweep_chunk(basis, logical_mask, c, suffix_len, n);
        });
    for (auto& t : pool) t.join();
    std::size_t best = kInfiniteDistance;
    for (std::size_t r : results) best = std::min(best, r);
    return best;
}

} // namespace

std::size_t exact_distance(const CssCode& code, Sector sector,
                           const std::optional<BitMatrix>& gauge_rows,
                           const DistanceOptions& opts) {
    const BitMatrix& h_opp = code.checks(opposite(sector));
    BitMatrix modded = code.checks(sector);
    if (gauge_rows) {
        if (gauge_rows->cols() != modded.cols())
            throw std::invalid_argument("gauge row length mismatch");
        for (std::size_t r = 0; r < gauge_rows->rows(); ++r) {
            if (h_opp.mul_vec(gauge_rows->row(r)).any())
                throw std::invalid_argument("gauge row is not in the opposing kernel");
            modded.append_row(gauge_rows->row(r));
        }
    }
    Rref stab = rref(std::move(modded));

    std::vector<BitVec> basis = coset_representatives(nullspace(h_opp), stab);
    std::size_t n_logical = basis.size();
    for (std::size_t i = 0; i < stab.pivots.size(); ++i) basis.push_back(stab.mat.row(i));
    if (basis.size() > opts.cap)
        throw resource_limit_error("distance search space exceeds cap: dim " +
                                   std::to_string(basis.size()));
    return enumerate_min_weight(basis, n_logical, code.n(), opts.workers);
}

std::size_t distance_upper_bound(const CssCode& code, Sector sector, std::size_t trials,
                                 std::uint64_t seed, unsigned workers) {
    const BitMatrix& h_opp = code.checks(opposite(sector));
    const BitMatrix& h_same = code.checks(sector);
    std::size_t n = code.n();
    if (params(code).second == 0) return kInfiniteDistance;
    Rref stab = rref(h_same);

    if (workers == 0) workers = 1;
    std::vector<std::size_t> best(workers, kInfiniteDistance);
    auto run_worker = [&](unsigned w) {
        Rng rng(seed ^ (0x9e3779b97f4a7c15ull * (w + 1)));
        std::size_t my_trials = trials / workers + (w < trials % workers ? 1 : 0);
        std::vector<std::size_t> perm(n);
        for (std::size_t t = 0; t < my_trials; ++t) {
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
            BitMatrix kernel = nullspace(h_opp.select_cols(perm));
            for (std::size_t r = 0; r < kernel.rows(); ++r) {
                std::size_t wgt = kernel.row_weight(r);
                if (wgt >= best[w]) continue;
                BitVec cand(n);
                for (std::size_t c = 0; c < n; ++c)
                    if (kernel.get(r, c)) cand.set(perm[c], true);
                if (!row_space_contains(stab, cand)) best[w] = wgt;
            }
        }
    };
    if (workers == 1) {
        run_worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run_worker, w);
        for (auto& t : pool) t.join();
    }
    std::size_t out = kInfiniteDistance;
    for (std::size_t b : best) out = std::min(out, b);
    return out;
}

std::size_t symplectic_exact_distance(const SymplecticCode& code, std::size_t cap) {
    std::size_t n = code.n();
    // Commutation constraint: candidates (x|z) orthogonal to swapped-half rows.
    BitMatrix swapped(code.stab.rows(), 2 * n);
    for (std::size_t r = 0; r < code.stab.rows(); ++r)
        for (std::size_t c = 0; c < n; ++c) {
            if (code.stab.get(r, n + c)) swapped.set(r, c, true);
            if (code.stab.get(r, c)) swapped.set(r, n + c, true);
        }
    Rref group = rref(code.stab);
    std::vector<BitVec> basis = coset_representatives(nullspace(swapped), group);
    std::size_t n_logical = basis.size();
    if (n_logical == 0) return kInfiniteDistance;
    for (std::size_t i = 0; i < group.pivots.size(); ++i) basis.push_back(group.mat.row(i));
    if (basis.size() > cap)
        throw resource_limit_error("symplectic distance search space exceeds cap");

    auto pauli_weight = [&](const BitVec& v) {
        std::size_t c = 0;
        for (std::size_t q = 0; q < n; ++q)
            if (v.get(q) || v.get(n + q)) ++c;
        return c;
    };

    BitVec cur(2 * n);
    std::uint64_t logical_mask = n_logical >= 64 ? ~0ull : ((1ull << n_logical) - 1);
    std::uint64_t combo = 0;
    std::size_t best = kInfiniteDistance;
    const std::uint64_t end = 1ull << basis.size();
    for (std::uint64_t i = 1; i < end; ++i) {
        std::size_t p = static_cast<std::size_t>(std::countr_zero(i));
        cur ^= basis[p];
        combo ^= 1ull << p;
        if (combo & logical_mask) best = std::min(best, pauli_weight(cur));
    }
    return best;
}

} // namespace eehm
