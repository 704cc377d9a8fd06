#include "eehm/chain.hpp"

#include <stdexcept>

namespace eehm {

namespace {

// Assembles a block matrix from a grid of blocks; null blocks are zero.
BitMatrix block_matrix(const std::vector<std::size_t>& row_dims,
                       const std::vector<std::size_t>& col_dims,
                       const std::vector<std::vector<const BitMatrix*>>& blocks) {
    std::size_t rows = 0, cols = 0;
    for (auto r : row_dims) rows += r;
    for (auto c : col_dims) cols += c;
    BitMatrix out(rows, cols);
    std::size_t r0 = 0;
    for (std::size_t bi = 0; bi < row_dims.size(); ++bi) {
        std::size_t c0 = 0;
        for (std::size_t bj = 0; bj < col_dims.size(); ++bj) {
            const BitMatrix* blk = blocks[bi][bj];
            if (blk) {
                if (blk->rows() != row_dims[bi] || blk->cols() != col_dims[bj])
                    throw std::invalid_argument("block shape mismatch");
                for (std::size_t r = 0; r < blk->rows(); ++r)
                    for (std::size_t c = 0; c < blk->cols(); ++c)
                        if (blk->get(r, c)) out.set(r0 + r, c0 + c, true);
            }
            c0 += col_dims[bj];
        }
        r0 += row_dims[bi];
    }
    return out;
}

} // namespace

ChainComplex::ChainComplex(int lo, std::vector<std::size_t> dims, std::vector<BitMatrix> boundaries)
    : lo_(lo), dims_(std::move(dims)), bnd_(std::move(boundaries)) {
    if (dims_.empty()) throw std::invalid_argument("chain complex needs at least one grade");
    if (bnd_.size() + 1 != dims_.size())
        throw std::invalid_argument("chain complex needs one boundary map per adjacent pair");
    for (std::size_t j = 0; j < bnd_.size(); ++j) {
        if (bnd_[j].rows() != dims_[j] || bnd_[j].cols() != dims_[j + 1])
            throw std::invalid_argument("boundary map shape mismatch");
        if (j > 0 && !bnd_[j - 1].mul(bnd_[j]).is_zero())
            throw std::invalid_argument("boundary maps do not compose to zero");
    }
}

std::size_t ChainComplex::dim(int grade) const {
    if (grade < lo_ || grade > hi()) return 0;
    return dims_[static_cast<std::size_t>(grade - lo_)];
}

BitMatrix ChainComplex::boundary(int grade) const {
    if (grade > lo_ && grade <= hi()) return bnd_[static_cast<std::size_t>(grade - lo_ - 1)];
    return BitMatrix(dim(grade - 1), dim(grade));
}

ChainMap::ChainMap(ChainComplex source, ChainComplex target, int lo, std::vector<BitMatrix> components)
    : source_(std::move(source)), target_(std::move(target)), lo_(lo), comp_(std::move(components)) {
    for (std::size_t j = 0; j < comp_.size(); ++j) {
        int grade = lo_ + static_cast<int>(j);
        if (comp_[j].rows() != target_.dim(grade) || comp_[j].cols() != source_.dim(grade))
            throw std::invalid_argument("chain map component shape mismatch");
    }
    int a = std::min(source_.lo(), target_.lo());
    int b = std::max(source_.hi(), target_.hi());
    for (int i = a; i <= b + 1; ++i) {
        // ∂ᶜ_i f_i = f_{i−1} ∂ᴬ_i
        BitMatrix lhs = target_.boundary(i).mul(component(i));
        BitMatrix rhs = component(i - 1).mul(source_.boundary(i));
        if (!(lhs == rhs)) throw std::invalid_argument("chain map does not commute with boundaries");
    }
}

BitMatrix ChainMap::component(int grade) const {
    int j = grade - lo_;
    if (j >= 0 && j < static_cast<int>(comp_.size())) return comp_[static_cast<std::size_t>(j)];
    return BitMatrix(target_.dim(grade), source_.dim(grade));
}

ChainComplex css_to_chain(const CssCode& code) {
    return ChainComplex(0,
                        {code.hz.rows(), code.n(), code.hx.rows()},
                        {code.hz, code.hx.transposed()});
}

CssCode chain_to_css(const ChainComplex& chain, int qubit_grade) {
    return CssCode(chain.boundary(qubit_grade + 1).transposed(), chain.boundary(qubit_grade));
}

std::size_t homology_dim(const ChainComplex& chain, int grade) {
    std::size_t ker = chain.dim(grade) - rank(chain.boundary(grade));
    return ker - rank(chain.boundary(grade + 1));
}

ChainComplex mapping_cone(const ChainMap& f) {
    const ChainComplex& a = f.source();
    const ChainComplex& c = f.target();
    int lo = std::min(c.lo(), a.lo() + 1);
    int hi = std::max(c.hi(), a.hi() + 1);

    std::vector<std::size_t> dims;
    for (int i = lo; i <= hi; ++i) dims.push_back(c.dim(i) + a.dim(i - 1));

    std::vector<BitMatrix> maps;
    for (int i = lo + 1; i <= hi; ++i) {
        BitMatrix dc = c.boundary(i);
        BitMatrix fi = f.component(i - 1);
        BitMatrix da = a.boundary(i - 1);
        maps.push_back(block_matrix({c.dim(i - 1), a.dim(i - 2)}, {c.dim(i), a.dim(i - 1)},
                                    {{&dc, &fi}, {nullptr, &da}}));
    }
    return ChainComplex(lo, std::move(dims), std::move(maps));
}

ChainComplex mapping_cylinder(const ChainMap& f) {
    const ChainComplex& a = f.source();
    const ChainComplex& c = f.target();
    int lo = std::min(c.lo(), a.lo());
    int hi = std::max(c.hi(), a.hi() + 1);

    std::vector<std::size_t> dims;
    for (int i = lo; i <= hi; ++i) dims.push_back(c.dim(i) + a.dim(i - 1) + a.dim(i));

    std::vector<BitMatrix> maps;
    for (int i = lo + 1; i <= hi; ++i) {
        BitMatrix dc = c.boundary(i);
        BitMatrix fi = f.component(i - 1);
        BitMatrix da_prev = a.boundary(i - 1);
        BitMatrix da = a.boundary(i);
        BitMatrix id = BitMatrix::identity(a.dim(i - 1));
        maps.push_back(block_matrix({c.dim(i - 1), a.dim(i - 2), a.dim(i - 1)},
                                    {c.dim(i), a.dim(i - 1), a.dim(i)},
                                    {{&dc, &fi, nullptr},
                                     {nullptr, &da_prev, nullptr},
                                     {nullptr, &id, &da}}));
    }
    return ChainComplex(lo, std::move(dims), std::move(maps));
}

ChainMap cylinder_as_cone_map(const ChainMap& f) {
    const ChainComplex& a = f.source();
    const ChainComplex& c = f.target();

    int blo = a.lo() - 1;
    int bhi = a.hi();
    std::vector<std::size_t> bdims;
    for (int i = blo; i <= bhi; ++i) bdims.push_back(a.dim(i) + a.dim(i + 1));
    std::vector<BitMatrix> bmaps;
    for (int i = blo + 1; i <= bhi; ++i) {
        BitMatrix da = a.boundary(i);
        BitMatrix da_next = a.boundary(i + 1);
        BitMatrix id = BitMatrix::identity(a.dim(i));
        bmaps.push_back(block_matrix({a.dim(i - 1), a.dim(i)}, {a.dim(i), a.dim(i + 1)},
                                     {{&da, nullptr}, {&id, &da_next}}));
    }
    ChainComplex b(blo, std::move(bdims), std::move(bmaps));

    std::vector<BitMatrix> g;
    for (int i = blo; i <= bhi; ++i) {
        BitMatrix fi = f.component(i);
        BitMatrix gi(c.dim(i), b.dim(i));
        for (std::size_t r = 0; r < fi.rows(); ++r)
            for (std::size_t col = 0; col < fi.cols(); ++col)
                if (fi.get(r, col)) gi.set(r, col, true);
        g.push_back(std::move(gi));
    }
    return ChainMap(std::move(b), c, blo, std::move(g));
}

std::pair<std::size_t, std::size_t> logical_gauge_counts(const BitMatrix& hx, const BitMatrix& hz,
                                                         const BitMatrix& f1, const BitMatrix& f0,
                                                         const BitMatrix& d1, const BitMatrix& d0) {
    BitMatrix hx_t = vstack(hstack(hx, BitMatrix(hx.rows(), d1.rows())),
                            hstack(f1.transposed(), d1.transposed()));
    BitMatrix hz_t = vstack(hstack(hz, f0), hstack(BitMatrix(d0.rows(), hz.cols()), d0));

    long long rank_hx = static_cast<long long>(rank(hx));
    long long rank_hz = static_cast<long long>(rank(hz));
    long long rank_hxt = static_cast<long long>(rank(hx_t));
    long long rank_hzt = static_cast<long long>(rank(hz_t));
    long long rank_d1 = static_cast<long long>(rank(d1));
    long long rank_d0 = static_cast<long long>(rank(d0));
    long long n = static_cast<long long>(hx.cols());

    long long k = n - rank_hx - rank_hz;
    long long ker_d1 = static_cast<long long>(d1.cols()) - rank_d1;
    long long redundancy_new = (static_cast<long long>(hx_t.rows()) - rank_hxt) -
                               (static_cast<long long>(hx.rows()) - rank_hx);
    long long k_tilde = k + redundancy_new - ker_d1;

    long long anc_logicals = (static_cast<long long>(d0.cols()) - rank_d0) - rank_d1;
    long long z_redundancy_new = (static_cast<long long>(hz_t.rows()) - rank_hzt) -
                                 (static_cast<long long>(d0.rows()) - rank_d0);
    long long hz_redundancy = static_cast<long long>(hz.rows()) - rank_hz;
    long long r_tilde = anc_logicals + z_redundancy_new - hz_redundancy;

    if (k_tilde < 0 || r_tilde < 0) throw std::invalid_argument("invalid cone configuration");
    return {static_cast<std::size_t>(k_tilde), static_cast<std::size_t>(r_tilde)};
}

std::pair<std::size_t, std::size_t> logical_gauge_counts(const CssCode& code,
                                                         const ChainComplex& ancilla,
                                                         const ChainMap& f) {
    return logical_gauge_counts(code.hx, code.hz, f.component(1), f.component(0),
                                ancilla.boundary(1), ancilla.boundary(0));
}

} // namespace eehm
