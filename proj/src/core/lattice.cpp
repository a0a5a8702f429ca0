#include "abelim/lattice.hpp"

#include <stdexcept>

namespace abelim {

namespace {

std::vector<SparseColumn> columns_of(const IntMatrix& m)
{
    std::vector<SparseColumn> cols(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c)
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (m(r, c) != 0)
                cols[c].push_back({static_cast<std::uint32_t>(r), m(r, c)});
    return cols;
}

void negate(SparseColumn& v)
{
    for (auto& e : v)
        e.value = -e.value;
}

} // namespace

Lattice::Lattice(std::size_t dim, const IntMatrix& generators, bool track_transform) : dim_(dim)
{
    if (generators.rows() != dim && generators.cols() != 0)
        throw std::invalid_argument("Lattice: generator length mismatch");
    build(columns_of(generators), track_transform);
}

Lattice::Lattice(std::size_t dim, std::vector<SparseColumn> generators, bool track_transform) : dim_(dim)
{
    build(std::move(generators), track_transform);
}

void Lattice::build(std::vector<SparseColumn> cols, bool track)
{
    ngens_ = cols.size();
    tracked_ = track;
    std::vector<SparseColumn> trans;
    if (track) {
        trans.resize(ngens_);
        for (std::size_t j = 0; j < ngens_; ++j)
            trans[j].push_back({static_cast<std::uint32_t>(j), Integer(1)});
    }

    // bucket[r] holds columns whose leading row was r when enqueued.
    std::vector<std::vector<std::size_t>> bucket(dim_);
    for (std::size_t j = 0; j < ngens_; ++j) {
        if (cols[j].empty()) {
            if (track)
                syzygies_.push_back(trans[j]);
            continue;
        }
        bucket[cols[j].front().index].push_back(j);
    }

    std::vector<std::size_t> pivot_index; // into cols
    for (std::uint32_t row = 0; row < dim_; ++row) {
        std::vector<std::size_t> live;
        for (std::size_t j : bucket[row])
            if (!cols[j].empty() && cols[j].front().index == row)
                live.push_back(j);
        bucket[row].clear();
        if (live.empty())
            continue;
        while (live.size() > 1) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < live.size(); ++k)
                if (cmpabs(cols[live[k]].front().value, cols[live[best]].front().value) < 0)
                    best = k;
            std::swap(live[0], live[best]);
            const std::size_t p = live[0];
            std::vector<std::size_t> keep{p};
            for (std::size_t k = 1; k < live.size(); ++k) {
                const std::size_t q = live[k];
                Integer factor = round_div(cols[q].front().value, cols[p].front().value);
                sparse_axpy(cols[q], factor, cols[p]);
                if (track)
                    sparse_axpy(trans[q], factor, trans[p]);
                if (cols[q].empty()) {
                    if (track)
                        syzygies_.push_back(std::move(trans[q]));
                } else if (cols[q].front().index == row) {
                    keep.push_back(q);
                } else {
                    bucket[cols[q].front().index].push_back(q);
                }
            }
            live = std::move(keep);
        }
        const std::size_t p = live[0];
        if (cols[p].front().value < 0) {
            negate(cols[p]);
            if (track)
                negate(trans[p]);
        }
        // Reduce earlier basis vectors at this row into [0, pivot).
        const Integer& pv = cols[p].front().value;
        for (std::size_t b : pivot_index) {
            Integer e = sparse_at(cols[b], row);
            if (e == 0)
                continue;
            Integer factor = floor_div(e, pv);
            if (factor == 0)
                continue;
            sparse_axpy(cols[b], factor, cols[p]);
            if (track)
                sparse_axpy(trans[b], factor, trans[p]);
        }
        pivot_index.push_back(p);
        pivot_rows_.push_back(row);
    }

    for (std::size_t p : pivot_index) {
        basis_.push_back(std::move(cols[p]));
        if (track)
            basis_transform_.push_back(std::move(trans[p]));
    }
}

IntMatrix Lattice::basis_matrix() const
{
    IntMatrix m(dim_, basis_.size());
    for (std::size_t c = 0; c < basis_.size(); ++c)
        for (const auto& e : basis_[c])
            m(e.index, c) = e.value;
    return m;
}

std::optional<IntVector> Lattice::coordinates(const IntVector& y) const
{
    if (y.size() != dim_)
        throw std::invalid_argument("Lattice::coordinates: length mismatch");
    IntVector rem = y;
    IntVector coeff(basis_.size());
    std::size_t next_row = 0;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        const std::uint32_t pr = pivot_rows_[k];
        for (; next_row < pr; ++next_row)
            if (rem[next_row] != 0)
                return std::nullopt;
        const Integer& pv = basis_[k].front().value;
        if (!divides(pv, rem[pr]))
            return std::nullopt;
        Integer c = rem[pr] / pv;
        if (c != 0)
            for (const auto& e : basis_[k])
                rem[e.index] -= c * e.value;
        coeff[k] = std::move(c);
        next_row = pr + 1;
    }
    for (; next_row < dim_; ++next_row)
        if (rem[next_row] != 0)
            return std::nullopt;
    return coeff;
}

bool Lattice::contains_all(const IntMatrix& columns) const
{
    for (std::size_t c = 0; c < columns.cols(); ++c)
        if (!contains(columns.column(c)))
            return false;
    return true;
}

std::optional<IntVector> Lattice::solve(const IntVector& y) const
{
    if (!tracked_)
        throw std::logic_error("Lattice::solve requires a tracked lattice");
    auto c = coordinates(y);
    if (!c)
        return std::nullopt;
    IntVector x(ngens_);
    for (std::size_t k = 0; k < basis_.size(); ++k) {
        if ((*c)[k] == 0)
            continue;
        for (const auto& e : basis_transform_[k])
            x[e.index] += (*c)[k] * e.value;
    }
    return x;
}

IntMatrix Lattice::syzygies() const
{
    if (!tracked_)
        throw std::logic_error("Lattice::syzygies requires a tracked lattice");
    IntMatrix m(ngens_, syzygies_.size());
    for (std::size_t c = 0; c < syzygies_.size(); ++c)
        for (const auto& e : syzygies_[c])
            m(e.index, c) = e.value;
    return m;
}

} // namespace abelim
