#pragma once

#include "abelim/integer.hpp"

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

namespace abelim {

/// Dense integer matrix, row-major. 0 x n and n x 0 shapes are legal and act
/// as empty maps.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }
    static IntMatrix diagonal(std::span<const Integer> diag);
    static IntMatrix from_columns(std::size_t rows, const std::vector<IntVector>& cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    IntVector column(std::size_t c) const;
    IntVector row(std::size_t r) const;
    void set_column(std::size_t c, std::span<const Integer> v);

    IntMatrix transpose() const;
    IntMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
    /// Rows [r0, r1) and all columns.
    IntMatrix row_range(std::size_t r0, std::size_t r1) const;
    IntMatrix col_range(std::size_t c0, std::size_t c1) const;

    bool is_zero() const;
    bool is_diagonal() const;

    /// Determinant by fraction-free (Bareiss) elimination; square only.
    Integer determinant() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntVector operator*(const IntMatrix& a, std::span<const Integer> v);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator*(const Integer& s, const IntMatrix& a);

IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix block_diagonal(const IntMatrix& a, const IntMatrix& b);
IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

} // namespace abelim
