#pragma once

#include "stringalg/scalar.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace stringalg {

using Vector = std::vector<Scalar>;

class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n, const Scalar& one = Scalar(1));

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const Vector& data() const noexcept { return data_; }

    bool is_zero() const;
    Matrix transposed() const;

    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend Matrix operator+(const Matrix& a, const Matrix& b);
    friend Matrix operator-(const Matrix& a, const Matrix& b);
    friend Matrix operator*(const Scalar& s, const Matrix& m);
    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Vector data_;
};

struct Echelon {
    Matrix reduced;                  // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

Echelon row_reduce(Matrix m);
std::size_t rank(const Matrix& m);
bool is_invertible(const Matrix& m);

// Null space basis of m, one vector per free column in ascending order.
std::vector<Vector> kernel(const Matrix& m);

// Some x with m x = b, if one exists.
std::optional<Vector> solve(const Matrix& m, const Vector& b);

bool is_zero(const Vector& v);

// Linear subspace of a coordinate space, kept as a reduced echelon basis so
// that equal subspaces have identical bases.
class Subspace {
public:
    explicit Subspace(std::size_t ambient = 0) : ambient_(ambient) {}
    static Subspace span(std::size_t ambient, const std::vector<Vector>& vectors);

    std::size_t ambient() const noexcept { return ambient_; }
    std::size_t dim() const noexcept { return rows_.size(); }
    const std::vector<Vector>& basis() const noexcept { return rows_; }

    // Returns true when v was not already contained.
    bool add(const Vector& v);
    void add_all(const Subspace& other);

    bool contains(const Vector& v) const;
    bool contains(const Subspace& other) const;

    // v minus its projection along the pivot coordinates; zero iff v lies in the span.
    Vector residue(const Vector& v) const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.pivots_ == b.pivots_ && a.rows_ == b.rows_;
    }

private:
    std::size_t ambient_;
    std::vector<Vector> rows_;
    std::vector<std::size_t> pivots_;
};

} // namespace stringalg
