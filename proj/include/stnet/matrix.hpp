#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace stnet {

/// Dense row-major 0/1 matrix. Team-sized dimensions keep dense storage cheap; products
/// skip zero entries so sparse people-by-task matrices stay fast.
class BinaryMatrix {
public:
    BinaryMatrix() = default;
    BinaryMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

    static BinaryMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c] != 0; }
    void set(std::size_t r, std::size_t c, bool v = true) { data_[r * cols_ + c] = v ? 1 : 0; }

    BinaryMatrix transposed() const;
    bool is_symmetric() const;
    std::size_t count_ones() const;

    friend bool operator==(const BinaryMatrix&, const BinaryMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Boolean product: (a*b)(i,j) = OR_k a(i,k) AND b(k,j). Throws std::invalid_argument
/// on a dimension mismatch.
BinaryMatrix boolean_product(const BinaryMatrix& a, const BinaryMatrix& b);

}  // namespace stnet
