#include "stnet/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace stnet {

BinaryMatrix BinaryMatrix::identity(std::size_t n)
{
    BinaryMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BinaryMatrix BinaryMatrix::transposed() const
{
    BinaryMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (at(r, c)) t.set(c, r);
        }
    }
    return t;
}

bool BinaryMatrix::is_symmetric() const
{
    if (rows_ != cols_) return false;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = r + 1; c < cols_; ++c) {
            if (at(r, c) != at(c, r)) return false;
        }
    }
    return true;
}

std::size_t BinaryMatrix::count_ones() const
{
    return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

BinaryMatrix boolean_product(const BinaryMatrix& a, const BinaryMatrix& b)
{
    if (a.cols() != b.rows()) throw std::invalid_argument("boolean_product: inner dimensions differ");
    BinaryMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (!a.at(i, k)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (b.at(k, j)) out.set(i, j);
            }
        }
    }
    return out;
}

}  // namespace stnet
