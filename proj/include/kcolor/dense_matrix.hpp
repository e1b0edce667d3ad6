#pragma once

#include <cstddef>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kcolor {

/// Square row-major matrix over an arbitrary ring scalar (int64, BigInt, double).
template <class T>
class DenseMatrix {
public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t n, const T& fill = T{}) : n_(n), data_(n * n, fill) {}

    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
        return m;
    }

    std::size_t dim() const noexcept { return n_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::span<const T> row(std::size_t i) const { return {data_.data() + i * n_, n_}; }

    bool operator==(const DenseMatrix&) const = default;

    template <class U>
    DenseMatrix<U> cast() const {
        DenseMatrix<U> out(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) out(i, j) = static_cast<U>((*this)(i, j));
        return out;
    }

    DenseMatrix transposed() const {
        DenseMatrix out(n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    bool is_symmetric() const {
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i + 1; j < n_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    T trace() const {
        T t{0};
        for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    T sum() const {
        T s{0};
        for (const auto& v : data_) s += v;
        return s;
    }

    DenseMatrix& operator+=(const DenseMatrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }

    friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
        a.check_same(b);
        const std::size_t n = a.n_;
        DenseMatrix out(n);
        // i-l-j order; most transfer-matrix entries are zero so skip them.
        for (std::size_t i = 0; i < n; ++i) {
            T* dst = out.data_.data() + i * n;
            for (std::size_t l = 0; l < n; ++l) {
                const T& ail = a(i, l);
                if (ail == T{0}) continue;
                const T* src = b.data_.data() + l * n;
                for (std::size_t j = 0; j < n; ++j)
                    if (src[j] != T{0}) dst[j] += ail * src[j];
            }
        }
        return out;
    }

    std::vector<T> operator*(std::span<const T> v) const {
        if (v.size() != n_)
            throw std::invalid_argument("vector length " + std::to_string(v.size()) + " does not match dimension " +
                                        std::to_string(n_));
        std::vector<T> out(n_, T{0});
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    /// Copy of the b x b block at block coordinates (bi, bj).
    DenseMatrix block(std::size_t bi, std::size_t bj, std::size_t b) const {
        DenseMatrix out(b);
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t j = 0; j < b; ++j) out(i, j) = (*this)(bi * b + i, bj * b + j);
        return out;
    }

    void set_block(std::size_t bi, std::size_t bj, const DenseMatrix& src) {
        const std::size_t b = src.dim();
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t j = 0; j < b; ++j) (*this)(bi * b + i, bj * b + j) = src(i, j);
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != T{0}) return false;
        return true;
    }

private:
    void check_same(const DenseMatrix& o) const {
        if (o.n_ != n_)
            throw std::invalid_argument("matrix dimensions differ: " + std::to_string(n_) + " vs " +
                                        std::to_string(o.n_));
    }

    std::size_t n_ = 0;
    std::vector<T> data_;
};

template <class T>
DenseMatrix<T> power(const DenseMatrix<T>& m, unsigned e) {
    DenseMatrix<T> out = DenseMatrix<T>::identity(m.dim());
    DenseMatrix<T> base = m;
    while (e) {
        if (e & 1U) out = out * base;
        e >>= 1U;
        if (e) base = base * base;
    }
    return out;
}

/// Tr[X * Y] without forming the product.
template <class T>
T trace_of_product(const DenseMatrix<T>& x, const DenseMatrix<T>& y) {
    T t{0};
    const std::size_t n = x.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l)
            if (x(i, l) != T{0} && y(l, i) != T{0}) t += x(i, l) * y(l, i);
    return t;
}

/// Comma-separated rows, no header.
template <class T>
void write_csv(std::ostream& os, const DenseMatrix<T>& m) {
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) {
            if (j) os << ',';
            os << m(i, j);
        }
        os << '\n';
    }
}

}  // namespace kcolor
