#ifndef MOMENT_FIBER_EXACTLIN_HPP
#define MOMENT_FIBER_EXACTLIN_HPP

/*
 * Exact linear algebra over integer and rational matrices.
 *
 * Rank uses fraction-free (Bareiss) elimination so that every intermediate
 * value stays an integer; kernels are extracted from the reduced row-echelon
 * form over the rationals. Pivoting is deterministic (first nonzero entry of
 * the current column, scanning rows top to bottom), which makes kernel bases
 * and downstream certificates reproducible.
 *
 * Nothing in this header touches floating point.
 */

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <iterator>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace moment_fiber {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// Sorted, duplicate-free list of 0-based indices.
using IndexSet = std::vector<std::size_t>;

// Malformed input: dimension mismatch, out-of-range index, bad file contents.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A well-formed request whose precondition does not hold for this input
// (e.g. a Cartan subspace of a non-visible representation).
class OperationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The request is valid but outside what this build supports.
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class T>
class Matrix {
public:
    using Scalar = T;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
        const std::size_t cols = rows.empty() ? 0 : rows.front().size();
        Matrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) {
                throw InputError("matrix row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                 " entries, expected " + std::to_string(cols));
            }
            std::copy(rows[i].begin(), rows[i].end(), m.data_.begin() + static_cast<std::ptrdiff_t>(i * cols));
        }
        return m;
    }

    static Matrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
        std::vector<std::vector<T>> tmp;
        for (const auto& r : rows) {
            std::vector<T> row;
            for (long v : r) row.emplace_back(v);
            tmp.push_back(std::move(row));
        }
        return from_rows(tmp);
    }

    // Zero-row matrix of a given width; legal everywhere, rank 0.
    static Matrix empty(std::size_t cols) { return Matrix(0, cols); }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
    }

    std::vector<std::vector<T>> to_rows() const {
        std::vector<std::vector<T>> out;
        out.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
        return out;
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Rational(m(i, j));
    return out;
}

inline Integer lcm_of_denominators(const RatVector& v) {
    Integer l = 1;
    for (const auto& q : v) {
        const Integer d = boost::multiprecision::denominator(q);
        l = l / boost::multiprecision::gcd(l, d) * d;
    }
    return l;
}

// Multiply by the lcm of denominators; optionally divide by the gcd of the
// resulting entries. Signs (and hence sign patterns of dot products) are kept.
inline IntVector clear_denominators(const RatVector& v, bool reduce_gcd = true) {
    const Integer l = lcm_of_denominators(v);
    IntVector out;
    out.reserve(v.size());
    Integer g = 0;
    for (const auto& q : v) {
        Integer e = boost::multiprecision::numerator(q) * (l / boost::multiprecision::denominator(q));
        g = boost::multiprecision::gcd(g, e);
        out.push_back(std::move(e));
    }
    if (reduce_gcd && g > 1) {
        for (auto& e : out) e /= g;
    }
    return out;
}

namespace detail {

// Integer matrix whose rows are positive multiples of the rows of m.
inline IntMatrix integral_rows(const RatMatrix& m) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const IntVector r = clear_denominators(m.row(i), false);
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = r[j];
    }
    return out;
}

// In-place Bareiss elimination. Returns the pivot columns in order.
inline std::vector<std::size_t> bareiss_eliminate(IntMatrix& a) {
    std::vector<std::size_t> pivots;
    Integer prev = 1;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < a.cols() && pr < a.rows(); ++c) {
        std::size_t p = pr;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(pr, p);
        const Integer piv = a(pr, c);
        for (std::size_t i = pr + 1; i < a.rows(); ++i) {
            for (std::size_t j = c + 1; j < a.cols(); ++j) {
                a(i, j) = (a(i, j) * piv - a(i, c) * a(pr, j)) / prev;
            }
            a(i, c) = 0;
        }
        prev = piv;
        pivots.push_back(c);
        ++pr;
    }
    return pivots;
}

// Reduced row-echelon form over Q. Returns pivot columns; m is overwritten.
inline std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < m.cols() && pr < m.rows(); ++c) {
        std::size_t p = pr;
        while (p < m.rows() && m(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(pr, p);
        const Rational inv = Rational(1) / m(pr, c);
        for (std::size_t j = c; j < m.cols(); ++j) m(pr, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == pr || m(i, c) == 0) continue;
            const Rational f = m(i, c);
            for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(pr, j);
        }
        pivots.push_back(c);
        ++pr;
    }
    return pivots;
}

}  // namespace detail

inline std::size_t rank(const IntMatrix& m) {
    IntMatrix a = m;
    return detail::bareiss_eliminate(a).size();
}

inline std::size_t rank(const RatMatrix& m) {
    IntMatrix a = detail::integral_rows(m);
    return detail::bareiss_eliminate(a).size();
}

// Columns forming a basis of the column space, in increasing order.
inline std::vector<std::size_t> column_basis(const IntMatrix& m) {
    IntMatrix a = m;
    return detail::bareiss_eliminate(a);
}

// Basis of {v : M v = 0}, one vector per free column of the RREF, in the
// usual echelon normal form: v has a 1 at its free column and zeros at the
// other free columns.
template <class T>
std::vector<RatVector> kernel_basis(const Matrix<T>& m) {
    RatMatrix r;
    if constexpr (std::is_same_v<T, Rational>) {
        r = m;
    } else {
        r = to_rational(m);
    }
    const auto pivots = detail::rref(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;

    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        RatVector v(m.cols(), Rational(0));
        v[f] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -r(k, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

template <class T>
Matrix<T> row_select(const Matrix<T>& m, const IndexSet& rows) {
    Matrix<T> out(rows.size(), m.cols());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (rows[k] >= m.rows()) {
            throw InputError("row index " + std::to_string(rows[k]) + " out of range for a matrix with " +
                             std::to_string(m.rows()) + " rows");
        }
        for (std::size_t j = 0; j < m.cols(); ++j) out(k, j) = m(rows[k], j);
    }
    return out;
}

template <class T>
Matrix<T> column_select(const Matrix<T>& m, const std::vector<std::size_t>& cols) {
    Matrix<T> out(m.rows(), cols.size());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t k = 0; k < cols.size(); ++k) {
            if (cols[k] >= m.cols()) throw InputError("column index out of range");
            out(i, k) = m(i, cols[k]);
        }
    return out;
}

template <class T, class U>
Rational dot(const std::vector<T>& a, const std::vector<U>& b) {
    if (a.size() != b.size()) throw InputError("dot product of vectors of different lengths");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * Rational(b[i]);
    return s;
}

// M v for an integer matrix and rational vector.
inline RatVector apply(const IntMatrix& m, const RatVector& v) {
    if (v.size() != m.cols()) throw InputError("vector length does not match matrix width");
    RatVector out(m.rows(), Rational(0));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[i] += Rational(m(i, j)) * v[j];
    return out;
}

inline bool is_zero(const RatVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

inline IndexSet support(const RatVector& v) {
    IndexSet s;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) s.push_back(i);
    return s;
}

inline IndexSet full_range(std::size_t n) {
    IndexSet s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = i;
    return s;
}

inline IndexSet set_difference(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline IndexSet set_union(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline IndexSet complement(const IndexSet& a, std::size_t n) { return set_difference(full_range(n), a); }

}  // namespace moment_fiber

#endif  // MOMENT_FIBER_EXACTLIN_HPP
