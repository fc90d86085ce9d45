#pragma once

// Exact arithmetic primitives: GMP-backed rationals, a dense rational
// matrix, and fraction-free (Bareiss) rank.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace perigid {

using Integer = mpz_class;
using Rational = mpq_class;

/// A point or direction with exact rational coordinates.
using Point = std::vector<Rational>;

/// Parses "p/q" or "p" (optional sign on p). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& value);

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<Rational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    /// Matrix formed by the listed rows, in the given order.
    RationalMatrix select_rows(std::span<const std::size_t> rows) const;

    /// Appends a row; `values` must have cols() entries.
    void append_row(std::span<const Rational> values);

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Rank over Q by fraction-free elimination. Each row is cleared of
/// denominators first, so the elimination runs entirely over Z.
std::size_t exact_rank(const RationalMatrix& m);

/// Rank over Q of integer row vectors (all rows must share one length).
std::size_t integer_rank(std::span<const std::vector<std::int64_t>> rows);

/// Matrix-vector product for a square or rectangular matrix.
Point multiply(const RationalMatrix& m, std::span<const Rational> v);

}  // namespace perigid
