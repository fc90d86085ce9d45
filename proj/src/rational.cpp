#include "perigid/rational.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace perigid {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) return false;
    return std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                       [](char c) { return c >= '0' && c <= '9'; });
}

// Bareiss elimination over Z with column skipping. Rows are consumed.
std::size_t bareiss_rank(std::vector<std::vector<Integer>>& a, std::size_t cols) {
    const std::size_t rows = a.size();
    std::size_t rank = 0;
    Integer prev = 1;
    Integer tmp;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rows;
        for (std::size_t r = rank; r < rows; ++r) {
            if (sgn(a[r][c]) != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == rows) continue;
        std::swap(a[rank], a[pivot]);
        const auto& prow = a[rank];
        for (std::size_t r = rank + 1; r < rows; ++r) {
            auto& row = a[r];
            if (sgn(row[c]) == 0) {
                // The update collapses to a scaling by pivot/prev.
                for (std::size_t j = c + 1; j < cols; ++j) {
                    if (sgn(row[j]) == 0) continue;
                    row[j] *= prow[c];
                    mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
                }
                continue;
            }
            for (std::size_t j = c + 1; j < cols; ++j) {
                tmp = row[j] * prow[c];
                tmp -= row[c] * prow[j];
                mpz_divexact(row[j].get_mpz_t(), tmp.get_mpz_t(), prev.get_mpz_t());
            }
            row[c] = 0;
        }
        prev = prow[c];
        ++rank;
    }
    return rank;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    if (!is_integer_literal(num, true)) {
        throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
    }
    std::string num_str(num);
    if (num_str[0] == '+') num_str.erase(0, 1);
    Rational value;
    if (slash == std::string_view::npos) {
        value = Rational(Integer(num_str), 1);
    } else {
        const auto den = text.substr(slash + 1);
        if (!is_integer_literal(den, false)) {
            throw std::invalid_argument("not a rational: '" + std::string(text) + "'");
        }
        Integer d(std::string{den});
        if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
        value = Rational(Integer(num_str), d);
    }
    value.canonicalize();
    return value;
}

std::string to_string(const Rational& value) { return value.get_str(); }

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::select_rows(std::span<const std::size_t> rows) const {
    RationalMatrix out(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(rows[i] * cols_), cols_,
                    out.data_.begin() + static_cast<std::ptrdiff_t>(i * cols_));
    }
    return out;
}

void RationalMatrix::append_row(std::span<const Rational> values) {
    if (values.size() != cols_) throw std::invalid_argument("append_row: width mismatch");
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

std::size_t exact_rank(const RationalMatrix& m) {
    std::vector<std::vector<Integer>> a;
    a.reserve(m.rows());
    Integer lcm;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        const auto row = m.row(r);
        lcm = 1;
        bool nonzero = false;
        for (const auto& x : row) {
            if (sgn(x) == 0) continue;
            nonzero = true;
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
        }
        if (!nonzero) continue;  // zero rows never contribute
        std::vector<Integer> irow(m.cols());
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (sgn(row[c]) == 0) continue;
            irow[c] = row[c].get_num() * (lcm / row[c].get_den());
        }
        a.push_back(std::move(irow));
    }
    return bareiss_rank(a, m.cols());
}

std::size_t integer_rank(std::span<const std::vector<std::int64_t>> rows) {
    if (rows.empty()) return 0;
    const std::size_t cols = rows.front().size();
    std::vector<std::vector<Integer>> a;
    a.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.size() != cols) throw std::invalid_argument("integer_rank: ragged rows");
        std::vector<Integer> irow(cols);
        for (std::size_t c = 0; c < cols; ++c) irow[c] = static_cast<long>(r[c]);
        a.push_back(std::move(irow));
    }
    return bareiss_rank(a, cols);
}

Point multiply(const RationalMatrix& m, std::span<const Rational> v) {
    if (v.size() != m.cols()) throw std::invalid_argument("multiply: dimension mismatch");
    Point out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out[r] += m(r, c) * v[c];
    }
    return out;
}

}  // namespace perigid
