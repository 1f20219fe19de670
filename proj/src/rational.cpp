#include "eigenbound/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>

#include "eigenbound/errors.hpp"

namespace eigenbound {

using Integer = boost::multiprecision::mpz_int;

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string rational_to_string(const Rational& r) {
    const Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rational parse_rational(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw InputError("empty rational literal");

    const auto slash = s.find('/');
    if (slash != std::string::npos) {
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        if (num.empty() || den.empty()) throw InputError("malformed rational '" + text + "'");
        try {
            Rational r{Integer(num), Integer(den)};
            return r;
        } catch (const std::exception&) {
            throw InputError("malformed rational '" + text + "'");
        }
    }

    bool negative = false;
    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') {
        negative = (s[i] == '-');
        ++i;
    }
    Integer num = 0;
    Integer den = 1;
    long exponent = 0;
    bool seen_digit = false;
    bool seen_dot = false;
    for (; i < s.size(); ++i) {
        if (s[i] == '.') {
            if (seen_dot) throw InputError("malformed rational '" + text + "'");
            seen_dot = true;
            continue;
        }
        if (s[i] == 'e' || s[i] == 'E') {
            try {
                exponent = std::stol(s.substr(i + 1));
            } catch (const std::exception&) {
                throw InputError("malformed rational '" + text + "'");
            }
            break;
        }
        if (!std::isdigit(static_cast<unsigned char>(s[i])))
            throw InputError("malformed rational '" + text + "'");
        seen_digit = true;
        num = num * 10 + (s[i] - '0');
        if (seen_dot) den *= 10;
    }
    if (!seen_digit) throw InputError("malformed rational '" + text + "'");
    for (long e = 0; e < exponent; ++e) num *= 10;
    for (long e = 0; e > exponent; --e) den *= 10;
    Rational r{num, den};
    return negative ? Rational(-r) : r;
}

Rational rationalize(double x, long max_den) {
    if (!std::isfinite(x)) throw InputError("cannot rationalize non-finite value");
    const bool neg = x < 0;
    double v = std::abs(x);
    // continued fraction convergents p_k/q_k
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
        const double fl = std::floor(v);
        if (fl > 9e17) break;
        const std::int64_t a = static_cast<std::int64_t>(fl);
        const std::int64_t p2 = a * p1 + p0;
        const std::int64_t q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        const double frac = v - fl;
        if (frac < 1e-15) break;
        v = 1.0 / frac;
    }
    if (q1 == 0) return Rational(0);
    Rational r{Integer(p1), Integer(q1)};
    return neg ? Rational(-r) : r;
}

Eigen::VectorXd to_double_vector(const RatVector& v) {
    Eigen::VectorXd out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = to_double(v[i]);
    return out;
}

Eigen::MatrixXd to_double_matrix(const RatMatrix& m) {
    Eigen::MatrixXd out(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
    return out;
}

namespace {

// Reduce M in place to row echelon form; returns pivot columns.
std::vector<int> row_reduce(RatMatrix& M) {
    const Eigen::Index rows = M.rows(), cols = M.cols();
    std::vector<int> pivots;
    Eigen::Index r = 0;
    for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = r; i < rows; ++i)
            if (M(i, c) != 0) { piv = i; break; }
        if (piv < 0) continue;
        if (piv != r) M.row(piv).swap(M.row(r));
        const Rational inv = Rational(1) / M(r, c);
        for (Eigen::Index j = c; j < cols; ++j) M(r, j) *= inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == r || M(i, c) == 0) continue;
            const Rational f = M(i, c);
            for (Eigen::Index j = c; j < cols; ++j) M(i, j) -= f * M(r, j);
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

}  // namespace

bool solve_linear(RatMatrix A, RatVector b, RatVector& x) {
    const Eigen::Index n = A.rows();
    if (A.cols() != n || b.size() != n) throw InputError("solve_linear: shape mismatch");
    RatMatrix M(n, n + 1);
    M.leftCols(n) = A;
    M.col(n) = b;
    const auto pivots = row_reduce(M);
    if (static_cast<Eigen::Index>(pivots.size()) != n || (!pivots.empty() && pivots.back() == n))
        return false;
    x = M.col(n);
    return true;
}

int rank(RatMatrix A) { return static_cast<int>(row_reduce(A).size()); }

Rational determinant(RatMatrix A) {
    const Eigen::Index n = A.rows();
    if (A.cols() != n) throw InputError("determinant: not square");
    Rational det = 1;
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = c; i < n; ++i)
            if (A(i, c) != 0) { piv = i; break; }
        if (piv < 0) return Rational(0);
        if (piv != c) {
            A.row(piv).swap(A.row(c));
            det = -det;
        }
        det *= A(c, c);
        const Rational inv = Rational(1) / A(c, c);
        for (Eigen::Index i = c + 1; i < n; ++i) {
            if (A(i, c) == 0) continue;
            const Rational f = A(i, c) * inv;
            for (Eigen::Index j = c; j < n; ++j) A(i, j) -= f * A(c, j);
        }
    }
    return det;
}

RatMatrix inverse(const RatMatrix& A) {
    const Eigen::Index n = A.rows();
    if (A.cols() != n) throw InputError("inverse: not square");
    RatMatrix M(n, 2 * n);
    M.leftCols(n) = A;
    M.rightCols(n).setZero();
    for (Eigen::Index i = 0; i < n; ++i) M(i, n + i) = 1;
    const auto pivots = row_reduce(M);
    if (static_cast<Eigen::Index>(pivots.size()) < n || pivots[n - 1] != n - 1)
        throw ValidationError("inverse: singular matrix");
    return M.rightCols(n);
}

std::vector<RatVector> nullspace(RatMatrix A) {
    const Eigen::Index cols = A.cols();
    const auto pivots = row_reduce(A);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<RatVector> basis;
    for (Eigen::Index free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        RatVector v = RatVector::Zero(cols);
        v[free_col] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -A(static_cast<Eigen::Index>(r), free_col);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace eigenbound
