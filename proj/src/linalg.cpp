#include "pb/linalg.hpp"

#include <stdexcept>

namespace pb {

namespace {

// Fraction-free (Bareiss) elimination over the integers for the common case of
// an all-rational system; avoids per-operation gcd work of mpq arithmetic.
std::optional<std::vector<ExactScalar>> solve_rational(const Matrix& A, const std::vector<ExactScalar>& b) {
    size_t n = A.size();
    // Augmented integer matrix: clear denominators row by row.
    std::vector<std::vector<mpz_class>> M(n, std::vector<mpz_class>(n + 1));
    for (size_t i = 0; i < n; ++i) {
        mpz_class lcm = b[i].rat_part().get_den();
        for (size_t j = 0; j < n; ++j)
            mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), A[i][j].rat_part().get_den_mpz_t());
        for (size_t j = 0; j < n; ++j) {
            const Rational& v = A[i][j].rat_part();
            M[i][j] = v.get_num() * (lcm / v.get_den());
        }
        const Rational& v = b[i].rat_part();
        M[i][n] = v.get_num() * (lcm / v.get_den());
    }
    mpz_class prev(1);
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && M[piv][k] == 0) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != k) std::swap(M[piv], M[k]);
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j <= n; ++j) {
                mpz_class t = M[k][k] * M[i][j] - M[i][k] * M[k][j];
                mpz_divexact(M[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            M[i][k] = 0;
        }
        prev = M[k][k];
    }
    std::vector<Rational> x(n);
    for (size_t i = n; i-- > 0;) {
        Rational acc(M[i][n]);
        for (size_t j = i + 1; j < n; ++j) acc -= Rational(M[i][j]) * x[j];
        x[i] = acc / Rational(M[i][i]);
        x[i].canonicalize();
    }
    std::vector<ExactScalar> out;
    out.reserve(n);
    for (auto& v : x) out.emplace_back(v);
    return out;
}

}  // namespace

std::optional<std::vector<ExactScalar>> solve_linear(Matrix A, std::vector<ExactScalar> b) {
    size_t n = A.size();
    if (b.size() != n) throw std::invalid_argument("dimension mismatch in linear solve");
    for (auto& row : A)
        if (row.size() != n) throw std::invalid_argument("matrix not square");

    bool all_rational = true;
    for (size_t i = 0; i < n && all_rational; ++i) {
        all_rational = b[i].is_rational();
        for (size_t j = 0; j < n && all_rational; ++j) all_rational = A[i][j].is_rational();
    }
    if (all_rational) return solve_rational(A, b);

    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && A[piv][col].is_zero()) ++piv;
        if (piv == n) return std::nullopt;
        if (piv != col) {
            std::swap(A[piv], A[col]);
            std::swap(b[piv], b[col]);
        }
        ExactScalar inv = A[col][col].inverse();
        for (size_t j = col; j < n; ++j) A[col][j] *= inv;
        b[col] *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || A[r][col].is_zero()) continue;
            ExactScalar f = A[r][col];
            for (size_t j = col; j < n; ++j) A[r][j] -= f * A[col][j];
            b[r] -= f * b[col];
        }
    }
    return b;
}

}  // namespace pb
