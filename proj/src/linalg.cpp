#include "splicekit/linalg.hpp"

#include <algorithm>
#include <utility>

#include "splicekit/error.hpp"

namespace splicekit {

namespace {

void divexact(BigInt& a, const BigInt& d) { mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t()); }

IntegerMatrix top_left(const IntegerMatrix& m, std::size_t k) {
  IntegerMatrix s(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) s(i, j) = m(i, j);
  return s;
}

}  // namespace

BigInt bareiss_determinant(IntegerMatrix m) {
  const std::size_t n = m.rows();
  if (!m.square()) throw SpliceError(ErrorCode::degenerate_matrix, "determinant of a non-square matrix");
  if (n == 0) return 1;
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        divexact(m(i, j), prev);
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

std::vector<BigInt> leading_principal_minors(const IntegerMatrix& m) {
  std::vector<BigInt> out;
  for (std::size_t k = 1; k <= m.rows(); ++k) out.push_back(bareiss_determinant(top_left(m, k)));
  return out;
}

bool is_positive_definite(const IntegerMatrix& input) {
  IntegerMatrix m = input;
  const std::size_t n = m.rows();
  BigInt prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (m(k, k) <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        divexact(m(i, j), prev);
      }
    }
    prev = m(k, k);
  }
  return true;
}

RationalMatrix inverse(const RationalMatrix& input) {
  const std::size_t n = input.rows();
  if (!input.square()) throw SpliceError(ErrorCode::degenerate_matrix, "inverse of a non-square matrix");
  RationalMatrix a = input;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw SpliceError(ErrorCode::degenerate_matrix, "matrix is singular");
    a.swap_rows(c, p);
    inv.swap_rows(c, p);
    const Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

RationalMatrix inverse(const IntegerMatrix& m) { return inverse(to_rational(m)); }

IntegerMatrix adjugate(const IntegerMatrix& m) {
  const std::size_t n = m.rows();
  IntegerMatrix adj(n, n);
  if (n == 0) return adj;
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  const BigInt det = bareiss_determinant(m);
  if (det != 0) {
    RationalMatrix inv = inverse(m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational v = inv(i, j) * det;
        adj(i, j) = v.get_num();  // exact: det * inverse is integral
      }
    return adj;
  }
  // singular: cofactors one by one
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      IntegerMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      BigInt cof = bareiss_determinant(minor);
      adj(i, j) = ((i + j) % 2 == 0) ? cof : BigInt(-cof);
    }
  return adj;
}

std::size_t rank(const RationalMatrix& input) {
  RationalMatrix a = input;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      const Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

SmithDecomposition smith_normal_form(const IntegerMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  IntegerMatrix d = m;
  IntegerMatrix u = IntegerMatrix::identity(rows);
  IntegerMatrix v = IntegerMatrix::identity(cols);

  auto row_addmul = [&](std::size_t dst, std::size_t src, const BigInt& q) {  // row_dst -= q*row_src
    for (std::size_t j = 0; j < cols; ++j) d(dst, j) -= q * d(src, j);
    for (std::size_t j = 0; j < rows; ++j) u(dst, j) -= q * u(src, j);
  };
  auto col_addmul = [&](std::size_t dst, std::size_t src, const BigInt& q) {
    for (std::size_t i = 0; i < rows; ++i) d(i, dst) -= q * d(i, src);
    for (std::size_t i = 0; i < cols; ++i) v(i, dst) -= q * v(i, src);
  };

  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      bool found = false;
      std::size_t pi = t, pj = t;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (d(i, j) == 0) continue;
          if (!found || abs(d(i, j)) < abs(d(pi, pj))) {
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) goto done;
      d.swap_rows(t, pi);
      u.swap_rows(t, pi);
      d.swap_cols(t, pj);
      v.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        BigInt q = d(i, t) / d(t, t);  // truncating
        row_addmul(i, t, q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        BigInt q = d(t, j) / d(t, t);
        col_addmul(j, t, q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      bool fixed = false;
      for (std::size_t i = t + 1; i < rows && !fixed; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!divides(d(t, t), d(i, j))) {
            row_addmul(t, i, BigInt(-1));  // row_t += row_i
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < cols; ++j) d(t, j) = -d(t, j);
      for (std::size_t j = 0; j < rows; ++j) u(t, j) = -u(t, j);
    }
  }
done:
  SmithDecomposition out;
  for (std::size_t t = 0; t < steps; ++t) out.diagonal.push_back(d(t, t));
  out.left = std::move(u);
  out.right = std::move(v);
  return out;
}

}  // namespace splicekit
