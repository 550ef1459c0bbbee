#include "meyerkit/matrix.hpp"

#include <sstream>

namespace meyerkit {

namespace {

// col_a <- s col_a + t col_b ; col_b <- u col_a + v col_b  (applied to H and U)
void combine_columns(IntMatrix& M, std::size_t a, std::size_t b, const Integer& s, const Integer& t,
                     const Integer& u, const Integer& v) {
  for (std::size_t i = 0; i < M.rows(); ++i) {
    Integer x = M(i, a);
    Integer y = M(i, b);
    M(i, a) = s * x + t * y;
    M(i, b) = u * x + v * y;
  }
}

void combine_rows(IntMatrix& M, std::size_t a, std::size_t b, const Integer& s, const Integer& t, const Integer& u,
                  const Integer& v) {
  for (std::size_t j = 0; j < M.cols(); ++j) {
    Integer x = M(a, j);
    Integer y = M(b, j);
    M(a, j) = s * x + t * y;
    M(b, j) = u * x + v * y;
  }
}

void add_column_multiple(IntMatrix& M, std::size_t target, std::size_t source, const Integer& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < M.rows(); ++i) M(i, target) -= k * M(i, source);
}

void add_row_multiple(IntMatrix& M, std::size_t target, std::size_t source, const Integer& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < M.cols(); ++j) M(target, j) -= k * M(source, j);
}

void negate_column(IntMatrix& M, std::size_t j) {
  for (std::size_t i = 0; i < M.rows(); ++i) M(i, j) = -M(i, j);
}

void negate_row(IntMatrix& M, std::size_t i) {
  for (std::size_t j = 0; j < M.cols(); ++j) M(i, j) = -M(i, j);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

HermiteForm column_hermite(const IntMatrix& M) {
  HermiteForm out;
  out.H = M;
  out.U = IntMatrix::identity(M.cols());
  IntMatrix& H = out.H;
  IntMatrix& U = out.U;
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < H.rows() && pivot < H.cols(); ++i) {
    for (std::size_t j = pivot + 1; j < H.cols(); ++j) {
      if (H(i, j) == 0) continue;
      Integer a = H(i, pivot), b = H(i, j);
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      Integer u = -b / g, v = a / g;
      combine_columns(H, pivot, j, s, t, u, v);
      combine_columns(U, pivot, j, s, t, u, v);
    }
    if (H(i, pivot) == 0) continue;
    if (H(i, pivot) < 0) {
      negate_column(H, pivot);
      negate_column(U, pivot);
    }
    for (std::size_t k = 0; k < pivot; ++k) {
      Integer q = floor_div(H(i, k), H(i, pivot));
      add_column_multiple(H, k, pivot, q);
      add_column_multiple(U, k, pivot, q);
    }
    out.pivot_rows.push_back(i);
    ++pivot;
  }
  out.rank = pivot;
  return out;
}

SmithForm smith_form(const IntMatrix& M) {
  SmithForm out;
  out.S = M;
  out.P = IntMatrix::identity(M.rows());
  out.Q = IntMatrix::identity(M.cols());
  IntMatrix& S = out.S;
  const std::size_t n = std::min(M.rows(), M.cols());

  for (std::size_t t = 0; t < n; ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    auto select_pivot = [&]() -> bool {
      bool found = false;
      std::size_t bi = t, bj = t;
      Integer best;
      for (std::size_t i = t; i < S.rows(); ++i)
        for (std::size_t j = t; j < S.cols(); ++j) {
          if (S(i, j) == 0) continue;
          Integer av = abs(S(i, j));
          if (!found || av < best) {
            found = true;
            best = av;
            bi = i;
            bj = j;
          }
        }
      if (!found) return false;
      if (bi != t) {
        S.swap_rows(bi, t);
        out.P.swap_rows(bi, t);
      }
      if (bj != t) {
        S.swap_cols(bj, t);
        out.Q.swap_cols(bj, t);
      }
      return true;
    };
    if (!select_pivot()) break;

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < S.rows(); ++i) {
        if (S(i, t) == 0) continue;
        Integer q = floor_div(S(i, t), S(t, t));
        add_row_multiple(S, i, t, q);
        add_row_multiple(out.P, i, t, q);
        if (S(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < S.cols(); ++j) {
        if (S(t, j) == 0) continue;
        Integer q = floor_div(S(t, j), S(t, t));
        add_column_multiple(S, j, t, q);
        add_column_multiple(out.Q, j, t, q);
        if (S(t, j) != 0) dirty = true;
      }
      if (dirty) {
        select_pivot();
        continue;
      }
      // Divisibility: fold an offending row into row t and retry.
      bool fixed = true;
      for (std::size_t i = t + 1; i < S.rows() && fixed; ++i)
        for (std::size_t j = t + 1; j < S.cols(); ++j) {
          Integer r;
          mpz_fdiv_r(r.get_mpz_t(), S(i, j).get_mpz_t(), S(t, t).get_mpz_t());
          if (r != 0) {
            combine_rows(S, t, i, 1, 1, 0, 1);
            combine_rows(out.P, t, i, 1, 1, 0, 1);
            fixed = false;
            break;
          }
        }
      if (fixed) break;
    }
    if (S(t, t) < 0) {
      negate_row(S, t);
      negate_row(out.P, t);
    }
  }
  for (std::size_t t = 0; t < n; ++t) {
    out.diag.push_back(S(t, t));
    if (S(t, t) != 0) ++out.rank;
  }
  return out;
}

LatticeNormalForm lattice_normal_form(const IntMatrix& M) {
  if (M.empty()) throw InvalidArgument("lattice_normal_form: empty matrix");
  HermiteForm h = column_hermite(M);
  SmithForm s = smith_form(M);
  return {std::move(h.H), std::move(h.U), h.rank, std::move(s.diag)};
}

Integer determinant(const IntMatrix& M) {
  if (M.rows() != M.cols()) throw DimensionError("determinant of non-square matrix");
  const std::size_t n = M.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix A = M;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && A(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      A.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = A(i, j) * A(k, k) - A(i, k) * A(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        A(i, j) = v;
      }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

IntMatrix unimodular_inverse(const IntMatrix& M) {
  Integer det = determinant(M);
  if (abs(det) != 1) throw InvalidArgument("matrix is not unimodular");
  auto inv = to_integer(inverse(to_quad(M)));
  if (!inv) throw InvalidArgument("matrix is not unimodular");
  return *inv;
}

IntMatrix integer_kernel(const IntMatrix& M) {
  HermiteForm h = column_hermite(M);
  IntMatrix K(M.cols(), M.cols() - h.rank);
  for (std::size_t j = h.rank; j < M.cols(); ++j)
    for (std::size_t i = 0; i < M.cols(); ++i) K(i, j - h.rank) = h.U(i, j);
  return K;
}

std::optional<IntVector> solve_integer(const IntMatrix& M, const IntVector& b) {
  if (b.size() != M.rows()) throw DimensionError("solve_integer: right-hand side length");
  HermiteForm h = column_hermite(M);
  IntVector y(M.cols(), Integer(0));
  std::size_t next_pivot = 0;
  for (std::size_t i = 0; i < M.rows(); ++i) {
    Integer acc = b[i];
    for (std::size_t j = 0; j < next_pivot; ++j) acc -= h.H(i, j) * y[j];
    if (next_pivot < h.rank && h.pivot_rows[next_pivot] == i) {
      if (!mpz_divisible_p(acc.get_mpz_t(), h.H(i, next_pivot).get_mpz_t())) return std::nullopt;
      y[next_pivot] = acc / h.H(i, next_pivot);
      ++next_pivot;
    } else if (acc != 0) {
      return std::nullopt;
    }
  }
  return h.U * y;
}

IntMatrix lattice_basis(const IntMatrix& generators) {
  HermiteForm h = column_hermite(generators);
  IntMatrix B(generators.rows(), h.rank);
  for (std::size_t i = 0; i < generators.rows(); ++i)
    for (std::size_t j = 0; j < h.rank; ++j) B(i, j) = h.H(i, j);
  return B;
}

// ---------------------------------------------------------------------------

namespace {

// Row echelon form over the field; returns the rank and accumulates the
// determinant factor.
std::size_t eliminate(QuadMatrix& A, QuadExt* det) {
  std::size_t r = 0;
  if (det) *det = QuadExt(1);
  for (std::size_t c = 0; c < A.cols() && r < A.rows(); ++c) {
    std::size_t p = r;
    while (p < A.rows() && A(p, c).is_zero()) ++p;
    if (p == A.rows()) {
      if (det) *det = QuadExt(0);
      continue;
    }
    if (p != r) {
      A.swap_rows(p, r);
      if (det) *det = -*det;
    }
    QuadExt piv = A(r, c);
    if (det) *det *= piv;
    for (std::size_t i = r + 1; i < A.rows(); ++i) {
      if (A(i, c).is_zero()) continue;
      QuadExt f = A(i, c) / piv;
      for (std::size_t j = c; j < A.cols(); ++j) A(i, j) -= f * A(r, j);
    }
    ++r;
  }
  return r;
}

}  // namespace

QuadExt determinant(const QuadMatrix& M) {
  if (M.rows() != M.cols()) throw DimensionError("determinant of non-square matrix");
  QuadMatrix A = M;
  QuadExt det;
  std::size_t r = eliminate(A, &det);
  return r == M.rows() ? det : QuadExt(0);
}

std::size_t rank(const QuadMatrix& M) {
  QuadMatrix A = M;
  return eliminate(A, nullptr);
}

QuadMatrix inverse(const QuadMatrix& M) {
  if (M.rows() != M.cols()) throw DimensionError("inverse of non-square matrix");
  const std::size_t n = M.rows();
  QuadMatrix A = M;
  QuadMatrix I = QuadMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && A(p, c).is_zero()) ++p;
    if (p == n) throw SingularEmbedding("matrix is singular");
    A.swap_rows(p, c);
    I.swap_rows(p, c);
    QuadExt piv = A(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      A(c, j) /= piv;
      I(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || A(i, c).is_zero()) continue;
      QuadExt f = A(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        A(i, j) -= f * A(c, j);
        I(i, j) -= f * I(c, j);
      }
    }
  }
  return I;
}

QuadMatrix to_quad(const IntMatrix& M) {
  QuadMatrix Q(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) Q(i, j) = QuadExt(M(i, j));
  return Q;
}

std::optional<IntMatrix> to_integer(const QuadMatrix& M) {
  IntMatrix R(M.rows(), M.cols());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) {
      const QuadExt& v = M(i, j);
      if (!v.is_rational() || v.a().get_den() != 1) return std::nullopt;
      R(i, j) = v.a().get_num();
    }
  return R;
}

std::string to_string(const IntMatrix& M) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < M.rows(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < M.cols(); ++j) os << (j ? " " : "") << M(i, j).get_str();
  }
  os << "]";
  return os.str();
}

}  // namespace meyerkit
