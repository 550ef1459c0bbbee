#include "meyerkit/cps.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <random>
#include <thread>

namespace meyerkit {

namespace {

Integer lcm_denominators(const std::vector<Rational>& row) {
  Integer l = 1;
  for (const auto& q : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  return l;
}

// Rational components of the rows of X: first the rational parts, then (for
// D > 1) the coefficients of sqrt(D).
std::vector<std::vector<Rational>> rational_rows(const QuadMatrix& X, std::int64_t D) {
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < X.rows(); ++i) {
    std::vector<Rational> r;
    for (std::size_t j = 0; j < X.cols(); ++j) r.push_back(X(i, j).a());
    rows.push_back(std::move(r));
  }
  if (D > 1)
    for (std::size_t i = 0; i < X.rows(); ++i) {
      std::vector<Rational> r;
      for (std::size_t j = 0; j < X.cols(); ++j) r.push_back(X(i, j).b());
      rows.push_back(std::move(r));
    }
  return rows;
}

// Integer matrix whose kernel is the set of integer solutions of the
// homogeneous rational system given by `rows`.
IntMatrix scaled_integer_system(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  IntMatrix S(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Integer l = lcm_denominators(rows[i]);
    for (std::size_t j = 0; j < cols; ++j) {
      Rational v = rows[i][j] * l;
      S(i, j) = v.get_num();
    }
  }
  return S;
}

QuadExt max_norm(const QVector& v) {
  QuadExt r(0);
  for (const auto& x : v) r = max(r, abs(x));
  return r;
}

Integer max_norm(const IntVector& v) {
  Integer r = 0;
  for (const auto& x : v) r = std::max<Integer>(r, abs(x));
  return r;
}

std::size_t thread_count() {
  const char* env = std::getenv("MEYERKIT_THREADS");
  if (!env) return 1;
  long v = std::strtol(env, nullptr, 10);
  if (v < 1) return 1;
  return std::min<std::size_t>(static_cast<std::size_t>(v), std::max(1u, std::thread::hardware_concurrency()));
}

}  // namespace

// ---------------------------------------------------------------------------
// CutProjectScheme

CutProjectScheme::CutProjectScheme(QuadMatrix A, QuadMatrix B, LatticeCharacter c, std::string label)
    : A_(std::move(A)), B_(std::move(B)), label_(std::move(label)) {
  const std::size_t n = A_.cols();
  if (B_.cols() != n) throw DimensionError("A and B have different numbers of columns");
  if (c.rank() != n) throw DimensionError("character c has " + std::to_string(c.rank()) + " images, expected " +
                                          std::to_string(n));
  if (A_.rows() + B_.rows() != n)
    throw DimensionError("rank n = " + std::to_string(n) + " differs from d + m = " +
                         std::to_string(A_.rows() + B_.rows()));
  if (A_.rows() == 0) throw DimensionError("physical dimension must be positive");

  M_ = QuadMatrix(n, n);
  QVector all;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < A_.rows(); ++i) M_(i, j) = A_(i, j);
    for (std::size_t i = 0; i < B_.rows(); ++i) M_(A_.rows() + i, j) = B_(i, j);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) all.push_back(M_(i, j));
  D_ = common_field(all);
  Minv_ = inverse(M_);

  if (c.is_surjective()) {
    embedding_ = FinHom::identity(c.target());
    c_ = std::move(c);
  } else {
    auto img = character_image(c);
    c_ = std::move(img.corestricted);
    embedding_ = std::move(img.inclusion);
  }
  build_rational_system();
}

void CutProjectScheme::build_rational_system() {
  auto rows = rational_rows(A_, D_);
  phys_system_ = IntMatrix(rows.size(), n());
  phys_scale_.clear();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Integer l = lcm_denominators(rows[i]);
    phys_scale_.push_back(l);
    for (std::size_t j = 0; j < n(); ++j) {
      Rational v = rows[i][j] * l;
      phys_system_(i, j) = v.get_num();
    }
  }
}

QVector CutProjectScheme::to_quad_vector(const IntVector& z) {
  QVector v;
  v.reserve(z.size());
  for (const auto& x : z) v.emplace_back(x);
  return v;
}

HPoint CutProjectScheme::internal(const IntVector& z) const {
  if (z.size() != n()) throw DimensionError("lattice vector of wrong length");
  return {B_ * to_quad_vector(z), c_.apply(z)};
}

LatticePoint CutProjectScheme::star(const IntVector& z) const {
  if (z.size() != n()) throw DimensionError("lattice vector of wrong length");
  return {z, phys(z), internal(z)};
}

std::optional<IntVector> CutProjectScheme::coordinates_in_lattice(const QVector& x) const {
  if (x.size() != d()) throw DimensionError("physical point of wrong dimension");
  IntVector rhs;
  const std::size_t parts = phys_system_.rows() / d();
  for (std::size_t part = 0; part < parts; ++part)
    for (std::size_t i = 0; i < d(); ++i) {
      const QuadExt& v = x[i];
      if (!v.is_rational() && v.D() != D_) return std::nullopt;
      Rational comp = part == 0 ? v.a() : v.b();
      Rational scaled = comp * phys_scale_[part * d() + i];
      if (scaled.get_den() != 1) return std::nullopt;
      rhs.push_back(scaled.get_num());
    }
  if (parts == 1)
    for (const auto& v : x)
      if (!v.is_rational()) return std::nullopt;
  return solve_integer(phys_system_, rhs);
}

bool CutProjectScheme::physical_injective() const { return integer_kernel(phys_system_).cols() == 0; }

Region CutProjectScheme::restrict_window(const Region& W) const {
  if (W.m() != m()) throw DimensionError("window of internal dimension " + std::to_string(W.m()) + ", expected " +
                                         std::to_string(m()));
  if (W.group() == group()) return W;
  if (!(W.group() == declared_group()))
    throw DimensionError("window over " + W.group().str() + " but the scheme uses " + declared_group().str());
  return region_pullback(W, embedding_);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

struct EnumPlan {
  const QuadMatrix* M;
  QVector lo, hi;                     // bounds on M z, one per row
  std::vector<Integer> zlo, zhi;      // coordinate ranges
};

void enumerate_block(const CutProjectScheme& S, const EnumPlan& plan, const Integer& first_lo,
                     const Integer& first_hi, std::vector<LatticePoint>& out) {
  const QuadMatrix& M = *plan.M;
  const std::size_t n = M.cols();
  const std::size_t last = n - 1;
  IntVector z(n);
  // partial[k][r]: sum over j < k of M(r, j) z_j
  std::vector<QVector> partial(n, QVector(n, QuadExt(0)));

  auto emit_last = [&]() {
    const QVector& s = partial[last];
    Integer lo = last == 0 ? first_lo : plan.zlo[last];
    Integer hi = last == 0 ? first_hi : plan.zhi[last];
    for (std::size_t r = 0; r < n; ++r) {
      const QuadExt& coef = M(r, last);
      if (coef.is_zero()) {
        if (s[r] < plan.lo[r] || plan.hi[r] < s[r]) return;
        continue;
      }
      QuadExt a = (plan.lo[r] - s[r]) / coef, b = (plan.hi[r] - s[r]) / coef;
      if (qsign(coef) < 0) std::swap(a, b);
      lo = std::max(lo, ceil(a));
      hi = std::min(hi, floor(b));
      if (lo > hi) return;
    }
    for (Integer v = lo; v <= hi; ++v) {
      z[last] = v;
      LatticePoint p;
      p.z = z;
      QVector y(n);
      for (std::size_t r = 0; r < n; ++r) y[r] = s[r] + M(r, last) * QuadExt(v);
      p.phys.assign(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(S.d()));
      p.internal.real.assign(y.begin() + static_cast<std::ptrdiff_t>(S.d()), y.end());
      p.internal.fin = S.c().apply(z);
      out.push_back(std::move(p));
    }
  };

  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == last) {
      emit_last();
      return;
    }
    Integer lo = k == 0 ? first_lo : plan.zlo[k];
    Integer hi = k == 0 ? first_hi : plan.zhi[k];
    for (Integer v = lo; v <= hi; ++v) {
      z[k] = v;
      QuadExt qv(v);
      for (std::size_t r = 0; r < n; ++r) partial[k + 1][r] = partial[k][r] + M(r, k) * qv;
      rec(k + 1);
    }
  };
  rec(0);
}

}  // namespace

std::vector<LatticePoint> enumerate_lattice(const CutProjectScheme& S, const Box& phys_box,
                                            const std::optional<Box>& internal_box) {
  if (phys_box.size() != S.d()) throw DimensionError("physical box of wrong dimension");
  if (internal_box && internal_box->size() != S.m()) throw DimensionError("internal box of wrong dimension");
  if (!internal_box && S.m() > 0)
    throw InvalidArgument("enumeration without an internal bound is unbounded for m > 0");
  EnumPlan plan;
  plan.M = &S.stacked();
  for (const auto& iv : phys_box) {
    plan.lo.push_back(iv.lo);
    plan.hi.push_back(iv.hi);
  }
  if (internal_box)
    for (const auto& iv : *internal_box) {
      plan.lo.push_back(iv.lo);
      plan.hi.push_back(iv.hi);
    }
  const std::size_t n = S.n();
  for (std::size_t r = 0; r < n; ++r)
    if (plan.hi[r] < plan.lo[r]) return {};

  const QuadMatrix& Minv = S.stacked_inverse();
  for (std::size_t i = 0; i < n; ++i) {
    QuadExt lo(0), hi(0);
    for (std::size_t j = 0; j < n; ++j) {
      QuadExt a = Minv(i, j) * plan.lo[j], b = Minv(i, j) * plan.hi[j];
      lo += min(a, b);
      hi += max(a, b);
    }
    plan.zlo.push_back(ceil(lo));
    plan.zhi.push_back(floor(hi));
    if (plan.zlo.back() > plan.zhi.back()) return {};
  }

  const std::size_t threads = thread_count();
  const Integer span = plan.zhi[0] - plan.zlo[0] + 1;
  if (threads <= 1 || span < Integer(static_cast<long>(2 * threads))) {
    std::vector<LatticePoint> out;
    enumerate_block(S, plan, plan.zlo[0], plan.zhi[0], out);
    return out;
  }
  std::vector<std::vector<LatticePoint>> parts(threads);
  std::vector<std::thread> pool;
  Integer step = span / static_cast<long>(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    Integer lo = plan.zlo[0] + step * static_cast<long>(t);
    Integer hi = t + 1 == threads ? plan.zhi[0] : lo + step - 1;
    pool.emplace_back([&, lo, hi, t] { enumerate_block(S, plan, lo, hi, parts[t]); });
  }
  for (auto& th : pool) th.join();
  std::vector<LatticePoint> out;
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
  return out;
}

std::vector<LatticePoint> enumerate_lattice(const CutProjectScheme& S, const Box& phys_box, const Region& W) {
  auto bbox = W.real_bounding_box();
  if (!bbox) return {};
  if (S.m() == 0) return enumerate_lattice(S, phys_box, Box{});
  return enumerate_lattice(S, phys_box, *bbox);
}

// ---------------------------------------------------------------------------
// Validation

namespace {

DensityReport density_report(const CutProjectScheme& S, std::int64_t height_bound) {
  DensityReport rep;
  rep.height_bound = height_bound;
  const std::size_t m = S.m(), n = S.n(), d = S.d();

  // Integer obstructions: (k, t) with k^T B = t, k in Z^m, t in Z^n.
  if (m > 0) {
    QuadMatrix sys(n, m + n);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < m; ++i) sys(j, i) = S.B()(i, j);
      sys(j, m + j) = QuadExt(-1);
    }
    IntMatrix K = integer_kernel(scaled_integer_system(rational_rows(sys, S.field()), m + n));
    IntMatrix proj(m, K.cols());
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < K.cols(); ++j) proj(i, j) = K(i, j);
    IntMatrix basis = K.cols() ? lattice_basis(proj) : IntMatrix(m, 0);
    rep.integer_obstruction_rank = basis.cols();
    if (basis.cols() > 0) {
      // Shortest max-norm combination with small coefficients.
      const long C = 12;
      const std::size_t r = basis.cols();
      std::vector<long> coef(r, -C);
      for (;;) {
        bool nonzero = std::any_of(coef.begin(), coef.end(), [](long v) { return v != 0; });
        if (nonzero) {
          IntVector k(m, Integer(0));
          for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < m; ++i) k[i] += basis(i, j) * coef[j];
          Integer h = max_norm(k);
          if (!rep.witness_height || h < *rep.witness_height) {
            rep.witness = k;
            rep.witness_height = h;
          }
        }
        std::size_t j = 0;
        while (j < r && coef[j] == C) coef[j++] = -C;
        if (j == r) break;
        ++coef[j];
      }
      rep.obstruction_within_bound = *rep.witness_height <= height_bound;
    }
  }

  // Real annihilator: t in Z^n orthogonal to the first d columns of [A;B]^-1.
  QuadMatrix cols(d, n);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t i = 0; i < n; ++i) cols(j, i) = S.stacked_inverse()(i, j);
  IntMatrix T = integer_kernel(scaled_integer_system(rational_rows(cols, S.field()), n));
  rep.real_annihilator_rank = T.cols();
  if (T.cols() > 0) rep.annihilator_witness = T.col(0);

  rep.verdict = (rep.integer_obstruction_rank > 0 || rep.real_annihilator_rank > 0) ? "non-dense"
                                                                                     : "no-obstruction-up-to-bound";
  return rep;
}

}  // namespace

ValidationReport validate_cps(const CutProjectScheme& S, std::int64_t height_bound, std::uint64_t seed,
                              std::size_t samples) {
  ValidationReport rep;
  const std::size_t n = S.n(), d = S.d();
  rep.determinant = determinant(S.stacked());
  rep.invertible = !rep.determinant.is_zero();
  rep.physical_injective = S.physical_injective();
  rep.density = density_report(S, height_bound);
  rep.declared_group_size = S.declared_group().size();
  rep.image_group_size = S.group().size();
  rep.c_surjective = rep.declared_group_size == rep.image_group_size;

  // Separation: start from multiples of basis vectors lying in ker c.
  const QuadMatrix& M = S.stacked();
  std::optional<QuadExt> rho;
  for (std::size_t j = 0; j < n; ++j) {
    IntVector z(n, Integer(0));
    z[j] = 1;
    FinElement fj = S.c().apply(z);
    long order = 1;
    while (S.group().scale(order, fj) != S.group().zero()) ++order;
    z[j] = order;
    QuadExt v = max_norm(M * CutProjectScheme::to_quad_vector(z));
    if (!rho || v < *rho) {
      rho = v;
      rep.separation_witness = z;
    }
  }
  rep.separation = *rho;
  Box phys(d, Interval{-*rho, *rho}), internal(S.m(), Interval{-*rho, *rho});
  for (const auto& p : enumerate_lattice(S, phys, internal)) {
    if (std::all_of(p.z.begin(), p.z.end(), [](const Integer& x) { return x == 0; })) continue;
    if (p.internal.fin != S.group().zero()) continue;
    QVector y = p.phys;
    y.insert(y.end(), p.internal.real.begin(), p.internal.real.end());
    QuadExt v = max_norm(y);
    if (v < rep.separation) {
      rep.separation = v;
      rep.separation_witness = p.z;
    }
  }

  // Covering: the image of the unit cube is a fundamental domain.
  rep.covering_box.resize(n);
  for (std::size_t r = 0; r < n; ++r) {
    QuadExt lo(0), hi(0);
    for (std::size_t j = 0; j < n; ++j) {
      lo += min(QuadExt(0), M(r, j));
      hi += max(QuadExt(0), M(r, j));
    }
    rep.covering_box[r] = {lo, hi};
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coord(-50000, 50000);
  rep.covering_verified = true;
  for (std::size_t s = 0; s < samples; ++s) {
    QVector y;
    for (std::size_t r = 0; r < n; ++r) y.emplace_back(Rational(coord(rng), 1000));
    QVector t = S.stacked_inverse() * y;
    IntVector z;
    for (const auto& v : t) z.push_back(floor(v));
    QVector rest = M * CutProjectScheme::to_quad_vector(z);
    for (std::size_t r = 0; r < n; ++r) rest[r] = y[r] - rest[r];
    if (!box_contains_point(rep.covering_box, rest)) rep.covering_verified = false;
    ++rep.covering_samples;
  }
  return rep;
}

}  // namespace meyerkit
