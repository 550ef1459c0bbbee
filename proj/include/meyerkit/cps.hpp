#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "meyerkit/fingroup.hpp"
#include "meyerkit/matrix.hpp"
#include "meyerkit/region.hpp"

namespace meyerkit {

struct LatticePoint {
  IntVector z;
  QVector phys;    ///< A z
  HPoint internal; ///< (B z, c(z))
};

/*
 * Cut-and-project scheme with structure group Z^n embedded as
 * z -> ((B z, c(z)), A z) in (R^m x F) x R^d.
 *
 * The finite group is replaced by the image of c at construction; the
 * original group stays reachable through declared_group() and embedding().
 */
class CutProjectScheme {
 public:
  CutProjectScheme() = default;
  /// Throws DimensionError on shape mismatch and SingularEmbedding when the
  /// stacked matrix [A; B] is not invertible.
  CutProjectScheme(QuadMatrix A, QuadMatrix B, LatticeCharacter c, std::string label = {});

  std::size_t d() const noexcept { return A_.rows(); }
  std::size_t m() const noexcept { return B_.rows(); }
  std::size_t n() const noexcept { return A_.cols(); }
  std::int64_t field() const noexcept { return D_; }
  const std::string& label() const noexcept { return label_; }

  const QuadMatrix& A() const noexcept { return A_; }
  const QuadMatrix& B() const noexcept { return B_; }
  const LatticeCharacter& c() const noexcept { return c_; }
  const FinAbGroup& group() const noexcept { return c_.target(); }
  const FinAbGroup& declared_group() const noexcept { return embedding_.codomain(); }
  /// Inclusion of group() into the finite group the scheme was declared with.
  const FinHom& embedding() const noexcept { return embedding_; }

  /// [A; B] and its inverse.
  const QuadMatrix& stacked() const noexcept { return M_; }
  const QuadMatrix& stacked_inverse() const noexcept { return Minv_; }

  QVector phys(const IntVector& z) const { return A_ * to_quad_vector(z); }
  HPoint internal(const IntVector& z) const;
  LatticePoint star(const IntVector& z) const;

  /// Some z with A z = x, if x lies in the structure group A Z^n.
  std::optional<IntVector> coordinates_in_lattice(const QVector& x) const;
  /// True when z -> A z is injective on Z^n.
  bool physical_injective() const;

  /// Window regions declared over declared_group(), restricted to group().
  Region restrict_window(const Region& W) const;

  static QVector to_quad_vector(const IntVector& z);

 private:
  /// Integer system equivalent to A z = x over the rational components.
  void build_rational_system();

  QuadMatrix A_, B_, M_, Minv_;
  LatticeCharacter c_;
  FinHom embedding_;
  std::string label_;
  std::int64_t D_ = 1;
  IntMatrix phys_system_;          ///< rows: rational components of A, scaled
  std::vector<Integer> phys_scale_; ///< per-row scale factor
};

/// Every z with A z in phys_box and, when given, B z in internal_box, in
/// lexicographic order of z. Without internal_box the request must be
/// bounded on its own (m = 0), else InvalidArgument. An empty box yields no
/// points. Work is split over MEYERKIT_THREADS threads when set.
std::vector<LatticePoint> enumerate_lattice(const CutProjectScheme& S, const Box& phys_box,
                                            const std::optional<Box>& internal_box);

/// Convenience overload: internal bound given by the real bounding box of W.
std::vector<LatticePoint> enumerate_lattice(const CutProjectScheme& S, const Box& phys_box, const Region& W);

struct DensityReport {
  std::int64_t height_bound = 0;
  /// Rank of {k in Z^m : k^T B in Z^n}.
  std::size_t integer_obstruction_rank = 0;
  /// Rank of Z^n intersected with the real row space of B; zero exactly when
  /// B Z^n is dense in R^m.
  std::size_t real_annihilator_rank = 0;
  /// Shortest integer obstruction k found and its max-norm height.
  std::optional<IntVector> witness;
  std::optional<Integer> witness_height;
  bool obstruction_within_bound = false;
  /// Nonzero integer vector t = k^T B for some real k when the real
  /// annihilator is nontrivial.
  std::optional<IntVector> annihilator_witness;
  std::string verdict;  ///< "non-dense" or "no-obstruction-up-to-bound"
};

struct ValidationReport {
  QuadExt determinant;
  bool invertible = false;
  bool physical_injective = false;
  DensityReport density;
  bool c_surjective = false;       ///< onto the declared group
  std::int64_t declared_group_size = 1;
  std::int64_t image_group_size = 1;
  QuadExt separation;              ///< min max-norm of [A;B] z over z != 0, c(z) = 0
  IntVector separation_witness;
  Box covering_box;                ///< compact K with lattice + K x F = everything
  std::size_t covering_samples = 0;
  bool covering_verified = false;
  bool ok() const { return invertible && covering_verified && qsign(separation) > 0; }
};

ValidationReport validate_cps(const CutProjectScheme& S, std::int64_t height_bound, std::uint64_t seed = 1,
                              std::size_t samples = 256);

}  // namespace meyerkit
