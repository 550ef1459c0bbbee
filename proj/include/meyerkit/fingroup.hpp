#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "meyerkit/matrix.hpp"

namespace meyerkit {

/// Element of a finite abelian group: residues (x_j) with 0 <= x_j < q_j.
using FinElement = std::vector<std::int64_t>;

/// Upper bound on |F| for the exhaustive algorithms below.
inline constexpr std::int64_t kDefaultGroupCap = std::int64_t{1} << 16;

/// F = Z/q_1 x ... x Z/q_k (empty order list: trivial group).
class FinAbGroup {
 public:
  FinAbGroup() = default;
  explicit FinAbGroup(std::vector<std::int64_t> orders);

  const std::vector<std::int64_t>& orders() const noexcept { return orders_; }
  std::size_t rank() const noexcept { return orders_.size(); }
  std::int64_t size() const noexcept { return size_; }
  bool is_trivial() const noexcept { return size_ == 1; }

  FinElement zero() const { return FinElement(orders_.size(), 0); }
  FinElement generator(std::size_t j) const;
  bool contains(const FinElement& x) const;
  /// Reduces arbitrary integers into canonical residues.
  FinElement reduce(const std::vector<std::int64_t>& x) const;
  FinElement reduce(const IntVector& x) const;
  FinElement add(const FinElement& x, const FinElement& y) const;
  FinElement neg(const FinElement& x) const;
  FinElement sub(const FinElement& x, const FinElement& y) const { return add(x, neg(y)); }
  FinElement scale(std::int64_t k, const FinElement& x) const;

  /// All elements in lexicographic order (throws above the cap).
  std::vector<FinElement> elements(std::int64_t cap = kDefaultGroupCap) const;
  std::int64_t index_of(const FinElement& x) const;
  FinElement element_at(std::int64_t index) const;

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.orders_ == b.orders_; }

  std::string str() const;

 private:
  std::vector<std::int64_t> orders_;
  std::int64_t size_ = 1;
};

/// Homomorphism between finite abelian groups given by generator images.
class FinHom {
 public:
  FinHom() = default;
  /// Throws InvalidArgument unless q_j * image_j = 0 for every generator.
  FinHom(FinAbGroup domain, FinAbGroup codomain, std::vector<FinElement> images);

  static FinHom identity(const FinAbGroup& g);
  static FinHom zero(const FinAbGroup& domain, const FinAbGroup& codomain);

  const FinAbGroup& domain() const noexcept { return domain_; }
  const FinAbGroup& codomain() const noexcept { return codomain_; }
  const std::vector<FinElement>& images() const noexcept { return images_; }

  FinElement apply(const FinElement& x) const;
  FinHom compose_after(const FinHom& first) const;  ///< this o first
  bool is_surjective() const;
  bool is_injective() const;
  std::set<FinElement> image() const;
  std::set<FinElement> kernel() const;

  friend bool operator==(const FinHom& a, const FinHom& b) {
    return a.domain_ == b.domain_ && a.codomain_ == b.codomain_ && a.images_ == b.images_;
  }

 private:
  FinAbGroup domain_;
  FinAbGroup codomain_;
  std::vector<FinElement> images_;
};

/// Homomorphism Z^n -> F given by the images of the standard basis.
class LatticeCharacter {
 public:
  LatticeCharacter() = default;
  LatticeCharacter(FinAbGroup target, std::vector<FinElement> images);

  const FinAbGroup& target() const noexcept { return target_; }
  const std::vector<FinElement>& images() const noexcept { return images_; }
  std::size_t rank() const noexcept { return images_.size(); }

  FinElement apply(const std::vector<std::int64_t>& z) const;
  FinElement apply(const IntVector& z) const;
  /// Precomposition with an integer matrix: z -> this(M z).
  LatticeCharacter compose(const IntMatrix& M) const;
  /// Postcomposition with a finite homomorphism.
  LatticeCharacter then(const FinHom& h) const;
  std::set<FinElement> image() const;
  bool is_surjective() const { return static_cast<std::int64_t>(image().size()) == target_.size(); }

  friend bool operator==(const LatticeCharacter& a, const LatticeCharacter& b) {
    return a.target_ == b.target_ && a.images_ == b.images_;
  }

 private:
  FinAbGroup target_;
  std::vector<FinElement> images_;
};

/// Canonical cyclic decomposition of Z^k / R, R spanned by the columns of
/// `relations` (assumed of full rank k).
struct FinitePresentation {
  FinAbGroup group;
  /// Row j maps Z^k onto coordinate j of `group` (reduce modulo its order).
  IntMatrix coordinates;
  /// Column j is a preimage in Z^k of the j-th generator of `group`.
  IntMatrix generator_lifts;

  FinElement project(const IntVector& x) const;
};
FinitePresentation present_quotient(const IntMatrix& relations);

struct SubgroupQuotient {
  std::set<FinElement> subgroup;
  FinAbGroup quotient;
  FinHom projection;
};
/// Subgroup generated by `generators` (by exhaustion) and the canonical
/// quotient F / <generators> with its projection.
SubgroupQuotient subgroup_and_quotient(const FinAbGroup& F, const std::vector<FinElement>& generators,
                                       std::int64_t cap = kDefaultGroupCap);

std::set<FinElement> generated_subgroup(const FinAbGroup& F, const std::vector<FinElement>& generators,
                                        std::int64_t cap = kDefaultGroupCap);
bool is_subgroup(const FinAbGroup& F, const std::set<FinElement>& S);

/// Image of a lattice character as an abstract group together with the
/// corestricted character and the inclusion of the image into the target.
struct CharacterImage {
  LatticeCharacter corestricted;
  FinHom inclusion;
};
CharacterImage character_image(const LatticeCharacter& c);

std::string element_str(const FinElement& x);

}  // namespace meyerkit
