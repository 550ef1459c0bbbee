#include "meyerkit/fingroup.hpp"

#include <deque>
#include <sstream>

namespace meyerkit {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t q) {
  std::int64_t r = a % q;
  return r < 0 ? r + q : r;
}

std::int64_t mod(const Integer& a, std::int64_t q) {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(q));
  return r.get_si();
}

}  // namespace

FinAbGroup::FinAbGroup(std::vector<std::int64_t> orders) : orders_(std::move(orders)) {
  size_ = 1;
  for (auto q : orders_) {
    if (q < 1) throw InvalidArgument("cyclic factor order must be >= 1");
    if (size_ > (std::int64_t{1} << 40) / q) throw InvalidArgument("finite group too large");
    size_ *= q;
  }
}

FinElement FinAbGroup::generator(std::size_t j) const {
  FinElement e = zero();
  e.at(j) = orders_[j] == 1 ? 0 : 1;
  return e;
}

bool FinAbGroup::contains(const FinElement& x) const {
  if (x.size() != orders_.size()) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] < 0 || x[j] >= orders_[j]) return false;
  return true;
}

FinElement FinAbGroup::reduce(const std::vector<std::int64_t>& x) const {
  if (x.size() != orders_.size()) throw DimensionError("element has wrong length for " + str());
  FinElement r(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) r[j] = mod(x[j], orders_[j]);
  return r;
}

FinElement FinAbGroup::reduce(const IntVector& x) const {
  if (x.size() != orders_.size()) throw DimensionError("element has wrong length for " + str());
  FinElement r(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) r[j] = mod(x[j], orders_[j]);
  return r;
}

FinElement FinAbGroup::add(const FinElement& x, const FinElement& y) const {
  if (x.size() != orders_.size() || y.size() != orders_.size()) throw DimensionError("element/group mismatch");
  FinElement r(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) r[j] = mod(x[j] + y[j], orders_[j]);
  return r;
}

FinElement FinAbGroup::neg(const FinElement& x) const {
  FinElement r(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) r[j] = mod(-x[j], orders_.at(j));
  return r;
}

FinElement FinAbGroup::scale(std::int64_t k, const FinElement& x) const {
  FinElement r(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) r[j] = mod(mod(k, orders_[j]) * x[j], orders_[j]);
  return r;
}

std::vector<FinElement> FinAbGroup::elements(std::int64_t cap) const {
  if (size_ > cap) throw InvalidArgument("finite group " + str() + " exceeds the exhaustion cap");
  std::vector<FinElement> out;
  out.reserve(static_cast<std::size_t>(size_));
  for (std::int64_t i = 0; i < size_; ++i) out.push_back(element_at(i));
  return out;
}

std::int64_t FinAbGroup::index_of(const FinElement& x) const {
  std::int64_t idx = 0;
  for (std::size_t j = 0; j < orders_.size(); ++j) idx = idx * orders_[j] + x[j];
  return idx;
}

FinElement FinAbGroup::element_at(std::int64_t index) const {
  FinElement x(orders_.size());
  for (std::size_t j = orders_.size(); j-- > 0;) {
    x[j] = index % orders_[j];
    index /= orders_[j];
  }
  return x;
}

std::string FinAbGroup::str() const {
  if (orders_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t j = 0; j < orders_.size(); ++j) os << (j ? " x " : "") << "Z/" << orders_[j];
  return os.str();
}

// ---------------------------------------------------------------------------

FinHom::FinHom(FinAbGroup domain, FinAbGroup codomain, std::vector<FinElement> images)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), images_(std::move(images)) {
  if (images_.size() != domain_.rank()) throw DimensionError("homomorphism needs one image per generator");
  for (std::size_t j = 0; j < images_.size(); ++j) {
    if (!codomain_.contains(images_[j])) images_[j] = codomain_.reduce(images_[j]);
    if (codomain_.scale(domain_.orders()[j], images_[j]) != codomain_.zero())
      throw InvalidArgument("homomorphism not well defined on generator " + std::to_string(j));
  }
}

FinHom FinHom::identity(const FinAbGroup& g) {
  std::vector<FinElement> imgs;
  for (std::size_t j = 0; j < g.rank(); ++j) imgs.push_back(g.generator(j));
  return FinHom(g, g, imgs);
}

FinHom FinHom::zero(const FinAbGroup& domain, const FinAbGroup& codomain) {
  return FinHom(domain, codomain, std::vector<FinElement>(domain.rank(), codomain.zero()));
}

FinElement FinHom::apply(const FinElement& x) const {
  if (x.size() != domain_.rank()) throw DimensionError("element/domain mismatch");
  FinElement r = codomain_.zero();
  for (std::size_t j = 0; j < x.size(); ++j) r = codomain_.add(r, codomain_.scale(x[j], images_[j]));
  return r;
}

FinHom FinHom::compose_after(const FinHom& first) const {
  if (!(first.codomain_ == domain_)) throw DimensionError("composition of incompatible homomorphisms");
  std::vector<FinElement> imgs;
  for (const auto& y : first.images_) imgs.push_back(apply(y));
  return FinHom(first.domain_, codomain_, imgs);
}

std::set<FinElement> FinHom::image() const { return generated_subgroup(codomain_, images_); }

bool FinHom::is_surjective() const { return static_cast<std::int64_t>(image().size()) == codomain_.size(); }

std::set<FinElement> FinHom::kernel() const {
  std::set<FinElement> k;
  for (const auto& x : domain_.elements())
    if (apply(x) == codomain_.zero()) k.insert(x);
  return k;
}

bool FinHom::is_injective() const { return kernel().size() == 1; }

// ---------------------------------------------------------------------------

LatticeCharacter::LatticeCharacter(FinAbGroup target, std::vector<FinElement> images)
    : target_(std::move(target)), images_(std::move(images)) {
  for (auto& y : images_) y = target_.reduce(y);
}

FinElement LatticeCharacter::apply(const std::vector<std::int64_t>& z) const {
  if (z.size() != images_.size()) throw DimensionError("lattice vector has wrong rank");
  FinElement r = target_.zero();
  for (std::size_t k = 0; k < z.size(); ++k) r = target_.add(r, target_.scale(z[k], images_[k]));
  return r;
}

FinElement LatticeCharacter::apply(const IntVector& z) const {
  if (z.size() != images_.size()) throw DimensionError("lattice vector has wrong rank");
  FinElement r = target_.zero();
  for (std::size_t k = 0; k < z.size(); ++k) {
    FinElement term(target_.rank());
    for (std::size_t j = 0; j < target_.rank(); ++j) {
      std::int64_t q = target_.orders()[j];
      term[j] = mod(Integer(z[k] * images_[k][j]), q);
    }
    r = target_.add(r, term);
  }
  return r;
}

LatticeCharacter LatticeCharacter::compose(const IntMatrix& M) const {
  if (M.rows() != images_.size()) throw DimensionError("character/matrix shape mismatch");
  std::vector<FinElement> imgs;
  for (std::size_t j = 0; j < M.cols(); ++j) imgs.push_back(apply(M.col(j)));
  return LatticeCharacter(target_, imgs);
}

LatticeCharacter LatticeCharacter::then(const FinHom& h) const {
  if (!(h.domain() == target_)) throw DimensionError("character/homomorphism mismatch");
  std::vector<FinElement> imgs;
  for (const auto& y : images_) imgs.push_back(h.apply(y));
  return LatticeCharacter(h.codomain(), imgs);
}

std::set<FinElement> LatticeCharacter::image() const { return generated_subgroup(target_, images_); }

// ---------------------------------------------------------------------------

FinElement FinitePresentation::project(const IntVector& x) const { return group.reduce(coordinates * x); }

FinitePresentation present_quotient(const IntMatrix& relations) {
  const std::size_t k = relations.rows();
  FinitePresentation out;
  if (k == 0) {
    out.coordinates = IntMatrix(0, 0);
    out.generator_lifts = IntMatrix(0, 0);
    return out;
  }
  SmithForm s = smith_form(relations);
  if (s.rank < k) throw InvalidArgument("relation lattice does not have full rank");
  IntMatrix Pinv = unimodular_inverse(s.P);
  std::vector<std::int64_t> orders;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < k; ++i) {
    if (s.diag[i] == 1) continue;
    if (!s.diag[i].fits_slong_p()) throw InvalidArgument("quotient group too large");
    orders.push_back(s.diag[i].get_si());
    kept.push_back(i);
  }
  out.group = FinAbGroup(orders);
  out.coordinates = IntMatrix(kept.size(), k);
  out.generator_lifts = IntMatrix(k, kept.size());
  for (std::size_t r = 0; r < kept.size(); ++r)
    for (std::size_t c = 0; c < k; ++c) {
      out.coordinates(r, c) = s.P(kept[r], c);
      out.generator_lifts(c, r) = Pinv(c, kept[r]);
    }
  return out;
}

std::set<FinElement> generated_subgroup(const FinAbGroup& F, const std::vector<FinElement>& generators,
                                        std::int64_t cap) {
  if (F.size() > cap) throw InvalidArgument("finite group " + F.str() + " exceeds the exhaustion cap");
  std::set<FinElement> seen{F.zero()};
  std::deque<FinElement> frontier{F.zero()};
  while (!frontier.empty()) {
    FinElement x = frontier.front();
    frontier.pop_front();
    for (const auto& g : generators) {
      FinElement y = F.add(x, F.reduce(g));
      if (seen.insert(y).second) frontier.push_back(y);
    }
  }
  return seen;
}

bool is_subgroup(const FinAbGroup& F, const std::set<FinElement>& S) {
  if (!S.count(F.zero())) return false;
  for (const auto& x : S)
    for (const auto& y : S)
      if (!S.count(F.sub(x, y))) return false;
  return true;
}

SubgroupQuotient subgroup_and_quotient(const FinAbGroup& F, const std::vector<FinElement>& generators,
                                       std::int64_t cap) {
  for (const auto& g : generators)
    if (!F.contains(g)) throw InvalidArgument("generator " + element_str(g) + " is not an element of " + F.str());
  SubgroupQuotient out;
  out.subgroup = generated_subgroup(F, generators, cap);

  const std::size_t r = F.rank();
  IntMatrix rel(r, r + generators.size());
  for (std::size_t j = 0; j < r; ++j) rel(j, j) = F.orders()[j];
  for (std::size_t g = 0; g < generators.size(); ++g)
    for (std::size_t j = 0; j < r; ++j) rel(j, r + g) = generators[g][j];
  FinitePresentation pres = present_quotient(rel);
  out.quotient = pres.group;
  std::vector<FinElement> imgs;
  for (std::size_t j = 0; j < r; ++j) {
    IntVector e(r, Integer(0));
    e[j] = 1;
    imgs.push_back(pres.project(e));
  }
  out.projection = FinHom(F, pres.group, imgs);
  return out;
}

CharacterImage character_image(const LatticeCharacter& c) {
  const FinAbGroup& F = c.target();
  const std::size_t n = c.rank();
  const std::size_t r = F.rank();
  // Kernel of z -> c(z): project the integer kernel of [C | diag(q)].
  IntMatrix joint(r, n + r);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 0; k < n; ++k) joint(j, k) = c.images()[k][j];
    joint(j, n + j) = F.orders()[j];
  }
  IntMatrix relations;
  if (r == 0) {
    relations = IntMatrix::identity(n);
  } else {
    IntMatrix ker = integer_kernel(joint);
    relations = IntMatrix(n, ker.cols());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < ker.cols(); ++j) relations(i, j) = ker(i, j);
  }
  FinitePresentation pres = present_quotient(relations);
  std::vector<FinElement> imgs;
  for (std::size_t k = 0; k < n; ++k) {
    IntVector e(n, Integer(0));
    e[k] = 1;
    imgs.push_back(pres.project(e));
  }
  std::vector<FinElement> incl;
  for (std::size_t j = 0; j < pres.group.rank(); ++j) incl.push_back(c.apply(pres.generator_lifts.col(j)));
  return {LatticeCharacter(pres.group, imgs), FinHom(pres.group, F, incl)};
}

std::string element_str(const FinElement& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t j = 0; j < x.size(); ++j) os << (j ? "," : "") << x[j];
  os << ")";
  return os.str();
}

}  // namespace meyerkit
