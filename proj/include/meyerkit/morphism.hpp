#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "meyerkit/cps.hpp"
#include "meyerkit/modelset.hpp"

namespace meyerkit {

/*
 * Morphism theta = (T, f) from the internal space of `source` to that of
 * `target`, together with the inclusion of structure groups. The finite part
 * f acts between the declared finite groups of the two schemes.
 */
struct MorphismSpec {
  CutProjectScheme source;
  CutProjectScheme target;
  QuadMatrix T;              ///< m2 x m1
  FinHom f;                  ///< declared F1 -> declared F2
  IntMatrix gamma_inclusion; ///< n2 x n1, basis of Gamma1 in Gamma2 coordinates
};

struct MorphismReport {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Checks shapes, full column rank of the inclusion, A2 G = A1, and on every
/// basis vector e_k: T B1 e_k = B2 G e_k and f(c1(e_k)) = c2(G e_k).
MorphismReport validate_morphism(const MorphismSpec& spec);

struct OntoOpen {
  bool onto = false;
  bool open = false;
  bool image_open_subgroup = false;
  /// onto and open when the structure groups agree; open with an open image
  /// for a proper finite-index inclusion.
  bool pass = false;
};
OntoOpen onto_open_check(const MorphismSpec& spec);

/// The scheme restricted to the sublattice spanned by the columns of `basis`.
CutProjectScheme sublattice_cps(const CutProjectScheme& S, const IntMatrix& basis);

struct SplitObstruction {
  std::size_t generator = 0;  ///< Smith generator whose image is not divisible
  std::string message;
};

/*
 * Amalgam of S1 along Gamma1 -> Gamma2, where `K` (n x n, nonzero
 * determinant) expresses the Gamma1 basis in Gamma2 coordinates.
 *
 * amalgamated_cps keeps F and extends c to Gamma2 when possible.
 * genuine_amalgam uses E = (F + Z^n) / <(-c1(y), K y)>, which always exists.
 */
std::variant<CutProjectScheme, SplitObstruction> amalgamated_cps(const CutProjectScheme& S1, const IntMatrix& K);

struct Amalgam {
  CutProjectScheme cps;
  FinHom from_F;  ///< f -> [f, 0], from S1.group() into E
};
Amalgam genuine_amalgam(const CutProjectScheme& S1, const IntMatrix& K);

/// The homomorphism Theta from the finite group of `amalgam` to the group of
/// `target` with Theta(c_amalgam(z)) = c_target(z); throws InvalidArgument if
/// no such homomorphism exists.
FinHom amalgam_to_target(const CutProjectScheme& amalgam, const CutProjectScheme& target);

/// Windows of `target` transported to `amalgam` through Theta.
WindowSet pull_windows(const WindowSet& W, const CutProjectScheme& amalgam, const CutProjectScheme& target);

/// True when S2 equals S1 after a unimodular change of lattice basis with
/// identical finite data.
std::optional<IntMatrix> same_cps_up_to_basis(const CutProjectScheme& S1, const CutProjectScheme& S2);

}  // namespace meyerkit
