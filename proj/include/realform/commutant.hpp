#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "realform/grouprep.hpp"

namespace realform {

/// Orthonormal basis (Frobenius inner product) of the joint commutant
/// { X : X rho(g) = rho(g) X for every generator }.
std::vector<CMatrix> commutant_basis(const Representation& rep, const Tolerance& tol = {});

/// Dimension of the unital algebra generated by the generator images.
/// Raises IndeterminateError when a rank decision falls within a factor of 10
/// of the singular-value threshold.
int generated_algebra_dimension(const Representation& rep, const Tolerance& tol = {});

/// True iff the commutant is one-dimensional and the generated algebra is the
/// full matrix algebra (Burnside).
bool is_irreducible(const Representation& rep, const Tolerance& tol = {});

struct IntertwinerResult {
  /// Unit-norm invertible P with P rho1(g) = rho2(g) P, when one exists.
  std::optional<CMatrix> matrix;
  /// Dimension of the full solution space (invertible or not).
  int space_dimension = 0;
};

IntertwinerResult intertwiner(const Representation& rep1, const Representation& rep2,
                              const Tolerance& tol = {});

struct IsotypicBlock {
  Representation factor;  // irreducible representative, ambient kind GL(d)
  int multiplicity = 1;
  /// n x (d * multiplicity) matrix; columns [k*d, (k+1)*d) are an orthonormal
  /// basis of the k-th copy of the factor.
  CMatrix basis;
};

struct IsotypicDecomposition {
  std::vector<IsotypicBlock> blocks;
};

/// Splits a semi-simple representation into isotypic components via the
/// eigenspaces of a seeded random commutant element. Two independent draws
/// must produce the same block partition; after five disagreeing retries the
/// operation fails. Non-semi-simple input raises SemisimplicityError.
IsotypicDecomposition isotypic_decomposition(const Representation& rep,
                                             const Tolerance& tol = {},
                                             std::uint64_t seed = 20240531);

}  // namespace realform
