#pragma once

#include <optional>
#include <vector>

#include "realform/grouprep.hpp"

namespace realform {

enum class FormKind { Bilinear, Hermitian };

struct FormSpace {
  FormKind kind;
  std::vector<CMatrix> basis;

  int dimension() const { return static_cast<int>(basis.size()); }
};

/// Solutions B of rho(g)^T B rho(g) = B for every generator. For an
/// irreducible representation the space has dimension at most one.
FormSpace invariant_bilinear_space(const Representation& rep, const Tolerance& tol = {});

/// A nondegenerate Hermitian H with rho(g)* H rho(g) = H, unit Frobenius norm,
/// solved over the real vector space of Hermitian matrices. Returns nothing if
/// no invariant Hermitian form exists; raises DegenerateFormError if forms
/// exist but all of them are degenerate.
std::optional<CMatrix> invariant_hermitian(const Representation& rep,
                                           const Tolerance& tol = {});

enum class NormalizeRelation { SymplecticJ, OrthogonalI };

struct NormalizedForm {
  CMatrix form;  // t * H with the relation holding at sign +-1
  int sign = 0;
};

/// Fits the real scalar in H^T J H = mu J (SymplecticJ) or H^T H = mu I
/// (OrthogonalI) and rescales H so the relation holds with mu = +-1.
/// A fitted scalar with a significant imaginary part signals an upstream
/// failure and raises ContractError.
NormalizedForm normalize_lambda(const CMatrix& h, NormalizeRelation relation,
                                const Tolerance& tol = {});

}  // namespace realform
