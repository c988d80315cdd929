#pragma once

#include <optional>
#include <string>
#include <vector>

#include "realform/invariants.hpp"

namespace realform {

struct BlockCertificateInfo {
  RealFormTag tag;
  int multiplicity = 1;
};

/// A checkable witness that P rho P^{-1} takes values in the tagged real
/// form: the tag, the conjugator, and the per-generator residuals of the
/// form's defining equations after conjugation.
struct ConjugationCertificate {
  RealFormTag tag;
  CMatrix conjugator;
  std::vector<double> residuals;  // one entry per generator
  std::optional<int> lambda_sign; // Sp and even-orthogonal branches only
  std::string branch;             // which case of the proof fired
  std::vector<BlockCertificateInfo> blocks;  // semi-simple composites only

  double max_residual() const;
};

/// Conjugates an irreducible representation with Phi-fixed character into an
/// explicit real form of its ambient group. Branches follow the case split of
/// the classification: invariant Hermitian form for GL/SL with Phi2,
/// conjugation intertwiner and Hilbert 90 (or the J-pairing) for Phi1,
/// lambda = +-1 subcases for the symplectic and orthogonal kinds.
ConjugationCertificate classify_irreducible(const Representation& rep, Involution which,
                                            const Tolerance& tol = {});

/// Recomputes the conjugated generators and their membership residuals
/// independently of the branch that produced the certificate.
ResidualReport verify_certificate(const Representation& rep,
                                  const ConjugationCertificate& cert,
                                  const Tolerance& tol = {});

/// Given two representations into the compact form of the ambient group that
/// are conjugated by an invertible P, the unitary polar factor of P also
/// conjugates them and lies in the compact form.
CMatrix compact_conjugator(const Representation& rep1, const Representation& rep2,
                           const CMatrix& p, const Tolerance& tol = {});

/// The compact real form of an ambient classical group.
RealFormTag compact_form_of(const GroupKind& kind);

}  // namespace realform
