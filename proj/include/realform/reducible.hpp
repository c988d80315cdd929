#pragma once

#include "realform/classifier.hpp"
#include "realform/commutant.hpp"

namespace realform {

/// Matching of the isotypic blocks of a Phi-fixed semi-simple representation:
/// each block is either conjugate to its own Phi-image or paired with a
/// distinct partner block of equal multiplicity.
struct PhiPairing {
  IsotypicDecomposition decomposition;
  std::vector<int> self_paired;                 // block indices
  std::vector<std::pair<int, int>> cross_paired; // (block, partner) indices
};

PhiPairing split_phi_stable(const Representation& rep, Involution which,
                            const Tolerance& tol = {});

/// The doubling construction for a factor paired with its Phi-image.
struct DoubleBlock {
  RealFormTag tag;      // GL_H(r) for Phi1, U(r,r) for Phi2
  CMatrix conjugator;   // takes rho + Phi(rho) into the tagged form
  CMatrix form;         // Phi2: the split Hermitian form [[0,I],[I,0]]
};

/// Phi1: conjugates rho + conj(rho) into quaternionic block form by the
/// explicit block matrix [[I, I], [-I, I]] (normalized). Phi2: rho + Phi2(rho)
/// preserves the split Hermitian form of signature (r, r) exactly; the
/// returned conjugator moves that form to I_{r,r}.
DoubleBlock double_block_conjugate(const Representation& subrep, Involution which);

/// Classification of a semi-simple GL representation with Phi-fixed
/// character. Phi2 always lands in a single U(p,q); Phi1 produces a real
/// block plus a quaternionic block (a composite certificate when both occur).
ConjugationCertificate classify_semisimple(const Representation& rep, Involution which,
                                           const Tolerance& tol = {});

}  // namespace realform
