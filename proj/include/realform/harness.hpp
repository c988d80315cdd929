#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "realform/classifier.hpp"

namespace realform {

struct TrialReport {
  RealFormTag seeded;
  std::optional<RealFormTag> recovered;
  double max_residual = 0;
  bool irreducible = false;
  bool skipped = false;
  bool pass = false;
  double elapsed_seconds = 0;
  std::uint64_t seed = 0;
  std::string detail;
};

/// Generators inside the tagged real form, by exponentials of seeded random
/// Lie-algebra elements (Gaussian entries at scale 0.5). Orthogonal O-kind
/// tags mix in a reflection so both components are reachable.
Representation sample_real_form(const RealFormTag& tag, int num_generators,
                                std::uint64_t seed);

/// A generic element of the identity component of the ambient group.
CMatrix sample_ambient(const GroupKind& kind, std::uint64_t seed);

/// The involution whose fixed locus contains the tag's character variety.
Involution involution_for(const RealFormTag& tag);

/// Recovered-vs-seeded equality up to the documented identifications:
/// O(m,H) = SO(m,H), and the SO(m,H)/SO^-(m,H) determinant caveat in
/// ambient dimension 4m.
bool tags_match(const RealFormTag& seeded, const RealFormTag& recovered);

/// sample -> scramble -> classify -> verify. Reducible samples are redrawn up
/// to ten times and then reported as skipped; classification errors are
/// caught into a failed report, never a crash.
TrialReport roundtrip_trial(const RealFormTag& tag, int num_generators,
                            std::uint64_t seed, const Tolerance& tol = {});

/// Every row of the real-forms table with ambient dimension <= max_ambient.
std::vector<RealFormTag> real_form_tags(int max_ambient);

}  // namespace realform
