#pragma once

#include <optional>
#include <vector>

#include "realform/grouprep.hpp"

namespace realform {

/// A reduced word in the free group: signed 1-based generator letters,
/// +i for generator i, -i for its inverse.
using Word = std::vector<int>;

Word inverse_word(const Word& w);

/// Deterministic inversion-closed list of reduced words, graded by length and
/// ordered lexicographically over the alphabet +1 < -1 < +2 < -2 < ...
struct WordList {
  int num_generators = 0;
  std::vector<Word> words;

  int size() const { return static_cast<int>(words.size()); }
  /// Index of the inverse of word i (the list is closed under inversion).
  int inverse_index(int i) const;
};

/// All reduced words of length 1 .. min(cap, 2^n - 1). The exponential bound
/// is the word-length cap sufficient for trace coordinates in dimension n.
WordList word_list(int num_generators, int ambient_dimension, int cap);

/// Default word-length cap used for coordinate cross-checks.
inline constexpr int kDefaultWordCap = 4;

CMatrix evaluate_word(const Representation& rep, const Word& w);

struct CharacterCoordinates {
  WordList words;
  CVector traces;
  /// Diagonal Q-coordinates Q(rho(w), ..., rho(w)), present only for the
  /// even special-orthogonal kind.
  std::optional<CVector> qvalues;
};

CharacterCoordinates trace_coordinates(const Representation& rep, const WordList& words);

/// The signed permutation sum Q(A_1, ..., A_n) over S_{2n}; the full
/// polarization of the Pfaffian: Q(A, ..., A) = 2^n n! Pf(A - A^T).
/// Takes n matrices of size 2n x 2n with 2n <= 8.
Complex q_function(const std::vector<CMatrix>& mats);

enum class Involution { Phi1, Phi2 };

/// Phi1 conjugates every generator entrywise; Phi2 maps each generator to its
/// conjugate-transpose inverse. Both preserve the ambient kind.
Representation involution_image(const Representation& rep, Involution which);

struct PhiFixedness {
  bool fixed = false;
  /// Invertible P with P Phi(rho(g)) = rho(g) P for all generators, scaled to
  /// unit Frobenius norm. Only meaningful when fixed.
  CMatrix intertwiner;
  /// Independent cross-check: character coordinates agree with their
  /// Phi-transform. The verdict itself is decided by the intertwiner solve.
  bool coords_agree = false;
  double coord_residual = 0;
};

/// Decides whether the character of rep is fixed by the involution.
/// The caller should ensure rep is semi-simple; an intertwiner space without
/// any invertible element raises SemisimplicityError.
PhiFixedness is_phi_fixed(const Representation& rep, Involution which,
                          const Tolerance& tol = {});

}  // namespace realform
