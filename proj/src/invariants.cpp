#include "realform/invariants.hpp"

#include <algorithm>
#include <map>

#include "realform/commutant.hpp"

namespace realform {

Word inverse_word(const Word& w) {
  Word inv(w.rbegin(), w.rend());
  for (int& letter : inv) letter = -letter;
  return inv;
}

int WordList::inverse_index(int i) const {
  const Word inv = inverse_word(words.at(i));
  for (int k = 0; k < size(); ++k)
    if (words[k] == inv) return k;
  throw ParameterError("word list is not closed under inversion");
}

WordList word_list(int num_generators, int ambient_dimension, int cap) {
  if (num_generators < 1) throw ParameterError("need at least one generator");
  if (ambient_dimension < 1) throw ParameterError("ambient dimension must be positive");
  if (cap < 1) throw ParameterError("word cap must be at least 1");

  int bound = cap;
  if (ambient_dimension < 31)
    bound = std::min(cap, (1 << ambient_dimension) - 1);

  // alphabet in order +1, -1, +2, -2, ...
  std::vector<int> alphabet;
  for (int g = 1; g <= num_generators; ++g) {
    alphabet.push_back(g);
    alphabet.push_back(-g);
  }

  WordList out;
  out.num_generators = num_generators;
  std::vector<Word> frontier = {Word{}};
  for (int length = 1; length <= bound; ++length) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (int letter : alphabet) {
        if (!w.empty() && w.back() == -letter) continue;  // keep words reduced
        Word extended = w;
        extended.push_back(letter);
        next.push_back(std::move(extended));
      }
    }
    out.words.insert(out.words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

CMatrix evaluate_word(const Representation& rep, const Word& w) {
  const int n = rep.dimension();
  std::vector<CMatrix> inverses(rep.num_generators());
  std::vector<bool> have(rep.num_generators(), false);
  CMatrix prod = CMatrix::Identity(n, n);
  for (int letter : w) {
    if (letter == 0 || std::abs(letter) > rep.num_generators())
      throw ParameterError("word letter out of range");
    if (letter > 0) {
      prod = prod * rep.generator(letter - 1);
    } else {
      const int g = -letter - 1;
      if (!have[g]) {
        inverses[g] = rep.generator_inverse(g);
        have[g] = true;
      }
      prod = prod * inverses[g];
    }
  }
  return prod;
}

CharacterCoordinates trace_coordinates(const Representation& rep, const WordList& words) {
  if (words.num_generators > rep.num_generators())
    throw ParameterError("word list indexes more generators than the representation has");
  const int n = rep.dimension();
  std::vector<CMatrix> inverses(rep.num_generators());
  for (int g = 0; g < rep.num_generators(); ++g) inverses[g] = rep.generator_inverse(g);

  const auto product = [&](const Word& w) {
    CMatrix prod = CMatrix::Identity(n, n);
    for (int letter : w)
      prod = prod * (letter > 0 ? rep.generator(letter - 1) : inverses[-letter - 1]);
    return prod;
  };

  CharacterCoordinates coords;
  coords.words = words;
  coords.traces.resize(words.size());
  const bool want_q =
      rep.kind().family == GroupFamily::SO && n % 2 == 0 && n <= 8;
  if (want_q) coords.qvalues = CVector(words.size());
  for (int i = 0; i < words.size(); ++i) {
    const CMatrix m = product(words.words[i]);
    coords.traces(i) = m.trace();
    if (want_q)
      (*coords.qvalues)(i) = q_function(std::vector<CMatrix>(n / 2, m));
  }
  return coords;
}

Complex q_function(const std::vector<CMatrix>& mats) {
  if (mats.empty()) throw ParameterError("q_function needs at least one matrix");
  const int m = static_cast<int>(mats.size());
  const int size = 2 * m;
  if (size > 8) throw ParameterError("q_function supports sizes up to 8 only");
  for (const CMatrix& a : mats)
    if (a.rows() != size || a.cols() != size)
      throw ParameterError("q_function needs n matrices of size 2n x 2n");

  std::vector<int> perm(size);
  for (int i = 0; i < size; ++i) perm[i] = i;
  Complex sum(0, 0);
  do {
    // permutation parity by inversion count
    int inversions = 0;
    for (int i = 0; i < size; ++i)
      for (int j = i + 1; j < size; ++j)
        if (perm[i] > perm[j]) ++inversions;
    Complex term(inversions % 2 == 0 ? 1.0 : -1.0, 0.0);
    for (int i = 0; i < m; ++i) {
      const int r = perm[2 * i];
      const int c = perm[2 * i + 1];
      term *= mats[i](r, c) - mats[i](c, r);
      if (term == Complex(0, 0)) break;
    }
    sum += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

Representation involution_image(const Representation& rep, Involution which) {
  std::vector<CMatrix> gens;
  gens.reserve(rep.generators().size());
  for (const auto& g : rep.generators()) {
    if (which == Involution::Phi1) {
      gens.push_back(g.conjugate());
    } else {
      const CMatrix adj = g.adjoint();
      gens.push_back(adj.fullPivLu().inverse());
    }
  }
  return Representation(rep.kind(), std::move(gens), Tolerance{}, rep.labels(),
                        rep.relations());
}

PhiFixedness is_phi_fixed(const Representation& rep, Involution which,
                          const Tolerance& tol) {
  const Representation image = involution_image(rep, which);

  PhiFixedness out;

  // Coordinate cross-check: Phi1 conjugates every trace coordinate, Phi2
  // conjugates and permutes each word to its inverse. Fixedness of the
  // character is equality with the transformed coordinates.
  {
    const WordList words =
        word_list(rep.num_generators(), rep.dimension(), kDefaultWordCap);
    const CharacterCoordinates coords = trace_coordinates(rep, words);
    double residual = 0;
    for (int i = 0; i < words.size(); ++i) {
      const Complex expected =
          which == Involution::Phi1
              ? std::conj(coords.traces(i))
              : std::conj(coords.traces(words.inverse_index(i)));
      residual = std::max(residual, std::abs(coords.traces(i) - expected));
    }
    if (coords.qvalues) {
      for (int i = 0; i < coords.qvalues->size(); ++i)
        residual = std::max(residual, std::abs(std::imag((*coords.qvalues)(i))));
    }
    const double scale = 1.0 + coords.traces.cwiseAbs().maxCoeff();
    out.coord_residual = residual;
    out.coords_agree = residual <= 100 * tol.threshold(scale);
  }

  const IntertwinerResult result = intertwiner(image, rep, tol);
  if (result.space_dimension == 0) {
    out.fixed = false;
    return out;
  }
  if (!result.matrix)
    throw SemisimplicityError(
        "intertwiner space is nontrivial but contains no invertible element");
  out.fixed = true;
  out.intertwiner = *result.matrix;
  return out;
}

}  // namespace realform
