#pragma once

#include <vector>

#include "eigen_support.hpp"

namespace qlat {

// All functions take the even (bilinear) Gram matrix A of a positive
// definite lattice: A(i,i) = 2Q(b_i), A(i,j) = B(b_i, b_j), values of
// x A x^T are 2Q(x).

// Cheap size-reduction (sort by diagonal + integer Gram-Schmidt sweeps);
// GL_n(Z)-equivalent output with near-minimal diagonal.  n <= 4.
MatI greedy_reduce(MatI even_gram);

struct CanonicalForm {
  MatI gram;     // canonical even Gram of the GL_n(Z)-orbit
  Int aut_count; // number of integral isometries (includes -identity)
};

// Canonical representative: the Gram matrix minimizing the flattened
// sequence (A11; A22, A12; A33, A13, A23; A44, A14, A24, A34) over all
// lattice bases, found by exhaustive search over short vectors.  n <= 4.
CanonicalForm canonical_form(const MatI& even_gram);

// Convenience: flattened canonical key (the sequence above) for map keys
// and deterministic sorting.
std::vector<Int> canonical_key(const MatI& even_gram);

} // namespace qlat
