#pragma once

#include <vector>

#include "tangle/types.hpp"

namespace tangle {

// Eigenvalue multiset of a small matrix.
struct Spectrum {
  CVector eigenvalues;

  // descending real part (ties broken by imaginary part)
  CVector sorted_by_real() const;
};

CMatrix matmul(const CMatrix& a, const CMatrix& b);

// Determinant for dim <= 4: direct formula at 2x2, partially pivoted LU
// above that.
Complex det(const CMatrix& m);

// Monic characteristic polynomial via the Faddeev-LeVerrier recurrence.
// Coefficients ascending: {c0, ..., c_{d-1}, 1}.
std::vector<Complex> char_poly(const CMatrix& m);

// All roots of a monic polynomial of degree 1..4 by Durand-Kerner
// iteration. Throws std::runtime_error (with residuals in the message)
// if the residuals are still large after 500 sweeps.
Spectrum poly_roots(const std::vector<Complex>& monic_ascending);

// char_poly followed by poly_roots.
Spectrum eigenvalues(const CMatrix& m);

}  // namespace tangle
