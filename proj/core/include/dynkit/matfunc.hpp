#pragma once

#include <functional>

#include "dynkit/common.hpp"

namespace dynkit {

struct ExpmReport {
  CMatrix result;
  int matrix_multiplications = 0;
  int squarings = 0;  // K
  int terms = 0;      // Taylor terms summed (0 for Pade)
};

struct HermitianEigen {
  RVector values;   // ascending
  CMatrix vectors;  // columns, orthonormal
};

// Induced 1-norm (max column sum).
double norm1(const CMatrix& a);

bool is_hermitian(const CMatrix& a, double tol = 1e-12);

HermitianEigen hermitian_eigen(const CMatrix& a);

// U diag(f(lambda)) U^dagger.
CMatrix func_of_hermitian(const CMatrix& a, const std::function<cplx(double)>& f);

// Partial sums of A^k/k! until the added term has norm <= tol.
// Throws NumericalError after 10*||A|| + 100 terms.
ExpmReport expm_taylor(const CMatrix& a, double tol);

inline constexpr double kPadeNormMax = 0.5;
inline constexpr int kPadeOrder = 6;

// Diagonal [6/6] Pade approximant with scaling and squaring.
ExpmReport expm_pade(const CMatrix& a, double norm_max = kPadeNormMax);

// K = ceil(log2(||A|| / norm_max)), or 0 when ||A|| <= norm_max.
int pade_squarings(double norm, double norm_max = kPadeNormMax);

}  // namespace dynkit
