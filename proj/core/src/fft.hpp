#pragma once

#include "dynkit/common.hpp"

namespace dynkit::detail {

// In-place length-n DFT. sign = -1: y_k = sum x_l e^{-2 pi i k l / n};
// sign = +1: the same with e^{+...}, unnormalized.
void fft_inplace(cplx* data, int n, int sign);

// Multiply by (-1)^k.
void alternate_signs(cplx* data, int n);

}  // namespace dynkit::detail
