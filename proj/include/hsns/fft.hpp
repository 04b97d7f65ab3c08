#pragma once

#include <complex>
#include <span>
#include <vector>

namespace hsns::fft {

/// In-place unnormalized d-dimensional transform of an n^d array,
/// sign -1 (forward) or +1 (backward). Plans are cached per shape.
void transform(int d, int n, int sign, std::span<std::complex<double>> data);

}  // namespace hsns::fft
