#pragma once

#include <complex>
#include <vector>

namespace nlcauchy {

using cdouble = std::complex<double>;

/// Signed frequency of DFT index i on an n-point axis: 0..n/2-1, then -n/2..-1.
inline int freq_of_index(int i, int n) { return (i < n / 2) ? i : i - n; }

/// Index of signed frequency k (requires -n/2 <= k < n/2).
inline int index_of_freq(int k, int n) { return (k >= 0) ? k : k + n; }

/// Complex DFT on a uniform periodic grid, dim in {1,2}, n points per axis.
/// forward: out[k] = sum_j in[j] exp(-i k·x_j) / n^dim  (Fourier coefficients
/// of the trigonometric interpolant), inverse is the exact inverse.
void fft_forward(int dim, int n, const std::vector<cdouble>& in, std::vector<cdouble>& out);
void fft_inverse(int dim, int n, const std::vector<cdouble>& in, std::vector<cdouble>& out);

}  // namespace nlcauchy
