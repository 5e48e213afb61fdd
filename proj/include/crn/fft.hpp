#pragma once

#include <complex>
#include <vector>

#include "crn/errors.hpp"

namespace crn {

// Iterative radix-2 FFT, in place.  n must be a power of two.  Small and
// deterministic; the grids used in this project are at most 1024 wide so a
// textbook implementation is plenty.
inline void fft_inplace(std::complex<double>* a, int n, bool inverse) {
  if (n <= 1) return;
  if ((n & (n - 1)) != 0) throw Error("fft: length is not a power of two");
  // bit reversal
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const double pi = 3.14159265358979323846;
  for (int len = 2; len <= n; len <<= 1) {
    double ang = 2.0 * pi / len * (inverse ? 1.0 : -1.0);
    std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (int i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (int k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    for (int i = 0; i < n; ++i) a[i] /= double(n);
  }
}

inline void fft(std::vector<std::complex<double>>& a, bool inverse = false) {
  fft_inplace(a.data(), int(a.size()), inverse);
}

// 2-D FFT of an n-by-n row-major grid.
inline void fft2(std::vector<std::complex<double>>& a, int n, bool inverse) {
  if (int(a.size()) != n * n) throw Error("fft2: size mismatch");
  std::vector<std::complex<double>> col(n);
  for (int r = 0; r < n; ++r) fft_inplace(a.data() + r * n, n, inverse);
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) col[r] = a[r * n + c];
    fft_inplace(col.data(), n, inverse);
    for (int r = 0; r < n; ++r) a[r * n + c] = col[r];
  }
}

}  // namespace crn
