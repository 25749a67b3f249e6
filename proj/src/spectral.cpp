// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "espira/spectral.hpp"

#include <cmath>
#include <numbers>

namespace espira
{

namespace
{

// Prime factors above this go through Bluestein rather than an O(p^2) butterfly.
constexpr Index kMaxDirectRadix = 31;

std::vector<Index> factorize(Index n)
{
  std::vector<Index> out;
  for (Index p : {4, 2, 3, 5})
  {
    while (n % p == 0)
    {
      out.push_back(p);
      n /= p;
    }
  }
  for (Index p = 7; p * p <= n; p += 2)
  {
    while (n % p == 0)
    {
      out.push_back(p);
      n /= p;
    }
  }
  if (n > 1)
  {
    out.push_back(n);
  }
  return out;
}

// Twiddles tw[e] = exp(sign 2 pi i e / n).
std::vector<Complex> twiddles(Index n, int sign)
{
  std::vector<Complex> tw(n);
  for (Index e = 0; e < n; ++e)
  {
    const Complex w = root_of_unity(n, e);
    tw[e] = sign < 0 ? w : std::conj(w);
  }
  return tw;
}

// Decimation in time. On entry x is read with the given stride; y receives n outputs.
void mixed_radix(const Complex *x, Index stride, Complex *y, Index n, const Index *fac,
                 const std::vector<Complex> &tw, Index tw_step)
{
  if (n == 1)
  {
    y[0] = x[0];
    return;
  }
  const Index p = fac[0];
  const Index m = n / p;
  for (Index r = 0; r < p; ++r)
  {
    mixed_radix(x + r * stride, stride * p, y + r * m, m, fac + 1, tw, tw_step * p);
  }
  Complex tmp[kMaxDirectRadix + 1];
  for (Index k = 0; k < m; ++k)
  {
    for (Index r = 0; r < p; ++r)
    {
      tmp[r] = y[r * m + k] * tw[((r * k) % n) * tw_step];
    }
    for (Index q = 0; q < p; ++q)
    {
      Complex acc = tmp[0];
      for (Index r = 1; r < p; ++r)
      {
        acc += tmp[r] * tw[((r * q) % p) * m * tw_step];
      }
      y[k + q * m] = acc;
    }
  }
}

CVector smooth_fft(const CVector &x, int sign, const std::vector<Index> &factors)
{
  const Index n = x.size();
  CVector y(n);
  const auto tw = twiddles(n, sign);
  mixed_radix(x.data(), 1, y.data(), n, factors.data(), tw, 1);
  return y;
}

// Chirp-z: x^k l = (k^2 + l^2 - (k - l)^2) / 2 turns the DFT into a convolution evaluated
// with a power-of-two transform.
CVector bluestein(const CVector &x, int sign)
{
  const Index n = x.size();
  Index m = 1;
  while (m < 2 * n - 1)
  {
    m *= 2;
  }
  std::vector<Complex> chirp(n);
  const Index two_n = 2 * n;
  for (Index k = 0; k < n; ++k)
  {
    // exp(sign pi i k^2 / n) = exp(sign 2 pi i (k^2 mod 2n) / 2n)
    const Index e = static_cast<Index>((static_cast<unsigned long long>(k) * k) % two_n);
    const Complex w = root_of_unity(two_n, e);
    chirp[k] = sign < 0 ? w : std::conj(w);
  }
  CVector a = CVector::Zero(m), b = CVector::Zero(m);
  for (Index k = 0; k < n; ++k)
  {
    a[k] = x[k] * chirp[k];
  }
  b[0] = std::conj(chirp[0]);
  for (Index k = 1; k < n; ++k)
  {
    b[k] = b[m - k] = std::conj(chirp[k]);
  }
  const auto pow2 = factorize(m);
  const CVector fa = smooth_fft(a, -1, pow2);
  const CVector fb = smooth_fft(b, -1, pow2);
  const CVector conv = smooth_fft(fa.cwiseProduct(fb), +1, pow2) / static_cast<double>(m);
  CVector out(n);
  for (Index k = 0; k < n; ++k)
  {
    out[k] = conv[k] * chirp[k];
  }
  return out;
}

}  // namespace

Complex root_of_unity(Index n, long long e)
{
  e %= n;
  if (e < 0)
  {
    e += n;
  }
  // Exact values on the axes keep symmetric node sets symmetric.
  if ((4 * e) % n == 0)
  {
    switch ((4 * e) / n)
    {
      case 0:
        return {1.0, 0.0};
      case 1:
        return {0.0, -1.0};
      case 2:
        return {-1.0, 0.0};
      default:
        return {0.0, 1.0};
    }
  }
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

CVector fft(const CVector &x, bool inverse)
{
  const Index n = x.size();
  if (n <= 1)
  {
    return x;
  }
  const int sign = inverse ? +1 : -1;
  const auto factors = factorize(n);
  if (factors.back() > kMaxDirectRadix)
  {
    return bluestein(x, sign);
  }
  return smooth_fft(x, sign, factors);
}

DftVector dft_forward(const SampleVector &f)
{
  require(f.size() >= 2, ErrorCode::InvalidArgument, "need at least two samples");
  require(f.size() % 2 == 0, ErrorCode::OddLength, "sample count must be even");
  return {fft(f.values()), f.n_half()};
}

SampleVector dft_inverse(const DftVector &fhat)
{
  return SampleVector(fft(fhat.values, true) / static_cast<double>(fhat.values.size()));
}

ModulatedDft modulate(const DftVector &fhat)
{
  const Index n = fhat.values.size();
  ModulatedDft out{CVector(n), CVector(n), fhat.n_half};
  for (Index k = 0; k < n; ++k)
  {
    out.values[k] = root_of_unity(n, k) * fhat.values[k];
    out.nodes[k] = root_of_unity(n, -k);
  }
  return out;
}

ModulatedDft modulated_dft(const SampleVector &f)
{
  return modulate(dft_forward(f));
}

}  // namespace espira
