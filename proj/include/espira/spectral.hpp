// Copyright The espira contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

///
/// \file spectral.hpp
///
/// Discrete Fourier transform of the samples and the modulated coefficients
/// g_k = omega^k fhat_k (omega = exp(-2 pi i / 2N)) living on the nodes omega^{-k}. For exact
/// data with z_j^{2N} != 1, g_k = sum_j gamma_j (1 - z_j^{2N}) / (omega^{-k} - z_j).
///
#ifndef ESPIRA_SPECTRAL_HPP
#define ESPIRA_SPECTRAL_HPP

#include "espira/model.hpp"

namespace espira
{

struct DftVector
{
  CVector values;  // fhat_k = sum_l f_l omega^{kl}
  Index n_half = 0;
};

struct ModulatedDft
{
  CVector values;  // g_k = omega^k fhat_k
  CVector nodes;   // omega^{-k}
  Index n_half = 0;
};

/// exp(-2 pi i e / n), with e reduced modulo n first so that large exponents stay exact.
Complex root_of_unity(Index n, long long e);

/// Unnormalized DFT of arbitrary length: sum_l x_l exp(sign 2 pi i k l / n) with sign = -1
/// for the forward direction. Mixed radix for small prime factors, Bluestein otherwise.
CVector fft(const CVector &x, bool inverse = false);

DftVector dft_forward(const SampleVector &f);

/// Inverse of dft_forward, including the 1/2N scaling.
SampleVector dft_inverse(const DftVector &fhat);

ModulatedDft modulate(const DftVector &fhat);

/// dft_forward followed by modulate.
ModulatedDft modulated_dft(const SampleVector &f);

}  // namespace espira

#endif  // ESPIRA_SPECTRAL_HPP
