// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <span>
#include <vector>

namespace cachesched {

using Spectrum = std::vector<std::complex<double>>;

inline constexpr double kDefaultCutoffFraction = 0.25;

/// Imaginary residue (relative to max(1, |signal|_inf)) tolerated after the inverse transform.
inline constexpr double kImagResidueTolerance = 1e-9;

/// Direct O(n^2) transform: X[k] = sum_j x[j] exp(-2 pi i j k / n).
Spectrum dft(std::span<const double> signal);
Spectrum dft(std::span<const std::complex<double>> signal);

/// Inverse of dft, including the 1/n factor.
std::vector<std::complex<double>> idft(std::span<const std::complex<double>> spectrum);

/// True when bin k of an n-point transform lies in the low band, i.e.
/// min(k, n - k) / n <= cutoff_fraction / 2.
bool is_low_frequency_bin(std::size_t k, std::size_t n, double cutoff_fraction);

/// Spectrum partitioned by a symmetric low-pass mask. Each bin is in exactly one half.
struct FreqSplit {
    Spectrum low;
    Spectrum high;
    std::size_t n = 0;
    double cutoff_fraction = kDefaultCutoffFraction;
};

FreqSplit dft_split(std::span<const double> signal, double cutoff_fraction = kDefaultCutoffFraction);

struct FreqDelta {
    Spectrum low;   ///< low(DFT(uncond)) - low(DFT(cond))
    Spectrum high;  ///< high(DFT(uncond)) - high(DFT(cond))
};

FreqDelta cfg_delta(std::span<const double> cond, std::span<const double> uncond,
                    double cutoff_fraction = kDefaultCutoffFraction);

/// Two-stage weights: before t0 the low band gets weight 1 and the high band
/// beta; from t0 on the roles swap.
struct FreqWeights {
    double beta = 0.5;
    long t0 = 25;

    double low_weight(long t) const { return t < t0 ? 1.0 : beta; }
    double high_weight(long t) const { return t < t0 ? beta : 1.0; }
};

/// inverse DFT of DFT(cond) + w1(t) * delta.low + w2(t) * delta.high.
/// Throws DomainError if the result has a non-negligible imaginary part.
std::vector<double> reconstruct_uncond(std::span<const double> cond, const FreqDelta& delta,
                                       const FreqWeights& weights, long t);

}  // namespace cachesched
