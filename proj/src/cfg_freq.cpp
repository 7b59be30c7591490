// Copyright 2026 The cachesched Authors
// SPDX-License-Identifier: Apache-2.0

#include "cachesched/cfg_freq.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cachesched/errors.hpp"

namespace cachesched {

namespace {

template <typename T>
Spectrum transform(std::span<const T> in, double sign) {
    const std::size_t n = in.size();
    Spectrum out(n);
    const double step = sign * 2.0 * std::numbers::pi / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> sum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            // Reduce j*k mod n first so the twiddle angle stays small.
            const auto phase = static_cast<double>((j * k) % n);
            sum += std::complex<double>(in[j]) * std::polar(1.0, step * phase);
        }
        out[k] = sum;
    }
    return out;
}

void check_cutoff(double cutoff_fraction) {
    if (!(cutoff_fraction > 0.0 && cutoff_fraction < 1.0)) {
        throw DomainError("cutoff_fraction must lie in (0, 1)");
    }
}

}  // namespace

Spectrum dft(std::span<const double> signal) {
    return transform(signal, -1.0);
}

Spectrum dft(std::span<const std::complex<double>> signal) {
    return transform(signal, -1.0);
}

std::vector<std::complex<double>> idft(std::span<const std::complex<double>> spectrum) {
    auto out = transform(spectrum, 1.0);
    const double inv_n = 1.0 / static_cast<double>(spectrum.size());
    for (auto& v : out) v *= inv_n;
    return out;
}

bool is_low_frequency_bin(std::size_t k, std::size_t n, double cutoff_fraction) {
    const std::size_t folded = std::min(k, n - k);
    // folded / n <= c / 2, evaluated without dividing by n.
    return 2.0 * static_cast<double>(folded) <= cutoff_fraction * static_cast<double>(n);
}

FreqSplit dft_split(std::span<const double> signal, double cutoff_fraction) {
    if (signal.size() < 2) {
        throw DimensionError("dft_split: signal needs at least two samples");
    }
    check_cutoff(cutoff_fraction);
    const std::size_t n = signal.size();
    const Spectrum full = dft(signal);
    FreqSplit split;
    split.n = n;
    split.cutoff_fraction = cutoff_fraction;
    split.low.assign(n, 0.0);
    split.high.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        (is_low_frequency_bin(k, n, cutoff_fraction) ? split.low : split.high)[k] = full[k];
    }
    return split;
}

FreqDelta cfg_delta(std::span<const double> cond, std::span<const double> uncond,
                    double cutoff_fraction) {
    if (cond.size() != uncond.size()) {
        throw DimensionError("cfg_delta: cond has " + std::to_string(cond.size()) +
                             " samples, uncond has " + std::to_string(uncond.size()));
    }
    const FreqSplit c = dft_split(cond, cutoff_fraction);
    const FreqSplit u = dft_split(uncond, cutoff_fraction);
    FreqDelta delta;
    delta.low.resize(c.n);
    delta.high.resize(c.n);
    for (std::size_t k = 0; k < c.n; ++k) {
        delta.low[k] = u.low[k] - c.low[k];
        delta.high[k] = u.high[k] - c.high[k];
    }
    return delta;
}

std::vector<double> reconstruct_uncond(std::span<const double> cond, const FreqDelta& delta,
                                       const FreqWeights& weights, long t) {
    const std::size_t n = cond.size();
    if (n < 2 || delta.low.size() != n || delta.high.size() != n) {
        throw DimensionError("reconstruct_uncond: spectra do not match the signal length " +
                             std::to_string(n));
    }
    if (!(weights.beta >= 0.0 && weights.beta <= 1.0)) {
        throw DomainError("reconstruct_uncond: beta must lie in [0, 1]");
    }
    const double w1 = weights.low_weight(t);
    const double w2 = weights.high_weight(t);
    Spectrum spectrum = dft(cond);
    for (std::size_t k = 0; k < n; ++k) {
        spectrum[k] += w1 * delta.low[k] + w2 * delta.high[k];
    }
    const auto complex_out = idft(spectrum);

    std::vector<double> out(n);
    double max_real = 1.0;
    double max_imag = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = complex_out[i].real();
        max_real = std::max(max_real, std::abs(out[i]));
        max_imag = std::max(max_imag, std::abs(complex_out[i].imag()));
    }
    if (max_imag > kImagResidueTolerance * max_real) {
        throw DomainError("reconstruct_uncond: result has a non-negligible imaginary part");
    }
    return out;
}

}  // namespace cachesched
