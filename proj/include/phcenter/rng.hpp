// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

#include "phcenter/matrix.hpp"

namespace phcenter {

/// Seeded standard-normal sampler: mt19937_64 uniforms through a Box-Muller
/// transform. Avoids std::normal_distribution so that streams are identical
/// across standard libraries; the generator name recorded in model metadata
/// is "mt19937_64/box-muller".
class GaussianSampler {
 public:
  explicit GaussianSampler(std::uint64_t seed) : gen_(seed) {}

  static constexpr const char* kGeneratorName = "mt19937_64/box-muller";

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0,1], u2 in [0,1)
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  /// Standard complex normal: real and imaginary parts each N(0,1)/sqrt(2).
  Complex next_complex() {
    const double re = next();
    const double im = next();
    return Complex(re, im) / std::sqrt(2.0);
  }

  ComplexMatrix complex_matrix(Index rows, Index cols) {
    ComplexMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) m(i, j) = next_complex();
    return m;
  }

  /// Real N(0,1) entries stored as complex (parity mode with real-valued experiments).
  ComplexMatrix real_matrix(Index rows, Index cols) {
    ComplexMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
      for (Index j = 0; j < cols; ++j) m(i, j) = Complex(next(), 0.0);
    return m;
  }

 private:
  double uniform01() {
    // 53-bit mantissa uniform in [0,1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace phcenter
