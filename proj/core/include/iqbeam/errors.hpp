// SPDX-License-Identifier: Apache-2.0
//
// iqbeam - least-squares channel estimation and energy beamforming
// under transceiver IQ imbalance
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace iqbeam {

/// 2x2 real system whose determinant fell below the scaled threshold.
class SingularSystem : public std::runtime_error {
  public:
    SingularSystem(double det, double threshold)
        : std::runtime_error("singular 2x2 system: |det| = " + std::to_string(det) +
                             " <= threshold " + std::to_string(threshold)),
          det_(det),
          threshold_(threshold) {}
    double det() const noexcept { return det_; }
    double threshold() const noexcept { return threshold_; }

  private:
    double det_;
    double threshold_;
};

/// Unidentifiable imbalance/pilot combination at one receive antenna.
class SingularAntenna : public std::runtime_error {
  public:
    explicit SingularAntenna(int antenna)
        : std::runtime_error("unidentifiable channel at antenna " + std::to_string(antenna) +
                             ": |A_i|^2 == |B_i|^2 within threshold"),
          antenna_(antenna) {}
    int antenna() const noexcept { return antenna_; }

  private:
    int antenna_;
};

class NotSymmetric : public std::runtime_error {
  public:
    NotSymmetric() : std::runtime_error("matrix is not symmetric within tolerance") {}
};

class NotConverged : public std::runtime_error {
  public:
    explicit NotConverged(int iterations)
        : std::runtime_error("eigensolver did not reach residual target after " +
                             std::to_string(iterations) + " iterations"),
          iterations_(iterations) {}
    int iterations() const noexcept { return iterations_; }

  private:
    int iterations_;
};

class DimensionMismatch : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace iqbeam
