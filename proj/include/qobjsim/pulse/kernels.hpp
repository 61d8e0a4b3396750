#pragma once

#include <complex>
#include <string>
#include <vector>

namespace qobjsim::pulse {

/// Boxcar kernel: arithmetic mean of the raw window.
std::complex<double> boxcar_kernel(const std::vector<std::complex<double>>& samples);

/// Apply a named kernel to level-0 data. "boxcar", "default" and "kernel1"
/// all average the window.
std::complex<double> apply_kernel(const std::string& name,
                                  const std::vector<double>& params,
                                  const std::vector<std::complex<double>>& samples);

/// Half-plane discriminator: bit = 1 iff Q > a*I + b where params = [a, b]
/// define the separating line Q = a*I + b. A point exactly on the line
/// reads 0. Missing params default to the I axis ([0, 0]).
int discriminate_max_1q_fidelity(std::complex<double> iq, const std::vector<double>& params);

int apply_discriminator(const std::string& name, const std::vector<double>& params,
                        std::complex<double> iq);

}  // namespace qobjsim::pulse
