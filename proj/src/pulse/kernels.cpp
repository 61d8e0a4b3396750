#include "qobjsim/pulse/kernels.hpp"

#include <stdexcept>

namespace qobjsim::pulse {

using Complex = std::complex<double>;

Complex boxcar_kernel(const std::vector<Complex>& samples) {
  if (samples.empty()) return {0.0, 0.0};
  Complex sum{0.0, 0.0};
  for (const auto& s : samples) sum += s;
  return sum / static_cast<double>(samples.size());
}

Complex apply_kernel(const std::string& name, const std::vector<double>& params,
                     const std::vector<Complex>& samples) {
  (void)params;
  if (name == "boxcar" || name == "default" || name == "kernel1") {
    return boxcar_kernel(samples);
  }
  throw std::invalid_argument("KernelUnknown: '" + name + "'");
}

int discriminate_max_1q_fidelity(Complex iq, const std::vector<double>& params) {
  double a = params.size() > 0 ? params[0] : 0.0;
  double b = params.size() > 1 ? params[1] : 0.0;
  return iq.imag() > a * iq.real() + b ? 1 : 0;
}

int apply_discriminator(const std::string& name, const std::vector<double>& params,
                        Complex iq) {
  if (name == "max_1Q_fidelity" || name == "max_2Q_fidelity" || name == "default") {
    return discriminate_max_1q_fidelity(iq, params);
  }
  throw std::invalid_argument("DiscriminatorUnknown: '" + name + "'");
}

}  // namespace qobjsim::pulse
