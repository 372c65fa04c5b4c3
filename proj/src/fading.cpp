#include "ein/fading.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace ein {
namespace {

// Fixed seed for the one-time unit-power check of custom amplitude laws.
constexpr std::uint64_t kValidationSeed = 0x9D2C5680A5A5A5A5ull;

}  // namespace

FadingModel FadingModel::uniform_phase() {
  return FadingModel(Fading::uniform_phase);
}

FadingModel FadingModel::rayleigh() { return FadingModel(Fading::rayleigh); }

FadingModel FadingModel::amplitude_law(
    std::function<double(RngStream&)> amplitude) {
  if (!amplitude)
    throw std::invalid_argument("amplitude_law: sampler must be callable");
  RngStream s(kValidationSeed, substream(streams::model_check, 0));
  const int n = 100000;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double a = amplitude(s);
    if (!(a >= 0.0))
      throw std::invalid_argument("amplitude_law: negative amplitude");
    sum_sq += a * a;
  }
  const double mean_sq = sum_sq / n;
  if (std::abs(mean_sq - 1.0) > 0.05)
    throw std::invalid_argument(
        "amplitude_law: E[a^2] = " + std::to_string(mean_sq) +
        ", expected 1 (unit power)");
  FadingModel m(Fading::amplitude_law);
  m.amplitude_ = std::move(amplitude);
  return m;
}

FadingModel FadingModel::parse(std::string_view name) {
  if (name == "uniform-phase") return uniform_phase();
  if (name == "rayleigh") return rayleigh();
  throw std::invalid_argument("unknown fading model: " + std::string(name));
}

cplx FadingModel::draw(RngStream& s) const {
  // Amplitude is drawn before phase in every branch; operand order of `*`
  // is unspecified, so the two stream reads are sequenced by hand.
  switch (kind_) {
    case Fading::uniform_phase:
      return s.unit_phase();
    case Fading::rayleigh: {
      // sqrt(Exp(1)) amplitude with uniform phase; identical in law to
      // (N(0,1) + j N(0,1)) / sqrt(2), so E[|x|^2] = 1 exactly.
      const double amp = std::sqrt(s.exponential());
      return amp * s.unit_phase();
    }
    case Fading::amplitude_law: {
      const double amp = amplitude_(s);
      return amp * s.unit_phase();
    }
  }
  return {};
}

std::string_view FadingModel::name() const {
  switch (kind_) {
    case Fading::uniform_phase:
      return "uniform-phase";
    case Fading::rayleigh:
      return "rayleigh";
    case Fading::amplitude_law:
      return "amplitude-law";
  }
  return "?";
}

MatrixXc sample_matrix(const FadingModel& model, Eigen::Index rows,
                       Eigen::Index cols, RngStream& s) {
  MatrixXc m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = model.draw(s);
  return m;
}

}  // namespace ein
