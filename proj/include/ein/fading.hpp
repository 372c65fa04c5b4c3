#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "ein/complex_mat.hpp"
#include "ein/rng.hpp"

namespace ein {

enum class Fading {
  uniform_phase,  // unit modulus, uniform phase
  rayleigh,       // circularly symmetric complex Gaussian, unit power
  amplitude_law,  // user-supplied amplitude distribution, uniform phase
};

// An i.i.d. fading law for channel entries. All variants have uniform phase
// and unit mean-square amplitude, which is the class the ergodic pairing
// scheme relies on.
class FadingModel {
 public:
  static FadingModel uniform_phase();
  static FadingModel rayleigh();

  /// `amplitude` draws one nonnegative amplitude. The constructor checks
  /// E[a^2] ~= 1 on 1e5 draws (5% tolerance) and throws
  /// std::invalid_argument if the law is not unit power.
  static FadingModel amplitude_law(std::function<double(RngStream&)> amplitude);

  /// Parses "uniform-phase" or "rayleigh".
  static FadingModel parse(std::string_view name);

  cplx draw(RngStream& s) const;

  Fading kind() const { return kind_; }

  /// True when |entry| == 1 always; the closed forms below require this.
  bool unit_modulus() const { return kind_ == Fading::uniform_phase; }

  std::string_view name() const;

 private:
  explicit FadingModel(Fading kind) : kind_(kind) {}

  Fading kind_;
  std::function<double(RngStream&)> amplitude_;
};

/// Samples a rows x cols matrix of i.i.d. entries in row-major entry order,
/// so the result is a pure function of (model, rows, cols, stream state).
MatrixXc sample_matrix(const FadingModel& model, Eigen::Index rows,
                       Eigen::Index cols, RngStream& s);

}  // namespace ein
