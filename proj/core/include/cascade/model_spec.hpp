#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace cascade {

enum class Family { S2Diag, S3Diag, S2OffDiag, GOY, General };

std::string_view to_string(Family family);
/// Parses the names produced by to_string; throws ConfigError otherwise.
Family family_from_string(std::string_view name);

/// Which cascade model to build, plus its parameters.
///
/// `p` is the integer shell ratio for the p-adic families. For GOY the same
/// slot carries the real scale ratio lambda > 1, and `a` replaces `h0`.
struct ModelSpec {
  Family family = Family::S2Diag;
  double p = 2.0;
  int r = 20;
  double gamma = 0.0;
  double h0 = 1.0;
  int s = 2;
  double alpha = 0.0;
  double eps = 0.5;
  double a = 1.0;
  std::optional<double> l0;

  /// Interaction range implied by the family (General uses `s`).
  int range() const;

  /// Eddy scale of shell i: l0 * p^-i. Throws ConfigError when l0 is unset.
  double scale(int shell) const;

  /// Throws ConfigError naming the violated constraint.
  void validate() const;
};

/// Integer base of the p-adic families; throws ConfigError if `p` is not an
/// integer >= 2.
int integer_base(double p);

}  // namespace cascade
