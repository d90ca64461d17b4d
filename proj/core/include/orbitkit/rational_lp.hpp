#pragma once

#include <optional>
#include <vector>

#include "orbitkit/numeric.hpp"

namespace orbitkit {

/// Linear constraint system over exact rationals with free variables:
///   A_ge x >= b_ge,   A_eq x = b_eq.
struct RationalLP {
  std::size_t num_vars = 0;
  std::vector<std::vector<Rat>> A_ge;
  std::vector<Rat> b_ge;
  std::vector<std::vector<Rat>> A_eq;
  std::vector<Rat> b_eq;

  explicit RationalLP(std::size_t vars = 0) : num_vars(vars) {}
  void add_ge(std::vector<Rat> row, Rat rhs);
  void add_eq(std::vector<Rat> row, Rat rhs);
};

/// Infeasibility certificate: y_ge >= 0 and y_eq free with
///   y_ge^T A_ge + y_eq^T A_eq = 0   and   y_ge^T b_ge + y_eq^T b_eq > 0.
struct FarkasCertificate {
  std::vector<Rat> y_ge;
  std::vector<Rat> y_eq;
};

/// Exactly one of point / certificate is set.
struct LpFeasibility {
  std::optional<std::vector<Rat>> point;
  std::optional<FarkasCertificate> certificate;
  bool feasible() const { return point.has_value(); }
};

/// Phase-1 simplex over exact rationals with Bland's rule (terminates on
/// every input, no tolerance anywhere).
LpFeasibility solve_feasibility(const RationalLP& lp);

/// Exact certificate checks; used both in tests and as internal sanity gates.
bool point_valid(const RationalLP& lp, const std::vector<Rat>& x);
bool certificate_valid(const RationalLP& lp, const FarkasCertificate& cert);

}  // namespace orbitkit
