#pragma once

// Finite quadratic form with values scaled to integers: q * den mod 2 den, b * den mod den.

#include <vector>

#include "k3lat/discform.hpp"

namespace k3lat::detail {

struct ScaledForm {
  explicit ScaledForm(const FiniteQuadraticForm& f);
  long q(const Elem& x) const;
  long b(const Elem& x, const Elem& y) const;

  std::vector<long> orders;
  long den = 1;
  std::vector<long> qn;
  std::vector<std::vector<long>> bn;
};

}  // namespace k3lat::detail
