#pragma once

#include <string>
#include <vector>

#include "fillinglab/rational.hpp"

namespace fillinglab {

struct InequalityCheck {
  std::string name;
  std::string lhs, rhs;   // exact rational values as strings
  std::string relation;   // "<", "<=", ">="
  bool applicable = true;  // precondition met; inapplicable checks are recorded
  bool holds = false;      // only meaningful when applicable
};

struct ConstantsAudit {
  int n = 0;
  Rational epsilon;
  bool epsilon_in_range = false;  // eps < 1/(2(2n+1))
  std::vector<InequalityCheck> checks;
  bool all_hold = false;  // every applicable check holds
};

// Exact rational audit of the constants chained through the small-element
// argument: for eps below 1/(2(2n+1)) the perturbation bound 2n eps/(1-3 eps)
// stays under n/(2n-1) < 1; n orthogonal unit pieces force the row bound
// (1-eps)(1-2eps) >= 1-3 eps and the norm bound ||c||^2 <= n. n >= 2.
ConstantsAudit verify_proof_constants(int n, const Rational& epsilon);

}  // namespace fillinglab
