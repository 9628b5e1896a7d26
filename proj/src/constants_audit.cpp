#include "fillinglab/constants_audit.hpp"

#include <stdexcept>

namespace fillinglab {

namespace {

InequalityCheck make_check(std::string name, const Rational& lhs,
                           std::string relation, const Rational& rhs,
                           bool applicable) {
  InequalityCheck c;
  c.name = std::move(name);
  c.lhs = rat_to_string(lhs);
  c.rhs = rat_to_string(rhs);
  c.relation = std::move(relation);
  c.applicable = applicable;
  if (applicable) {
    if (c.relation == "<")
      c.holds = lhs < rhs;
    else if (c.relation == "<=")
      c.holds = lhs <= rhs;
    else if (c.relation == ">=")
      c.holds = lhs >= rhs;
    else
      throw std::invalid_argument("unknown relation " + c.relation);
  }
  return c;
}

}  // namespace

ConstantsAudit verify_proof_constants(int n, const Rational& epsilon) {
  if (n < 2) throw std::invalid_argument("audit requires n >= 2");
  ConstantsAudit audit;
  audit.n = n;
  audit.epsilon = epsilon;

  const Rational bound(1, 2 * (2 * n + 1));
  audit.epsilon_in_range = epsilon > 0 && epsilon < bound;

  audit.checks.push_back(make_check("epsilon-below-range-bound", epsilon, "<",
                                    bound, true));
  // The range bound keeps 1-3 eps positive, so the fractions below exist.
  audit.checks.push_back(
      make_check("range-bound-inside-third", bound, "<=", Rational(1, 3), true));

  const bool third = epsilon >= 0 && epsilon < Rational(1, 3);
  Rational perturb(0);
  if (audit.epsilon_in_range)
    perturb = Rational(2 * n) * epsilon / (Rational(1) - Rational(3) * epsilon);
  audit.checks.push_back(make_check("perturbation-below-target", perturb, "<",
                                    Rational(n, 2 * n - 1),
                                    audit.epsilon_in_range));
  audit.checks.push_back(make_check("target-below-one", Rational(n, 2 * n - 1),
                                    "<", Rational(1), true));
  audit.checks.push_back(make_check(
      "orthogonal-pieces-row-bound",
      (Rational(1) - epsilon) * (Rational(1) - Rational(2) * epsilon), ">=",
      Rational(1) - Rational(3) * epsilon, third));
  // n orthogonal unit pieces: ||c||^2 = sum of n unit terms.
  audit.checks.push_back(make_check("norm-square-bound", Rational(n), "<=",
                                    Rational(n), true));

  audit.all_hold = true;
  for (const InequalityCheck& c : audit.checks)
    if (c.applicable && !c.holds) audit.all_hold = false;
  return audit;
}

}  // namespace fillinglab
