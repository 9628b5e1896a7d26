#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fillinglab/matrix.hpp"
#include "fillinglab/quadratic.hpp"

namespace fillinglab {

// Point of P^{n-1} with exact coordinates. Canonical form: an all-rational
// point becomes a primitive integer vector with positive first nonzero entry;
// otherwise the point is scaled so its first nonzero coordinate is 1. Equal
// points have identical coordinate vectors.
class ProjectivePoint {
 public:
  ProjectivePoint() = default;
  explicit ProjectivePoint(std::vector<QuadraticNumber> coords);
  static ProjectivePoint from_integers(const std::vector<long>& c);
  static ProjectivePoint from_rationals(const std::vector<Rational>& c);

  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<QuadraticNumber>& coords() const { return coords_; }
  const QuadraticNumber& operator[](int i) const { return coords_[i]; }

  bool operator==(const ProjectivePoint& o) const {
    return coords_ == o.coords_;
  }
  bool operator!=(const ProjectivePoint& o) const { return !(*this == o); }

  std::string str() const;  // "[c1:c2:...]"

 private:
  std::vector<QuadraticNumber> coords_;
};

enum class RegionKind { ClosedK, OpenU };

// Ratio region attached to the eigenbasis at index j (1-based): the closed
// K_j uses the system constant R with non-strict bounds, the open U_j(eps)
// uses a strict rational bound.
struct RatioRegion {
  RegionKind kind = RegionKind::OpenU;
  int index = 1;
  Rational epsilon;  // Only meaningful for OpenU.
};

// Axis-aligned closed box in an affine chart: x_chart != 0 and
// lo_l <= x_l/x_chart <= hi_l for every l != chart.
struct ChartBox {
  int chart = 1;  // 1-based
  std::vector<std::pair<Rational, Rational>> bounds;  // size n; chart slot ignored
};

using SteerTarget = std::variant<RatioRegion, ChartBox>;

// Coordinates of x in the mixed basis {u_j, v_j, e_l (other l)}.
struct LocalCoords {
  QuadraticNumber xi;   // coefficient of u_j
  QuadraticNumber eta;  // coefficient of v_j
  std::vector<std::pair<int, QuadraticNumber>> rest;  // (1-based l, coefficient)
};

// Formal product of named generators; written order is matrix-product order.
struct GroupWord {
  std::vector<std::pair<std::string, long>> factors;  // (base name, power)
  bool empty() const { return factors.empty(); }
  std::string str() const;  // "g1^-3 E12^1", "e" for the identity
  static GroupWord parse(const std::string& text);
};

struct Translate {
  GroupWord word;
  IntMatrix matrix;
};

struct SteerGenerator {
  std::string base;
  int power;  // +1 or -1
  IntMatrix mat;
};

// The SL_n(Z) system acting on P^{n-1}: n generators built from the 2x2
// blocks [[k+1,k],[1,1]] and [[1,1],[k,k+1]], each with an expanding
// eigendirection u_j and contracting eigendirection v_j in Q(sqrt(k^2+4k)).
class ProjectiveSystem {
 public:
  // Requires n >= 2 and k >= 4. All algebraic identities the construction
  // relies on (eigen relations, lambda_+ lambda_- = 1, 0 < b < 1, the R-max
  // equality) are verified exactly here.
  static ProjectiveSystem build(int n, long k);

  int n() const { return n_; }
  long k() const { return k_; }
  const Integer& d() const { return d_; }
  const QuadraticNumber& a() const { return a_; }
  const QuadraticNumber& b() const { return b_; }
  const QuadraticNumber& lambda_plus() const { return lambda_plus_; }
  const QuadraticNumber& lambda_minus() const { return lambda_minus_; }
  const QuadraticNumber& R() const { return R_; }

  const IntMatrix& gen(int j) const { return gens_.at(j - 1); }  // 1-based
  ProjectivePoint expanding_direction(int j) const;    // [u_j]
  ProjectivePoint contracting_direction(int j) const;  // [v_j]
  // Unnormalized basis vectors u_j, v_j; local coordinates are taken
  // against exactly these.
  const std::vector<QuadraticNumber>& basis_u(int j) const {
    return u_.at(j - 1);
  }
  const std::vector<QuadraticNumber>& basis_v(int j) const {
    return v_.at(j - 1);
  }

  LocalCoords to_local_coords(const ProjectivePoint& x, int j) const;

  bool region_contains(const RatioRegion& region, const ProjectivePoint& x) const;
  bool box_contains(const ChartBox& box, const ProjectivePoint& x) const;
  bool target_contains(const SteerTarget& target, const ProjectivePoint& x) const;

  // Index j maximizing |x_j| (smallest on ties); x then lies in K_j.
  int assign_region(const ProjectivePoint& x) const;

  // g_j^{+-1} for all j followed by all elementary E_ij(+-1).
  const std::vector<SteerGenerator>& steering_generators() const {
    return steer_gens_;
  }
  // Resolves a word over {g<j>, E<i><j>} to its exact matrix.
  IntMatrix word_matrix(const GroupWord& w) const;

 private:
  ProjectiveSystem() = default;

  int n_ = 0;
  long k_ = 0;
  Integer d_;
  QuadraticNumber a_, b_, lambda_plus_, lambda_minus_, R_;
  std::vector<IntMatrix> gens_;
  std::vector<std::vector<QuadraticNumber>> u_, v_;
  std::vector<SteerGenerator> steer_gens_;

  // (row pair) used by the eigenbasis at index j, 0-based.
  std::pair<int, int> block(int j) const;
};

// g^m x with exact arithmetic; m may be negative.
ProjectivePoint apply_power(const IntMatrix& g, long m, const ProjectivePoint& x);

// Least N >= 1 with lambda_+^N > R/eps, decided exactly. eps must be > 0.
unsigned long contraction_exponent(const ProjectiveSystem& sys,
                                   const Rational& eps);

struct AttractionCertificate {
  bool certified = false;
  std::string reason;  // set when certification is refused
  int index = 0;
  Rational epsilon;
  unsigned long m = 0;
  QuadraticNumber lhs;  // lambda_+^m
  QuadraticNumber rhs;  // R/eps
  unsigned long samples_checked = 0;
  unsigned long sample_failures = 0;
};

// Certifies g_j^m K_j subset U_j(eps) via the exact inequality
// lambda_+^m > R/eps, then spot-verifies on sampled points of K_j.
AttractionCertificate certify_attraction(const ProjectiveSystem& sys, int j,
                                         const Rational& eps, unsigned long m,
                                         unsigned long samples,
                                         std::uint64_t seed);

struct SteerResult {
  bool found = false;
  GroupWord word;      // h with h p inside the target
  IntMatrix element;
  std::size_t explored = 0;
};

// Deterministic BFS over the point orbit (shortlex in the generator order);
// stops at word length max_len or after a node budget.
SteerResult orbit_steer(const ProjectiveSystem& sys, const ProjectivePoint& p,
                        const SteerTarget& target, int max_len,
                        std::size_t node_budget = 500000);

struct ProjectiveWitness {
  bool found = false;
  std::string failure;  // names the failing target index when !found
  std::vector<Translate> translates;
  std::vector<SteerTarget> targets;
  std::vector<AttractionCertificate> attraction;  // canonical-target case
  bool certified = false;  // CERTIFIED vs SAMPLED
  unsigned long samples_checked = 0;
  unsigned long sample_failures = 0;
};

// Produces translates t_1..t_n with union of t_j(target_j) = P^{n-1}.
// Canonical targets U_j(eps) in position j yield t_j = g_j^{-N_j} with exact
// certificates; other targets are steered and the result is sample-verified.
ProjectiveWitness n_filling_witness(const ProjectiveSystem& sys,
                                    const std::vector<SteerTarget>& targets,
                                    int radius, unsigned long samples,
                                    std::uint64_t seed);

struct Hyperplane {
  std::vector<Rational> normal;  // nonzero
};

struct HyperplaneObstruction {
  std::vector<Translate> translates;
  Hyperplane hyperplane;
  std::vector<Integer> vertex;  // primitive v with [v] outside every t_j U
  bool verified = false;
};

// For translates t_1..t_{n-1} and U = complement of [E], produces [v] in the
// intersection of the t_j E, certifying the translates cannot cover with U.
HyperplaneObstruction hyperplane_obstruction(
    const std::vector<Translate>& translates, const Hyperplane& E);

}  // namespace fillinglab
