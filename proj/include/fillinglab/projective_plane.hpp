#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fillinglab {

struct unsupported_order_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct degenerate_triangle_error : std::domain_error {
  using std::domain_error::domain_error;
};
struct resource_bound_error : std::domain_error {
  using std::domain_error::domain_error;
};

// Homogeneous coordinate triple over GF(q), canonical: first nonzero entry 1.
using Triple = std::array<int, 3>;

// Incident point-line pair, by index into the plane's canonical orderings.
struct Flag {
  int point = -1;
  int line = -1;
  bool operator==(const Flag& o) const {
    return point == o.point && line == o.line;
  }
  bool operator!=(const Flag& o) const { return !(*this == o); }
  bool operator<(const Flag& o) const {
    return point != o.point ? point < o.point : line < o.line;
  }
};

// The projective plane PG(2,q) for prime q. Points and lines are the
// canonical triples in lexicographic order; incidence is p.l = 0 mod q.
class Plane {
 public:
  static Plane build(int q);

  int q() const { return q_; }
  int size() const { return static_cast<int>(points_.size()); }  // q^2+q+1
  int flag_count() const { return static_cast<int>(flags_.size()); }

  const std::vector<Triple>& points() const { return points_; }
  const std::vector<Triple>& lines() const { return lines_; }
  const std::vector<Flag>& flags() const { return flags_; }

  bool incident(int p, int l) const;
  const std::vector<int>& lines_through(int p) const {
    return lines_through_[static_cast<size_t>(p)];
  }
  const std::vector<int>& points_on(int l) const {
    return points_on_[static_cast<size_t>(l)];
  }

  // Unique line through two distinct points / meet of two distinct lines.
  int line_through(int p1, int p2) const;
  int meet(int l1, int l2) const;
  bool collinear(int p1, int p2, int p3) const;

  int point_index(const Triple& t) const;
  int line_index(const Triple& t) const;
  int flag_index(const Flag& f) const;

  std::string point_str(int p) const;  // "(x:y:z)"
  std::string line_str(int l) const;   // "[a:b:c]"
  std::string flag_str(const Flag& f) const;

 private:
  Plane() = default;

  int q_ = 0;
  std::vector<Triple> points_, lines_;
  std::vector<std::vector<bool>> incidence_;
  std::vector<std::vector<int>> lines_through_, points_on_;
  std::vector<Flag> flags_;             // lex order by (point, line)
  std::vector<int> flag_index_;         // point*|lines|+line -> flag index
};

// Chambers at maximal distance: p1 off l2 and p2 off l1.
bool opposite(const Plane& pl, const Flag& c1, const Flag& c2);

// All chambers opposite c, in flag order; always q^3 of them.
std::vector<Flag> opposition_set(const Plane& pl, const Flag& c);

// Hexagon of six flags on a non-collinear point triple. Chambers run around
// the hexagon, so chamber i is opposite chamber i+3 and nothing else inside.
struct Apartment {
  std::array<int, 3> triangle;  // ascending point indices
  std::array<int, 3> sides;     // sides[i] spans triangle[i], triangle[(i+1)%3]
  std::array<Flag, 6> chambers;
  bool contains(const Flag& f) const {
    for (const Flag& c : chambers)
      if (c == f) return true;
    return false;
  }
};

Apartment apartment_from_triangle(const Plane& pl, int p1, int p2, int p3);

// Deterministic apartment containing both flags: case analysis on the shared
// point/line, free vertices filled lexicographically least.
Apartment apartment_through(const Plane& pl, const Flag& c1, const Flag& c2);

// All apartments, triangles in lexicographic order (28 for q=2).
std::vector<Apartment> all_apartments(const Plane& pl);

struct OppositionCoverStats {
  bool covered = false;
  int total_incidences = 0;              // sum of multiplicities (= 6 q^3)
  std::vector<int> multiplicity;         // per chamber, in flag order
  std::map<int, int> histogram;          // multiplicity -> chamber count
};

// Does the union of the six opposition sets of the apartment's chambers
// reach every chamber of the plane, and how unevenly.
OppositionCoverStats opposition_cover_check(const Plane& pl,
                                            const Apartment& a);

// A chamber of a common apartment opposite to neither input; at least four
// of the six hexagon chambers qualify, the first in hexagon order is chosen.
Flag non_opposite_witness(const Plane& pl, const Flag& c1, const Flag& c2);

// A chamber opposite to none of three given chambers: (s, join(s, p3)) with
// s = l1 ^ l2 works in every projective plane, so three opposition sets can
// never cover all chambers.
Flag non_opposite_witness_triple(const Plane& pl, const Flag& c1,
                                 const Flag& c2, const Flag& c3);

// {p : (p,l) in chambers}, ascending, deduplicated.
std::vector<int> project_to_points(const Plane& pl,
                                   const std::vector<Flag>& chambers);

struct MinCoverResult {
  int m = 0;                   // least cover size found by exhaustive search
  std::vector<Flag> chambers;  // lexicographically least witness of size m
  int lower_bound = 0;         // forced independently by witness pairs
  long long subsets_checked = 0;
};

// Smallest family of chambers whose opposition sets cover every chamber.
// The lower bound comes from non_opposite_witness over all pairs, the upper
// bound from exhaustive subset search (q in {2,3} only).
MinCoverResult min_opposition_cover(const Plane& pl);

// Steps in the chamber adjacency graph (flags sharing a point or a line);
// opposition is equivalent to distance 3, cross-checked in tests.
int gallery_distance(const Plane& pl, const Flag& c1, const Flag& c2);

// Inverse of Plane::flag_str: "(a:b:c)[d:e:f]".
Flag parse_flag(const Plane& pl, const std::string& text);

}  // namespace fillinglab
