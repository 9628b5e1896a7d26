#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fillinglab/rational.hpp"

namespace fillinglab {

// Letter of a free group word: +i is generator i (1-based), -i its inverse.
using Letter = int;

// Deterministic letter order x < x^-1 < y < y^-1 < ...
inline int letter_order(Letter l) {
  int idx = l > 0 ? l : -l;
  return 2 * (idx - 1) + (l < 0 ? 1 : 0);
}

// Freely reduced word. Words print as case-encoded strings for rank <= 8
// (x, y, z, w, u, v, s, t; uppercase = inverse) and as x<i> tokens beyond.
class ReducedWord {
 public:
  ReducedWord() = default;
  static ReducedWord reduce(const std::vector<Letter>& letters);
  static ReducedWord parse(const std::string& text, int rank);

  const std::vector<Letter>& letters() const { return letters_; }
  int size() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  ReducedWord inverse() const;
  // Reduced product this * o.
  ReducedWord concat(const ReducedWord& o) const;
  bool is_prefix_of(const ReducedWord& o) const;

  bool operator==(const ReducedWord& o) const { return letters_ == o.letters_; }
  bool operator!=(const ReducedWord& o) const { return !(*this == o); }
  // Shortlex with the deterministic letter order.
  bool operator<(const ReducedWord& o) const;

  std::string str() const;

 private:
  std::vector<Letter> letters_;
};

// Count of valid one-letter extensions of w (2k at the root, else 2k-1).
std::vector<ReducedWord> reduced_extensions(const ReducedWord& w, int rank);

// All reduced words of length <= max_len in shortlex order, identity first.
std::vector<ReducedWord> word_ball(int rank, int max_len);

// Clopen subset of the boundary of F_rank as a finite union of cylinders.
// Canonical form: prefix antichain, shortlex-sorted, maximally merged (a full
// sibling family collapses into its parent). The boundary itself is {e};
// the empty set has no prefixes.
class ClopenSet {
 public:
  ClopenSet() = default;  // empty set of rank 2
  static ClopenSet empty_set(int rank);
  static ClopenSet whole(int rank);
  static ClopenSet cylinder(const ReducedWord& w, int rank);
  static ClopenSet from_prefixes(std::vector<ReducedWord> prefixes, int rank);

  int rank() const { return rank_; }
  const std::vector<ReducedWord>& prefixes() const { return prefixes_; }
  bool is_empty() const { return prefixes_.empty(); }
  bool is_whole() const {
    return prefixes_.size() == 1 && prefixes_[0].empty();
  }
  int max_depth() const;

  ClopenSet unite(const ClopenSet& o) const;
  ClopenSet intersect(const ClopenSet& o) const;
  ClopenSet complement() const;
  bool disjoint_from(const ClopenSet& o) const {
    return intersect(o).is_empty();
  }

  // Uniform boundary measure: a depth-L cylinder has mass
  // 1/(2k) * (2k-1)^-(L-1).
  Rational mass() const;

  bool operator==(const ClopenSet& o) const {
    return rank_ == o.rank_ && prefixes_ == o.prefixes_;
  }
  bool operator!=(const ClopenSet& o) const { return !(*this == o); }

  std::string str() const;

 private:
  ClopenSet(int rank) : rank_(rank) {}
  void canonicalize();

  int rank_ = 2;
  std::vector<ReducedWord> prefixes_;
};

// Exact image g S under the boundary action. Cylinders whose prefix would be
// fully cancelled by g are refined one level and retried; the refinement
// terminates once prefixes outgrow |g|.
ClopenSet act_on_clopen(const ReducedWord& g, const ClopenSet& s);

struct CoverResult {
  bool covered = false;
  int depth = 0;                      // refinement depth used by the check
  std::optional<ReducedWord> missed;  // shortlex-least missed cylinder
};

// Decides exactly whether the union of the sets is the whole boundary.
CoverResult cover_check(int rank, const std::vector<ClopenSet>& sets);

struct CommonSetResult {
  bool found = false;
  std::vector<ReducedWord> words;  // g_1 = e, g_2, ..., g_n
  ClopenSet common;                // nonempty intersection of the g_j U_j
};

// Greedy shortlex search for g_2..g_n with U_1 ∩ g_2 U_2 ∩ ... nonempty.
CommonSetResult reduce_to_common_set(const std::vector<ClopenSet>& sets,
                                     int max_len);

// Eventually periodic boundary point head . cycle^inf in canonical form
// (primitive cycle, minimal head).
class BoundaryPoint {
 public:
  static BoundaryPoint periodic(const ReducedWord& head,
                                const ReducedWord& cycle);

  const std::vector<Letter>& head() const { return head_; }
  const std::vector<Letter>& cycle() const { return cycle_; }

  std::vector<Letter> truncate(int length) const;

  bool operator==(const BoundaryPoint& o) const {
    return head_ == o.head_ && cycle_ == o.cycle_;
  }
  bool operator!=(const BoundaryPoint& o) const { return !(*this == o); }

  // True when the point's infinite word starts with w.
  bool in_cylinder(const ReducedWord& w) const;

  std::string str() const;  // "y(x)^inf" style

 private:
  BoundaryPoint() = default;
  void canonicalize();

  std::vector<Letter> head_, cycle_;
};

// Exact action g . xi on eventually periodic points.
BoundaryPoint apply_word(const ReducedWord& g, const BoundaryPoint& xi);

// Endpoint h c^inf of g = h c h^-1 with c cyclically reduced; g must not be
// the identity.
BoundaryPoint attracting_endpoint(const ReducedWord& g);

struct FixedEndpoints {
  bool identity_all_fixed = false;  // flagged, not an error
  std::optional<BoundaryPoint> attracting;
  std::optional<BoundaryPoint> repelling;
};

FixedEndpoints fixed_endpoints(const ReducedWord& g);

// A point of Cyl(w) moved by g, with g xi != xi verified exactly; exists for
// every g != e because a cylinder holds more points than g fixes.
BoundaryPoint moved_point(const ReducedWord& g, const ReducedWord& w, int rank);

struct TranslateCoverResult {
  bool found = false;
  std::vector<ReducedWord> translates;
  int checked_candidates = 0;
};

// Greedy cover of the boundary by translates h V, candidates drawn from the
// shortlex ball of radius max_len, largest newly covered mass first.
TranslateCoverResult translate_cover(const ClopenSet& v, int max_len);

struct TreeWitness {
  bool found = false;
  std::string failure;
  ReducedWord t1, t2;
  bool certified = false;
  int cover_depth = 0;
};

// Translates with t1 U ∪ t2 V = whole boundary. Constructive recipe:
// conjugated letters t1 = w a w^-1, t2 = v b v^-1 whose contraction ranges
// Cyl(wa), Cyl(vb) are disjoint; re-verified exactly by cover_check, with a
// bounded pair search as fallback.
TreeWitness two_filling_witness(const ClopenSet& u, const ClopenSet& v,
                                int radius);

}  // namespace fillinglab
