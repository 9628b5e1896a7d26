#include "fillinglab/tree_boundary.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <map>
#include <stdexcept>

namespace fillinglab {

namespace {

constexpr const char* kLetterNames = "xyzwuvst";

std::string letter_str(Letter l) {
  int idx = l > 0 ? l : -l;
  if (idx <= 8) {
    char c = kLetterNames[idx - 1];
    if (l < 0) c = static_cast<char>(std::toupper(c));
    return std::string(1, c);
  }
  return "x" + std::to_string(idx) + (l < 0 ? "^-1" : "");
}

bool shortlex_less(const std::vector<Letter>& a, const std::vector<Letter>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return letter_order(a[i]) < letter_order(b[i]);
  return false;
}

}  // namespace

ReducedWord ReducedWord::reduce(const std::vector<Letter>& letters) {
  ReducedWord w;
  for (Letter l : letters) {
    if (l == 0) throw std::invalid_argument("letter 0 is not a generator");
    if (!w.letters_.empty() && w.letters_.back() == -l)
      w.letters_.pop_back();
    else
      w.letters_.push_back(l);
  }
  return w;
}

ReducedWord ReducedWord::parse(const std::string& text, int rank) {
  std::vector<Letter> letters;
  if (text == "e" || text.empty()) return ReducedWord();
  if (text.find_first_of(" ^0123456789") != std::string::npos) {
    std::string tok;
    auto flush = [&] {
      if (tok.empty()) return;
      bool inv = false;
      if (auto c = tok.find("^-1"); c != std::string::npos) {
        inv = true;
        tok = tok.substr(0, c);
      }
      int idx;
      if (tok.size() == 1) {
        // str() renders indices <= 8 as bare letters even between tokens.
        const char* pos = std::strchr(kLetterNames, std::tolower(tok[0]));
        if (!pos) throw std::invalid_argument("malformed letter token: " + tok);
        idx = static_cast<int>(pos - kLetterNames) + 1;
        if (std::isupper(static_cast<unsigned char>(tok[0]))) inv = !inv;
      } else {
        if (tok[0] != 'x')
          throw std::invalid_argument("malformed letter token: " + tok);
        idx = std::stoi(tok.substr(1));
      }
      if (idx < 1 || idx > rank)
        throw std::invalid_argument("letter outside rank: " + tok);
      letters.push_back(inv ? -idx : idx);
      tok.clear();
    };
    for (char c : text) {
      if (c == ' ')
        flush();
      else
        tok += c;
    }
    flush();
  } else {
    for (char c : text) {
      const char* pos = std::strchr(kLetterNames, std::tolower(c));
      if (!pos) throw std::invalid_argument(std::string("unknown letter: ") + c);
      int idx = static_cast<int>(pos - kLetterNames) + 1;
      if (idx > rank)
        throw std::invalid_argument(std::string("letter outside rank: ") + c);
      letters.push_back(std::isupper(static_cast<unsigned char>(c)) ? -idx : idx);
    }
  }
  return reduce(letters);
}

ReducedWord ReducedWord::inverse() const {
  ReducedWord w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
    w.letters_.push_back(-*it);
  return w;
}

ReducedWord ReducedWord::concat(const ReducedWord& o) const {
  std::vector<Letter> all(letters_);
  all.insert(all.end(), o.letters_.begin(), o.letters_.end());
  return reduce(all);
}

bool ReducedWord::is_prefix_of(const ReducedWord& o) const {
  if (size() > o.size()) return false;
  return std::equal(letters_.begin(), letters_.end(), o.letters_.begin());
}

bool ReducedWord::operator<(const ReducedWord& o) const {
  return shortlex_less(letters_, o.letters_);
}

std::string ReducedWord::str() const {
  if (letters_.empty()) return "e";
  std::string out;
  bool tokens = false;
  for (Letter l : letters_)
    if (std::abs(l) > 8) tokens = true;
  for (size_t i = 0; i < letters_.size(); ++i) {
    if (tokens && i) out += " ";
    out += letter_str(letters_[i]);
  }
  return out;
}

std::vector<ReducedWord> reduced_extensions(const ReducedWord& w, int rank) {
  std::vector<ReducedWord> out;
  for (int idx = 1; idx <= rank; ++idx)
    for (Letter l : {Letter(idx), Letter(-idx)}) {
      if (!w.empty() && w.back() == -l) continue;
      std::vector<Letter> e(w.letters());
      e.push_back(l);
      out.push_back(ReducedWord::reduce(e));
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ReducedWord> word_ball(int rank, int max_len) {
  std::vector<ReducedWord> ball{ReducedWord()};
  size_t level_start = 0;
  for (int len = 1; len <= max_len; ++len) {
    size_t level_end = ball.size();
    for (size_t i = level_start; i < level_end; ++i)
      for (const ReducedWord& e : reduced_extensions(ball[i], rank))
        ball.push_back(e);
    level_start = level_end;
    std::sort(ball.begin() + static_cast<long>(level_start), ball.end());
  }
  return ball;
}

ClopenSet ClopenSet::empty_set(int rank) { return ClopenSet(rank); }

ClopenSet ClopenSet::whole(int rank) {
  ClopenSet s(rank);
  s.prefixes_.push_back(ReducedWord());
  return s;
}

ClopenSet ClopenSet::cylinder(const ReducedWord& w, int rank) {
  ClopenSet s(rank);
  s.prefixes_.push_back(w);
  return s;
}

ClopenSet ClopenSet::from_prefixes(std::vector<ReducedWord> prefixes, int rank) {
  ClopenSet s(rank);
  s.prefixes_ = std::move(prefixes);
  s.canonicalize();
  return s;
}

void ClopenSet::canonicalize() {
  // Absorb: drop any prefix that extends another (shorter ones come first).
  std::sort(prefixes_.begin(), prefixes_.end());
  prefixes_.erase(std::unique(prefixes_.begin(), prefixes_.end()),
                  prefixes_.end());
  std::vector<ReducedWord> kept;
  for (const ReducedWord& w : prefixes_) {
    bool dominated = false;
    for (const ReducedWord& p : kept)
      if (p.is_prefix_of(w)) {
        dominated = true;
        break;
      }
    if (!dominated) kept.push_back(w);
  }
  prefixes_ = std::move(kept);

  // Merge full sibling families into their parent until stable.
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::vector<Letter>, int> family;
    for (const ReducedWord& w : prefixes_) {
      if (w.empty()) continue;
      std::vector<Letter> parent(w.letters().begin(), w.letters().end() - 1);
      family[parent]++;
    }
    std::vector<ReducedWord> next;
    std::vector<std::vector<Letter>> merged;
    for (const auto& [parent, count] : family) {
      const int expected = parent.empty() ? 2 * rank_ : 2 * rank_ - 1;
      if (count == expected) merged.push_back(parent);
    }
    if (merged.empty()) break;
    for (const ReducedWord& w : prefixes_) {
      bool absorbed = false;
      if (!w.empty()) {
        std::vector<Letter> parent(w.letters().begin(), w.letters().end() - 1);
        for (const auto& m : merged)
          if (parent == m) {
            absorbed = true;
            break;
          }
      }
      if (!absorbed) next.push_back(w);
    }
    for (const auto& m : merged) next.push_back(ReducedWord::reduce(m));
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    prefixes_ = std::move(next);
    changed = true;
  }
}

int ClopenSet::max_depth() const {
  int d = 0;
  for (const ReducedWord& w : prefixes_) d = std::max(d, w.size());
  return d;
}

ClopenSet ClopenSet::unite(const ClopenSet& o) const {
  if (rank_ != o.rank_) throw std::invalid_argument("rank mismatch");
  std::vector<ReducedWord> all(prefixes_);
  all.insert(all.end(), o.prefixes_.begin(), o.prefixes_.end());
  return from_prefixes(std::move(all), rank_);
}

ClopenSet ClopenSet::intersect(const ClopenSet& o) const {
  if (rank_ != o.rank_) throw std::invalid_argument("rank mismatch");
  std::vector<ReducedWord> out;
  for (const ReducedWord& a : prefixes_)
    for (const ReducedWord& b : o.prefixes_) {
      if (a.is_prefix_of(b))
        out.push_back(b);
      else if (b.is_prefix_of(a))
        out.push_back(a);
    }
  return from_prefixes(std::move(out), rank_);
}

ClopenSet ClopenSet::complement() const {
  if (is_empty()) return whole(rank_);
  if (is_whole()) return empty_set(rank_);
  // Collect all depth-D words not under any prefix.
  const int d = max_depth();
  std::vector<ReducedWord> missing;
  std::vector<ReducedWord> frontier{ReducedWord()};
  for (int depth = 0; depth < d; ++depth) {
    std::vector<ReducedWord> next;
    for (const ReducedWord& w : frontier) {
      bool inside = false;
      for (const ReducedWord& p : prefixes_)
        if (p.is_prefix_of(w)) {
          inside = true;
          break;
        }
      if (inside) continue;  // Already covered; not part of the complement.
      for (const ReducedWord& e : reduced_extensions(w, rank_))
        next.push_back(e);
    }
    frontier = std::move(next);
  }
  for (const ReducedWord& w : frontier) {
    bool inside = false;
    for (const ReducedWord& p : prefixes_)
      if (p.is_prefix_of(w)) {
        inside = true;
        break;
      }
    if (!inside) missing.push_back(w);
  }
  return from_prefixes(std::move(missing), rank_);
}

Rational ClopenSet::mass() const {
  Rational total(0);
  for (const ReducedWord& w : prefixes_) {
    if (w.empty()) return Rational(1);
    Rational m(1, 2 * rank_);
    for (int i = 1; i < w.size(); ++i) m /= (2 * rank_ - 1);
    total += m;
  }
  return total;
}

std::string ClopenSet::str() const {
  std::string out = "{";
  for (size_t i = 0; i < prefixes_.size(); ++i) {
    if (i) out += ",";
    out += prefixes_[i].str();
  }
  return out + "}";
}

ClopenSet act_on_clopen(const ReducedWord& g, const ClopenSet& s) {
  if (s.is_empty()) return ClopenSet::empty_set(s.rank());
  if (s.is_whole()) return ClopenSet::whole(s.rank());
  std::vector<ReducedWord> out;
  std::vector<ReducedWord> stack(s.prefixes().begin(), s.prefixes().end());
  while (!stack.empty()) {
    ReducedWord w = stack.back();
    stack.pop_back();
    ReducedWord gw = g.concat(w);
    const int cancelled = (g.size() + w.size() - gw.size()) / 2;
    if (!w.empty() && cancelled == w.size()) {
      // The whole prefix cancels; split one level deeper.
      for (const ReducedWord& e : reduced_extensions(w, s.rank()))
        stack.push_back(e);
    } else {
      out.push_back(gw);
    }
  }
  return ClopenSet::from_prefixes(std::move(out), s.rank());
}

CoverResult cover_check(int rank, const std::vector<ClopenSet>& sets) {
  CoverResult res;
  for (const ClopenSet& s : sets) {
    if (s.rank() != rank) throw std::invalid_argument("rank mismatch");
    if (s.is_whole()) {
      res.covered = true;
      return res;
    }
  }
  int depth = 0;
  for (const ClopenSet& s : sets) depth = std::max(depth, s.max_depth());
  res.depth = depth;
  if (depth == 0) {
    // Only empty sets (whole ones returned already).
    res.covered = false;
    res.missed = ReducedWord();
    return res;
  }
  // DFS in letter order reaches depth-`depth` words in lex order, so the
  // first miss is the shortlex-least missed cylinder. Covered subtrees are
  // pruned; at full depth the prefix test is exact.
  auto covered_by_sets = [&](const ReducedWord& w) {
    for (const ClopenSet& s : sets)
      for (const ReducedWord& p : s.prefixes())
        if (p.is_prefix_of(w)) return true;
    return false;
  };
  std::vector<ReducedWord> todo{ReducedWord()};
  while (!todo.empty()) {
    ReducedWord w = todo.back();
    todo.pop_back();
    if (covered_by_sets(w)) continue;
    if (w.size() == depth) {
      res.covered = false;
      res.missed = w;
      return res;
    }
    auto ext = reduced_extensions(w, rank);
    for (auto it = ext.rbegin(); it != ext.rend(); ++it) todo.push_back(*it);
  }
  res.covered = true;
  return res;
}

CommonSetResult reduce_to_common_set(const std::vector<ClopenSet>& sets,
                                     int max_len) {
  if (sets.empty()) throw std::invalid_argument("need at least one set");
  const int rank = sets.front().rank();
  for (const ClopenSet& s : sets)
    if (s.is_empty()) throw std::invalid_argument("sets must be nonempty");
  CommonSetResult res;
  res.common = sets.front();
  res.words.push_back(ReducedWord());
  const std::vector<ReducedWord> ball = word_ball(rank, max_len);
  for (size_t j = 1; j < sets.size(); ++j) {
    bool ok = false;
    for (const ReducedWord& g : ball) {
      ClopenSet moved = act_on_clopen(g, sets[j]);
      ClopenSet inter = res.common.intersect(moved);
      if (!inter.is_empty()) {
        res.common = inter;
        res.words.push_back(g);
        ok = true;
        break;
      }
    }
    if (!ok) {
      res.found = false;
      return res;
    }
  }
  res.found = true;
  return res;
}

BoundaryPoint BoundaryPoint::periodic(const ReducedWord& head,
                                      const ReducedWord& cycle) {
  if (cycle.empty()) throw std::invalid_argument("cycle must be nonempty");
  if (cycle.front() == -cycle.back())
    throw std::invalid_argument("cycle must be cyclically reduced");
  if (!head.empty() && head.back() == -cycle.front())
    throw std::invalid_argument("head does not extend reducedly into cycle");
  BoundaryPoint p;
  p.head_ = head.letters();
  p.cycle_ = cycle.letters();
  p.canonicalize();
  return p;
}

void BoundaryPoint::canonicalize() {
  // Primitive cycle.
  const int n = static_cast<int>(cycle_.size());
  for (int p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool periodic = true;
    for (int i = p; i < n && periodic; ++i)
      periodic = cycle_[i] == cycle_[i - p];
    if (periodic) {
      cycle_.resize(p);
      break;
    }
  }
  // Minimal head: absorb trailing head letters into cycle rotations.
  while (!head_.empty() && head_.back() == cycle_.back()) {
    head_.pop_back();
    std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
  }
}

std::vector<Letter> BoundaryPoint::truncate(int length) const {
  std::vector<Letter> out;
  out.reserve(static_cast<size_t>(length));
  for (int i = 0; i < length; ++i) {
    if (i < static_cast<int>(head_.size()))
      out.push_back(head_[static_cast<size_t>(i)]);
    else
      out.push_back(
          cycle_[static_cast<size_t>(i - head_.size()) % cycle_.size()]);
  }
  return out;
}

bool BoundaryPoint::in_cylinder(const ReducedWord& w) const {
  std::vector<Letter> t = truncate(w.size());
  return std::equal(w.letters().begin(), w.letters().end(), t.begin());
}

std::string BoundaryPoint::str() const {
  std::string out;
  for (Letter l : head_) out += letter_str(l);
  out += "(";
  for (Letter l : cycle_) out += letter_str(l);
  out += ")^inf";
  return out;
}

BoundaryPoint apply_word(const ReducedWord& g, const BoundaryPoint& xi) {
  // Unroll enough cycle copies that the junction cancellation cannot reach
  // the periodic tail.
  const int cyc = static_cast<int>(xi.cycle().size());
  int copies = 1;
  while (static_cast<int>(xi.head().size()) + copies * cyc <= g.size())
    ++copies;
  std::vector<Letter> prefix(xi.head());
  for (int c = 0; c < copies; ++c)
    prefix.insert(prefix.end(), xi.cycle().begin(), xi.cycle().end());
  ReducedWord head = g.concat(ReducedWord::reduce(prefix));
  if (head.empty())
    throw std::logic_error("junction cancellation reached the periodic tail");
  // Cancellation stops inside the unrolled prefix (|prefix| > |g|), so the
  // tail past it is still cycle^inf aligned at offset zero.
  return BoundaryPoint::periodic(head, ReducedWord::reduce(xi.cycle()));
}

BoundaryPoint attracting_endpoint(const ReducedWord& g) {
  if (g.empty())
    throw std::invalid_argument("identity has no attracting endpoint");
  std::vector<Letter> head;
  std::vector<Letter> body(g.letters());
  while (body.size() >= 2 && body.front() == -body.back()) {
    head.push_back(body.front());
    body.erase(body.begin());
    body.pop_back();
  }
  if (body.empty()) throw std::logic_error("reduced word cannot strip to empty");
  return BoundaryPoint::periodic(ReducedWord::reduce(head),
                                 ReducedWord::reduce(body));
}

FixedEndpoints fixed_endpoints(const ReducedWord& g) {
  FixedEndpoints fe;
  if (g.empty()) {
    fe.identity_all_fixed = true;
    return fe;
  }
  fe.attracting = attracting_endpoint(g);
  fe.repelling = attracting_endpoint(g.inverse());
  return fe;
}

BoundaryPoint moved_point(const ReducedWord& g, const ReducedWord& w,
                          int rank) {
  if (g.empty()) throw std::invalid_argument("identity moves no point");
  FixedEndpoints fe = fixed_endpoints(g);
  // Candidate points w . l^inf for each letter l extending w reducedly:
  // more candidates than fixed points, so one always survives.
  for (int idx = 1; idx <= rank; ++idx)
    for (Letter l : {Letter(idx), Letter(-idx)}) {
      if (!w.empty() && w.back() == -l) continue;
      std::vector<Letter> c{l};
      BoundaryPoint xi =
          BoundaryPoint::periodic(w, ReducedWord::reduce(c));
      if (xi == *fe.attracting || xi == *fe.repelling) continue;
      if (apply_word(g, xi) != xi) return xi;
    }
  throw std::logic_error("cylinder unexpectedly pointwise fixed");
}

TranslateCoverResult translate_cover(const ClopenSet& v, int max_len) {
  if (v.is_empty()) throw std::invalid_argument("cannot cover with empty set");
  TranslateCoverResult res;
  if (v.is_whole()) {
    res.found = true;
    res.translates.push_back(ReducedWord());
    return res;
  }
  const int rank = v.rank();
  const std::vector<ReducedWord> ball = word_ball(rank, max_len);
  std::vector<ClopenSet> images;
  images.reserve(ball.size());
  for (const ReducedWord& h : ball) images.push_back(act_on_clopen(h, v));
  res.checked_candidates = static_cast<int>(ball.size());

  ClopenSet uncovered = ClopenSet::whole(rank);
  while (!uncovered.is_empty()) {
    Rational best_mass(0);
    int best = -1;
    for (size_t i = 0; i < ball.size(); ++i) {
      Rational gain = images[i].intersect(uncovered).mass();
      if (gain > best_mass) {
        best_mass = gain;
        best = static_cast<int>(i);
      }
    }
    if (best < 0) return res;  // found stays false
    res.translates.push_back(ball[static_cast<size_t>(best)]);
    uncovered = uncovered.intersect(images[static_cast<size_t>(best)].complement());
  }
  res.found = true;
  return res;
}

namespace {

// Smallest letter extending w reducedly on both sides of the conjugation
// w a w^-1, excluding `avoid` (0 = nothing).
Letter conjugation_letter(const ReducedWord& w, int rank, Letter avoid) {
  for (int ord = 0; ord < 2 * rank; ++ord) {
    int idx = ord / 2 + 1;
    Letter l = (ord % 2 == 0) ? Letter(idx) : Letter(-idx);
    if (!w.empty() && (l == w.back() || l == -w.back())) continue;
    if (l == avoid) continue;
    return l;
  }
  throw std::logic_error("no conjugation letter available");
}

}  // namespace

TreeWitness two_filling_witness(const ClopenSet& u, const ClopenSet& v,
                                int radius) {
  if (u.is_empty() || v.is_empty())
    throw std::invalid_argument("witness requires nonempty open sets");
  if (u.rank() != v.rank()) throw std::invalid_argument("rank mismatch");
  const int rank = u.rank();
  if (rank < 2) throw std::invalid_argument("rank must be at least 2");
  TreeWitness res;
  if (u.is_whole() || v.is_whole()) {
    CoverResult cc = cover_check(rank, {act_on_clopen(res.t1, u),
                                        act_on_clopen(res.t2, v)});
    res.found = true;
    res.certified = cc.covered;
    res.cover_depth = cc.depth;
    return res;
  }

  // Letter choices making Cyl(wa) and Cyl(vb) disjoint: automatic when the
  // prefixes are incomparable, otherwise steer the shorter one away from the
  // longer one's continuation (equal prefixes just need a != b).
  const ReducedWord w = u.prefixes().front();
  const ReducedWord vp = v.prefixes().front();
  Letter a, b;
  if (w == vp) {
    b = conjugation_letter(w, rank, 0);
    a = conjugation_letter(w, rank, b);
  } else if (w.is_prefix_of(vp)) {
    a = conjugation_letter(w, rank, vp.letters()[static_cast<size_t>(w.size())]);
    b = conjugation_letter(vp, rank, 0);
  } else if (vp.is_prefix_of(w)) {
    a = conjugation_letter(w, rank, 0);
    b = conjugation_letter(vp, rank, w.letters()[static_cast<size_t>(vp.size())]);
  } else {
    a = conjugation_letter(w, rank, 0);
    b = conjugation_letter(vp, rank, 0);
  }

  auto conjugated = [](const ReducedWord& base, Letter l) {
    std::vector<Letter> word(base.letters());
    word.push_back(l);
    ReducedWord tail = base.inverse();
    word.insert(word.end(), tail.letters().begin(), tail.letters().end());
    return ReducedWord::reduce(word);
  };
  res.t1 = conjugated(w, a);
  res.t2 = conjugated(vp, b);
  CoverResult cc =
      cover_check(rank, {act_on_clopen(res.t1, u), act_on_clopen(res.t2, v)});
  if (cc.covered) {
    res.found = true;
    res.certified = true;
    res.cover_depth = cc.depth;
    return res;
  }

  // Fallback: bounded shortlex pair search (not expected to run).
  const std::vector<ReducedWord> ball = word_ball(rank, std::min(radius, 4));
  for (const ReducedWord& t1 : ball)
    for (const ReducedWord& t2 : ball) {
      CoverResult c2 =
          cover_check(rank, {act_on_clopen(t1, u), act_on_clopen(t2, v)});
      if (c2.covered) {
        res.t1 = t1;
        res.t2 = t2;
        res.found = true;
        res.certified = true;
        res.cover_depth = c2.depth;
        return res;
      }
    }
  res.failure = "no covering pair within radius";
  return res;
}

}  // namespace fillinglab
