#include "fillinglab/projective_plane.hpp"

#include <algorithm>
#include <deque>

#include "fillinglab/parallel.hpp"

namespace fillinglab {

namespace {

bool is_prime(int q) {
  if (q < 2) return false;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

int mod(int v, int q) {
  int r = v % q;
  return r < 0 ? r + q : r;
}

// Scale so the first nonzero entry is 1 (q prime, so inverses exist).
Triple canonical(Triple t, int q) {
  for (int& v : t) v = mod(v, q);
  int lead = 0;
  for (int v : t)
    if (v != 0) {
      lead = v;
      break;
    }
  if (lead == 0) throw std::logic_error("zero triple is not projective");
  int inv = 1;
  for (int c = 1; c < q; ++c)
    if (mod(lead * c, q) == 1) {
      inv = c;
      break;
    }
  for (int& v : t) v = mod(v * inv, q);
  return t;
}

int dot(const Triple& a, const Triple& b, int q) {
  return mod(a[0] * b[0] + a[1] * b[1] + a[2] * b[2], q);
}

Triple cross(const Triple& a, const Triple& b, int q) {
  return canonical({a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                    a[0] * b[1] - a[1] * b[0]},
                   q);
}

void demand(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("plane invariant failed: ") + what);
}

}  // namespace

Plane Plane::build(int q) {
  if (!is_prime(q))
    throw unsupported_order_error("unsupported order: " + std::to_string(q) +
                                  " is not prime");
  Plane pl;
  pl.q_ = q;
  for (int x = 0; x <= 1; ++x)
    for (int y = 0; y < q; ++y)
      for (int z = 0; z < q; ++z) {
        Triple t{x, y, z};
        if (x == 0 && y == 0 && z == 0) continue;
        if (canonical(t, q) != t) continue;
        pl.points_.push_back(t);
      }
  std::sort(pl.points_.begin(), pl.points_.end());
  pl.lines_ = pl.points_;

  const int n = static_cast<int>(pl.points_.size());
  demand(n == q * q + q + 1, "point count");
  pl.incidence_.assign(static_cast<size_t>(n),
                       std::vector<bool>(static_cast<size_t>(n), false));
  pl.lines_through_.assign(static_cast<size_t>(n), {});
  pl.points_on_.assign(static_cast<size_t>(n), {});
  for (int p = 0; p < n; ++p)
    for (int l = 0; l < n; ++l)
      if (dot(pl.points_[static_cast<size_t>(p)],
              pl.lines_[static_cast<size_t>(l)], q) == 0) {
        pl.incidence_[static_cast<size_t>(p)][static_cast<size_t>(l)] = true;
        pl.lines_through_[static_cast<size_t>(p)].push_back(l);
        pl.points_on_[static_cast<size_t>(l)].push_back(p);
      }

  pl.flag_index_.assign(static_cast<size_t>(n) * static_cast<size_t>(n), -1);
  for (int p = 0; p < n; ++p)
    for (int l : pl.lines_through_[static_cast<size_t>(p)]) {
      pl.flag_index_[static_cast<size_t>(p) * static_cast<size_t>(n) +
                     static_cast<size_t>(l)] =
          static_cast<int>(pl.flags_.size());
      pl.flags_.push_back(Flag{p, l});
    }

  for (int l = 0; l < n; ++l)
    demand(static_cast<int>(pl.points_on_[static_cast<size_t>(l)].size()) ==
               q + 1,
           "line degree");
  for (int p = 0; p < n; ++p)
    demand(static_cast<int>(pl.lines_through_[static_cast<size_t>(p)].size()) ==
               q + 1,
           "point degree");
  for (int p1 = 0; p1 < n; ++p1)
    for (int p2 = p1 + 1; p2 < n; ++p2) {
      int count = 0;
      for (int l = 0; l < n; ++l)
        if (pl.incidence_[static_cast<size_t>(p1)][static_cast<size_t>(l)] &&
            pl.incidence_[static_cast<size_t>(p2)][static_cast<size_t>(l)])
          ++count;
      demand(count == 1, "unique spanned line");
    }
  return pl;
}

bool Plane::incident(int p, int l) const {
  return incidence_[static_cast<size_t>(p)][static_cast<size_t>(l)];
}

int Plane::line_through(int p1, int p2) const {
  if (p1 == p2) throw std::invalid_argument("points must be distinct");
  return line_index(cross(points_[static_cast<size_t>(p1)],
                          points_[static_cast<size_t>(p2)], q_));
}

int Plane::meet(int l1, int l2) const {
  if (l1 == l2) throw std::invalid_argument("lines must be distinct");
  return point_index(cross(lines_[static_cast<size_t>(l1)],
                           lines_[static_cast<size_t>(l2)], q_));
}

bool Plane::collinear(int p1, int p2, int p3) const {
  if (p1 == p2 || p1 == p3 || p2 == p3) return true;
  return incident(p3, line_through(p1, p2));
}

int Plane::point_index(const Triple& t) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), t);
  if (it == points_.end() || *it != t)
    throw std::invalid_argument("not a canonical point triple");
  return static_cast<int>(it - points_.begin());
}

int Plane::line_index(const Triple& t) const { return point_index(t); }

int Plane::flag_index(const Flag& f) const {
  const int n = size();
  if (f.point < 0 || f.point >= n || f.line < 0 || f.line >= n)
    throw std::invalid_argument("flag indices out of range");
  int idx = flag_index_[static_cast<size_t>(f.point) * static_cast<size_t>(n) +
                        static_cast<size_t>(f.line)];
  if (idx < 0) throw std::invalid_argument("pair is not incident");
  return idx;
}

std::string Plane::point_str(int p) const {
  const Triple& t = points_[static_cast<size_t>(p)];
  return "(" + std::to_string(t[0]) + ":" + std::to_string(t[1]) + ":" +
         std::to_string(t[2]) + ")";
}

std::string Plane::line_str(int l) const {
  const Triple& t = lines_[static_cast<size_t>(l)];
  return "[" + std::to_string(t[0]) + ":" + std::to_string(t[1]) + ":" +
         std::to_string(t[2]) + "]";
}

std::string Plane::flag_str(const Flag& f) const {
  return point_str(f.point) + line_str(f.line);
}

bool opposite(const Plane& pl, const Flag& c1, const Flag& c2) {
  return !pl.incident(c1.point, c2.line) && !pl.incident(c2.point, c1.line);
}

std::vector<Flag> opposition_set(const Plane& pl, const Flag& c) {
  std::vector<Flag> out;
  for (const Flag& f : pl.flags())
    if (opposite(pl, c, f)) out.push_back(f);
  return out;
}

Apartment apartment_from_triangle(const Plane& pl, int p1, int p2, int p3) {
  if (pl.collinear(p1, p2, p3))
    throw degenerate_triangle_error("triangle is degenerate: " +
                                    pl.point_str(p1) + " " + pl.point_str(p2) +
                                    " " + pl.point_str(p3));
  Apartment a;
  a.triangle = {p1, p2, p3};
  std::sort(a.triangle.begin(), a.triangle.end());
  const int t0 = a.triangle[0], t1 = a.triangle[1], t2 = a.triangle[2];
  a.sides = {pl.line_through(t0, t1), pl.line_through(t1, t2),
             pl.line_through(t2, t0)};
  a.chambers = {Flag{t0, a.sides[0]}, Flag{t1, a.sides[0]},
                Flag{t1, a.sides[1]}, Flag{t2, a.sides[1]},
                Flag{t2, a.sides[2]}, Flag{t0, a.sides[2]}};
  return a;
}

namespace {

// Least point on line l avoiding the given point indices.
int least_on_line(const Plane& pl, int l, std::initializer_list<int> avoid) {
  for (int p : pl.points_on(l)) {
    bool bad = false;
    for (int av : avoid) bad = bad || p == av;
    if (!bad) return p;
  }
  throw std::logic_error("line exhausted");
}

// Least point off line l (off l2 as well when l2 >= 0).
int least_off_line(const Plane& pl, int l, int l2 = -1) {
  for (int p = 0; p < pl.size(); ++p)
    if (!pl.incident(p, l) && (l2 < 0 || !pl.incident(p, l2))) return p;
  throw std::logic_error("no point off the line");
}

}  // namespace

Apartment apartment_through(const Plane& pl, const Flag& c1, const Flag& c2) {
  pl.flag_index(c1);
  pl.flag_index(c2);
  int p1 = c1.point, l1 = c1.line, p2 = c2.point, l2 = c2.line;
  Apartment a;
  if (p1 == p2 && l1 == l2) {
    // One flag: second vertex on l1, third off l1.
    int b = least_on_line(pl, l1, {p1});
    int c = least_off_line(pl, l1);
    a = apartment_from_triangle(pl, p1, b, c);
  } else if (p1 == p2) {
    // Shared point, two lines through it: vertices on each line.
    int b = least_on_line(pl, l1, {p1});
    int c = least_on_line(pl, l2, {p1});
    a = apartment_from_triangle(pl, p1, b, c);
  } else if (l1 == l2) {
    // Shared line carrying both points: one vertex off it.
    int c = least_off_line(pl, l1);
    a = apartment_from_triangle(pl, p1, p2, c);
  } else if (pl.incident(p2, l1) && pl.incident(p1, l2)) {
    // Distinct points both on both lines would merge the lines.
    throw std::logic_error("two points on two distinct common lines");
  } else if (pl.incident(p2, l1)) {
    // l1 joins p1 p2; third vertex on l2 away from p2 and from l1.
    int c = least_on_line(pl, l2, {p2, pl.meet(l1, l2)});
    a = apartment_from_triangle(pl, p1, p2, c);
  } else if (pl.incident(p1, l2)) {
    int c = least_on_line(pl, l1, {p1, pl.meet(l1, l2)});
    a = apartment_from_triangle(pl, p1, p2, c);
  } else {
    // Opposite flags: the meet of the two lines completes the triangle.
    a = apartment_from_triangle(pl, p1, p2, pl.meet(l1, l2));
  }
  if (!a.contains(c1) || !a.contains(c2))
    throw std::logic_error("constructed apartment misses an input flag");
  return a;
}

std::vector<Apartment> all_apartments(const Plane& pl) {
  std::vector<Apartment> out;
  const int n = pl.size();
  for (int p1 = 0; p1 < n; ++p1)
    for (int p2 = p1 + 1; p2 < n; ++p2)
      for (int p3 = p2 + 1; p3 < n; ++p3)
        if (!pl.collinear(p1, p2, p3))
          out.push_back(apartment_from_triangle(pl, p1, p2, p3));
  return out;
}

OppositionCoverStats opposition_cover_check(const Plane& pl,
                                            const Apartment& a) {
  OppositionCoverStats stats;
  stats.multiplicity.assign(pl.flags().size(), 0);
  for (size_t i = 0; i < pl.flags().size(); ++i)
    for (const Flag& c : a.chambers)
      if (opposite(pl, pl.flags()[i], c)) ++stats.multiplicity[i];
  stats.covered = true;
  for (int m : stats.multiplicity) {
    stats.covered = stats.covered && m > 0;
    stats.total_incidences += m;
    stats.histogram[m]++;
  }
  return stats;
}

Flag non_opposite_witness(const Plane& pl, const Flag& c1, const Flag& c2) {
  Apartment a = apartment_through(pl, c1, c2);
  for (const Flag& w : a.chambers)
    if (!opposite(pl, w, c1) && !opposite(pl, w, c2)) return w;
  throw std::logic_error("hexagon has at least four non-opposite chambers");
}

Flag non_opposite_witness_triple(const Plane& pl, const Flag& c1,
                                 const Flag& c2, const Flag& c3) {
  int s = c1.line == c2.line ? least_on_line(pl, c1.line, {})
                             : pl.meet(c1.line, c2.line);
  // s lies on l1 and l2, killing opposition to c1 and c2; a line through s
  // and p3 kills c3. When s = p3 every line through s does.
  int l = s == c3.point ? pl.lines_through(s).front()
                        : pl.line_through(s, c3.point);
  Flag w{s, l};
  if (opposite(pl, w, c1) || opposite(pl, w, c2) || opposite(pl, w, c3))
    throw std::logic_error("triple witness construction is always valid");
  return w;
}

std::vector<int> project_to_points(const Plane&,
                                   const std::vector<Flag>& chambers) {
  std::vector<int> out;
  for (const Flag& f : chambers) out.push_back(f.point);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MinCoverResult min_opposition_cover(const Plane& pl) {
  if (pl.q() > 3)
    throw resource_bound_error("exhaustive cover search supports q in {2,3}");
  const int nf = pl.flag_count();
  MinCoverResult res;

  // Lower bound, independent of the subset search: no single chamber covers
  // itself, and every pair leaves a common-apartment chamber uncovered.
  res.lower_bound = 2;
  bool all_pairs_blocked = true;
  for (int i = 0; i < nf && all_pairs_blocked; ++i)
    for (int j = i; j < nf && all_pairs_blocked; ++j) {
      Flag w = non_opposite_witness(pl, pl.flags()[static_cast<size_t>(i)],
                                    pl.flags()[static_cast<size_t>(j)]);
      all_pairs_blocked =
          !opposite(pl, w, pl.flags()[static_cast<size_t>(i)]) &&
          !opposite(pl, w, pl.flags()[static_cast<size_t>(j)]);
    }
  if (all_pairs_blocked) res.lower_bound = 3;

  // Opposition sets as bitmasks (52 flags at q=3 still fit in 64 bits).
  std::vector<std::uint64_t> mask(static_cast<size_t>(nf), 0);
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < nf; ++j)
      if (opposite(pl, pl.flags()[static_cast<size_t>(i)],
                   pl.flags()[static_cast<size_t>(j)]))
        mask[static_cast<size_t>(i)] |= std::uint64_t(1) << j;
  const std::uint64_t full = nf == 64 ? ~std::uint64_t(0)
                                      : (std::uint64_t(1) << nf) - 1;

  std::vector<int> pick;
  long long checked = 0;
  std::vector<int> found;
  auto dfs = [&](auto&& self, int start, std::uint64_t covered,
                 int remaining) -> bool {
    ++checked;
    if (covered == full) {
      found = pick;
      return true;
    }
    if (remaining == 0) return false;
    for (int i = start; i < nf; ++i) {
      if ((mask[static_cast<size_t>(i)] | covered) == covered) continue;
      pick.push_back(i);
      if (self(self, i + 1, covered | mask[static_cast<size_t>(i)],
               remaining - 1))
        return true;
      pick.pop_back();
    }
    return false;
  };
  for (int m = res.lower_bound; m <= 6; ++m) {
    pick.clear();
    if (dfs(dfs, 0, 0, m)) {
      res.m = m;
      for (int i : found) res.chambers.push_back(pl.flags()[static_cast<size_t>(i)]);
      res.subsets_checked = checked;
      return res;
    }
  }
  throw std::logic_error("an apartment's six chambers always cover");
}

Flag parse_flag(const Plane& pl, const std::string& text) {
  auto read_triple = [&](char open, char close, size_t& pos) {
    if (pos >= text.size() || text[pos] != open)
      throw std::invalid_argument("malformed flag: " + text);
    size_t end = text.find(close, pos);
    if (end == std::string::npos)
      throw std::invalid_argument("malformed flag: " + text);
    Triple t{};
    std::string body = text.substr(pos + 1, end - pos - 1);
    size_t a = body.find(':'), b = body.rfind(':');
    if (a == std::string::npos || b == a)
      throw std::invalid_argument("malformed flag: " + text);
    t[0] = std::stoi(body.substr(0, a));
    t[1] = std::stoi(body.substr(a + 1, b - a - 1));
    t[2] = std::stoi(body.substr(b + 1));
    pos = end + 1;
    return t;
  };
  size_t pos = 0;
  Triple p = read_triple('(', ')', pos);
  Triple l = read_triple('[', ']', pos);
  Flag f{pl.point_index(p), pl.line_index(l)};
  pl.flag_index(f);  // validates incidence
  return f;
}

int gallery_distance(const Plane& pl, const Flag& c1, const Flag& c2) {
  const int start = pl.flag_index(c1), goal = pl.flag_index(c2);
  if (start == goal) return 0;
  std::vector<int> dist(pl.flags().size(), -1);
  std::deque<int> queue{start};
  dist[static_cast<size_t>(start)] = 0;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    const Flag& f = pl.flags()[static_cast<size_t>(cur)];
    std::vector<Flag> adj;
    for (int l : pl.lines_through(f.point))
      if (l != f.line) adj.push_back(Flag{f.point, l});
    for (int p : pl.points_on(f.line))
      if (p != f.point) adj.push_back(Flag{p, f.line});
    for (const Flag& g : adj) {
      int gi = pl.flag_index(g);
      if (dist[static_cast<size_t>(gi)] >= 0) continue;
      dist[static_cast<size_t>(gi)] = dist[static_cast<size_t>(cur)] + 1;
      if (gi == goal) return dist[static_cast<size_t>(gi)];
      queue.push_back(gi);
    }
  }
  throw std::logic_error("flag graph is connected");
}

}  // namespace fillinglab
