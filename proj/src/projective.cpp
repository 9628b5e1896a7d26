#include "fillinglab/projective.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "fillinglab/rng.hpp"

namespace fillinglab {

namespace {

bool all_rational(const std::vector<QuadraticNumber>& c) {
  for (const auto& x : c)
    if (!x.is_rational()) return false;
  return true;
}

std::vector<QuadraticNumber> canonicalize_coords(
    std::vector<QuadraticNumber> c) {
  if (c.empty()) throw std::invalid_argument("projective point needs coords");
  int first = -1;
  for (size_t i = 0; i < c.size(); ++i)
    if (c[i].sign() != 0) {
      first = static_cast<int>(i);
      break;
    }
  if (first < 0)
    throw std::invalid_argument("zero vector is not a projective point");
  if (all_rational(c)) {
    std::vector<Rational> r(c.size());
    for (size_t i = 0; i < c.size(); ++i) r[i] = c[i].rational_part();
    std::vector<Integer> z = primitive_integer_vector(r);
    for (size_t i = 0; i < c.size(); ++i)
      c[i] = QuadraticNumber(Rational(z[i]));
    return c;
  }
  QuadraticNumber scale = c[first].inverse();
  for (auto& x : c) x *= scale;
  return c;
}

}  // namespace

ProjectivePoint::ProjectivePoint(std::vector<QuadraticNumber> coords)
    : coords_(canonicalize_coords(std::move(coords))) {}

ProjectivePoint ProjectivePoint::from_integers(const std::vector<long>& c) {
  std::vector<QuadraticNumber> q;
  q.reserve(c.size());
  for (long v : c) q.emplace_back(Rational(v));
  return ProjectivePoint(std::move(q));
}

ProjectivePoint ProjectivePoint::from_rationals(const std::vector<Rational>& c) {
  std::vector<QuadraticNumber> q;
  q.reserve(c.size());
  for (const Rational& v : c) q.emplace_back(v);
  return ProjectivePoint(std::move(q));
}

std::string ProjectivePoint::str() const {
  std::string out = "[";
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ":";
    out += coords_[i].str();
  }
  return out + "]";
}

std::string GroupWord::str() const {
  if (factors.empty()) return "e";
  std::ostringstream os;
  for (size_t i = 0; i < factors.size(); ++i) {
    if (i) os << " ";
    os << factors[i].first << "^" << factors[i].second;
  }
  return os.str();
}

GroupWord GroupWord::parse(const std::string& text) {
  GroupWord w;
  if (text == "e" || text.empty()) return w;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    auto caret = tok.find('^');
    if (caret == std::string::npos || caret == 0 || caret + 1 == tok.size())
      throw std::invalid_argument("malformed word token: " + tok);
    w.factors.emplace_back(tok.substr(0, caret),
                           std::stol(tok.substr(caret + 1)));
  }
  return w;
}

std::pair<int, int> ProjectiveSystem::block(int j) const {
  if (j < 1 || j > n_) throw std::out_of_range("generator index out of range");
  if (j <= n_ - 1) return {j - 1, j};
  return {n_ - 2, n_ - 1};
}

ProjectiveSystem ProjectiveSystem::build(int n, long k) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  if (n > 9) throw std::invalid_argument("n above supported bound 9");
  if (k < 4) throw std::invalid_argument("need k >= 4");
  ProjectiveSystem s;
  s.n_ = n;
  s.k_ = k;
  s.d_ = Integer(k) * k + 4 * k;

  const Integer d = s.d_;
  // a = (sqrt(d) - k) / (2k), b = (sqrt(d) - k) / 2,
  // lambda_+- = (k+2)/2 +- sqrt(d)/2.
  s.a_ = QuadraticNumber(Rational(-1, 2), Rational(Integer(1), Integer(2 * k)), d);
  s.b_ = QuadraticNumber(Rational(-k, 2), Rational(1, 2), d);
  s.lambda_plus_ = QuadraticNumber(Rational(k + 2, 2), Rational(1, 2), d);
  s.lambda_minus_ = QuadraticNumber(Rational(k + 2, 2), Rational(-1, 2), d);

  const QuadraticNumber one(Rational(1));
  s.R_ = (one + s.a_) / (one - s.b_);

  // Exact consistency checks; these hold for every k >= 4.
  auto demand = [](bool ok, const char* what) {
    if (!ok) throw std::logic_error(std::string("system invariant failed: ") + what);
  };
  demand(s.a_.sign() > 0, "a > 0");
  demand(s.b_.sign() > 0, "b > 0");
  demand(compare(s.b_, one) < 0, "b < 1");
  demand(s.lambda_minus_ == one - s.b_, "lambda_- = 1 - b");
  demand(s.lambda_plus_ == one + s.a_.inverse(), "lambda_+ = 1 + 1/a");
  demand(s.lambda_plus_ * s.lambda_minus_ == one, "lambda_+ lambda_- = 1");
  demand(s.lambda_plus_ + s.lambda_minus_ == QuadraticNumber(Rational(k + 2)),
         "trace identity");
  demand(compare((one + s.a_ * s.b_) / (one - s.b_), s.R_) <= 0,
         "R attains the max of the two ratio bounds");

  // Generator j < n embeds [[k+1,k],[1,1]] at rows (j, j+1); generator n
  // embeds [[1,1],[k,k+1]] at rows (n-1, n).
  for (int j = 1; j <= n; ++j) {
    IntMatrix g = IntMatrix::identity(n);
    auto [r0, r1] = s.block(j);
    if (j <= n - 1) {
      g.at(r0, r0) = k + 1;
      g.at(r0, r1) = k;
      g.at(r1, r0) = 1;
      g.at(r1, r1) = 1;
    } else {
      g.at(r0, r0) = 1;
      g.at(r0, r1) = 1;
      g.at(r1, r0) = k;
      g.at(r1, r1) = k + 1;
    }
    demand(g.det() == 1, "det g_j = 1");
    s.gens_.push_back(std::move(g));
  }

  // Eigendirections: block (u, v) = ((1, a), (-b, 1)) for the first matrix
  // and ((a, 1), (1, -b)) for the second.
  for (int j = 1; j <= n; ++j) {
    std::vector<QuadraticNumber> u(n), v(n);
    auto [r0, r1] = s.block(j);
    if (j <= n - 1) {
      u[r0] = one;
      u[r1] = s.a_;
      v[r0] = -s.b_;
      v[r1] = one;
    } else {
      u[r0] = s.a_;
      u[r1] = one;
      v[r0] = one;
      v[r1] = -s.b_;
    }
    std::vector<QuadraticNumber> gu = s.gens_[j - 1].apply(u);
    std::vector<QuadraticNumber> gv = s.gens_[j - 1].apply(v);
    for (int i = 0; i < n; ++i) {
      demand(gu[i] == s.lambda_plus_ * u[i], "g_j u_j = lambda_+ u_j");
      demand(gv[i] == s.lambda_minus_ * v[i], "g_j v_j = lambda_- v_j");
    }
    s.u_.push_back(std::move(u));
    s.v_.push_back(std::move(v));
  }

  for (int j = 1; j <= n; ++j) {
    std::string base = "g" + std::to_string(j);
    s.steer_gens_.push_back({base, 1, s.gens_[j - 1]});
    s.steer_gens_.push_back({base, -1, s.gens_[j - 1].inverse_unimodular()});
  }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      std::string base = "E" + std::to_string(i) + std::to_string(j);
      s.steer_gens_.push_back({base, 1, IntMatrix::elementary(n, i, j, 1)});
      s.steer_gens_.push_back(
          {base, -1, IntMatrix::elementary(n, i, j, -1)});
    }
  return s;
}

ProjectivePoint ProjectiveSystem::expanding_direction(int j) const {
  return ProjectivePoint(u_.at(j - 1));
}

ProjectivePoint ProjectiveSystem::contracting_direction(int j) const {
  return ProjectivePoint(v_.at(j - 1));
}

IntMatrix ProjectiveSystem::word_matrix(const GroupWord& w) const {
  IntMatrix acc = IntMatrix::identity(n_);
  for (const auto& [base, power] : w.factors) {
    const IntMatrix* found = nullptr;
    for (const auto& g : steer_gens_)
      if (g.base == base && g.power == 1) {
        found = &g.mat;
        break;
      }
    if (!found) throw std::invalid_argument("unknown generator: " + base);
    acc = acc * found->pow(power);
  }
  return acc;
}

LocalCoords ProjectiveSystem::to_local_coords(const ProjectivePoint& x,
                                              int j) const {
  if (x.dim() != n_) throw std::invalid_argument("point dimension mismatch");
  auto [p0, p1] = block(j);
  const QuadraticNumber one(Rational(1));
  const QuadraticNumber denom = one + a_ * b_;
  LocalCoords lc;
  const QuadraticNumber& x0 = x[p0];
  const QuadraticNumber& x1 = x[p1];
  if (j <= n_ - 1) {
    // x = xi (1, a) + eta (-b, 1) on the block.
    lc.xi = (x0 + b_ * x1) / denom;
    lc.eta = (x1 - a_ * x0) / denom;
  } else {
    // x = xi (a, 1) + eta (1, -b) on the block.
    lc.xi = (x1 + b_ * x0) / denom;
    lc.eta = (x0 - a_ * x1) / denom;
  }
  for (int l = 0; l < n_; ++l) {
    if (l == p0 || l == p1) continue;
    lc.rest.emplace_back(l + 1, x[l]);
  }
  return lc;
}

bool ProjectiveSystem::region_contains(const RatioRegion& region,
                                       const ProjectivePoint& x) const {
  LocalCoords lc = to_local_coords(x, region.index);
  if (lc.xi.sign() == 0) return false;
  QuadraticNumber scale = lc.xi.abs();
  const bool strict = region.kind == RegionKind::OpenU;
  QuadraticNumber bound = strict
                              ? QuadraticNumber(region.epsilon) * scale
                              : R_ * scale;
  auto ok = [&](const QuadraticNumber& value) {
    int c = compare(value.abs(), bound);
    return strict ? c < 0 : c <= 0;
  };
  if (!ok(lc.eta)) return false;
  for (const auto& [l, value] : lc.rest)
    if (!ok(value)) return false;
  return true;
}

bool ProjectiveSystem::box_contains(const ChartBox& box,
                                    const ProjectivePoint& x) const {
  if (static_cast<int>(box.bounds.size()) != n_)
    throw std::invalid_argument("chart box dimension mismatch");
  const QuadraticNumber& xc = x[box.chart - 1];
  if (xc.sign() == 0) return false;
  for (int l = 0; l < n_; ++l) {
    if (l == box.chart - 1) continue;
    QuadraticNumber ratio = x[l] / xc;
    if (compare(ratio, QuadraticNumber(box.bounds[l].first)) < 0) return false;
    if (compare(ratio, QuadraticNumber(box.bounds[l].second)) > 0) return false;
  }
  return true;
}

bool ProjectiveSystem::target_contains(const SteerTarget& target,
                                       const ProjectivePoint& x) const {
  if (std::holds_alternative<RatioRegion>(target))
    return region_contains(std::get<RatioRegion>(target), x);
  return box_contains(std::get<ChartBox>(target), x);
}

int ProjectiveSystem::assign_region(const ProjectivePoint& x) const {
  if (x.dim() != n_) throw std::invalid_argument("point dimension mismatch");
  int best = 0;
  for (int i = 1; i < n_; ++i)
    if (compare(x[i].abs(), x[best].abs()) > 0) best = i;
  return best + 1;
}

ProjectivePoint apply_power(const IntMatrix& g, long m,
                            const ProjectivePoint& x) {
  return ProjectivePoint(g.pow(m).apply(x.coords()));
}

unsigned long contraction_exponent(const ProjectiveSystem& sys,
                                   const Rational& eps) {
  if (sgn(eps) <= 0) throw std::domain_error("epsilon must be positive");
  QuadraticNumber bound = sys.R() / QuadraticNumber(eps);
  return min_power_exceeding(sys.lambda_plus(), bound);
}

AttractionCertificate certify_attraction(const ProjectiveSystem& sys, int j,
                                         const Rational& eps, unsigned long m,
                                         unsigned long samples,
                                         std::uint64_t seed) {
  AttractionCertificate cert;
  cert.index = j;
  cert.epsilon = eps;
  cert.m = m;
  if (sgn(eps) <= 0) throw std::domain_error("epsilon must be positive");
  cert.lhs = sys.lambda_plus().pow(m);
  cert.rhs = sys.R() / QuadraticNumber(eps);
  if (compare(cert.lhs, cert.rhs) <= 0) {
    cert.certified = false;
    cert.reason = "contraction inequality fails: lambda_+^m <= R/eps at m = " +
                  std::to_string(m);
    return cert;
  }
  cert.certified = true;

  // Spot checks on K_j: local coordinates xi = 1, |eta| <= 7 < R, and
  // independent coefficients |c_l| <= 7 outside the block. R >= (7+5sqrt2)/2
  // for every k >= 4, so such points always lie in K_j.
  Rng rng(seed);
  const IntMatrix power = sys.gen(j).pow(static_cast<long>(m));
  const RatioRegion kj{RegionKind::ClosedK, j, Rational(0)};
  const RatioRegion uj{RegionKind::OpenU, j, eps};
  const std::vector<QuadraticNumber>& u = sys.basis_u(j);
  const std::vector<QuadraticNumber>& v = sys.basis_v(j);
  for (unsigned long s = 0; s < samples; ++s) {
    QuadraticNumber eta(rng.rational(7, 7));
    std::vector<QuadraticNumber> c(u.size());
    for (size_t i = 0; i < c.size(); ++i) {
      if (u[i].sign() == 0 && v[i].sign() == 0)
        c[i] = QuadraticNumber(rng.rational(7, 7));
      else
        c[i] = u[i] + eta * v[i];
    }
    ProjectivePoint x(std::move(c));
    ProjectivePoint image(power.apply(x.coords()));
    ++cert.samples_checked;
    if (!sys.region_contains(kj, x) || !sys.region_contains(uj, image))
      ++cert.sample_failures;
  }
  if (cert.sample_failures > 0) {
    cert.certified = false;
    cert.reason = "sample check contradicted the certified inclusion";
  }
  return cert;
}

namespace {

std::string point_key(const ProjectivePoint& p) {
  std::string key;
  for (const auto& c : p.coords()) {
    key += c.str();
    key += "|";
  }
  return key;
}

GroupWord word_from_path(const std::vector<int>& letters,
                         const std::vector<SteerGenerator>& gens) {
  // letters[0] was applied first; product order lists the last letter first.
  GroupWord w;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    const SteerGenerator& g = gens[*it];
    if (!w.factors.empty() && w.factors.back().first == g.base &&
        ((w.factors.back().second > 0) == (g.power > 0)))
      w.factors.back().second += g.power;
    else
      w.factors.emplace_back(g.base, g.power);
  }
  return w;
}

}  // namespace

SteerResult orbit_steer(const ProjectiveSystem& sys, const ProjectivePoint& p,
                        const SteerTarget& target, int max_len,
                        std::size_t node_budget) {
  SteerResult res;
  struct Node {
    ProjectivePoint point;
    int parent;
    int letter;
    int depth;
  };
  const auto& gens = sys.steering_generators();
  std::vector<Node> nodes;
  std::unordered_set<std::string> seen;
  nodes.push_back({p, -1, -1, 0});
  seen.insert(point_key(p));
  std::deque<int> queue{0};
  auto finish = [&](int idx) {
    std::vector<int> letters;
    for (int cur = idx; nodes[cur].parent >= 0; cur = nodes[cur].parent)
      letters.push_back(nodes[cur].letter);
    std::reverse(letters.begin(), letters.end());
    res.found = true;
    res.word = word_from_path(letters, gens);
    IntMatrix m = IntMatrix::identity(sys.n());
    for (int l : letters) m = gens[l].mat * m;
    res.element = m;
    res.explored = nodes.size();
    return res;
  };
  if (sys.target_contains(target, p)) {
    res.found = true;
    res.element = IntMatrix::identity(sys.n());
    res.explored = 1;
    return res;
  }
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    if (nodes[cur].depth >= max_len) continue;
    for (size_t gi = 0; gi < gens.size(); ++gi) {
      ProjectivePoint next(gens[gi].mat.apply(nodes[cur].point.coords()));
      if (!seen.insert(point_key(next)).second) continue;
      nodes.push_back({next, cur, static_cast<int>(gi), nodes[cur].depth + 1});
      if (sys.target_contains(target, next))
        return finish(static_cast<int>(nodes.size() - 1));
      if (nodes.size() >= node_budget) {
        res.explored = nodes.size();
        return res;
      }
      queue.push_back(static_cast<int>(nodes.size() - 1));
    }
  }
  res.explored = nodes.size();
  return res;
}

namespace {

ProjectivePoint random_rational_point(Rng& rng, int n) {
  for (;;) {
    std::vector<Rational> c(n);
    bool nonzero = false;
    for (int i = 0; i < n; ++i) {
      c[i] = rng.rational(1000, 50);
      if (c[i] != 0) nonzero = true;
    }
    if (nonzero) return ProjectivePoint::from_rationals(c);
  }
}

}  // namespace

ProjectiveWitness n_filling_witness(const ProjectiveSystem& sys,
                                    const std::vector<SteerTarget>& targets,
                                    int radius, unsigned long samples,
                                    std::uint64_t seed) {
  const int n = sys.n();
  if (static_cast<int>(targets.size()) != n)
    throw std::invalid_argument("need exactly n targets, got " +
                                std::to_string(targets.size()));
  ProjectiveWitness w;
  w.targets = targets;

  bool canonical = true;
  for (int j = 1; j <= n; ++j) {
    const auto* rr = std::get_if<RatioRegion>(&targets[j - 1]);
    if (!rr || rr->kind != RegionKind::OpenU || rr->index != j) {
      canonical = false;
      break;
    }
  }

  Rng rng(seed);
  if (canonical) {
    for (int j = 1; j <= n; ++j) {
      const auto& rr = std::get<RatioRegion>(targets[j - 1]);
      unsigned long nj = contraction_exponent(sys, rr.epsilon);
      AttractionCertificate cert = certify_attraction(
          sys, j, rr.epsilon, nj, samples ? std::max<unsigned long>(8, samples / 10) : 0,
          rng.next());
      if (!cert.certified) {
        w.failure = "certification failed at target index " + std::to_string(j);
        return w;
      }
      Translate t;
      t.word.factors.emplace_back("g" + std::to_string(j),
                                  -static_cast<long>(nj));
      t.matrix = sys.gen(j).pow(-static_cast<long>(nj));
      w.translates.push_back(std::move(t));
      w.attraction.push_back(std::move(cert));
    }
    // Exactness of the covering: every point lies in K_j for j = assign(x),
    // and K_j subset t_j U_j by the certificate. Spot-check anyway.
    std::vector<IntMatrix> inv;
    for (const Translate& t : w.translates)
      inv.push_back(t.matrix.inverse_unimodular());
    for (unsigned long s = 0; s < samples; ++s) {
      ProjectivePoint x = random_rational_point(rng, n);
      int j = sys.assign_region(x);
      const auto& rr = std::get<RatioRegion>(targets[j - 1]);
      ProjectivePoint back(inv[j - 1].apply(x.coords()));
      ++w.samples_checked;
      if (!sys.region_contains(rr, back)) ++w.sample_failures;
    }
    w.found = true;
    w.certified = w.sample_failures == 0;
    if (!w.certified) w.failure = "covering spot-check failed";
    return w;
  }

  // General targets: steer [u_j] into target_j, then pull back by g_j^N.
  const Rational shrink_schedule[] = {Rational(1, 10), Rational(1, 100),
                                      Rational(1, 1000), Rational(1, 100000)};
  for (int j = 1; j <= n; ++j) {
    SteerResult steer =
        orbit_steer(sys, sys.expanding_direction(j), targets[j - 1], radius);
    if (!steer.found) {
      w.failure = "no steering word found for target index " + std::to_string(j);
      return w;
    }
    bool accepted = false;
    for (const Rational& eps : shrink_schedule) {
      unsigned long nj = contraction_exponent(sys, eps);
      IntMatrix tj_inv =
          steer.element * sys.gen(j).pow(static_cast<long>(nj));
      // Accept when sampled points of K_j land inside the steered target.
      Rng probe(seed ^ (0x9e3779b97f4a7c15ULL * j));
      unsigned long local_failures = 0;
      const unsigned long local_samples = std::max<unsigned long>(64, samples / 50);
      for (unsigned long s = 0; s < local_samples; ++s) {
        ProjectivePoint x = random_rational_point(probe, n);
        if (sys.assign_region(x) != j) continue;
        ProjectivePoint image(tj_inv.apply(x.coords()));
        if (!sys.target_contains(targets[j - 1], image)) ++local_failures;
      }
      if (local_failures == 0) {
        Translate t;
        GroupWord inv_word;
        inv_word.factors.emplace_back("g" + std::to_string(j),
                                      -static_cast<long>(nj));
        for (auto it = steer.word.factors.rbegin();
             it != steer.word.factors.rend(); ++it)
          inv_word.factors.emplace_back(it->first, -it->second);
        t.word = std::move(inv_word);
        t.matrix = tj_inv.inverse_unimodular();
        w.translates.push_back(std::move(t));
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      w.failure = "sampled verification failed for target index " +
                  std::to_string(j);
      return w;
    }
  }
  std::vector<IntMatrix> inv;
  for (const Translate& t : w.translates)
    inv.push_back(t.matrix.inverse_unimodular());
  for (unsigned long s = 0; s < samples; ++s) {
    ProjectivePoint x = random_rational_point(rng, n);
    bool covered = false;
    for (int j = 1; j <= n && !covered; ++j) {
      ProjectivePoint back(inv[j - 1].apply(x.coords()));
      covered = sys.target_contains(targets[j - 1], back);
    }
    ++w.samples_checked;
    if (!covered) ++w.sample_failures;
  }
  w.found = w.sample_failures == 0;
  w.certified = false;  // Sampled evidence only.
  if (!w.found) w.failure = "sampled covering check failed";
  return w;
}

HyperplaneObstruction hyperplane_obstruction(
    const std::vector<Translate>& translates, const Hyperplane& E) {
  if (translates.empty())
    throw std::invalid_argument("need at least one translate");
  const int n = translates.front().matrix.dim();
  if (static_cast<int>(E.normal.size()) != n)
    throw std::invalid_argument("hyperplane dimension mismatch");
  bool nz = false;
  for (const Rational& x : E.normal) nz = nz || x != 0;
  if (!nz) throw std::invalid_argument("hyperplane normal must be nonzero");
  if (static_cast<int>(translates.size()) != n - 1)
    throw std::invalid_argument("need exactly n-1 translates, got " +
                                std::to_string(translates.size()));

  HyperplaneObstruction ob;
  ob.translates = translates;
  ob.hyperplane = E;
  // t E has normal t^{-T} normal; v must be orthogonal to all of them.
  std::vector<std::vector<Rational>> rows;
  for (const Translate& t : translates) {
    IntMatrix m = t.matrix.inverse_unimodular().transpose();
    rows.push_back(m.apply(E.normal));
  }
  auto basis = rational_kernel(rows, n);
  if (basis.empty()) throw std::logic_error("kernel of n-1 rows cannot be empty");
  ob.vertex = primitive_integer_vector(basis.front());

  ob.verified = true;
  for (const Translate& t : translates) {
    std::vector<Rational> vr(ob.vertex.size());
    for (size_t i = 0; i < vr.size(); ++i) vr[i] = Rational(ob.vertex[i]);
    std::vector<Rational> pre = t.matrix.inverse_unimodular().apply(vr);
    Rational dot(0);
    for (int i = 0; i < n; ++i) dot += E.normal[i] * pre[i];
    // dot == 0 puts t^{-1} v inside E, i.e. [v] outside t U.
    if (dot != 0) ob.verified = false;
  }
  return ob;
}

}  // namespace fillinglab
