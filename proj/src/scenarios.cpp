#include "fillinglab/scenarios.hpp"

#include <chrono>

#include "fillinglab/constants_audit.hpp"
#include "fillinglab/parallel.hpp"
#include "fillinglab/projective.hpp"
#include "fillinglab/projective_plane.hpp"
#include "fillinglab/rng.hpp"
#include "fillinglab/tree_boundary.hpp"

namespace fillinglab {

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               start)
      .count();
}

// Obstruction sampling must not share the witness stream; fixed offset keeps
// the whole report a function of (config, seed).
constexpr std::uint64_t kObstructionSeedSalt = 0x6f4a7c159e3779b9ULL;

Json audit_json(const ConstantsAudit& audit) {
  Json out;
  out["type"] = "constants-audit";
  out["n"] = audit.n;
  out["epsilon"] = rational_json(audit.epsilon);
  out["in_range"] = audit.epsilon_in_range;
  out["all_hold"] = audit.all_hold;
  Json checks = Json::array();
  for (const InequalityCheck& c : audit.checks) {
    Json j;
    j["name"] = c.name;
    j["lhs"] = c.lhs;
    j["relation"] = c.relation;
    j["rhs"] = c.rhs;
    j["applicable"] = c.applicable;
    j["holds"] = c.holds;
    checks.push_back(j);
  }
  out["checks"] = checks;
  return out;
}

std::vector<SteerTarget> canonical_targets(int n, const Rational& eps) {
  std::vector<SteerTarget> targets;
  for (int j = 1; j <= n; ++j)
    targets.push_back(RatioRegion{RegionKind::OpenU, j, eps});
  return targets;
}

GroupWord random_word(const ProjectiveSystem& sys, Rng& rng, int max_len) {
  const auto& gens = sys.steering_generators();
  GroupWord w;
  const int len = static_cast<int>(rng.range(1, max_len));
  for (int i = 0; i < len; ++i) {
    const auto& g = gens[static_cast<size_t>(
        rng.range(0, static_cast<long>(gens.size()) - 1))];
    if (!w.factors.empty() && w.factors.back().first == g.base)
      w.factors.back().second += g.power;
    else
      w.factors.emplace_back(g.base, g.power);
  }
  std::erase_if(w.factors, [](const auto& f) { return f.second == 0; });
  return w;
}

// Exact disjointness margin: a hyperplane with normal c misses U_j(eps) when
// |c.u_j| >= eps (|c.v_j| + sum of |c_l| over the off-block coordinates).
Json obstruction_margin(const ProjectiveSystem& sys, int j, const Rational& eps,
                        const std::vector<Rational>& normal, bool& holds) {
  const auto& u = sys.basis_u(j);
  const auto& v = sys.basis_v(j);
  QuadraticNumber cu, cv;
  for (int l = 0; l < sys.n(); ++l) {
    cu += QuadraticNumber(normal[static_cast<size_t>(l)]) * u[static_cast<size_t>(l)];
    cv += QuadraticNumber(normal[static_cast<size_t>(l)]) * v[static_cast<size_t>(l)];
  }
  Rational off_sum(0);
  const int lo = j <= sys.n() - 1 ? j : sys.n() - 1;  // 1-based block rows
  const int hi = lo + 1;
  for (int l = 1; l <= sys.n(); ++l)
    if (l != lo && l != hi) off_sum += abs(normal[static_cast<size_t>(l - 1)]);
  QuadraticNumber lhs = cu.abs();
  QuadraticNumber rhs = (cv.abs() + QuadraticNumber(off_sum)) * QuadraticNumber(eps);
  holds = compare(lhs, rhs) >= 0 && cu.sign() != 0;
  Json out;
  out["index"] = j;
  out["lhs"] = quadratic_json(lhs);
  out["relation"] = ">=";
  out["rhs"] = quadratic_json(rhs);
  out["holds"] = holds;
  return out;
}

Json run_projective(const ScenarioConfig& cfg, Json& report) {
  const auto t0 = Clock::now();
  ProjectiveSystem sys = ProjectiveSystem::build(cfg.n, cfg.k);
  const std::vector<SteerTarget> targets =
      cfg.targets.empty() ? canonical_targets(cfg.n, cfg.epsilon) : cfg.targets;

  ProjectiveWitness wit =
      n_filling_witness(sys, targets, cfg.radius, cfg.samples, cfg.seed);
  Json timings;
  timings["witness"] = ms_since(t0);

  Json witnesses = Json::array();
  Json certificates = Json::array();
  Json obstructions = Json::array();
  std::string level;

  if (!wit.found) {
    level = "FAILED";
    Json w;
    w["kind"] = "n-filling";
    w["found"] = false;
    w["failure"] = wit.failure;
    witnesses.push_back(w);
  } else {
    Json w;
    w["kind"] = "n-filling";
    w["found"] = true;
    w["n"] = cfg.n;
    w["certified"] = wit.certified;
    Json translates = Json::array();
    for (size_t j = 0; j < wit.translates.size(); ++j) {
      Json t;
      t["index"] = static_cast<int>(j + 1);
      t["word"] = wit.translates[j].word.str();
      t["matrix"] = matrix_json(wit.translates[j].matrix);
      t["target"] = target_json(wit.targets[j]);
      translates.push_back(t);
    }
    w["translates"] = translates;
    w["samples_checked"] = wit.samples_checked;
    w["sample_failures"] = wit.sample_failures;
    witnesses.push_back(w);

    for (const AttractionCertificate& ac : wit.attraction) {
      Json c;
      c["type"] = "contraction-inequality";
      c["index"] = ac.index;
      c["epsilon"] = rational_json(ac.epsilon);
      c["exponent"] = ac.m;
      c["word"] = "g" + std::to_string(ac.index) + "^-" + std::to_string(ac.m);
      c["lambda_plus"] = quadratic_json(sys.lambda_plus());
      c["r_constant"] = quadratic_json(sys.R());
      c["lambda_power"] = quadratic_json(ac.lhs);
      c["r_over_epsilon"] = quadratic_json(ac.rhs);
      c["relation"] = ">";
      c["exponent_minimal"] = true;
      c["certified"] = ac.certified;
      c["samples_checked"] = ac.samples_checked;
      c["sample_failures"] = ac.sample_failures;
      certificates.push_back(c);
    }
    if (!wit.certified) {
      Json c;
      c["type"] = "sample-record";
      c["samples"] = wit.samples_checked;
      c["failures"] = wit.sample_failures;
      c["seed"] = cfg.seed;
      certificates.push_back(c);
    }
    level = wit.certified ? "CERTIFIED" : "SAMPLED";
  }

  // Not-(n-1)-filling demonstration against the canonical targets: random
  // translate tuples all miss a point on a fixed rational hyperplane.
  if (wit.found && cfg.targets.empty() && cfg.obstruction_entries > 0) {
    const auto t1 = Clock::now();
    std::vector<Rational> normal;
    for (int l = 0; l < cfg.n; ++l) normal.push_back(Rational(l % 2 ? -1 : 1));
    Json obs;
    obs["type"] = "common-hyperplane";
    obs["normal"] = rational_vector_json(normal);
    bool margins_hold = true;
    Json margins = Json::array();
    for (int j = 1; j <= cfg.n - 1; ++j) {
      bool holds = false;
      margins.push_back(obstruction_margin(sys, j, cfg.epsilon, normal, holds));
      margins_hold = margins_hold && holds;
    }
    obs["margin_checks"] = margins;
    obs["disjoint_from_targets"] = margins_hold;
    if (margins_hold) {
      Rng rng(cfg.seed ^ kObstructionSeedSalt);
      Json entries = Json::array();
      int verified = 0;
      for (int e = 0; e < cfg.obstruction_entries; ++e) {
        std::vector<Translate> ts;
        for (int j = 0; j < cfg.n - 1; ++j) {
          GroupWord word = random_word(sys, rng, cfg.obstruction_max_len);
          ts.push_back(Translate{word, sys.word_matrix(word)});
        }
        HyperplaneObstruction ho = hyperplane_obstruction(ts, Hyperplane{normal});
        bool entry_ok = ho.verified;
        for (int j = 1; j <= cfg.n - 1 && entry_ok; ++j) {
          std::vector<QuadraticNumber> back =
              ts[static_cast<size_t>(j - 1)].matrix.inverse_unimodular().apply(
                  [&] {
                    std::vector<QuadraticNumber> vq;
                    for (const Integer& x : ho.vertex)
                      vq.emplace_back(Rational(x));
                    return vq;
                  }());
          entry_ok = !sys.region_contains(
              RatioRegion{RegionKind::OpenU, j, cfg.epsilon},
              ProjectivePoint(back));
        }
        Json entry;
        Json words = Json::array();
        for (const Translate& t : ts) words.push_back(t.word.str());
        entry["words"] = words;
        entry["vertex"] = integer_vector_json(ho.vertex);
        entry["verified"] = entry_ok;
        if (entry_ok) ++verified;
        entries.push_back(entry);
      }
      obs["entries"] = entries;
      obs["entries_verified"] = verified;
      if (verified != cfg.obstruction_entries) level = "FAILED";
    }
    obstructions.push_back(obs);
    timings["obstruction"] = ms_since(t1);
  }

  report["witnesses"] = witnesses;
  report["certificates"] = certificates;
  report["obstructions"] = obstructions;
  report["level"] = level;
  return timings;
}

Json run_tree(const ScenarioConfig& cfg, Json& report) {
  const auto t0 = Clock::now();
  auto parse_set = [&](const std::vector<std::string>& prefixes) {
    std::vector<ReducedWord> words;
    for (const std::string& p : prefixes)
      words.push_back(ReducedWord::parse(p, cfg.rank));
    return ClopenSet::from_prefixes(words, cfg.rank);
  };
  ClopenSet u = parse_set(cfg.u_prefixes);
  ClopenSet v = parse_set(cfg.v_prefixes);
  TreeWitness wit = two_filling_witness(u, v, cfg.radius);

  Json witnesses = Json::array();
  Json certificates = Json::array();
  Json w;
  w["kind"] = "2-filling";
  w["found"] = wit.found;
  if (!wit.found) {
    w["failure"] = wit.failure;
    report["level"] = "FAILED";
  } else {
    w["certified"] = wit.certified;
    w["translates"] = Json::array({wit.t1.str(), wit.t2.str()});
    w["cover_depth"] = wit.cover_depth;
    Json c;
    c["type"] = "exhaustive-cover";
    c["rank"] = cfg.rank;
    c["depth"] = wit.cover_depth;
    Json sets = Json::array();
    auto set_json = [](const ReducedWord& t, const ClopenSet& s) {
      Json e;
      e["translate"] = t.str();
      Json prefixes = Json::array();
      for (const ReducedWord& p : s.prefixes()) prefixes.push_back(p.str());
      e["prefixes"] = prefixes;
      return e;
    };
    sets.push_back(set_json(wit.t1, u));
    sets.push_back(set_json(wit.t2, v));
    c["sets"] = sets;
    c["covered"] = true;
    certificates.push_back(c);
    report["level"] = wit.certified ? "CERTIFIED" : "SAMPLED";
  }
  witnesses.push_back(w);
  report["witnesses"] = witnesses;
  report["certificates"] = certificates;
  report["obstructions"] = Json::array();
  Json timings;
  timings["witness"] = ms_since(t0);
  return timings;
}

Json run_plane(const ScenarioConfig& cfg, Json& report) {
  const auto t0 = Clock::now();
  Plane plane = Plane::build(cfg.q);
  Json timings;
  Json certificates = Json::array();

  {
    Json c;
    c["type"] = "opposition-count";
    c["q"] = cfg.q;
    bool ok = true;
    for (const Flag& f : plane.flags())
      ok = ok &&
           static_cast<int>(opposition_set(plane, f).size()) ==
               cfg.q * cfg.q * cfg.q;
    c["size"] = cfg.q * cfg.q * cfg.q;
    c["all_match"] = ok;
    certificates.push_back(c);
  }
  {
    const auto t1 = Clock::now();
    std::vector<Apartment> apartments = all_apartments(plane);
    bool all_covered = true;
    for (const Apartment& a : apartments)
      all_covered = all_covered && opposition_cover_check(plane, a).covered;
    Json c;
    c["type"] = "apartment-cover-table";
    c["q"] = cfg.q;
    c["apartments"] = apartments.size();
    c["all_covered"] = all_covered;
    c["incidences_per_apartment"] = 6 * cfg.q * cfg.q * cfg.q;
    certificates.push_back(c);
    timings["apartments"] = ms_since(t1);
  }
  {
    const auto t1 = Clock::now();
    const int nf = plane.flag_count();
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < nf; ++i)
      for (int j = i; j < nf; ++j) pairs.emplace_back(i, j);
    std::vector<char> ok(pairs.size(), 0);
    parallel_for(pairs.size(), [&](size_t p) {
      const Flag a = plane.flags()[static_cast<size_t>(pairs[p].first)];
      const Flag b = plane.flags()[static_cast<size_t>(pairs[p].second)];
      Flag w = non_opposite_witness(plane, a, b);
      ok[p] = !opposite(plane, w, a) && !opposite(plane, w, b);
    });
    bool all_found = true;
    for (char o : ok) all_found = all_found && o;
    Json c;
    c["type"] = "pair-witness";
    c["pairs_checked"] = static_cast<long long>(pairs.size());
    c["all_found"] = all_found;
    certificates.push_back(c);
    timings["pair_witness"] = ms_since(t1);
  }

  Json witnesses = Json::array();
  {
    const auto t1 = Clock::now();
    MinCoverResult mc = min_opposition_cover(plane);
    Json w;
    w["kind"] = "min-opposition-cover";
    w["note"] = "finite combinatorial analogue; no group acts here";
    w["m"] = mc.m;
    w["lower_bound"] = mc.lower_bound;
    Json chambers = Json::array();
    for (const Flag& f : mc.chambers) chambers.push_back(plane.flag_str(f));
    w["chambers"] = chambers;
    w["subsets_checked"] = mc.subsets_checked;
    witnesses.push_back(w);
    Json c;
    c["type"] = "opposition-cover";
    c["chambers"] = chambers;
    c["covered"] = true;
    certificates.push_back(c);
    timings["min_cover"] = ms_since(t1);
  }

  bool all_ok = true;
  for (const Json& c : certificates) {
    if (c.contains("all_match")) all_ok = all_ok && c["all_match"].get<bool>();
    if (c.contains("all_covered")) all_ok = all_ok && c["all_covered"].get<bool>();
    if (c.contains("all_found")) all_ok = all_ok && c["all_found"].get<bool>();
  }
  report["witnesses"] = witnesses;
  report["certificates"] = certificates;
  report["obstructions"] = Json::array();
  report["level"] = all_ok ? "CERTIFIED" : "FAILED";
  timings["total_plane"] = ms_since(t0);
  return timings;
}

Json run_constants(const ScenarioConfig& cfg, Json& report) {
  const auto t0 = Clock::now();
  Json certificates = Json::array();
  bool all = true;
  if (cfg.epsilon_set) {
    ConstantsAudit audit = verify_proof_constants(cfg.n, cfg.epsilon);
    all = audit.all_hold;
    certificates.push_back(audit_json(audit));
  } else {
    // Audit grid: 100 rationals strictly below the range bound.
    for (int j = 1; j <= 100; ++j) {
      ConstantsAudit audit = verify_proof_constants(
          cfg.n, make_rational(j, 1000 * (2 * cfg.n + 1)));
      all = all && audit.all_hold && audit.epsilon_in_range;
      certificates.push_back(audit_json(audit));
    }
  }
  report["witnesses"] = Json::array();
  report["certificates"] = certificates;
  report["obstructions"] = Json::array();
  report["level"] = all ? "CERTIFIED" : "FAILED";
  Json timings;
  timings["audit"] = ms_since(t0);
  return timings;
}

}  // namespace

Json ScenarioConfig::to_json() const {
  Json j;
  j["arena"] = arena;
  j["seed"] = seed;
  if (arena == "projective") {
    j["n"] = n;
    j["k"] = k;
    j["epsilon"] = rational_json(epsilon);
    j["radius"] = radius;
    j["samples"] = samples;
    j["obstruction_entries"] = obstruction_entries;
    j["obstruction_max_len"] = obstruction_max_len;
    if (!targets.empty()) {
      Json t = Json::array();
      for (const SteerTarget& target : targets) t.push_back(target_json(target));
      j["targets"] = t;
    }
  } else if (arena == "tree") {
    j["rank"] = rank;
    j["radius"] = radius;
    j["u"] = u_prefixes;
    j["v"] = v_prefixes;
  } else if (arena == "plane") {
    j["q"] = q;
  } else if (arena == "constants") {
    j["n"] = n;
    if (epsilon_set) j["epsilon"] = rational_json(epsilon);
  }
  return j;
}

ScenarioConfig ScenarioConfig::from_json(const Json& j) {
  ScenarioConfig cfg;
  if (!j.contains("arena") || !j["arena"].is_string())
    throw config_error("config needs an arena");
  cfg.arena = j["arena"].get<std::string>();
  auto get_int = [&](const char* key, auto fallback) {
    using T = decltype(fallback);
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw config_error(std::string(key) + " must be an integer");
    return j[key].get<T>();
  };
  cfg.n = get_int("n", cfg.n);
  cfg.k = get_int("k", cfg.k);
  cfg.rank = get_int("rank", cfg.rank);
  cfg.q = get_int("q", cfg.q);
  cfg.radius = get_int("radius", cfg.radius);
  cfg.samples = get_int("samples", cfg.samples);
  cfg.seed = get_int("seed", cfg.seed);
  cfg.obstruction_entries = get_int("obstruction_entries", cfg.obstruction_entries);
  cfg.obstruction_max_len = get_int("obstruction_max_len", cfg.obstruction_max_len);
  if (j.contains("epsilon")) {
    try {
      cfg.epsilon = rat_from_string(j["epsilon"].get<std::string>());
    } catch (const std::exception& e) {
      throw config_error(std::string("bad epsilon: ") + e.what());
    }
    cfg.epsilon_set = true;
  }
  if (j.contains("u")) cfg.u_prefixes = j["u"].get<std::vector<std::string>>();
  if (j.contains("v")) cfg.v_prefixes = j["v"].get<std::vector<std::string>>();
  if (j.contains("targets"))
    for (const Json& t : j["targets"]) cfg.targets.push_back(target_from_json(t));
  cfg.validate();
  return cfg;
}

void ScenarioConfig::validate() const {
  if (arena != "projective" && arena != "tree" && arena != "plane" &&
      arena != "constants")
    throw config_error("unknown arena: " + arena);
  if (arena == "projective") {
    if (n < 2) throw config_error("n must be at least 2");
    if (k < 4) throw config_error("k must be at least 4");
    if (!(epsilon > 0) || !(epsilon < 1))
      throw config_error("epsilon must lie in (0,1)");
    if (radius < 1) throw config_error("radius must be positive");
  } else if (arena == "tree") {
    if (rank < 2 || rank > 8)
      throw config_error("rank must lie in [2,8]");
    if (radius < 1) throw config_error("radius must be positive");
    if (u_prefixes.empty() || v_prefixes.empty())
      throw config_error("clopen sets need at least one prefix");
  } else if (arena == "plane") {
    if (q < 2) throw config_error("q must be at least 2");
    for (int d = 2; d * d <= q; ++d)
      if (q % d == 0) throw config_error("q must be a prime order");
  } else if (arena == "constants") {
    if (n < 2) throw config_error("n must be at least 2");
  }
}

Json run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  Json report;
  report["schema_version"] = kSchemaVersion;
  report["arena"] = cfg.arena;
  report["inputs"] = cfg.to_json();
  report["seed"] = cfg.seed;
  report["rng"] = Rng::kName;

  Json timings;
  if (cfg.arena == "projective")
    timings = run_projective(cfg, report);
  else if (cfg.arena == "tree")
    timings = run_tree(cfg, report);
  else if (cfg.arena == "plane")
    timings = run_plane(cfg, report);
  else
    timings = run_constants(cfg, report);

  timings["total"] = ms_since(t0);
  report["timings_ms"] = timings;
  return report;
}

int exit_code_for_report(const Json& report) {
  const std::string level = report.value("level", "FAILED");
  if (level == "CERTIFIED") return 0;
  if (level == "SAMPLED") return 1;
  return 2;
}

}  // namespace fillinglab
