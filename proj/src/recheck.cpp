#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fillinglab/constants_audit.hpp"
#include "fillinglab/projective.hpp"
#include "fillinglab/projective_plane.hpp"
#include "fillinglab/rng.hpp"
#include "fillinglab/scenarios.hpp"
#include "fillinglab/tree_boundary.hpp"

namespace fillinglab {

namespace {

// Fresh-sample stream for rechecking SAMPLED claims; distinct from both the
// witness stream and the obstruction stream.
constexpr std::uint64_t kRecheckSeedSalt = 0x517cc1b727220a95ULL;
constexpr unsigned long kFreshSampleCap = 128;

struct Checker {
  std::vector<std::string> failures;

  void fail(std::string msg) { failures.push_back(std::move(msg)); }

  bool check(bool cond, const std::string& msg) {
    if (!cond) fail(msg);
    return cond;
  }
};

// Typed field access; any shape violation makes the report unparseable.
const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw report_parse_error(std::string("missing field: ") + key);
  return j.at(key);
}

std::string str_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string())
    throw report_parse_error(std::string(key) + " must be a string");
  return v.get<std::string>();
}

long long int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer())
    throw report_parse_error(std::string(key) + " must be an integer");
  return v.get<long long>();
}

std::uint64_t u64_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer())
    throw report_parse_error(std::string(key) + " must be an integer");
  return v.get<std::uint64_t>();
}

bool bool_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_boolean())
    throw report_parse_error(std::string(key) + " must be a boolean");
  return v.get<bool>();
}

const Json& array_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_array())
    throw report_parse_error(std::string(key) + " must be an array");
  return v;
}

template <typename F>
auto parse_as(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw report_parse_error(std::string(what) + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// projective arena

// Recomputes the exact disjointness margin |c.u_j| >= eps (|c.v_j| + off-block
// mass) from scratch; the generator's value must agree string for string.
bool margin_holds(const ProjectiveSystem& sys, int j, const Rational& eps,
                  const std::vector<Rational>& normal, QuadraticNumber& lhs,
                  QuadraticNumber& rhs) {
  const auto& u = sys.basis_u(j);
  const auto& v = sys.basis_v(j);
  QuadraticNumber cu, cv;
  for (int l = 0; l < sys.n(); ++l) {
    cu += QuadraticNumber(normal[static_cast<size_t>(l)]) * u[static_cast<size_t>(l)];
    cv += QuadraticNumber(normal[static_cast<size_t>(l)]) * v[static_cast<size_t>(l)];
  }
  Rational off(0);
  const int lo = j <= sys.n() - 1 ? j : sys.n() - 1;
  for (int l = 1; l <= sys.n(); ++l)
    if (l != lo && l != lo + 1) off += abs(normal[static_cast<size_t>(l - 1)]);
  lhs = cu.abs();
  rhs = (cv.abs() + QuadraticNumber(off)) * QuadraticNumber(eps);
  return compare(lhs, rhs) >= 0 && cu.sign() != 0;
}

std::vector<QuadraticNumber> lift(const std::vector<Integer>& v) {
  std::vector<QuadraticNumber> out;
  out.reserve(v.size());
  for (const Integer& x : v) out.emplace_back(Rational(x));
  return out;
}

void recheck_projective(const ScenarioConfig& cfg, const Json& report,
                        Checker& chk) {
  ProjectiveSystem sys = ProjectiveSystem::build(cfg.n, cfg.k);

  std::vector<SteerTarget> targets = cfg.targets;
  if (targets.empty())
    for (int j = 1; j <= cfg.n; ++j)
      targets.push_back(RatioRegion{RegionKind::OpenU, j, cfg.epsilon});

  const Json& witnesses = array_field(report, "witnesses");
  if (witnesses.size() != 1)
    throw report_parse_error("projective report needs exactly one witness");
  const Json& w = witnesses.at(0);
  if (str_field(w, "kind") != "n-filling")
    throw report_parse_error("unexpected witness kind: " + str_field(w, "kind"));
  if (!bool_field(w, "found")) {
    chk.fail("witness records no filling tuple; nothing to certify");
    return;
  }
  chk.check(int_field(w, "n") == cfg.n, "witness n differs from inputs");
  const bool stored_certified = bool_field(w, "certified");
  const long long stored_failures = int_field(w, "sample_failures");

  // Translates: stated matrix must be the product the stated word spells, and
  // the stated target must be the input target at that slot.
  const Json& translates = array_field(w, "translates");
  chk.check(static_cast<int>(translates.size()) == cfg.n,
            "translate count differs from n");
  std::vector<Translate> ts;
  std::vector<std::string> translate_words(translates.size());
  for (size_t i = 0; i < translates.size(); ++i) {
    const Json& t = translates.at(i);
    chk.check(int_field(t, "index") == static_cast<long long>(i) + 1,
              "translate indices out of order");
    const std::string word_text = str_field(t, "word");
    translate_words[i] = word_text;
    GroupWord word =
        parse_as("bad translate word", [&] { return GroupWord::parse(word_text); });
    IntMatrix stored = matrix_from_json(field(t, "matrix"));
    if (stored.dim() != cfg.n) {
      chk.fail("translate matrix dimension differs from n");
      continue;
    }
    try {
      chk.check(stored == sys.word_matrix(word),
                "translate matrix is not the product its word spells");
    } catch (const std::invalid_argument& e) {
      chk.fail(std::string("translate word does not evaluate: ") + e.what());
    }
    if (i < targets.size()) {
      SteerTarget claimed = target_from_json(field(t, "target"));
      chk.check(target_json(claimed) == target_json(targets[i]),
                "translate target differs from the requested one");
    }
    ts.push_back(Translate{std::move(word), std::move(stored)});
  }

  // Certificates.
  int contraction_count = 0;
  bool contraction_all_certified = true;
  bool sample_record_seen = false;
  for (const Json& c : array_field(report, "certificates")) {
    const std::string type = str_field(c, "type");
    if (type == "contraction-inequality") {
      ++contraction_count;
      const long long j = int_field(c, "index");
      if (!chk.check(j >= 1 && j <= cfg.n, "certificate index out of range"))
        continue;
      const Rational eps = rational_from_json(field(c, "epsilon"));
      const auto* rr = std::get_if<RatioRegion>(&targets[static_cast<size_t>(j - 1)]);
      chk.check(rr != nullptr && rr->kind == RegionKind::OpenU &&
                    cmp(rr->epsilon, eps) == 0,
                "certificate epsilon differs from the target");
      const long long m = int_field(c, "exponent");
      if (!chk.check(m >= 1, "contraction exponent must be positive")) continue;
      const QuadraticNumber lam = sys.lambda_plus();
      const QuadraticNumber lhs = lam.pow(static_cast<unsigned long>(m));
      const QuadraticNumber rhs = sys.R() / QuadraticNumber(eps);
      chk.check(str_field(c, "lambda_plus") == lam.str(),
                "stored lambda_+ differs from the rebuilt system");
      chk.check(str_field(c, "r_constant") == sys.R().str(),
                "stored R differs from the rebuilt system");
      chk.check(str_field(c, "lambda_power") == lhs.str(),
                "stored lambda_+^m differs from the recomputed power");
      chk.check(str_field(c, "r_over_epsilon") == rhs.str(),
                "stored R/eps differs from the recomputed value");
      chk.check(str_field(c, "relation") == ">", "contraction relation must be >");
      const bool holds = compare(lhs, rhs) > 0;
      chk.check(holds, "contraction inequality fails on recheck");
      if (bool_field(c, "exponent_minimal"))
        chk.check(compare(lam.pow(static_cast<unsigned long>(m - 1)), rhs) <= 0,
                  "contraction exponent is not minimal");
      chk.check(str_field(c, "word") ==
                    "g" + std::to_string(j) + "^-" + std::to_string(m),
                "certificate word does not name g_j^-m");
      if (static_cast<size_t>(j - 1) < translate_words.size())
        chk.check(translate_words[static_cast<size_t>(j - 1)] ==
                      str_field(c, "word"),
                  "certificate word differs from the witness translate");
      const bool cert_flag = bool_field(c, "certified");
      chk.check(cert_flag == (holds && int_field(c, "sample_failures") == 0),
                "certified flag inconsistent with the certificate body");
      contraction_all_certified = contraction_all_certified && cert_flag;
    } else if (type == "sample-record") {
      sample_record_seen = true;
      chk.check(u64_field(c, "seed") == cfg.seed,
                "sample record seed differs from inputs");
      chk.check(int_field(c, "failures") == stored_failures,
                "sample record failures differ from the witness");
    } else {
      throw report_parse_error("unknown certificate type: " + type);
    }
  }
  if (contraction_count > 0)
    chk.check(contraction_count == cfg.n,
              "certified run must carry one contraction certificate per index");

  const bool derived_certified = contraction_count == cfg.n &&
                                 contraction_all_certified &&
                                 stored_failures == 0;
  chk.check(stored_certified == derived_certified,
            "witness certified flag inconsistent with certificates");

  // SAMPLED claims get a bounded fresh spot check: random rational points
  // must land in some t_j target after pulling back.
  if (!derived_certified && static_cast<int>(ts.size()) == cfg.n) {
    chk.check(sample_record_seen, "sampled witness lacks a sample record");
    std::vector<IntMatrix> inv;
    inv.reserve(ts.size());
    for (const Translate& t : ts) inv.push_back(t.matrix.inverse_unimodular());
    Rng rng(cfg.seed ^ kRecheckSeedSalt);
    const unsigned long fresh = std::min(cfg.samples, kFreshSampleCap);
    unsigned long misses = 0;
    for (unsigned long s = 0; s < fresh; ++s) {
      std::vector<Rational> c(static_cast<size_t>(cfg.n));
      bool nonzero = false;
      for (auto& x : c) {
        x = rng.rational(1000, 50);
        nonzero = nonzero || sgn(x) != 0;
      }
      if (!nonzero) c[0] = 1;
      ProjectivePoint x = ProjectivePoint::from_rationals(c);
      bool covered = false;
      for (int j = 0; j < cfg.n && !covered; ++j)
        covered = sys.target_contains(
            targets[static_cast<size_t>(j)],
            ProjectivePoint(inv[static_cast<size_t>(j)].apply(x.coords())));
      if (!covered) ++misses;
    }
    chk.check(misses == 0, "fresh covering spot check found uncovered points");
  }

  // Obstruction block: margins recomputed exactly, then every stored vertex
  // is checked to lie on all pulled-back hyperplanes and outside every U_j.
  bool obstruction_ok = true;
  for (const Json& obs : array_field(report, "obstructions")) {
    if (str_field(obs, "type") != "common-hyperplane")
      throw report_parse_error("unknown obstruction type: " +
                               str_field(obs, "type"));
    std::vector<Rational> normal =
        rational_vector_from_json(field(obs, "normal"));
    if (static_cast<int>(normal.size()) != cfg.n) {
      chk.fail("obstruction normal dimension differs from n");
      obstruction_ok = false;
      continue;
    }
    const Json& margins = array_field(obs, "margin_checks");
    chk.check(static_cast<int>(margins.size()) == cfg.n - 1,
              "obstruction needs one margin check per translate index");
    bool margins_hold = !margins.empty();
    for (const Json& mc : margins) {
      const long long j = int_field(mc, "index");
      if (!chk.check(j >= 1 && j < cfg.n, "margin index out of range")) {
        margins_hold = false;
        continue;
      }
      QuadraticNumber lhs, rhs;
      const bool holds =
          margin_holds(sys, static_cast<int>(j), cfg.epsilon, normal, lhs, rhs);
      chk.check(str_field(mc, "lhs") == lhs.str(),
                "margin lhs differs from the recomputed value");
      chk.check(str_field(mc, "rhs") == rhs.str(),
                "margin rhs differs from the recomputed value");
      chk.check(bool_field(mc, "holds") == holds,
                "margin verdict differs from the recomputed one");
      margins_hold = margins_hold && holds;
    }
    chk.check(bool_field(obs, "disjoint_from_targets") == margins_hold,
              "disjointness flag inconsistent with margin checks");
    if (!margins_hold) continue;

    const Json& entries = array_field(obs, "entries");
    chk.check(static_cast<int>(entries.size()) == cfg.obstruction_entries,
              "obstruction entry count differs from inputs");
    long long verified = 0;
    for (const Json& e : entries) {
      const Json& words = array_field(e, "words");
      bool entry_ok = static_cast<int>(words.size()) == cfg.n - 1;
      std::vector<IntMatrix> mats;
      for (const Json& ws : words) {
        if (!ws.is_string()) throw report_parse_error("entry word not a string");
        try {
          mats.push_back(sys.word_matrix(GroupWord::parse(ws.get<std::string>())));
        } catch (const std::invalid_argument&) {
          entry_ok = false;
        }
      }
      std::vector<Integer> vertex = integer_vector_from_json(field(e, "vertex"));
      bool nonzero = false;
      for (const Integer& x : vertex) nonzero = nonzero || sgn(x) != 0;
      entry_ok = entry_ok && static_cast<int>(vertex.size()) == cfg.n && nonzero;
      for (size_t j = 0; entry_ok && j < mats.size(); ++j) {
        std::vector<QuadraticNumber> pre =
            mats[j].inverse_unimodular().apply(lift(vertex));
        QuadraticNumber dot;
        for (int l = 0; l < cfg.n; ++l)
          dot += QuadraticNumber(normal[static_cast<size_t>(l)]) *
                 pre[static_cast<size_t>(l)];
        entry_ok = dot.sign() == 0 &&
                   !sys.region_contains(
                       RatioRegion{RegionKind::OpenU, static_cast<int>(j) + 1,
                                   cfg.epsilon},
                       ProjectivePoint(std::move(pre)));
      }
      chk.check(bool_field(e, "verified") == entry_ok,
                "entry verdict differs from the recomputed one");
      if (entry_ok) ++verified;
    }
    chk.check(int_field(obs, "entries_verified") == verified,
              "entries_verified differs from the recomputed count");
    obstruction_ok =
        obstruction_ok && verified == static_cast<long long>(entries.size());
  }

  std::string expected = derived_certified ? "CERTIFIED" : "SAMPLED";
  if (!obstruction_ok) expected = "FAILED";
  chk.check(str_field(report, "level") == expected,
            "level inconsistent with the rechecked evidence");
}

// ---------------------------------------------------------------------------
// tree arena

void recheck_tree(const ScenarioConfig& cfg, const Json& report, Checker& chk) {
  auto parse_set = [&](const std::vector<std::string>& prefixes) {
    std::vector<ReducedWord> words;
    for (const std::string& p : prefixes)
      words.push_back(parse_as("bad clopen prefix",
                               [&] { return ReducedWord::parse(p, cfg.rank); }));
    return ClopenSet::from_prefixes(std::move(words), cfg.rank);
  };
  const ClopenSet u = parse_set(cfg.u_prefixes);
  const ClopenSet v = parse_set(cfg.v_prefixes);

  const Json& witnesses = array_field(report, "witnesses");
  if (witnesses.size() != 1)
    throw report_parse_error("tree report needs exactly one witness");
  const Json& w = witnesses.at(0);
  if (str_field(w, "kind") != "2-filling")
    throw report_parse_error("unexpected witness kind: " + str_field(w, "kind"));
  if (!bool_field(w, "found")) {
    chk.fail("witness records no filling pair; nothing to certify");
    return;
  }
  const Json& translates = array_field(w, "translates");
  if (translates.size() != 2 || !translates.at(0).is_string() ||
      !translates.at(1).is_string())
    throw report_parse_error("2-filling witness needs two translate words");
  auto parse_translate = [&](const Json& t) {
    const std::string text = t.get<std::string>();
    ReducedWord word = parse_as("bad translate word", [&] {
      return ReducedWord::parse(text, cfg.rank);
    });
    if (word.str() != text)
      chk.fail("translate word is not freely reduced: " + text);
    return word;
  };
  const ReducedWord t1 = parse_translate(translates.at(0));
  const ReducedWord t2 = parse_translate(translates.at(1));

  const Json& certs = array_field(report, "certificates");
  if (certs.size() != 1)
    throw report_parse_error("tree report needs exactly one certificate");
  const Json& c = certs.at(0);
  if (str_field(c, "type") != "exhaustive-cover")
    throw report_parse_error("unknown certificate type: " + str_field(c, "type"));
  chk.check(int_field(c, "rank") == cfg.rank,
            "certificate rank differs from inputs");
  const Json& sets = array_field(c, "sets");
  if (sets.size() != 2)
    throw report_parse_error("exhaustive-cover needs two set records");
  auto check_set = [&](const Json& rec, const ReducedWord& t,
                       const ClopenSet& s, const char* which) {
    chk.check(str_field(rec, "translate") == t.str(),
              std::string(which) + " record names a different translate");
    Json expect = Json::array();
    for (const ReducedWord& p : s.prefixes()) expect.push_back(p.str());
    chk.check(array_field(rec, "prefixes") == expect,
              std::string(which) + " record prefixes differ from the inputs");
  };
  check_set(sets.at(0), t1, u, "first");
  check_set(sets.at(1), t2, v, "second");

  // The claim itself: t1 U and t2 V tile the whole boundary. act_on_clopen
  // and cover_check are exact; no search is repeated here.
  const ClopenSet img1 = act_on_clopen(t1, u);
  const ClopenSet img2 = act_on_clopen(t2, v);
  const CoverResult cover = cover_check(cfg.rank, {img1, img2});
  chk.check(cover.covered, "translate images do not cover the boundary");
  chk.check(bool_field(c, "covered"), "certificate does not assert the cover");
  chk.check(int_field(c, "depth") == cover.depth,
            "certificate depth differs from the recomputed cover check");
  chk.check(int_field(w, "cover_depth") == cover.depth,
            "witness cover depth differs from the recomputed cover check");

  const bool certified = bool_field(w, "certified");
  chk.check(certified == cover.covered,
            "certified flag inconsistent with the cover check");
  chk.check(str_field(report, "level") ==
                (certified && cover.covered ? "CERTIFIED" : "FAILED"),
            "level inconsistent with the rechecked evidence");
}

// ---------------------------------------------------------------------------
// plane arena

void recheck_plane(const ScenarioConfig& cfg, const Json& report, Checker& chk) {
  Plane plane = [&] {
    try {
      return Plane::build(cfg.q);
    } catch (const std::domain_error& e) {
      throw report_parse_error(std::string("cannot rebuild the plane: ") +
                               e.what());
    }
  }();
  const int q3 = cfg.q * cfg.q * cfg.q;
  const int nf = plane.flag_count();
  const auto& flags = plane.flags();

  // Pair blocking, by direct scan: every pair of chambers admits a chamber
  // opposite to neither. Feeds both the pair-witness certificate and the
  // stated lower bound.
  bool pairs_blocked = true;
  for (int i = 0; i < nf && pairs_blocked; ++i)
    for (int j = i; j < nf && pairs_blocked; ++j) {
      bool blocked = false;
      for (int l = 0; l < nf && !blocked; ++l)
        blocked = !opposite(plane, flags[static_cast<size_t>(l)],
                            flags[static_cast<size_t>(i)]) &&
                  !opposite(plane, flags[static_cast<size_t>(l)],
                            flags[static_cast<size_t>(j)]);
      pairs_blocked = blocked;
    }

  bool derived_all = true;
  bool seen_count = false, seen_table = false, seen_pairs = false,
       seen_cover = false;
  Json cover_chambers;
  for (const Json& c : array_field(report, "certificates")) {
    const std::string type = str_field(c, "type");
    if (type == "opposition-count") {
      seen_count = true;
      chk.check(int_field(c, "q") == cfg.q, "certificate q differs from inputs");
      chk.check(int_field(c, "size") == q3, "opposition set size is not q^3");
      bool derived = true;
      for (const Flag& f : flags)
        derived =
            derived && static_cast<int>(opposition_set(plane, f).size()) == q3;
      chk.check(bool_field(c, "all_match") == derived,
                "opposition counts differ on recheck");
      derived_all = derived_all && derived;
    } else if (type == "apartment-cover-table") {
      seen_table = true;
      chk.check(int_field(c, "q") == cfg.q, "certificate q differs from inputs");
      const std::vector<Apartment> apartments = all_apartments(plane);
      chk.check(int_field(c, "apartments") ==
                    static_cast<long long>(apartments.size()),
                "apartment count differs on recheck");
      bool derived = true;
      for (const Apartment& a : apartments)
        derived = derived && opposition_cover_check(plane, a).covered;
      chk.check(bool_field(c, "all_covered") == derived,
                "apartment cover table differs on recheck");
      chk.check(int_field(c, "incidences_per_apartment") == 6 * q3,
                "incidence count per apartment is not 6 q^3");
      derived_all = derived_all && derived;
    } else if (type == "pair-witness") {
      seen_pairs = true;
      chk.check(int_field(c, "pairs_checked") ==
                    static_cast<long long>(nf) * (nf + 1) / 2,
                "pair count differs from the flag census");
      chk.check(bool_field(c, "all_found") == pairs_blocked,
                "pair-witness verdict differs on recheck");
      derived_all = derived_all && pairs_blocked;
    } else if (type == "opposition-cover") {
      seen_cover = true;
      cover_chambers = array_field(c, "chambers");
      std::vector<Flag> chambers;
      for (const Json& ch : cover_chambers) {
        if (!ch.is_string())
          throw report_parse_error("cover chamber not a string");
        chambers.push_back(parse_as("bad chamber", [&] {
          return parse_flag(plane, ch.get<std::string>());
        }));
      }
      bool derived = !chambers.empty();
      for (const Flag& f : flags) {
        bool hit = false;
        for (const Flag& ch : chambers) hit = hit || opposite(plane, f, ch);
        derived = derived && hit;
      }
      chk.check(bool_field(c, "covered") == derived,
                "opposition cover differs on recheck");
      derived_all = derived_all && derived;
    } else {
      throw report_parse_error("unknown certificate type: " + type);
    }
  }
  chk.check(seen_count && seen_table && seen_pairs && seen_cover,
            "plane report is missing a certificate");

  const Json& witnesses = array_field(report, "witnesses");
  if (witnesses.size() != 1)
    throw report_parse_error("plane report needs exactly one witness");
  const Json& w = witnesses.at(0);
  if (str_field(w, "kind") != "min-opposition-cover")
    throw report_parse_error("unexpected witness kind: " + str_field(w, "kind"));
  const Json& chambers = array_field(w, "chambers");
  chk.check(chambers == cover_chambers,
            "witness chambers differ from the cover certificate");
  chk.check(int_field(w, "m") == static_cast<long long>(chambers.size()),
            "m differs from the chamber count");
  chk.check(int_field(w, "lower_bound") == (pairs_blocked ? 3 : 2),
            "lower bound differs from the pair analysis");
  chk.check(int_field(w, "m") >= int_field(w, "lower_bound"),
            "m below its own lower bound");
  chk.check(int_field(w, "subsets_checked") >= 1,
            "subset count must be positive");

  chk.check(str_field(report, "level") == (derived_all ? "CERTIFIED" : "FAILED"),
            "level inconsistent with the rechecked evidence");
}

// ---------------------------------------------------------------------------
// constants arena

void recheck_constants(const ScenarioConfig& cfg, const Json& report,
                       Checker& chk) {
  const Json& certs = array_field(report, "certificates");
  if (cfg.epsilon_set)
    chk.check(certs.size() == 1, "single-epsilon audit needs one certificate");
  else
    chk.check(certs.size() == 100, "grid audit needs 100 certificates");

  bool all = true;
  int idx = 0;
  for (const Json& c : certs) {
    ++idx;
    if (str_field(c, "type") != "constants-audit")
      throw report_parse_error("unknown certificate type: " +
                               str_field(c, "type"));
    chk.check(int_field(c, "n") == cfg.n, "audit n differs from inputs");
    const Rational eps = rational_from_json(field(c, "epsilon"));
    if (cfg.epsilon_set)
      chk.check(cmp(eps, cfg.epsilon) == 0, "audit epsilon differs from inputs");
    else
      chk.check(cmp(eps, make_rational(idx, 1000 * (2 * cfg.n + 1))) == 0,
                "grid epsilon out of place at position " + std::to_string(idx));

    const ConstantsAudit audit = verify_proof_constants(cfg.n, eps);
    chk.check(bool_field(c, "in_range") == audit.epsilon_in_range,
              "range verdict differs on recheck");
    chk.check(bool_field(c, "all_hold") == audit.all_hold,
              "audit verdict differs on recheck");
    const Json& checks = array_field(c, "checks");
    if (!chk.check(checks.size() == audit.checks.size(),
                   "audit check count differs on recheck"))
      continue;
    for (size_t i = 0; i < audit.checks.size(); ++i) {
      const InequalityCheck& ic = audit.checks[i];
      const Json& sc = checks.at(i);
      const bool same = str_field(sc, "name") == ic.name &&
                        str_field(sc, "lhs") == ic.lhs &&
                        str_field(sc, "rhs") == ic.rhs &&
                        str_field(sc, "relation") == ic.relation &&
                        bool_field(sc, "applicable") == ic.applicable &&
                        bool_field(sc, "holds") == ic.holds;
      chk.check(same, "audit check differs on recheck: " + ic.name);
    }
    all = all && audit.all_hold && (cfg.epsilon_set || audit.epsilon_in_range);
  }
  chk.check(str_field(report, "level") == (all ? "CERTIFIED" : "FAILED"),
            "level inconsistent with the rechecked evidence");
}

}  // namespace

RecheckResult recheck_certificate(const Json& report) {
  if (!report.is_object())
    throw report_parse_error("report must be a JSON object");
  if (int_field(report, "schema_version") != kSchemaVersion)
    throw report_parse_error("unsupported schema version");
  const std::string arena = str_field(report, "arena");
  ScenarioConfig cfg;
  try {
    cfg = ScenarioConfig::from_json(field(report, "inputs"));
  } catch (const config_error& e) {
    throw report_parse_error(std::string("bad inputs: ") + e.what());
  }
  if (cfg.arena != arena)
    throw report_parse_error("inputs arena differs from report arena");
  const std::string level = str_field(report, "level");
  if (level != "CERTIFIED" && level != "SAMPLED" && level != "FAILED")
    throw report_parse_error("unknown level: " + level);
  array_field(report, "witnesses");
  array_field(report, "obstructions");
  if (array_field(report, "certificates").empty())
    throw report_parse_error("report carries no certificates to recheck");

  Checker chk;
  chk.check(str_field(report, "rng") == Rng::kName,
            "unknown rng stream: " + str_field(report, "rng"));
  chk.check(u64_field(report, "seed") == cfg.seed,
            "seed differs between envelope and inputs");

  if (arena == "projective")
    recheck_projective(cfg, report, chk);
  else if (arena == "tree")
    recheck_tree(cfg, report, chk);
  else if (arena == "plane")
    recheck_plane(cfg, report, chk);
  else
    recheck_constants(cfg, report, chk);

  RecheckResult res;
  res.failures = std::move(chk.failures);
  res.ok = res.failures.empty();
  return res;
}

}  // namespace fillinglab
