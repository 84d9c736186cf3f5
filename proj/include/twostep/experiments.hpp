#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"
#include "twostep/forms.hpp"
#include "twostep/forms_json.hpp"
#include "twostep/grassmann.hpp"
#include "twostep/isotropy.hpp"
#include "twostep/lie_algebra.hpp"
#include "twostep/nilgroup.hpp"

namespace twostep {

using ojson = nlohmann::ordered_json;

/// Invalid experiment parameters (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ExperimentKind { Center, Abelian, Ms, Plucker, GroupCheck, Quaternion };

inline std::string kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::Center: return "center";
    case ExperimentKind::Abelian: return "abelian";
    case ExperimentKind::Ms: return "ms";
    case ExperimentKind::Plucker: return "plucker";
    case ExperimentKind::GroupCheck: return "group-check";
    case ExperimentKind::Quaternion: return "example-quaternion";
  }
  return "?";
}

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Center;
  std::size_t n = 4;
  std::size_t t = 1;
  std::size_t n0 = 2;
  std::size_t t0 = 1;
  std::size_t k = 2;  // subspace dimension for plucker
  std::size_t trials = 100;
  long bound = 20;
  std::optional<std::uint32_t> prime;
  std::uint64_t seed = 1;
  std::uint64_t enum_cap = kDefaultEnumerationCap;
  std::size_t restarts = 20;
  std::string strategy = "exhaustive-fp";  // ms: exhaustive-fp | randomized-q
  std::size_t search_trials = 200;         // randomized-q samples per algebra
  std::optional<FormTuple<RationalField>> input;
  /// Worker threads. Affects speed only; reports do not depend on it.
  std::size_t threads = 1;
};

struct ExperimentReport {
  std::string kind;
  ojson config;
  std::vector<ojson> records;
  ojson aggregates = ojson::object();
  ojson prediction = ojson::object();
  bool consistent = true;
  std::vector<std::string> flags;

  void flag(std::string what) {
    consistent = false;
    flags.push_back(std::move(what));
  }

  ojson to_json() const {
    ojson j;
    j["kind"] = kind;
    j["config"] = config;
    j["prediction"] = prediction;
    j["aggregates"] = aggregates;
    j["consistent"] = consistent;
    j["flags"] = flags;
    j["records"] = records;
    return j;
  }
};

/// Runs body(i) for i in [0, count) on `threads` workers; results are ordered by i.
inline std::vector<ojson> run_trials(std::size_t count, std::size_t threads,
                                     const std::function<ojson(std::size_t)>& body) {
  std::vector<ojson> out(count);
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = body(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          out[i] = body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

namespace detail {

template <ExactField F>
ojson subspace_json(const Subspace<F>& s) {
  ojson rows = ojson::array();
  for (const auto& v : s.basis_vectors()) {
    ojson row = ojson::array();
    for (const auto& x : v) row.push_back(to_string(x));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline double frequency(std::size_t hits, std::size_t total) {
  return total == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(total);
}

inline std::size_t count_true(const std::vector<ojson>& records, const char* key) {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(), [&](const ojson& r) { return r.value(key, false); }));
}

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

inline void validate_common(const ExperimentConfig& cfg) {
  require(cfg.trials >= 1, "trials must be >= 1");
  require(cfg.bound >= 1, "bound must be >= 1");
  require(!cfg.prime || is_prime(*cfg.prime), "prime must be a prime number");
  require(cfg.restarts >= 1, "restarts must be >= 1");
}

/// Adopts n and t from a fixed input tuple; otherwise checks the sampling range.
inline void settle_shape(ExperimentConfig& cfg) {
  if (cfg.input) {
    cfg.n = cfg.input->n();
    cfg.t = cfg.input->t();
    require(is_independent(*cfg.input), "input forms are linearly dependent");
  }
  require(cfg.n >= 2, "n must be >= 2");
  require(cfg.t >= 1 && cfg.t <= form_space_dim(cfg.n), "need 1 <= t <= n(n-1)/2");
}

inline FormTuple<RationalField> trial_tuple(const ExperimentConfig& cfg, Rng& rng) {
  if (cfg.input) return *cfg.input;
  return random_tuple(cfg.n, cfg.t, cfg.bound, rng);
}

inline ojson config_echo(const ExperimentConfig& cfg) {
  ojson c;
  c["kind"] = kind_name(cfg.kind);
  c["n"] = cfg.n;
  c["t"] = cfg.t;
  if (cfg.kind == ExperimentKind::Ms) {
    c["n0"] = cfg.n0;
    c["t0"] = cfg.t0;
    c["strategy"] = cfg.strategy;
  }
  if (cfg.kind == ExperimentKind::Plucker) c["k"] = cfg.k;
  c["trials"] = cfg.trials;
  c["bound"] = cfg.bound;
  c["prime"] = cfg.prime ? ojson(*cfg.prime) : ojson(nullptr);
  c["seed"] = cfg.seed;
  c["enum_cap"] = cfg.enum_cap;
  c["restarts"] = cfg.restarts;
  c["input"] = cfg.input ? ojson(formtuple_to_json(*cfg.input)) : ojson(nullptr);
  return c;
}

}  // namespace detail

/// Samples tuples and compares the computed center dimension with the generic value.
inline ExperimentReport run_center_experiment(ExperimentConfig cfg) {
  detail::validate_common(cfg);
  detail::settle_shape(cfg);
  ExperimentReport rep;
  rep.kind = "center";
  rep.config = detail::config_echo(cfg);
  const std::size_t predicted = predicted_center_dim(cfg.n, cfg.t);
  rep.prediction["center_dim"] = predicted;
  rep.prediction["rule"] = "2 if t = 1 and n odd, else t";

  rep.records = run_trials(cfg.trials, cfg.threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(cfg.seed, i);
    Rng rng(seed);
    const auto phi = detail::trial_tuple(cfg, rng);
    const LieAlgebra2<RationalField> l(phi);
    const std::size_t modulo_s = center(l).dim();
    ojson r;
    r["trial"] = i;
    r["seed"] = seed;
    r["center_mod_S_dim"] = modulo_s;
    r["center_dim"] = modulo_s + cfg.t;
    r["group_center_rank"] = center_rank(GroupPresentation(phi));
    r["match"] = modulo_s + cfg.t == predicted;
    if (!r["match"].get<bool>()) r["tuple"] = formtuple_to_json(phi);
    return r;
  });

  const std::size_t matches = detail::count_true(rep.records, "match");
  rep.aggregates["trials"] = cfg.trials;
  rep.aggregates["matches"] = matches;
  rep.aggregates["match_frequency"] = detail::frequency(matches, cfg.trials);
  for (const auto& r : rep.records)
    if (!r["match"].get<bool>())
      rep.flag("trial " + r["trial"].dump() + ": dim Z = " + r["center_dim"].dump() + ", generic value " +
               std::to_string(predicted));
  return rep;
}

/// Greedy isotropic search over Q against bound_k, with an exhaustive F_p oracle.
inline ExperimentReport run_abelian_experiment(ExperimentConfig cfg) {
  detail::validate_common(cfg);
  detail::settle_shape(cfg);
  detail::require(cfg.t >= 2, "abelian experiment needs t >= 2");
  ExperimentReport rep;
  rep.kind = "abelian";
  rep.config = detail::config_echo(cfg);
  const std::size_t bk = bound_k(cfg.n, cfg.t);
  const std::size_t guarantee = (cfg.n + cfg.t) / (cfg.t + 1);  // ceil(n / (t + 1))
  const std::uint32_t p = cfg.prime.value_or(3);
  const PrimeField fp(p);
  rep.prediction["bound_k"] = bk;
  rep.prediction["bound_s"] = bound_s(cfg.n, cfg.t);
  rep.prediction["greedy_guarantee"] = guarantee;
  rep.prediction["oracle_prime"] = p;

  rep.records = run_trials(cfg.trials, cfg.threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(cfg.seed, i);
    Rng rng(seed);
    const auto phi = detail::trial_tuple(cfg, rng);
    const auto cert = greedy_isotropic(phi, derive_seed(seed, 1), cfg.restarts);
    ojson r;
    r["trial"] = i;
    r["seed"] = seed;
    r["greedy_dim"] = cert.subspace.dim();
    r["greedy_verified"] = cert.verified;
    r["greedy_basis"] = detail::subspace_json(cert.subspace);
    r["guarantee_met"] = cert.subspace.dim() >= guarantee;
    r["attains_bound_k"] = cert.subspace.dim() >= bk;
    r["rational_violation"] = cert.subspace.dim() > bk;
    r["oracle_max"] = nullptr;
    r["oracle_exceeds_bound_k"] = false;
    try {
      const auto reduced = reduce_mod(phi, fp);
      std::size_t best = 1;
      std::optional<Subspace<PrimeField>> witness;
      for (std::size_t k = 2; k <= cfg.n; ++k) {
        auto w = max_isotropic_fp(reduced, k, cfg.enum_cap);
        if (!w) break;
        best = k;
        witness = std::move(w);
      }
      r["oracle_max"] = best;
      r["oracle_exceeds_bound_k"] = best > bk;
      if (best > bk && witness) {
        r["oracle_certificate"] = detail::subspace_json(*witness);
        r["oracle_certificate_verified"] = is_isotropic(reduced, *witness);
        r["tuple"] = formtuple_to_json(phi);
      }
    } catch (const EnumerationRefused& e) {
      r["oracle_skipped"] = e.what();
    } catch (const ReductionError& e) {
      r["oracle_skipped"] = e.what();
    }
    return r;
  });

  std::size_t evaluated = 0;
  for (const auto& r : rep.records)
    if (!r["oracle_max"].is_null()) ++evaluated;
  const std::size_t exceeds = detail::count_true(rep.records, "oracle_exceeds_bound_k");
  const std::size_t attains = detail::count_true(rep.records, "attains_bound_k");
  rep.aggregates["trials"] = cfg.trials;
  rep.aggregates["greedy_verified"] = detail::count_true(rep.records, "greedy_verified");
  rep.aggregates["guarantee_met"] = detail::count_true(rep.records, "guarantee_met");
  rep.aggregates["attains_bound_k"] = attains;
  rep.aggregates["attainment_frequency"] = detail::frequency(attains, cfg.trials);
  rep.aggregates["rational_violations"] = detail::count_true(rep.records, "rational_violation");
  rep.aggregates["oracle_evaluated"] = evaluated;
  rep.aggregates["oracle_exceeds_bound_k"] = exceeds;
  rep.aggregates["oracle_within_bound_frequency"] = detail::frequency(evaluated - exceeds, evaluated);

  for (const auto& r : rep.records) {
    const std::string tag = "trial " + r["trial"].dump() + ": ";
    if (!r["greedy_verified"].get<bool>()) rep.flag(tag + "greedy subspace failed verification");
    if (!r["guarantee_met"].get<bool>()) rep.flag(tag + "greedy dimension below ceil(n/(t+1))");
    if (r["rational_violation"].get<bool>()) rep.flag(tag + "isotropic subspace over Q exceeds bound_k");
    if (r.contains("oracle_certificate_verified") && !r["oracle_certificate_verified"].get<bool>())
      rep.flag(tag + "oracle certificate failed verification");
  }
  // Reductions mod p are not generic; tolerate up to 5% of oracle runs above bound_k.
  if (evaluated > 0 && detail::frequency(exceeds, evaluated) > 0.05)
    rep.flag("oracle exceeded bound_k in " + std::to_string(exceeds) + " of " + std::to_string(evaluated) + " trials");
  return rep;
}

/// Searches each sampled algebra for a surjection onto N_2(n0, t0) and compares with the regime.
inline ExperimentReport run_ms_experiment(ExperimentConfig cfg) {
  detail::validate_common(cfg);
  detail::settle_shape(cfg);
  detail::require(cfg.n0 >= 2 && cfg.n0 <= cfg.n, "need 2 <= n0 <= n");
  detail::require(cfg.t0 >= 1 && cfg.t0 <= form_space_dim(cfg.n0), "need 1 <= t0 <= n0(n0-1)/2");
  detail::require(cfg.strategy == "exhaustive-fp" || cfg.strategy == "randomized-q",
                  "strategy must be exhaustive-fp or randomized-q");
  ExperimentReport rep;
  rep.kind = "ms";
  rep.config = detail::config_echo(cfg);
  const auto th = ms_thresholds(cfg.n, cfg.n0, cfg.t0);
  const Rational t_value(static_cast<long>(cfg.t));
  const std::string regime = t_value < th.generic_absence_below    ? "generic-absence"
                             : t_value >= th.guaranteed_at_or_above ? "guaranteed"
                                                                    : "undetermined";
  rep.prediction["regime"] = regime;
  rep.prediction["generic_absence_below"] = th.generic_absence_below.get_str();
  rep.prediction["guaranteed_at_or_above"] = th.guaranteed_at_or_above.get_str();
  const bool pfaffian_gate = cfg.t == 1 && cfg.n % 2 == 0;

  rep.records = run_trials(cfg.trials, cfg.threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(cfg.seed, i);
    Rng rng(seed);
    const auto phi = detail::trial_tuple(cfg, rng);
    const LieAlgebra2<RationalField> l(phi);
    ojson r;
    r["trial"] = i;
    r["seed"] = seed;
    r["eligible"] = true;
    r["found"] = false;
    if (cfg.strategy == "randomized-q") {
      const auto res = ms_search_randomized(l, cfg.n0, cfg.t0, {cfg.search_trials, derive_seed(seed, 1), 5});
      r["field"] = "Q";
      r["examined"] = res.examined;
      if (pfaffian_gate) r["eligible"] = !is_zero(pfaffian(phi[0].matrix()));
      if (res.certificate) {
        const auto& u = std::get<Subspace<RationalField>>(*res.certificate);
        r["certificate"] = detail::subspace_json(u);
        r["certificate_verified"] = ms_certificate(l, u, cfg.n0, cfg.t0);
        r["found"] = r["certificate_verified"];
      }
      return r;
    }
    const std::uint32_t p = cfg.prime ? *cfg.prime : default_prime(phi);
    r["field"] = "F" + std::to_string(p);
    try {
      const auto lp = reduce_algebra(l, PrimeField(p));
      if (pfaffian_gate) r["eligible"] = !is_zero(pfaffian(lp.forms()[0].matrix()));
      const auto res = ms_search_exhaustive(lp, cfg.n0, cfg.t0, cfg.enum_cap);
      r["examined"] = res.examined;
      if (res.certificate) {
        const auto& u = std::get<Subspace<PrimeField>>(*res.certificate);
        r["certificate"] = detail::subspace_json(u);
        r["certificate_verified"] = ms_certificate(lp, u, cfg.n0, cfg.t0);
        r["found"] = r["certificate_verified"];
      }
    } catch (const DegenerateReduction& e) {
      r["skipped"] = e.what();
      r["eligible"] = false;
    }
    return r;
  });

  std::size_t searched = 0, found = 0, eligible = 0, found_eligible = 0;
  for (const auto& r : rep.records) {
    const std::string tag = "trial " + r["trial"].dump() + ": ";
    if (r.contains("skipped")) {
      rep.flag(tag + "skipped: " + r["skipped"].get<std::string>());
      continue;
    }
    ++searched;
    const bool f = r["found"].get<bool>();
    const bool e = r["eligible"].get<bool>();
    found += f;
    eligible += e;
    found_eligible += f && e;
    if (r.contains("certificate_verified") && !r["certificate_verified"].get<bool>())
      rep.flag(tag + "candidate certificate failed verification");
    if (regime == "guaranteed" && !f) rep.flag(tag + "no certificate although every algebra has the property");
    if (regime == "generic-absence" && f && e) rep.flag(tag + "certificate found in the generic-absence regime");
  }
  rep.aggregates["trials"] = cfg.trials;
  rep.aggregates["searched"] = searched;
  rep.aggregates["found"] = found;
  rep.aggregates["found_frequency"] = detail::frequency(found, searched);
  rep.aggregates["eligible"] = eligible;
  rep.aggregates["found_among_eligible"] = found_eligible;
  rep.aggregates["found_frequency_among_eligible"] = detail::frequency(found_eligible, eligible);
  return rep;
}

/// Random k-subspaces of Q^n: Plucker relations and the basis round trip.
inline ExperimentReport run_plucker_experiment(ExperimentConfig cfg) {
  detail::validate_common(cfg);
  detail::require(cfg.k >= 1 && cfg.k <= cfg.n, "need 1 <= k <= n");
  ExperimentReport rep;
  rep.kind = "plucker";
  rep.config = detail::config_echo(cfg);
  rep.prediction["grassmannian_dim"] = dim_grassmannian(cfg.k, cfg.n);
  const RationalField q;
  rep.records = run_trials(cfg.trials, cfg.threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(cfg.seed, i);
    Rng rng(seed);
    Subspace<RationalField> u = Subspace<RationalField>::zero(q, cfg.n);
    while (u.dim() != cfg.k) {
      Matrix<RationalField> m(q, cfg.k, cfg.n);
      for (std::size_t r = 0; r < cfg.k; ++r)
        for (std::size_t c = 0; c < cfg.n; ++c) m(r, c) = q.from_int(rng.uniform(-cfg.bound, cfg.bound));
      u = Subspace<RationalField>::span(m);
    }
    const auto p = plucker(u);
    ojson r;
    r["trial"] = i;
    r["seed"] = seed;
    r["relations_hold"] = check_plucker_relations(p);
    r["round_trip"] = r["relations_hold"].get<bool>() && basis_from_plucker(p) == u;
    return r;
  });
  const std::size_t rel = detail::count_true(rep.records, "relations_hold");
  const std::size_t trip = detail::count_true(rep.records, "round_trip");
  rep.aggregates["trials"] = cfg.trials;
  rep.aggregates["relations_hold"] = rel;
  rep.aggregates["round_trip"] = trip;
  if (rel != cfg.trials) rep.flag("Plucker relations failed on " + std::to_string(cfg.trials - rel) + " subspaces");
  if (trip != cfg.trials) rep.flag("round trip failed on " + std::to_string(cfg.trials - trip) + " subspaces");
  return rep;
}

/// Random triples in G(phi): associativity, commutator closed form, Mal'cev homomorphism, BCH group laws.
inline ExperimentReport run_group_check(ExperimentConfig cfg) {
  detail::validate_common(cfg);
  const GroupPresentation gp = cfg.input ? GroupPresentation(*cfg.input) : GroupPresentation::heisenberg();
  cfg.n = gp.n();
  cfg.t = gp.t();
  ExperimentReport rep;
  rep.kind = "group-check";
  rep.config = detail::config_echo(cfg);
  const LieAlgebra2<RationalField> l(gp.forms());
  const long range = std::min<long>(cfg.bound, 9);
  rep.prediction["exponent_range"] = range;
  rep.records = run_trials(cfg.trials, cfg.threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(cfg.seed, i);
    Rng rng(seed);
    auto draw = [&] {
      GroupElement g = gp.identity();
      for (auto& x : g.a) x = rng.uniform(-range, range);
      for (auto& x : g.b) x = rng.uniform(-range, range);
      return g;
    };
    const GroupElement g = draw(), h = draw(), k = draw();
    const auto x = malcev_map(gp, l, g), y = malcev_map(gp, l, h);
    const auto e = l.zero();
    ojson r;
    r["trial"] = i;
    r["seed"] = seed;
    r["associative"] = multiply(gp, multiply(gp, g, h), k) == multiply(gp, g, multiply(gp, h, k));
    r["inverse"] = multiply(gp, g, inverse(gp, g)) == gp.identity();
    r["commutator_formula"] = commutator(gp, g, h) == commutator_by_product(gp, g, h);
    r["malcev_homomorphism"] = malcev_map(gp, l, multiply(gp, g, h)) == bch_mul(l, x, y);
    r["bch_group_axioms"] = bch_mul(l, bch_mul(l, x, y), e) == bch_mul(l, x, bch_mul(l, y, e)) &&
                            bch_mul(l, x, bch_inverse(x)) == e && bch_mul(l, e, x) == x &&
                            bch_mul(l, bch_mul(l, x, y), malcev_map(gp, l, k)) ==
                                bch_mul(l, x, bch_mul(l, y, malcev_map(gp, l, k)));
    r["bch_commutator"] =
        bch_mul(l, bch_mul(l, bch_mul(l, x, y), bch_inverse(x)), bch_inverse(y)) == bracket(l, x, y);
    return r;
  });
  rep.aggregates["trials"] = cfg.trials;
  for (const char* key :
       {"associative", "inverse", "commutator_formula", "malcev_homomorphism", "bch_group_axioms", "bch_commutator"}) {
    const std::size_t ok = detail::count_true(rep.records, key);
    rep.aggregates[key] = ok;
    if (ok != cfg.trials) rep.flag(std::string(key) + " failed in " + std::to_string(cfg.trials - ok) + " trials");
  }
  return rep;
}

/// The quaternion tuple: minors identity, isotropic dimension over Q and over F_p.
inline ExperimentReport run_quaternion_example(ExperimentConfig cfg) {
  detail::validate_common(cfg);
  const RationalField q;
  const auto phi = quaternion_example(q);
  cfg.n = 4;
  cfg.t = 3;
  ExperimentReport rep;
  rep.kind = "example-quaternion";
  rep.config = detail::config_echo(cfg);
  rep.prediction["rational_isotropic_dim"] = 1;
  rep.prediction["max_abelian_dim_over_Q"] = 1 + 3;

  rep.records = run_trials(cfg.trials, cfg.threads, [&](std::size_t i) {
    const std::uint64_t seed = derive_seed(cfg.seed, i);
    Rng rng(seed);
    Vector<RationalField> x;
    for (int c = 0; c < 4; ++c)
      x.emplace_back(rng.uniform(-cfg.bound, cfg.bound), rng.uniform(1, cfg.bound));
    for (auto& xi : x) xi.canonicalize();
    ojson r;
    r["trial"] = i;
    r["point"] = ojson::array();
    for (const auto& xi : x) r["point"].push_back(xi.get_str());
    r["minor_identity"] = quaternion_minor_identity(x);
    return r;
  });
  const std::size_t identity_ok = detail::count_true(rep.records, "minor_identity");
  const auto greedy = greedy_isotropic(phi, cfg.seed, cfg.restarts);
  const std::uint32_t p = cfg.prime.value_or(5);
  const auto reduced = reduce_mod(phi, PrimeField(p));
  std::optional<Subspace<PrimeField>> plane;
  ojson oracle;
  oracle["prime"] = p;
  try {
    SubspaceEnumerator planes(PrimeField(p), 4, 2, cfg.enum_cap);
    oracle["planes"] = planes.count().get_str();
    plane = max_isotropic_fp(reduced, 2, cfg.enum_cap);
    oracle["found_plane"] = plane.has_value();
    if (plane) {
      oracle["certificate"] = detail::subspace_json(*plane);
      oracle["certificate_verified"] = is_isotropic(reduced, *plane);
    }
  } catch (const EnumerationRefused& e) {
    oracle["skipped"] = e.what();
  }

  rep.aggregates["minor_identity_holds"] = identity_ok;
  rep.aggregates["points"] = cfg.trials;
  rep.aggregates["rational_greedy_dim"] = greedy.subspace.dim();
  rep.aggregates["rational_greedy_verified"] = greedy.verified;
  rep.aggregates["oracle"] = oracle;
  if (identity_ok != cfg.trials) rep.flag("minor identity failed at " + std::to_string(cfg.trials - identity_ok) + " points");
  if (!greedy.verified || greedy.subspace.dim() != 1)
    rep.flag("greedy over Q returned dimension " + std::to_string(greedy.subspace.dim()));
  if (plane && !oracle["certificate_verified"].get<bool>()) rep.flag("oracle plane failed verification");
  return rep;
}

inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  switch (cfg.kind) {
    case ExperimentKind::Center: return run_center_experiment(cfg);
    case ExperimentKind::Abelian: return run_abelian_experiment(cfg);
    case ExperimentKind::Ms: return run_ms_experiment(cfg);
    case ExperimentKind::Plucker: return run_plucker_experiment(cfg);
    case ExperimentKind::GroupCheck: return run_group_check(cfg);
    case ExperimentKind::Quaternion: return run_quaternion_example(cfg);
  }
  throw ConfigError("unknown experiment kind");
}

struct ThresholdRow {
  std::size_t n;
  std::size_t n0;
  std::size_t t0;
  Rational generic_absence_below;
  Rational guaranteed_at_or_above;
  std::optional<Rational> corollary;  // present when N = n0 + t0 < n
};

/// Every admissible (n, n0, t0) with n in [n_lo, n_hi], n0 in [n0_lo, min(n0_hi, n)], 1 <= t0 <= n0(n0-1)/2.
inline std::vector<ThresholdRow> emit_threshold_table(std::size_t n_lo, std::size_t n_hi, std::size_t n0_lo,
                                                      std::size_t n0_hi) {
  std::vector<ThresholdRow> rows;
  for (std::size_t n = n_lo; n <= n_hi; ++n)
    for (std::size_t n0 = std::max<std::size_t>(n0_lo, 2); n0 <= std::min(n0_hi, n); ++n0)
      for (std::size_t t0 = 1; t0 <= form_space_dim(n0); ++t0) {
        const auto th = ms_thresholds(n, n0, t0);
        if (th.generic_absence_below > th.guaranteed_at_or_above)
          throw std::logic_error("threshold ordering violated at n=" + std::to_string(n));
        ThresholdRow row{n, n0, t0, th.generic_absence_below, th.guaranteed_at_or_above, std::nullopt};
        if (n0 + t0 < n) row.corollary = corollary_bound(n, n0 + t0);
        rows.push_back(std::move(row));
      }
  return rows;
}

inline ojson threshold_table_json(const std::vector<ThresholdRow>& rows) {
  ojson out = ojson::array();
  for (const auto& r : rows) {
    ojson j;
    j["n"] = r.n;
    j["n0"] = r.n0;
    j["t0"] = r.t0;
    j["generic_absence_below"] = r.generic_absence_below.get_str();
    j["guaranteed_at_or_above"] = r.guaranteed_at_or_above.get_str();
    j["corollary_bound"] = r.corollary ? ojson(r.corollary->get_str()) : ojson(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

/// Aggregates as "key,value" lines.
inline std::string render_csv(const ExperimentReport& rep) {
  std::ostringstream os;
  os << "key,value\n";
  os << "kind," << rep.kind << '\n';
  for (const auto& [key, value] : rep.aggregates.items()) os << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  os << "consistent," << (rep.consistent ? "true" : "false") << '\n';
  return os.str();
}

inline std::string render_table(const ExperimentReport& rep) {
  std::ostringstream os;
  os << "experiment: " << rep.kind << '\n';
  for (const auto& [key, value] : rep.config.items())
    if (!value.is_null()) os << "  " << key << " = " << value.dump() << '\n';
  os << "prediction:\n";
  for (const auto& [key, value] : rep.prediction.items()) os << "  " << key << " = " << value.dump() << '\n';
  os << "aggregates:\n";
  for (const auto& [key, value] : rep.aggregates.items()) os << "  " << key << " = " << value.dump() << '\n';
  os << "verdict: " << (rep.consistent ? "consistent" : "FLAGGED") << '\n';
  for (const auto& f : rep.flags) os << "  ! " << f << '\n';
  return os.str();
}

}  // namespace twostep
