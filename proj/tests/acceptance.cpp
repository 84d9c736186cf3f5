// Acceptance checks: one PASS/FAIL line per criterion. Exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "twostep/twostep.hpp"

using namespace twostep;

namespace {

constexpr std::uint64_t kMasterSeed = 2024;
const RationalField Q;

struct Outcome {
  bool pass;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

const std::vector<std::pair<std::size_t, std::size_t>> kGrid{{3, 1}, {4, 1}, {5, 1}, {4, 2}, {5, 2}, {5, 3}, {6, 3}};

Outcome center_probe() {
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream detail;
  bool pass = true;
  for (std::size_t cell = 0; cell < kGrid.size(); ++cell) {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::Center;
    cfg.n = kGrid[cell].first;
    cfg.t = kGrid[cell].second;
    cfg.trials = 200;
    cfg.bound = 20;
    cfg.seed = derive_seed(kMasterSeed, cell);
    const auto rep = run_center_experiment(cfg);
    const auto matches = rep.aggregates["matches"].get<std::size_t>();
    detail << "(" << cfg.n << "," << cfg.t << ") " << matches << "/200 ";
    if (matches != 200) {
      pass = false;
      for (const auto& r : rep.records)
        if (!r["match"].get<bool>()) detail << "[mismatch trial " << r["trial"] << " dimZ=" << r["center_dim"] << "] ";
    }
  }
  const double secs = seconds_since(start);
  detail << "time " << fmt_seconds(secs);
  return {pass && secs < 30.0, detail.str()};
}

Outcome derived_probe() {
  Rng rng(derive_seed(kMasterSeed, 100));
  std::size_t independent_ok = 0, dependent_ok = 0;
  const std::size_t trials = 500;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto [n, t] = kGrid[i % kGrid.size()];
    const auto phi = random_tuple(n, t, 20, rng);
    independent_ok += derived_dim(LieAlgebra2<RationalField>(phi)) == t;
    // dependent: last form replaced by an integer combination of the others (zero when t = 1)
    std::vector<AlternatingForm<RationalField>> forms(phi.forms().begin(), phi.forms().end() - 1);
    auto last = AlternatingForm<RationalField>::zero(Q, n);
    for (const auto& f : forms) last = last + Rational(rng.uniform(-3, 3)) * f;
    forms.push_back(last);
    const auto dep = LieAlgebra2<RationalField>::unchecked(FormTuple<RationalField>(Q, n, forms));
    dependent_ok += derived_dim(dep) < t;
  }
  std::ostringstream detail;
  detail << "independent derived_dim = t in " << independent_ok << "/" << trials << ", dependent derived_dim < t in "
         << dependent_ok << "/" << trials;
  return {independent_ok == trials && dependent_ok == trials, detail.str()};
}

Outcome quaternion_probe() {
  const auto start = std::chrono::steady_clock::now();
  const auto phi = quaternion_example(Q);
  const std::vector<std::vector<std::vector<long>>> printed{
      {{0, 1, 0, 0}, {-1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}},
      {{0, 0, 1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}, {0, 1, 0, 0}},
      {{0, 0, 0, 1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {-1, 0, 0, 0}}};
  bool entries = phi.t() == 3;
  for (std::size_t k = 0; k < 3 && entries; ++k)
    entries = phi[k].matrix() == Matrix<RationalField>::from_ints(Q, printed[k]);

  Rng rng(derive_seed(kMasterSeed, 200));
  std::size_t identity_ok = 0;
  for (int i = 0; i < 1000; ++i) {
    Vector<RationalField> x;
    for (int c = 0; c < 4; ++c) {
      Rational q(rng.uniform(-100, 100), rng.uniform(1, 50));
      q.canonicalize();
      x.push_back(q);
    }
    identity_ok += quaternion_minor_identity(x);
  }

  std::size_t max_greedy = 0;
  bool greedy_verified = true;
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto cert = greedy_isotropic(phi, derive_seed(kMasterSeed, 300 + s), 100);
    greedy_verified = greedy_verified && cert.verified;
    max_greedy = std::max(max_greedy, cert.subspace.dim());
  }

  const PrimeField f5(5);
  const auto reduced = reduce_mod(phi, f5);
  SubspaceEnumerator planes(f5, 4, 2);
  const auto plane_count = planes.count();
  const auto plane = max_isotropic_fp(reduced, 2);
  const bool oracle_ok = plane_count == 806 && plane && is_isotropic(reduced, *plane);
  const double secs = seconds_since(start);

  std::ostringstream detail;
  detail << "matrices " << (entries ? "match" : "DIFFER") << ", minor identity " << identity_ok
         << "/1000, greedy over Q max dim " << max_greedy << (greedy_verified ? " (verified)" : " (UNVERIFIED)")
         << ", F5 oracle " << (oracle_ok ? "found" : "did not find") << " a 2-dim isotropic subspace among "
         << plane_count.get_str() << " planes, time " << fmt_seconds(secs);
  return {entries && identity_ok == 1000 && max_greedy == 1 && greedy_verified && oracle_ok && secs < 10.0,
          detail.str()};
}

Outcome bounds_probe() {
  bool formulas = bound_s(4, 3) == 5 && bound_s(6, 2) == 5;
  std::size_t sweep = 0, sweep_ok = 0;
  for (std::size_t n = 2; n <= 10; ++n)
    for (std::size_t t = 2; t <= form_space_dim(n); ++t) {
      ++sweep;
      sweep_ok += bound_s(n, t) == bound_k(n, t) + t;
    }
  const std::vector<std::pair<std::size_t, std::size_t>> shapes{{4, 2}, {4, 3}, {5, 2}, {5, 3}, {6, 2}, {6, 3}};
  Rng rng(derive_seed(kMasterSeed, 400));
  std::size_t greedy_ok = 0;
  const std::size_t trials = 500;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto [n, t] = shapes[i % shapes.size()];
    const auto phi = random_tuple(n, t, 20, rng);
    const auto cert = greedy_isotropic(phi, rng.next(), 5);
    greedy_ok += cert.verified && cert.subspace.dim() >= (n + t) / (t + 1);
  }
  std::ostringstream detail;
  detail << "bound_s(4,3)=" << bound_s(4, 3) << " bound_s(6,2)=" << bound_s(6, 2) << ", shift identity " << sweep_ok
         << "/" << sweep << " pairs, greedy verified and >= ceil(n/(t+1)) in " << greedy_ok << "/" << trials;
  return {formulas && sweep_ok == sweep && greedy_ok == trials, detail.str()};
}

Outcome upper_bound_probe() {
  const PrimeField f3(3);
  Rng rng(derive_seed(kMasterSeed, 500));
  std::size_t clean = 0, examined = 0;
  std::ostringstream logged;
  bool certificates_ok = true;
  for (int trial = 0; trial < 100; ++trial) {
    const auto phi = reduce_mod(random_tuple(4, 3, 20, rng), f3);
    SubspaceEnumerator spaces(f3, 4, bound_k(4, 3) + 1);
    examined = spaces.count().get_ui();
    std::optional<Subspace<PrimeField>> witness;
    for_each_subspace(spaces, [&](const Subspace<PrimeField>& w) {
      if (!is_isotropic(phi, w)) return true;
      witness = w;
      return false;
    });
    if (!witness) {
      ++clean;
      continue;
    }
    certificates_ok = certificates_ok && is_isotropic(phi, *witness);
    logged << " [trial " << trial << " certificate " << witness->basis().to_string() << "]";
  }
  std::ostringstream detail;
  detail << "no isotropic 3-subspace mod 3 in " << clean << "/100 trials (" << examined
         << " subspaces of dimension 3 in F3^4 each)" << logged.str();
  return {clean >= 95 && certificates_ok, detail.str()};
}

Outcome ms_probe() {
  const auto start = std::chrono::steady_clock::now();
  // (3,3,2,1): every algebra qualifies
  Rng rng(derive_seed(kMasterSeed, 600));
  std::size_t guaranteed_ok = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const LieAlgebra2<RationalField> l(random_tuple(3, 3, 20, rng));
    const auto p = default_prime(l.forms());
    const auto lp = reduce_algebra(l, PrimeField(p));
    const auto res = ms_search_exhaustive(lp, 2, 1);
    guaranteed_ok += res.certificate && ms_certificate(lp, std::get<Subspace<PrimeField>>(*res.certificate), 2, 1);
  }
  // (4,1,2,1): nondegenerate single form mod 3 admits no certificate
  const PrimeField f3(3);
  std::size_t eligible = 0, clean = 0, drawn = 0, examined = 0;
  while (eligible < 100) {
    const auto phi = random_tuple(4, 1, 20, rng);
    ++drawn;
    const auto reduced = reduce_mod(phi, f3);
    if (is_zero(pfaffian(reduced[0].matrix()))) continue;
    ++eligible;
    const auto res = ms_search_exhaustive(LieAlgebra2<PrimeField>(reduced), 2, 1);
    examined = res.examined;
    clean += !res.certificate;
  }
  const auto th = ms_thresholds(4, 2, 1);
  const double secs = seconds_since(start);
  std::ostringstream detail;
  detail << "(3,3,2,1) certificate found and verified in " << guaranteed_ok << "/100; (4,1,2,1) no certificate in "
         << clean << "/" << eligible << " trials with Pfaffian nonzero mod 3 (" << drawn << " drawn, " << examined
         << " subspaces each, absence threshold " << th.generic_absence_below.get_str() << "), time "
         << fmt_seconds(secs);
  return {guaranteed_ok == 100 && clean == 100 && th.generic_absence_below == 2 && secs < 20.0, detail.str()};
}

Outcome grassmann_probe() {
  Rng rng(derive_seed(kMasterSeed, 700));
  std::size_t relations = 0, trips = 0;
  const std::size_t trials = 500;
  for (std::size_t i = 0; i < trials; ++i) {
    const std::size_t n = 4 + i % 3, k = 2 + (i / 3) % 2;
    Subspace<RationalField> u = Subspace<RationalField>::zero(Q, n);
    while (u.dim() != k) {
      Matrix<RationalField> m(Q, k, n);
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = rng.uniform(-9, 9);
      u = Subspace<RationalField>::span(m);
    }
    const auto p = plucker(u);
    const bool ok = check_plucker_relations(p);
    relations += ok;
    trips += ok && basis_from_plucker(p) == u;
  }
  std::ostringstream detail;
  detail << "relations " << relations << "/" << trials << ", round trip " << trips << "/" << trials
         << ", dim G(2,4) = " << dim_grassmannian(2, 4);
  return {relations == trials && trips == trials && dim_grassmannian(2, 4) == 4, detail.str()};
}

Outcome dimension_probe() {
  std::size_t rows = 0, additive = 0, equivalent = 0;
  for (std::size_t n = 2; n <= 8; ++n)
    for (std::size_t n0 = 2; n0 <= n; ++n0)
      for (std::size_t t0 = 1; t0 <= form_space_dim(n0); ++t0)
        for (std::size_t t = t0; t <= form_space_dim(n); ++t) {
          if (t + form_space_dim(n0) > form_space_dim(n) + t0) continue;  // outside the fiber formula's range
          ++rows;
          const auto d = variety_d_dim(n, n0, t, t0), f = fiber_dim(n, n0, t, t0);
          additive += d - f == (n - n0) * n0;
          const bool smaller = d < dim_grassmannian(t, form_space_dim(n));
          const bool below = Rational(static_cast<long>(t)) < ms_thresholds(n, n0, t0).generic_absence_below;
          equivalent += smaller == below;
        }
  std::ostringstream detail;
  detail << "additivity " << additive << "/" << rows << ", dim D < dim G(t,B_n) iff below absence threshold "
         << equivalent << "/" << rows;
  return {additive == rows && equivalent == rows, detail.str()};
}

Outcome group_probe() {
  const auto start = std::chrono::steady_clock::now();
  std::ostringstream detail;
  bool pass = true;
  for (int which = 0; which < 2; ++which) {
    ExperimentConfig cfg;
    cfg.kind = ExperimentKind::GroupCheck;
    cfg.trials = 1000;
    cfg.bound = 9;
    cfg.seed = derive_seed(kMasterSeed, 800 + which);
    if (which == 1) cfg.input = random_tuple(4, 2, 5, derive_seed(kMasterSeed, 810));
    const auto rep = run_group_check(cfg);
    detail << (which == 0 ? "Heisenberg:" : " (4,2):");
    for (const auto& [key, value] : rep.aggregates.items())
      if (key != "trials") detail << " " << key << " " << value.dump() << "/1000";
    pass = pass && rep.consistent;
  }
  const double secs = seconds_since(start);
  detail << ", time " << fmt_seconds(secs);
  return {pass && secs < 10.0, detail.str()};
}

Outcome determinism_probe() {
  std::vector<ExperimentConfig> cfgs;
  const auto add = [&](ExperimentKind kind, std::size_t n, std::size_t t, std::size_t trials) {
    ExperimentConfig c;
    c.kind = kind;
    c.n = n;
    c.t = t;
    c.trials = trials;
    c.seed = kMasterSeed;
    cfgs.push_back(c);
    return &cfgs.back();
  };
  add(ExperimentKind::Center, 5, 2, 100);
  add(ExperimentKind::Abelian, 4, 3, 40)->prime = 3;
  auto* ms = add(ExperimentKind::Ms, 4, 1, 60);
  ms->n0 = 2;
  ms->t0 = 1;
  ms = add(ExperimentKind::Ms, 3, 3, 20);
  ms->n0 = 2;
  ms->t0 = 1;
  ms->strategy = "randomized-q";
  add(ExperimentKind::Plucker, 6, 0, 60)->k = 3;
  add(ExperimentKind::GroupCheck, 0, 0, 100);
  add(ExperimentKind::Quaternion, 4, 3, 50);
  std::size_t identical = 0;
  for (auto c : cfgs) {
    c.threads = 1;
    const auto first = run_experiment(c).to_json().dump();
    const auto second = run_experiment(c).to_json().dump();
    c.threads = 6;
    const auto parallel = run_experiment(c).to_json().dump();
    identical += first == second && first == parallel;
  }
  std::ostringstream detail;
  detail << identical << "/" << cfgs.size() << " experiment configs byte-identical across repeat and 6-thread runs";
  return {identical == cfgs.size(), detail.str()};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{center_probe,        derived_probe,   quaternion_probe,
                                                       bounds_probe,        upper_bound_probe, ms_probe,
                                                       grassmann_probe,     dimension_probe, group_probe,
                                                       determinism_probe};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("criterion %zu: %s (%s)\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
