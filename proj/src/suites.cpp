#include "maslovflow/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "maslovflow/gap_diagnostic.hpp"
#include "maslovflow/random.hpp"
#include "maslovflow/sweep.hpp"

namespace mf {

bool SuiteResult::pass() const { return failures() == 0; }

int SuiteResult::failures() const {
  return static_cast<int>(std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return !c.pass; }));
}

std::vector<const CaseResult*> SuiteResult::group(const std::string& prefix) const {
  std::vector<const CaseResult*> out;
  for (const auto& c : cases)
    if (c.label.rfind(prefix, 0) == 0) out.push_back(&c);
  return out;
}

bool SuiteResult::group_pass(const std::string& prefix) const {
  const auto g = group(prefix);
  return !g.empty() && std::all_of(g.begin(), g.end(), [](const CaseResult* c) { return c->pass; });
}

MaslovOptions SuiteOptions::maslov() const {
  MaslovOptions m;
  m.tol = tol;
  m.max_depth = max_depth;
  m.base_intervals = base_intervals;
  return m;
}

SpectralFlowOptions SuiteOptions::flow() const {
  SpectralFlowOptions f;
  f.base_intervals = base_intervals;
  f.max_depth = max_depth;
  f.exec = exec;
  return f;
}

HamiltonianOptions SuiteOptions::hamiltonian() const {
  HamiltonianOptions h;
  h.steps = steps;
  h.maslov = maslov();
  h.flow = flow();
  return h;
}

SuiteOptions suite_options(const ProblemConfig& c) {
  SuiteOptions o;
  o.seed = c.seed;
  o.instances = c.settings.instances;
  o.steps = c.settings.steps;
  o.tol = c.settings.tol;
  o.max_depth = c.settings.max_depth;
  o.base_intervals = c.settings.base_intervals;
  return o;
}

std::optional<UserInstance> user_instance(const ProblemConfig& c) {
  if (!c.has_pair()) return std::nullopt;
  UserInstance u{c.path1(), c.path2(), c.family(), std::nullopt, std::nullopt};
  if (c.alpha) {
    u.alpha = c.alpha_function();
    u.beta = c.beta_function();
  }
  return u;
}

namespace {

int count_or(const SuiteOptions& o, int fallback) { return o.instances > 0 ? o.instances : fallback; }

// Runs `body`, turning exceptions into failed cases.
void run_case(SuiteResult& r, const std::string& label, const std::function<CaseResult()>& body) {
  CaseResult c;
  try {
    c = body();
  } catch (const std::exception& e) {
    c.pass = false;
    c.detail = {{"error", e.what()}};
  }
  c.label = label;
  r.cases.push_back(std::move(c));
}

std::string indexed(const std::string& prefix, int k) { return prefix + "/" + std::to_string(k); }

CaseResult identity_case(const IdentityCheck& id) {
  CaseResult c;
  c.pass = id.pass();
  c.detail["lhs"] = id.lhs;
  c.detail["rhs"] = id.rhs;
  Json terms = Json::object();
  for (const auto& [name, v] : id.terms) terms[name] = v;
  c.detail["terms"] = terms;
  if (!id.notes.empty()) c.detail["notes"] = id.notes;
  return c;
}

PathPair mixed_pair(int k, Rng& rng, int n) {
  return k % 3 == 2 ? random_nonadmissible_pair(n, rng) : random_admissible_pair(n, rng);
}

int dim_for(int k) { return 1 + k % 2; }

// Random path of symplectic matrices with A(0) = I.
LagrangianPath::MatrixFunction random_symplectic_path(int n, Rng& rng) {
  const Mat k1 = random_symmetric(2 * n, rng, uniform(rng, 0.3, 1.2));
  const Mat k2 = random_symmetric(2 * n, rng, uniform(rng, 0.3, 1.2));
  const double a = uniform(rng, -2.0, 2.0), b = uniform(rng, -2.0, 2.0);
  return [k1, k2, a, b](double l) { return Mat(symplectic_exponential(k1, a * l) * symplectic_exponential(k2, b * l * l)); };
}

// Random alpha with alpha(1) = 0 and 0 <= alpha <= 1 - lambda; beta = alpha + lambda.
std::pair<PiecewiseLinear, PiecewiseLinear> random_alpha_beta(Rng& rng) {
  std::vector<double> xs{0.0, 1.0};
  const int inner = uniform_int(rng, 0, 3);
  for (int i = 0; i < inner; ++i) xs.push_back(uniform(rng, 0.05, 0.95));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end(), [](double a, double b) { return b - a < 1e-3; }), xs.end());
  xs.back() = 1.0;
  std::vector<std::pair<double, double>> a, b;
  for (double x : xs) {
    const double v = x >= 1.0 ? 0.0 : uniform(rng, 0.0, 1.0) * (1.0 - x);
    a.emplace_back(x, v);
    b.emplace_back(x, v + x);
  }
  return {PiecewiseLinear(a), PiecewiseLinear(b)};
}

Json window_json(const SpectrumWindow& w) {
  Json ev = Json::array();
  for (const auto& e : w.eigenvalues) ev.push_back({{"mu", e.mu}, {"multiplicity", e.multiplicity}});
  return {{"lambda", w.lambda}, {"mu_min", w.mu_min}, {"mu_max", w.mu_max}, {"eigenvalues", ev}};
}

LagrangianPath horizontal(int n) { return LagrangianPath::constant(LagrangianFrame::horizontal(n)); }
LagrangianPath vertical(int n) { return LagrangianPath::constant(LagrangianFrame::vertical(n)); }

}  // namespace

SuiteResult suite_clm(const SuiteOptions& o, const std::optional<UserInstance>& user) {
  SuiteResult r{"clm", {}};
  auto check = [&](const LagrangianPath& g1, const LagrangianPath& g2) {
    CaseResult c;
    const int sfl = spectral_flow(BoundaryValueFamily(g1, g2, {}, 0.0, o.steps), o.flow()).value;
    const int mas = maslov_pair(g1, g2, o.maslov());
    c.pass = sfl == mas;
    c.detail = {{"sfl", sfl}, {"maslov", mas}, {"admissible", is_admissible(g1, g2, o.tol)}, {"n", g1.n()}};
    return c;
  };
  if (user) run_case(r, "config", [&] { return check(user->gamma1, user->gamma2); });
  const int count = count_or(o, 25);
  for (int k = 0; k < count; ++k)
    run_case(r, indexed("random", k), [&] {
      Rng rng = instance_rng(o.seed, k);
      const PathPair p = mixed_pair(k, rng, dim_for(k));
      return check(p.first, p.second);
    });
  return r;
}

SuiteResult suite_hamiltonian(const SuiteOptions& o, const std::optional<UserInstance>& user) {
  SuiteResult r{"hamiltonian", {}};
  const HamiltonianOptions h = o.hamiltonian();
  if (user) run_case(r, "config", [&] { return identity_case(clm_hamiltonian(user->s, user->gamma1, user->gamma2, h)); });
  run_case(r, "constant-shift", [&] {
    const SymmetricFamily s = SymmetricFamily::constant(0.4 * Mat::Identity(2, 2));
    return identity_case(clm_hamiltonian(s, LagrangianPath::gamma_nor(1), vertical(1), h));
  });
  const int count = count_or(o, 25);
  for (int k = 0; k < count; ++k)
    run_case(r, indexed("random", k), [&] {
      Rng rng = instance_rng(o.seed + 101, k);
      const int n = dim_for(k);
      const PathPair p = mixed_pair(k, rng, n);
      return identity_case(clm_hamiltonian(random_symmetric_family(n, rng, 2, 3.0), p.first, p.second, h));
    });
  return r;
}

SuiteResult suite_three_term(const SuiteOptions& o, const std::optional<UserInstance>& user) {
  SuiteResult r{"three-term", {}};
  const HamiltonianOptions h = o.hamiltonian();
  if (user)
    run_case(r, "config", [&] { return identity_case(three_term_identity(user->s, user->gamma1, user->gamma2, h)); });
  const int count = count_or(o, 25);
  for (int k = 0; k < count; ++k)
    run_case(r, indexed("random", k), [&] {
      Rng rng = instance_rng(o.seed + 202, k);
      const int n = dim_for(k);
      const PathPair p = mixed_pair(k, rng, n);
      return identity_case(three_term_identity(random_symmetric_family(n, rng, 2, 3.0), p.first, p.second, h));
    });
  // S independent of lambda and closed boundary paths: sfl = maslov(gamma1, gamma2).
  for (int k = 0; k < 5; ++k)
    run_case(r, indexed("closed", k), [&] {
      Rng rng = instance_rng(o.seed + 303, k);
      const int n = dim_for(k);
      auto closed = [&](Rng& g) {
        std::vector<PiecewiseLinear> phases;
        for (int j = 0; j < n; ++j) {
          const double start = uniform(g, -2.0, 2.0);
          const double mid = uniform(g, -3.0, 3.0);
          phases.emplace_back(std::vector<std::pair<double, double>>{
              {0.0, start}, {uniform(g, 0.2, 0.8), mid}, {1.0, start + kPi * uniform_int(g, -2, 2)}});
        }
        return LagrangianPath::unitary_diagonal(std::move(phases));
      };
      const Mat m = random_symplectic(n, rng, 0.6);
      const LagrangianPath g1 = closed(rng);
      const LagrangianPath g2 = LagrangianPath::symplectic_action([m](double) { return m; }, closed(rng), "fixed");
      SymmetricFamily s = random_symmetric_family(n, rng, 2, 3.0);
      std::vector<SymmetricFamily::Term> terms = s.terms();
      for (auto& t : terms) t.lambda_power = 0;
      s = SymmetricFamily(n, terms);
      const IdentityCheck id = three_term_identity(s, g1, g2, h);
      CaseResult c = identity_case(id);
      const int middle = maslov_pair(g1, g2, o.maslov());
      c.detail["maslov(gamma1, gamma2)"] = middle;
      c.pass = id.pass() && id.lhs == middle;
      return c;
    });
  return r;
}

SuiteResult suite_alpha_beta(const SuiteOptions& o, const std::optional<UserInstance>& user) {
  SuiteResult r{"alpha-beta", {}};
  const HamiltonianOptions h = o.hamiltonian();
  if (user && user->alpha)
    run_case(r, "config", [&] {
      return identity_case(alpha_beta_identity(user->s, user->gamma1, user->gamma2, *user->alpha, *user->beta, h));
    });
  run_case(r, "alpha-zero", [&] {
    Rng rng = instance_rng(o.seed + 404, 0);
    const PathPair p = random_admissible_pair(1, rng);
    const SymmetricFamily s = random_symmetric_family(1, rng, 2, 3.0);
    CaseResult c = identity_case(
        alpha_beta_identity(s, p.first, p.second, PiecewiseLinear::constant(0.0), PiecewiseLinear::linear(0.0, 1.0), h));
    const IdentityCheck t = three_term_identity(s, p.first, p.second, h);
    c.detail["three_term_rhs"] = t.rhs;
    c.pass = c.pass && t.rhs == c.detail["rhs"].get<int>();
    return c;
  });
  const int count = count_or(o, 25);
  for (int k = 0; k < count; ++k)
    run_case(r, indexed("random", k), [&] {
      Rng rng = instance_rng(o.seed + 505, k);
      const int n = dim_for(k);
      const PathPair p = mixed_pair(k, rng, n);
      const SymmetricFamily s = random_symmetric_family(n, rng, 2, 3.0);
      const auto [alpha, beta] = k % 5 == 0 ? std::make_pair(PiecewiseLinear::linear(0.5, 0.0), PiecewiseLinear::linear(0.5, 1.0))
                                            : random_alpha_beta(rng);
      return identity_case(alpha_beta_identity(s, p.first, p.second, alpha, beta, h));
    });
  return r;
}

SuiteResult suite_morse(const SuiteOptions& o, const std::optional<UserInstance>& user) {
  SuiteResult r{"morse", {}};
  const HamiltonianOptions h = o.hamiltonian();
  if (user && !user->s.is_zero()) run_case(r, "config", [&] { return identity_case(morse_index_formula(user->s, h)); });
  run_case(r, "zero", [&] { return identity_case(morse_index_formula(SymmetricFamily::zero(1), h)); });
  std::vector<int> values;
  for (double c : {5.0, 15.0, 30.0})
    run_case(r, "dirichlet/c=" + std::to_string(static_cast<int>(c)), [&] {
      const SymmetricFamily s(1, {{1, 0, c * Mat::Identity(2, 2)}});
      CaseResult cr = identity_case(morse_index_formula(s, h));
      // sigma(A_lambda) = sigma(A_0) + lambda c, so the flow counts sigma(A_0) in [-c, 0).
      const BoundaryValueFamily free(vertical(1), vertical(1));
      const SpectrumWindow w = spectrum_window_nudged(free, 0.0, -c, -0.25);
      const int oracle = w.count_in(-c, -0.25);
      cr.detail["scan_oracle"] = oracle;
      cr.detail["c"] = c;
      cr.pass = cr.pass && cr.detail["lhs"].get<int>() == oracle;
      values.push_back(cr.detail["lhs"].get<int>());
      return cr;
    });
  run_case(r, "dirichlet/monotone", [&] {
    CaseResult c;
    c.detail["values"] = values;
    bool nondecreasing = values.size() == 3;
    bool jump = false;
    for (std::size_t i = 1; i < values.size(); ++i) {
      nondecreasing = nondecreasing && values[i] >= values[i - 1];
      jump = jump || values[i] - values[i - 1] >= 1;
    }
    c.pass = nondecreasing && jump;
    return c;
  });
  const int count = count_or(o, 5);
  for (int k = 0; k < count; ++k)
    run_case(r, indexed("random", k), [&] {
      Rng rng = instance_rng(o.seed + 606, k);
      return identity_case(morse_index_formula(random_symmetric_family(dim_for(k), rng, 1, 3.0), h));
    });
  return r;
}

SuiteResult suite_axioms(const SuiteOptions& o) {
  SuiteResult r{"axioms", {}};
  const MaslovOptions m = o.maslov();
  const int count = count_or(o, 50);
  auto int_case = [](bool pass, Json detail) {
    CaseResult c;
    c.pass = pass;
    c.detail = std::move(detail);
    return c;
  };

  for (int n = 1; n <= 3; ++n)
    run_case(r, indexed("normalization", n), [&] {
      const int a = maslov_pair(LagrangianPath::gamma_nor(n), vertical(n), m);
      const int b = maslov_pair(horizontal(n), LagrangianPath::gamma_nor_prime(n), m);
      return int_case(a == 1 && b == -1, {{"gamma_nor_vs_vertical", a}, {"horizontal_vs_gamma_nor_prime", b}});
    });

  for (int k = 0; k < count; ++k) {
    run_case(r, indexed("transversal", k), [&] {
      Rng rng = instance_rng(o.seed + 1001, k);
      const PathPair p = random_transversal_pair(dim_for(k), rng);
      const int v = maslov_pair(p.first, p.second, m);
      return int_case(v == 0, {{"maslov", v}});
    });
    run_case(r, indexed("concatenation", k), [&] {
      Rng rng = instance_rng(o.seed + 1002, k);
      const int n = dim_for(k);
      const PathPair p = mixed_pair(k, rng, n);
      const LagrangianPath g3 = LagrangianPath::symplectic_action(random_symplectic_path(n, rng),
                                                                  LagrangianPath::constant(p.first(1.0)), "tail");
      const LagrangianPath g4 = k % 4 == 0 ? LagrangianPath::constant(p.second(1.0))
                                           : LagrangianPath::symplectic_action(random_symplectic_path(n, rng),
                                                                               LagrangianPath::constant(p.second(1.0)),
                                                                               "tail");
      const int a = maslov_pair(p.first, p.second, m);
      const int b = maslov_pair(g3, g4, m);
      const int joined =
          maslov_pair(LagrangianPath::concat({p.first, g3}), LagrangianPath::concat({p.second, g4}), m);
      return int_case(joined == a + b, {{"first", a}, {"second", b}, {"concatenated", joined}});
    });
    run_case(r, indexed("antisymmetry", k), [&] {
      Rng rng = instance_rng(o.seed + 1003, k);
      const PathPair p = random_admissible_pair(dim_for(k), rng);
      const int a = maslov_pair(p.first, p.second, m);
      const int b = maslov_pair(p.second, p.first, m);
      return int_case(a == -b, {{"forward", a}, {"swapped", b}});
    });
    run_case(r, indexed("symplectic-invariance", k), [&] {
      Rng rng = instance_rng(o.seed + 1004, k);
      const int n = dim_for(k);
      const PathPair p = mixed_pair(k, rng, n);
      const auto psi = random_symplectic_path(n, rng);
      const int a = maslov_pair(p.first, p.second, m);
      const int b = maslov_pair(LagrangianPath::symplectic_action(psi, p.first, "psi"),
                                LagrangianPath::symplectic_action(psi, p.second, "psi"), m);
      return int_case(a == b, {{"original", a}, {"transformed", b}});
    });
    run_case(r, indexed("reversal", k), [&] {
      Rng rng = instance_rng(o.seed + 1005, k);
      const PathPair p = mixed_pair(k, rng, dim_for(k));
      const int a = maslov_pair(p.first, p.second, m);
      const int b = maslov_pair(p.first.reversed(), p.second.reversed(), m);
      return int_case(a == -b, {{"forward", a}, {"reversed", b}});
    });
    run_case(r, indexed("reparametrization", k), [&] {
      Rng rng = instance_rng(o.seed + 1006, k);
      const PathPair p = mixed_pair(k, rng, dim_for(k));
      const PiecewiseLinear map = random_reparametrization(rng);
      const int a = maslov_pair(p.first, p.second, m);
      const int b = maslov_pair(LagrangianPath::reparametrize(p.first, map),
                                LagrangianPath::reparametrize(p.second, map), m);
      return int_case(a == b, {{"original", a}, {"reparametrized", b}});
    });
    run_case(r, indexed("regularization", k), [&] {
      Rng rng = instance_rng(o.seed + 1007, k);
      const PathPair p = random_admissible_pair(dim_for(k), rng);
      const double theta = perturbation_theta(p.first, p.second, m);
      const int plain = maslov_pair_regularized(p.first, p.second, 0.0, m);
      const int reg = maslov_pair_regularized(p.first, p.second, theta, m);
      const int half = maslov_pair_regularized(p.first, p.second, theta / 2, m);
      return int_case(plain == reg && reg == half,
                      {{"theta", theta}, {"unregularized", plain}, {"regularized", reg}, {"half_theta", half}});
    });
  }
  return r;
}

SuiteResult suite_gap(const SuiteOptions& o) {
  SuiteResult r{"gap", {}};
  const int count = count_or(o, 100);
  const SpectralFlowOptions flow = o.flow();

  for (int k = 0; k < count; ++k) {
    run_case(r, indexed("max-formula", k), [&] {
      Rng rng = instance_rng(o.seed + 2001, k);
      auto draw = [&]() -> std::pair<Subspace, Subspace> {
        if (k % 2 == 0) {
          const int n = 1 + k % 4;
          return {random_frame(n, rng).subspace(), random_frame(n, rng).subspace()};
        }
        const int amb = uniform_int(rng, 2, 8);
        const int dim = uniform_int(rng, 1, amb - 1);
        return {Subspace::from_basis(random_orthogonal(amb, rng).leftCols(dim)),
                Subspace::from_basis(random_orthogonal(amb, rng).leftCols(dim))};
      };
      const auto [u, v] = draw();
      const double g = gap_distance(u, v);
      const double d = std::max(directed_gap(u, v), directed_gap(v, u));
      CaseResult c;
      c.pass = std::abs(g - d) <= 1e-12;
      c.detail = {{"gap", g}, {"max_directed", d}, {"difference", std::abs(g - d)}};
      return c;
    });
    run_case(r, indexed("kato", k), [&] {
      Rng rng = instance_rng(o.seed + 2002, k);
      const int n = 1 + k % 3;
      const LagrangianFrame l1 = random_frame(n, rng);
      const LagrangianFrame l2 = apply_symplectic(SymplecticMatrix(random_symplectic(n, rng, uniform(rng, 0.01, 0.5))), l1);
      const KatoReport rep = kato_projection_identity_check(l1.projector(), l2.projector());
      CaseResult c;
      c.pass = rep.hypothesis_met && rep.identity_holds;
      c.detail = {{"norm_complement_p_q", rep.norm_complement_p_q},
                  {"norm_complement_q_p", rep.norm_complement_q_p},
                  {"norm_difference", rep.norm_difference},
                  {"hypothesis_met", rep.hypothesis_met}};
      return c;
    });
  }

  // Families for the shift checks.
  std::vector<std::pair<std::string, BoundaryValueFamily>> families;
  families.emplace_back("gamma_nor-vertical-n1", BoundaryValueFamily(LagrangianPath::gamma_nor(1), vertical(1)));
  families.emplace_back("gamma_nor-vertical-n2", BoundaryValueFamily(LagrangianPath::gamma_nor(2), vertical(2)));
  families.emplace_back("horizontal-gamma_nor_prime-n1",
                        BoundaryValueFamily(horizontal(1), LagrangianPath::gamma_nor_prime(1)));
  for (int k = 0; k < 3; ++k) {
    Rng rng = instance_rng(o.seed + 2003, k);
    const int n = dim_for(k);
    const PathPair p = random_admissible_pair(n, rng);
    families.emplace_back("random-" + std::to_string(k),
                          BoundaryValueFamily(p.first, p.second, random_symmetric_family(n, rng, 2, 3.0), 0.0, o.steps));
  }

  for (const auto& [name, fam] : families) {
    for (double delta : {0.1, 0.01, 0.001})
      run_case(r, "spectrum-shift/" + name + "/delta=" + std::to_string(delta), [&, fam = fam] {
        CaseResult c;
        c.pass = true;
        double worst = 0.0;
        Json windows = Json::array();
        for (double l : {0.0, 0.3, 0.7, 1.0}) {
          const SpectrumWindow w0 = spectrum_window_nudged(fam, l, -2.5, 2.5);
          const SpectrumWindow w1 = spectrum_window(fam.with_shift(fam.shift() + delta), l, w0.mu_min + delta,
                                                    w0.mu_max + delta);
          if (w0.eigenvalues.size() != w1.eigenvalues.size()) {
            c.pass = false;
            windows.push_back({{"unshifted", window_json(w0)}, {"shifted", window_json(w1)}});
            continue;
          }
          for (std::size_t i = 0; i < w0.eigenvalues.size(); ++i) {
            worst = std::max(worst, std::abs(w1.eigenvalues[i].mu - w0.eigenvalues[i].mu - delta));
            if (w1.eigenvalues[i].multiplicity != w0.eigenvalues[i].multiplicity) c.pass = false;
          }
        }
        c.pass = c.pass && worst <= 1e-7;
        c.detail = {{"max_deviation", worst}};
        if (!windows.empty()) c.detail["mismatched_windows"] = windows;
        return c;
      });
    run_case(r, "flow-shift/" + name, [&, fam = fam] {
      CaseResult c;
      const int base = spectral_flow(fam, flow).value;
      c.pass = true;
      c.detail["sfl"] = base;
      Json ladder = Json::array();
      for (double delta : {0.1, 0.01, 0.001}) {
        try {
          const int v = spectral_flow_shifted(fam, delta, flow);
          ladder.push_back({{"delta", delta}, {"sfl", v}});
          c.pass = c.pass && v == base;
        } catch (const Error& e) {
          ladder.push_back({{"delta", delta}, {"skipped", e.what()}});
        }
      }
      c.detail["ladder"] = ladder;
      return c;
    });
  }

  const std::vector<double> lambdas{0.0, 0.25, 0.5, 0.75, 1.0};
  for (double d0 : {0.05, 0.1}) {
    const std::vector<std::pair<std::string, std::pair<LagrangianPath, LagrangianPath>>> pairs{
        {"gamma_nor-vertical", {LagrangianPath::gamma_nor(1), vertical(1)}},
        {"horizontal-vertical", {horizontal(1), vertical(1)}},
        {"gamma_nor-vertical-n2", {LagrangianPath::gamma_nor(2), vertical(2)}}};
    for (const auto& [name, pr] : pairs)
      run_case(r, "conjugation/" + name + "/delta0=" + std::to_string(d0), [&, pr = pr] {
        const ConjugationReport rep = conjugation_spectrum_check(pr.first, pr.second, d0, lambdas, -3.0, 3.0, flow);
        CaseResult c;
        c.pass = rep.pass;
        c.detail = {{"max_mismatch", rep.max_mismatch},
                    {"spectra_match", rep.spectra_match},
                    {"sfl_shifted", rep.sfl_shifted},
                    {"sfl_rotated", rep.sfl_rotated}};
        if (!rep.spectra_match) {
          Json a = Json::array(), b = Json::array();
          for (const auto& w : rep.shifted) a.push_back(window_json(w));
          for (const auto& w : rep.rotated) b.push_back(window_json(w));
          c.detail["shifted"] = a;
          c.detail["rotated"] = b;
        }
        return c;
      });
  }

  run_case(r, "discretized/gamma_nor-vertical", [&] {
    const BoundaryValueFamily fam(LagrangianPath::gamma_nor(1), vertical(1));
    const GapDiagnosticReport rep = discretized_gap_diagnostic(fam, 0.0, {0.02, 0.01, 0.005}, 64);
    CaseResult c;
    c.pass = rep.pass();
    Json s = Json::array();
    for (const auto& g : rep.samples)
      s.push_back({{"lambda", g.lambda}, {"graph_gap", g.graph_gap}, {"boundary_distance", g.boundary_distance},
                   {"ratio", g.ratio}});
    c.detail = {{"samples", s}, {"max_ratio", rep.max_ratio}, {"monotone", rep.monotone}};
    return c;
  });
  run_case(r, "discretized/potential-only", [&] {
    // Fixed boundary conditions: the boundary distance vanishes, so only the gap is reported.
    const SymmetricFamily s(1, {{1, 0, Mat::Identity(2, 2)}});
    const BoundaryValueFamily fam(horizontal(1), vertical(1), s);
    const GapDiagnosticReport rep = discretized_gap_diagnostic(fam, 0.0, {0.02, 0.01, 0.005}, 64);
    CaseResult c;
    c.pass = true;
    Json g = Json::array();
    for (const auto& x : rep.samples) g.push_back({{"lambda", x.lambda}, {"graph_gap", x.graph_gap}});
    c.detail = {{"samples", g}, {"monotone", rep.monotone}, {"asserted", false}};
    return c;
  });
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"clm", "hamiltonian", "three-term", "alpha-beta",
                                              "morse", "axioms", "gap"};
  return names;
}

SuiteResult run_suite(const std::string& which, const SuiteOptions& o, const std::optional<UserInstance>& user) {
  if (which == "clm") return suite_clm(o, user);
  if (which == "hamiltonian") return suite_hamiltonian(o, user);
  if (which == "three-term") return suite_three_term(o, user);
  if (which == "alpha-beta") return suite_alpha_beta(o, user);
  if (which == "morse") return suite_morse(o, user);
  if (which == "axioms") return suite_axioms(o);
  if (which == "gap") return suite_gap(o);
  throw Error("unknown verification suite '" + which + "'");
}

}  // namespace mf
