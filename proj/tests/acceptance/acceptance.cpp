// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "efh/bredon.hpp"
#include "efh/cli.hpp"
#include "efh/error.hpp"
#include "efh/facthom1d.hpp"
#include "efh/inertia.hpp"
#include "efh/resolutions.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

using namespace efh;

namespace {

using Betti = std::vector<std::size_t>;

const Field Q = Field::rationals();

/// Collects failed checks for one criterion.
struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string show(const Betti& b) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < b.size(); ++i) out << (i ? "," : "") << b[i];
  out << ")";
  return out.str();
}

Betti head(const Betti& b, std::size_t n) { return Betti(b.begin(), b.begin() + static_cast<long>(std::min(n, b.size()))); }

// ---- shared instances -------------------------------------------------------------

struct Pair {
  std::string name;
  AlgebraTwist phi;
};

std::vector<Pair> five_pairs() {
  const Algebra k = Algebra::ground();
  const Algebra g = Algebra::group_algebra(FiniteGroup::cyclic(2));
  const Algebra qq = Algebra::product({k, k});
  const Algebra m2 = Algebra::matrix_algebra(2);
  const Algebra d = Algebra::truncated_polynomial(2);
  return {{"(Q, id)", AlgebraTwist::identity(k)},
          {"(Q[Z2], id)", AlgebraTwist::identity(g)},
          {"(QxQ, swap)", AlgebraTwist::swap_factors(qq)},
          {"(M2(Q), conj diag(1,-1))", AlgebraTwist::conjugation(m2, 2, Matrix::from_rows({{1, 0}, {0, -1}}))},
          {"(Q[x]/x^2, id)", AlgebraTwist::identity(d)}};
}

BettiVector hochschild_betti(const AlgebraTwist& phi, int cap, bool normalized = true) {
  const Algebra& a = phi.algebra();
  return homology(hochschild_complex({a, twisted_diagonal_bimodule(a, phi), cap, normalized}));
}

// HH_0 of A_phi as A / span{a m - m phi(a)} over basis pairs.
std::size_t hh0_quotient(const AlgebraTwist& phi) {
  const Algebra& a = phi.algebra();
  std::vector<Vector> cols;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      const Vector l = a.multiply(a.basis_vector(i), a.basis_vector(j));
      const Vector r = a.multiply(a.basis_vector(j), phi.apply(a.basis_vector(i)));
      Vector diff(a.dim());
      for (std::size_t k = 0; k < a.dim(); ++k) diff[k] = a.field().sub(l[k], r[k]);
      cols.push_back(diff);
    }
  }
  return a.dim() - rank(Matrix::from_column_vectors(a.dim(), cols, a.field()));
}

std::mt19937_64& rng() {
  static std::mt19937_64 gen(7031);
  return gen;
}

long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng()); }

Matrix diagonal(const std::vector<long>& d) {
  std::vector<std::vector<Rational>> rows(d.size(), std::vector<Rational>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) rows[i][i] = Rational(d[i]);
  return Matrix::from_rows(rows);
}

Matrix permutation(const std::vector<std::size_t>& p) {
  std::vector<std::vector<Rational>> rows(p.size(), std::vector<Rational>(p.size()));
  for (std::size_t j = 0; j < p.size(); ++j) rows[p[j]][j] = Rational(1);
  return Matrix::from_rows(rows);
}

/// Small algebras (dim <= 3) with the involutive automorphisms they carry.
std::vector<AlgebraTwist> involution_catalogue() {
  std::vector<AlgebraTwist> out;
  const Algebra k = Algebra::ground();
  const Algebra qq = Algebra::product({k, k});
  const Algebra qqq = Algebra::product({k, k, k});
  const Algebra d2 = Algebra::truncated_polynomial(2);
  const Algebra d3 = Algebra::truncated_polynomial(3);
  const Algebra z2 = Algebra::group_algebra(FiniteGroup::cyclic(2));
  const Algebra z3 = Algebra::group_algebra(FiniteGroup::cyclic(3));
  const Algebra t2 = Algebra::upper_triangular(2);
  const Algebra qd = Algebra::product({k, d2});
  const auto add = [&](const Algebra& a, const Matrix& m) { out.emplace_back(a, m, TwistKind::kAutomorphism); };
  for (const Algebra& a : {k, qq, qqq, d2, d3, z2, z3, t2, qd}) out.push_back(AlgebraTwist::identity(a));
  out.push_back(AlgebraTwist::swap_factors(qq));
  add(qqq, permutation({1, 0, 2}));
  add(qqq, permutation({2, 1, 0}));
  add(qqq, permutation({0, 2, 1}));
  out.push_back(AlgebraTwist::negate_variable(d2));
  out.push_back(AlgebraTwist::negate_variable(d3));
  add(z2, diagonal({1, -1}));
  out.push_back(AlgebraTwist::group_automorphism(z3, FiniteGroup::cyclic(3), {0, 2, 1}));
  add(t2, diagonal({1, -1, 1}));
  add(qd, diagonal({1, 1, -1}));
  return out;
}

Matrix random_invertible(std::size_t n) {
  for (;;) {
    std::vector<std::vector<Rational>> rows(n, std::vector<Rational>(n));
    for (auto& r : rows) {
      for (auto& x : r) x = Rational(uniform(-2, 2));
    }
    Matrix p = Matrix::from_rows(rows);
    if (rank(p) == n && !(p == Matrix::identity(n, Q))) return p;
  }
}

/// 20 random (algebra, involution) pairs moved to a random basis.
std::vector<AlgebraTwist> random_involutions() {
  const auto catalogue = involution_catalogue();
  std::vector<AlgebraTwist> out;
  while (out.size() < 20) {
    const AlgebraTwist& base = catalogue[static_cast<std::size_t>(uniform(0, static_cast<long>(catalogue.size()) - 1))];
    const Matrix p = random_invertible(base.algebra().dim());
    AlgebraTwist moved = change_basis(base, p);
    if (!(moved.matrix() * moved.matrix() == Matrix::identity(moved.algebra().dim(), Q))) continue;
    out.push_back(std::move(moved));
  }
  return out;
}

// ---- criteria -----------------------------------------------------------------------------

void criterion_1(Check& c) {
  for (const auto& [name, phi] : five_pairs()) {
    const DiskAlgebra1D d = DiskAlgebra1D::smooth(phi.algebra(), phi);
    const Betti excision = evaluate(OrbifoldCircle::rotation(), d, 4).betti.trusted();
    const Betti direct = hochschild_betti(phi, 4).trusted();
    c.expect(excision.size() == 4, name + ": expected degrees 0..3");
    c.expect(excision == direct, name + ": excision " + show(excision) + " vs Hochschild " + show(direct));
    c.expect(!direct.empty() && direct[0] == hh0_quotient(phi), name + ": HH_0 differs from the quotient oracle");
    if (name == "(Q[Z2], id)") c.expect(head(excision, 3) == Betti{2, 0, 0}, name + ": expected (2,0,0)");
    if (name == "(QxQ, swap)") c.expect(head(excision, 3) == Betti{0, 0, 0}, name + ": expected (0,0,0)");
  }
}

void criterion_2(Check& c) {
  std::vector<AlgebraTwist> all;
  for (const auto& p : five_pairs()) all.push_back(p.phi);
  const auto randoms = random_involutions();
  all.insert(all.end(), randoms.begin(), randoms.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    const AlgebraTwist& phi = all[i];
    const std::size_t betti0 = hochschild_betti(phi, 1).at(0);
    const std::size_t left = twisted_traces(phi.algebra(), phi, TraceConvention::kPhiLeft).size();
    const std::size_t right = twisted_traces(phi.algebra(), phi, TraceConvention::kPhiRight).size();
    const std::string tag = "instance " + std::to_string(i);
    c.expect(left == betti0, tag + ": traces " + std::to_string(left) + " vs HH_0 " + std::to_string(betti0));
    c.expect(right == betti0, tag + ": phi-right traces differ from HH_0");
    c.expect(hh0_quotient(phi) == betti0, tag + ": HH_0 differs from the quotient oracle");
  }
  c.expect(randoms.size() == 20, "expected 20 random instances");
}

void criterion_3(Check& c) {
  const Algebra d = Algebra::truncated_polynomial(2);
  const Betti tor_d = homology(bar_complex({d, RightModule::trivial(d), RightModule::trivial(opposite(d)), 4})).trusted();
  c.expect(tor_d == Betti{1, 1, 1, 1}, "Q[x]/x^2: " + show(tor_d));
  // Independent 2-periodic resolution: every map is x, zero after tensoring with K.
  const Matrix x_on_k = RightModule::trivial(d).action(1);
  const Betti periodic =
      homology(ChainComplex(Q, 0, {1, 1, 1, 1}, {x_on_k, x_on_k, x_on_k})).betti;
  c.expect(periodic == tor_d, "periodic resolution oracle " + show(periodic));

  const Algebra g = Algebra::group_algebra(FiniteGroup::cyclic(2));
  const Betti tor_g = homology(bar_complex({g, RightModule::trivial(g), RightModule::trivial(opposite(g)), 4})).trusted();
  c.expect(tor_g == Betti{1, 0, 0, 0}, "Q[Z2]: " + show(tor_g));
  // The averaging idempotent (1+g)/2 acts as 1 on the trivial module.
  const Vector e{Rational(1, 2), Rational(1, 2)};
  c.expect(g.multiply(e, e) == e, "averaging element is not idempotent");
  c.expect(RightModule::trivial(g).action(e) == Matrix::identity(1, Q), "averaging element is not 1 on K");
}

void criterion_4(Check& c) {
  const OrbifoldCircle circle = OrbifoldCircle::rotation();
  const auto variants = gluing_variants(circle.kind());
  c.expect(variants.size() >= 2, "fewer than two gluings");
  for (const auto& [name, phi] : five_pairs()) {
    const DiskAlgebra1D d = DiskAlgebra1D::smooth(phi.algebra(), phi);
    const bool large = phi.algebra().dim() > 3;
    const std::vector<std::string> used = large ? std::vector<std::string>{variants[0], variants[1]} : variants;
    const Betti first = evaluate(circle, d, 4, used[0]).betti.trusted();
    for (std::size_t v = 1; v < used.size(); ++v) {
      const Betti other = evaluate(circle, d, 4, used[v]).betti.trusted();
      c.expect(other == first, name + ": gluing " + used[v] + " " + show(other) + " vs " + show(first));
    }
  }
}

std::vector<FiniteGroup> dimension_axiom_groups() {
  return {FiniteGroup::cyclic(2), FiniteGroup::cyclic(4),
          FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)), FiniteGroup::symmetric(3)};
}

void criterion_5(Check& c) {
  for (const auto& g : dimension_axiom_groups()) {
    const OrbitCategory oc(g);
    for (const auto& sys : builtin_system_names()) {
      for (Variance v : {Variance::kCovariant, Variance::kContravariant}) {
        const CoefficientSystem a = builtin_system(sys, oc, Q, v);
        for (std::size_t i = 0; i < oc.size(); ++i) {
          const BettiVector h = bredon_homology(orbit_complex(oc.objects()[i]), a).betti;
          bool ok = h.at(0) == a.dim(i);
          for (int n = 1; n <= h.max_degree(); ++n) ok = ok && h.at(n) == 0;
          c.expect(ok, "group of order " + std::to_string(g.order()) + ", system " + sys + ", object " +
                           std::to_string(i));
        }
      }
    }
  }
}

void criterion_6(Check& c) {
  for (const auto& [name, expected] : std::vector<std::pair<std::string, Betti>>{
           {"rotation-circle", {1, 1}}, {"reflection-circle", {1, 0}}}) {
    const GammaCWComplex x = builtin_complex(name);
    const Betti got = bredon_homology(x, constant_system(OrbitCategory(x.group()), 1, Q)).betti.betti;
    c.expect(got == expected, name + ": " + show(got));
  }
}

void criterion_7(Check& c) {
  for (const auto& [name, expected] : std::vector<std::pair<std::string, Betti>>{
           {"torus-z2-rotation", {5, 0, 1}}, {"reflection-circle", {3, 0}}}) {
    const Betti got = chen_ruan_betti(builtin_complex(name)).betti;
    c.expect(got == expected, name + ": " + show(got));
  }
}

// -- criterion 8 helpers --

void check_complex(Check& c, const ChainComplex& x, const std::string& tag) {
  for (int n = x.min_degree() + 1; n < x.max_degree(); ++n) {
    const Matrix dd = x.differential(n) * x.differential(n + 1);
    c.expect(dd.nnz() == 0, tag + ": d^2 != 0 at degree " + std::to_string(n));
  }
  long chain_euler = 0, homology_euler = 0;
  const BettiVector h = homology(x);
  for (int n = x.min_degree(); n <= x.max_degree(); ++n) {
    const long sign = (n % 2 == 0) ? 1 : -1;
    std::size_t incoming = n < x.max_degree() ? rank(x.differential(n + 1)) : x.top_incoming_rank().value_or(0);
    const std::size_t outgoing = n > x.min_degree() ? rank(x.differential(n)) : 0;
    const std::size_t b = x.dim(n) - outgoing - incoming;
    c.expect(h.at(n) == b, tag + ": Betti number differs from rank-nullity at degree " + std::to_string(n));
    chain_euler += sign * static_cast<long>(x.dim(n));
    homology_euler += sign * static_cast<long>(b + (n == x.max_degree() ? incoming : 0));
  }
  c.expect(chain_euler == homology_euler, tag + ": Euler characteristic identity fails");
}

void check_associative(Check& c, const Algebra& a, const std::string& tag) {
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      for (std::size_t k = 0; k < a.dim(); ++k) {
        const Vector x = a.basis_vector(i), y = a.basis_vector(j), z = a.basis_vector(k);
        if (a.multiply(a.multiply(x, y), z) != a.multiply(x, a.multiply(y, z))) {
          c.expect(false, tag + ": not associative");
          return;
        }
      }
    }
  }
}

void check_functor(Check& c, const CoefficientSystem& a, const std::string& tag) {
  const OrbitCategory& oc = a.category();
  const FiniteGroup& g = oc.group();
  auto canonical = [&](std::size_t j, Element x) {
    Element best = g.order();
    for (Element k : oc.objects()[j].elements()) best = std::min(best, g.mul(x, k));
    return best;
  };
  for (std::size_t i = 0; i < oc.size(); ++i) {
    c.expect(a.map(i, i, g.identity()) == Matrix::identity(a.dim(i), a.field()), tag + ": identity");
    for (std::size_t j = 0; j < oc.size(); ++j) {
      for (Element f : oc.hom(i, j)) {
        for (std::size_t k = 0; k < oc.size(); ++k) {
          for (Element h : oc.hom(j, k)) {
            const Matrix& whole = a.map(i, k, canonical(k, g.mul(f, h)));
            const Matrix parts = a.variance() == Variance::kCovariant ? a.map(j, k, h) * a.map(i, j, f)
                                                                      : a.map(i, j, f) * a.map(j, k, h);
            c.expect(whole == parts, tag + ": composition");
          }
        }
      }
    }
  }
}

void criterion_8(Check& c) {
  std::vector<std::pair<std::string, ChainComplex>> complexes;
  std::vector<std::pair<std::string, Algebra>> algebras;
  std::vector<AlgebraTwist> small;
  for (const auto& [name, phi] : five_pairs()) {
    algebras.emplace_back(name, phi.algebra());
    algebras.emplace_back(name + " (x) op", tensor_algebra(phi.algebra(), opposite(phi.algebra())));
    if (phi.algebra().dim() <= 3) small.push_back(phi);
    const DiskAlgebra1D d = DiskAlgebra1D::smooth(phi.algebra(), phi);
    complexes.emplace_back(name + " excision", evaluate(OrbifoldCircle::rotation(), d, 3).complex);
    complexes.emplace_back(name + " Hochschild", hochschild_complex({phi.algebra(),
                                                                     twisted_diagonal_bimodule(phi.algebra(), phi), 3}));
  }
  for (const auto& phi : random_involutions()) {
    algebras.emplace_back("random", phi.algebra());
    small.push_back(phi);
  }
  // Normalized and unnormalized chains, dim A <= 3 and cap <= 3.
  for (std::size_t i = 0; i < small.size(); ++i) {
    const AlgebraTwist& phi = small[i];
    const Bimodule m = twisted_diagonal_bimodule(phi.algebra(), phi);
    for (int cap = 1; cap <= 3; ++cap) {
      const ChainComplex n = hochschild_complex({phi.algebra(), m, cap, true});
      const ChainComplex u = hochschild_complex({phi.algebra(), m, cap, false});
      c.expect(homology(n).trusted() == homology(u).trusted(),
               "Hochschild instance " + std::to_string(i) + " cap " + std::to_string(cap) + ": normalized differs");
      if (cap == 3) {
        complexes.emplace_back("Hochschild normalized " + std::to_string(i), n);
        complexes.emplace_back("Hochschild unnormalized " + std::to_string(i), u);
      }
      const Algebra& a = phi.algebra();
      const RightModule right = RightModule::regular(a);
      const RightModule left = RightModule::regular(opposite(a));
      const ChainComplex bn = bar_complex({a, right, left, cap, true});
      const ChainComplex bu = bar_complex({a, right, left, cap, false});
      c.expect(homology(bn).trusted() == homology(bu).trusted(),
               "bar instance " + std::to_string(i) + " cap " + std::to_string(cap) + ": normalized differs");
      if (a.augmentation()) {
        const RightModule kr = RightModule::trivial(a);
        const RightModule kl = RightModule::trivial(opposite(a));
        const ChainComplex tn = bar_complex({a, kr, kl, cap, true});
        const ChainComplex tu = bar_complex({a, kr, kl, cap, false});
        c.expect(homology(tn).trusted() == homology(tu).trusted(),
                 "Tor instance " + std::to_string(i) + " cap " + std::to_string(cap) + ": normalized differs");
        if (cap == 3) complexes.emplace_back("Tor " + std::to_string(i), tu);
      }
      if (cap == 3) complexes.emplace_back("bar " + std::to_string(i), bu);
    }
  }
  for (const auto& name : builtin_complex_names()) {
    const GammaCWComplex x = builtin_complex(name);
    complexes.emplace_back(name + " expanded", x.expanded_complex());
    complexes.emplace_back(name + " invariants", invariants_subcomplex(x.expanded_action()));
    for (const auto& p : inertia_pieces(x)) complexes.emplace_back(name + " fixed", p.centralizer_action.complex());
    const OrbitCategory oc(x.group());
    for (const auto& sys : builtin_system_names()) {
      complexes.emplace_back(name + " Bredon " + sys, bredon_complex(x, builtin_system(sys, oc, Q)));
      complexes.emplace_back(name + " Bredon cochains " + sys,
                             bredon_cochain_complex(x, builtin_system(sys, oc, Q, Variance::kContravariant)));
    }
  }
  for (const auto& g : dimension_axiom_groups()) {
    const OrbitCategory oc(g);
    for (const auto& sys : builtin_system_names()) {
      for (Variance v : {Variance::kCovariant, Variance::kContravariant}) {
        check_functor(c, builtin_system(sys, oc, Q, v), sys + " over a group of order " + std::to_string(g.order()));
      }
    }
  }
  for (const auto& [tag, a] : algebras) check_associative(c, a, tag);
  for (const auto& [tag, x] : complexes) check_complex(c, x, tag);
}

void criterion_9(Check& c) {
  const Algebra g = Algebra::group_algebra(FiniteGroup::cyclic(2));
  const DiskAlgebra1D d = DiskAlgebra1D::smooth(g, AlgebraTwist::identity(g));
  const OrbifoldCircle circle = OrbifoldCircle::rotation();
  const Betti one = evaluate(circle, d, 4).betti.trusted();
  const Betti two = evaluate_disjoint_union({circle, circle}, d, 4).betti.trusted();
  // Cauchy convolution written out directly.
  Betti expected(one.size(), 0);
  for (std::size_t n = 0; n < one.size(); ++n) {
    for (std::size_t k = 0; k <= n; ++k) expected[n] += one[k] * one[n - k];
  }
  c.expect(two == expected, "disjoint union " + show(two) + " vs convolution " + show(expected));
  c.expect(head(two, 3) == Betti{4, 0, 0}, "expected (4,0,0) for two circles");
}

std::pair<int, std::string> run_binary(const std::vector<std::string>& args) {
  std::string cmd = EFH_CLI_PATH;
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " 2>&1";
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  return {pclose(pipe), out};
}

void criterion_10(Check& c) {
  const auto jobs = cli::corpus_jobs();
  c.expect(jobs.size() >= 20, "corpus is unexpectedly small");
  for (const auto& job : jobs) {
    const auto [status1, out1] = run_binary(job);
    const auto [status2, out2] = run_binary(job);
    const std::string tag = job[0] + " " + job[1];
    c.expect(status1 == 0 && status2 == 0, tag + ": non-zero exit");
    c.expect(!out1.empty() && out1 == out2, tag + ": output differs between runs");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"twisted Hochschild oracle agreement", criterion_1},
      {"trace / HH_0 duality", criterion_2},
      {"Tor periodicity", criterion_3},
      {"excision gluing independence", criterion_4},
      {"Bredon dimension axiom", criterion_5},
      {"Bredon free-action reduction", criterion_6},
      {"Chen-Ruan pillowcase", criterion_7},
      {"universal structural invariants", criterion_8},
      {"monoidality", criterion_9},
      {"CLI determinism", criterion_10},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds >= 60.0) c.failures.push_back("took " + std::to_string(seconds) + " s (limit 60 s)");
    const bool ok = c.failures.empty();
    all = all && ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  " << std::setw(2) << i + 1 << "  " << criteria[i].first << "  ("
              << std::fixed << std::setprecision(1) << seconds << " s)\n";
    for (const auto& f : c.failures) std::cout << "        " << f << "\n";
    std::cout.flush();
  }
  return all ? 0 : 1;
}
