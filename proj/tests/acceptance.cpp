// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria (capped at 1 for ctest).

#include <chrono>
#include <functional>
#include <numeric>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "supergrass/cli.hpp"
#include "supergrass/supergrass.hpp"

using namespace supergrass;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) detail << "first failure: " << what << "; ";
    pass = pass && cond;
  }
};

Element gen(int n, int i) { return Element::generator(n, i); }
Element mono(int n, std::initializer_list<int> idx) { return Element::monomial(n, Monomial::of(idx)); }

IdentityOptions exhaustive(int max_len) { return IdentityOptions{max_len, Mode::ExhaustiveMultilinear, 0, 0}; }

std::vector<Endomorphism> constructor_involutions(Outcome* out) {
  std::vector<Endomorphism> maps;
  auto keep = [&](const Endomorphism& phi, const std::string& name) {
    bool ok = true;
    try {
      verify_relations(phi);
    } catch (const Error&) {
      ok = false;
    }
    ok = ok && is_involution(phi);
    if (out) out->require(ok, name);
    maps.push_back(phi);
  };

  keep(example_3_1(6).phi(), "method1 example phi");
  keep(example_3_1_psi(9).phi(), "method1 example psi");
  {
    const int n = 7;
    Method1Spec spec;
    spec.i_plus = {2, 3};
    spec.i_minus = {4, 5};
    spec.d.emplace(1, mono(n, {2, 4, 5}) + gen(n, 3));
    spec.d.emplace(6, mono(n, {2, 3, 4, 5, 7}));
    keep(method1(spec, n, TailKind::Identity).phi(), "method1 two-shift spec");
  }
  for (int k = 0; k <= 3; ++k)
    for (int t = 1; t <= 5; t += 2)
      keep(method2(k, t, k + t + 4).phi(), "method2 k=" + std::to_string(k) + " t=" + std::to_string(t));
  keep(triangular({2, mono(6, {3, 4, 5})}, 6), "triangular T2");
  keep(triangular({1, gen(7, 3) + mono(7, {2, 5, 7})}, 7), "triangular T1");
  keep(triangular({4, mono(8, {5, 6, 7}) - Scalar(3) * gen(8, 8)}, 8), "triangular T4");
  return maps;
}

// 1 -------------------------------------------------------------------------
Outcome kernel_laws() {
  Outcome o;
  std::mt19937_64 rng(20261019);
  const int n = 10;
  for (int trial = 0; trial < 500; ++trial) {
    const Element a = oracle::random_element(rng, n, 6);
    const Element b = oracle::random_element(rng, n, 6);
    const Element c = oracle::random_element(rng, n, 6);
    o.require((a * b) * c == a * (b * c), "associativity");
    o.require(a * (b + c) == a * b + a * c, "left distributivity");
    o.require((a + b) * c == a * c + b * c, "right distributivity");
    o.require(a * b == oracle::product(a, b), "product vs index-list oracle");
    const Element u = parity_split(a).odd;
    const Element v = parity_split(b).odd;
    o.require(u * v == -(v * u), "odd elements anticommute");
    o.require((u * u).is_zero(), "odd elements square to zero");
  }
  o.detail << "500 triples at N=10";
  return o;
}

// 2 -------------------------------------------------------------------------
Outcome triple_commutator() {
  Outcome o;
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    const Element a = oracle::random_element(rng, 8, 6);
    const Element b = oracle::random_element(rng, 8, 6);
    const Element c = oracle::random_element(rng, 8, 6);
    o.require(left_normed({a, b, c}).is_zero(), "random triple");
  }
  const Grading g = homogeneous(HomogeneousModel::e_can(), 6);
  const Verdict v = is_identity(parse_polynomial("[x1,x2,x3]"), g, exhaustive(2));
  o.require(v.holds && v.authoritative, "exhaustive spanning tuples at N=6");
  o.detail << "200 random triples at N=8; " << v.evaluations << " exhaustive tuples at N=6, len<=2";
  return o;
}

// 3 -------------------------------------------------------------------------
Outcome no_standard_identities() {
  Outcome o;
  const int n = 8;
  for (int k = 2; k <= 6; ++k) {
    Assignment a;
    std::vector<Element> xs;
    Scalar fact = 1;
    std::vector<int> idx;
    for (int i = 1; i <= k; ++i) {
      a.emplace(Variable::x(i), gen(n, i));
      xs.push_back(gen(n, i));
      fact *= i;
      idx.push_back(i);
    }
    const Element closed = fact * Element::monomial(n, Monomial::of(std::span<const int>(idx)));
    const Element lib = evaluate(standard_polynomial(k), a, n);
    const Element perm_sum = oracle::standard_polynomial_value(xs, n);
    o.require(!closed.is_zero(), "s_n nonzero");
    o.require(lib == closed, "library s_" + std::to_string(k));
    o.require(perm_sum == closed, "permutation sum s_" + std::to_string(k));
  }
  o.detail << "s_2..s_6 at N=8 equal n! e1...en";
  return o;
}

// 4 -------------------------------------------------------------------------
Outcome constructor_involution_check() {
  Outcome o;
  const auto maps = constructor_involutions(&o);
  o.detail << maps.size() << " constructor outputs (3 method1, 12 method2, 3 triangular)";
  return o;
}

// 5 -------------------------------------------------------------------------
Outcome tau_group_check() {
  Outcome o;
  const int n = 7;
  std::vector<TriangularSpec> specs = {{1, gen(n, 4)}, {2, gen(n, 5)}, {3, mono(n, {4, 5, 6})}};
  const auto group = tau_group(specs, n);
  o.require(group.size() == 8, "eight elements");
  for (std::size_t a = 0; a < group.size(); ++a) {
    o.require(is_involution(group[a].map), "involution");
    for (std::size_t b = a + 1; b < group.size(); ++b) {
      o.require(!equal(group[a].map, group[b].map), "pairwise distinct");
      o.require(equal(compose(group[a].map, group[b].map), compose(group[b].map, group[a].map)), "commuting");
    }
    const auto cert = standard_equivalence(group[a].grading());
    const int s = static_cast<int>(group[a].factors.size());
    o.require(cert.has_value(), "certificate exists");
    if (!cert) continue;
    const HomogeneousModel expected = HomogeneousModel::e_kstar(s);
    o.require(to_string(cert->model) == to_string(expected), "model E_{s*}");
    o.require(is_graded_iso(cert->f, cert->g), "is_graded_iso");
  }
  o.detail << "M=3 at N=7";
  return o;
}

// 6 -------------------------------------------------------------------------
Outcome example_equivalence() {
  Outcome o;
  const int n = 6;
  const Grading model = homogeneous(HomogeneousModel::e_kstar(1), n);
  const Grading phi = example_3_1(n);
  const GradedMap f = graded_map(model, phi, std::map<int, Element>{{1, gen(n, 1) - mono(n, {2, 3, 4})}});
  const GradedMap g = graded_map(phi, model, std::map<int, Element>{{1, gen(n, 1) + mono(n, {2, 3, 4})}});
  o.require(is_graded_iso(f, g), "f_phi/g_phi at N=6");

  auto generators = all_graded_triple_commutators();
  generators.push_back(product_identity(2));
  const auto start = std::chrono::steady_clock::now();
  for (const Grading& target : {example_3_1(9), example_3_1_psi(9)}) {
    const InclusionReport r = inclusion_evidence(generators, target, exhaustive(4));
    o.require(r.all_hold, "inclusion evidence");
    for (const Verdict& v : r.verdicts) o.require(v.authoritative && v.mode == Mode::ExhaustiveMultilinear, "mode");
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.detail << "9 generators against phi and psi at N=9, max_len=4 in " << secs << "s";
  return o;
}

// 7 -------------------------------------------------------------------------
Outcome falsification_witnesses() {
  Outcome o;
  const Grading einf4 = homogeneous(HomogeneousModel::e_inf(), 4);
  const Verdict v1 = is_identity(product_identity(2), einf4, exhaustive(2));
  o.require(!v1.holds && v1.witness && v1.witness->value == mono(4, {1, 3}), "z1z2 witness e1e3");
  if (v1.witness)
    o.require(evaluate(v1.witness->polynomial, v1.witness->assignment, einf4) == v1.witness->value, "reproducible");

  std::ostringstream out, err;
  const int code = cli::run({"check-identity", "--poly", "z1 z2", "--grading", R"({"kind":"homogeneous","model":"E_inf"})",
                             "--N", "4"},
                            out, err);
  o.require(code == 1, "CLI exit 1");

  const Grading einf6 = homogeneous(HomogeneousModel::e_inf(), 6);
  const Verdict v2 = is_identity(parse_polynomial("[y1,y2]"), einf6, exhaustive(4));
  o.require(!v2.holds && v2.witness && v2.witness->value == Scalar(2) * mono(6, {2, 4}), "[y1,y2] witness 2e2e4");
  const Verdict v3 = is_identity(parse_polynomial("[y1,y2]"), homogeneous(HomogeneousModel::e_can(), 6), exhaustive(6));
  o.require(v3.holds && v3.authoritative, "[y1,y2] holds on E_can");
  o.detail << "witnesses " << (v1.witness ? to_string(v1.witness->value) : "-") << ", "
           << (v2.witness ? to_string(v2.witness->value) : "-");
  return o;
}

// 8 -------------------------------------------------------------------------
Outcome prop_minus_check() {
  Outcome o;
  const Grading g = prop_minus(6);
  o.require(!g.classification().canonical, "not canonical");
  o.require(!is_canonical_type(g), "is_canonical_type false");
  const auto cert = standard_equivalence(g);
  o.require(cert && to_string(cert->model) == "E_can", "model E_can");
  o.require(cert && cert->verified && is_graded_iso(cert->f, cert->g), "certificate verified");
  o.detail << "N=6";
  return o;
}

// 9 -------------------------------------------------------------------------
Outcome swap_check() {
  Outcome o;
  const int n = 4;
  const Grading g = from_involution(swap_example(n));
  o.require(g.classification().type == GradingType::EmptyInBasis, "EMPTY_IN_BASIS");
  const HomogeneousGenerators hg = find_homogeneous_generators(g);
  o.require(hg.plus.size() == 2 && hg.minus.size() == 2, "2+2 eigenvectors");
  o.require(oracle::rank_of(hg.plus, n) == 2 && oracle::rank_of(hg.minus, n) == 2, "independent");
  const std::vector<Element> plus_ref = {gen(n, 1) + gen(n, 2), gen(n, 3) + gen(n, 4)};
  const std::vector<Element> minus_ref = {gen(n, 1) - gen(n, 2), gen(n, 3) - gen(n, 4)};
  o.require(oracle::same_span(hg.plus, plus_ref, n), "+1 span");
  o.require(oracle::same_span(hg.minus, minus_ref, n), "-1 span");
  std::vector<Element> all = hg.plus;
  all.insert(all.end(), hg.minus.begin(), hg.minus.end());
  std::vector<Element> all_ref = plus_ref;
  all_ref.insert(all_ref.end(), minus_ref.begin(), minus_ref.end());
  o.require(oracle::same_span(all, all_ref, n), "joint span");
  o.detail << "N=4";
  return o;
}

// 10 ------------------------------------------------------------------------
Outcome linearization_check() {
  Outcome o;
  for (const Endomorphism& phi : constructor_involutions(nullptr)) {
    const Endomorphism lin = linearize(phi);
    o.require(lin.verified() && is_involution(lin), "linearized constructor involution");
  }
  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> size(3, 6);
  std::uniform_int_distribution<int> coef(-2, 2);
  int non_involutions = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = size(rng);
    std::map<int, Element> images;
    bool nonzero_tail = false;
    while (!nonzero_tail) {
      images.clear();
      for (int i = 1; i <= n; ++i) {
        std::vector<Term> terms;
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
          const Monomial m = Monomial::from_bits(bits);
          if (m.length() >= 3 && m.parity() == 1 && coef(rng) == 2) terms.push_back(Term{m, Scalar(coef(rng))});
        }
        const Element h = Element::from_terms(n, std::move(terms));
        nonzero_tail = nonzero_tail || !h.is_zero();
        images.emplace(i, gen(n, i) + h);
      }
    }
    const Endomorphism phi = verify_relations(make_endomorphism(images, TailRule::identity(), n));
    o.require(equal(linearize(phi), verify_relations(identity_map(n))), "linear part is identity");
    if (!is_involution(phi)) ++non_involutions;
  }
  o.require(non_involutions == 100, "every unipotent map is a non-involution");
  o.detail << "18 linearizations; " << non_involutions << "/100 unipotent maps are non-involutions";
  return o;
}

// 11 ------------------------------------------------------------------------
Outcome eq1_check() {
  Outcome o;
  const int n = 12;
  const int k = 2;
  const int t = 3;
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> idx(k + 1, n);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 10; ++i) pairs.emplace_back(idx(rng), idx(rng));

  Type3RelationInstance pattern{k, {}, {}};
  for (int m = k + t + 1; m <= n; ++m) pattern.v.emplace(m, mono(n, {3, 4, 5}) * gen(n, m));
  std::vector<std::pair<int, int>> pattern_pairs;
  std::uniform_int_distribution<int> tail_idx(k + t + 1, n);
  for (int i = 0; i < 10; ++i) pattern_pairs.emplace_back(tail_idx(rng), tail_idx(rng));
  o.require(verify_eq1(pattern, pattern_pairs, n), "method-2 pattern");

  Type3RelationInstance canonical{k, {}, {}};
  for (int m = k + 1; m <= n; ++m) canonical.w.emplace(m, gen(n, 1 + (m % n)) + mono(n, {1, 2, 3}));
  o.require(verify_eq1(canonical, pairs, n), "all-zero V");

  Type3RelationInstance perturbed{0, {{4, gen(n, 6)}}, {}};
  std::vector<std::pair<int, int>> one = {{4, 5}};
  o.require(!verify_eq1(perturbed, one, n), "non-solution rejected");
  o.detail << "10 pairs each";
  return o;
}

// 12 ------------------------------------------------------------------------
std::vector<Grading> random_grading_pool(int n, std::mt19937_64& rng) {
  std::vector<Grading> pool = {
      homogeneous(HomogeneousModel::e_can(), n),
      homogeneous(HomogeneousModel::e_inf(), n),
      homogeneous(HomogeneousModel::e_k(std::uniform_int_distribution<int>(1, n)(rng)), n),
      homogeneous(HomogeneousModel::e_kstar(std::uniform_int_distribution<int>(1, n)(rng)), n),
      prop_minus(n),
      triangular_grading({1, gen(n, n)}, n),
  };
  if (n >= 4) pool.push_back(example_3_1(n));
  if (n >= 4) pool.push_back(method2(1, 1, n));
  if (n >= 5) pool.push_back(method2(2, 1, n));
  if (n % 2 == 0) pool.push_back(from_involution(swap_example(n)));
  return pool;
}

SuperPolynomial random_multilinear(std::mt19937_64& rng) {
  const int d = std::uniform_int_distribution<int>(1, 3)(rng);
  std::vector<Variable> vars;
  for (int i = 1; i <= d; ++i) vars.push_back(std::bernoulli_distribution(0.5)(rng) ? Variable::z(i) : Variable::y(i));
  std::vector<int> perm(static_cast<std::size_t>(d));
  std::iota(perm.begin(), perm.end(), 0);
  std::uniform_int_distribution<int> coef(-2, 2);
  SuperPolynomial p;
  const bool structured = std::bernoulli_distribution(0.5)(rng);
  if (structured && d >= 2) {
    // Signed combination of a word and its transposition: commutators and
    // anticommutators of random slots.
    const std::size_t i = std::uniform_int_distribution<std::size_t>(0, vars.size() - 2)(rng);
    Word w(vars.begin(), vars.end());
    Word u = w;
    std::swap(u[i], u[i + 1]);
    const int sign = std::bernoulli_distribution(0.5)(rng) ? 1 : -1;
    p.add_term(w, Scalar(1));
    p.add_term(u, Scalar(sign));
  }
  while (p.is_zero()) {
    do {
      const int c = coef(rng);
      if (c == 0) continue;
      Word w;
      for (int i : perm) w.push_back(vars[static_cast<std::size_t>(i)]);
      p.add_term(w, Scalar(c));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return p;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937_64 rng(12);
  const auto start = std::chrono::steady_clock::now();
  int holds = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 5)(rng);
    const auto pool = random_grading_pool(n, rng);
    const Grading& g = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    const SuperPolynomial p = random_multilinear(rng);
    std::vector<Element> images(g.phi().images().begin(), g.phi().images().end());
    const bool brute =
        oracle::brute_force_identity(p, oracle::eigenspace(images, n, 1), oracle::eigenspace(images, n, -1), n);
    const Verdict v = is_identity(p, g, exhaustive(n));
    o.require(v.holds == brute, "verdict vs brute force for " + to_string(p) + " at N=" + std::to_string(n));
    holds += brute ? 1 : 0;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs <= 120.0, "runtime within 2 minutes");
  o.detail << "50 polynomials (" << holds << " identities, " << 50 - holds << " non-identities) in " << secs << "s";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"kernel laws", kernel_laws},
      {"triple commutator identity", triple_commutator},
      {"no standard identities", no_standard_identities},
      {"constructor involutions", constructor_involution_check},
      {"tau group", tau_group_check},
      {"example equivalence and inclusion evidence", example_equivalence},
      {"falsification witnesses", falsification_witnesses},
      {"prefix-negation grading", prop_minus_check},
      {"swap example", swap_check},
      {"linearization", linearization_check},
      {"type-3 relation checker", eq1_check},
      {"identity checker vs brute force", oracle_equivalence},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failures += o.pass ? 0 : 1;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " (" << criteria[i].first
              << "): " << o.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
