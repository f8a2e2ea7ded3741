#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <vector>

#include "idem/freetensor.hpp"
#include "idem/rng.hpp"

using namespace idem;

namespace {

IndexSet ix(std::initializer_list<const char*> ls) {
  std::vector<std::string> v(ls.begin(), ls.end());
  return IndexSet(std::move(v));
}

IndexSet ix_n(const char* stem, std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back(std::string(stem) + std::to_string(i));
  return IndexSet(std::move(v));
}

FreeVector rv(const Semiring& s, const IndexSet& i, std::initializer_list<double> xs) {
  std::vector<Value> c;
  for (double x : xs) c.push_back(Value::real(x));
  return FreeVector(s, i, std::move(c));
}

FreeVector random_vec(Rng& rng, const Semiring& s, const IndexSet& i) {
  std::vector<Value> c;
  for (std::size_t k = 0; k < i.size(); ++k) c.push_back(rng.value_in(s));
  return FreeVector(s, i, std::move(c));
}

TensorKernel outer2(const FreeVector& a, const FreeVector& b) {
  std::array<FreeVector, 2> vs = {a, b};
  return outer(std::span<const FreeVector>(vs));
}

// Direct evaluation of the polylinear extension of a generator table on a
// pair of vectors: sup over generator tuples of phi(x)*psi(y)*g(x,y).
// Independent of factorize/apply, used as the oracle.
FreeVector eval_extension2(const GeneratorPolyMap& g, const FreeVector& phi,
                           const FreeVector& psi) {
  const Semiring& s = g.semiring();
  FreeVector acc = FreeVector::zero(s, g.codomain());
  for (std::size_t x = 0; x < g.factors()[0].size(); ++x)
    for (std::size_t y = 0; y < g.factors()[1].size(); ++y) {
      std::array<std::size_t, 2> t = {x, y};
      Value w = s.mul(phi[x], psi[y]);
      acc = vec_add(acc, scalar_mul(w, g.value(t)));
    }
  return acc;
}

}  // namespace

TEST_CASE("outer product coefficients") {
  Semiring s = Semiring::rmax();
  IndexSet X = ix({"a", "b"}), Y = ix({"c", "d"});
  TensorKernel t = outer2(rv(s, X, {0, 1}), rv(s, Y, {2, 3}));
  CHECK(t.product_index().label(0) == "a|c");
  CHECK(t.coeffs()[0] == Value::real(2.0));
  CHECK(t.coeffs()[1] == Value::real(3.0));
  CHECK(t.coeffs()[2] == Value::real(3.0));
  CHECK(t.coeffs()[3] == Value::real(4.0));
}

TEST_CASE("pure sums expand a tensor tuple by tuple") {
  Semiring s = Semiring::rmax();
  IndexSet X = ix({"a", "b"}), Y = ix({"c", "d"});
  TensorKernel t = outer2(rv(s, X, {0, 1}), rv(s, Y, {2, 3}));
  PureSum ps = to_pure_sum(t);
  REQUIRE(ps.terms.size() == 4);
  CHECK(ps.terms[0].labels == std::vector<std::string>{"a", "c"});
  CHECK(ps.terms[0].coeff == Value::real(2.0));
  CHECK(ps.terms[3].labels == std::vector<std::string>{"b", "d"});
  CHECK(ps.terms[3].coeff == Value::real(4.0));
  CHECK(from_pure_sum(s, t.factors(), ps) == t);
}

TEST_CASE("duplicate pure terms accumulate by addition") {
  Semiring s = Semiring::rmax();
  IndexSet X = ix({"a"}), Y = ix({"c"});
  PureSum ps;
  ps.terms.push_back({{"a", "c"}, Value::real(1.0)});
  ps.terms.push_back({{"a", "c"}, Value::real(2.0)});
  std::array<IndexSet, 2> fs = {X, Y};
  TensorKernel t = from_pure_sum(s, fs, ps);
  CHECK(t.coeffs()[0] == Value::real(2.0));

  PureSum n = normalize_pure_sum(s, ps);
  REQUIRE(n.terms.size() == 1);
  CHECK(n.terms[0].coeff == Value::real(2.0));

  PureSum z;
  z.terms.push_back({{"a", "c"}, s.zero()});
  CHECK(normalize_pure_sum(s, z).terms.empty());
  CHECK(from_pure_sum(s, fs, z) == TensorKernel::zero(s, {X, Y}));
}

TEST_CASE("pure-sum round trips are the identity") {
  Semiring s = Semiring::rmax();
  Rng rng(42);
  for (int trial = 0; trial < 1000; ++trial) {
    IndexSet X = ix_n("x", 1 + rng.below(4));
    IndexSet Y = ix_n("y", 1 + rng.below(4));
    std::vector<Value> c;
    for (std::size_t i = 0; i < X.size() * Y.size(); ++i) c.push_back(rng.value_in(s));
    TensorKernel t(s, {X, Y}, std::move(c));
    REQUIRE(from_pure_sum(s, t.factors(), to_pure_sum(t)) == t);
    // The reverse direction on sums in enumeration-normal form.
    PureSum ps = to_pure_sum(t);
    PureSum again = to_pure_sum(from_pure_sum(s, t.factors(), ps));
    REQUIRE(again.terms.size() == ps.terms.size());
    for (std::size_t i = 0; i < ps.terms.size(); ++i) {
      REQUIRE(again.terms[i].labels == ps.terms[i].labels);
      REQUIRE(again.terms[i].coeff == ps.terms[i].coeff);
    }
  }

  Semiring b = Semiring::boolean();
  IndexSet X = ix({"x1", "x2"}), Y = ix({"y1", "y2"});
  for (const FreeVector& v : enumerate_vectors(b, product(X, Y))) {
    TensorKernel t = TensorKernel::from_vector(v, {X, Y});
    REQUIRE(from_pure_sum(b, t.factors(), to_pure_sum(t)) == t);
  }
}

TEST_CASE("outer is polylinear in each slot") {
  Semiring b = Semiring::chain(3);
  IndexSet X = ix({"x1", "x2"}), Y = ix({"y1"});
  auto xs = enumerate_vectors(b, X);
  auto ys = enumerate_vectors(b, Y);
  for (const auto& u : xs)
    for (const auto& u2 : xs)
      for (const auto& v : ys) {
        REQUIRE(outer2(vec_add(u, u2), v).as_vector() ==
                vec_add(outer2(u, v).as_vector(), outer2(u2, v).as_vector()));
        for (Value k : b.carrier()) {
          FreeVector lhs = outer2(scalar_mul(k, u), v).as_vector();
          REQUIRE(lhs == scalar_mul(k, outer2(u, v).as_vector()));
          REQUIRE(lhs == outer2(u, scalar_mul(k, v)).as_vector());
        }
      }

  Semiring s = Semiring::rmax();
  Rng rng(9);
  IndexSet X4 = ix_n("x", 3), Y4 = ix_n("y", 4);
  for (int t = 0; t < 300; ++t) {
    FreeVector u = random_vec(rng, s, X4), u2 = random_vec(rng, s, X4);
    FreeVector v = random_vec(rng, s, Y4);
    Value k = rng.value_in(s);
    REQUIRE(outer2(vec_add(u, u2), v).as_vector() ==
            vec_add(outer2(u, v).as_vector(), outer2(u2, v).as_vector()));
    REQUIRE(outer2(scalar_mul(k, u), v).as_vector() ==
            outer2(u, scalar_mul(k, v)).as_vector());
  }
}

TEST_CASE("factorized kernels evaluate the polylinear extension") {
  Semiring b = Semiring::boolean();
  IndexSet X = ix({"x1", "x2"}), Y = ix({"y1", "y2"}), W = ix({"w1", "w2"});
  auto wvecs = enumerate_vectors(b, W);
  Rng rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<FreeVector> table;
    for (std::size_t i = 0; i < X.size() * Y.size(); ++i)
      table.push_back(wvecs[rng.below(wvecs.size())]);
    GeneratorPolyMap g(b, {X, Y}, W, table);
    Kernel k = factorize(g);
    for (const auto& phi : enumerate_vectors(b, X))
      for (const auto& psi : enumerate_vectors(b, Y))
        REQUIRE(apply(k, outer2(phi, psi).as_vector()) == eval_extension2(g, phi, psi));
  }

  Semiring s = Semiring::rmax();
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<FreeVector> table;
    for (std::size_t i = 0; i < 4; ++i) table.push_back(random_vec(rng, s, W));
    GeneratorPolyMap g(s, {X, Y}, W, table);
    Kernel k = factorize(g);
    for (int v = 0; v < 5; ++v) {
      FreeVector phi = random_vec(rng, s, X), psi = random_vec(rng, s, Y);
      REQUIRE(apply(k, outer2(phi, psi).as_vector()) == eval_extension2(g, phi, psi));
    }
  }
}

TEST_CASE("the factorized kernel is the only one matching the generators") {
  Semiring b = Semiring::boolean();
  IndexSet X = ix({"x1", "x2"}), Y = ix({"y1", "y2"}), W = ix({"w"});
  auto wvecs = enumerate_vectors(b, W);
  // All generator tables X x Y -> B(W) with |W| = 1.
  for (std::size_t code = 0; code < 16; ++code) {
    std::vector<FreeVector> table;
    for (std::size_t i = 0; i < 4; ++i) table.push_back(wvecs[(code >> i) & 1]);
    GeneratorPolyMap g(b, {X, Y}, W, table);
    Kernel want = factorize(g);
    std::size_t matching = 0;
    for (const Kernel& k : enumerate_kernels(b, product(X, Y), W)) {
      bool agrees = true;
      for (std::size_t x = 0; agrees && x < X.size(); ++x)
        for (std::size_t y = 0; agrees && y < Y.size(); ++y) {
          std::array<std::size_t, 2> t = {x, y};
          FreeVector gen =
              outer2(FreeVector::delta(b, X, x), FreeVector::delta(b, Y, y)).as_vector();
          agrees = apply(k, gen) == g.value(t);
        }
      if (agrees) {
        ++matching;
        REQUIRE(k == want);
      }
    }
    REQUIRE(matching == 1);
  }
}

TEST_CASE("single-factor tables factorize to their linear extension") {
  Semiring s = Semiring::rmax();
  IndexSet X = ix({"x1", "x2", "x3"}), W = ix({"w1", "w2"});
  Rng rng(23);
  std::vector<FreeVector> table;
  for (std::size_t i = 0; i < X.size(); ++i) table.push_back(random_vec(rng, s, W));
  GeneratorPolyMap g(s, {X}, W, table);
  Kernel k = factorize(g);
  auto f = [&](const FreeVector& v) {
    FreeVector acc = FreeVector::zero(s, W);
    for (std::size_t x = 0; x < X.size(); ++x)
      acc = vec_add(acc, scalar_mul(v[x], table[x]));
    return acc;
  };
  CHECK(k == extract(f, s, X, W));
}

TEST_CASE("commutativity and associativity isomorphisms") {
  Semiring s = Semiring::rmax();
  IndexSet X = ix_n("x", 2), Y = ix_n("y", 3), Z = ix_n("z", 2);
  IndexBijection cm = comm_iso(X, Y);
  IndexBijection as = assoc_iso(X, Y, Z);
  Rng rng(31);
  for (int t = 0; t < 300; ++t) {
    FreeVector phi = random_vec(rng, s, X);
    FreeVector psi = random_vec(rng, s, Y);
    FreeVector chi = random_vec(rng, s, Z);

    FreeVector pq = outer2(phi, psi).as_vector();
    REQUIRE(cm.forward(pq) == outer2(psi, phi).as_vector());
    REQUIRE(cm.backward(cm.forward(pq)) == pq);

    FreeVector left = outer2(pq, chi).as_vector();
    FreeVector right = outer2(phi, outer2(psi, chi).as_vector()).as_vector();
    REQUIRE(as.forward(left) == right);
    REQUIRE(as.backward(right) == left);

    FreeVector u = random_vec(rng, s, cm.from), v = random_vec(rng, s, cm.from);
    Value k = rng.value_in(s);
    REQUIRE(cm.forward(vec_add(u, v)) == vec_add(cm.forward(u), cm.forward(v)));
    REQUIRE(cm.forward(scalar_mul(k, u)) == scalar_mul(k, cm.forward(u)));
  }

  Semiring b = Semiring::boolean();
  IndexSet Xb = ix({"x"}), Yb = ix({"y1", "y2"}), Zb = ix({"z"});
  IndexBijection cb = comm_iso(Xb, Yb);
  for (const auto& v : enumerate_vectors(b, cb.from)) {
    REQUIRE(cb.backward(cb.forward(v)) == v);
  }
  IndexBijection ab = assoc_iso(Xb, Yb, Zb);
  for (const auto& v : enumerate_vectors(b, ab.from)) REQUIRE(ab.backward(ab.forward(v)) == v);
}

TEST_CASE("distribution isomorphism splits a summed factor") {
  Semiring s = Semiring::rmax();
  IndexSet X = ix_n("x", 2), Y = ix_n("y", 2), Z = ix_n("z", 2);
  IndexBijection di = distr_iso(X, Y, Z);
  std::array<IndexSet, 2> xy = {X, Y};
  std::array<IndexSet, 2> xz_yz = {product(X, Z), product(Y, Z)};
  Rng rng(37);
  for (int t = 0; t < 200; ++t) {
    FreeVector u = random_vec(rng, s, disjoint_union(xy));
    FreeVector chi = random_vec(rng, s, Z);
    FreeVector whole = outer2(u, chi).as_vector();
    FreeVector p0 = outer2(dsum_project(xy, 0, u), chi).as_vector();
    FreeVector p1 = outer2(dsum_project(xy, 1, u), chi).as_vector();
    FreeVector want = vec_add(dsum_inject(xz_yz, 0, p0), dsum_inject(xz_yz, 1, p1));
    REQUIRE(di.forward(whole) == want);
    REQUIRE(di.backward(want) == whole);
  }
}

TEST_CASE("direct sum injections and projections") {
  Semiring s = Semiring::rmax();
  std::array<IndexSet, 3> parts = {ix_n("x", 2), ix_n("y", 1), ix_n("z", 3)};
  Rng rng(41);
  for (int t = 0; t < 100; ++t) {
    FreeVector v = random_vec(rng, s, parts[0]);
    FreeVector inj = dsum_inject(parts, 0, v);
    REQUIRE(dsum_project(parts, 0, inj) == v);
    REQUIRE(dsum_project(parts, 1, inj) == FreeVector::zero(s, parts[1]));
    FreeVector u = random_vec(rng, s, disjoint_union(parts));
    FreeVector rebuilt = FreeVector::zero(s, disjoint_union(parts));
    for (std::size_t a = 0; a < parts.size(); ++a)
      rebuilt = vec_add(rebuilt, dsum_inject(parts, a, dsum_project(parts, a, u)));
    REQUIRE(rebuilt == u);
  }
}

TEST_CASE("pairing into the product is unique") {
  Semiring b = Semiring::boolean();
  IndexSet W = ix({"w1", "w2"});
  IndexSet X1 = ix({"a1", "a2"}), X2 = ix({"b1"});
  std::array<IndexSet, 2> cods = {X1, X2};
  for (const Kernel& f1 : enumerate_kernels(b, W, X1)) {
    for (const Kernel& f2 : enumerate_kernels(b, W, X2)) {
      std::array<Kernel, 2> fs = {f1, f2};
      Kernel f = map_direct_product(fs);
      for (const auto& phi : enumerate_vectors(b, W)) {
        REQUIRE(dsum_project(cods, 0, apply(f, phi)) == apply(f1, phi));
        REQUIRE(dsum_project(cods, 1, apply(f, phi)) == apply(f2, phi));
      }
      std::size_t matching = 0;
      for (const Kernel& g : enumerate_kernels(b, W, disjoint_union(cods))) {
        bool ok = true;
        for (std::size_t x = 0; ok && x < W.size(); ++x) {
          FreeVector d = FreeVector::delta(b, W, x);
          ok = dsum_project(cods, 0, apply(g, d)) == apply(f1, d) &&
               dsum_project(cods, 1, apply(g, d)) == apply(f2, d);
        }
        if (ok) {
          ++matching;
          REQUIRE(g == f);
        }
      }
      REQUIRE(matching == 1);
    }
  }
}

TEST_CASE("copairing out of the sum is unique") {
  Semiring b = Semiring::boolean();
  IndexSet W = ix({"w1", "w2"});
  IndexSet X1 = ix({"a1", "a2"}), X2 = ix({"b1"});
  std::array<IndexSet, 2> doms = {X1, X2};
  for (const Kernel& f1 : enumerate_kernels(b, X1, W)) {
    for (const Kernel& f2 : enumerate_kernels(b, X2, W)) {
      std::array<Kernel, 2> fs = {f1, f2};
      Kernel f = map_direct_sum(fs);
      for (const auto& v : enumerate_vectors(b, X1))
        REQUIRE(apply(f, dsum_inject(doms, 0, v)) == apply(f1, v));
      for (const auto& v : enumerate_vectors(b, X2))
        REQUIRE(apply(f, dsum_inject(doms, 1, v)) == apply(f2, v));
      for (const auto& u : enumerate_vectors(b, disjoint_union(doms))) {
        FreeVector want = vec_add(apply(f1, dsum_project(doms, 0, u)),
                                  apply(f2, dsum_project(doms, 1, u)));
        REQUIRE(apply(f, u) == want);
      }
      std::size_t matching = 0;
      for (const Kernel& g : enumerate_kernels(b, disjoint_union(doms), W)) {
        bool ok = true;
        for (std::size_t x = 0; ok && x < X1.size(); ++x)
          ok = apply(g, dsum_inject(doms, 0, FreeVector::delta(b, X1, x))) ==
               apply(f1, FreeVector::delta(b, X1, x));
        for (std::size_t x = 0; ok && x < X2.size(); ++x)
          ok = apply(g, dsum_inject(doms, 1, FreeVector::delta(b, X2, x))) ==
               apply(f2, FreeVector::delta(b, X2, x));
        if (ok) {
          ++matching;
          REQUIRE(g == f);
        }
      }
      REQUIRE(matching == 1);
    }
  }
}

TEST_CASE("tensors require a commutative semiring") {
  TableDef d;
  d.elements = {"z", "u", "v"};
  d.zero = 0;
  d.one = 1;
  d.add = {0, 1, 2, 1, 1, 2, 2, 2, 2};
  d.mul = {0, 0, 0, 0, 1, 1, 0, 2, 2};
  Semiring s = Semiring::table(std::move(d));
  REQUIRE_FALSE(s.commutative());
  IndexSet X = ix({"x"});
  FreeVector v = FreeVector::delta(s, X, std::size_t{0});
  std::array<FreeVector, 2> vs = {v, v};
  CHECK_THROWS_AS(outer(std::span<const FreeVector>(vs)), Error);
  CHECK_THROWS_AS(TensorKernel::zero(s, {X, X}), Error);
}

TEST_CASE("pure term errors") {
  Semiring s = Semiring::rmax();
  IndexSet X = ix({"a"}), Y = ix({"c"});
  std::array<IndexSet, 2> fs = {X, Y};
  PureSum bad;
  bad.terms.push_back({{"a"}, Value::real(0.0)});
  CHECK_THROWS_AS(from_pure_sum(s, fs, bad), Error);
  PureSum missing;
  missing.terms.push_back({{"a", "q"}, Value::real(0.0)});
  CHECK_THROWS_AS(from_pure_sum(s, fs, missing), Error);
}
