#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <vector>

#include "idem/freemod.hpp"
#include "idem/rng.hpp"

using namespace idem;

namespace {

IndexSet ix(std::initializer_list<const char*> ls) {
  std::vector<std::string> v(ls.begin(), ls.end());
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

}  // namespace

TEST_CASE("index sets hold distinct ordered labels") {
  IndexSet a = ix({"x1", "x2", "x3"});
  CHECK(a.size() == 3);
  CHECK(a.label(1) == "x2");
  CHECK(a.position("x3") == 2);
  CHECK(a.contains("x1"));
  CHECK_FALSE(a.contains("y"));
  CHECK_THROWS_AS((void)a.position("y"), Error);
  CHECK_THROWS_AS(IndexSet({"x", "x"}), Error);
  CHECK_THROWS_AS(IndexSet({""}), Error);
  CHECK(IndexSet().size() == 0);
  CHECK(a == ix({"x1", "x2", "x3"}));
  CHECK(a != ix({"x2", "x1", "x3"}));
}

TEST_CASE("product and disjoint union indices") {
  IndexSet a = ix({"a", "b"});
  IndexSet c = ix({"c", "d"});
  IndexSet p = product(a, c);
  CHECK(p.size() == 4);
  CHECK(p.label(0) == "a|c");
  CHECK(p.label(1) == "a|d");
  CHECK(p.label(2) == "b|c");
  CHECK(p.label(3) == "b|d");

  std::array<IndexSet, 3> three = {a, c, ix({"e"})};
  IndexSet q = product(std::span<const IndexSet>(three));
  CHECK(q.size() == 4);
  CHECK(q.label(0) == "a|c|e");
  CHECK(q.label(3) == "b|d|e");

  std::array<IndexSet, 2> parts = {a, c};
  IndexSet u = disjoint_union(parts);
  CHECK(u.size() == 4);
  CHECK(u.label(0) == "0:a");
  CHECK(u.label(3) == "1:d");
}

TEST_CASE("delta and zero vectors") {
  Semiring b = Semiring::boolean();
  IndexSet i = ix({"x", "y"});
  FreeVector d = FreeVector::delta(b, i, "y");
  CHECK(d[0] == b.zero());
  CHECK(d[1] == b.one());
  CHECK(FreeVector::zero(b, i).coeffs()[0] == b.zero());
  CHECK_THROWS_AS(FreeVector::delta(b, i, "z"), Error);
  CHECK_THROWS_AS(FreeVector(b, i, {Value::finite(0)}), Error);
  CHECK_THROWS_AS(FreeVector(b, i, {Value::finite(0), Value::finite(2)}), Error);
}

TEST_CASE("functional pairing over max-plus") {
  Semiring s = Semiring::rmax();
  IndexSet i = ix({"x1", "x2"});
  FreeVector a = rv(s, i, {1, 2});
  FreeVector phi = rv(s, i, {0, 0});
  CHECK(functional_apply(a, phi) == Value::real(2.0));
  CHECK(functional_apply(a, FreeVector::zero(s, i)) == s.zero());
  CHECK(functional_apply(a, FreeVector::delta(s, i, "x1")) == Value::real(1.0));
  CHECK(functional_apply(a, FreeVector::delta(s, i, "x2")) == Value::real(2.0));
}

TEST_CASE("functional pairing is b-linear, exhaustively on small finite modules") {
  for (const auto& s : {Semiring::boolean(), Semiring::chain(3)}) {
    IndexSet i = s.kind() == SemiringKind::boolean ? ix({"x", "y", "z"}) : ix({"x", "y"});
    std::vector<FreeVector> all = enumerate_vectors(s, i);
    for (const auto& a : all) {
      CHECK(functional_apply(a, FreeVector::zero(s, i)) == s.zero());
      for (const auto& u : all) {
        for (const auto& v : all) {
          Value lhs = functional_apply(a, vec_add(u, v));
          Value rhs = s.add(functional_apply(a, u), functional_apply(a, v));
          REQUIRE(lhs == rhs);
        }
        for (Value k : s.carrier()) {
          REQUIRE(functional_apply(a, scalar_mul(k, u)) ==
                  s.mul(k, functional_apply(a, u)));
        }
      }
      for (std::size_t p = 0; p < i.size(); ++p)
        REQUIRE(functional_apply(a, FreeVector::delta(s, i, p)) == a[p]);
    }
  }
}

TEST_CASE("module laws on random max-plus vectors") {
  Semiring s = Semiring::rmax();
  IndexSet i = ix({"x1", "x2", "x3", "x4"});
  Rng rng(42);
  for (int t = 0; t < 500; ++t) {
    FreeVector u = random_vec(rng, s, i);
    FreeVector v = random_vec(rng, s, i);
    FreeVector w = random_vec(rng, s, i);
    Value k = rng.value_in(s);
    Value l = rng.value_in(s);
    REQUIRE(vec_add(u, u) == u);
    REQUIRE(vec_add(u, v) == vec_add(v, u));
    REQUIRE(vec_add(vec_add(u, v), w) == vec_add(u, vec_add(v, w)));
    REQUIRE(scalar_mul(k, vec_add(u, v)) == vec_add(scalar_mul(k, u), scalar_mul(k, v)));
    REQUIRE(scalar_mul(s.mul(k, l), u) == scalar_mul(k, scalar_mul(l, u)));
    REQUIRE(scalar_mul(s.add(k, l), u) == vec_add(scalar_mul(k, u), scalar_mul(l, u)));
    REQUIRE(scalar_mul(s.one(), u) == u);
    REQUIRE(scalar_mul(s.zero(), u) == FreeVector::zero(s, i));
    REQUIRE(vec_leq(u, vec_add(u, v)));
  }
}

TEST_CASE("every vector is the sup of scaled deltas") {
  Semiring b = Semiring::chain(3);
  IndexSet i = ix({"x", "y"});
  for (const auto& v : enumerate_vectors(b, i)) {
    std::vector<FreeVector> terms;
    for (std::size_t p = 0; p < i.size(); ++p)
      terms.push_back(scalar_mul(v[p], FreeVector::delta(b, i, p)));
    CHECK(vec_sup(b, i, terms) == v);
  }

  Semiring s = Semiring::rmax();
  IndexSet j = ix({"x1", "x2", "x3"});
  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    FreeVector v = random_vec(rng, s, j);
    std::vector<FreeVector> terms;
    for (std::size_t p = 0; p < j.size(); ++p)
      terms.push_back(scalar_mul(v[p], FreeVector::delta(s, j, p)));
    REQUIRE(vec_sup(s, j, terms) == v);
  }
}

TEST_CASE("sup of an empty family is the zero vector") {
  Semiring s = Semiring::rmin();
  IndexSet i = ix({"x"});
  CHECK(vec_sup(s, i, {}) == FreeVector::zero(s, i));
}

TEST_CASE("zero module edge cases") {
  Semiring s = Semiring::rmax();
  IndexSet none;
  FreeVector z = FreeVector::zero(s, none);
  CHECK(z.size() == 0);
  CHECK(vec_add(z, z) == z);
  CHECK(functional_apply(z, z) == s.zero());
  CHECK_THROWS_AS(FreeVector::delta(s, none, std::size_t{0}), Error);
}

TEST_CASE("mismatched operands are rejected") {
  Semiring s = Semiring::rmax();
  IndexSet i = ix({"x", "y"});
  IndexSet j = ix({"x", "z"});
  FreeVector u = rv(s, i, {0, 1});
  FreeVector v = rv(s, j, {0, 1});
  CHECK_THROWS_AS(vec_add(u, v), Error);
  FreeVector w = FreeVector::zero(Semiring::boolean(), i);
  CHECK_THROWS_AS(vec_add(u, w), Error);
  CHECK_THROWS_AS(scalar_mul(Value::finite(1), u), Error);
}

TEST_CASE("vector enumeration covers the whole module once") {
  Semiring c = Semiring::chain(3);
  IndexSet i = ix({"x", "y"});
  auto all = enumerate_vectors(c, i);
  CHECK(all.size() == 9);
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = a + 1; b < all.size(); ++b) REQUIRE(all[a] != all[b]);
  CHECK_THROWS_AS(enumerate_vectors(Semiring::rmax(), i), Error);
}
