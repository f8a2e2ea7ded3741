#include "idem/checks.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "idem/error.hpp"
#include "idem/exttensor.hpp"
#include "idem/freemod.hpp"
#include "idem/freetensor.hpp"
#include "idem/kernelop.hpp"
#include "idem/rng.hpp"
#include "idem/semiring.hpp"

namespace idem {
namespace {

// Keeps the first failing witness; later failures in the same property are
// almost always the same defect repeated.
struct Prop {
  bool ok = true;
  std::string w;
  void fail(std::string msg) {
    if (ok) {
      ok = false;
      w = std::move(msg);
    }
  }
};

struct Recorder {
  const char* suite;
  std::vector<PropertyResult>& out;
  void add(const char* name, const Prop& p) { out.push_back({suite, name, p.ok, p.w}); }
};

std::size_t trials(const SuiteOptions& o, std::size_t def) {
  return o.size == 0 ? def : std::max<std::size_t>(1, def * o.size / 2);
}

// size 1 keeps only the smallest instances; 0 (default) and >= 2 include
// the larger exhaustive scans.
bool big_instances(const SuiteOptions& o) { return o.size == 0 || o.size >= 2; }

IndexSet gen_ix(char base, std::size_t n) {
  std::vector<std::string> ls;
  ls.reserve(n);
  for (std::size_t i = 0; i < n; ++i) ls.push_back(std::string(1, base) + std::to_string(i));
  return IndexSet(std::move(ls));
}

FreeVector rand_vec(const Semiring& sr, const IndexSet& ix, Rng& rng) {
  std::vector<Value> c;
  c.reserve(ix.size());
  for (std::size_t i = 0; i < ix.size(); ++i) c.push_back(rng.value_in(sr));
  return FreeVector(sr, ix, std::move(c));
}

Kernel rand_kernel(const Semiring& sr, const IndexSet& rows, const IndexSet& cols, Rng& rng) {
  std::vector<Value> e;
  e.reserve(rows.size() * cols.size());
  for (std::size_t i = 0; i < rows.size() * cols.size(); ++i) e.push_back(rng.value_in(sr));
  return Kernel(sr, rows, cols, std::move(e));
}

std::string coeffs_str(const FreeVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += " ";
    s += v.semiring().format_value(v[i]);
  }
  return s + ")";
}

TensorKernel outer2(const FreeVector& a, const FreeVector& b) {
  const std::array<FreeVector, 2> fs{a, b};
  return outer(fs);
}

// The four-element lattice o < a,b < i with meet as multiplication.
TableDef diamond_def() {
  return {{"o", "a", "b", "i"},
          0,
          3,
          {0, 1, 2, 3, 1, 1, 3, 3, 2, 3, 2, 3, 3, 3, 3, 3},
          {0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 2, 2, 0, 1, 2, 3}};
}

// Max-plus on {bot, 0, 1, 2} with addition saturating at 2.
TableDef satmaxplus_def() {
  return {{"bot", "p0", "p1", "p2"},
          0,
          1,
          {0, 1, 2, 3, 1, 1, 2, 3, 2, 2, 2, 3, 3, 3, 3, 3},
          {0, 0, 0, 0, 0, 1, 2, 3, 0, 2, 3, 3, 0, 3, 3, 3}};
}

// a + a = b, so addition is not idempotent.
TableDef broken_add_def() { return {{"a", "b"}, 0, 1, {1, 1, 1, 1}, {0, 0, 0, 1}}; }

// m * (m + t) lands below (m * m) + (m * t).
TableDef broken_mul_def() {
  return {{"z", "m", "t"}, 0, 2, {0, 1, 2, 1, 1, 2, 2, 2, 2}, {0, 0, 0, 0, 2, 1, 0, 1, 2}};
}

Tuple tup(std::initializer_list<std::size_t> xs) {
  Tuple t;
  for (auto x : xs) t.push_back(Value::finite(x));
  return t;
}

FinSemimodule bool_cube(std::size_t dim) {
  return FinSemimodule::full_cube(Semiring::boolean(), dim);
}

// Proper submodule of the boolean square: {(0,0), (0,1), (1,1)}.
FinSemimodule three_elt() {
  const std::vector<Tuple> gens = {tup({0, 1}), tup({1, 1})};
  return FinSemimodule::span(Semiring::boolean(), 2, gens);
}

FinSemimodule chain3_line() { return FinSemimodule::full_cube(Semiring::chain(3), 1); }

std::vector<std::size_t> pts_of(std::uint64_t mask, std::size_t n) {
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1) v.push_back(i);
  return v;
}

std::uint64_t mask_of(const ExtTensor& t) {
  std::uint64_t m = 0;
  for (std::size_t p : t.points()) m |= std::uint64_t{1} << p;
  return m;
}

std::vector<std::uint64_t> all_hulls(const SpacePtr& sp, RuleOrder ord) {
  const std::size_t n = sp->total();
  std::vector<std::uint64_t> h(std::size_t{1} << n);
  for (std::uint64_t m = 0; m < h.size(); ++m) h[m] = mask_of(tau_hull(sp, pts_of(m, n), ord));
  return h;
}

void suite_semiring(const SuiteOptions& opt, std::vector<PropertyResult>& out) {
  Recorder r{"semiring", out};
  {
    Prop p;
    for (const Semiring& sr :
         {Semiring::boolean(), Semiring::chain(3), Semiring::chain(5),
          Semiring::table(diamond_def()), Semiring::table(satmaxplus_def())}) {
      const auto rep = sr.validate();
      for (const auto& l : rep.laws)
        if (l.status == LawStatus::fail) p.fail(sr.name() + ": " + l.law + " " + l.witness);
    }
    r.add("finite_laws_exhaustive", p);
  }
  {
    Prop p;
    const auto rep = Semiring::table(broken_add_def()).validate();
    bool flagged = false;
    for (const auto& l : rep.laws)
      if (l.law == "add_idempotent" && l.status == LawStatus::fail && !l.witness.empty())
        flagged = true;
    if (!flagged) p.fail("non-idempotent addition slipped through validation");
    r.add("broken_idempotency_detected", p);
  }
  {
    Prop p;
    const auto rep = Semiring::table(broken_mul_def()).validate();
    bool flagged = false;
    for (const auto& l : rep.laws)
      if (l.law == "distributive_left" && l.status == LawStatus::fail && !l.witness.empty())
        flagged = true;
    if (!flagged) p.fail("non-distributive multiplication slipped through validation");
    r.add("broken_distributivity_detected", p);
  }
  {
    Prop p;
    Rng rng(opt.seed);
    const std::size_t n = trials(opt, 1000);
    for (const Semiring& sr : {Semiring::rmax(), Semiring::rmax_top(), Semiring::rmin()}) {
      for (std::size_t t = 0; t < n && p.ok; ++t) {
        const Value a = rng.value_in(sr), b = rng.value_in(sr), c = rng.value_in(sr);
        const std::string at = sr.name() + " trial " + std::to_string(t);
        if (sr.add(a, a) != a) p.fail(at + ": a+a != a at a=" + sr.format_value(a));
        if (sr.add(a, b) != sr.add(b, a)) p.fail(at + ": addition not commutative");
        if (sr.add(sr.add(a, b), c) != sr.add(a, sr.add(b, c)))
          p.fail(at + ": addition not associative");
        if (sr.mul(sr.mul(a, b), c) != sr.mul(a, sr.mul(b, c)))
          p.fail(at + ": multiplication not associative");
        if (sr.mul(a, sr.add(b, c)) != sr.add(sr.mul(a, b), sr.mul(a, c)))
          p.fail(at + ": left distributivity failed");
        if (sr.mul(sr.add(b, c), a) != sr.add(sr.mul(b, a), sr.mul(c, a)))
          p.fail(at + ": right distributivity failed");
        if (sr.add(sr.zero(), a) != a) p.fail(at + ": zero not neutral");
        if (sr.mul(sr.zero(), a) != sr.zero() || sr.mul(a, sr.zero()) != sr.zero())
          p.fail(at + ": zero not absorbing");
        if (sr.mul(sr.one(), a) != a || sr.mul(a, sr.one()) != a)
          p.fail(at + ": one not neutral");
      }
    }
    r.add("real_laws_sampled", p);
  }
  {
    Prop p;
    for (const Semiring& sr :
         {Semiring::chain(4), Semiring::table(diamond_def()), Semiring::table(satmaxplus_def())}) {
      const auto e = sr.carrier();
      for (Value a : e)
        for (Value b : e) {
          const std::array<Value, 2> ab{a, b};
          const Value m = sr.meet(ab);
          if (!sr.leq(m, a) || !sr.leq(m, b))
            p.fail(sr.name() + ": meet above " + sr.format_value(a) + "," + sr.format_value(b));
          for (Value c : e)
            if (sr.leq(c, a) && sr.leq(c, b) && !sr.leq(c, m))
              p.fail(sr.name() + ": meet of " + sr.format_value(a) + "," + sr.format_value(b) +
                     " excludes lower bound " + sr.format_value(c));
        }
    }
    r.add("meet_greatest_lower_bound", p);
  }
  {
    Prop p;
    for (const Semiring& sr : {Semiring::boolean(), Semiring::rmax(), Semiring::rmin()})
      if (sr.sup(std::span<const Value>{}) != sr.zero())
        p.fail(sr.name() + ": sup of nothing is not zero");
    if (!Semiring::rmin().leq(Value::real(5), Value::real(3)))
      p.fail("min-plus order should place 5 below 3");
    if (Semiring::rmin().zero() != Value::pos_inf()) p.fail("min-plus zero should be +inf");
    const Semiring b = Semiring::boolean(), c2 = Semiring::chain(2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        const Value x = Value::finite(i), y = Value::finite(j);
        if (b.add(x, y) != c2.add(x, y) || b.mul(x, y) != c2.mul(x, y))
          p.fail("two-element chain differs from boolean at " + std::to_string(i) + "," +
                 std::to_string(j));
      }
    r.add("order_from_addition", p);
  }
  {
    Prop p;
    const Semiring rt = Semiring::rmax_top();
    if (!rt.has_top() || rt.top() != Value::pos_inf()) p.fail("adjoined top is not +inf");
    if (rt.mul(rt.zero(), rt.top()) != rt.zero() || rt.mul(rt.top(), rt.zero()) != rt.zero())
      p.fail("zero must absorb the adjoined top");
    if (Semiring::rmax().completed_top().kind() != SemiringKind::rmax_top)
      p.fail("completing max-plus must adjoin +inf");
    if (Semiring::boolean().completed_top().kind() != SemiringKind::boolean)
      p.fail("finite kinds already have a top");
    r.add("top_adjunction", p);
  }
}

void suite_freemod(const SuiteOptions& opt, std::vector<PropertyResult>& out) {
  Recorder r{"freemod", out};
  const Semiring b = Semiring::boolean(), c3 = Semiring::chain(3), rx = Semiring::rmax();
  Rng rng(opt.seed);
  {
    Prop p;
    const IndexSet ix = gen_ix('x', 2);
    for (const Semiring& sr : {b, c3}) {
      const auto vs = enumerate_vectors(sr, ix);
      for (const auto& a : vs)
        for (const auto& u : vs) {
          for (const auto& v : vs)
            if (functional_apply(a, vec_add(u, v)) !=
                sr.add(functional_apply(a, u), functional_apply(a, v)))
              p.fail(sr.name() + ": pairing not additive at a=" + coeffs_str(a) +
                     " u=" + coeffs_str(u) + " v=" + coeffs_str(v));
          for (Value k : sr.carrier())
            if (functional_apply(a, scalar_mul(k, u)) != sr.mul(k, functional_apply(a, u)))
              p.fail(sr.name() + ": pairing not homogeneous at k=" + sr.format_value(k) +
                     " a=" + coeffs_str(a) + " u=" + coeffs_str(u));
        }
    }
    r.add("pairing_linear_exhaustive", p);
  }
  {
    Prop p;
    const std::size_t n = trials(opt, 1000);
    for (std::size_t t = 0; t < n && p.ok; ++t) {
      const IndexSet ix = gen_ix('x', 1 + rng.below(4));
      const FreeVector u = rand_vec(rx, ix, rng), v = rand_vec(rx, ix, rng),
                       w = rand_vec(rx, ix, rng);
      const Value k = rng.value_in(rx), l = rng.value_in(rx);
      const std::string at = "trial " + std::to_string(t);
      if (vec_add(u, v) != vec_add(v, u)) p.fail(at + ": vector sum not commutative");
      if (vec_add(vec_add(u, v), w) != vec_add(u, vec_add(v, w)))
        p.fail(at + ": vector sum not associative");
      if (vec_add(u, u) != u) p.fail(at + ": vector sum not idempotent");
      if (vec_add(u, FreeVector::zero(rx, ix)) != u) p.fail(at + ": zero vector not neutral");
      if (scalar_mul(k, vec_add(u, v)) != vec_add(scalar_mul(k, u), scalar_mul(k, v)))
        p.fail(at + ": scalar does not distribute over vector sum");
      if (scalar_mul(rx.add(k, l), u) != vec_add(scalar_mul(k, u), scalar_mul(l, u)))
        p.fail(at + ": sum of scalars does not distribute");
      if (scalar_mul(rx.mul(k, l), u) != scalar_mul(k, scalar_mul(l, u)))
        p.fail(at + ": scalar action not associative");
      if (scalar_mul(rx.one(), u) != u) p.fail(at + ": one moved a vector");
      if (scalar_mul(rx.zero(), u) != FreeVector::zero(rx, ix))
        p.fail(at + ": zero scalar missed the zero vector");
    }
    r.add("module_laws_sampled", p);
  }
  {
    Prop p;
    const IndexSet ix = gen_ix('x', 2);
    for (const auto& v : enumerate_vectors(c3, ix)) {
      std::vector<FreeVector> parts;
      for (std::size_t i = 0; i < ix.size(); ++i)
        parts.push_back(scalar_mul(v[i], FreeVector::delta(c3, ix, i)));
      if (vec_sup(c3, ix, parts) != v) p.fail("delta expansion broke at " + coeffs_str(v));
    }
    for (std::size_t t = 0; t < trials(opt, 200) && p.ok; ++t) {
      const IndexSet iy = gen_ix('y', 1 + rng.below(4));
      const FreeVector v = rand_vec(rx, iy, rng);
      std::vector<FreeVector> parts;
      for (std::size_t i = 0; i < iy.size(); ++i)
        parts.push_back(scalar_mul(v[i], FreeVector::delta(rx, iy, i)));
      if (vec_sup(rx, iy, parts) != v)
        p.fail("delta expansion broke at trial " + std::to_string(t));
    }
    r.add("delta_expansion", p);
  }
  {
    Prop p;
    const IndexSet ix = gen_ix('x', 2);
    if (vec_sup(b, ix, std::vector<FreeVector>{}) != FreeVector::zero(b, ix))
      p.fail("empty sup is not the zero vector");
    if (vec_sup(Semiring::rmin(), ix, std::vector<FreeVector>{}) !=
        FreeVector::zero(Semiring::rmin(), ix))
      p.fail("empty sup is not the zero vector over min-plus");
    const auto vs = enumerate_vectors(b, ix);
    for (const auto& u : vs)
      for (const auto& v : vs) {
        bool cw = true;
        for (std::size_t i = 0; i < u.size(); ++i) cw = cw && b.leq(u[i], v[i]);
        if (vec_leq(u, v) != cw)
          p.fail("pointwise order mismatch at u=" + coeffs_str(u) + " v=" + coeffs_str(v));
      }
    r.add("order_and_empty_sup", p);
  }
}

void suite_kernelop(const SuiteOptions& opt, std::vector<PropertyResult>& out) {
  Recorder r{"kernelop", out};
  const Semiring b = Semiring::boolean(), rx = Semiring::rmax();
  Rng rng(opt.seed);
  const IndexSet bx = gen_ix('x', 2), by = gen_ix('y', 2);
  const auto bkerns = enumerate_kernels(b, bx, by);
  const auto bvecs = enumerate_vectors(b, bx);
  {
    Prop p;
    for (const auto& m : bkerns) {
      for (const auto& u : bvecs)
        for (const auto& v : bvecs)
          if (apply(m, vec_add(u, v)) != vec_add(apply(m, u), apply(m, v)))
            p.fail("apply not additive at u=" + coeffs_str(u) + " v=" + coeffs_str(v));
      for (Value k : b.carrier())
        for (const auto& u : bvecs)
          if (apply(m, scalar_mul(k, u)) != scalar_mul(k, apply(m, u)))
            p.fail("apply not homogeneous at k=" + b.format_value(k) + " u=" + coeffs_str(u));
    }
    for (std::size_t t = 0; t < trials(opt, 500) && p.ok; ++t) {
      const IndexSet rows = gen_ix('x', 1 + rng.below(4)), cols = gen_ix('y', 1 + rng.below(4));
      const Kernel m = rand_kernel(rx, rows, cols, rng);
      const FreeVector u = rand_vec(rx, rows, rng), v = rand_vec(rx, rows, rng);
      const Value k = rng.value_in(rx);
      if (apply(m, vec_add(u, v)) != vec_add(apply(m, u), apply(m, v)))
        p.fail("trial " + std::to_string(t) + ": apply not additive");
      if (apply(m, scalar_mul(k, u)) != scalar_mul(k, apply(m, u)))
        p.fail("trial " + std::to_string(t) + ": apply not homogeneous");
    }
    r.add("apply_linear", p);
  }
  {
    Prop p;
    for (std::size_t t = 0; t < trials(opt, 300) && p.ok; ++t) {
      const IndexSet ia = gen_ix('a', 1 + rng.below(3)), ib = gen_ix('b', 1 + rng.below(3)),
                     ic = gen_ix('c', 1 + rng.below(3)), id = gen_ix('d', 1 + rng.below(3));
      const Kernel m = rand_kernel(rx, ia, ib, rng), n = rand_kernel(rx, ib, ic, rng),
                   o = rand_kernel(rx, ic, id, rng);
      const FreeVector phi = rand_vec(rx, ia, rng);
      const std::string at = "trial " + std::to_string(t);
      if (apply(compose(m, n), phi) != apply(n, apply(m, phi)))
        p.fail(at + ": composite disagrees with sequential application");
      if (compose(compose(m, n), o) != compose(m, compose(n, o)))
        p.fail(at + ": composition not associative");
      if (compose(m, Kernel::identity(rx, ib)) != m || compose(Kernel::identity(rx, ia), m) != m)
        p.fail(at + ": identity kernel not neutral");
    }
    r.add("compose_sequential", p);
  }
  {
    Prop p;
    for (const auto& m : bkerns) {
      const Kernel got = extract([&](const FreeVector& v) { return apply(m, v); }, b, bx, by);
      if (got != m) p.fail("probing with deltas missed a boolean kernel");
      const auto bad =
          certify_extract(got, [&](const FreeVector& v) { return apply(m, v); }, bvecs);
      if (!bad.empty()) p.fail("certification rejected a linear map");
    }
    for (std::size_t t = 0; t < trials(opt, 300) && p.ok; ++t) {
      const IndexSet rows = gen_ix('x', 1 + rng.below(4)), cols = gen_ix('y', 1 + rng.below(4));
      const Kernel m = rand_kernel(rx, rows, cols, rng);
      const Kernel got = extract([&](const FreeVector& v) { return apply(m, v); }, rx, rows, cols);
      if (got != m) p.fail("trial " + std::to_string(t) + ": probing changed a kernel");
    }
    const auto constant = [&](const FreeVector&) {
      return FreeVector(b, by, {b.one(), b.one()});
    };
    const Kernel guess = extract(constant, b, bx, by);
    if (certify_extract(guess, constant, bvecs).empty())
      p.fail("a map that ignores its input passed certification");
    r.add("extract_round_trip", p);
  }
  {
    Prop p;
    const auto check_nuclear = [&](const Kernel& m, const std::string& at) {
      const auto terms = nuclear_decompose(m);
      std::vector<Kernel> parts;
      for (const auto& tm : terms) {
        const Kernel k1 = rank_one(tm.functional, tm.vector);
        parts.push_back(k1);
        for (std::size_t x = 0; x < m.rows().size(); ++x)
          for (std::size_t y = 0; y < m.cols().size(); ++y)
            if (!m.semiring().leq(k1.entry(x, y), m.entry(x, y)))
              p.fail(at + ": a rank-one term escapes above the kernel");
      }
      if (kernel_sup(m.semiring(), m.rows(), m.cols(), parts) != m)
        p.fail(at + ": rank-one terms do not recompose the kernel");
    };
    for (const auto& m : bkerns) check_nuclear(m, "boolean scan");
    for (std::size_t t = 0; t < trials(opt, 1000) && p.ok; ++t) {
      const IndexSet rows = gen_ix('x', 1 + rng.below(5)), cols = gen_ix('y', 1 + rng.below(5));
      check_nuclear(rand_kernel(rx, rows, cols, rng), "trial " + std::to_string(t));
    }
    r.add("nuclear_recompose", p);
  }
  {
    Prop p;
    for (std::size_t t = 0; t < trials(opt, 200) && p.ok; ++t) {
      const IndexSet ia = gen_ix('a', 1 + rng.below(3)), ib = gen_ix('b', 1 + rng.below(3)),
                     ic = gen_ix('c', 1 + rng.below(3)), id = gen_ix('d', 1 + rng.below(3));
      const Kernel m = rand_kernel(rx, ia, ib, rng), n = rand_kernel(rx, ic, id, rng);
      const Kernel k = kron(m, n);
      const std::string at = "trial " + std::to_string(t);
      if (k.rows() != product(ia, ic) || k.cols() != product(ib, id)) {
        p.fail(at + ": kron shape mismatch");
        continue;
      }
      for (std::size_t x1 = 0; x1 < ia.size(); ++x1)
        for (std::size_t x2 = 0; x2 < ic.size(); ++x2)
          for (std::size_t y1 = 0; y1 < ib.size(); ++y1)
            for (std::size_t y2 = 0; y2 < id.size(); ++y2)
              if (k.entry(x1 * ic.size() + x2, y1 * id.size() + y2) !=
                  rx.mul(m.entry(x1, y1), n.entry(x2, y2)))
                p.fail(at + ": kron entry is not the product of entries");
      const FreeVector phi = rand_vec(rx, ia, rng), psi = rand_vec(rx, ic, rng);
      if (apply(k, outer2(phi, psi).as_vector()) !=
          outer2(apply(m, phi), apply(n, psi)).as_vector())
        p.fail(at + ": kron does not act factorwise on pure tensors");
    }
    r.add("kron_product_action", p);
  }
}

void suite_prop5(const SuiteOptions& opt, std::vector<PropertyResult>& out) {
  Recorder r{"prop5", out};
  const Semiring b = Semiring::boolean(), rx = Semiring::rmax();
  Rng rng(opt.seed);
  {
    Prop p;
    const std::vector<IndexSet> bf{gen_ix('x', 2), gen_ix('y', 2)};
    for (const auto& v : enumerate_vectors(b, product(bf[0], bf[1]))) {
      const TensorKernel t = TensorKernel::from_vector(v, bf);
      if (from_pure_sum(b, bf, to_pure_sum(t)) != t)
        p.fail("boolean round trip broke at " + coeffs_str(v));
    }
    for (std::size_t i = 0; i < trials(opt, 1000) && p.ok; ++i) {
      const std::vector<IndexSet> fs{gen_ix('x', 1 + rng.below(4)), gen_ix('y', 1 + rng.below(4))};
      const TensorKernel t =
          TensorKernel::from_vector(rand_vec(rx, product(fs[0], fs[1]), rng), fs);
      if (from_pure_sum(rx, fs, to_pure_sum(t)) != t)
        p.fail("trial " + std::to_string(i) + ": round trip changed the tensor");
    }
    r.add("ij_identity", p);
  }
  {
    Prop p;
    const std::vector<IndexSet> bf{gen_ix('x', 2), gen_ix('y', 2)};
    std::vector<PureTerm> pool;
    for (std::size_t x = 0; x < 2; ++x)
      for (std::size_t y = 0; y < 2; ++y)
        for (std::size_t kv = 0; kv < 2; ++kv)
          pool.push_back({{bf[0].label(x), bf[1].label(y)}, Value::finite(kv)});
    for (std::size_t i = 0; i <= pool.size(); ++i)
      for (std::size_t j = 0; j <= pool.size(); ++j) {
        PureSum s;
        if (i < pool.size()) s.terms.push_back(pool[i]);
        if (j < pool.size()) s.terms.push_back(pool[j]);
        const TensorKernel t = from_pure_sum(b, bf, s);
        if (from_pure_sum(b, bf, to_pure_sum(t)) != t) p.fail("boolean normal form drifted");
      }
    for (std::size_t i = 0; i < trials(opt, 1000) && p.ok; ++i) {
      const std::vector<IndexSet> fs{gen_ix('x', 1 + rng.below(4)), gen_ix('y', 1 + rng.below(4))};
      PureSum s;
      const std::size_t nt = rng.below(6);
      for (std::size_t j = 0; j < nt; ++j)
        s.terms.push_back(
            {{fs[0].label(rng.below(fs[0].size())), fs[1].label(rng.below(fs[1].size()))},
             rng.value_in(rx)});
      const TensorKernel t = from_pure_sum(rx, fs, s);
      const PureSum back = to_pure_sum(t);
      if (from_pure_sum(rx, fs, back) != t)
        p.fail("trial " + std::to_string(i) + ": normal form drifted");
      const PureSum again = to_pure_sum(from_pure_sum(rx, fs, back));
      bool same = again.terms.size() == back.terms.size();
      for (std::size_t j = 0; same && j < back.terms.size(); ++j)
        same = again.terms[j].labels == back.terms[j].labels &&
               again.terms[j].coeff == back.terms[j].coeff;
      if (!same) p.fail("trial " + std::to_string(i) + ": second pass was not stable");
    }
    r.add("ji_identity", p);
  }
}

// Shared tables for the extensional factorization scans: the canonical
// family with its addition, scalar action, and point projection, indexed by
// position in the enumerated list.
struct ExtInstance {
  SpacePtr sp;
  FinSemimodule cod;
  std::vector<ExtTensor> tensors;
  std::map<std::uint64_t, std::size_t> index_of;
  std::vector<std::size_t> pi_tab;
  std::vector<std::vector<std::size_t>> add_tab;
  std::vector<std::vector<std::size_t>> smul_tab;
};

ExtInstance build_instance(SpacePtr sp, FinSemimodule cod) {
  ExtInstance inst{std::move(sp), std::move(cod), {}, {}, {}, {}, {}};
  inst.tensors = enumerate_tensors(inst.sp);
  for (std::size_t i = 0; i < inst.tensors.size(); ++i)
    inst.index_of[mask_of(inst.tensors[i])] = i;
  for (std::size_t pnt = 0; pnt < inst.sp->total(); ++pnt)
    inst.pi_tab.push_back(inst.index_of.at(mask_of(canonical_pi(inst.sp, pnt))));
  const std::size_t tn = inst.tensors.size();
  inst.add_tab.assign(tn, std::vector<std::size_t>(tn));
  for (std::size_t i = 0; i < tn; ++i)
    for (std::size_t j = 0; j < tn; ++j)
      inst.add_tab[i][j] =
          inst.index_of.at(mask_of(tensor_add(inst.tensors[i], inst.tensors[j])));
  const auto ks = inst.sp->semiring().carrier();
  inst.smul_tab.assign(ks.size(), std::vector<std::size_t>(tn));
  for (std::size_t kv = 0; kv < ks.size(); ++kv)
    for (std::size_t i = 0; i < tn; ++i)
      inst.smul_tab[kv][i] =
          inst.index_of.at(mask_of(tensor_scalar(ks[kv], inst.tensors[i], 0)));
  return inst;
}

// All polylinear tables over the instance's cubes into its codomain, by
// mixed-radix code over the generator tuples.
std::vector<std::size_t> decode_gen_table(const ExtInstance& inst, std::size_t code,
                                          std::size_t gens) {
  std::vector<std::size_t> gv(gens);
  for (std::size_t g = gens; g-- > 0;) {
    gv[g] = code % inst.cod.size();
    code /= inst.cod.size();
  }
  return gv;
}

void suite_theorem1(const SuiteOptions& opt, std::vector<PropertyResult>& out) {
  Recorder r{"theorem1", out};
  const FinSemimodule w1 = bool_cube(1);
  std::vector<ExtInstance> insts;
  insts.push_back(build_instance(make_space({bool_cube(1), bool_cube(1)}), w1));
  if (big_instances(opt))
    insts.push_back(build_instance(make_space({bool_cube(2), bool_cube(2)}), w1));
  Prop pfac, plin, puni;
  for (const auto& inst : insts) {
    std::size_t gens = 1;
    for (std::size_t a = 0; a < inst.sp->arity(); ++a) gens *= inst.sp->factor(a).dim();
    std::size_t ntab = 1;
    for (std::size_t g = 0; g < gens; ++g) ntab *= inst.cod.size();
    const std::size_t tn = inst.tensors.size();
    const auto ks = inst.sp->semiring().carrier();
    for (std::size_t code = 0; code < ntab; ++code) {
      const auto gv = decode_gen_table(inst, code, gens);
      const PolyMapTable f = PolyMapTable::from_generators(inst.sp, inst.cod, gv);
      const std::string at = "table " + std::to_string(code) + " on " +
                             std::to_string(inst.sp->total()) + " points";
      std::vector<std::size_t> flin(tn);
      for (std::size_t i = 0; i < tn; ++i) flin[i] = factorize_ext(f, inst.tensors[i]);
      for (std::size_t pnt = 0; pnt < inst.sp->total(); ++pnt)
        if (flin[inst.pi_tab[pnt]] != f.value(pnt))
          pfac.fail(at + ": does not factor at point " + std::to_string(pnt));
      for (std::size_t i = 0; i < tn; ++i)
        for (std::size_t j = 0; j < tn; ++j)
          if (flin[inst.add_tab[i][j]] != inst.cod.add(flin[i], flin[j]))
            plin.fail(at + ": factorization not additive");
      for (std::size_t kv = 0; kv < ks.size(); ++kv)
        for (std::size_t i = 0; i < tn; ++i)
          if (flin[inst.smul_tab[kv][i]] != inst.cod.smul(ks[kv], flin[i]))
            plin.fail(at + ": factorization not homogeneous");
      // every assignment of codomain values to canonical sets, checked
      // against the factorization conditions; exactly one may survive
      std::size_t survivors = 0;
      std::size_t total_g = 1;
      for (std::size_t i = 0; i < tn; ++i) total_g *= inst.cod.size();
      std::vector<std::size_t> g(tn);
      for (std::size_t gc = 0; gc < total_g; ++gc) {
        std::size_t cc = gc;
        for (std::size_t i = tn; i-- > 0;) {
          g[i] = cc % inst.cod.size();
          cc /= inst.cod.size();
        }
        bool okg = true;
        for (std::size_t pnt = 0; okg && pnt < inst.sp->total(); ++pnt)
          okg = g[inst.pi_tab[pnt]] == f.value(pnt);
        for (std::size_t i = 0; okg && i < tn; ++i)
          for (std::size_t j = 0; okg && j < tn; ++j)
            okg = g[inst.add_tab[i][j]] == inst.cod.add(g[i], g[j]);
        for (std::size_t kv = 0; okg && kv < ks.size(); ++kv)
          for (std::size_t i = 0; okg && i < tn; ++i)
            okg = g[inst.smul_tab[kv][i]] == inst.cod.smul(ks[kv], g[i]);
        if (okg) {
          ++survivors;
          if (g != flin) puni.fail(at + ": a different linear factorization appeared");
        }
      }
      if (survivors != 1)
        puni.fail(at + ": " + std::to_string(survivors) + " factorizations survived");
    }
  }
  r.add("factors_through_projection", pfac);
  r.add("factorization_linear", plin);
  r.add("factorization_unique", puni);
}

void suite_theorem3(const SuiteOptions& opt, std::vector<PropertyResult>& out) {
  Recorder r{"theorem3", out};
  const Semiring b = Semiring::boolean(), rx = Semiring::rmax();
  Rng rng(opt.seed);
  {
    Prop p;
    const IndexSet X = gen_ix('x', 2), Y = gen_ix('y', 2);
    const IndexBijection biso = comm_iso(X, Y);
    for (const auto& u : enumerate_vectors(b, product(X, Y)))
      if (biso.backward(biso.forward(u)) != u) p.fail("boolean round trip failed");
    for (const auto& phi : enumerate_vectors(b, X))
      for (const auto& psi : enumerate_vectors(b, Y))
        if (biso.forward(outer2(phi, psi).as_vector()) != outer2(psi, phi).as_vector())
          p.fail("swap missed a boolean pure tensor");
    for (std::size_t t = 0; t < trials(opt, 1000) && p.ok; ++t) {
      const IndexSet A = gen_ix('x', 1 + rng.below(4)), B = gen_ix('y', 1 + rng.below(4));
      const IndexBijection iso = comm_iso(A, B);
      const FreeVector u = rand_vec(rx, iso.from, rng), v = rand_vec(rx, iso.from, rng);
      const FreeVector w = rand_vec(rx, iso.to, rng);
      const Value k = rng.value_in(rx);
      const std::string at = "trial " + std::to_string(t);
      if (iso.backward(iso.forward(u)) != u) p.fail(at + ": backward undid nothing");
      if (iso.forward(iso.backward(w)) != w) p.fail(at + ": forward undid nothing");
      if (iso.forward(vec_add(u, v)) != vec_add(iso.forward(u), iso.forward(v)))
        p.fail(at + ": swap not additive");
      if (iso.forward(scalar_mul(k, u)) != scalar_mul(k, iso.forward(u)))
        p.fail(at + ": swap not homogeneous");
      const FreeVector phi = rand_vec(rx, A, rng), psi = rand_vec(rx, B, rng);
      if (iso.forward(outer2(phi, psi).as_vector()) != outer2(psi, phi).as_vector())
        p.fail(at + ": swap missed a pure tensor");
    }
    r.add("commutation_iso", p);
  }
  {
    Prop p;
    {
      const IndexSet X = gen_ix('x', 2), Y = gen_ix('y', 1), Z = gen_ix('z', 2);
      const IndexBijection iso = assoc_iso(X, Y, Z);
      for (const auto& u : enumerate_vectors(b, iso.from))
        if (iso.backward(iso.forward(u)) != u) p.fail("boolean regroup round trip failed");
      for (const auto& phi : enumerate_vectors(b, X))
        for (const auto& psi : enumerate_vectors(b, Y))
          for (const auto& chi : enumerate_vectors(b, Z))
            if (iso.forward(outer2(outer2(phi, psi).as_vector(), chi).as_vector()) !=
                outer2(phi, outer2(psi, chi).as_vector()).as_vector())
              p.fail("regroup missed a boolean pure tensor");
    }
    for (std::size_t t = 0; t < trials(opt, 1000) && p.ok; ++t) {
      const IndexSet X = gen_ix('x', 1 + rng.below(3)), Y = gen_ix('y', 1 + rng.below(3)),
                     Z = gen_ix('z', 1 + rng.below(3));
      const IndexBijection iso = assoc_iso(X, Y, Z);
      const FreeVector u = rand_vec(rx, iso.from, rng), w = rand_vec(rx, iso.to, rng);
      const std::string at = "trial " + std::to_string(t);
      if (iso.backward(iso.forward(u)) != u || iso.forward(iso.backward(w)) != w)
        p.fail(at + ": regroup round trip failed");
      const FreeVector phi = rand_vec(rx, X, rng), psi = rand_vec(rx, Y, rng),
                       chi = rand_vec(rx, Z, rng);
      if (iso.forward(outer2(outer2(phi, psi).as_vector(), chi).as_vector()) !=
          outer2(phi, outer2(psi, chi).as_vector()).as_vector())
        p.fail(at + ": regroup missed a pure tensor");
    }
    r.add("association_iso", p);
  }
  {
    Prop p;
    for (std::size_t t = 0; t < trials(opt, 1000) && p.ok; ++t) {
      const IndexSet X = gen_ix('x', 1 + rng.below(3)), Y = gen_ix('y', 1 + rng.below(3)),
                     Z = gen_ix('z', 1 + rng.below(3));
      const IndexBijection iso = distr_iso(X, Y, Z);
      const FreeVector u = rand_vec(rx, iso.from, rng), w = rand_vec(rx, iso.to, rng);
      const std::string at = "trial " + std::to_string(t);
      if (iso.backward(iso.forward(u)) != u || iso.forward(iso.backward(w)) != w)
        p.fail(at + ": distribution round trip failed");
      const std::array<IndexSet, 2> parts{X, Y};
      const std::array<IndexSet, 2> prods{product(X, Z), product(Y, Z)};
      const FreeVector phi = rand_vec(rx, X, rng), psi = rand_vec(rx, Y, rng),
                       chi = rand_vec(rx, Z, rng);
      if (iso.forward(outer2(dsum_inject(parts, 0, phi), chi).as_vector()) !=
          dsum_inject(prods, 0, outer2(phi, chi).as_vector()))
        p.fail(at + ": left summand routed wrongly");
      if (iso.forward(outer2(dsum_inject(parts, 1, psi), chi).as_vector()) !=
          dsum_inject(prods, 1, outer2(psi, chi).as_vector()))
        p.fail(at + ": right summand routed wrongly");
    }
    r.add("distribution_iso", p);
  }
  {
    Prop p;
    // the canonical-set form over full cubes carries the same semimodule as
    // the kernel form: map each canonical set through outer products
    const auto vec_of_tensor = [](const SpacePtr& sp, const std::vector<IndexSet>& fix,
                                  const ExtTensor& t) {
      std::vector<FreeVector> parts;
      for (std::size_t pnt : t.points()) {
        std::vector<FreeVector> fv;
        const auto comps = sp->decode(pnt);
        for (std::size_t a = 0; a < sp->arity(); ++a)
          fv.push_back(FreeVector(sp->semiring(), fix[a], sp->factor(a).element(comps[a])));
        parts.push_back(outer(fv).as_vector());
      }
      return vec_sup(sp->semiring(), product(fix[0], fix[1]), parts);
    };
    const auto check_space = [&](std::size_t d1, std::size_t d2) {
      const SpacePtr sp = make_space({bool_cube(d1), bool_cube(d2)});
      const std::vector<IndexSet> fix{gen_ix('x', d1), gen_ix('y', d2)};
      const auto ts = enumerate_tensors(sp);
      std::vector<FreeVector> images;
      for (const auto& t : ts) images.push_back(vec_of_tensor(sp, fix, t));
      for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j)
          if (images[i] == images[j]) p.fail("two canonical sets map to one kernel form");
      const auto all = enumerate_vectors(b, product(fix[0], fix[1]));
      if (all.size() != images.size())
        p.fail("canonical family size " + std::to_string(images.size()) +
               " misses the kernel forms " + std::to_string(all.size()));
      for (const auto& v : all) {
        bool hit = false;
        for (const auto& im : images) hit = hit || im == v;
        if (!hit) p.fail("kernel form " + coeffs_str(v) + " has no canonical preimage");
      }
      for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = 0; j < ts.size(); ++j)
          if (vec_of_tensor(sp, fix, tensor_add(ts[i], ts[j])) != vec_add(images[i], images[j]))
            p.fail("cross map not additive");
      for (Value k : b.carrier())
        for (std::size_t i = 0; i < ts.size(); ++i)
          if (vec_of_tensor(sp, fix, tensor_scalar(k, ts[i], 0)) != scalar_mul(k, images[i]))
            p.fail("cross map not homogeneous");
    };
    check_space(1, 1);
    check_space(2, 1);
    r.add("canonical_vs_kernel_form", p);
  }
}

void suite_prop2(const SuiteOptions& opt, std::vector<PropertyResult>& out) {
  (void)opt;
  Recorder r{"prop2", out};
  const Semiring b = Semiring::boolean();
  const IndexSet W = gen_ix('w', 2), X1 = gen_ix('x', 2), X2 = gen_ix('y', 2);
  const std::array<IndexSet, 2> parts{X1, X2};
  const IndexSet U = disjoint_union(parts);
  const auto phis = enumerate_vectors(b, W);
  Prop pproj, puniq;
  {
    const auto f1s = enumerate_kernels(b, W, X1);
    const auto f2s = enumerate_kernels(b, W, X2);
    const auto cands = enumerate_kernels(b, W, U);
    for (const auto& f1 : f1s)
      for (const auto& f2 : f2s) {
        const std::array<Kernel, 2> fs{f1, f2};
        const Kernel h = map_direct_product(fs);
        for (const auto& phi : phis) {
          const FreeVector hu = apply(h, phi);
          if (dsum_project(parts, 0, hu) != apply(f1, phi) ||
              dsum_project(parts, 1, hu) != apply(f2, phi))
            pproj.fail("pairing does not project back to its components");
        }
        for (const auto& cand : cands) {
          bool same = true;
          for (const auto& phi : phis) {
            const FreeVector cu = apply(cand, phi);
            same = dsum_project(parts, 0, cu) == apply(f1, phi) &&
                   dsum_project(parts, 1, cu) == apply(f2, phi);
            if (!same) break;
          }
          if (same != (cand == h))
            puniq.fail("the projection equations do not pin down the pairing");
        }
      }
  }
  r.add("product_pairing_projects", pproj);
  r.add("product_pairing_unique", puniq);
  Prop pinj, pcuniq;
  {
    const auto g1s = enumerate_kernels(b, X1, W);
    const auto g2s = enumerate_kernels(b, X2, W);
    const auto cands = enumerate_kernels(b, U, W);
    const auto psis1 = enumerate_vectors(b, X1);
    const auto psis2 = enumerate_vectors(b, X2);
    for (const auto& g1 : g1s)
      for (const auto& g2 : g2s) {
        const std::array<Kernel, 2> gs{g1, g2};
        const Kernel s = map_direct_sum(gs);
        for (const auto& psi : psis1)
          if (apply(s, dsum_inject(parts, 0, psi)) != apply(g1, psi))
            pinj.fail("copairing disagrees with its left component");
        for (const auto& psi : psis2)
          if (apply(s, dsum_inject(parts, 1, psi)) != apply(g2, psi))
            pinj.fail("copairing disagrees with its right component");
        for (const auto& cand : cands) {
          bool same = true;
          for (const auto& psi : psis1) {
            same = apply(cand, dsum_inject(parts, 0, psi)) == apply(g1, psi);
            if (!same) break;
          }
          for (const auto& psi : psis2) {
            if (!same) break;
            same = apply(cand, dsum_inject(parts, 1, psi)) == apply(g2, psi);
          }
          if (same != (cand == s))
            pcuniq.fail("the injection equations do not pin down the copairing");
        }
      }
  }
  r.add("sum_copairing_injects", pinj);
  r.add("sum_copairing_unique", pcuniq);
}

void suite_prop3(const SuiteOptions& opt, std::vector<PropertyResult>& out) {
  Recorder r{"prop3", out};
  Rng rng(opt.seed);
  const std::vector<SpacePtr> pool{
      make_space({bool_cube(1), bool_cube(1)}),
      make_space({bool_cube(2), bool_cube(1)}),
      make_space({three_elt(), bool_cube(1)}),
  };
  // slot transfer of one scalar: replace the point scaled in slot alpha by
  // the same point scaled in slot beta
  const auto scale_slot = [](const SpacePtr& sp, std::size_t pnt, Value k, std::size_t slot) {
    const FinSemimodule& f = sp->factor(slot);
    return sp->with_component(pnt, slot, f.smul(k, sp->component(pnt, slot)));
  };
  {
    Prop p;
    const std::size_t want = trials(opt, 500);
    std::size_t done = 0, guard = 0;
    while (done < want && p.ok && guard < want * 50) {
      ++guard;
      const SpacePtr& sp = pool[rng.below(pool.size())];
      const std::size_t n = sp->total();
      const std::uint64_t m = rng.next() & ((std::uint64_t{1} << n) - 1);
      if (m == 0) continue;
      const auto ks = sp->semiring().carrier();
      const std::size_t x = rng.below(n);
      const Value k = ks[rng.below(ks.size())];
      const std::size_t alpha = rng.below(sp->arity()), beta = rng.below(sp->arity());
      const std::size_t from = scale_slot(sp, x, k, alpha);
      if (!(m >> from & 1)) continue;
      const std::size_t to = scale_slot(sp, x, k, beta);
      const std::uint64_t m2 =
          (m & ~(std::uint64_t{1} << from)) | (std::uint64_t{1} << to);
      if (!tensors_equal(sp, pts_of(m, n), pts_of(m2, n)))
        p.fail("transfer step changed the class at mask " + std::to_string(m) + " on " +
               std::to_string(n) + " points");
      ++done;
    }
    if (done < want) p.fail("could not generate enough transfer steps");
    r.add("scalar_transfer_preserves_class", p);
  }
  {
    Prop p;
    const std::size_t want = trials(opt, 500);
    std::size_t done = 0, guard = 0;
    while (done < want && p.ok && guard < want * 50) {
      ++guard;
      const SpacePtr& sp = pool[rng.below(pool.size())];
      const std::size_t n = sp->total();
      const std::uint64_t m = rng.next() & ((std::uint64_t{1} << n) - 1);
      if (m == 0) continue;
      const auto pts = pts_of(m, n);
      const std::size_t pnt = pts[rng.below(pts.size())];
      const std::size_t alpha = rng.below(sp->arity());
      const FinSemimodule& f = sp->factor(alpha);
      const std::size_t target = sp->component(pnt, alpha);
      // random decomposition of the slot value as a sup
      const auto low = lower_set(f, target);
      const std::uint64_t pick = rng.next();
      std::vector<std::size_t> chosen;
      for (std::size_t i = 0; i < low.size(); ++i)
        if (pick >> i & 1) chosen.push_back(low[i]);
      if (f.sup(chosen) != target) continue;
      std::uint64_t m2 = m & ~(std::uint64_t{1} << pnt);
      for (std::size_t s : chosen)
        m2 |= std::uint64_t{1} << sp->with_component(pnt, alpha, s);
      if (!tensors_equal(sp, pts, pts_of(m2, n)))
        p.fail("sup split changed the class at mask " + std::to_string(m) + " on " +
               std::to_string(n) + " points");
      ++done;
    }
    if (done < want) p.fail("could not generate enough split steps");
    r.add("sup_split_preserves_class", p);
  }
  {
    Prop p;
    // on the smallest square, single rewrite steps connect exactly the
    // point sets with a common hull
    const SpacePtr& sp = pool[0];
    const std::size_t n = sp->total();
    const std::size_t nsub = std::size_t{1} << n;
    std::vector<std::vector<std::size_t>> adj(nsub);
    const auto link = [&](std::size_t a, std::size_t b) {
      if (a == b) return;
      adj[a].push_back(b);
      adj[b].push_back(a);
    };
    const auto ks = sp->semiring().carrier();
    for (std::uint64_t m = 0; m < nsub; ++m) {
      for (std::size_t x = 0; x < n; ++x)
        for (Value k : ks)
          for (std::size_t alpha = 0; alpha < sp->arity(); ++alpha) {
            const std::size_t from = scale_slot(sp, x, k, alpha);
            if (!(m >> from & 1)) continue;
            for (std::size_t beta = 0; beta < sp->arity(); ++beta) {
              const std::size_t to = scale_slot(sp, x, k, beta);
              link(m, (m & ~(std::uint64_t{1} << from)) | (std::uint64_t{1} << to));
            }
          }
      for (std::size_t pnt : pts_of(m, n))
        for (std::size_t alpha = 0; alpha < sp->arity(); ++alpha) {
          const FinSemimodule& f = sp->factor(alpha);
          const std::size_t target = sp->component(pnt, alpha);
          const auto low = lower_set(f, target);
          for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << low.size()); ++sub) {
            std::vector<std::size_t> chosen;
            for (std::size_t i = 0; i < low.size(); ++i)
              if (sub >> i & 1) chosen.push_back(low[i]);
            if (f.sup(chosen) != target) continue;
            std::uint64_t m2 = m & ~(std::uint64_t{1} << pnt);
            for (std::size_t s : chosen)
              m2 |= std::uint64_t{1} << sp->with_component(pnt, alpha, s);
            link(m, m2);
          }
        }
    }
    std::vector<std::size_t> comp(nsub, nsub);
    std::size_t nc = 0;
    for (std::size_t s0 = 0; s0 < nsub; ++s0) {
      if (comp[s0] != nsub) continue;
      std::vector<std::size_t> stack{s0};
      comp[s0] = nc;
      while (!stack.empty()) {
        const std::size_t cur = stack.back();
        stack.pop_back();
        for (std::size_t nx : adj[cur])
          if (comp[nx] == nsub) {
            comp[nx] = nc;
            stack.push_back(nx);
          }
      }
      ++nc;
    }
    for (std::uint64_t a = 0; a < nsub; ++a)
      for (std::uint64_t c = 0; c < nsub; ++c) {
        const bool same_class = tensors_equal(sp, pts_of(a, n), pts_of(c, n));
        if (same_class != (comp[a] == comp[c]))
          p.fail("reachability and hull classes disagree at masks " + std::to_string(a) + "," +
                 std::to_string(c));
      }
    r.add("rewrites_generate_classes", p);
  }
}

void suite_prop4(const SuiteOptions& opt, std::vector<PropertyResult>& out) {
  (void)opt;
  Recorder r{"prop4", out};
  const std::vector<SpacePtr> pool{
      make_space({bool_cube(1), bool_cube(1)}),
      make_space({three_elt(), bool_cube(1)}),
      make_space({bool_cube(2), bool_cube(1)}),
      make_space({chain3_line(), chain3_line()}),
  };
  {
    Prop p;
    for (const auto& sp : pool) {
      const auto ts = enumerate_tensors(sp);
      const ExtTensor zt = tau_hull(sp, {});
      for (const auto& a : ts) {
        if (tensor_add(a, a) != a) p.fail("tensor sum not idempotent");
        if (tensor_add(a, zt) != a) p.fail("zero tensor not neutral");
        for (const auto& c : ts) {
          if (tensor_add(a, c) != tensor_add(c, a)) p.fail("tensor sum not commutative");
          for (const auto& d : ts)
            if (tensor_add(tensor_add(a, c), d) != tensor_add(a, tensor_add(c, d)))
              p.fail("tensor sum not associative");
        }
      }
    }
    r.add("tensor_sum_laws", p);
  }
  {
    Prop p;
    for (const auto& sp : pool) {
      const auto ts = enumerate_tensors(sp);
      const ExtTensor zt = tau_hull(sp, {});
      const auto ks = sp->semiring().carrier();
      for (const auto& a : ts) {
        for (Value k : ks) {
          const ExtTensor ka = tensor_scalar(k, a, 0);
          for (std::size_t slot = 1; slot < sp->arity(); ++slot)
            if (tensor_scalar(k, a, slot) != ka) p.fail("scalar action depends on the slot");
          for (Value l : ks) {
            if (tensor_scalar(sp->semiring().mul(k, l), a, 0) !=
                tensor_scalar(k, tensor_scalar(l, a, 0), 0))
              p.fail("scalar action not associative");
            if (tensor_scalar(sp->semiring().add(k, l), a, 0) !=
                tensor_add(tensor_scalar(k, a, 0), tensor_scalar(l, a, 0)))
              p.fail("sum of scalars does not distribute");
          }
          for (const auto& c : ts)
            if (tensor_scalar(k, tensor_add(a, c), 0) !=
                tensor_add(tensor_scalar(k, a, 0), tensor_scalar(k, c, 0)))
              p.fail("scalar does not distribute over tensor sum");
        }
        if (tensor_scalar(sp->semiring().one(), a, 0) != a) p.fail("unit scalar moved a tensor");
        if (tensor_scalar(sp->semiring().zero(), a, 0) != zt)
          p.fail("zero scalar missed the zero tensor");
      }
    }
    r.add("tensor_scalar_laws", p);
  }
  {
    Prop p;
    for (const auto& sp : pool) {
      const auto ks = sp->semiring().carrier();
      for (std::size_t pnt = 0; pnt < sp->total(); ++pnt)
        for (std::size_t alpha = 0; alpha < sp->arity(); ++alpha) {
          const FinSemimodule& f = sp->factor(alpha);
          for (std::size_t a = 0; a < f.size(); ++a) {
            const std::size_t pa = sp->with_component(pnt, alpha, a);
            for (std::size_t c = 0; c < f.size(); ++c) {
              const std::size_t pc = sp->with_component(pnt, alpha, c);
              const std::size_t ps = sp->with_component(pnt, alpha, f.add(a, c));
              if (canonical_pi(sp, ps) !=
                  tensor_add(canonical_pi(sp, pa), canonical_pi(sp, pc)))
                p.fail("projection not additive in a slot");
            }
            for (Value k : ks) {
              const std::size_t pk = sp->with_component(pnt, alpha, f.smul(k, a));
              if (canonical_pi(sp, pk) != tensor_scalar(k, canonical_pi(sp, pa), alpha))
                p.fail("projection not homogeneous in a slot");
            }
          }
        }
    }
    r.add("projection_polylinear", p);
  }
  {
    Prop p;
    for (const auto& sp : pool) {
      for (std::size_t pnt = 0; pnt < sp->total(); ++pnt)
        for (std::size_t alpha = 0; alpha < sp->arity(); ++alpha) {
          const FinSemimodule& f = sp->factor(alpha);
          const auto fib = fiber(*sp, alpha, pnt);
          for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << fib.size()); ++sub) {
            std::vector<std::size_t> elems;
            ExtTensor acc = tau_hull(sp, {});
            for (std::size_t i = 0; i < fib.size(); ++i)
              if (sub >> i & 1) {
                elems.push_back(sp->component(fib[i], alpha));
                acc = tensor_add(acc, canonical_pi(sp, fib[i]));
              }
            const std::size_t tgt = sp->with_component(pnt, alpha, f.sup(elems));
            if (acc != canonical_pi(sp, tgt)) p.fail("projection misses a fiber sup");
          }
        }
    }
    r.add("projection_fiber_sups", p);
  }
  {
    Prop p;
    const FinSemimodule m1 = bool_cube(2), m2 = three_elt(), m3 = chain3_line();
    for (const FinSemimodule* a : {&m1, &m2}) {
      const FinSemimodule prod = product_module(*a, m1);
      for (const auto& l : prod.validate().laws)
        if (l.status == LawStatus::fail)
          p.fail(std::string("product module: ") + l.law + " " + l.witness);
    }
    const FinSemimodule prod3 = product_module(m3, m3);
    for (const auto& l : prod3.validate().laws)
      if (l.status == LawStatus::fail)
        p.fail(std::string("product module: ") + l.law + " " + l.witness);
    // sups of arbitrary subsets exist and are least upper bounds
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << prod3.size()); ++m) {
      const auto ids = pts_of(m, prod3.size());
      const std::size_t s = prod3.sup(ids);
      for (std::size_t id : ids)
        if (!prod3.leq(id, s)) p.fail("sup is not an upper bound in the product module");
      for (std::size_t u = 0; u < prod3.size(); ++u) {
        bool ub = true;
        for (std::size_t id : ids) ub = ub && prod3.leq(id, u);
        if (ub && !prod3.leq(s, u)) p.fail("sup is not least in the product module");
      }
    }
    r.add("product_module_complete", p);
  }
  {
    Prop p;
    for (const auto& sp : pool) {
      std::vector<std::size_t> tops;
      for (std::size_t a = 0; a < sp->arity(); ++a) {
        std::vector<std::size_t> all;
        for (std::size_t i = 0; i < sp->factor(a).size(); ++i) all.push_back(i);
        tops.push_back(sp->factor(a).sup(all));
      }
      const std::size_t top_pnt = sp->encode(tops);
      for (const auto& t : enumerate_tensors(sp))
        if (!bounded_by(t, top_pnt)) p.fail("a canonical set escapes the top point bound");
      const ExtTensor zt = tau_hull(sp, {});
      for (std::size_t pnt = 0; pnt < sp->total(); ++pnt)
        if (!bounded_by(zt, pnt)) p.fail("the zero tensor escapes a point bound");
    }
    r.add("point_bounds", p);
  }
}

void suite_lemmas(const SuiteOptions& opt, std::vector<PropertyResult>& out) {
  Recorder r{"lemmas", out};
  const FinSemimodule w1 = bool_cube(1);
  struct Inst {
    SpacePtr sp;
    std::vector<PolyMapTable> maps;
  };
  std::vector<Inst> insts;
  const auto add_inst = [&](SpacePtr sp) {
    Inst in{std::move(sp), {}};
    std::size_t gens = 1;
    for (std::size_t a = 0; a < in.sp->arity(); ++a) gens *= in.sp->factor(a).dim();
    std::size_t ntab = 1;
    for (std::size_t g = 0; g < gens; ++g) ntab *= w1.size();
    for (std::size_t code = 0; code < ntab; ++code) {
      std::vector<std::size_t> gv(gens);
      std::size_t c = code;
      for (std::size_t g = gens; g-- > 0;) {
        gv[g] = c % w1.size();
        c /= w1.size();
      }
      in.maps.push_back(PolyMapTable::from_generators(in.sp, w1, gv));
    }
    insts.push_back(std::move(in));
  };
  add_inst(make_space({bool_cube(1), bool_cube(1)}));
  if (big_instances(opt)) add_inst(make_space({bool_cube(2), bool_cube(2)}));
  {
    Prop p;
    for (const auto& in : insts)
      for (const auto& f : in.maps)
        for (std::size_t w = 0; w < w1.size(); ++w) {
          const auto low = lower_set(w1, w);
          std::vector<std::size_t> pre;
          for (std::size_t pnt = 0; pnt < in.sp->total(); ++pnt)
            if (std::find(low.begin(), low.end(), f.value(pnt)) != low.end()) pre.push_back(pnt);
          if (!is_tensor(in.sp, pre))
            p.fail("a lower-set preimage is not canonical on " +
                   std::to_string(in.sp->total()) + " points");
        }
    r.add("lower_preimage_canonical", p);
  }
  {
    Prop p;
    for (const auto& in : insts) {
      const std::size_t n = in.sp->total();
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << n) && p.ok; ++m) {
        const auto pts = pts_of(m, n);
        const ExtTensor hull = tau_hull(in.sp, pts);
        for (const auto& f : in.maps) {
          std::size_t s1 = w1.zero_index();
          for (std::size_t pnt : pts) s1 = w1.add(s1, f.value(pnt));
          std::size_t s2 = w1.zero_index();
          for (std::size_t pnt : hull.points()) s2 = w1.add(s2, f.value(pnt));
          if (s1 != s2)
            p.fail("hull changed an image sup at mask " + std::to_string(m) + " on " +
                   std::to_string(n) + " points");
        }
      }
    }
    r.add("hull_preserves_image_sup", p);
  }
}

void suite_tauhull(const SuiteOptions& opt, std::vector<PropertyResult>& out) {
  Recorder r{"tauhull", out};
  std::vector<SpacePtr> pool{
      make_space({bool_cube(1), bool_cube(1)}),
      make_space({three_elt(), bool_cube(1)}),
  };
  if (big_instances(opt)) {
    pool.push_back(make_space({bool_cube(2), bool_cube(1)}));
    pool.push_back(make_space({three_elt(), three_elt()}));
  }
  std::vector<std::vector<std::uint64_t>> hulls;
  hulls.reserve(pool.size());
  for (const auto& sp : pool) hulls.push_back(all_hulls(sp, RuleOrder::down_sup_transfer));
  {
    Prop p;
    for (std::size_t s = 0; s < pool.size(); ++s) {
      const auto& sp = pool[s];
      const std::size_t n = sp->total();
      for (std::uint64_t m = 0; m < hulls[s].size(); ++m) {
        const std::uint64_t h = hulls[s][m];
        if ((m & ~h) != 0) p.fail("hull dropped a seed point at mask " + std::to_string(m));
        if (hulls[s][h] != h) p.fail("hull of a hull grew at mask " + std::to_string(m));
        if (!is_tensor(sp, pts_of(h, n)))
          p.fail("hull output is not canonical at mask " + std::to_string(m));
        if (is_tensor(sp, pts_of(m, n)) != (h == m))
          p.fail("fixed points disagree with the stability test at mask " + std::to_string(m));
      }
    }
    r.add("closure_operator", p);
  }
  {
    Prop p;
    for (std::size_t s = 0; s < pool.size(); ++s) {
      const std::size_t n = pool[s]->total();
      const std::uint64_t full = (std::uint64_t{1} << n) - 1;
      for (std::uint64_t a = 0; a < hulls[s].size() && p.ok; ++a)
        for (std::uint64_t c = a;; c = (c + 1) | a) {
          if ((hulls[s][a] & ~hulls[s][c]) != 0)
            p.fail("hull not monotone between masks " + std::to_string(a) + " and " +
                   std::to_string(c));
          if (c == full) break;
        }
    }
    r.add("monotone", p);
  }
  {
    Prop p;
    for (std::size_t s = 0; s < pool.size(); ++s) {
      const auto& sp = pool[s];
      const std::size_t n = sp->total();
      if (n > 6) continue;
      std::vector<std::uint64_t> fam;
      for (const auto& t : enumerate_tensors(sp)) fam.push_back(mask_of(t));
      const std::uint64_t full = (std::uint64_t{1} << n) - 1;
      for (std::uint64_t m = 0; m < hulls[s].size(); ++m) {
        std::uint64_t meet = full;
        for (std::uint64_t tm : fam)
          if ((m & ~tm) == 0) meet &= tm;
        if (meet != hulls[s][m])
          p.fail("hull is not the least canonical superset of mask " + std::to_string(m));
      }
      std::size_t fixed = 0;
      for (std::uint64_t m = 0; m < hulls[s].size(); ++m) fixed += hulls[s][m] == m;
      if (fixed != fam.size()) p.fail("enumerated family disagrees with the fixed points");
    }
    r.add("least_superset", p);
  }
  {
    Prop p;
    for (std::size_t s = 0; s < pool.size(); ++s) {
      const auto& sp = pool[s];
      const std::size_t n = sp->total();
      for (std::uint64_t m = 0; m < hulls[s].size(); ++m)
        if (mask_of(tau_hull(sp, pts_of(m, n), RuleOrder::transfer_sup_down)) != hulls[s][m])
          p.fail("rule order changed a hull at mask " + std::to_string(m));
    }
    r.add("order_independent", p);
  }
}

using SuiteFn = void (*)(const SuiteOptions&, std::vector<PropertyResult>&);

constexpr std::pair<const char*, SuiteFn> kSuites[] = {
    {"semiring", suite_semiring}, {"freemod", suite_freemod},
    {"kernelop", suite_kernelop}, {"prop2", suite_prop2},
    {"prop3", suite_prop3},       {"prop4", suite_prop4},
    {"prop5", suite_prop5},       {"lemmas", suite_lemmas},
    {"tauhull", suite_tauhull},   {"theorem1", suite_theorem1},
    {"theorem3", suite_theorem3},
};

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [n, fn] : kSuites) names.push_back(n);
  names.push_back("all");
  return names;
}

std::vector<PropertyResult> run_suite(const std::string& name, const SuiteOptions& opt) {
  std::vector<PropertyResult> out;
  if (name == "all") {
    for (const auto& [n, fn] : kSuites) fn(opt, out);
    return out;
  }
  for (const auto& [n, fn] : kSuites)
    if (name == n) {
      fn(opt, out);
      return out;
    }
  throw ParseError("unknown check suite '" + name + "'");
}

}  // namespace idem
