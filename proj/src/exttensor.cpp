#include "idem/exttensor.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "idem/error.hpp"

namespace idem {

namespace {

std::string fmt_tuple(const Semiring& sr, const Tuple& t) {
  std::string out = "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += ",";
    out += sr.format_value(t[i]);
  }
  out += ")";
  return out;
}

Tuple zero_tuple(const Semiring& sr, std::size_t dim) {
  return Tuple(dim, sr.zero());
}

}  // namespace

Tuple tuple_add(const Semiring& sr, const Tuple& a, const Tuple& b) {
  if (a.size() != b.size()) throw Error("tuple_add: dimension mismatch");
  Tuple out(a.size(), sr.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = sr.add(a[i], b[i]);
  return out;
}

Tuple tuple_smul(const Semiring& sr, Value k, const Tuple& a) {
  Tuple out(a.size(), sr.zero());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = sr.mul(k, a[i]);
  return out;
}

bool tuple_leq(const Semiring& sr, const Tuple& a, const Tuple& b) {
  if (a.size() != b.size()) throw Error("tuple_leq: dimension mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!sr.leq(a[i], b[i])) return false;
  return true;
}

FinSemimodule::FinSemimodule(Semiring sr, std::size_t dim, std::vector<Tuple> elems)
    : sr_(std::move(sr)), dim_(dim), elems_(std::move(elems)) {
  if (!sr_.finite())
    throw Error("FinSemimodule: requires a finite semiring, got " + sr_.name());
  for (const auto& t : elems_) {
    if (t.size() != dim_)
      throw Error("FinSemimodule: element " + fmt_tuple(sr_, t) + " has wrong dimension");
    for (const auto& v : t)
      if (!sr_.contains(v))
        throw Error("FinSemimodule: element " + fmt_tuple(sr_, t) +
                    " has a value outside the carrier");
  }
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

FinSemimodule FinSemimodule::full_cube(const Semiring& sr, std::size_t dim) {
  if (!sr.finite()) throw Error("full_cube: requires a finite semiring");
  std::size_t n = sr.carrier_size();
  std::size_t count = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (count > 200000 / std::max<std::size_t>(n, 1))
      throw Error("full_cube: too many elements");
    count *= n;
  }
  std::vector<Tuple> elems;
  elems.reserve(count);
  Tuple cur(dim, sr.zero());
  std::vector<std::size_t> digits(dim, 0);
  const auto carrier = sr.carrier();
  for (std::size_t id = 0; id < count; ++id) {
    for (std::size_t i = 0; i < dim; ++i) cur[i] = carrier[digits[i]];
    elems.push_back(cur);
    for (std::size_t i = dim; i-- > 0;) {
      if (++digits[i] < n) break;
      digits[i] = 0;
    }
  }
  return FinSemimodule(sr, dim, std::move(elems));
}

FinSemimodule FinSemimodule::span(const Semiring& sr, std::size_t dim,
                                  std::span<const Tuple> gens) {
  if (!sr.finite()) throw Error("span: requires a finite semiring");
  std::set<Tuple> members;
  members.insert(zero_tuple(sr, dim));
  for (const auto& g : gens) {
    if (g.size() != dim) throw Error("span: generator has wrong dimension");
    members.insert(g);
  }
  const auto carrier = sr.carrier();
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Tuple> snapshot(members.begin(), members.end());
    for (const auto& a : snapshot) {
      for (const auto& b : snapshot)
        if (members.insert(tuple_add(sr, a, b)).second) grew = true;
      for (const auto& k : carrier)
        if (members.insert(tuple_smul(sr, k, a)).second) grew = true;
    }
    if (members.size() > 200000) throw Error("span: closure too large");
  }
  return FinSemimodule(sr, dim, std::vector<Tuple>(members.begin(), members.end()));
}

std::optional<std::size_t> FinSemimodule::find(const Tuple& t) const {
  auto it = std::lower_bound(elems_.begin(), elems_.end(), t);
  if (it == elems_.end() || *it != t) return std::nullopt;
  return static_cast<std::size_t>(it - elems_.begin());
}

std::size_t FinSemimodule::zero_index() const {
  auto z = find(zero_tuple(sr_, dim_));
  if (!z) throw Error("semimodule does not contain the zero tuple");
  return *z;
}

std::size_t FinSemimodule::add(std::size_t a, std::size_t b) const {
  Tuple t = tuple_add(sr_, elems_.at(a), elems_.at(b));
  auto r = find(t);
  if (!r)
    throw Error("semimodule not closed under addition: " + fmt_tuple(sr_, elems_[a]) +
                " + " + fmt_tuple(sr_, elems_[b]) + " = " + fmt_tuple(sr_, t) +
                " is not a member");
  return *r;
}

std::size_t FinSemimodule::smul(Value k, std::size_t a) const {
  Tuple t = tuple_smul(sr_, k, elems_.at(a));
  auto r = find(t);
  if (!r)
    throw Error("semimodule not closed under scalars: " + sr_.format_value(k) + " * " +
                fmt_tuple(sr_, elems_[a]) + " = " + fmt_tuple(sr_, t) +
                " is not a member");
  return *r;
}

bool FinSemimodule::leq(std::size_t a, std::size_t b) const {
  return tuple_leq(sr_, elems_.at(a), elems_.at(b));
}

std::size_t FinSemimodule::sup(std::span<const std::size_t> idxs) const {
  Tuple acc = zero_tuple(sr_, dim_);
  for (auto i : idxs) acc = tuple_add(sr_, acc, elems_.at(i));
  auto r = find(acc);
  if (!r) throw Error("semimodule not closed under sups");
  return *r;
}

ValidationReport FinSemimodule::validate() const {
  ValidationReport rep;
  auto record = [&rep](const char* law, bool ok, const std::string& witness) {
    rep.laws.push_back({law, ok ? LawStatus::pass : LawStatus::fail, ok ? "" : witness});
  };

  record("contains_zero", find(zero_tuple(sr_, dim_)).has_value(), "zero tuple absent");

  bool ok = true;
  std::string wit;
  for (std::size_t i = 0; i < elems_.size() && ok; ++i)
    for (std::size_t j = 0; j < elems_.size() && ok; ++j) {
      Tuple t = tuple_add(sr_, elems_[i], elems_[j]);
      if (!find(t)) {
        ok = false;
        wit = fmt_tuple(sr_, elems_[i]) + " + " + fmt_tuple(sr_, elems_[j]) + " = " +
              fmt_tuple(sr_, t);
      }
    }
  record("add_closed", ok, wit);

  ok = true;
  wit.clear();
  const auto carrier = sr_.carrier();
  for (const auto& k : carrier)
    for (std::size_t i = 0; i < elems_.size() && ok; ++i) {
      Tuple t = tuple_smul(sr_, k, elems_[i]);
      if (!find(t)) {
        ok = false;
        wit = sr_.format_value(k) + " * " + fmt_tuple(sr_, elems_[i]) + " = " +
              fmt_tuple(sr_, t);
      }
    }
  record("scalar_closed", ok, wit);

  // Componentwise laws; these hold whenever the scalar semiring satisfies
  // its own laws, so failures here trace back to a defective scalar table.
  auto check2 = [&](const char* law, auto&& f) {
    bool good = true;
    std::string w;
    for (std::size_t i = 0; i < elems_.size() && good; ++i)
      for (std::size_t j = 0; j < elems_.size() && good; ++j)
        if (!f(elems_[i], elems_[j])) {
          good = false;
          w = "x=" + fmt_tuple(sr_, elems_[i]) + " y=" + fmt_tuple(sr_, elems_[j]);
        }
    record(law, good, w);
  };

  check2("add_idempotent", [&](const Tuple& x, const Tuple&) {
    return tuple_add(sr_, x, x) == x;
  });
  check2("add_commutative", [&](const Tuple& x, const Tuple& y) {
    return tuple_add(sr_, x, y) == tuple_add(sr_, y, x);
  });

  ok = true;
  wit.clear();
  for (std::size_t i = 0; i < elems_.size() && ok; ++i)
    for (std::size_t j = 0; j < elems_.size() && ok; ++j)
      for (std::size_t l = 0; l < elems_.size() && ok; ++l) {
        Tuple lhs = tuple_add(sr_, tuple_add(sr_, elems_[i], elems_[j]), elems_[l]);
        Tuple rhs = tuple_add(sr_, elems_[i], tuple_add(sr_, elems_[j], elems_[l]));
        if (lhs != rhs) {
          ok = false;
          wit = "x=" + fmt_tuple(sr_, elems_[i]) + " y=" + fmt_tuple(sr_, elems_[j]) +
                " z=" + fmt_tuple(sr_, elems_[l]);
        }
      }
  record("add_associative", ok, wit);

  ok = true;
  wit.clear();
  for (const auto& k : carrier)
    for (const auto& l : carrier)
      for (std::size_t i = 0; i < elems_.size() && ok; ++i) {
        Tuple lhs = tuple_smul(sr_, sr_.mul(k, l), elems_[i]);
        Tuple rhs = tuple_smul(sr_, k, tuple_smul(sr_, l, elems_[i]));
        if (lhs != rhs) {
          ok = false;
          wit = "k=" + sr_.format_value(k) + " l=" + sr_.format_value(l) +
                " x=" + fmt_tuple(sr_, elems_[i]);
        }
      }
  record("scalar_associative", ok, wit);

  ok = true;
  wit.clear();
  for (const auto& k : carrier)
    for (std::size_t i = 0; i < elems_.size() && ok; ++i)
      for (std::size_t j = 0; j < elems_.size() && ok; ++j) {
        Tuple lhs = tuple_smul(sr_, k, tuple_add(sr_, elems_[i], elems_[j]));
        Tuple rhs = tuple_add(sr_, tuple_smul(sr_, k, elems_[i]),
                              tuple_smul(sr_, k, elems_[j]));
        if (lhs != rhs) {
          ok = false;
          wit = "k=" + sr_.format_value(k) + " x=" + fmt_tuple(sr_, elems_[i]) +
                " y=" + fmt_tuple(sr_, elems_[j]);
        }
      }
  record("scalar_distributes_over_sum", ok, wit);

  ok = true;
  wit.clear();
  for (const auto& k : carrier)
    for (const auto& l : carrier)
      for (std::size_t i = 0; i < elems_.size() && ok; ++i) {
        Tuple lhs = tuple_smul(sr_, sr_.add(k, l), elems_[i]);
        Tuple rhs = tuple_add(sr_, tuple_smul(sr_, k, elems_[i]),
                              tuple_smul(sr_, l, elems_[i]));
        if (lhs != rhs) {
          ok = false;
          wit = "k=" + sr_.format_value(k) + " l=" + sr_.format_value(l) +
                " x=" + fmt_tuple(sr_, elems_[i]);
        }
      }
  record("sum_of_scalars", ok, wit);

  ok = true;
  wit.clear();
  for (std::size_t i = 0; i < elems_.size() && ok; ++i)
    if (tuple_smul(sr_, sr_.one(), elems_[i]) != elems_[i]) {
      ok = false;
      wit = "x=" + fmt_tuple(sr_, elems_[i]);
    }
  record("one_scalar_neutral", ok, wit);

  ok = true;
  wit.clear();
  for (std::size_t i = 0; i < elems_.size() && ok; ++i)
    if (tuple_smul(sr_, sr_.zero(), elems_[i]) != zero_tuple(sr_, dim_)) {
      ok = false;
      wit = "x=" + fmt_tuple(sr_, elems_[i]);
    }
  record("zero_scalar_vanishes", ok, wit);

  return rep;
}

bool FinSemimodule::operator==(const FinSemimodule& o) const {
  return sr_ == o.sr_ && dim_ == o.dim_ && elems_ == o.elems_;
}

FinSemimodule product_module(const FinSemimodule& a, const FinSemimodule& b) {
  if (a.semiring() != b.semiring())
    throw Error("product_module: factors over different semirings");
  std::vector<Tuple> elems;
  elems.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      Tuple t = a.element(i);
      const Tuple& u = b.element(j);
      t.insert(t.end(), u.begin(), u.end());
      elems.push_back(std::move(t));
    }
  return FinSemimodule(a.semiring(), a.dim() + b.dim(), std::move(elems));
}

// Precomputed closure machinery. Masks are dynamic bitsets over point ids.
struct ProductSpace::Closure {
  std::size_t total = 0;
  std::size_t words = 0;
  std::size_t zero_point = 0;
  // Rule "lower": all points reachable by lowering one slot within its fiber.
  std::vector<std::vector<std::uint64_t>> down_mask;
  // Rule "transfer": all points reachable by moving a scalar between slots
  // through a common preimage.
  std::vector<std::vector<std::uint64_t>> transfer_mask;
  struct Fiber {
    std::vector<std::size_t> members;  // point id per factor element id
  };
  std::vector<Fiber> fibers;
  // Factor addition tables on element ids, for folding fiber sups.
  std::vector<std::vector<std::size_t>> fadd;
  std::vector<std::size_t> fiber_slot;  // slot of each fiber, aligned with fibers

  bool get(const std::vector<std::uint64_t>& m, std::size_t i) const {
    return (m[i >> 6] >> (i & 63)) & 1u;
  }
  static void set(std::vector<std::uint64_t>& m, std::size_t i) {
    m[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
};

ProductSpace::ProductSpace(std::vector<FinSemimodule> factors)
    : sr_((factors.empty() ? throw Error("ProductSpace: needs at least one factor")
                           : factors.front().semiring())),
      factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    if (f.semiring() != sr_)
      throw Error("ProductSpace: factors over different semirings");
    if (f.size() == 0) throw Error("ProductSpace: empty factor");
  }
  if (!sr_.commutative())
    throw Error("ProductSpace: requires a commutative semiring, got " + sr_.name());
  total_ = 1;
  for (const auto& f : factors_) {
    if (total_ > 1000000 / f.size()) throw Error("ProductSpace: too many points");
    total_ *= f.size();
  }
}

std::size_t ProductSpace::encode(std::span<const std::size_t> comps) const {
  if (comps.size() != factors_.size())
    throw Error("encode: component count mismatch");
  std::size_t id = 0;
  for (std::size_t a = 0; a < factors_.size(); ++a) {
    if (comps[a] >= factors_[a].size()) throw Error("encode: component out of range");
    id = id * factors_[a].size() + comps[a];
  }
  return id;
}

std::vector<std::size_t> ProductSpace::decode(std::size_t p) const {
  if (p >= total_) throw Error("decode: point out of range");
  std::vector<std::size_t> comps(factors_.size());
  for (std::size_t a = factors_.size(); a-- > 0;) {
    comps[a] = p % factors_[a].size();
    p /= factors_[a].size();
  }
  return comps;
}

std::size_t ProductSpace::component(std::size_t p, std::size_t slot) const {
  if (slot >= factors_.size()) throw Error("component: slot out of range");
  std::size_t div = 1;
  for (std::size_t a = factors_.size(); a-- > slot + 1;) div *= factors_[a].size();
  return (p / div) % factors_[slot].size();
}

std::size_t ProductSpace::with_component(std::size_t p, std::size_t slot,
                                         std::size_t elem) const {
  if (slot >= factors_.size()) throw Error("with_component: slot out of range");
  if (elem >= factors_[slot].size()) throw Error("with_component: element out of range");
  std::size_t div = 1;
  for (std::size_t a = factors_.size(); a-- > slot + 1;) div *= factors_[a].size();
  std::size_t old = (p / div) % factors_[slot].size();
  return p - old * div + elem * div;
}

std::size_t ProductSpace::zero_point() const {
  std::vector<std::size_t> comps(factors_.size());
  for (std::size_t a = 0; a < factors_.size(); ++a) comps[a] = factors_[a].zero_index();
  return encode(comps);
}

std::vector<Tuple> ProductSpace::point_tuples(std::size_t p) const {
  auto comps = decode(p);
  std::vector<Tuple> out;
  out.reserve(comps.size());
  for (std::size_t a = 0; a < comps.size(); ++a)
    out.push_back(factors_[a].element(comps[a]));
  return out;
}

bool ProductSpace::operator==(const ProductSpace& o) const {
  return sr_ == o.sr_ && factors_ == o.factors_;
}

const ProductSpace::Closure& ProductSpace::closure() const {
  if (closure_) return *closure_;
  auto c = std::make_shared<Closure>();
  c->total = total_;
  c->words = (total_ + 63) / 64;
  c->zero_point = zero_point();

  const auto carrier = sr_.carrier();
  std::size_t arity = factors_.size();

  // Per-factor tables on element ids.
  std::vector<std::vector<std::size_t>> fsmul(arity);  // k * e, carrier-major
  std::vector<std::vector<std::vector<std::size_t>>> fpre(arity);  // preimages of k*.
  c->fadd.resize(arity);
  for (std::size_t a = 0; a < arity; ++a) {
    const auto& f = factors_[a];
    std::size_t s = f.size();
    c->fadd[a].resize(s * s);
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) c->fadd[a][i * s + j] = f.add(i, j);
    fsmul[a].resize(carrier.size() * s);
    fpre[a].assign(carrier.size() * s, {});
    for (std::size_t kk = 0; kk < carrier.size(); ++kk)
      for (std::size_t e = 0; e < s; ++e) {
        std::size_t img = f.smul(carrier[kk], e);
        fsmul[a][kk * s + e] = img;
        fpre[a][kk * s + img].push_back(e);
      }
  }

  c->down_mask.assign(total_, std::vector<std::uint64_t>(c->words, 0));
  c->transfer_mask.assign(total_, std::vector<std::uint64_t>(c->words, 0));
  for (std::size_t p = 0; p < total_; ++p) {
    auto comps = decode(p);
    for (std::size_t a = 0; a < arity; ++a) {
      const auto& f = factors_[a];
      std::size_t s = f.size();
      for (std::size_t e = 0; e < s; ++e)
        if (f.leq(e, comps[a]))
          Closure::set(c->down_mask[p], with_component(p, a, e));
      // Transfer: whenever p's slot a is k times some x, every other slot
      // of that x may also be multiplied by k.
      for (std::size_t kk = 0; kk < carrier.size(); ++kk)
        for (std::size_t e : fpre[a][kk * s + comps[a]]) {
          std::size_t x = with_component(p, a, e);
          auto xc = decode(x);
          for (std::size_t b = 0; b < arity; ++b) {
            std::size_t img = fsmul[b][kk * factors_[b].size() + xc[b]];
            Closure::set(c->transfer_mask[p], with_component(x, b, img));
          }
        }
    }
  }

  for (std::size_t a = 0; a < arity; ++a) {
    std::size_t s = factors_[a].size();
    std::size_t count = total_ / s;
    std::vector<bool> seen(total_, false);
    c->fibers.reserve(c->fibers.size() + count);
    for (std::size_t p = 0; p < total_; ++p) {
      if (seen[p]) continue;
      Closure::Fiber fib;
      fib.members.resize(s);
      for (std::size_t e = 0; e < s; ++e) {
        std::size_t q = with_component(p, a, e);
        fib.members[e] = q;
        seen[q] = true;
      }
      c->fibers.push_back(std::move(fib));
      c->fiber_slot.push_back(a);
    }
  }

  closure_ = std::move(c);
  return *closure_;
}

SpacePtr make_space(std::vector<FinSemimodule> factors) {
  return std::make_shared<const ProductSpace>(std::move(factors));
}

ExtTensor::ExtTensor(SpacePtr space, std::vector<std::size_t> points)
    : space_(std::move(space)), pts_(std::move(points)) {
  if (!space_) throw Error("ExtTensor: null space");
  for (auto p : pts_)
    if (p >= space_->total()) throw Error("ExtTensor: point out of range");
  std::sort(pts_.begin(), pts_.end());
  pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
}

bool ExtTensor::contains(std::size_t p) const {
  return std::binary_search(pts_.begin(), pts_.end(), p);
}

bool ExtTensor::operator==(const ExtTensor& o) const {
  return *space_ == *o.space_ && pts_ == o.pts_;
}

namespace {

using Mask = std::vector<std::uint64_t>;

bool mask_get(const Mask& m, std::size_t i) { return (m[i >> 6] >> (i & 63)) & 1u; }
void mask_set(Mask& m, std::size_t i) { m[i >> 6] |= std::uint64_t{1} << (i & 63); }

// One pass of the downward rule; returns whether the mask grew.
bool step_down(const ProductSpace::Closure& c, Mask& m) {
  bool grew = false;
  for (std::size_t p = 0; p < c.total; ++p) {
    if (!mask_get(m, p)) continue;
    const auto& add = c.down_mask[p];
    for (std::size_t w = 0; w < c.words; ++w) {
      std::uint64_t nv = m[w] | add[w];
      if (nv != m[w]) {
        m[w] = nv;
        grew = true;
      }
    }
  }
  return grew;
}

bool step_sup(const ProductSpace::Closure& c, Mask& m) {
  bool grew = false;
  for (std::size_t fi = 0; fi < c.fibers.size(); ++fi) {
    const auto& fib = c.fibers[fi];
    const auto& add = c.fadd[c.fiber_slot[fi]];
    std::size_t s = fib.members.size();
    std::size_t acc = s;  // s = "empty so far"
    for (std::size_t e = 0; e < s; ++e) {
      if (!mask_get(m, fib.members[e])) continue;
      acc = (acc == s) ? e : add[acc * s + e];
    }
    if (acc == s) continue;
    std::size_t q = fib.members[acc];
    if (!mask_get(m, q)) {
      mask_set(m, q);
      grew = true;
    }
  }
  return grew;
}

bool step_transfer(const ProductSpace::Closure& c, Mask& m) {
  bool grew = false;
  for (std::size_t p = 0; p < c.total; ++p) {
    if (!mask_get(m, p)) continue;
    const auto& add = c.transfer_mask[p];
    for (std::size_t w = 0; w < c.words; ++w) {
      std::uint64_t nv = m[w] | add[w];
      if (nv != m[w]) {
        m[w] = nv;
        grew = true;
      }
    }
  }
  return grew;
}

Mask close_mask(const ProductSpace& space, Mask m, RuleOrder order) {
  const auto& c = space.closure();
  mask_set(m, c.zero_point);
  bool grew = true;
  while (grew) {
    grew = false;
    if (order == RuleOrder::down_sup_transfer) {
      grew |= step_down(c, m);
      grew |= step_sup(c, m);
      grew |= step_transfer(c, m);
    } else {
      grew |= step_transfer(c, m);
      grew |= step_sup(c, m);
      grew |= step_down(c, m);
    }
  }
  return m;
}

Mask to_mask(const ProductSpace& space, std::span<const std::size_t> pts) {
  Mask m((space.total() + 63) / 64, 0);
  for (auto p : pts) {
    if (p >= space.total()) throw Error("point out of range");
    mask_set(m, p);
  }
  return m;
}

std::vector<std::size_t> from_mask(const ProductSpace& space, const Mask& m) {
  std::vector<std::size_t> pts;
  for (std::size_t p = 0; p < space.total(); ++p)
    if (mask_get(m, p)) pts.push_back(p);
  return pts;
}

}  // namespace

ExtTensor tau_hull(const SpacePtr& space, std::span<const std::size_t> pts,
                   RuleOrder order) {
  if (!space) throw Error("tau_hull: null space");
  Mask m = close_mask(*space, to_mask(*space, pts), order);
  return ExtTensor(space, from_mask(*space, m));
}

bool is_tensor(const SpacePtr& space, std::span<const std::size_t> pts) {
  if (!space) throw Error("is_tensor: null space");
  const auto& c = space->closure();
  Mask m = to_mask(*space, pts);
  if (!mask_get(m, c.zero_point)) return false;
  Mask closed = m;
  if (step_down(c, closed)) return false;
  if (step_sup(c, closed)) return false;
  if (step_transfer(c, closed)) return false;
  return true;
}

bool tensors_equal(const SpacePtr& space, std::span<const std::size_t> a,
                   std::span<const std::size_t> b) {
  if (!space) throw Error("tensors_equal: null space");
  Mask ma = close_mask(*space, to_mask(*space, a), RuleOrder::down_sup_transfer);
  Mask mb = close_mask(*space, to_mask(*space, b), RuleOrder::down_sup_transfer);
  return ma == mb;
}

ExtTensor tensor_add(const ExtTensor& a, const ExtTensor& b) {
  if (*a.space() != *b.space()) throw Error("tensor_add: different spaces");
  std::vector<std::size_t> joint = a.points();
  joint.insert(joint.end(), b.points().begin(), b.points().end());
  return tau_hull(a.space(), joint);
}

ExtTensor tensor_scalar(Value k, const ExtTensor& t, std::size_t slot) {
  const auto& space = *t.space();
  if (slot >= space.arity()) throw Error("tensor_scalar: slot out of range");
  if (!space.semiring().contains(k))
    throw Error("tensor_scalar: scalar outside the carrier");
  std::vector<std::size_t> scaled;
  scaled.reserve(t.points().size());
  for (auto p : t.points()) {
    std::size_t e = space.component(p, slot);
    std::size_t img = space.factor(slot).smul(k, e);
    scaled.push_back(space.with_component(p, slot, img));
  }
  return tau_hull(t.space(), scaled);
}

ExtTensor canonical_pi(const SpacePtr& space, std::size_t p) {
  std::size_t pts[1] = {p};
  return tau_hull(space, pts);
}

bool bounded_by(const ExtTensor& t, std::size_t p) {
  ExtTensor bound = canonical_pi(t.space(), p);
  return std::includes(bound.points().begin(), bound.points().end(),
                       t.points().begin(), t.points().end());
}

std::vector<std::size_t> fiber(const ProductSpace& space, std::size_t slot,
                               std::size_t through) {
  if (slot >= space.arity()) throw Error("fiber: slot out of range");
  std::vector<std::size_t> out;
  out.reserve(space.factor(slot).size());
  for (std::size_t e = 0; e < space.factor(slot).size(); ++e)
    out.push_back(space.with_component(through, slot, e));
  return out;
}

std::vector<std::size_t> lower_set(const FinSemimodule& m, std::size_t w) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m.leq(i, w)) out.push_back(i);
  return out;
}

std::vector<ExtTensor> enumerate_tensors(const SpacePtr& space) {
  if (!space) throw Error("enumerate_tensors: null space");
  std::size_t n = space->total();
  if (n > 20) throw Error("enumerate_tensors: space too large");
  const auto& c = space->closure();
  std::vector<ExtTensor> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    if (!((bits >> c.zero_point) & 1u)) continue;
    Mask m{bits};
    bool stable = true;
    Mask grown = m;
    if (step_down(c, grown) || step_sup(c, grown) || step_transfer(c, grown))
      stable = false;
    if (!stable) continue;
    out.emplace_back(space, from_mask(*space, m));
  }
  return out;
}

PolyMapTable::PolyMapTable(SpacePtr space, FinSemimodule codomain,
                           std::vector<std::size_t> table)
    : space_(std::move(space)), cod_(std::move(codomain)), table_(std::move(table)) {
  if (!space_) throw Error("PolyMapTable: null space");
  if (cod_.semiring() != space_->semiring())
    throw Error("PolyMapTable: codomain over a different semiring");
  if (table_.size() != space_->total())
    throw Error("PolyMapTable: table size does not match the space");
  for (auto v : table_)
    if (v >= cod_.size()) throw Error("PolyMapTable: table value out of range");
}

PolyMapTable PolyMapTable::from_generators(const SpacePtr& cubes, FinSemimodule codomain,
                                           std::span<const std::size_t> gen_values) {
  if (!cubes) throw Error("from_generators: null space");
  const Semiring& sr = cubes->semiring();
  std::size_t arity = cubes->arity();
  std::size_t gen_count = 1;
  for (std::size_t a = 0; a < arity; ++a) {
    const auto& f = cubes->factor(a);
    std::size_t expect = 1;
    for (std::size_t i = 0; i < f.dim(); ++i) expect *= sr.carrier_size();
    if (f.size() != expect)
      throw Error("from_generators: factor is not the full cube");
    if (f.dim() == 0) throw Error("from_generators: zero-dimensional factor");
    gen_count *= f.dim();
  }
  if (gen_values.size() != gen_count)
    throw Error("from_generators: expected " + std::to_string(gen_count) +
                " generator values, got " + std::to_string(gen_values.size()));
  for (auto v : gen_values)
    if (v >= codomain.size()) throw Error("from_generators: value out of range");

  // f(v^1..v^m) = sup over generator tuples of the product of the chosen
  // coordinates times the generator value, evaluated in codomain tuples.
  std::vector<std::size_t> table(cubes->total());
  for (std::size_t p = 0; p < cubes->total(); ++p) {
    auto comps = cubes->decode(p);
    Tuple acc(codomain.dim(), sr.zero());
    std::vector<std::size_t> digits(arity, 0);
    for (std::size_t g = 0; g < gen_count; ++g) {
      Value coeff = sr.one();
      for (std::size_t a = 0; a < arity; ++a) {
        const Tuple& v = cubes->factor(a).element(comps[a]);
        coeff = sr.mul(coeff, v[digits[a]]);
      }
      acc = tuple_add(sr, acc,
                      tuple_smul(sr, coeff, codomain.element(gen_values[g])));
      for (std::size_t a = arity; a-- > 0;) {
        if (++digits[a] < cubes->factor(a).dim()) break;
        digits[a] = 0;
      }
    }
    auto idx = codomain.find(acc);
    if (!idx)
      throw Error("from_generators: codomain is missing " + fmt_tuple(sr, acc));
    table[p] = *idx;
  }
  return PolyMapTable(cubes, std::move(codomain), std::move(table));
}

std::size_t PolyMapTable::value(std::size_t point) const {
  if (point >= table_.size()) throw Error("PolyMapTable: point out of range");
  return table_[point];
}

ValidationReport PolyMapTable::validate() const {
  ValidationReport rep;
  const Semiring& sr = space_->semiring();
  const auto carrier = sr.carrier();
  auto record = [&rep](const std::string& law, bool ok, const std::string& witness) {
    rep.laws.push_back({law, ok ? LawStatus::pass : LawStatus::fail, ok ? "" : witness});
  };

  for (std::size_t slot = 0; slot < space_->arity(); ++slot) {
    const auto& f = space_->factor(slot);
    std::string tag = "slot" + std::to_string(slot);

    bool ok = true;
    std::string wit;
    for (std::size_t p = 0; p < space_->total() && ok; ++p) {
      if (space_->component(p, slot) != 0) continue;  // one representative per fiber
      for (std::size_t i = 0; i < f.size() && ok; ++i)
        for (std::size_t j = 0; j < f.size() && ok; ++j) {
          std::size_t pij = space_->with_component(p, slot, f.add(i, j));
          Tuple lhs = cod_.element(table_[pij]);
          Tuple rhs = tuple_add(sr, cod_.element(table_[space_->with_component(p, slot, i)]),
                                cod_.element(table_[space_->with_component(p, slot, j)]));
          if (lhs != rhs) {
            ok = false;
            wit = "point " + std::to_string(p) + " args " + std::to_string(i) + "," +
                  std::to_string(j);
          }
        }
    }
    record(tag + "_preserves_sup", ok, wit);

    ok = true;
    wit.clear();
    for (std::size_t p = 0; p < space_->total() && ok; ++p) {
      if (space_->component(p, slot) != 0) continue;
      for (const auto& k : carrier)
        for (std::size_t i = 0; i < f.size() && ok; ++i) {
          std::size_t pk = space_->with_component(p, slot, f.smul(k, i));
          Tuple lhs = cod_.element(table_[pk]);
          Tuple rhs = tuple_smul(sr, k,
                                 cod_.element(table_[space_->with_component(p, slot, i)]));
          if (lhs != rhs) {
            ok = false;
            wit = "point " + std::to_string(p) + " k=" + sr.format_value(k) +
                  " arg " + std::to_string(i);
          }
        }
    }
    record(tag + "_preserves_scalar", ok, wit);

    ok = true;
    wit.clear();
    std::size_t z = f.zero_index();
    for (std::size_t p = 0; p < space_->total() && ok; ++p) {
      std::size_t pz = space_->with_component(p, slot, z);
      if (cod_.element(table_[pz]) != Tuple(cod_.dim(), sr.zero())) {
        ok = false;
        wit = "point " + std::to_string(p);
      }
    }
    record(tag + "_kills_zero", ok, wit);
  }
  return rep;
}

bool PolyMapTable::operator==(const PolyMapTable& o) const {
  return *space_ == *o.space_ && cod_ == o.cod_ && table_ == o.table_;
}

std::size_t factorize_ext(const PolyMapTable& f, const ExtTensor& t) {
  if (*f.space() != *t.space()) throw Error("factorize_ext: space mismatch");
  const auto& cod = f.codomain();
  const Semiring& sr = cod.semiring();
  Tuple acc(cod.dim(), sr.zero());
  for (auto p : t.points()) acc = tuple_add(sr, acc, cod.element(f.value(p)));
  auto idx = cod.find(acc);
  if (!idx) throw Error("factorize_ext: codomain is missing the sup");
  return *idx;
}

}  // namespace idem
