#include "idem/freetensor.hpp"

namespace idem {

namespace {

void require_commutative(const Semiring& sr) {
  if (!sr.commutative()) throw Error("tensor operations need a commutative semiring");
}

IndexSet product_of(std::span<const IndexSet> factors) {
  if (factors.empty()) throw Error("tensor needs at least one factor");
  return product(factors);
}

}  // namespace

TensorKernel::TensorKernel(Semiring sr, std::vector<IndexSet> factors,
                           std::vector<Value> coeffs)
    : sr_(std::move(sr)),
      factors_(std::move(factors)),
      prod_(product_of(factors_)),
      c_(std::move(coeffs)) {
  require_commutative(sr_);
  if (c_.size() != prod_.size()) throw Error("coefficient count does not match the product");
  for (const Value& v : c_)
    if (!sr_.contains(v)) throw Error("coefficient outside the " + sr_.name() + " carrier");
}

std::size_t TensorKernel::position(std::span<const std::size_t> tuple) const {
  if (tuple.size() != factors_.size()) throw Error("tuple arity mismatch");
  std::size_t pos = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] >= factors_[i].size()) throw Error("tuple component out of range");
    pos = pos * factors_[i].size() + tuple[i];
  }
  return pos;
}

std::vector<std::size_t> TensorKernel::tuple_at(std::size_t pos) const {
  std::vector<std::size_t> t(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    t[i] = pos % factors_[i].size();
    pos /= factors_[i].size();
  }
  return t;
}

TensorKernel TensorKernel::zero(const Semiring& sr, std::vector<IndexSet> factors) {
  IndexSet p = product_of(factors);
  return TensorKernel(sr, std::move(factors), std::vector<Value>(p.size(), sr.zero()));
}

TensorKernel TensorKernel::from_vector(const FreeVector& v, std::vector<IndexSet> factors) {
  if (product_of(factors) != v.index())
    throw Error("vector index is not the product of the factors");
  return TensorKernel(v.semiring(), std::move(factors),
                      std::vector<Value>(v.coeffs().begin(), v.coeffs().end()));
}

bool TensorKernel::operator==(const TensorKernel& o) const {
  if (sr_ != o.sr_ || factors_.size() != o.factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i] != o.factors_[i]) return false;
  return c_ == o.c_;
}

TensorKernel outer(std::span<const FreeVector> vs) {
  if (vs.empty()) throw Error("outer product needs at least one vector");
  const Semiring& s = vs[0].semiring();
  require_commutative(s);
  std::vector<IndexSet> factors;
  for (const FreeVector& v : vs) {
    if (v.semiring() != s) throw Error("semiring mismatch");
    factors.push_back(v.index());
  }
  TensorKernel out = TensorKernel::zero(s, factors);
  std::vector<Value> c(out.size());
  for (std::size_t pos = 0; pos < out.size(); ++pos) {
    std::vector<std::size_t> t = out.tuple_at(pos);
    Value acc = s.one();
    for (std::size_t i = 0; i < vs.size(); ++i) acc = s.mul(acc, vs[i][t[i]]);
    c[pos] = acc;
  }
  return TensorKernel(s, std::move(factors), std::move(c));
}

PureSum to_pure_sum(const TensorKernel& t) {
  PureSum ps;
  ps.terms.reserve(t.size());
  for (std::size_t pos = 0; pos < t.size(); ++pos) {
    std::vector<std::size_t> tup = t.tuple_at(pos);
    PureTerm term;
    term.labels.reserve(tup.size());
    for (std::size_t i = 0; i < tup.size(); ++i)
      term.labels.push_back(t.factors()[i].label(tup[i]));
    term.coeff = t.coeff(pos);
    ps.terms.push_back(std::move(term));
  }
  return ps;
}

TensorKernel from_pure_sum(const Semiring& sr, std::span<const IndexSet> factors,
                           const PureSum& ps) {
  TensorKernel acc = TensorKernel::zero(sr, {factors.begin(), factors.end()});
  std::vector<Value> c(acc.coeffs().begin(), acc.coeffs().end());
  for (const PureTerm& term : ps.terms) {
    if (term.labels.size() != factors.size()) throw Error("pure term arity mismatch");
    if (!sr.contains(term.coeff)) throw Error("pure term coefficient outside the carrier");
    std::vector<std::size_t> tup(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i)
      tup[i] = factors[i].position(term.labels[i]);
    std::size_t pos = acc.position(tup);
    c[pos] = sr.add(c[pos], term.coeff);
  }
  return TensorKernel(sr, {factors.begin(), factors.end()}, std::move(c));
}

PureSum normalize_pure_sum(const Semiring& sr, const PureSum& ps) {
  PureSum out;
  for (const PureTerm& term : ps.terms) {
    bool merged = false;
    for (PureTerm& kept : out.terms)
      if (kept.labels == term.labels) {
        kept.coeff = sr.add(kept.coeff, term.coeff);
        merged = true;
        break;
      }
    if (!merged) out.terms.push_back(term);
  }
  std::erase_if(out.terms, [&](const PureTerm& t) { return t.coeff == sr.zero(); });
  return out;
}

GeneratorPolyMap::GeneratorPolyMap(Semiring sr, std::vector<IndexSet> factors,
                                   IndexSet codomain, std::vector<FreeVector> table)
    : sr_(std::move(sr)),
      factors_(std::move(factors)),
      cod_(std::move(codomain)),
      table_(std::move(table)) {
  require_commutative(sr_);
  if (factors_.empty()) throw Error("generator table needs at least one factor");
  std::size_t total = 1;
  for (const IndexSet& f : factors_) total *= f.size();
  if (table_.size() != total) throw Error("generator table has the wrong size");
  for (const FreeVector& v : table_)
    if (v.semiring() != sr_ || v.index() != cod_)
      throw Error("generator value lies in the wrong module");
}

const FreeVector& GeneratorPolyMap::value(std::span<const std::size_t> tuple) const {
  if (tuple.size() != factors_.size()) throw Error("tuple arity mismatch");
  std::size_t pos = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] >= factors_[i].size()) throw Error("tuple component out of range");
    pos = pos * factors_[i].size() + tuple[i];
  }
  return table_[pos];
}

Kernel factorize(const GeneratorPolyMap& g) {
  IndexSet rows = product(g.factors());
  std::vector<Value> e;
  e.reserve(rows.size() * g.codomain().size());
  for (const FreeVector& v : g.table())
    e.insert(e.end(), v.coeffs().begin(), v.coeffs().end());
  return Kernel(g.semiring(), std::move(rows), g.codomain(), std::move(e));
}

FreeVector IndexBijection::forward(const FreeVector& v) const {
  if (v.index() != from) throw Error("vector index does not match the bijection domain");
  std::vector<Value> c(to.size(), v.semiring().zero());
  for (std::size_t i = 0; i < fwd.size(); ++i) c[fwd[i]] = v[i];
  return FreeVector(v.semiring(), to, std::move(c));
}

FreeVector IndexBijection::backward(const FreeVector& v) const {
  if (v.index() != to) throw Error("vector index does not match the bijection codomain");
  std::vector<Value> c(from.size(), v.semiring().zero());
  for (std::size_t i = 0; i < fwd.size(); ++i) c[i] = v[fwd[i]];
  return FreeVector(v.semiring(), from, std::move(c));
}

IndexBijection comm_iso(const IndexSet& x, const IndexSet& y) {
  IndexBijection b{product(x, y), product(y, x), {}};
  b.fwd.resize(b.from.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      b.fwd[i * y.size() + j] = j * x.size() + i;
  return b;
}

IndexBijection assoc_iso(const IndexSet& x, const IndexSet& y, const IndexSet& z) {
  IndexBijection b{product(product(x, y), z), product(x, product(y, z)), {}};
  b.fwd.resize(b.from.size());
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      for (std::size_t k = 0; k < z.size(); ++k)
        b.fwd[(i * y.size() + j) * z.size() + k] = i * y.size() * z.size() + j * z.size() + k;
  return b;
}

IndexBijection distr_iso(const IndexSet& x, const IndexSet& y, const IndexSet& z) {
  std::vector<IndexSet> xy = {x, y};
  std::vector<IndexSet> xz_yz = {product(x, z), product(y, z)};
  IndexBijection b{product(disjoint_union(xy), z), disjoint_union(xz_yz), {}};
  b.fwd.resize(b.from.size());
  const std::size_t nz = z.size();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t k = 0; k < nz; ++k)
      b.fwd[i * nz + k] = i * nz + k;
  for (std::size_t j = 0; j < y.size(); ++j)
    for (std::size_t k = 0; k < nz; ++k)
      b.fwd[(x.size() + j) * nz + k] = x.size() * nz + j * nz + k;
  return b;
}

namespace {

std::size_t block_offset(std::span<const IndexSet> parts, std::size_t alpha) {
  if (alpha >= parts.size()) throw Error("direct sum block out of range");
  std::size_t off = 0;
  for (std::size_t i = 0; i < alpha; ++i) off += parts[i].size();
  return off;
}

}  // namespace

FreeVector dsum_inject(std::span<const IndexSet> parts, std::size_t alpha,
                       const FreeVector& v) {
  if (v.index() != parts[alpha]) throw Error("vector does not live in the chosen block");
  IndexSet u = disjoint_union(parts);
  std::vector<Value> c(u.size(), v.semiring().zero());
  std::size_t off = block_offset(parts, alpha);
  for (std::size_t i = 0; i < v.size(); ++i) c[off + i] = v[i];
  return FreeVector(v.semiring(), std::move(u), std::move(c));
}

FreeVector dsum_project(std::span<const IndexSet> parts, std::size_t alpha,
                        const FreeVector& u) {
  if (u.index() != disjoint_union(parts)) throw Error("vector is not over the union index");
  std::size_t off = block_offset(parts, alpha);
  std::vector<Value> c(parts[alpha].size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = u[off + i];
  return FreeVector(u.semiring(), parts[alpha], std::move(c));
}

Kernel map_direct_product(std::span<const Kernel> fs) {
  if (fs.empty()) throw Error("pairing of no maps");
  const Semiring& s = fs[0].semiring();
  const IndexSet& w = fs[0].rows();
  std::vector<IndexSet> cods;
  std::size_t width = 0;
  for (const Kernel& f : fs) {
    if (f.semiring() != s) throw Error("semiring mismatch");
    if (f.rows() != w) throw Error("pairing needs a common domain");
    cods.push_back(f.cols());
    width += f.cols().size();
  }
  IndexSet u = disjoint_union(cods);
  std::vector<Value> e(w.size() * width, s.zero());
  std::size_t off = 0;
  for (const Kernel& f : fs) {
    for (std::size_t x = 0; x < w.size(); ++x)
      for (std::size_t y = 0; y < f.cols().size(); ++y)
        e[x * width + off + y] = f.entry(x, y);
    off += f.cols().size();
  }
  return Kernel(s, w, std::move(u), std::move(e));
}

Kernel map_direct_sum(std::span<const Kernel> fs) {
  if (fs.empty()) throw Error("copairing of no maps");
  const Semiring& s = fs[0].semiring();
  const IndexSet& w = fs[0].cols();
  std::vector<IndexSet> doms;
  std::size_t height = 0;
  for (const Kernel& f : fs) {
    if (f.semiring() != s) throw Error("semiring mismatch");
    if (f.cols() != w) throw Error("copairing needs a common codomain");
    doms.push_back(f.rows());
    height += f.rows().size();
  }
  IndexSet u = disjoint_union(doms);
  std::vector<Value> e(height * w.size(), s.zero());
  std::size_t off = 0;
  for (const Kernel& f : fs) {
    for (std::size_t x = 0; x < f.rows().size(); ++x)
      for (std::size_t y = 0; y < w.size(); ++y)
        e[(off + x) * w.size() + y] = f.entry(x, y);
    off += f.rows().size();
  }
  return Kernel(s, std::move(u), w, std::move(e));
}

}  // namespace idem
