#include "idem/freemod.hpp"

#include <unordered_map>

namespace idem {

struct IndexSet::Data {
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::size_t> pos;
};

IndexSet::IndexSet() {
  static const auto empty = std::make_shared<const Data>();
  d_ = empty;
}

IndexSet::IndexSet(std::vector<std::string> labels) {
  auto d = std::make_shared<Data>();
  d->labels = std::move(labels);
  for (std::size_t i = 0; i < d->labels.size(); ++i) {
    if (d->labels[i].empty()) throw Error("empty index label");
    if (!d->pos.emplace(d->labels[i], i).second)
      throw Error("duplicate index label: " + d->labels[i]);
  }
  d_ = std::move(d);
}

std::size_t IndexSet::size() const { return d_->labels.size(); }

const std::string& IndexSet::label(std::size_t i) const {
  if (i >= d_->labels.size()) throw Error("index position out of range");
  return d_->labels[i];
}

std::span<const std::string> IndexSet::labels() const { return d_->labels; }

std::size_t IndexSet::position(std::string_view label) const {
  auto it = d_->pos.find(std::string(label));
  if (it == d_->pos.end()) throw Error("no such index label: " + std::string(label));
  return it->second;
}

bool IndexSet::contains(std::string_view label) const {
  return d_->pos.count(std::string(label)) != 0;
}

bool IndexSet::operator==(const IndexSet& o) const {
  return d_ == o.d_ || d_->labels == o.d_->labels;
}

IndexSet product(const IndexSet& a, const IndexSet& b) {
  std::vector<std::string> out;
  out.reserve(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out.push_back(a.label(i) + "|" + b.label(j));
  return IndexSet(std::move(out));
}

IndexSet product(std::span<const IndexSet> parts) {
  if (parts.empty()) throw Error("product of no index sets");
  IndexSet acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = product(acc, parts[i]);
  return acc;
}

IndexSet disjoint_union(std::span<const IndexSet> parts) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (const auto& l : parts[i].labels())
      out.push_back(std::to_string(i) + ":" + l);
  return IndexSet(std::move(out));
}

FreeVector::FreeVector(Semiring sr, IndexSet ix, std::vector<Value> coeffs)
    : sr_(std::move(sr)), ix_(std::move(ix)), c_(std::move(coeffs)) {
  if (c_.size() != ix_.size()) throw Error("coefficient count does not match the index");
  for (const Value& v : c_)
    if (!sr_.contains(v)) throw Error("coefficient outside the " + sr_.name() + " carrier");
}

FreeVector FreeVector::zero(const Semiring& sr, const IndexSet& ix) {
  return FreeVector(sr, ix, std::vector<Value>(ix.size(), sr.zero()));
}

FreeVector FreeVector::delta(const Semiring& sr, const IndexSet& ix, std::size_t at) {
  if (at >= ix.size()) throw Error("delta position out of range");
  std::vector<Value> c(ix.size(), sr.zero());
  c[at] = sr.one();
  return FreeVector(sr, ix, std::move(c));
}

FreeVector FreeVector::delta(const Semiring& sr, const IndexSet& ix, std::string_view at) {
  return delta(sr, ix, ix.position(at));
}

bool FreeVector::operator==(const FreeVector& o) const {
  return sr_ == o.sr_ && ix_ == o.ix_ && c_ == o.c_;
}

namespace {

void require_same_module(const FreeVector& u, const FreeVector& v) {
  if (u.semiring() != v.semiring()) throw Error("semiring mismatch");
  if (u.index() != v.index()) throw Error("index mismatch");
}

}  // namespace

FreeVector vec_add(const FreeVector& u, const FreeVector& v) {
  require_same_module(u, v);
  std::vector<Value> c(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) c[i] = u.semiring().add(u[i], v[i]);
  return FreeVector(u.semiring(), u.index(), std::move(c));
}

FreeVector scalar_mul(Value k, const FreeVector& v) {
  std::vector<Value> c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = v.semiring().mul(k, v[i]);
  return FreeVector(v.semiring(), v.index(), std::move(c));
}

FreeVector vec_sup(const Semiring& sr, const IndexSet& ix,
                   std::span<const FreeVector> vs) {
  FreeVector acc = FreeVector::zero(sr, ix);
  for (const FreeVector& v : vs) acc = vec_add(acc, v);
  return acc;
}

Value functional_apply(const FreeVector& a, const FreeVector& phi) {
  require_same_module(a, phi);
  Value acc = a.semiring().zero();
  for (std::size_t i = 0; i < a.size(); ++i)
    acc = a.semiring().add(acc, a.semiring().mul(a[i], phi[i]));
  return acc;
}

bool vec_leq(const FreeVector& u, const FreeVector& v) {
  require_same_module(u, v);
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!u.semiring().leq(u[i], v[i])) return false;
  return true;
}

std::vector<FreeVector> enumerate_vectors(const Semiring& sr, const IndexSet& ix) {
  if (!sr.finite()) throw Error("cannot enumerate vectors of an infinite semiring");
  const std::size_t k = sr.carrier_size();
  const std::size_t n = ix.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= k;
  std::vector<FreeVector> out;
  out.reserve(total);
  std::vector<std::size_t> digits(n, 0);
  for (std::size_t t = 0; t < total; ++t) {
    std::vector<Value> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = Value::finite(digits[i]);
    out.push_back(FreeVector(sr, ix, std::move(c)));
    for (std::size_t i = n; i-- > 0;) {
      if (++digits[i] < k) break;
      digits[i] = 0;
    }
  }
  return out;
}

}  // namespace idem
