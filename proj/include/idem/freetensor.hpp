#pragma once

#include <span>
#include <vector>

#include "idem/kernelop.hpp"

namespace idem {

// Tensor over free semimodules: a coefficient for every tuple of factor
// labels, stored as a vector over the flattened product index (rightmost
// factor fastest). Requires a commutative semiring.
class TensorKernel {
 public:
  TensorKernel(Semiring sr, std::vector<IndexSet> factors, std::vector<Value> coeffs);

  const Semiring& semiring() const { return sr_; }
  std::span<const IndexSet> factors() const { return factors_; }
  const IndexSet& product_index() const { return prod_; }
  std::size_t size() const { return c_.size(); }
  Value coeff(std::size_t pos) const { return c_[pos]; }
  Value coeff(std::span<const std::size_t> tuple) const { return c_[position(tuple)]; }
  std::span<const Value> coeffs() const { return c_; }
  // Mixed-radix position of a tuple of factor positions.
  std::size_t position(std::span<const std::size_t> tuple) const;
  std::vector<std::size_t> tuple_at(std::size_t pos) const;
  // The same data as a plain vector over the product index.
  FreeVector as_vector() const { return FreeVector(sr_, prod_, c_); }

  static TensorKernel zero(const Semiring& sr, std::vector<IndexSet> factors);
  static TensorKernel from_vector(const FreeVector& v, std::vector<IndexSet> factors);

  bool operator==(const TensorKernel& o) const;
  bool operator!=(const TensorKernel& o) const { return !(*this == o); }

 private:
  Semiring sr_;
  std::vector<IndexSet> factors_;
  IndexSet prod_;
  std::vector<Value> c_;
};

// Formal sum of coefficient-weighted pure tuples. Duplicate tuples are
// permitted; conversion to a TensorKernel accumulates them with addition.
struct PureTerm {
  std::vector<std::string> labels;  // one per factor
  Value coeff;
};

struct PureSum {
  std::vector<PureTerm> terms;
};

// Pure tensor of the given vectors: coefficient at (x1,...,xn) is the
// product of the factor coefficients.
TensorKernel outer(std::span<const FreeVector> vs);

// One term per product tuple, in enumeration order.
PureSum to_pure_sum(const TensorKernel& t);
TensorKernel from_pure_sum(const Semiring& sr, std::span<const IndexSet> factors,
                           const PureSum& ps);
// Drops zero terms and merges duplicate tuples by addition.
PureSum normalize_pure_sum(const Semiring& sr, const PureSum& ps);

// Values of a multi-argument map on tuples of coordinate deltas; the whole
// map is recovered from these by polylinear extension.
class GeneratorPolyMap {
 public:
  GeneratorPolyMap(Semiring sr, std::vector<IndexSet> factors, IndexSet codomain,
                   std::vector<FreeVector> table);

  const Semiring& semiring() const { return sr_; }
  std::span<const IndexSet> factors() const { return factors_; }
  const IndexSet& codomain() const { return cod_; }
  // Value on the tuple of deltas at the given factor positions.
  const FreeVector& value(std::span<const std::size_t> tuple) const;
  std::span<const FreeVector> table() const { return table_; }

 private:
  Semiring sr_;
  std::vector<IndexSet> factors_;
  IndexSet cod_;
  std::vector<FreeVector> table_;
};

// The unique kernel on the product index that turns outer products of the
// arguments into the polylinear extension of the generator table.
Kernel factorize(const GeneratorPolyMap& g);

// Relabeling isomorphism between two index sets; forward and backward
// reindex coefficient vectors and compose to the identity.
struct IndexBijection {
  IndexSet from, to;
  std::vector<std::size_t> fwd;  // position in `to` for each position in `from`

  FreeVector forward(const FreeVector& v) const;
  FreeVector backward(const FreeVector& v) const;
};

// (x,y) -> (y,x)
IndexBijection comm_iso(const IndexSet& x, const IndexSet& y);
// ((x,y),z) -> (x,(y,z))
IndexBijection assoc_iso(const IndexSet& x, const IndexSet& y, const IndexSet& z);
// (x + y, z) -> (x,z) + (y,z), tags preserved
IndexBijection distr_iso(const IndexSet& x, const IndexSet& y, const IndexSet& z);

// Direct sum plumbing over the tagged union index.
FreeVector dsum_inject(std::span<const IndexSet> parts, std::size_t alpha,
                       const FreeVector& v);
FreeVector dsum_project(std::span<const IndexSet> parts, std::size_t alpha,
                        const FreeVector& u);

// Pairing of maps with a common domain into the product (tagged-union
// columns): the unique map whose compositions with the projections are the
// given family.
Kernel map_direct_product(std::span<const Kernel> fs);
// Copairing of maps with a common codomain out of the sum (tagged-union
// rows): the unique map whose compositions with the injections are the
// given family.
Kernel map_direct_sum(std::span<const Kernel> fs);

}  // namespace idem
