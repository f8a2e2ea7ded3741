#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "idem/semiring.hpp"

namespace idem {

// Element of K^n, componentwise arithmetic.
using Tuple = std::vector<Value>;

Tuple tuple_add(const Semiring& sr, const Tuple& a, const Tuple& b);
Tuple tuple_smul(const Semiring& sr, Value k, const Tuple& a);
bool tuple_leq(const Semiring& sr, const Tuple& a, const Tuple& b);

// Explicitly enumerated semimodule over a finite semiring: a set of
// K-tuples, kept sorted and deduplicated. Construction does not insist the
// set is closed; validate() reports closure defects, and the operations
// that need closure throw when a required element is missing. Only finite
// semirings are supported here, which keeps every sup a finite fold.
class FinSemimodule {
 public:
  FinSemimodule(Semiring sr, std::size_t dim, std::vector<Tuple> elems);
  static FinSemimodule full_cube(const Semiring& sr, std::size_t dim);
  // Smallest closed submodule of K^dim containing the generators.
  static FinSemimodule span(const Semiring& sr, std::size_t dim,
                            std::span<const Tuple> gens);

  const Semiring& semiring() const { return sr_; }
  std::size_t dim() const { return dim_; }
  std::size_t size() const { return elems_.size(); }
  const Tuple& element(std::size_t i) const { return elems_[i]; }
  std::optional<std::size_t> find(const Tuple& t) const;
  std::size_t zero_index() const;  // throws Error if the zero tuple is absent

  // Index arithmetic; throws Error when the result tuple is not a member.
  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t smul(Value k, std::size_t a) const;
  bool leq(std::size_t a, std::size_t b) const;
  // Sup of a subset of members (empty yields the zero element).
  std::size_t sup(std::span<const std::size_t> idxs) const;

  // Membership of the zero tuple, closure under addition and scalars, and
  // the componentwise module axioms.
  ValidationReport validate() const;

  bool operator==(const FinSemimodule& o) const;
  bool operator!=(const FinSemimodule& o) const { return !(*this == o); }

 private:
  Semiring sr_;
  std::size_t dim_;
  std::vector<Tuple> elems_;
};

// Product of the two modules as a module of concatenated tuples.
FinSemimodule product_module(const FinSemimodule& a, const FinSemimodule& b);

// Finite product of finite semimodules over a common commutative semiring.
// Points are encoded as mixed-radix ids over the factor element lists
// (rightmost factor fastest); decode yields per-factor element indices.
class ProductSpace {
 public:
  explicit ProductSpace(std::vector<FinSemimodule> factors);

  const Semiring& semiring() const { return sr_; }
  std::size_t arity() const { return factors_.size(); }
  const FinSemimodule& factor(std::size_t a) const { return factors_[a]; }
  std::size_t total() const { return total_; }

  std::size_t encode(std::span<const std::size_t> comps) const;
  std::vector<std::size_t> decode(std::size_t p) const;
  std::size_t component(std::size_t p, std::size_t slot) const;
  std::size_t with_component(std::size_t p, std::size_t slot, std::size_t elem) const;
  std::size_t zero_point() const;

  // Tuples of the point's components, for printing and cross-module maps.
  std::vector<Tuple> point_tuples(std::size_t p) const;

  bool operator==(const ProductSpace& o) const;
  bool operator!=(const ProductSpace& o) const { return !(*this == o); }

  struct Closure;  // precomputed rule tables, built lazily
  const Closure& closure() const;

 private:
  Semiring sr_;
  std::vector<FinSemimodule> factors_;
  std::size_t total_;
  mutable std::shared_ptr<const Closure> closure_;
};

using SpacePtr = std::shared_ptr<const ProductSpace>;

SpacePtr make_space(std::vector<FinSemimodule> factors);

// Canonical (closed) set of product points; the extensional form of a
// tensor. Points are sorted ids.
class ExtTensor {
 public:
  ExtTensor(SpacePtr space, std::vector<std::size_t> points);

  const SpacePtr& space() const { return space_; }
  const std::vector<std::size_t>& points() const { return pts_; }
  bool contains(std::size_t p) const;

  bool operator==(const ExtTensor& o) const;
  bool operator!=(const ExtTensor& o) const { return !(*this == o); }

 private:
  SpacePtr space_;
  std::vector<std::size_t> pts_;
};

// Rule application order inside the closure loop; the fixed point is the
// same for both (asserted by tests), the knob exists to demonstrate that.
enum class RuleOrder { down_sup_transfer, transfer_sup_down };

// Smallest canonical superset: seeds the zero point, then closes under
// fiberwise downward sets, fiberwise sups, and scalar slot transfer.
ExtTensor tau_hull(const SpacePtr& space, std::span<const std::size_t> pts,
                   RuleOrder order = RuleOrder::down_sup_transfer);

// Stability of the given set under the three closure rules (and membership
// of the zero point).
bool is_tensor(const SpacePtr& space, std::span<const std::size_t> pts);

bool tensors_equal(const SpacePtr& space, std::span<const std::size_t> a,
                   std::span<const std::size_t> b);

ExtTensor tensor_add(const ExtTensor& a, const ExtTensor& b);
// Multiplies the chosen slot of every point by k and closes; canonically
// independent of the slot choice.
ExtTensor tensor_scalar(Value k, const ExtTensor& t, std::size_t slot);

// Hull of a single point: the extensional image of the pure tensor at p.
ExtTensor canonical_pi(const SpacePtr& space, std::size_t p);

// Containment in the hull of the single point p.
bool bounded_by(const ExtTensor& t, std::size_t p);

// Point ids of the fiber through `through` along `slot`, ordered by the
// factor's element index.
std::vector<std::size_t> fiber(const ProductSpace& space, std::size_t slot,
                               std::size_t through);

// Element ids of { x : x <= w } in the module order.
std::vector<std::size_t> lower_set(const FinSemimodule& m, std::size_t w);

// Every canonical subset of the space, by scanning all 2^total subsets;
// desk scale only (throws beyond 20 points).
std::vector<ExtTensor> enumerate_tensors(const SpacePtr& space);

// Total table of a multi-argument map from a product of finite semimodules
// to a finite semimodule, stored pointwise (codomain element index per
// product point).
class PolyMapTable {
 public:
  PolyMapTable(SpacePtr space, FinSemimodule codomain, std::vector<std::size_t> table);
  // Polylinear extension from values on tuples of unit vectors; every
  // factor must be the full cube over the semiring. gen_values is indexed
  // mixed-radix over the factor dimensions (rightmost fastest).
  static PolyMapTable from_generators(const SpacePtr& cubes, FinSemimodule codomain,
                                      std::span<const std::size_t> gen_values);

  const SpacePtr& space() const { return space_; }
  const FinSemimodule& codomain() const { return cod_; }
  std::size_t value(std::size_t point) const;
  std::span<const std::size_t> table() const { return table_; }

  // Separate sup- and scalar-preservation in every slot.
  ValidationReport validate() const;

  bool operator==(const PolyMapTable& o) const;

 private:
  SpacePtr space_;
  FinSemimodule cod_;
  std::vector<std::size_t> table_;
};

// Value of the linear factorization through the tensor semimodule: the sup
// of f over the points of the canonical set.
std::size_t factorize_ext(const PolyMapTable& f, const ExtTensor& t);

}  // namespace idem
