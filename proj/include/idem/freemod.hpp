#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "idem/semiring.hpp"

namespace idem {

// Ordered finite set of distinct labels indexing the coordinates of a free
// semimodule. Immutable and cheap to copy; an empty set is allowed and
// names the zero module.
class IndexSet {
 public:
  IndexSet();
  explicit IndexSet(std::vector<std::string> labels);

  std::size_t size() const;
  const std::string& label(std::size_t i) const;
  std::span<const std::string> labels() const;
  std::size_t position(std::string_view label) const;  // throws Error if absent
  bool contains(std::string_view label) const;

  bool operator==(const IndexSet& o) const;
  bool operator!=(const IndexSet& o) const { return !(*this == o); }

 private:
  struct Data;
  std::shared_ptr<const Data> d_;
};

// Pairwise product index, row-major, tuple labels joined by '|'.
IndexSet product(const IndexSet& a, const IndexSet& b);
// n-ary product, rightmost factor fastest; labels are flat joins.
IndexSet product(std::span<const IndexSet> parts);
// Disjoint union; label "i:x" marks label x coming from part i.
IndexSet disjoint_union(std::span<const IndexSet> parts);

// Element of the free semimodule over an index set: a total coefficient
// assignment. Coefficients live in the ambient semiring's carrier.
class FreeVector {
 public:
  FreeVector(Semiring sr, IndexSet ix, std::vector<Value> coeffs);
  static FreeVector zero(const Semiring& sr, const IndexSet& ix);
  // Unit coordinate vector: one at the named position, zero elsewhere.
  static FreeVector delta(const Semiring& sr, const IndexSet& ix, std::string_view at);
  static FreeVector delta(const Semiring& sr, const IndexSet& ix, std::size_t at);

  const Semiring& semiring() const { return sr_; }
  const IndexSet& index() const { return ix_; }
  std::size_t size() const { return c_.size(); }
  Value operator[](std::size_t i) const { return c_[i]; }
  Value at(std::string_view label) const { return c_[ix_.position(label)]; }
  std::span<const Value> coeffs() const { return c_; }

  bool operator==(const FreeVector& o) const;
  bool operator!=(const FreeVector& o) const { return !(*this == o); }

 private:
  Semiring sr_;
  IndexSet ix_;
  std::vector<Value> c_;
};

FreeVector vec_add(const FreeVector& u, const FreeVector& v);
FreeVector scalar_mul(Value k, const FreeVector& v);
// Coordinatewise sup of a finite family; an empty family yields the zero
// vector of the given ambient module.
FreeVector vec_sup(const Semiring& sr, const IndexSet& ix,
                   std::span<const FreeVector> vs);
// Pairing of a functional (stored extensionally as a vector of values
// a(x)) with a vector: sup over x of a(x) * phi(x).
Value functional_apply(const FreeVector& a, const FreeVector& phi);

// Pointwise order inherited from the semiring.
bool vec_leq(const FreeVector& u, const FreeVector& v);

// All vectors over a finite semiring, in mixed-radix enumeration order.
// Intended for exhaustive property scans at desk scale.
std::vector<FreeVector> enumerate_vectors(const Semiring& sr, const IndexSet& ix);

}  // namespace idem
