#pragma once

#include <functional>
#include <span>
#include <vector>

#include "idem/freemod.hpp"

namespace idem {

// Matrix representation of a sup-preserving operator between free
// semimodules. Entry (x, y) weighs how strongly input coordinate x feeds
// output coordinate y: applying to phi gives
//   psi(y) = sup over x of entry(x, y) * phi(x).
// Entries are stored row-major over the domain.
class Kernel {
 public:
  Kernel(Semiring sr, IndexSet rows, IndexSet cols, std::vector<Value> entries);
  static Kernel zero(const Semiring& sr, const IndexSet& rows, const IndexSet& cols);
  static Kernel identity(const Semiring& sr, const IndexSet& ix);

  const Semiring& semiring() const { return sr_; }
  const IndexSet& rows() const { return x_; }
  const IndexSet& cols() const { return y_; }
  Value entry(std::size_t x, std::size_t y) const { return e_[x * y_.size() + y]; }
  std::span<const Value> entries() const { return e_; }
  // Row x as a vector over the column index.
  FreeVector row(std::size_t x) const;
  // Column y as a functional over the row index.
  FreeVector col(std::size_t y) const;

  bool operator==(const Kernel& o) const;
  bool operator!=(const Kernel& o) const { return !(*this == o); }

 private:
  Semiring sr_;
  IndexSet x_, y_;
  std::vector<Value> e_;
};

FreeVector apply(const Kernel& m, const FreeVector& phi);

// Recovers the matrix of an operator by probing it with coordinate deltas.
// The result is faithful when f is sup-preserving; use certify_extract to
// test that on chosen inputs.
Kernel extract(const std::function<FreeVector(const FreeVector&)>& f,
               const Semiring& sr, const IndexSet& rows, const IndexSet& cols);

// Reapplies the extracted kernel on a test set; returns every input where
// the kernel and f disagree (empty means certified on that set).
std::vector<FreeVector> certify_extract(
    const Kernel& m, const std::function<FreeVector(const FreeVector&)>& f,
    std::span<const FreeVector> tests);

// Left-to-right composition: first m (X -> Y), then n (Y -> Z).
Kernel compose(const Kernel& m, const Kernel& n);

// One-term operator phi -> (sup_x a(x) * phi(x)) * v.
Kernel rank_one(const FreeVector& a, const FreeVector& v);

struct RankOneTerm {
  FreeVector functional;
  FreeVector vector;
};

// Splits a kernel into delta-functional/row pairs whose sup recomposes it.
std::vector<RankOneTerm> nuclear_decompose(const Kernel& m);

// Tensor (Kronecker) product on the product indices.
Kernel kron(const Kernel& m, const Kernel& n);

// Entrywise sup of finitely many kernels of the given shape.
Kernel kernel_sup(const Semiring& sr, const IndexSet& rows, const IndexSet& cols,
                  std::span<const Kernel> ms);

// All kernels of a shape over a finite semiring, enumeration order
// mixed-radix over entries. Desk-scale exhaustive scans only.
std::vector<Kernel> enumerate_kernels(const Semiring& sr, const IndexSet& rows,
                                      const IndexSet& cols);

}  // namespace idem
