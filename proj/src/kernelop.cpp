#include "idem/kernelop.hpp"

namespace idem {

Kernel::Kernel(Semiring sr, IndexSet rows, IndexSet cols, std::vector<Value> entries)
    : sr_(std::move(sr)), x_(std::move(rows)), y_(std::move(cols)), e_(std::move(entries)) {
  if (e_.size() != x_.size() * y_.size())
    throw Error("entry count does not match the kernel shape");
  for (const Value& v : e_)
    if (!sr_.contains(v)) throw Error("kernel entry outside the " + sr_.name() + " carrier");
}

Kernel Kernel::zero(const Semiring& sr, const IndexSet& rows, const IndexSet& cols) {
  return Kernel(sr, rows, cols, std::vector<Value>(rows.size() * cols.size(), sr.zero()));
}

Kernel Kernel::identity(const Semiring& sr, const IndexSet& ix) {
  std::vector<Value> e(ix.size() * ix.size(), sr.zero());
  for (std::size_t i = 0; i < ix.size(); ++i) e[i * ix.size() + i] = sr.one();
  return Kernel(sr, ix, ix, std::move(e));
}

FreeVector Kernel::row(std::size_t x) const {
  if (x >= x_.size()) throw Error("kernel row out of range");
  std::vector<Value> c(e_.begin() + x * y_.size(), e_.begin() + (x + 1) * y_.size());
  return FreeVector(sr_, y_, std::move(c));
}

FreeVector Kernel::col(std::size_t y) const {
  if (y >= y_.size()) throw Error("kernel column out of range");
  std::vector<Value> c(x_.size());
  for (std::size_t x = 0; x < x_.size(); ++x) c[x] = entry(x, y);
  return FreeVector(sr_, x_, std::move(c));
}

bool Kernel::operator==(const Kernel& o) const {
  return sr_ == o.sr_ && x_ == o.x_ && y_ == o.y_ && e_ == o.e_;
}

FreeVector apply(const Kernel& m, const FreeVector& phi) {
  if (m.semiring() != phi.semiring()) throw Error("semiring mismatch");
  if (m.rows() != phi.index()) throw Error("kernel domain does not match the input index");
  const Semiring& s = m.semiring();
  std::vector<Value> c(m.cols().size(), s.zero());
  for (std::size_t x = 0; x < m.rows().size(); ++x)
    for (std::size_t y = 0; y < m.cols().size(); ++y)
      c[y] = s.add(c[y], s.mul(m.entry(x, y), phi[x]));
  return FreeVector(s, m.cols(), std::move(c));
}

Kernel extract(const std::function<FreeVector(const FreeVector&)>& f,
               const Semiring& sr, const IndexSet& rows, const IndexSet& cols) {
  std::vector<Value> e(rows.size() * cols.size(), sr.zero());
  for (std::size_t x = 0; x < rows.size(); ++x) {
    FreeVector img = f(FreeVector::delta(sr, rows, x));
    if (img.semiring() != sr || img.index() != cols)
      throw Error("extract: image lies in the wrong module");
    for (std::size_t y = 0; y < cols.size(); ++y) e[x * cols.size() + y] = img[y];
  }
  return Kernel(sr, rows, cols, std::move(e));
}

std::vector<FreeVector> certify_extract(
    const Kernel& m, const std::function<FreeVector(const FreeVector&)>& f,
    std::span<const FreeVector> tests) {
  std::vector<FreeVector> bad;
  for (const FreeVector& phi : tests)
    if (apply(m, phi) != f(phi)) bad.push_back(phi);
  return bad;
}

Kernel compose(const Kernel& m, const Kernel& n) {
  if (m.semiring() != n.semiring()) throw Error("semiring mismatch");
  if (m.cols() != n.rows()) throw Error("composition indices do not line up");
  const Semiring& s = m.semiring();
  const std::size_t nx = m.rows().size(), ny = m.cols().size(), nz = n.cols().size();
  std::vector<Value> e(nx * nz, s.zero());
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t z = 0; z < nz; ++z) {
      Value acc = s.zero();
      for (std::size_t y = 0; y < ny; ++y)
        acc = s.add(acc, s.mul(m.entry(x, y), n.entry(y, z)));
      e[x * nz + z] = acc;
    }
  return Kernel(s, m.rows(), n.cols(), std::move(e));
}

Kernel rank_one(const FreeVector& a, const FreeVector& v) {
  if (a.semiring() != v.semiring()) throw Error("semiring mismatch");
  const Semiring& s = a.semiring();
  std::vector<Value> e(a.size() * v.size());
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < v.size(); ++y)
      e[x * v.size() + y] = s.mul(a[x], v[y]);
  return Kernel(s, a.index(), v.index(), std::move(e));
}

std::vector<RankOneTerm> nuclear_decompose(const Kernel& m) {
  std::vector<RankOneTerm> out;
  out.reserve(m.rows().size());
  for (std::size_t x = 0; x < m.rows().size(); ++x)
    out.push_back({FreeVector::delta(m.semiring(), m.rows(), x), m.row(x)});
  return out;
}

Kernel kron(const Kernel& m, const Kernel& n) {
  if (m.semiring() != n.semiring()) throw Error("semiring mismatch");
  const Semiring& s = m.semiring();
  IndexSet rows = product(m.rows(), n.rows());
  IndexSet cols = product(m.cols(), n.cols());
  const std::size_t nc1 = m.cols().size(), nc2 = n.cols().size();
  std::vector<Value> e(rows.size() * cols.size(), s.zero());
  for (std::size_t x1 = 0; x1 < m.rows().size(); ++x1)
    for (std::size_t x2 = 0; x2 < n.rows().size(); ++x2)
      for (std::size_t y1 = 0; y1 < nc1; ++y1)
        for (std::size_t y2 = 0; y2 < nc2; ++y2) {
          std::size_t r = x1 * n.rows().size() + x2;
          std::size_t c = y1 * nc2 + y2;
          e[r * cols.size() + c] = s.mul(m.entry(x1, y1), n.entry(x2, y2));
        }
  return Kernel(s, std::move(rows), std::move(cols), std::move(e));
}

Kernel kernel_sup(const Semiring& sr, const IndexSet& rows, const IndexSet& cols,
                  std::span<const Kernel> ms) {
  Kernel acc = Kernel::zero(sr, rows, cols);
  for (const Kernel& m : ms) {
    if (m.semiring() != sr || m.rows() != rows || m.cols() != cols)
      throw Error("kernel shape mismatch in sup");
    std::vector<Value> e(acc.entries().begin(), acc.entries().end());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = sr.add(e[i], m.entries()[i]);
    acc = Kernel(sr, rows, cols, std::move(e));
  }
  return acc;
}

std::vector<Kernel> enumerate_kernels(const Semiring& sr, const IndexSet& rows,
                                      const IndexSet& cols) {
  if (!sr.finite()) throw Error("cannot enumerate kernels of an infinite semiring");
  const std::size_t k = sr.carrier_size();
  const std::size_t cells = rows.size() * cols.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < cells; ++i) total *= k;
  std::vector<Kernel> out;
  out.reserve(total);
  std::vector<std::size_t> digits(cells, 0);
  for (std::size_t t = 0; t < total; ++t) {
    std::vector<Value> e(cells);
    for (std::size_t i = 0; i < cells; ++i) e[i] = Value::finite(digits[i]);
    out.push_back(Kernel(sr, rows, cols, std::move(e)));
    for (std::size_t i = cells; i-- > 0;) {
      if (++digits[i] < k) break;
      digits[i] = 0;
    }
  }
  return out;
}

}  // namespace idem
