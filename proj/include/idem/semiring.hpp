#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "idem/error.hpp"

namespace idem {

// Scalar of an idempotent semiring. Finite kinds store a carrier index,
// the real kinds (max-plus family) store an extended real. Reals are kept
// exact: -0.0 is normalized to 0.0 on construction and NaN is rejected, so
// operator== is equivalent to bitwise equality on everything we ever hold.
class Value {
 public:
  Value() : v_(std::size_t{0}) {}

  static Value finite(std::size_t idx) { return Value(idx); }
  static Value real(double x);
  static Value neg_inf();
  static Value pos_inf();

  bool holds_index() const { return std::holds_alternative<std::size_t>(v_); }
  std::size_t index() const;
  double num() const;

  friend bool operator==(const Value& a, const Value& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
  friend bool operator<(const Value& a, const Value& b) { return a.v_ < b.v_; }

 private:
  explicit Value(std::size_t i) : v_(i) {}
  explicit Value(double d) : v_(d) {}
  std::variant<std::size_t, double> v_;
};

enum class LawStatus { pass, fail, assumed };

struct LawResult {
  std::string law;
  LawStatus status = LawStatus::pass;
  std::string witness;  // empty unless status == fail
};

struct ValidationReport {
  std::vector<LawResult> laws;
  bool ok() const {
    for (const auto& l : laws)
      if (l.status == LawStatus::fail) return false;
    return true;
  }
};

enum class SemiringKind { boolean, chain, rmax, rmax_top, rmin, table };

// Definition of a finite semiring given by explicit operation tables.
// Tables are row-major |elements| x |elements| index matrices.
struct TableDef {
  std::vector<std::string> elements;
  std::size_t zero = 0;
  std::size_t one = 0;
  std::vector<std::size_t> add;
  std::vector<std::size_t> mul;
};

// Immutable idempotent semiring descriptor with its operations.
// Copies are cheap (shared immutable state).
//
// Builtins: boolean, chain:<n> (join = max, mul = min on {0..n-1}),
// rmax (reals with -inf, max/plus), rmax_top (rmax with +inf adjoined),
// rmin (reals with +inf, min/plus). The standard order is derived from
// addition: leq(a,b) iff add(a,b) == b, so for rmin it is the reversed
// numeric order.
class Semiring {
 public:
  static Semiring boolean();
  static Semiring chain(std::size_t n);  // n >= 2
  static Semiring rmax();
  static Semiring rmax_top();
  static Semiring rmin();
  static Semiring table(TableDef def);
  // Resolves a builtin by name: "boolean", "chain:<n>", "rmax", "rmax_top",
  // "rmin". Throws ParseError on anything else.
  static Semiring named(std::string_view name);

  SemiringKind kind() const;
  // Name used in file headers; "table" for explicit tables.
  std::string name() const;
  bool finite() const;
  bool commutative() const;  // multiplication; precomputed for tables
  std::size_t carrier_size() const;          // finite kinds only
  std::vector<Value> carrier() const;        // finite kinds only
  const TableDef& table_def() const;         // table kind only

  Value zero() const;
  Value one() const;
  Value add(Value a, Value b) const;
  Value mul(Value a, Value b) const;
  bool leq(Value a, Value b) const { return add(a, b) == b; }

  // Least upper bound in the standard order; sup of nothing is zero().
  Value sup(std::span<const Value> xs) const;
  // Greatest lower bound; requires a nonempty span.
  Value meet(std::span<const Value> xs) const;

  bool contains(Value v) const;
  // Top element if one exists in the carrier (always for finite kinds,
  // +inf for rmax_top); throws Error otherwise.
  Value top() const;
  bool has_top() const;

  // Returns a descriptor whose order has a greatest element: finite kinds
  // and rmax_top unchanged, rmax becomes rmax_top. rmin is not supported.
  Semiring completed_top() const;

  // Exhaustive axiom check for finite kinds. The real builtins cannot be
  // scanned, so their laws are reported with status assumed.
  ValidationReport validate() const;

  Value parse_value(std::string_view tok) const;
  std::string format_value(Value v) const;

  bool operator==(const Semiring& o) const;
  bool operator!=(const Semiring& o) const { return !(*this == o); }

 private:
  struct Impl;
  explicit Semiring(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  static Semiring make_simple(SemiringKind k, std::size_t n);
  std::shared_ptr<const Impl> impl_;
};

// Formats a real token exactly (shortest round-trip form, "-inf"/"+inf").
std::string format_real_token(double x);

}  // namespace idem
