#include "idem/semiring.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace idem {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPosInf = std::numeric_limits<double>::infinity();

}  // namespace

Value Value::real(double x) {
  if (std::isnan(x)) throw Error("NaN is not a semiring value");
  if (x == 0.0) x = 0.0;  // collapse -0.0
  return Value(x);
}

Value Value::neg_inf() { return Value(kNegInf); }
Value Value::pos_inf() { return Value(kPosInf); }

std::size_t Value::index() const {
  if (!holds_index()) throw Error("value is not a finite-carrier index");
  return std::get<std::size_t>(v_);
}

double Value::num() const {
  if (holds_index()) throw Error("value is not an extended real");
  return std::get<double>(v_);
}

std::string format_real_token(double x) {
  if (x == kNegInf) return "-inf";
  if (x == kPosInf) return "+inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

struct Semiring::Impl {
  SemiringKind kind;
  std::size_t n = 0;   // carrier size for boolean/chain
  TableDef def;        // table kind only
  bool commutative = true;
};

Semiring Semiring::make_simple(SemiringKind k, std::size_t n) {
  auto impl = std::make_shared<Impl>();
  impl->kind = k;
  impl->n = n;
  return Semiring(std::move(impl));
}

Semiring Semiring::boolean() { return make_simple(SemiringKind::boolean, 2); }

Semiring Semiring::chain(std::size_t n) {
  if (n < 2) throw Error("chain semiring needs at least two elements");
  return make_simple(SemiringKind::chain, n);
}

Semiring Semiring::rmax() { return make_simple(SemiringKind::rmax, 0); }
Semiring Semiring::rmax_top() { return make_simple(SemiringKind::rmax_top, 0); }
Semiring Semiring::rmin() { return make_simple(SemiringKind::rmin, 0); }

Semiring Semiring::table(TableDef def) {
  const std::size_t n = def.elements.size();
  if (n == 0) throw Error("table semiring has an empty carrier");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (def.elements[i] == def.elements[j])
        throw Error("duplicate element label: " + def.elements[i]);
  if (def.zero >= n || def.one >= n) throw Error("zero/one outside the carrier");
  if (def.add.size() != n * n || def.mul.size() != n * n)
    throw Error("operation table has the wrong shape");
  for (std::size_t e : def.add)
    if (e >= n) throw Error("add table entry outside the carrier");
  for (std::size_t e : def.mul)
    if (e >= n) throw Error("mul table entry outside the carrier");

  auto impl = std::make_shared<Impl>();
  impl->kind = SemiringKind::table;
  impl->n = n;
  impl->commutative = true;
  for (std::size_t i = 0; i < n && impl->commutative; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (def.mul[i * n + j] != def.mul[j * n + i]) {
        impl->commutative = false;
        break;
      }
  impl->def = std::move(def);
  return Semiring(std::move(impl));
}

Semiring Semiring::named(std::string_view name) {
  if (name == "boolean") return boolean();
  if (name == "rmax") return rmax();
  if (name == "rmax_top") return rmax_top();
  if (name == "rmin") return rmin();
  if (name.rfind("chain:", 0) == 0) {
    std::string_view num = name.substr(6);
    std::size_t n = 0;
    auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
    if (ec != std::errc{} || p != num.data() + num.size() || n < 2)
      throw ParseError("bad chain size in '" + std::string(name) + "'");
    return chain(n);
  }
  throw ParseError("unknown semiring name '" + std::string(name) + "'");
}

SemiringKind Semiring::kind() const { return impl_->kind; }

std::string Semiring::name() const {
  switch (impl_->kind) {
    case SemiringKind::boolean: return "boolean";
    case SemiringKind::chain: return "chain:" + std::to_string(impl_->n);
    case SemiringKind::rmax: return "rmax";
    case SemiringKind::rmax_top: return "rmax_top";
    case SemiringKind::rmin: return "rmin";
    case SemiringKind::table: return "table";
  }
  return "?";
}

bool Semiring::finite() const {
  switch (impl_->kind) {
    case SemiringKind::boolean:
    case SemiringKind::chain:
    case SemiringKind::table: return true;
    default: return false;
  }
}

bool Semiring::commutative() const { return impl_->commutative; }

std::size_t Semiring::carrier_size() const {
  if (!finite()) throw Error("infinite semiring has no carrier size");
  return impl_->n;
}

std::vector<Value> Semiring::carrier() const {
  std::vector<Value> out;
  out.reserve(carrier_size());
  for (std::size_t i = 0; i < impl_->n; ++i) out.push_back(Value::finite(i));
  return out;
}

const TableDef& Semiring::table_def() const {
  if (impl_->kind != SemiringKind::table) throw Error("not a table semiring");
  return impl_->def;
}

Value Semiring::zero() const {
  switch (impl_->kind) {
    case SemiringKind::boolean:
    case SemiringKind::chain: return Value::finite(0);
    case SemiringKind::table: return Value::finite(impl_->def.zero);
    case SemiringKind::rmax:
    case SemiringKind::rmax_top: return Value::neg_inf();
    case SemiringKind::rmin: return Value::pos_inf();
  }
  throw Error("bad kind");
}

Value Semiring::one() const {
  switch (impl_->kind) {
    case SemiringKind::boolean:
    case SemiringKind::chain: return Value::finite(impl_->n - 1);
    case SemiringKind::table: return Value::finite(impl_->def.one);
    default: return Value::real(0.0);
  }
}

bool Semiring::contains(Value v) const {
  switch (impl_->kind) {
    case SemiringKind::boolean:
    case SemiringKind::chain:
    case SemiringKind::table: return v.holds_index() && v.index() < impl_->n;
    case SemiringKind::rmax: return !v.holds_index() && v.num() != kPosInf;
    case SemiringKind::rmax_top: return !v.holds_index();
    case SemiringKind::rmin: return !v.holds_index() && v.num() != kNegInf;
  }
  return false;
}

namespace {

void require_in(const Semiring& s, Value v) {
  if (!s.contains(v)) throw Error("value outside the " + s.name() + " carrier");
}

}  // namespace

Value Semiring::add(Value a, Value b) const {
  require_in(*this, a);
  require_in(*this, b);
  switch (impl_->kind) {
    case SemiringKind::boolean:
    case SemiringKind::chain: return Value::finite(std::max(a.index(), b.index()));
    case SemiringKind::table:
      return Value::finite(impl_->def.add[a.index() * impl_->n + b.index()]);
    case SemiringKind::rmax:
    case SemiringKind::rmax_top: return Value::real(std::max(a.num(), b.num()));
    case SemiringKind::rmin: return Value::real(std::min(a.num(), b.num()));
  }
  throw Error("bad kind");
}

Value Semiring::mul(Value a, Value b) const {
  require_in(*this, a);
  require_in(*this, b);
  switch (impl_->kind) {
    case SemiringKind::boolean:
    case SemiringKind::chain: return Value::finite(std::min(a.index(), b.index()));
    case SemiringKind::table:
      return Value::finite(impl_->def.mul[a.index() * impl_->n + b.index()]);
    case SemiringKind::rmax:
    case SemiringKind::rmax_top: {
      double x = a.num(), y = b.num();
      // Zero absorbs even against +inf, so check -inf before +inf.
      if (x == kNegInf || y == kNegInf) return Value::neg_inf();
      if (x == kPosInf || y == kPosInf) return Value::pos_inf();
      return Value::real(x + y);
    }
    case SemiringKind::rmin: {
      double x = a.num(), y = b.num();
      if (x == kPosInf || y == kPosInf) return Value::pos_inf();
      return Value::real(x + y);
    }
  }
  throw Error("bad kind");
}

Value Semiring::sup(std::span<const Value> xs) const {
  Value acc = zero();
  for (const Value& v : xs) acc = add(acc, v);
  return acc;
}

Value Semiring::meet(std::span<const Value> xs) const {
  if (xs.empty()) throw Error("meet of an empty family");
  switch (impl_->kind) {
    case SemiringKind::rmax:
    case SemiringKind::rmax_top: {
      double m = xs[0].num();
      for (const Value& v : xs) m = std::min(m, v.num());
      require_in(*this, xs[0]);
      return Value::real(m);
    }
    case SemiringKind::rmin: {
      double m = xs[0].num();
      for (const Value& v : xs) m = std::max(m, v.num());
      return Value::real(m);
    }
    default: {
      // Greatest lower bound in a finite join-semilattice with bottom:
      // the join of all common lower bounds.
      Value acc = zero();
      for (const Value& c : carrier()) {
        bool lower = true;
        for (const Value& v : xs)
          if (!leq(c, v)) {
            lower = false;
            break;
          }
        if (lower) acc = add(acc, c);
      }
      return acc;
    }
  }
}

bool Semiring::has_top() const {
  return finite() || impl_->kind == SemiringKind::rmax_top;
}

Value Semiring::top() const {
  if (impl_->kind == SemiringKind::rmax_top) return Value::pos_inf();
  if (!finite()) throw Error(name() + " has no greatest element");
  Value acc = zero();
  for (const Value& c : carrier()) acc = add(acc, c);
  return acc;
}

Semiring Semiring::completed_top() const {
  switch (impl_->kind) {
    case SemiringKind::rmax: return rmax_top();
    case SemiringKind::rmax_top: return *this;
    case SemiringKind::rmin: throw Error("no top completion defined for rmin");
    default: return *this;  // finite kinds already have a top
  }
}

namespace {

using Law = LawResult;

std::string w2(const Semiring& s, const char* an, Value a, const char* bn, Value b,
               Value lhs, Value rhs) {
  return std::string(an) + "=" + s.format_value(a) + " " + bn + "=" + s.format_value(b) +
         " lhs=" + s.format_value(lhs) + " rhs=" + s.format_value(rhs);
}

std::string w3(const Semiring& s, Value a, Value b, Value c, Value lhs, Value rhs) {
  return "a=" + s.format_value(a) + " b=" + s.format_value(b) + " c=" + s.format_value(c) +
         " lhs=" + s.format_value(lhs) + " rhs=" + s.format_value(rhs);
}

}  // namespace

ValidationReport Semiring::validate() const {
  static const char* law_names[] = {
      "add_idempotent",    "add_commutative",    "add_associative",
      "mul_associative",   "distributive_left",  "distributive_right",
      "zero_add_neutral",  "zero_mul_absorbing", "one_mul_neutral",
      "zero_one_distinct",
  };
  ValidationReport rep;
  if (!finite()) {
    for (const char* n : law_names) rep.laws.push_back({n, LawStatus::assumed, ""});
    return rep;
  }
  const std::vector<Value> e = carrier();
  auto check = [&](const char* law, auto&& body) {
    Law l{law, LawStatus::pass, ""};
    body(l);
    rep.laws.push_back(std::move(l));
  };

  check("add_idempotent", [&](Law& l) {
    for (Value a : e)
      if (add(a, a) != a) {
        l = {l.law, LawStatus::fail, w2(*this, "a", a, "a", a, add(a, a), a)};
        return;
      }
  });
  check("add_commutative", [&](Law& l) {
    for (Value a : e)
      for (Value b : e)
        if (add(a, b) != add(b, a)) {
          l = {l.law, LawStatus::fail, w2(*this, "a", a, "b", b, add(a, b), add(b, a))};
          return;
        }
  });
  check("add_associative", [&](Law& l) {
    for (Value a : e)
      for (Value b : e)
        for (Value c : e) {
          Value lhs = add(add(a, b), c), rhs = add(a, add(b, c));
          if (lhs != rhs) {
            l = {l.law, LawStatus::fail, w3(*this, a, b, c, lhs, rhs)};
            return;
          }
        }
  });
  check("mul_associative", [&](Law& l) {
    for (Value a : e)
      for (Value b : e)
        for (Value c : e) {
          Value lhs = mul(mul(a, b), c), rhs = mul(a, mul(b, c));
          if (lhs != rhs) {
            l = {l.law, LawStatus::fail, w3(*this, a, b, c, lhs, rhs)};
            return;
          }
        }
  });
  check("distributive_left", [&](Law& l) {
    for (Value k : e)
      for (Value x : e)
        for (Value y : e) {
          Value lhs = mul(k, add(x, y)), rhs = add(mul(k, x), mul(k, y));
          if (lhs != rhs) {
            l = {l.law, LawStatus::fail,
                 "k=" + format_value(k) + " x=" + format_value(x) + " y=" + format_value(y) +
                     " lhs=" + format_value(lhs) + " rhs=" + format_value(rhs)};
            return;
          }
        }
  });
  check("distributive_right", [&](Law& l) {
    for (Value k : e)
      for (Value x : e)
        for (Value y : e) {
          Value lhs = mul(add(x, y), k), rhs = add(mul(x, k), mul(y, k));
          if (lhs != rhs) {
            l = {l.law, LawStatus::fail,
                 "k=" + format_value(k) + " x=" + format_value(x) + " y=" + format_value(y) +
                     " lhs=" + format_value(lhs) + " rhs=" + format_value(rhs)};
            return;
          }
        }
  });
  check("zero_add_neutral", [&](Law& l) {
    for (Value a : e)
      if (add(zero(), a) != a) {
        l = {l.law, LawStatus::fail, w2(*this, "0", zero(), "a", a, add(zero(), a), a)};
        return;
      }
  });
  check("zero_mul_absorbing", [&](Law& l) {
    for (Value a : e) {
      if (mul(zero(), a) != zero() || mul(a, zero()) != zero()) {
        l = {l.law, LawStatus::fail,
             "a=" + format_value(a) + " 0*a=" + format_value(mul(zero(), a)) +
                 " a*0=" + format_value(mul(a, zero()))};
        return;
      }
    }
  });
  check("one_mul_neutral", [&](Law& l) {
    for (Value a : e) {
      if (mul(one(), a) != a || mul(a, one()) != a) {
        l = {l.law, LawStatus::fail,
             "a=" + format_value(a) + " 1*a=" + format_value(mul(one(), a)) +
                 " a*1=" + format_value(mul(a, one()))};
        return;
      }
    }
  });
  check("zero_one_distinct", [&](Law& l) {
    if (zero() == one())
      l = {l.law, LawStatus::fail, "zero and one coincide at " + format_value(zero())};
  });
  return rep;
}

Value Semiring::parse_value(std::string_view tok) const {
  switch (impl_->kind) {
    case SemiringKind::boolean:
    case SemiringKind::chain: {
      std::size_t i = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), i);
      if (ec != std::errc{} || p != tok.data() + tok.size() || i >= impl_->n)
        throw ParseError("bad " + name() + " value '" + std::string(tok) + "'");
      return Value::finite(i);
    }
    case SemiringKind::table: {
      for (std::size_t i = 0; i < impl_->n; ++i)
        if (impl_->def.elements[i] == tok) return Value::finite(i);
      throw ParseError("unknown table element '" + std::string(tok) + "'");
    }
    default: {
      if (tok == "-inf") {
        Value v = Value::neg_inf();
        if (!contains(v)) throw ParseError("-inf is not a " + name() + " value");
        return v;
      }
      if (tok == "+inf" || tok == "inf") {
        Value v = Value::pos_inf();
        if (!contains(v)) throw ParseError("+inf is not a " + name() + " value");
        return v;
      }
      double d = 0;
      auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), d);
      if (ec != std::errc{} || p != tok.data() + tok.size())
        throw ParseError("bad real token '" + std::string(tok) + "'");
      return Value::real(d);
    }
  }
}

std::string Semiring::format_value(Value v) const {
  require_in(*this, v);
  switch (impl_->kind) {
    case SemiringKind::boolean:
    case SemiringKind::chain: return std::to_string(v.index());
    case SemiringKind::table: return impl_->def.elements[v.index()];
    default: return format_real_token(v.num());
  }
}

bool Semiring::operator==(const Semiring& o) const {
  if (impl_ == o.impl_) return true;
  if (impl_->kind != o.impl_->kind || impl_->n != o.impl_->n) return false;
  if (impl_->kind != SemiringKind::table) return true;
  const TableDef& a = impl_->def;
  const TableDef& b = o.impl_->def;
  return a.elements == b.elements && a.zero == b.zero && a.one == b.one &&
         a.add == b.add && a.mul == b.mul;
}

}  // namespace idem
