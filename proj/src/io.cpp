#include "idem/io.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "idem/error.hpp"

namespace idem {

namespace {

std::vector<std::string> split_tokens(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(std::move(t));
  return toks;
}

// Significant lines of a file: comments stripped, blanks dropped, physical
// line numbers kept for error messages.
struct Lines {
  std::string path;
  std::vector<std::pair<int, std::string>> sig;
  std::size_t pos = 0;

  explicit Lines(const std::string& p) : path(p) {
    std::ifstream in(p);
    if (!in) throw ParseError(p + ": cannot open");
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
      ++no;
      add_line(no, line);
    }
  }

  // Single in-memory line, no file behind it.
  Lines(std::string label, const std::string& line) : path(std::move(label)) {
    add_line(1, line);
  }

  void add_line(int no, std::string line) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (split_tokens(line).empty()) return;
    sig.emplace_back(no, std::move(line));
  }

  bool done() const { return pos == sig.size(); }
  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ParseError(path + ":" + std::to_string(line) + ": " + msg);
  }
  [[noreturn]] void fail_eof(const std::string& msg) const {
    throw ParseError(path + ": unexpected end of file: " + msg);
  }
  const std::pair<int, std::string>& peek() const {
    if (done()) fail_eof("more input expected");
    return sig[pos];
  }
  std::pair<int, std::string> next() {
    auto l = peek();
    ++pos;
    return l;
  }
  void expect_done() const {
    if (!done()) fail(sig[pos].first, "unexpected trailing line");
  }
};

std::size_t parse_size(const Lines& src, int line, const std::string& tok) {
  std::size_t n = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), n);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    src.fail(line, "bad number '" + tok + "'");
  return n;
}

Value parse_value_at(const Lines& src, int line, const Semiring& sr,
                     const std::string& tok) {
  try {
    return sr.parse_value(tok);
  } catch (const ParseError& e) {
    src.fail(line, e.what());
  }
}

// Declared semiring token, or the override if one was given.
Semiring header_semiring(const Lines& src, int line, const std::string& tok,
                         const std::optional<Semiring>& override_sr) {
  if (override_sr) return *override_sr;
  try {
    return Semiring::named(tok);
  } catch (const ParseError& e) {
    src.fail(line, std::string(e.what()) + " (use a semiring override for table kinds)");
  }
}

Tuple parse_tuple(const Lines& src, int line, const Semiring& sr,
                  std::span<const std::string> toks) {
  Tuple t;
  t.reserve(toks.size());
  for (const auto& tok : toks) t.push_back(parse_value_at(src, line, sr, tok));
  return t;
}

std::string join_tuple(const Semiring& sr, const Tuple& t) {
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += " ";
    out += sr.format_value(t[i]);
  }
  return out;
}

bool is_keyword(const std::string& tok) {
  return tok == "factor" || tok == "codomain" || tok == "table";
}

}  // namespace

Semiring load_semiring_file(const std::string& path) {
  Lines src(path);

  auto [hline, header] = src.next();
  auto h = split_tokens(header);
  if (h.size() != 2 || h[0] != "semiring" || h[1] != "table")
    src.fail(hline, "expected 'semiring table'");

  auto [eline, elems] = src.next();
  auto e = split_tokens(elems);
  if (e.size() < 2 || e[0] != "elements")
    src.fail(eline, "expected 'elements <label...>'");
  TableDef def;
  def.elements.assign(e.begin() + 1, e.end());

  auto find_label = [&](int line, const std::string& lab) -> std::size_t {
    for (std::size_t i = 0; i < def.elements.size(); ++i)
      if (def.elements[i] == lab) return i;
    src.fail(line, "unknown element '" + lab + "'");
  };

  auto [zline, zero] = src.next();
  auto z = split_tokens(zero);
  if (z.size() != 2 || z[0] != "zero") src.fail(zline, "expected 'zero <label>'");
  def.zero = find_label(zline, z[1]);

  auto [oline, one] = src.next();
  auto o = split_tokens(one);
  if (o.size() != 2 || o[0] != "one") src.fail(oline, "expected 'one <label>'");
  def.one = find_label(oline, o[1]);

  auto read_table = [&](const char* which) {
    auto [kline, kw] = src.next();
    auto k = split_tokens(kw);
    if (k.size() != 1 || k[0] != which)
      src.fail(kline, std::string("expected '") + which + "'");
    std::vector<std::size_t> table;
    for (std::size_t r = 0; r < def.elements.size(); ++r) {
      auto [rline, row] = src.next();
      auto toks = split_tokens(row);
      if (toks.size() != def.elements.size())
        src.fail(rline, std::string(which) + " row needs " +
                            std::to_string(def.elements.size()) + " entries");
      for (const auto& t : toks) table.push_back(find_label(rline, t));
    }
    return table;
  };
  def.add = read_table("add");
  def.mul = read_table("mul");
  src.expect_done();

  try {
    return Semiring::table(std::move(def));
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Semiring resolve_semiring(const std::string& spec) {
  if (spec == "boolean" || spec == "rmax" || spec == "rmax_top" || spec == "rmin" ||
      spec.rfind("chain:", 0) == 0)
    return Semiring::named(spec);
  if (std::filesystem::exists(spec)) return load_semiring_file(spec);
  throw ParseError("unknown semiring '" + spec +
                   "' (not a builtin name and not a readable file)");
}

namespace {

FreeVector parse_vector_tokens(const Lines& src, int line,
                               const std::vector<std::string>& toks,
                               const std::optional<Semiring>& override_sr) {
  if (toks.size() < 3 || toks[0] != "vec")
    src.fail(line, "expected 'vec <semiring> <labels...> : <values...>'");
  Semiring sr = header_semiring(src, line, toks[1], override_sr);
  auto colon = std::find(toks.begin(), toks.end(), ":");
  if (colon == toks.end()) src.fail(line, "missing ':' separator");
  std::vector<std::string> labels(toks.begin() + 2, colon);
  std::vector<Value> vals;
  for (auto it = colon + 1; it != toks.end(); ++it)
    vals.push_back(parse_value_at(src, line, sr, *it));
  if (labels.size() != vals.size())
    src.fail(line, "have " + std::to_string(labels.size()) + " labels but " +
                       std::to_string(vals.size()) + " values");
  try {
    return FreeVector(sr, IndexSet(std::move(labels)), std::move(vals));
  } catch (const Error& e) {
    src.fail(line, e.what());
  }
}

}  // namespace

FreeVector parse_vector_line(const std::string& line,
                             const std::optional<Semiring>& override_sr) {
  Lines src("<vector line>", line);
  if (src.done()) throw ParseError("<vector line>: empty input");
  auto [no, text] = src.next();
  return parse_vector_tokens(src, no, split_tokens(text), override_sr);
}

std::string format_vector_line(const FreeVector& v) {
  std::string out = "vec " + v.semiring().name();
  for (std::size_t i = 0; i < v.index().size(); ++i) out += " " + v.index().label(i);
  out += " :";
  for (std::size_t i = 0; i < v.size(); ++i)
    out += " " + v.semiring().format_value(v[i]);
  out += "\n";
  return out;
}

FreeVector load_vector_file(const std::string& path,
                            const std::optional<Semiring>& override_sr) {
  Lines src(path);
  auto [line, text] = src.next();
  auto v = parse_vector_tokens(src, line, split_tokens(text), override_sr);
  src.expect_done();
  return v;
}

Kernel load_kernel_file(const std::string& path,
                        const std::optional<Semiring>& override_sr) {
  Lines src(path);
  auto [hline, header] = src.next();
  auto h = split_tokens(header);
  if (h.size() != 2 || h[0] != "kernel")
    src.fail(hline, "expected 'kernel <semiring>'");
  Semiring sr = header_semiring(src, hline, h[1], override_sr);

  auto [rline, rows] = src.next();
  auto r = split_tokens(rows);
  if (r.size() < 2 || r[0] != "rows") src.fail(rline, "expected 'rows <label...>'");
  auto [cline, cols] = src.next();
  auto c = split_tokens(cols);
  if (c.size() < 2 || c[0] != "cols") src.fail(cline, "expected 'cols <label...>'");
  IndexSet rix(std::vector<std::string>(r.begin() + 1, r.end()));
  IndexSet cix(std::vector<std::string>(c.begin() + 1, c.end()));

  std::vector<Value> entries;
  entries.reserve(rix.size() * cix.size());
  for (std::size_t x = 0; x < rix.size(); ++x) {
    auto [line, text] = src.next();
    auto toks = split_tokens(text);
    if (toks.size() != cix.size())
      src.fail(line, "row needs " + std::to_string(cix.size()) + " entries, has " +
                         std::to_string(toks.size()));
    for (const auto& t : toks) entries.push_back(parse_value_at(src, line, sr, t));
  }
  src.expect_done();
  try {
    return Kernel(sr, std::move(rix), std::move(cix), std::move(entries));
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_kernel_text(const Kernel& k) {
  std::string out = "kernel " + k.semiring().name() + "\nrows";
  for (std::size_t x = 0; x < k.rows().size(); ++x) out += " " + k.rows().label(x);
  out += "\ncols";
  for (std::size_t y = 0; y < k.cols().size(); ++y) out += " " + k.cols().label(y);
  out += "\n";
  for (std::size_t x = 0; x < k.rows().size(); ++x) {
    for (std::size_t y = 0; y < k.cols().size(); ++y) {
      if (y) out += " ";
      out += k.semiring().format_value(k.entry(x, y));
    }
    out += "\n";
  }
  return out;
}

FinSemimodule load_module_file(const std::string& path,
                               const std::optional<Semiring>& override_sr) {
  Lines src(path);
  auto [hline, header] = src.next();
  auto h = split_tokens(header);
  if (h.size() != 4 || h[0] != "module" || h[2] != "dim")
    src.fail(hline, "expected 'module <semiring> dim <n>'");
  Semiring sr = header_semiring(src, hline, h[1], override_sr);
  // A well-formed file over an infinite semiring is a semantic refusal, not
  // a parse failure: plain Error so callers can map it to exit code 1.
  if (!sr.finite())
    throw Error(path + ": extensional engine requires finite semiring (got " + sr.name() + ")");
  std::size_t dim = parse_size(src, hline, h[3]);
  if (dim == 0) src.fail(hline, "dimension must be positive");

  std::vector<Tuple> elems;
  while (!src.done()) {
    auto [line, text] = src.next();
    auto toks = split_tokens(text);
    if (toks.size() != dim)
      src.fail(line, "element needs " + std::to_string(dim) + " values, has " +
                         std::to_string(toks.size()));
    elems.push_back(parse_tuple(src, line, sr, toks));
  }
  if (elems.empty()) src.fail_eof("module needs at least one element");
  try {
    return FinSemimodule(sr, dim, std::move(elems));
  } catch (const Error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string format_module_text(const FinSemimodule& m) {
  std::string out =
      "module " + m.semiring().name() + " dim " + std::to_string(m.dim()) + "\n";
  for (std::size_t i = 0; i < m.size(); ++i)
    out += join_tuple(m.semiring(), m.element(i)) + "\n";
  return out;
}

std::vector<std::size_t> load_points_file(const std::string& path,
                                          const ProductSpace& space) {
  Lines src(path);
  auto [hline, header] = src.next();
  auto h = split_tokens(header);
  if (h.size() != 1 || h[0] != "points") src.fail(hline, "expected 'points'");

  const Semiring& sr = space.semiring();
  std::vector<std::size_t> pts;
  while (!src.done()) {
    auto [line, text] = src.next();
    auto toks = split_tokens(text);
    std::vector<std::size_t> comps;
    std::size_t at = 0;
    for (std::size_t a = 0; a < space.arity(); ++a) {
      std::size_t dim = space.factor(a).dim();
      if (at + dim > toks.size())
        src.fail(line, "point needs tuples for " + std::to_string(space.arity()) +
                           " factors");
      Tuple t = parse_tuple(src, line, sr,
                            std::span<const std::string>(toks).subspan(at, dim));
      at += dim;
      auto e = space.factor(a).find(t);
      if (!e)
        src.fail(line, "tuple " + join_tuple(sr, t) + " is not an element of factor " +
                           std::to_string(a));
      comps.push_back(*e);
      if (a + 1 < space.arity()) {
        if (at >= toks.size() || toks[at] != ";")
          src.fail(line, "expected ';' between factor tuples");
        ++at;
      }
    }
    if (at != toks.size()) src.fail(line, "unexpected trailing tokens");
    pts.push_back(space.encode(comps));
  }
  return pts;
}

std::string format_points_text(const ProductSpace& space,
                               std::span<const std::size_t> pts) {
  std::string out = "points\n";
  const Semiring& sr = space.semiring();
  for (auto p : pts) {
    auto tuples = space.point_tuples(p);
    for (std::size_t a = 0; a < tuples.size(); ++a) {
      if (a) out += " ; ";
      out += join_tuple(sr, tuples[a]);
    }
    out += "\n";
  }
  return out;
}

PolyMapTable load_polymap_file(const std::string& path,
                               const std::optional<Semiring>& override_sr) {
  Lines src(path);
  auto [hline, header] = src.next();
  auto h = split_tokens(header);
  if (h.size() != 2 || h[0] != "polymap")
    src.fail(hline, "expected 'polymap <semiring>'");
  Semiring sr = header_semiring(src, hline, h[1], override_sr);
  if (!sr.finite())
    throw Error(path + ": extensional engine requires finite semiring (got " + sr.name() + ")");

  auto read_block = [&](const std::string& kw) -> FinSemimodule {
    auto [bline, btext] = src.next();
    auto b = split_tokens(btext);
    if (b.size() != 3 || b[0] != kw || b[1] != "dim")
      src.fail(bline, "expected '" + kw + " dim <n>'");
    std::size_t dim = parse_size(src, bline, b[2]);
    if (dim == 0) src.fail(bline, "dimension must be positive");
    std::vector<Tuple> elems;
    while (!src.done()) {
      auto toks = split_tokens(src.peek().second);
      if (is_keyword(toks[0])) break;
      auto [line, text] = src.next();
      if (toks.size() != dim)
        src.fail(line, "element needs " + std::to_string(dim) + " values");
      elems.push_back(parse_tuple(src, line, sr, toks));
    }
    if (elems.empty()) src.fail(bline, kw + " block has no elements");
    try {
      return FinSemimodule(sr, dim, std::move(elems));
    } catch (const Error& e) {
      src.fail(bline, e.what());
    }
  };

  std::vector<FinSemimodule> factors;
  while (!src.done() && split_tokens(src.peek().second)[0] == "factor")
    factors.push_back(read_block("factor"));
  if (factors.empty()) {
    if (src.done()) src.fail_eof("expected at least one 'factor' block");
    src.fail(src.peek().first, "expected at least one 'factor' block");
  }
  FinSemimodule cod = read_block("codomain");

  auto [tline, ttext] = src.next();
  auto tt = split_tokens(ttext);
  if (tt.size() != 1 || tt[0] != "table") src.fail(tline, "expected 'table'");

  SpacePtr space;
  try {
    space = make_space(factors);
  } catch (const Error& e) {
    src.fail(tline, e.what());
  }

  std::vector<std::size_t> table(space->total(), cod.size());
  while (!src.done()) {
    auto [line, text] = src.next();
    auto toks = split_tokens(text);
    auto arrow = std::find(toks.begin(), toks.end(), "->");
    if (arrow == toks.end()) src.fail(line, "missing '->'");
    std::vector<std::string> lhs(toks.begin(), arrow);
    std::vector<std::string> rhs(arrow + 1, toks.end());

    std::vector<std::size_t> comps;
    std::size_t at = 0;
    for (std::size_t a = 0; a < factors.size(); ++a) {
      std::size_t dim = factors[a].dim();
      if (at + dim > lhs.size()) src.fail(line, "argument tuple missing");
      Tuple t = parse_tuple(src, line, sr,
                            std::span<const std::string>(lhs).subspan(at, dim));
      at += dim;
      auto e = factors[a].find(t);
      if (!e)
        src.fail(line, "tuple " + join_tuple(sr, t) + " is not an element of factor " +
                           std::to_string(a));
      comps.push_back(*e);
      if (a + 1 < factors.size()) {
        if (at >= lhs.size() || lhs[at] != ";")
          src.fail(line, "expected ';' between argument tuples");
        ++at;
      }
    }
    if (at != lhs.size()) src.fail(line, "unexpected tokens before '->'");

    if (rhs.size() != cod.dim())
      src.fail(line, "result needs " + std::to_string(cod.dim()) + " values");
    Tuple w = parse_tuple(src, line, sr, rhs);
    auto widx = cod.find(w);
    if (!widx)
      src.fail(line, "tuple " + join_tuple(sr, w) + " is not an element of the codomain");

    std::size_t p = space->encode(comps);
    if (table[p] != cod.size()) src.fail(line, "duplicate table entry");
    table[p] = *widx;
  }
  for (std::size_t p = 0; p < space->total(); ++p)
    if (table[p] == cod.size())
      src.fail_eof("table is missing an entry for point " + std::to_string(p));
  return PolyMapTable(space, std::move(cod), std::move(table));
}

std::string format_polymap_text(const PolyMapTable& f) {
  const auto& space = *f.space();
  const Semiring& sr = space.semiring();
  std::string out = "polymap " + sr.name() + "\n";
  for (std::size_t a = 0; a < space.arity(); ++a) {
    const auto& fac = space.factor(a);
    out += "factor dim " + std::to_string(fac.dim()) + "\n";
    for (std::size_t e = 0; e < fac.size(); ++e)
      out += join_tuple(sr, fac.element(e)) + "\n";
  }
  const auto& cod = f.codomain();
  out += "codomain dim " + std::to_string(cod.dim()) + "\n";
  for (std::size_t e = 0; e < cod.size(); ++e)
    out += join_tuple(sr, cod.element(e)) + "\n";
  out += "table\n";
  for (std::size_t p = 0; p < space.total(); ++p) {
    auto tuples = space.point_tuples(p);
    for (std::size_t a = 0; a < tuples.size(); ++a) {
      if (a) out += " ; ";
      out += join_tuple(sr, tuples[a]);
    }
    out += " -> " + join_tuple(sr, cod.element(f.value(p))) + "\n";
  }
  return out;
}

}  // namespace idem
