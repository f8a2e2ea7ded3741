#include <array>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "idem/checks.hpp"
#include "idem/error.hpp"
#include "idem/exttensor.hpp"
#include "idem/freemod.hpp"
#include "idem/freetensor.hpp"
#include "idem/io.hpp"
#include "idem/kernelop.hpp"
#include "idem/semiring.hpp"

namespace {

using namespace idem;

// First significant token decides which validator a file feeds.
std::string peek_kind(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open");
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::string tok;
    if (ss >> tok) return tok;
  }
  throw ParseError(path + ": empty file");
}

bool lines_format(const std::string& fmt) { return fmt == "lines"; }

int print_report(const ValidationReport& rep, const std::string& fmt) {
  for (const auto& l : rep.laws) {
    const char* st = l.status == LawStatus::pass   ? "pass"
                     : l.status == LawStatus::fail ? "fail"
                                                   : "assumed";
    if (lines_format(fmt)) {
      std::cout << "law " << l.law << ' ' << st;
      if (!l.witness.empty()) std::cout << ' ' << l.witness;
    } else {
      std::cout << l.law << ": " << st;
      if (!l.witness.empty()) std::cout << " (" << l.witness << ")";
    }
    std::cout << '\n';
  }
  const bool ok = rep.ok();
  std::cout << (lines_format(fmt) ? "result " : "result: ") << (ok ? "pass" : "fail") << '\n';
  return ok ? 0 : 1;
}

int do_validate(const std::string& path, const std::optional<Semiring>& ovr,
                const std::string& fmt) {
  const std::string kind = peek_kind(path);
  if (kind == "semiring") return print_report(load_semiring_file(path).validate(), fmt);
  if (kind == "module") return print_report(load_module_file(path, ovr).validate(), fmt);
  if (kind == "polymap") return print_report(load_polymap_file(path, ovr).validate(), fmt);
  throw ParseError(path + ": no validator for a '" + kind +
                   "' file (expected semiring, module, or polymap)");
}

int do_apply(const std::string& kpath, const std::string& vpath,
             const std::optional<Semiring>& ovr) {
  const Kernel m = load_kernel_file(kpath, ovr);
  std::cout << format_vector_line(apply(m, load_vector_file(vpath, ovr)));
  return 0;
}

int do_compose(const std::string& p1, const std::string& p2,
               const std::optional<Semiring>& ovr) {
  std::cout << format_kernel_text(compose(load_kernel_file(p1, ovr), load_kernel_file(p2, ovr)));
  return 0;
}

int do_kron(const std::string& p1, const std::string& p2, const std::optional<Semiring>& ovr) {
  std::cout << format_kernel_text(kron(load_kernel_file(p1, ovr), load_kernel_file(p2, ovr)));
  return 0;
}

int do_outer(const std::string& p1, const std::string& p2, const std::optional<Semiring>& ovr) {
  const FreeVector a = load_vector_file(p1, ovr), b = load_vector_file(p2, ovr);
  const std::array<FreeVector, 2> fs{a, b};
  const TensorKernel t = outer(fs);
  std::cout << format_kernel_text(
      Kernel(t.semiring(), a.index(), b.index(),
             std::vector<Value>(t.coeffs().begin(), t.coeffs().end())));
  return 0;
}

int do_nuclear(const std::string& kpath, const std::optional<Semiring>& ovr) {
  const Kernel m = load_kernel_file(kpath, ovr);
  const Semiring& sr = m.semiring();
  std::vector<Kernel> parts;
  for (const auto& t : nuclear_decompose(m)) {
    std::cout << "term";
    for (std::size_t i = 0; i < t.functional.size(); ++i)
      std::cout << ' ' << sr.format_value(t.functional[i]);
    std::cout << " ;";
    for (std::size_t i = 0; i < t.vector.size(); ++i)
      std::cout << ' ' << sr.format_value(t.vector[i]);
    std::cout << '\n';
    parts.push_back(rank_one(t.functional, t.vector));
  }
  const bool ok = kernel_sup(sr, m.rows(), m.cols(), parts) == m;
  std::cout << "recompose: " << (ok ? "ok" : "fail") << '\n';
  return ok ? 0 : 1;
}

int do_closure(const std::vector<std::string>& paths, const std::optional<Semiring>& ovr) {
  if (paths.size() < 2)
    throw ParseError("closure needs at least one module file and a points file");
  std::vector<FinSemimodule> factors;
  for (std::size_t i = 0; i + 1 < paths.size(); ++i)
    factors.push_back(load_module_file(paths[i], ovr));
  const SpacePtr space = make_space(std::move(factors));
  const auto pts = load_points_file(paths.back(), *space);
  const ExtTensor hull = tau_hull(space, pts);
  std::cout << "count " << hull.points().size() << '\n';
  // body lines of the points file format, without its header
  const std::string text = format_points_text(*space, hull.points());
  std::cout << text.substr(text.find('\n') + 1);
  return 0;
}

int do_check(const std::string& suite, std::uint64_t seed, std::size_t size,
             const std::string& fmt) {
  const auto results = run_suite(suite, SuiteOptions{seed, size});
  bool all = true;
  for (const auto& pr : results) {
    all = all && pr.pass;
    if (lines_format(fmt)) {
      std::cout << pr.suite << '.' << pr.name << ' ' << (pr.pass ? "pass" : "fail");
      if (!pr.pass && !pr.detail.empty()) std::cout << ' ' << pr.detail;
    } else {
      std::cout << pr.suite << '.' << pr.name << ": " << (pr.pass ? "pass" : "fail");
      if (!pr.pass && !pr.detail.empty()) std::cout << " (" << pr.detail << ")";
    }
    std::cout << '\n';
  }
  std::cout << (lines_format(fmt) ? "result " : "result: ") << (all ? "pass" : "fail") << '\n';
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"idempotent (max-plus family) linear algebra toolkit"};
  app.require_subcommand(1);

  std::string semiring_flag, format = "text";
  std::uint64_t seed = 42;
  std::size_t size = 0;

  std::string vfile;
  auto* validate_cmd =
      app.add_subcommand("validate", "check the laws of a semiring, module, or polymap file");
  validate_cmd->add_option("file", vfile, "file to validate")->required();

  std::string ak, av;
  auto* apply_cmd = app.add_subcommand("apply", "apply a kernel to a vector");
  apply_cmd->add_option("kernel", ak, "kernel file")->required();
  apply_cmd->add_option("vector", av, "vector file over the kernel's rows")->required();

  std::string c1, c2;
  auto* compose_cmd =
      app.add_subcommand("compose", "compose two kernels, first applied first");
  compose_cmd->add_option("first", c1, "kernel applied first")->required();
  compose_cmd->add_option("second", c2, "kernel applied second")->required();

  std::string k1, k2;
  auto* kron_cmd = app.add_subcommand("kron", "tensor product kernel on the product indices");
  kron_cmd->add_option("first", k1, "left kernel file")->required();
  kron_cmd->add_option("second", k2, "right kernel file")->required();

  std::string o1, o2;
  auto* outer_cmd = app.add_subcommand("outer", "outer product of two vectors");
  outer_cmd->add_option("first", o1, "left vector file")->required();
  outer_cmd->add_option("second", o2, "right vector file")->required();

  std::string nk;
  auto* nuclear_cmd =
      app.add_subcommand("nuclear", "split a kernel into recomposing rank-one terms");
  nuclear_cmd->add_option("kernel", nk, "kernel file")->required();

  std::vector<std::string> cpaths;
  auto* closure_cmd = app.add_subcommand(
      "closure", "canonical hull of a point set in a product of finite modules");
  closure_cmd->add_option("paths", cpaths, "module files, then one points file")
      ->expected(-2);

  std::string suite = "all";
  auto* check_cmd = app.add_subcommand("check", "run a property suite");
  std::string suites_help = "suite name:";
  for (const auto& s : suite_names()) suites_help += " " + s;
  check_cmd->add_option("suite", suite, suites_help);
  check_cmd->add_option("--seed", seed, "seed for randomized properties (default 42)");
  check_cmd->add_option("--size", size,
                        "scan scale; 0 keeps each suite's defaults, 1 trims to the "
                        "smallest instances");

  for (auto* sub : {validate_cmd, apply_cmd, compose_cmd, kron_cmd, outer_cmd, nuclear_cmd,
                    closure_cmd})
    sub->add_option("--semiring", semiring_flag,
                    "override the declared semiring: builtin name or table file");
  for (auto* sub : {validate_cmd, check_cmd})
    sub->add_option("--format", format, "output format: text or lines")
        ->check(CLI::IsMember({"text", "lines"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    std::optional<Semiring> ovr;
    if (!semiring_flag.empty()) ovr = resolve_semiring(semiring_flag);
    if (validate_cmd->parsed()) return do_validate(vfile, ovr, format);
    if (apply_cmd->parsed()) return do_apply(ak, av, ovr);
    if (compose_cmd->parsed()) return do_compose(c1, c2, ovr);
    if (kron_cmd->parsed()) return do_kron(k1, k2, ovr);
    if (outer_cmd->parsed()) return do_outer(o1, o2, ovr);
    if (nuclear_cmd->parsed()) return do_nuclear(nk, ovr);
    if (closure_cmd->parsed()) return do_closure(cpaths, ovr);
    if (check_cmd->parsed()) return do_check(suite, seed, size, format);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
