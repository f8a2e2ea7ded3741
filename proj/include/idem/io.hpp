#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "idem/exttensor.hpp"
#include "idem/freemod.hpp"
#include "idem/kernelop.hpp"
#include "idem/semiring.hpp"

// Text formats for semirings, vectors, kernels, finite semimodules, point
// sets, and multi-argument map tables. Blank lines and '#' comments are
// ignored on input; every formatter emits canonical newline-terminated
// text that parses back to an equal object. Malformed input raises
// ParseError with file and line context.
//
// Loaders that read a semiring name accept an override semiring: the
// declared name token is then ignored and all values are interpreted in
// the override. Without an override only builtin names (boolean, chain:N,
// rmax, rmax_top, rmin) resolve; custom table semirings reach files via
// the override.

namespace idem {

Semiring load_semiring_file(const std::string& path);
// Builtin name, or else a path to a semiring table file.
Semiring resolve_semiring(const std::string& spec);

FreeVector parse_vector_line(const std::string& line,
                             const std::optional<Semiring>& override_sr = {});
std::string format_vector_line(const FreeVector& v);
// File with exactly one vector line.
FreeVector load_vector_file(const std::string& path,
                            const std::optional<Semiring>& override_sr = {});

Kernel load_kernel_file(const std::string& path,
                        const std::optional<Semiring>& override_sr = {});
std::string format_kernel_text(const Kernel& k);

FinSemimodule load_module_file(const std::string& path,
                               const std::optional<Semiring>& override_sr = {});
std::string format_module_text(const FinSemimodule& m);

// Point ids of the given space, one point per line as factor tuples
// separated by ';'.
std::vector<std::size_t> load_points_file(const std::string& path,
                                          const ProductSpace& space);
std::string format_points_text(const ProductSpace& space,
                               std::span<const std::size_t> pts);

PolyMapTable load_polymap_file(const std::string& path,
                               const std::optional<Semiring>& override_sr = {});
std::string format_polymap_text(const PolyMapTable& f);

}  // namespace idem
