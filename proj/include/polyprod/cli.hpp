#pragma once

#include <polyprod/polytope.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace polyprod {

// Catalog name when p is isomorphic to a catalog polytope, else "poly" and a
// hash of its canonical form.
auto polytope_name(const Polytope& p) -> std::string;

// polyprod [--json] {info|factor|aut|orbits|mono|export} ... EXPR
// Returns 0 on success, 2 when the input is not a valid polytope or an
// analysis fails, 1 on usage errors. Reports go to out, errors to err.
auto run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) -> int;

} // namespace polyprod
