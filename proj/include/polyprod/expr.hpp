#pragma once

#include <polyprod/catalog.hpp>
#include <polyprod/products.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace polyprod {

enum class UnaryOp { Pyr, Prism, Bipyr, Dual };

auto unary_name(UnaryOp op) -> std::string_view;

// expr := term (op term)*, left-associative, op in {join, cart, dsum, topo}
// term := atom | unary '(' expr ')' | term '^' int | '(' expr ')'
struct Expr {
    enum class Kind { Atom, Unary, Binary, Power };

    Kind kind = Kind::Atom;
    CatalogSpec atom{CatalogKind::Point};
    UnaryOp unary = UnaryOp::Pyr;
    ProductKind product = ProductKind::Join; // Binary
    int exponent = 1;                        // Power
    std::vector<Expr> args;
    int position = 0; // offset of the first character in the source

    friend auto operator==(const Expr& a, const Expr& b) -> bool;
};

// Throws SyntaxError (message carries the offset) and RangeError for
// parameters outside the supported ranges.
auto parse_expr(std::string_view text) -> Expr;

// Fully parenthesised where needed; parse_expr(to_string(e)) == e up to
// positions.
auto to_string(const Expr& e) -> std::string;

// A power t^k is the k-fold product of t under the kind of the nearest
// enclosing binary operator, or default_kind when there is none.
auto evaluate(const Expr& e, ProductKind default_kind = ProductKind::Cartesian) -> Polytope;

} // namespace polyprod
