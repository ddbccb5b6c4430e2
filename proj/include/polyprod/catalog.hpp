#pragma once

#include <polyprod/polytope.hpp>

#include <string>

namespace polyprod {

enum class CatalogKind { Point, Edge, Gon, Simplex, Cube, Cross, Torus };

struct CatalogSpec {
    CatalogKind kind;
    int a = 0; // p for Gon/Torus, n for Simplex/Cube/Cross
    int b = 0; // d for Torus
};

auto make(const CatalogSpec& spec) -> Polytope;

// Canonical expression for the spec, e.g. "gon(5)" or "torus(4,2)".
auto catalog_name(const CatalogSpec& spec) -> std::string;

auto point() -> Polytope;
auto edge() -> Polytope;
auto gon(int p) -> Polytope;
auto simplex(int n) -> Polytope;
auto cube(int n) -> Polytope;
auto cross(int n) -> Polytope;
auto torus(int p, int d) -> Polytope;

} // namespace polyprod
