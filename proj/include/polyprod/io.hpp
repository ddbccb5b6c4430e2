#pragma once

#include <polyprod/face_poset.hpp>

#include <string>

namespace polyprod {

// {"faces":[{"id":0,"rank":-1},...],"covers":[[upper,lower],...]}
auto to_json(const FacePoset& p) -> std::string;
auto poset_from_json(const std::string& text) -> FacePoset;

// One node per face labelled id:rank, one edge per cover, one level per rank.
auto to_dot(const FacePoset& p) -> std::string;

} // namespace polyprod
