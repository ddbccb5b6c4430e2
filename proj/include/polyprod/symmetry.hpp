#pragma once

#include <polyprod/permgroup.hpp>
#include <polyprod/products.hpp>

#include <cstdint>
#include <vector>

namespace polyprod {

// All flags in lexicographic order of face ids; flag i is point i of every
// flag permutation in this library.
auto enumerate_flags(const Polytope& p) -> std::vector<Flag>;

// The flag differing from f only at rank i. Throws RankOutOfRange, InvalidInput
// when f is not a flag of p.
auto adjacent_flag(const Polytope& p, const Flag& f, int i) -> Flag;

// Automorphisms as permutations of flag indices. The action is free, so each
// automorphism is determined by the image of flag 0.
auto automorphism_group(const Polytope& p) -> PermGroup;

// Face map induced by an automorphism given on flags.
auto face_map(const Polytope& p, const Permutation& automorphism) -> std::vector<FaceId>;

// Flag permutation induced by a face automorphism. Throws InvalidInput when
// the map does not send flags to flags.
auto flag_map(const Polytope& p, const std::vector<FaceId>& faces) -> Permutation;

// Which factor advances at each rank step of a product flag.
struct AdjacencySequence {
    std::vector<int> entries;      // factor index per step
    std::vector<int> multiplicity; // steps owned by each factor
};

// Number of sequences with the given multiplicities (a multinomial).
auto sequence_count(const std::vector<int>& multiplicity) -> std::uint64_t;

struct DecomposedFlag {
    std::vector<Flag> factor_flags;
    AdjacencySequence sequence;
};

// Offset between step positions and product ranks: the face after step k has
// rank k + 1 + step_offset(kind).
auto step_offset(ProductKind kind) -> int;

// Throws FlagNotOfProduct when consecutive faces do not differ in exactly one
// coordinate or a factor flag is incomplete.
auto flag_decompose(const ProductStructure& s, const Flag& f) -> DecomposedFlag;
auto flag_compose(const ProductStructure& s, const DecomposedFlag& d) -> Flag;

struct OrbitReport {
    struct Term {
        Polytope factor;
        int multiplicity = 0; // m_i
        int orbits = 0;       // k_i
        int steps = 0;        // rank, or rank plus one for joins
        std::uint64_t group_order = 0;
    };

    ProductKind kind;
    int flag_count = 0;
    int actual = 0;
    std::vector<int> orbit_sizes;
    std::uint64_t predicted = 0;
    std::uint64_t group_order = 0;
    std::uint64_t predicted_group_order = 0;
    std::vector<Term> terms;
};

auto orbit_report(const Polytope& p, ProductKind kind) -> OrbitReport;

// Orbits of the automorphism group on flags.
auto flag_orbit_count(const Polytope& p) -> int;

} // namespace polyprod
