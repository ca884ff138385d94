#pragma once

// Spaces the tests construct over and over.

#include <string>
#include <vector>

#include "netcert/product.hpp"
#include "netcert/space.hpp"

namespace build {

inline netcert::Space binary() {
    return netcert::Space::finite_discrete("binary", {"0", "1"}, {{0, 1}, {1, 0}},
                                           {"0", "1"});
}

// a-b-c with d(a,b)=1, d(a,c)=d(b,c)=2
inline netcert::Space tri() {
    return netcert::Space::finite_discrete("tri", {"a", "b", "c"},
                                           {{0, 1, 2}, {1, 0, 2}, {2, 2, 0}},
                                           {"a", "b", "c"});
}

inline netcert::Space unit_interval() {
    return netcert::Space::interval("unit", 0, 1, {netcert::Rational(0), netcert::Rational(1)});
}

// countably many binary coordinates, weights 2^-i
inline netcert::Space binary_product() {
    return netcert::countable_product(
        "P", netcert::ComponentGenerator{{binary()}},
        netcert::WeightSequence{netcert::Rational(1, 2), netcert::Rational(1)});
}

inline netcert::Point bits_point(const std::vector<int>& bits, std::size_t tail) {
    netcert::ProductPoint pp;
    for (int b : bits) pp.prefix.emplace_back(std::string(b ? "1" : "0"));
    pp.tail_anchor = tail;
    return pp;
}

}  // namespace build
