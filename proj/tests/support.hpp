#pragma once

#include <filesystem>
#include <string>

#include "qra/qra.hpp"

namespace qra::test {

inline std::string data_path(const std::string& file) { return std::string(QRA_DATA_DIR) + "/" + file; }

/// name.qra, or the algebra section of name.rep when only a representation ships.
inline FiniteDqRA load_algebra(const std::string& name) {
    const auto qra = data_path(name + ".qra");
    return parse_algebra(read_file(std::filesystem::exists(qra) ? qra : data_path(name + ".rep")));
}

inline Document load_document(const std::string& file) { return parse_document(read_file(data_path(file))); }

/// Embedding stored in a .rep file (algebra, structure and assignment).
inline Embedding load_representation(const std::string& name) {
    const auto d = load_document(name + ".rep");
    return resolve_assignment(d.assignments.at(0), d.algebras.at(0), d.structures.at(0));
}

inline ElementId el(const FiniteDqRA& A, const std::string& label) {
    auto e = A.find(label);
    if (!e) throw Error("no element " + label + " in " + A.name());
    return *e;
}

inline const char* const catalogue_names[] = {"trivial1", "chain2", "D3_1_1", "D4_1_1", "D4_1_2", "D5_1_4", "D5_1_5",
                                              "D4_3_1",   "D6_3_2", "D6_3_4", "D6_4_3", "D6_4_4", "D6_3_5_2"};

/// The 4-point antichain: w x y z, E = X², α = (wx)(yz), β = (wy)(xz).
inline RelStructure antichain4(Permutation beta = {2, 3, 0, 1}) {
    return RelStructure("antichain4", BinRel::identity(4), BinRel::full(4), {1, 0, 3, 2}, std::move(beta),
                        {"w", "x", "y", "z"});
}

inline BinRel rel_a() {
    return BinRel::identity(4) | BinRel::from_pairs(4, std::vector<std::pair<Point, Point>>{{0, 2}, {2, 0}, {1, 3}, {3, 1}});
}

inline BinRel rel_b() {
    return BinRel::identity(4) | BinRel::from_pairs(4, std::vector<std::pair<Point, Point>>{{0, 3}, {3, 0}, {1, 2}, {2, 1}});
}

inline RelStructure point1() { return RelStructure("point1", BinRel::identity(1), BinRel::full(1), {0}, {0}, {"u"}); }

}  // namespace qra::test
