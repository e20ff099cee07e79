#pragma once

// Hand-derived presentations of the glued groups, entered directly as relator
// lists. For the two cases whose double curve has two vertices the relators are
// closed edge paths, so the spanning-tree edge A is killed explicitly.

#include "stablepi1/fpgroup.hpp"

#include <string>
#include <vector>

namespace reference {

struct HandGroup {
    std::string id;
    stablepi1::Presentation group;
    std::size_t order;
};

inline std::vector<HandGroup> hand_presentations() {
    using stablepi1::parse_presentation;
    return {
        {"P1", parse_presentation({"A", "B", "G"}, {"B^-1 A", "G A^-1", "G^2 B^2"}), 4},
        {"P2", parse_presentation({"A", "B", "F", "G"}, {"B A", "A F G", "F A B", "A G^-1 B"}), 1},
        {"P3", parse_presentation({"A", "B", "F", "G"}, {"B A", "A F G", "F B", "A G^-1 A B"}), 3},
        {"X1.1", parse_presentation({"B", "F", "G"}, {"F", "B^-1 G^2", "G^-1 F B"}), 1},
        {"X1.2", parse_presentation({"B", "F", "G"}, {"F", "B^-1 F^-1 G", "G^-2 B"}), 1},
        {"X1.3", parse_presentation({"B", "F", "G"}, {"B G G", "G^-1 F B F^-1", "B F^-1"}), 3},
        {"X1.4", parse_presentation({"A", "B", "F", "G"}, {"A", "G^-1 F A", "F B^-1 G^2", "F A B A"}), 4},
        {"X1.5", parse_presentation({"A", "B", "F", "G"}, {"A", "A B G B", "B^-1 F G F", "A B A F"}), 5},
    };
}

}  // namespace reference
