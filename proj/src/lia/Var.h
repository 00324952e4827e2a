#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>

#include "Int.h"

namespace seglex {

// Pre and Post are separate namespaces: x3 and x3' never collide.
enum class VarSpace : uint8_t { Pre = 0, Post = 1 };

struct VarId {
    VarSpace space{VarSpace::Pre};
    uint32_t index{0};

    friend bool operator==(const VarId& a, const VarId& b) {
        return a.space == b.space && a.index == b.index;
    }
    friend bool operator<(const VarId& a, const VarId& b) {
        if (a.space != b.space) return a.space < b.space;
        return a.index < b.index;
    }
};

inline VarId preVar(uint32_t i) { return {VarSpace::Pre, i}; }
inline VarId postVar(uint32_t i) { return {VarSpace::Post, i}; }
inline VarId primed(VarId v) { return {VarSpace::Post, v.index}; }

inline std::string defaultVarName(VarId v) {
    std::string s = "x" + std::to_string(v.index);
    if (v.space == VarSpace::Post) s += "'";
    return s;
}

using Valuation = std::map<VarId, Int>;
using VarNamer = std::function<std::string(VarId)>;

} // namespace seglex
