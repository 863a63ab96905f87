#pragma once

#include <map>
#include <string>

#include "mchom/scalar.hpp"

// Built-in fixtures, also shipped as files under fixtures/.  The embedded
// copies make the CLI selftest and the acceptance suite self-contained.
namespace mchom::fixtures {

inline constexpr const char* heisenberg = R"(# One degree 0 generator acting on a two-dimensional odd slice.
basis e 0
basis x -1
basis y -1
op 2 [ e x ] -> 1*y
)";

inline constexpr const char* free_odd_y = R"(# Free dg Lie algebra on a single y of degree -1 with dy = [y,y];
# it closes on y and z = [y,y].  Constants in symmetric storage.
basis y -1
basis z -2
op 1 [ y ] -> 1*z
op 2 [ y y ] -> 1*z
)";

inline constexpr const char* heisenberg3 = R"(# Three-dimensional Heisenberg Lie algebra in degree 0.
basis p 0
basis q 0
basis r 0
flag dgla
op 2 [ p q ] -> 1*r
)";

inline constexpr const char* filiform4 = R"(# Four-dimensional filiform nilpotent Lie algebra in degree 0.
basis e1 0
basis e2 0
basis e3 0
basis e4 0
flag dgla
op 2 [ e1 e2 ] -> 1*e3
op 2 [ e1 e3 ] -> 1*e4
)";

inline constexpr const char* nonabelian = R"(# Heisenberg degree 0 part acting nilpotently on a three-dimensional
# odd slice via the standard shift representation.
basis p 0
basis q 0
basis c 0
basis w1 -1
basis w2 -1
basis w3 -1
flag dgla
op 2 [ p q ] -> 1*c
op 2 [ p w2 ] -> 1*w1
op 2 [ q w3 ] -> 1*w2
op 2 [ c w3 ] -> 1*w1
)";

inline constexpr const char* g1_part = R"(# Nonzero degree +1 slice; the inert pair (f, u) is removed by the
# brutal truncation while the action part survives unchanged.
basis f 1
basis u 0
basis e 0
basis x -1
basis y -1
op 1 [ f ] -> 1*u
op 2 [ e x ] -> 1*y
)";

inline constexpr const char* cubic_y = R"(# Genuinely ternary structure on one odd generator: the bracket
# expressions die after three elements even though Gamma^2 = Gamma^3.
basis y -1
basis z -2
op 1 [ y ] -> 1*z
op 2 [ y y ] -> 1*z
op 3 [ y y y ] -> 1*z
)";

inline constexpr const char* jacobi_violation = R"(# l_1 fails to square to zero along u -> v -> w.
basis u 0
basis v -1
basis w -2
op 1 [ u ] -> 1*v
op 1 [ v ] -> 1*w
)";

inline constexpr const char* cubic_violation = R"(# The arity-3 coherence fails: l_2(l_2(y,y), y) has no compensating term.
basis y -1
basis z -2
basis w -3
op 1 [ y ] -> 1*z
op 2 [ y y ] -> 1*z
op 2 [ y z ] -> 1*w
op 3 [ y y y ] -> 1*z
)";

inline constexpr const char* unbounded = R"(# Non-nilpotent action: the lower central series never dies in degree -1.
basis e 0
basis x -1
op 2 [ e x ] -> 1*x
)";

inline const std::map<std::string, const char*>& registry() {
    static const std::map<std::string, const char*> reg = {
        {"heisenberg", heisenberg},
        {"free_odd_y", free_odd_y},
        {"heisenberg3", heisenberg3},
        {"filiform4", filiform4},
        {"nonabelian", nonabelian},
        {"g1_part", g1_part},
        {"cubic_y", cubic_y},
        {"jacobi_violation", jacobi_violation},
        {"cubic_violation", cubic_violation},
        {"unbounded", unbounded},
    };
    return reg;
}

inline const char* by_name(const std::string& name) {
    auto it = registry().find(name);
    if (it == registry().end()) throw Error("unknown built-in fixture '" + name + "'");
    return it->second;
}

}  // namespace mchom::fixtures
