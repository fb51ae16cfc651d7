#include "mould/series.hpp"

namespace mould {

std::string var_name(Var v) {
    switch (v) {
        case Var::x: return "x";
        case Var::z_inv: return "z^-1";
        case Var::zeta: return "zeta";
        case Var::y: return "y";
        case Var::u: return "u";
    }
    return "?";
}

}  // namespace mould
