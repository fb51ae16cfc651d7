#include "mould/words.hpp"

namespace mould {

std::string letter_str(int a) { return std::to_string(a); }

std::string letter_str(const MultiIndex& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.v.size(); ++i) s += (i ? "," : "") + std::to_string(m.v[i]);
    return s + "]";
}

}  // namespace mould
