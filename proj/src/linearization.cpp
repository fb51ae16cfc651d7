#include "mould/linearization.hpp"

namespace mould {

std::vector<MultiIndex> homogeneous_alphabet(std::size_t dim, int max_deg) {
    if (dim == 0) throw PreconditionError("dimension must be positive");
    std::vector<MultiIndex> out;
    // every m with entries >= -1, at most one of them -1, 1 <= |m| <= max_deg - 1
    std::vector<int> m(dim, -1);
    auto rec = [&](auto&& self, std::size_t j, int sum, int negatives) -> void {
        if (j == dim) {
            if (sum >= 1 && sum <= max_deg - 1) out.emplace_back(m);
            return;
        }
        // the other entries sum to at least -1, so no entry exceeds max_deg
        for (int v = -1; v <= max_deg; ++v) {
            if (v == -1 && negatives > 0) continue;
            m[j] = v;
            self(self, j + 1, sum + v, negatives + (v == -1));
        }
    };
    rec(rec, 0, 0, 0);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace mould
