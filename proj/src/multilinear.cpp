#include "cliffglue/exterior.hpp"
#include "cliffglue/tensor.hpp"

#include <algorithm>
#include <numeric>

namespace cliffglue {
namespace {

// Sign of the permutation sending position i to perm[i].
int permutation_sign(const std::vector<unsigned>& perm) {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

TensorElement symmetrize(const TensorElement& t, bool signed_sum) {
    unsigned d = t.homogeneous_degree();
    TensorElement out(t.n(), std::max(t.degree_cap(), d));
    if (t.is_zero()) return out;
    Rat factorial = 1;
    for (unsigned i = 2; i <= d; ++i) factorial *= i;
    std::vector<unsigned> perm(d);
    std::iota(perm.begin(), perm.end(), 0u);
    do {
        Rat sign = (!signed_sum || permutation_sign(perm) > 0) ? Rat(1) : Rat(-1);
        for (const auto& [w, c] : t.terms()) {
            TensorElement::Word pw(d);
            for (unsigned i = 0; i < d; ++i) pw[i] = w[perm[i]];
            out.add_term(pw, c * sign / factorial);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

}  // namespace

TensorElement sym(const TensorElement& t) { return symmetrize(t, false); }
TensorElement alt(const TensorElement& t) { return symmetrize(t, true); }

std::string blade_to_string(Blade b) {
    if (b == 0) return "1";
    std::string s = "e";
    for (unsigned i = 0; i < 32; ++i)
        if (b & (Blade(1) << i)) s += std::to_string(i + 1);
    return s;
}

int shuffle_sign(Blade left, Blade right) {
    int inversions = 0;
    for (unsigned j = 0; j < 32; ++j) {
        if (!(right & (Blade(1) << j))) continue;
        Blade above = left & static_cast<Blade>(~((std::uint64_t(1) << (j + 1)) - 1));
        inversions += static_cast<int>(blade_size(above));
    }
    return inversions % 2 == 0 ? 1 : -1;
}

ExteriorElement wedge(const ExteriorElement& a, const ExteriorElement& b) {
    if (a.n() != b.n()) throw Error("exterior dimension mismatch");
    ExteriorElement r(a.n());
    for (const auto& [ba, ca] : a.comps())
        for (const auto& [bb, cb] : b.comps()) {
            if (ba & bb) continue;
            r.add_term(ba | bb, ca * cb * shuffle_sign(ba, bb));
        }
    return r;
}

std::string ExteriorElement::to_string() const {
    if (comps_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [b, c] : comps_) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        first = false;
        if (b == 0) {
            out += rat_to_string(a);
        } else {
            if (a != 1) out += rat_to_string(a) + "*";
            out += blade_to_string(b);
        }
    }
    return out;
}

}  // namespace cliffglue
