#include "covgl/whittaker.hpp"

#include <algorithm>

namespace covgl {

std::vector<OrbitClass> orbit_classes(const CoveringDescriptor& d) {
    auto quot = quotient(d.r, d.yqn);
    int size = static_cast<int>(quot.representatives().size());
    std::vector<WeylElement> gens;
    for (int i = 1; i < d.r; ++i) gens.push_back(WeylElement::simple_reflection(i, d.r));
    long factorial = 1;
    for (int i = 2; i <= d.r; ++i) factorial *= i;

    std::vector<bool> visited(size, false);
    std::vector<OrbitClass> out;
    for (int start = 0; start < size; ++start) {
        if (visited[start]) continue;
        std::vector<int> stack = {start};
        std::vector<int> members;
        visited[start] = true;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            members.push_back(cur);
            for (const auto& g : gens) {
                int next = quot.rep_index(twisted_act(g, quot.representatives()[cur]));
                if (!visited[next]) {
                    visited[next] = true;
                    stack.push_back(next);
                }
            }
        }
        OrbitClass cls;
        cls.representative =
            quot.representatives()[*std::min_element(members.begin(), members.end())];
        cls.size = static_cast<int>(members.size());
        cls.free = cls.size == factorial;
        out.push_back(std::move(cls));
    }
    return out;
}

int dim_whittaker_theta(const CoveringDescriptor& d) {
    int count = 0;
    for (const auto& cls : orbit_classes(d))
        if (cls.free) ++count;
    if (d.yqn == scaled_standard_lattice(d.r, d.n_alpha)) {
        // Closed form binom(n_alpha, r) when the lattice is the scaled one.
        Int binom = 1;
        if (d.n_alpha < d.r) binom = 0;
        else
            for (int i = 0; i < d.r; ++i) binom = binom * (d.n_alpha - i) / (i + 1);
        if (Int(count) != binom)
            throw std::logic_error("free-orbit count disagrees with the binomial form");
    }
    return count;
}

RingElement t_value(const CoveringDescriptor& d, int alpha, const Coweight& y) {
    Int pairing = simple_pairing(y, alpha);
    Int k = ceil_div(pairing, d.n_alpha);
    RingElement q_part = RingElement::u_pow(2 * (k - 1));
    RingElement g = gauss_symbol(d.n, (pairing - 1) * d.q_coroot);
    return q_part * g.inverse();
}

RingElement t_word(const CoveringDescriptor& d, const std::vector<int>& word,
                   const Coweight& y) {
    RingElement out = RingElement::one();
    Coweight cur = y;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        out = out * t_value(d, *it, cur);
        cur = twisted_act(WeylElement::simple_reflection(*it, d.r), cur);
    }
    return out;
}

CoefficientFunction::CoefficientFunction(const CoveringDescriptor& d, const Coweight& base,
                                         UnramifiedCharacter chi)
    : d_(d), quot_(quotient(d.r, d.yqn)), chi_(std::move(chi)), base_(base) {
    for (const auto& w : all_weyl_elements(d.r)) {
        Coweight pt = twisted_act(w, base_);
        int idx = quot_.rep_index(pt);
        if (support_.count(idx)) throw std::invalid_argument("orbit is not free");
        RingElement value = t_word(d, a_reduced_word(w), base_);
        if (chi_.conjugated) value = value.conjugate({});
        support_.emplace(idx, std::make_pair(std::move(pt), std::move(value)));
    }
}

std::optional<std::pair<Coweight, RingElement>>
CoefficientFunction::support_at(const Coweight& z) const {
    auto it = support_.find(quot_.rep_index(z));
    if (it == support_.end()) return std::nullopt;
    return it->second;
}

RingElement CoefficientFunction::eval(const Coweight& z) const {
    auto cell = support_at(z);
    if (!cell) return RingElement::zero();
    Coweight shift = cw_sub(z, cell->first);
    // s_z = cocycle * s_{orbit point} * s_{shift}; the cocycle is 1 here.
    return d_.section_cocycle(cell->first, shift) * cell->second * chi_.eval(shift);
}

CoefficientFunction coefficient_function(const CoveringDescriptor& d,
                                         const OrbitClass& orbit,
                                         const UnramifiedCharacter& chi) {
    if (!orbit.free) throw std::invalid_argument("orbit is not free");
    return CoefficientFunction(d, orbit.representative, chi);
}

RingElement whittaker_theta_value(const CoveringDescriptor& d,
                                  const CoefficientFunction& c, const Coweight& y) {
    for (int i = 1; i < d.r; ++i)
        if (simple_pairing(y, i) < 0) return RingElement::zero();
    return d.half_delta(y) * c.eval(hat_coweight(y));
}

Frac<RingElement> whittaker_ps_value(const CoveringDescriptor& d,
                                     const UnramifiedCharacter& chi,
                                     const Coweight& gamma_y, const Coweight& y) {
    FormalOps ops{d.n};
    PsWhittakerEvaluator<RingElement, FormalOps> eval(d, chi, ops);
    return eval.evaluate(gamma_y, y);
}

} // namespace covgl
