#include "covgl/rootdata.hpp"

#include <algorithm>
#include <numeric>

namespace covgl {

WeylElement::WeylElement(std::vector<int> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (int v : img_) {
        if (v < 1 || v > static_cast<int>(img_.size()) || seen[v - 1])
            throw std::invalid_argument("not a permutation of {1..r}");
        seen[v - 1] = true;
    }
}

WeylElement WeylElement::identity(int r) {
    std::vector<int> img(r);
    std::iota(img.begin(), img.end(), 1);
    return WeylElement(std::move(img));
}

WeylElement WeylElement::simple_reflection(int i, int r) {
    if (i < 1 || i > r - 1) throw std::invalid_argument("simple reflection index out of range");
    auto w = identity(r);
    std::swap(w.img_[i - 1], w.img_[i]);
    return w;
}

WeylElement WeylElement::longest(int r) {
    std::vector<int> img(r);
    for (int i = 0; i < r; ++i) img[i] = r - i;
    return WeylElement(std::move(img));
}

WeylElement WeylElement::inverse() const {
    std::vector<int> inv(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) inv[img_[i] - 1] = static_cast<int>(i) + 1;
    return WeylElement(std::move(inv));
}

WeylElement WeylElement::operator*(const WeylElement& other) const {
    if (rank() != other.rank()) throw std::invalid_argument("rank mismatch");
    std::vector<int> img(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) img[i] = img_[other.img_[i] - 1];
    return WeylElement(std::move(img));
}

bool WeylElement::is_identity() const {
    for (size_t i = 0; i < img_.size(); ++i)
        if (img_[i] != static_cast<int>(i) + 1) return false;
    return true;
}

RootDatum::RootDatum(int rank) : r(rank), two_rho(rank) {
    if (rank < 1) throw std::invalid_argument("rank must be >= 1");
    for (int i = 1; i <= rank; ++i) two_rho[i - 1] = r + 1 - 2 * i;
}

Coweight act(const WeylElement& w, const Coweight& y) {
    if (w.rank() != static_cast<int>(y.size())) throw std::invalid_argument("rank mismatch");
    auto winv = w.inverse();
    Coweight out(y.size());
    for (int i = 1; i <= w.rank(); ++i) out[i - 1] = y[winv.apply(i) - 1];
    return out;
}

Coweight twisted_act(const WeylElement& w, const Coweight& y) {
    int r = w.rank();
    if (r != static_cast<int>(y.size())) throw std::invalid_argument("rank mismatch");
    RootDatum rd(r);
    Coweight doubled(r);
    for (int i = 0; i < r; ++i) doubled[i] = 2 * y[i] - rd.two_rho[i];
    doubled = act(w, doubled);
    Coweight out(r);
    for (int i = 0; i < r; ++i) {
        Int num = doubled[i] + rd.two_rho[i];
        if (floor_mod(num, 2) != 0)
            throw std::logic_error("twisted action produced a half-integer");
        out[i] = num / 2;
    }
    return out;
}

int length(const WeylElement& w) {
    int inv = 0;
    for (int i = 1; i <= w.rank(); ++i)
        for (int j = i + 1; j <= w.rank(); ++j)
            if (w.apply(i) > w.apply(j)) ++inv;
    return inv;
}

std::set<int> descent_set(const WeylElement& w) {
    std::set<int> out;
    auto winv = w.inverse();
    for (int k = 1; k <= w.rank() - 1; ++k)
        if (winv.apply(k) > winv.apply(k + 1)) out.insert(k);
    return out;
}

std::vector<std::vector<int>> reduced_words(const WeylElement& w, int max_rank) {
    if (w.rank() > max_rank) throw std::invalid_argument("rank above reduced-word bound");
    if (w.is_identity()) return {{}};
    std::vector<std::vector<int>> out;
    // Left descents i (l(s_i w) < l(w)) are exactly the elements of I_w.
    for (int i : descent_set(w)) {
        auto rest = WeylElement::simple_reflection(i, w.rank()) * w;
        for (auto word : reduced_words(rest, max_rank)) {
            word.insert(word.begin(), i);
            out.push_back(std::move(word));
        }
    }
    return out;
}

std::vector<int> a_reduced_word(const WeylElement& w) {
    std::vector<int> word;
    WeylElement cur = w;
    while (!cur.is_identity()) {
        int i = *descent_set(cur).begin();
        word.push_back(i);
        cur = WeylElement::simple_reflection(i, cur.rank()) * cur;
    }
    return word;
}

WeylElement hat(const WeylElement& w) {
    auto w0 = WeylElement::longest(w.rank());
    return w0 * w * w0.inverse();
}

Coweight hat_coweight(const Coweight& y) {
    Coweight out(y.rbegin(), y.rend());
    return out;
}

WeylElement cycle(int j, int r) {
    if (j < 2 || j > r) throw std::invalid_argument("cycle length out of range");
    std::vector<int> img(r);
    std::iota(img.begin(), img.end(), 1);
    for (int i = 1; i < j; ++i) img[i - 1] = i + 1;
    img[j - 1] = 1;
    return WeylElement(std::move(img));
}

std::vector<WeylElement> all_weyl_elements(int r) {
    std::vector<int> img(r);
    std::iota(img.begin(), img.end(), 1);
    std::vector<WeylElement> out;
    do {
        out.emplace_back(img);
    } while (std::next_permutation(img.begin(), img.end()));
    return out;
}

Int simple_pairing(const Coweight& y, int alpha_index) {
    if (alpha_index < 1 || alpha_index >= static_cast<int>(y.size()))
        throw std::invalid_argument("simple root index out of range");
    return y[alpha_index - 1] - y[alpha_index];
}

Coweight embed_coweight(const Coweight& y, int big_rank) {
    if (big_rank < static_cast<int>(y.size())) throw std::invalid_argument("cannot shrink rank");
    Coweight out = y;
    out.resize(big_rank, Int(0));
    return out;
}

WeylElement embed_weyl(const WeylElement& w, int big_rank) {
    if (big_rank < w.rank()) throw std::invalid_argument("cannot shrink rank");
    std::vector<int> img(w.images());
    for (int i = w.rank() + 1; i <= big_rank; ++i) img.push_back(i);
    return WeylElement(std::move(img));
}

} // namespace covgl
