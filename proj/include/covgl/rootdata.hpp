#pragma once

// GL_r root datum and its Weyl group as permutations: ordinary and
// rho-shifted (twisted) actions, lengths, descent sets, reduced words,
// and conjugation by the longest element.

#include "covgl/lattice.hpp"

#include <set>
#include <vector>

namespace covgl {

// Permutation w of {1..r}, acting on coweights by w(sum k_i e_i) = sum k_{w^-1(i)} e_i.
class WeylElement {
public:
    explicit WeylElement(std::vector<int> images); // images[i] = w(i+1), 1-based values
    static WeylElement identity(int r);
    static WeylElement simple_reflection(int i, int r); // transposition (i, i+1), 1 <= i <= r-1
    static WeylElement longest(int r);                  // the reversal

    int rank() const { return static_cast<int>(img_.size()); }
    int apply(int i) const { return img_[i - 1]; } // w(i), 1-based
    const std::vector<int>& images() const { return img_; }

    WeylElement inverse() const;
    WeylElement operator*(const WeylElement& other) const; // (w*v)(i) = w(v(i))
    bool operator==(const WeylElement& other) const { return img_ == other.img_; }
    bool operator!=(const WeylElement& other) const { return !(*this == other); }
    bool operator<(const WeylElement& other) const { return img_ < other.img_; }
    bool is_identity() const;

private:
    std::vector<int> img_;
};

struct RootDatum {
    int r;
    // rho doubled so all coordinates stay integral: entries r+1-2i.
    Coweight two_rho;

    explicit RootDatum(int rank);
};

// w(y): coordinate permutation.
Coweight act(const WeylElement& w, const Coweight& y);

// w[y] = w(y - rho) + rho, computed in doubled coordinates.
Coweight twisted_act(const WeylElement& w, const Coweight& y);

// Number of inversions = Coxeter length.
int length(const WeylElement& w);

// All reduced decompositions into simple reflection indices.
// Guarded by a rank bound (the count explodes with r).
std::vector<std::vector<int>> reduced_words(const WeylElement& w, int max_rank = 5);

// One reduced word (deterministic).
std::vector<int> a_reduced_word(const WeylElement& w);

// I_w = {k in [1, r-1] : w^-1(k) > w^-1(k+1)}.
std::set<int> descent_set(const WeylElement& w);

// Conjugation by the longest element; coordinate reversal on coweights.
WeylElement hat(const WeylElement& w);
Coweight hat_coweight(const Coweight& y);

// The j-cycle (1 2 ... j) in W_{GL_r}; requires 2 <= j <= r.
WeylElement cycle(int j, int r);

// All r! elements, deterministic order.
std::vector<WeylElement> all_weyl_elements(int r);

// Pairing <y, alpha_i> = y_i - y_{i+1} for the simple root alpha_i (1-based).
Int simple_pairing(const Coweight& y, int alpha_index);

// Embed a rank-r coweight into rank R by padding zeros.
Coweight embed_coweight(const Coweight& y, int big_rank);

// Embed w in W_r into W_R fixing r+1..R.
WeylElement embed_weyl(const WeylElement& w, int big_rank);

} // namespace covgl
