#include "covgl/lattice.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace covgl {

Coweight cw_add(const Coweight& a, const Coweight& b) {
    if (a.size() != b.size()) throw std::invalid_argument("coweight dimension mismatch");
    Coweight c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

Coweight cw_sub(const Coweight& a, const Coweight& b) {
    if (a.size() != b.size()) throw std::invalid_argument("coweight dimension mismatch");
    Coweight c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

Coweight cw_neg(const Coweight& a) {
    Coweight c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = -a[i];
    return c;
}

Coweight cw_scale(const Int& k, const Coweight& a) {
    Coweight c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = k * a[i];
    return c;
}

Int cw_sum(const Coweight& a) {
    Int s = 0;
    for (const auto& x : a) s += x;
    return s;
}

std::string cw_str(const Coweight& a) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) os << ",";
        os << a[i];
    }
    os << ")";
    return os.str();
}

namespace {

// Row-style HNF of an arbitrary generator list. Classic xgcd elimination:
// for each column, combine rows to a single positive pivot, eliminate the
// rest, then reduce entries above each pivot.
std::vector<Coweight> hnf_rows(std::vector<Coweight> rows, int dim) {
    std::vector<Coweight> result;
    size_t row_start = 0;
    for (int col = 0; col < dim; ++col) {
        // Find a row with nonzero entry in this column and move it up front.
        size_t pivot_row = row_start;
        while (pivot_row < rows.size() && rows[pivot_row][col] == 0) ++pivot_row;
        if (pivot_row == rows.size()) continue;
        std::swap(rows[row_start], rows[pivot_row]);
        // Eliminate the column below via gcd combinations.
        for (size_t i = row_start + 1; i < rows.size(); ++i) {
            if (rows[i][col] == 0) continue;
            // Euclid on the pair (rows[row_start][col], rows[i][col]).
            while (rows[i][col] != 0) {
                Int q = floor_div(rows[row_start][col], rows[i][col]);
                for (int j = 0; j < dim; ++j) rows[row_start][j] -= q * rows[i][j];
                std::swap(rows[row_start], rows[i]);
            }
        }
        if (rows[row_start][col] < 0)
            for (int j = 0; j < dim; ++j) rows[row_start][j] = -rows[row_start][j];
        if (rows[row_start][col] != 0) ++row_start;
    }
    rows.resize(row_start);
    // Reduce entries above each pivot into [0, pivot).
    for (size_t i = 0; i < rows.size(); ++i) {
        int pc = 0;
        while (rows[i][pc] == 0) ++pc;
        for (size_t k = 0; k < i; ++k) {
            Int q = floor_div(rows[k][pc], rows[i][pc]);
            if (q != 0)
                for (int j = 0; j < dim; ++j) rows[k][j] -= q * rows[i][j];
        }
    }
    return rows;
}

} // namespace

LatticeBasis::LatticeBasis(int rank, std::vector<Coweight> hnf_rows_in)
    : rank_(rank), rows_(std::move(hnf_rows_in)) {
    int last_pivot = -1;
    for (const auto& row : rows_) {
        if (static_cast<int>(row.size()) != rank_)
            throw std::invalid_argument("basis row dimension mismatch");
        int pc = 0;
        while (pc < rank_ && row[pc] == 0) ++pc;
        if (pc == rank_ || pc <= last_pivot || row[pc] <= 0)
            throw std::invalid_argument("rows are not in Hermite normal form");
        last_pivot = pc;
        pivots_.push_back(pc);
    }
}

std::optional<std::vector<Int>> LatticeBasis::coordinates(const Coweight& y) const {
    if (static_cast<int>(y.size()) != rank_)
        throw std::invalid_argument("dimension mismatch");
    Coweight rem = y;
    std::vector<Int> coords(rows_.size());
    for (size_t i = 0; i < rows_.size(); ++i) {
        int pc = pivots_[i];
        if (rem[pc] % rows_[i][pc] != 0) return std::nullopt;
        Int c = rem[pc] / rows_[i][pc];
        coords[i] = c;
        for (int j = 0; j < rank_; ++j) rem[j] -= c * rows_[i][j];
    }
    for (const auto& x : rem)
        if (x != 0) return std::nullopt;
    return coords;
}

bool LatticeBasis::contains(const Coweight& y) const { return coordinates(y).has_value(); }

bool LatticeBasis::operator==(const LatticeBasis& other) const {
    return rank_ == other.rank_ && rows_ == other.rows_;
}

LatticeBasis hnf_basis(const std::vector<Coweight>& generators, int rank_hint) {
    int dim;
    if (generators.empty()) {
        if (rank_hint < 0) throw std::invalid_argument("rank unknown");
        dim = rank_hint;
    } else {
        dim = static_cast<int>(generators[0].size());
        for (const auto& g : generators)
            if (static_cast<int>(g.size()) != dim)
                throw std::invalid_argument("generators have unequal lengths");
        if (rank_hint >= 0 && rank_hint != dim)
            throw std::invalid_argument("rank hint contradicts generators");
    }
    return LatticeBasis(dim, hnf_rows(generators, dim));
}

LatticeBasis scaled_standard_lattice(int rank, const Int& k) {
    std::vector<Coweight> rows;
    if (k != 0) {
        for (int i = 0; i < rank; ++i) {
            Coweight row(rank, Int(0));
            row[i] = k < 0 ? -k : k;
            rows.push_back(row);
        }
    }
    return LatticeBasis(rank, std::move(rows));
}

LatticeBasis kernel_lattice(const std::vector<std::vector<Int>>& a, int cols) {
    // Row-reduce [A^T | I]; rows whose A^T-part vanished carry a kernel basis.
    int nrows = static_cast<int>(a.size());
    std::vector<std::vector<Int>> work(cols, std::vector<Int>(nrows + cols, Int(0)));
    for (int i = 0; i < cols; ++i) {
        for (int j = 0; j < nrows; ++j) work[i][j] = a[j][i];
        work[i][nrows + i] = 1;
    }
    int width = nrows + cols;
    size_t row_start = 0;
    for (int col = 0; col < nrows; ++col) {
        size_t pr = row_start;
        while (pr < work.size() && work[pr][col] == 0) ++pr;
        if (pr == work.size()) continue;
        std::swap(work[row_start], work[pr]);
        for (size_t i = row_start + 1; i < work.size(); ++i) {
            while (work[i][col] != 0) {
                Int q = floor_div(work[row_start][col], work[i][col]);
                for (int j = 0; j < width; ++j) work[row_start][j] -= q * work[i][j];
                std::swap(work[row_start], work[i]);
            }
        }
        ++row_start;
    }
    std::vector<Coweight> kernel_gens;
    for (size_t i = row_start; i < work.size(); ++i)
        kernel_gens.emplace_back(work[i].begin() + nrows, work[i].end());
    return hnf_basis(kernel_gens, cols);
}

std::vector<Int> smith_invariant_factors(std::vector<std::vector<Int>> m) {
    int n = static_cast<int>(m.size());
    auto abs_int = [](const Int& x) { return x < 0 ? -x : x; };
    std::vector<Int> factors;
    for (int t = 0; t < n; ++t) {
        // Minimal-pivot elimination: whenever a reduction leaves a nonzero
        // remainder, re-pivot on it; the pivot magnitude strictly decreases.
        while (true) {
            int pi = -1, pj = -1;
            for (int i = t; i < n; ++i)
                for (int j = t; j < n; ++j)
                    if (m[i][j] != 0 &&
                        (pi < 0 || abs_int(m[i][j]) < abs_int(m[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) throw std::invalid_argument("matrix is not full rank");
            std::swap(m[t], m[pi]);
            for (int i = 0; i < n; ++i) std::swap(m[i][t], m[i][pj]);
            if (m[t][t] < 0)
                for (int j = 0; j < n; ++j) m[t][j] = -m[t][j];
            bool dirty = false;
            for (int i = t + 1; i < n; ++i) {
                Int q = floor_div(m[i][t], m[t][t]);
                if (q != 0)
                    for (int j = t; j < n; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) dirty = true;
            }
            for (int j = t + 1; j < n; ++j) {
                Int q = floor_div(m[t][j], m[t][t]);
                if (q != 0)
                    for (int i = t; i < n; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) dirty = true;
            }
            if (dirty) continue;
            // Pivot must divide the trailing block for the invariant chain.
            bool fixed = false;
            for (int i = t + 1; i < n && !fixed; ++i)
                for (int j = t + 1; j < n && !fixed; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        for (int k = t; k < n; ++k) m[t][k] += m[i][k];
                        fixed = true;
                    }
            if (!fixed) break;
        }
        factors.push_back(m[t][t]);
    }
    std::sort(factors.begin(), factors.end());
    return factors;
}

QuotientStructure::QuotientStructure(int ambient_rank, LatticeBasis sublattice)
    : ambient_rank_(ambient_rank), sub_(std::move(sublattice)) {
    if (sub_.rank() != ambient_rank_)
        throw std::invalid_argument("dimension mismatch");
    if (!sub_.full_rank()) throw std::invalid_argument("infinite quotient");
    std::vector<std::vector<Int>> mat;
    for (const auto& row : sub_.rows()) mat.push_back(row);
    invariant_factors_ = smith_invariant_factors(std::move(mat));
    order_ = 1;
    for (const auto& d : invariant_factors_) order_ *= d;
    // Transversal: the box cut out by the HNF diagonal, in lex order.
    std::vector<Int> diag(ambient_rank_);
    for (int i = 0; i < ambient_rank_; ++i) diag[i] = sub_.rows()[i][i];
    Coweight cur(ambient_rank_, Int(0));
    std::function<void(int)> emit = [&](int pos) {
        if (pos == ambient_rank_) {
            reps_.push_back(cur);
            return;
        }
        for (Int v = 0; v < diag[pos]; ++v) {
            cur[pos] = v;
            emit(pos + 1);
        }
        cur[pos] = 0;
    };
    emit(0);
}

Coweight QuotientStructure::reduce(const Coweight& y) const {
    if (static_cast<int>(y.size()) != ambient_rank_)
        throw std::invalid_argument("dimension mismatch");
    Coweight v = y;
    for (int i = 0; i < ambient_rank_; ++i) {
        const auto& row = sub_.rows()[i];
        Int q = floor_div(v[i], row[i]);
        if (q != 0)
            for (int j = i; j < ambient_rank_; ++j) v[j] -= q * row[j];
    }
    return v;
}

int QuotientStructure::rep_index(const Coweight& y) const {
    Coweight v = reduce(y);
    Int idx = 0;
    for (int i = 0; i < ambient_rank_; ++i) {
        idx = idx * sub_.rows()[i][i] + v[i];
    }
    return static_cast<int>(idx);
}

QuotientStructure quotient(int ambient_rank, const LatticeBasis& sub) {
    return QuotientStructure(ambient_rank, sub);
}

} // namespace covgl
