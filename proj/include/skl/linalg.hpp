#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "skl/errors.hpp"

namespace skl {

// Sparse row vector: (column, value) pairs, strictly increasing columns, no
// zero values.  Column indices address an ambient coordinate space whose
// dimension is carried by the containing matrix / subspace.
template <typename F>
struct SparseVec {
    using Elt = typename F::Elt;
    std::vector<std::pair<std::uint32_t, Elt>> terms;

    bool empty() const { return terms.empty(); }
    std::uint32_t lead() const { return terms.front().first; }
};

template <typename F>
SparseVec<F> to_sparse(const F& f, const std::vector<typename F::Elt>& dense) {
    SparseVec<F> v;
    for (std::uint32_t j = 0; j < dense.size(); ++j)
        if (!f.is_zero(dense[j])) v.terms.push_back({j, dense[j]});
    return v;
}

template <typename F>
std::vector<typename F::Elt> to_dense(const F& f, const SparseVec<F>& v,
                                      std::uint32_t ambient) {
    std::vector<typename F::Elt> d(ambient, f.zero());
    for (auto& [j, c] : v.terms) d[j] = c;
    return d;
}

// r <- r + c * s
template <typename F>
void axpy(const F& f, SparseVec<F>& r, typename F::Elt c, const SparseVec<F>& s) {
    SparseVec<F> out;
    out.terms.reserve(r.terms.size() + s.terms.size());
    auto a = r.terms.begin();
    auto b = s.terms.begin();
    while (a != r.terms.end() || b != s.terms.end()) {
        if (b == s.terms.end() || (a != r.terms.end() && a->first < b->first)) {
            out.terms.push_back(*a++);
        } else if (a == r.terms.end() || b->first < a->first) {
            auto v = f.mul(c, b->second);
            if (!f.is_zero(v)) out.terms.push_back({b->first, v});
            ++b;
        } else {
            auto v = f.add(a->second, f.mul(c, b->second));
            if (!f.is_zero(v)) out.terms.push_back({a->first, v});
            ++a;
            ++b;
        }
    }
    r = std::move(out);
}

template <typename F>
void scale(const F& f, SparseVec<F>& r, typename F::Elt c) {
    for (auto& [j, v] : r.terms) v = f.mul(v, c);
}

// Sparse matrix = list of sparse rows over a fixed ambient width.
template <typename F>
struct SparseMatrix {
    std::uint32_t ncols = 0;
    std::vector<SparseVec<F>> rows;
};

// Row echelon data: pivot rows in reduced row echelon form, sorted by pivot
// column.  This is the canonical basis of the row space: it does not depend
// on the input row order, only on the row space itself.
template <typename F>
struct Rref {
    std::uint32_t ncols = 0;
    std::vector<std::uint32_t> pivots; // ascending
    std::vector<SparseVec<F>> rows;    // rows[i] has lead pivots[i], coeff 1

    std::uint32_t rank() const { return static_cast<std::uint32_t>(rows.size()); }

    // residual of v modulo the row space (eliminates pivot coordinates)
    SparseVec<F> reduce(const F& f, SparseVec<F> v) const {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (v.empty()) break;
            // v's terms are sorted; find pivot column among them
            auto it = std::lower_bound(
                v.terms.begin(), v.terms.end(), pivots[i],
                [](const auto& t, std::uint32_t c) { return t.first < c; });
            if (it != v.terms.end() && it->first == pivots[i])
                axpy(f, v, f.neg(it->second), rows[i]);
        }
        return v;
    }
};

// Deterministic reduced row echelon form: rows are processed in order, each
// reduced against the pivots found so far; pivot = leading (lowest) column.
template <typename F>
Rref<F> rref(const F& f, const SparseMatrix<F>& m) {
    Rref<F> e;
    e.ncols = m.ncols;
    for (const auto& row : m.rows) {
        SparseVec<F> v = e.reduce(f, row);
        if (v.empty()) continue;
        scale(f, v, f.inv(v.terms.front().second));
        auto pos = std::lower_bound(e.pivots.begin(), e.pivots.end(), v.lead());
        std::size_t idx = static_cast<std::size_t>(pos - e.pivots.begin());
        e.pivots.insert(pos, v.lead());
        e.rows.insert(e.rows.begin() + idx, std::move(v));
    }
    // back-substitution: clear pivot columns from earlier rows
    for (std::size_t i = e.rows.size(); i-- > 0;) {
        for (std::size_t j = i + 1; j < e.rows.size(); ++j) {
            auto& v = e.rows[i];
            auto it = std::lower_bound(
                v.terms.begin(), v.terms.end(), e.pivots[j],
                [](const auto& t, std::uint32_t c) { return t.first < c; });
            if (it != v.terms.end() && it->first == e.pivots[j])
                axpy(f, v, f.neg(it->second), e.rows[j]);
        }
    }
    return e;
}

// Null space {v : M v = 0}, one basis vector per free column, canonical.
template <typename F>
std::vector<SparseVec<F>> kernel(const F& f, const SparseMatrix<F>& m) {
    Rref<F> e = rref(f, m);
    std::vector<SparseVec<F>> out;
    std::size_t pi = 0;
    for (std::uint32_t j = 0; j < m.ncols; ++j) {
        if (pi < e.pivots.size() && e.pivots[pi] == j) {
            ++pi;
            continue;
        }
        SparseVec<F> v;
        for (std::size_t i = 0; i < e.rows.size(); ++i) {
            const auto& r = e.rows[i];
            auto it = std::lower_bound(
                r.terms.begin(), r.terms.end(), j,
                [](const auto& t, std::uint32_t c) { return t.first < c; });
            if (it != r.terms.end() && it->first == j)
                v.terms.push_back({e.pivots[i], f.neg(it->second)});
        }
        v.terms.push_back({j, f.one()});
        std::sort(v.terms.begin(), v.terms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        out.push_back(std::move(v));
    }
    return out;
}

template <typename F>
SparseMatrix<F> transpose(const F&, const SparseMatrix<F>& m) {
    SparseMatrix<F> t;
    t.ncols = static_cast<std::uint32_t>(m.rows.size());
    std::vector<std::vector<std::pair<std::uint32_t, typename F::Elt>>> cols(m.ncols);
    for (std::uint32_t i = 0; i < m.rows.size(); ++i)
        for (auto& [j, c] : m.rows[i].terms) cols[j].push_back({i, c});
    t.rows.resize(m.ncols);
    for (std::uint32_t j = 0; j < m.ncols; ++j) t.rows[j].terms = std::move(cols[j]);
    return t;
}

// A linear subspace of k^ambient, held as canonical RREF.  Equal subspaces
// compare equal member-by-member regardless of construction path.
template <typename F>
class Subspace {
  public:
    Subspace() = default;
    Subspace(const F& f, SparseMatrix<F> gens) : e_(rref(f, gens)) {}

    static Subspace full(const F& f, std::uint32_t ambient) {
        SparseMatrix<F> m;
        m.ncols = ambient;
        for (std::uint32_t j = 0; j < ambient; ++j) {
            SparseVec<F> v;
            v.terms.push_back({j, f.one()});
            m.rows.push_back(std::move(v));
        }
        return Subspace(f, std::move(m));
    }

    std::uint32_t ambient() const { return e_.ncols; }
    std::uint32_t dim() const { return e_.rank(); }
    const std::vector<SparseVec<F>>& basis() const { return e_.rows; }
    const Rref<F>& echelon() const { return e_; }

    bool member(const F& f, const SparseVec<F>& v) const {
        if (!v.terms.empty() && v.terms.back().first >= ambient())
            throw UsageError("vector does not fit the ambient space");
        return e_.reduce(f, v).empty();
    }
    bool contains(const F& f, const Subspace& other) const {
        for (const auto& r : other.basis())
            if (!member(f, r)) return false;
        return true;
    }
    bool equals(const F& f, const Subspace& other) const {
        return dim() == other.dim() && contains(f, other);
    }

  private:
    Rref<F> e_;
};

template <typename F>
Subspace<F> combine(const F& f, const Subspace<F>& a, const Subspace<F>& b) {
    if (a.ambient() != b.ambient()) throw UsageError("ambient dimension mismatch");
    SparseMatrix<F> m;
    m.ncols = a.ambient();
    m.rows = a.basis();
    m.rows.insert(m.rows.end(), b.basis().begin(), b.basis().end());
    return Subspace<F>(f, std::move(m));
}

// Intersection via the kernel of the stacked coefficient pairing: a vector is
// in both row spaces iff it is a combination of A's basis that the stacked
// system also expresses in B's.
template <typename F>
Subspace<F> intersect(const F& f, const Subspace<F>& a, const Subspace<F>& b) {
    if (a.ambient() != b.ambient()) throw UsageError("ambient dimension mismatch");
    SparseMatrix<F> stacked;
    stacked.ncols = a.ambient();
    stacked.rows = a.basis();
    stacked.rows.insert(stacked.rows.end(), b.basis().begin(), b.basis().end());
    auto ker = kernel(f, transpose(f, stacked));
    SparseMatrix<F> gens;
    gens.ncols = a.ambient();
    for (const auto& w : ker) {
        SparseVec<F> v;
        for (auto& [i, c] : w.terms)
            if (i < a.dim()) axpy(f, v, c, a.basis()[i]);
        if (!v.empty()) gens.rows.push_back(std::move(v));
    }
    return Subspace<F>(f, std::move(gens));
}

// dim((U + W) / W)
template <typename F>
std::uint32_t quotient_dim(const F& f, const Subspace<F>& u, const Subspace<F>& w) {
    return combine(f, u, w).dim() - w.dim();
}

} // namespace skl
