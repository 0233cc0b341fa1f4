#include "skl/algebra.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace skl {

namespace {

FVec make_relation(std::initializer_list<std::pair<Word, PrimeField::Elt>> terms) {
    FVec v;
    for (auto& t : terms) v.terms.push_back(t);
    std::sort(v.terms.begin(), v.terms.end(),
              [](const auto& p, const auto& q) { return p.first < q.first; });
    return v;
}

} // namespace

Presentation::Presentation(const PrimeField& field, PrimeField::Elt a_,
                           PrimeField::Elt b_, PrimeField::Elt c_)
    : f(field), a(a_), b(b_), c(c_) {
    if (f.is_zero(f.mul(f.mul(a, b), c)))
        throw DegeneracyError("presentation requires a, b, c all nonzero");
    // word codes: xy=1, yx=3, zz=8 / yz=5, zy=7, xx=0 / zx=6, xz=2, yy=4
    relations.push_back(make_relation({{1, a}, {3, b}, {8, c}}));
    relations.push_back(make_relation({{5, a}, {7, b}, {0, c}}));
    relations.push_back(make_relation({{6, a}, {2, b}, {4, c}}));
}

Presentation::Presentation(const PrimeField& field, std::vector<FVec> rels)
    : f(field), a(field.one()), b(field.one()), c(field.one()),
      relations(std::move(rels)) {}

Presentation Presentation::with_relations(const PrimeField& field, std::vector<FVec> rels) {
    for (const auto& r : rels)
        for (auto& [w, v] : r.terms)
            if (w >= 9 || field.is_zero(v))
                throw UsageError("relations must be nonzero sparse vectors over degree-2 words");
    return Presentation(field, std::move(rels));
}

Presentation Presentation::perturbed(int rel, int term, PrimeField::Elt delta) const {
    auto rels = relations;
    auto& t = rels.at(static_cast<std::size_t>(rel)).terms.at(static_cast<std::size_t>(term));
    t.second = f.add(t.second, delta);
    if (f.is_zero(t.second))
        rels[static_cast<std::size_t>(rel)].terms.erase(
            rels[static_cast<std::size_t>(rel)].terms.begin() + term);
    return Presentation(f, std::move(rels));
}

bool anti_invariant(const PrimeField& f, const std::vector<FVec>& relations) {
    if (relations.empty()) return true;
    FMat m;
    m.ncols = 9;
    m.rows = relations;
    FSub span(f, std::move(m));
    for (const auto& r : relations) {
        FVec image;
        for (auto& [w, v] : r.terms)
            image.terms.push_back({word_swapped_xy(word_reversed(w, 2), 2), v});
        std::sort(image.terms.begin(), image.terms.end(),
                  [](const auto& p, const auto& q) { return p.first < q.first; });
        if (!span.member(f, image)) return false;
    }
    return true;
}

Algebra::Algebra(Presentation pres, int cap) : pres_(std::move(pres)), cap_(cap) {
    if (cap_ < 0 || cap_ > kMaxDegree)
        throw UsageError("degree cap must be between 0 and " + std::to_string(kMaxDegree));
    ctx_.reserve(static_cast<std::size_t>(cap_) + 1);
    index_.resize(static_cast<std::size_t>(cap_) + 1);
    for (int n = 0; n <= cap_; ++n) {
        ctx_.push_back(build_context(n));
        auto& idx = index_[static_cast<std::size_t>(n)];
        const auto& words = ctx_.back().standard_words;
        for (std::uint32_t j = 0; j < words.size(); ++j) idx[words[j]] = j;
    }
}

const DegreeContext& Algebra::context(int n) const {
    if (n < 0) throw UsageError("negative degree");
    if (n > cap_)
        throw ResourceError("degree " + std::to_string(n) + " exceeds cap " +
                            std::to_string(cap_));
    return ctx_[static_cast<std::size_t>(n)];
}

std::uint32_t Algebra::index_of_word(int n, Word w) const {
    context(n);
    const auto& idx = index_[static_cast<std::size_t>(n)];
    auto it = idx.find(w);
    if (it == idx.end()) throw UsageError("word is not in the standard basis");
    return it->second;
}

DegreeContext Algebra::build_context(int n) const {
    const PrimeField& f = pres_.f;
    DegreeContext ctx;
    ctx.degree = n;
    if (n == 0) {
        ctx.standard_words = {0};
        return ctx;
    }
    if (n == 1) {
        ctx.standard_words = {0, 1, 2};
        for (Word l = 0; l < 3; ++l) {
            FVec unit;
            unit.terms.push_back({l, f.one()});
            ctx.rewrite.push_back(std::move(unit));
        }
        return ctx;
    }

    const DegreeContext& prev = ctx_[static_cast<std::size_t>(n - 1)];
    const DegreeContext& prev2 = ctx_[static_cast<std::size_t>(n - 2)];
    const std::uint32_t sp = prev.dim();

    // Degree-n relation span, expressed over the 3*sp products
    // letter * (standard word of degree n-1).  Modulo rows already implied by
    // lower degrees, it is spanned by r * w over the relations r and standard
    // words w of degree n-2, with the inner product u2*w rewritten first.
    // Column index letter*sp + j is ascending word order.
    FMat span;
    span.ncols = 3 * sp;
    for (const auto& rel : pres_.relations) {
        for (std::uint32_t jw = 0; jw < prev2.dim(); ++jw) {
            FVec row;
            for (auto& [w2, coef] : rel.terms) {
                Word u1 = w2 / 3, u2 = w2 % 3;
                const FVec& tail = prev.rewrite[u2 * prev2.dim() + jw];
                FVec shifted;
                shifted.terms.reserve(tail.terms.size());
                for (auto& [j, v] : tail.terms) shifted.terms.push_back({u1 * sp + j, v});
                axpy(f, row, coef, shifted);
            }
            if (!row.empty()) span.rows.push_back(std::move(row));
        }
    }
    Rref<PrimeField> e = rref(f, span);

    std::vector<std::uint32_t> col_to_std(3 * sp, UINT32_MAX);
    std::size_t pi = 0;
    for (std::uint32_t col = 0; col < 3 * sp; ++col) {
        if (pi < e.pivots.size() && e.pivots[pi] == col) {
            ++pi;
            continue;
        }
        col_to_std[col] = static_cast<std::uint32_t>(ctx.standard_words.size());
        ctx.standard_words.push_back((col / sp) * kPow3[n - 1] +
                                     prev.standard_words[col % sp]);
    }

    ctx.rewrite.resize(3 * sp);
    pi = 0;
    for (std::uint32_t col = 0; col < 3 * sp; ++col) {
        FVec row;
        if (pi < e.pivots.size() && e.pivots[pi] == col) {
            // pivot word = -(sum of its non-pivot terms)
            for (auto& [d, v] : e.rows[pi].terms)
                if (d != col) row.terms.push_back({col_to_std[d], f.neg(v)});
            ++pi;
        } else {
            row.terms.push_back({col_to_std[col], f.one()});
        }
        ctx.rewrite[col] = std::move(row);
    }
    ctx.relation_span_rank = kPow3[n] - ctx.dim();
    return ctx;
}

FVec Algebra::nf_word(Word w, int n) const {
    context(n);
    const PrimeField& f = pres_.f;
    FVec cur;
    cur.terms.push_back({0, f.one()});
    if (n == 0) return cur;
    cur.terms[0].first = w % 3;
    for (int d = 2; d <= n; ++d) {
        const DegreeContext& c = ctx_[static_cast<std::size_t>(d)];
        std::uint32_t sp = ctx_[static_cast<std::size_t>(d - 1)].dim();
        std::uint32_t letter = (w / kPow3[d - 1]) % 3;
        FVec next;
        for (auto& [j, v] : cur.terms) axpy(f, next, v, c.rewrite[letter * sp + j]);
        cur = std::move(next);
    }
    return cur;
}

FVec Algebra::nf_concat(const FVec& u, int a, const FVec& v, int b) const {
    context(a + b);
    const PrimeField& f = pres_.f;
    FVec out;
    for (auto& [iu, cu] : u.terms) {
        Word wu = ctx_[static_cast<std::size_t>(a)].standard_words[iu];
        FVec cur = v;
        for (int d = b + 1; d <= a + b; ++d) {
            const DegreeContext& c = ctx_[static_cast<std::size_t>(d)];
            std::uint32_t sp = ctx_[static_cast<std::size_t>(d - 1)].dim();
            std::uint32_t letter = (wu / kPow3[d - b - 1]) % 3; // right-to-left prepend
            FVec next;
            for (auto& [j, cv] : cur.terms) axpy(f, next, cv, c.rewrite[letter * sp + j]);
            cur = std::move(next);
        }
        axpy(f, out, cu, cur);
    }
    return out;
}

GradedSubspace Algebra::full_space(int n) const {
    return {n, FSub::full(pres_.f, dim(n))};
}

GradedSubspace Algebra::span_of(int n, const std::vector<FVec>& gens) const {
    FMat m;
    m.ncols = dim(n);
    m.rows = gens;
    return {n, FSub(pres_.f, std::move(m))};
}

GradedSubspace Algebra::mult(const GradedSubspace& u, const GradedSubspace& v) const {
    int n = u.degree + v.degree;
    FMat m;
    m.ncols = dim(n);
    for (const auto& ur : u.space.basis())
        for (const auto& vr : v.space.basis())
            m.rows.push_back(nf_concat(ur, u.degree, vr, v.degree));
    return {n, FSub(pres_.f, std::move(m))};
}

std::vector<GradedSubspace> Algebra::closure(const GradedSubspace& v, int nmax) const {
    std::vector<GradedSubspace> out;
    out.push_back(v);
    for (int k = 2; k <= nmax; ++k) out.push_back(mult(v, out.back()));
    return out;
}

GradedSubspace Algebra::transporter(const GradedSubspace& z, const GradedSubspace& w,
                                    int a, Side side) const {
    int d = z.degree;
    if (w.degree != a + d) throw UsageError("transporter degrees are inconsistent");
    const PrimeField& f = pres_.f;
    const std::uint32_t sa = dim(a);

    // row (i,k): sum_j resid(z_i * e_j)_k y_j = 0
    std::map<std::pair<std::uint32_t, std::uint32_t>, FVec> rows;
    FVec ej;
    ej.terms.push_back({0, f.one()});
    for (std::uint32_t j = 0; j < sa; ++j) {
        ej.terms[0].first = j;
        for (std::uint32_t i = 0; i < z.space.basis().size(); ++i) {
            const FVec& zr = z.space.basis()[i];
            FVec prod = side == Side::right ? nf_concat(zr, d, ej, a)
                                            : nf_concat(ej, a, zr, d);
            FVec resid = w.space.echelon().reduce(f, prod);
            for (auto& [k, val] : resid.terms)
                rows[{i, k}].terms.push_back({j, val});
        }
    }
    FMat cond;
    cond.ncols = sa;
    for (auto& [key, row] : rows) cond.rows.push_back(std::move(row));
    FMat gens;
    gens.ncols = sa;
    gens.rows = kernel(f, cond);
    return {a, FSub(f, std::move(gens))};
}

bool Algebra::is_central(const GradedSubspace& c) const {
    if (c.dim() != 1) throw UsageError("centrality test expects a one-dimensional space");
    const PrimeField& f = pres_.f;
    const FVec& row = c.space.basis()[0];
    FVec e;
    e.terms.push_back({0, f.one()});
    for (std::uint32_t l = 0; l < 3; ++l) {
        e.terms[0].first = l;
        FVec lhs = nf_concat(e, 1, row, c.degree);
        FVec rhs = nf_concat(row, c.degree, e, 1);
        axpy(f, lhs, f.neg(f.one()), rhs);
        if (!lhs.empty()) return false;
    }
    return true;
}

std::uint32_t Algebra::quotient_dim(const GradedSubspace& u, const GradedSubspace& w) const {
    if (u.degree != w.degree) throw UsageError("quotient_dim degree mismatch");
    return combine(pres_.f, u.space, w.space).dim() - w.space.dim();
}

} // namespace skl
