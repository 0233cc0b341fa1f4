#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "skl/field.hpp"
#include "skl/linalg.hpp"
#include "skl/words.hpp"

namespace skl {

using FVec = SparseVec<PrimeField>;
using FMat = SparseMatrix<PrimeField>;
using FSub = Subspace<PrimeField>;

// The quadratic presentation k<x,y,z> / (axy + byx + cz^2,
//                                        ayz + bzy + cx^2,
//                                        azx + bxz + cy^2).
// Relations are stored as sparse rows over the 9 degree-2 words.
struct Presentation {
    PrimeField f;
    PrimeField::Elt a, b, c;
    std::vector<FVec> relations;

    Presentation(const PrimeField& field, PrimeField::Elt a_, PrimeField::Elt b_,
                 PrimeField::Elt c_);

    // arbitrary quadratic relation set; used by tests and fault injection
    static Presentation with_relations(const PrimeField& field, std::vector<FVec> rels);

    // one coefficient of one relation changed; degenerates the algebra
    Presentation perturbed(int rel, int term, PrimeField::Elt delta) const;

  private:
    Presentation(const PrimeField& field, std::vector<FVec> rels);
};

// true iff word-reversal composed with x<->y maps the relation span into
// itself (the algebra is then isomorphic to its opposite)
bool anti_invariant(const PrimeField& f, const std::vector<FVec>& relations);

// Per-degree normal form data.  standard_words is the monomial basis of the
// degree-n component; rewrite maps every word (letter)*(standard word of
// degree n-1) to its coordinates over standard_words.  Row index is
// letter * s_{n-1} + (index in standard_words of degree n-1), which is also
// ascending word order since letter blocks are contiguous.
struct DegreeContext {
    int degree = 0;
    std::vector<Word> standard_words;
    std::vector<FVec> rewrite;
    std::uint32_t relation_span_rank = 0; // dim of the degree-n ideal piece

    std::uint32_t dim() const { return static_cast<std::uint32_t>(standard_words.size()); }
};

// A subspace of the degree-n component, coordinates over standard_words.
struct GradedSubspace {
    int degree = 0;
    FSub space;

    std::uint32_t dim() const { return space.dim(); }
};

enum class Side { left, right };

// The graded algebra: degree contexts are built eagerly up to the cap at
// construction and never mutated, so an Algebra is safe to share across
// threads.
class Algebra {
  public:
    Algebra(Presentation pres, int cap = 9);

    const Presentation& pres() const { return pres_; }
    const PrimeField& field() const { return pres_.f; }
    int cap() const { return cap_; }

    const DegreeContext& context(int n) const; // ResourceError beyond cap
    std::uint32_t dim(int n) const { return context(n).dim(); }
    std::uint32_t index_of_word(int n, Word w) const; // UsageError if not standard

    // coordinates of an arbitrary degree-n word over the standard basis
    FVec nf_word(Word w, int n) const;
    // normal form of the concatenation of two standard-basis vectors
    FVec nf_concat(const FVec& u, int a, const FVec& v, int b) const;

    GradedSubspace full_space(int n) const;
    GradedSubspace span_of(int n, const std::vector<FVec>& gens) const;

    GradedSubspace mult(const GradedSubspace& u, const GradedSubspace& v) const;
    // powers V, V^2, ..., V^nmax (degrees d, 2d, ...)
    std::vector<GradedSubspace> closure(const GradedSubspace& v, int nmax) const;

    // right: {y in S_a : z*y inside w}; left: {y : y*z inside w}
    GradedSubspace transporter(const GradedSubspace& z, const GradedSubspace& w,
                               int a, Side side) const;

    bool is_central(const GradedSubspace& c) const;
    bool opposite_invariant() const { return anti_invariant(pres_.f, pres_.relations); }

    std::uint32_t quotient_dim(const GradedSubspace& u, const GradedSubspace& w) const;

  private:
    Presentation pres_;
    int cap_;
    std::vector<DegreeContext> ctx_;
    std::vector<std::unordered_map<Word, std::uint32_t>> index_;

    DegreeContext build_context(int n) const;
};

} // namespace skl
