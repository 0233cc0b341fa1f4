#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "skl/curve.hpp"

namespace skl {

// sigma-twisted evaluation: the j-th letter of a degree-n word is evaluated
// at sigma^j(p) (0-based), which makes evaluation well defined on normal
// forms and multiplicative across concatenation.
class TwistedEvaluator {
  public:
    TwistedEvaluator(const Algebra& alg, const CurveContext& curve)
        : alg_(alg), curve_(curve) {}

    PrimeField::Elt eval_word(Word w, int n, const ProjPoint& p) const;
    PrimeField::Elt eval(const FVec& v, int n, const ProjPoint& p) const;

    // evaluations of every degree-n standard word at p
    std::vector<PrimeField::Elt> row(int n, const ProjPoint& p) const;

    GradedSubspace vanishing_space(int n, const std::vector<ProjPoint>& pts) const;
    GradedSubspace point_space(const ProjPoint& p) const;

    const Algebra& algebra() const { return alg_; }
    const CurveContext& curve() const { return curve_; }

  private:
    const Algebra& alg_;
    const CurveContext& curve_;
    mutable std::mutex mu_;
    mutable std::map<std::pair<int, ProjPoint>, std::vector<PrimeField::Elt>> rows_;
};

struct CentralElement {
    FVec coords; // over the degree-3 standard basis, first nonzero scaled to 1
    GradedSubspace span;
};

// kernel of curve evaluation on the degree-3 component; validates kernel
// dimension 1, rank stability under 4 extra points, centrality, and
// vanishing at fresh points
CentralElement derive_central_element(const Algebra& alg, const CurveContext& curve,
                                      const TwistedEvaluator& ev, Rng& rng,
                                      int sample_size = 24);

struct BlowupRow {
    int n = 0;
    std::uint32_t dim = 0;
    std::uint32_t mod_g = 0;
};

struct BlowupTable {
    Divisor divisor;
    std::vector<GradedSubspace> powers; // R_1, R_2, ... at S-degrees 3, 6, ...
    std::vector<BlowupRow> rows;
};

struct DeriveOptions {
    std::uint32_t prime = 1000003;
    std::optional<std::array<PrimeField::Elt, 3>> params; // empty = sample
    std::uint64_t seed = 1;
    int cap = 9;
    int order_threshold = 200;
    int retries = 16;
};

// The shared derived package: algebra, curve, evaluator, central element.
// Construction retries parameter sampling until a non-degenerate triple is
// accepted (or the triple is fixed, in which case failures propagate).
class Workspace {
  public:
    explicit Workspace(const DeriveOptions& opt);
    explicit Workspace(const DeriveOptions& opt, const Presentation& pres);

    const DeriveOptions& options() const { return opt_; }
    std::array<PrimeField::Elt, 3> params_used() const { return params_; }
    int retries_used() const { return retries_; }

    const PrimeField& field() const { return alg_->field(); }
    const Algebra& algebra() const { return *alg_; }
    const CurveContext& curve() const { return *curve_; }
    const TwistedEvaluator& evaluator() const { return *eval_; }
    const CentralElement& g() const { return *g_; }

    // g * S_{n-3} inside the degree-n component ({0} for n < 3)
    const GradedSubspace& g_layer(int n) const;
    std::uint32_t mod_g_dim(const GradedSubspace& u) const;

    GradedSubspace v_of_divisor(const Divisor& d) const;
    BlowupTable r_of_d(const Divisor& d, int nmax) const;

  private:
    DeriveOptions opt_;
    std::array<PrimeField::Elt, 3> params_{0, 0, 0};
    int retries_ = 0;
    std::unique_ptr<Algebra> alg_;
    std::unique_ptr<CurveContext> curve_;
    std::unique_ptr<TwistedEvaluator> eval_;
    std::unique_ptr<CentralElement> g_;
    mutable std::mutex mu_;
    mutable std::map<int, GradedSubspace> g_layers_;

    void build_from(const Presentation& pres);
};

} // namespace skl
