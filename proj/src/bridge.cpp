#include "skl/bridge.hpp"

#include <algorithm>
#include <string>

namespace skl {

using Elt = PrimeField::Elt;

Elt TwistedEvaluator::eval_word(Word w, int n, const ProjPoint& p) const {
    const PrimeField& f = alg_.field();
    if (!curve_.on_curve(p)) throw UsageError("twisted evaluation needs a curve point");
    Elt acc = f.one();
    ProjPoint q = p;
    for (int j = 0; j < n; ++j) {
        acc = f.mul(acc, q.c[static_cast<std::size_t>(word_letter(w, n, j))]);
        if (j + 1 < n) q = curve_.sigma(q);
    }
    return acc;
}

std::vector<Elt> TwistedEvaluator::row(int n, const ProjPoint& p) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = rows_.find({n, p});
        if (it != rows_.end()) return it->second;
    }
    const PrimeField& f = alg_.field();
    if (!curve_.on_curve(p)) throw UsageError("twisted evaluation needs a curve point");
    std::vector<ProjPoint> orbit(static_cast<std::size_t>(std::max(n, 1)));
    orbit[0] = p;
    for (int j = 1; j < n; ++j) orbit[static_cast<std::size_t>(j)] = curve_.sigma(orbit[static_cast<std::size_t>(j - 1)]);

    const auto& words = alg_.context(n).standard_words;
    std::vector<Elt> out(words.size(), f.one());
    for (std::size_t i = 0; i < words.size(); ++i)
        for (int j = 0; j < n; ++j)
            out[i] = f.mul(out[i], orbit[static_cast<std::size_t>(j)]
                                       .c[static_cast<std::size_t>(word_letter(words[i], n, j))]);
    std::lock_guard<std::mutex> lock(mu_);
    return rows_.emplace(std::make_pair(n, p), std::move(out)).first->second;
}

Elt TwistedEvaluator::eval(const FVec& v, int n, const ProjPoint& p) const {
    const PrimeField& f = alg_.field();
    const auto r = row(n, p);
    Elt acc = f.zero();
    for (auto& [j, c] : v.terms) acc = f.add(acc, f.mul(c, r[j]));
    return acc;
}

GradedSubspace TwistedEvaluator::vanishing_space(int n, const std::vector<ProjPoint>& pts) const {
    const PrimeField& f = alg_.field();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!curve_.on_curve(pts[i])) throw UsageError("vanishing condition off the cubic");
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i] == pts[j])
                throw UsageError("repeated vanishing points (multiplicities unsupported)");
    }
    if (pts.empty()) return alg_.full_space(n);
    FMat m;
    m.ncols = alg_.dim(n);
    for (const auto& p : pts) m.rows.push_back(to_sparse(f, row(n, p)));
    FMat gens;
    gens.ncols = m.ncols;
    gens.rows = kernel(f, m);
    return {n, FSub(f, std::move(gens))};
}

GradedSubspace TwistedEvaluator::point_space(const ProjPoint& p) const {
    return vanishing_space(1, {p});
}

CentralElement derive_central_element(const Algebra& alg, const CurveContext& curve,
                                      const TwistedEvaluator& ev, Rng& rng,
                                      int sample_size) {
    const PrimeField& f = alg.field();
    Divisor pts = curve.sample_divisor(sample_size, rng);
    std::vector<ProjPoint> sample;
    for (auto& [p, m] : pts.entries) sample.push_back(p);

    GradedSubspace ker = ev.vanishing_space(3, sample);
    if (ker.dim() != 1)
        throw DegeneracyError("curve evaluation kernel on the degree-3 component has dim " +
                              std::to_string(ker.dim()) + ", expected 1");
    // rank stability: the last 4 points were not needed
    std::vector<ProjPoint> fewer(sample.begin(), sample.end() - 4);
    if (!ev.vanishing_space(3, fewer).space.equals(f, ker.space))
        throw DegeneracyError("evaluation rank is not saturated at the configured sample size");

    CentralElement g;
    g.coords = ker.space.basis()[0];
    Elt s = f.inv(g.coords.terms.front().second);
    scale(f, g.coords, s);
    FMat m;
    m.ncols = alg.dim(3);
    m.rows = {g.coords};
    g.span = {3, FSub(f, std::move(m))};

    if (!alg.is_central(g.span))
        throw DegeneracyError("degree-3 evaluation kernel is not central");
    for (const auto& p : curve.sample_points(10, {}, rng))
        if (!f.is_zero(ev.eval(g.coords, 3, p)))
            throw DegeneracyError("central element fails to vanish at a fresh curve point");
    return g;
}

Workspace::Workspace(const DeriveOptions& opt, const Presentation& pres) : opt_(opt) {
    params_ = {pres.a, pres.b, pres.c};
    build_from(pres);
}

Workspace::Workspace(const DeriveOptions& opt) : opt_(opt) {
    PrimeField f(opt.prime);
    if (opt_.params) {
        params_ = *opt_.params;
        build_from(Presentation(f, params_[0], params_[1], params_[2]));
        return;
    }
    Rng prng = Rng::stream(opt.seed, "params");
    for (int attempt = 0; attempt <= opt.retries; ++attempt) {
        params_ = {static_cast<Elt>(1 + prng.below(f.modulus() - 1)),
                   static_cast<Elt>(1 + prng.below(f.modulus() - 1)),
                   static_cast<Elt>(1 + prng.below(f.modulus() - 1))};
        try {
            build_from(Presentation(f, params_[0], params_[1], params_[2]));
            retries_ = attempt;
            return;
        } catch (const DegeneracyError&) {
            if (attempt == opt.retries) throw;
        }
    }
}

void Workspace::build_from(const Presentation& pres) {
    if (opt_.cap < 4)
        throw UsageError("degree cap must be at least 4: certifying centrality "
                         "multiplies the degree-3 kernel element by degree 1");
    alg_ = std::make_unique<Algebra>(pres, opt_.cap);
    // genericity gate: the degree-3 component must have the generic dimension
    for (int n = 0; n <= std::min(3, opt_.cap); ++n) {
        std::uint32_t expect = static_cast<std::uint32_t>((n + 2) * (n + 1) / 2);
        if (alg_->dim(n) != expect)
            throw DegeneracyError("degree-" + std::to_string(n) +
                                  " component has dimension " + std::to_string(alg_->dim(n)) +
                                  ", expected " + std::to_string(expect));
    }
    Rng geom_rng = Rng::stream(opt_.seed, "geometry");
    curve_ = std::make_unique<CurveContext>(alg_->pres(), opt_.order_threshold, geom_rng);
    eval_ = std::make_unique<TwistedEvaluator>(*alg_, *curve_);
    Rng central_rng = Rng::stream(opt_.seed, "central");
    g_ = std::make_unique<CentralElement>(
        derive_central_element(*alg_, *curve_, *eval_, central_rng));
}

const GradedSubspace& Workspace::g_layer(int n) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = g_layers_.find(n);
    if (it != g_layers_.end()) return it->second;
    GradedSubspace layer;
    if (n < 3) {
        layer = {n, FSub(field(), FMat{alg_->dim(n), {}})};
    } else {
        layer = alg_->mult(g_->span, alg_->full_space(n - 3));
    }
    return g_layers_.emplace(n, std::move(layer)).first->second;
}

std::uint32_t Workspace::mod_g_dim(const GradedSubspace& u) const {
    return alg_->quotient_dim(u, g_layer(u.degree));
}

GradedSubspace Workspace::v_of_divisor(const Divisor& d) const {
    int e = d.degree();
    if (e < 0 || e > 7) throw UsageError("divisor degree must be between 0 and 7");
    curve_->validate_divisor(d);
    std::vector<ProjPoint> pts;
    for (auto& [p, m] : d.entries) pts.push_back(p);
    GradedSubspace v = eval_->vanishing_space(3, pts);
    if (v.dim() != static_cast<std::uint32_t>(10 - e))
        throw DegeneracyError("divisor conditions are not independent (dim " +
                              std::to_string(v.dim()) + " at degree " + std::to_string(e) + ")");
    if (!v.space.member(field(), g_->coords))
        throw DegeneracyError("central element escaped a vanishing space");
    return v;
}

BlowupTable Workspace::r_of_d(const Divisor& d, int nmax) const {
    BlowupTable t;
    t.divisor = d;
    GradedSubspace v = v_of_divisor(d);
    t.powers = alg_->closure(v, nmax);
    for (int n = 1; n <= nmax; ++n) {
        const GradedSubspace& rn = t.powers[static_cast<std::size_t>(n - 1)];
        t.rows.push_back({n, rn.dim(), mod_g_dim(rn)});
    }
    return t;
}

} // namespace skl
