#include "skl/curve.hpp"

#include <algorithm>
#include <map>

namespace skl {

using Elt = PrimeField::Elt;

ProjPoint normalize_point(const PrimeField& f, std::array<Elt, 3> v) {
    for (int i = 0; i < 3; ++i) {
        if (!f.is_zero(v[i])) {
            Elt s = f.inv(v[i]);
            ProjPoint p;
            for (int j = 0; j < 3; ++j) p.c[j] = f.mul(v[j], s);
            return p;
        }
    }
    throw DegeneracyError("zero vector is not a projective point");
}

std::string monomial_name(int idx) {
    const auto& e = kMonomialExponents[static_cast<std::size_t>(idx)];
    static const char vars[3] = {'x', 'y', 'z'};
    std::string s;
    for (int j = 0; j < 3; ++j) {
        if (e[j] == 0) continue;
        s += vars[j];
        if (e[j] > 1) {
            s += '^';
            s += static_cast<char>('0' + e[j]);
        }
    }
    return s;
}

Elt eval_cubic(const PrimeField& f, const PlaneCubic& e, const ProjPoint& p) {
    Elt acc = 0;
    for (int m = 0; m < 10; ++m) {
        if (f.is_zero(e.coeff[static_cast<std::size_t>(m)])) continue;
        Elt t = e.coeff[static_cast<std::size_t>(m)];
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < kMonomialExponents[static_cast<std::size_t>(m)][j]; ++k)
                t = f.mul(t, p.c[static_cast<std::size_t>(j)]);
        acc = f.add(acc, t);
    }
    return acc;
}

std::array<Elt, 3> grad_cubic(const PrimeField& f, const PlaneCubic& e, const ProjPoint& p) {
    std::array<Elt, 3> g{0, 0, 0};
    for (int m = 0; m < 10; ++m) {
        Elt c = e.coeff[static_cast<std::size_t>(m)];
        if (f.is_zero(c)) continue;
        const auto& exps = kMonomialExponents[static_cast<std::size_t>(m)];
        for (int j = 0; j < 3; ++j) {
            if (exps[j] == 0) continue;
            Elt t = f.mul(c, f.from_int(exps[j]));
            for (int i = 0; i < 3; ++i)
                for (int k = 0; k < exps[i] - (i == j ? 1 : 0); ++k)
                    t = f.mul(t, p.c[static_cast<std::size_t>(i)]);
            g[static_cast<std::size_t>(j)] = f.add(g[static_cast<std::size_t>(j)], t);
        }
    }
    return g;
}

PlaneCubic point_scheme(const Presentation& pres) {
    const PrimeField& f = pres.f;
    // lin[i][j][v]: coefficient of p_v in entry (i,j) of M(p)
    Elt lin[3][3][3] = {};
    for (int i = 0; i < 3; ++i)
        for (auto& [w2, coef] : pres.relations[static_cast<std::size_t>(i)].terms)
            lin[i][w2 % 3][w2 / 3] = f.add(lin[i][w2 % 3][w2 / 3], coef);

    std::map<std::array<int, 3>, int> mono_index;
    for (int m = 0; m < 10; ++m) mono_index[kMonomialExponents[static_cast<std::size_t>(m)]] = m;

    PlaneCubic e;
    static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                    {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    for (int pi = 0; pi < 6; ++pi) {
        bool even = pi < 3;
        for (int v0 = 0; v0 < 3; ++v0)
            for (int v1 = 0; v1 < 3; ++v1)
                for (int v2 = 0; v2 < 3; ++v2) {
                    Elt t = f.mul(f.mul(lin[0][perms[pi][0]][v0], lin[1][perms[pi][1]][v1]),
                                  lin[2][perms[pi][2]][v2]);
                    if (f.is_zero(t)) continue;
                    std::array<int, 3> exps{0, 0, 0};
                    ++exps[static_cast<std::size_t>(v0)];
                    ++exps[static_cast<std::size_t>(v1)];
                    ++exps[static_cast<std::size_t>(v2)];
                    auto& slot = e.coeff[static_cast<std::size_t>(mono_index[exps])];
                    slot = even ? f.add(slot, t) : f.sub(slot, t);
                }
    }
    bool all_zero = true;
    for (Elt c : e.coeff) all_zero = all_zero && f.is_zero(c);
    if (all_zero) throw DegeneracyError("multilinearized relation determinant vanishes identically");
    return e;
}

namespace {

bool proportional(const PrimeField& f, const ProjPoint& a, const ProjPoint& b) {
    for (int i = 0; i < 3; ++i) {
        int j = (i + 1) % 3;
        if (!f.is_zero(f.sub(f.mul(a.c[static_cast<std::size_t>(i)], b.c[static_cast<std::size_t>(j)]),
                             f.mul(a.c[static_cast<std::size_t>(j)], b.c[static_cast<std::size_t>(i)]))))
            return false;
    }
    return true;
}

} // namespace

CurveContext::CurveContext(const Presentation& pres, int order_threshold, Rng& rng)
    : pres_(pres), order_threshold_(order_threshold) {
    if (order_threshold < 1) throw UsageError("order threshold must be at least 1");
    const PrimeField& f = pres_.f;
    e_ = point_scheme(pres_);

    // The generic determinant is a Hesse-pencil member: equal coefficients on
    // the three cubes plus an xyz term.  Anything else means degenerate
    // parameters.
    const Elt cx = e_.coeff[0], cy = e_.coeff[6], cz = e_.coeff[9];
    for (int m = 0; m < 10; ++m)
        if (m != 0 && m != 4 && m != 6 && m != 9 &&
            !f.is_zero(e_.coeff[static_cast<std::size_t>(m)]))
            throw DegeneracyError("point scheme is not in the Hesse pencil");
    if (f.is_zero(cx) || cx != cy || cx != cz)
        throw DegeneracyError("point scheme cube coefficients are unequal or zero");
    Elt s = f.inv(cx);
    for (auto& c : e_.coeff) c = f.mul(c, s);
    lambda_ = e_.coeff[4];

    // Hesse singularity test: x^3+y^3+z^3+Lxyz is singular iff L^3 = -27
    Elt l3 = f.mul(lambda_, f.mul(lambda_, lambda_));
    if (l3 == f.from_int(-27)) throw DegeneracyError("singular cubic (lambda^3 = -27)");

    const Elt one = f.one(), w = f.omega(), w2 = f.mul(w, w);
    int idx = 0;
    for (Elt eta : {one, w, w2}) {
        inflections_[static_cast<std::size_t>(idx++)] = normalize_point(f, {one, f.neg(eta), 0});
        inflections_[static_cast<std::size_t>(idx++)] = normalize_point(f, {one, 0, f.neg(eta)});
        inflections_[static_cast<std::size_t>(idx++)] = normalize_point(f, {0, one, f.neg(eta)});
    }

    p0_ = inflections_[0]; // (1 : -1 : 0)
    if (!is_inflection(p0_)) {
        bool found = false;
        for (const auto& cand : inflections_)
            if (is_inflection(cand)) {
                p0_ = cand;
                found = true;
                break;
            }
        if (!found) throw DegeneracyError("no usable inflection basepoint");
    }

    r_ = sigma_once(p0_, false);
    if (auto k = order_of(r_, order_threshold_))
        throw DegeneracyError("translation point has order " + std::to_string(*k) +
                              " <= threshold " + std::to_string(order_threshold_));

    // translation constancy: sigma(p) - p must be the same point everywhere
    auto pts = sample_points(8, {}, rng);
    for (const auto& p : pts)
        if (sub(sigma_once(p, false), p) != r_)
            throw DegeneracyError("sigma is not a group translation on sampled points");
}

bool CurveContext::on_curve(const ProjPoint& p) const {
    return pres_.f.is_zero(eval_cubic(pres_.f, e_, p));
}

ProjPoint CurveContext::tangent_second_point(const ProjPoint& p) const {
    const PrimeField& f = pres_.f;
    auto g = grad_cubic(f, e_, p);
    // two-dimensional solution space of <grad, X> = 0; pick a solution
    // independent of p
    std::array<std::array<Elt, 3>, 3> cands = {{{g[1], f.neg(g[0]), 0},
                                                {g[2], 0, f.neg(g[0])},
                                                {0, g[2], f.neg(g[1])}}};
    for (const auto& cand : cands) {
        if (f.is_zero(cand[0]) && f.is_zero(cand[1]) && f.is_zero(cand[2])) continue;
        ProjPoint b = normalize_point(f, cand);
        if (!proportional(f, b, p)) return b;
    }
    throw DegeneracyError("singular point on the cubic");
}

ProjPoint CurveContext::third(const ProjPoint& p, const ProjPoint& q) const {
    const PrimeField& f = pres_.f;
    if (!on_curve(p) || !on_curve(q)) throw UsageError("third: point off the cubic");
    const bool tangent = (p == q);
    const ProjPoint b = tangent ? tangent_second_point(p) : q;

    // binary cubic G(s,t) = F(s*p + t*b), interpolated from four values
    auto combo = [&](Elt sc, Elt tc) {
        ProjPoint m;
        for (int i = 0; i < 3; ++i)
            m.c[static_cast<std::size_t>(i)] =
                f.add(f.mul(sc, p.c[static_cast<std::size_t>(i)]),
                      f.mul(tc, b.c[static_cast<std::size_t>(i)]));
        return m;
    };
    // G(1,0) = F(p) = 0, so G(1,1) = g21 + g12 + g03 and
    // G(1,2) = 2 g21 + 4 g12 + 8 g03
    const Elt two = f.from_int(2);
    const Elt g03 = eval_cubic(f, e_, b);
    const Elt r1 = f.sub(eval_cubic(f, e_, combo(1, 1)), g03);
    const Elt r2 = f.sub(eval_cubic(f, e_, combo(1, two)), f.mul(f.from_int(8), g03));
    const Elt g12 = f.mul(f.sub(r2, f.mul(two, r1)), f.inv(two));
    const Elt g21 = f.sub(r1, g12);

    std::array<Elt, 3> out;
    if (tangent) {
        if (!f.is_zero(g21)) throw DegeneracyError("tangent line misses double contact");
        // G = t^2 (g12 s + g03 t); remaining root (g03 : -g12)
        for (int i = 0; i < 3; ++i)
            out[static_cast<std::size_t>(i)] =
                f.sub(f.mul(g03, p.c[static_cast<std::size_t>(i)]),
                      f.mul(g12, b.c[static_cast<std::size_t>(i)]));
    } else {
        // G = s t (g21 s + g12 t); remaining root (g12 : -g21)
        for (int i = 0; i < 3; ++i)
            out[static_cast<std::size_t>(i)] =
                f.sub(f.mul(g12, p.c[static_cast<std::size_t>(i)]),
                      f.mul(g21, b.c[static_cast<std::size_t>(i)]));
    }
    return normalize_point(f, out);
}

ProjPoint CurveContext::add(const ProjPoint& p, const ProjPoint& q) const {
    return third(p0_, third(p, q));
}

ProjPoint CurveContext::neg(const ProjPoint& p) const { return third(p0_, p); }

ProjPoint CurveContext::sub(const ProjPoint& p, const ProjPoint& q) const {
    return add(p, neg(q));
}

ProjPoint CurveContext::mul_int(long long k, const ProjPoint& p) const {
    if (k < 0) return mul_int(-k, neg(p));
    ProjPoint acc = p0_, base = p;
    while (k) {
        if (k & 1) acc = add(acc, base);
        k >>= 1;
        if (k) base = add(base, base);
    }
    return acc;
}

std::optional<int> CurveContext::order_of(const ProjPoint& r, int bound) const {
    if (!on_curve(r)) throw UsageError("order_of: point off the cubic");
    ProjPoint acc = r;
    for (int k = 1; k <= bound; ++k) {
        if (acc == p0_) return k;
        acc = add(acc, r);
    }
    return std::nullopt;
}

bool CurveContext::is_inflection(const ProjPoint& p) const {
    if (!on_curve(p)) return false;
    return third(p, p) == p;
}

ProjPoint CurveContext::sigma_once(const ProjPoint& p, bool inverse) const {
    const PrimeField& f = pres_.f;
    if (!on_curve(p)) throw UsageError("sigma: point off the cubic");
    // forward: M(p) q = 0 with M[i][j] = sum coef * p_{first letter},
    //          second letter j free; inverse swaps the roles
    FMat m;
    m.ncols = 3;
    for (int i = 0; i < 3; ++i) {
        std::array<Elt, 3> row{0, 0, 0};
        for (auto& [w2, coef] : pres_.relations[static_cast<std::size_t>(i)].terms) {
            Word u1 = w2 / 3, u2 = w2 % 3;
            Word fixed = inverse ? u2 : u1, free = inverse ? u1 : u2;
            row[free] = f.add(row[free], f.mul(coef, p.c[fixed]));
        }
        FVec r;
        for (std::uint32_t j = 0; j < 3; ++j)
            if (!f.is_zero(row[j])) r.terms.push_back({j, row[j]});
        m.rows.push_back(std::move(r));
    }
    auto ker = kernel(f, m);
    if (ker.size() != 1)
        throw DegeneracyError("relation matrix at a point has rank != 2");
    std::array<Elt, 3> v{0, 0, 0};
    for (auto& [j, val] : ker[0].terms) v[j] = val;
    ProjPoint q = normalize_point(f, v);
    if (!on_curve(q)) throw DegeneracyError("sigma image left the cubic");
    return q;
}

ProjPoint CurveContext::sigma(const ProjPoint& p, long long k) const {
    ProjPoint q = p;
    for (long long i = 0; i < (k < 0 ? -k : k); ++i) q = sigma_once(q, k < 0);
    return q;
}

ProjPoint CurveContext::divisor_sum(const Divisor& d) const {
    ProjPoint acc = p0_;
    for (auto& [p, mult] : d.entries) acc = add(acc, mul_int(mult, p));
    return acc;
}

bool CurveContext::lin_equiv(const Divisor& d1, const Divisor& d2) const {
    validate_divisor(d1);
    validate_divisor(d2);
    return d1.degree() == d2.degree() && divisor_sum(d1) == divisor_sum(d2);
}

int CurveContext::rr_dim(int d, bool trivial_class) {
    if (d < 0) return 0;
    if (d == 0) return trivial_class ? 1 : 0;
    return d;
}

std::vector<ProjPoint> CurveContext::sample_points(
    int count, std::vector<std::pair<ProjPoint, int>> avoid, Rng& rng,
    std::uint64_t window) const {
    if (window == 0) throw UsageError("sampling window must be positive");
    int max_radius = 0;
    for (auto& [q, rad] : avoid) max_radius = std::max(max_radius, rad);

    // k * translation for |k| <= max radius, indexed k + max_radius
    std::vector<ProjPoint> orbit(static_cast<std::size_t>(2 * max_radius + 1));
    orbit[static_cast<std::size_t>(max_radius)] = p0_;
    ProjPoint fwd = p0_, bwd = p0_, nr = neg(r_);
    for (int k = 1; k <= max_radius; ++k) {
        fwd = add(fwd, r_);
        bwd = add(bwd, nr);
        orbit[static_cast<std::size_t>(max_radius + k)] = fwd;
        orbit[static_cast<std::size_t>(max_radius - k)] = bwd;
    }

    std::vector<ProjPoint> out;
    for (int i = 0; i < count; ++i) {
        bool accepted = false;
        for (int attempt = 0; attempt < 200 && !accepted; ++attempt) {
            const ProjPoint& infl = inflections_[static_cast<std::size_t>(rng.below(9))];
            long long m = static_cast<long long>(rng.below(window));
            ProjPoint cand = add(infl, mul_int(m, r_));
            bool bad = false;
            for (auto& [q, rad] : avoid) {
                ProjPoint diff = sub(cand, q);
                for (int k = -rad; k <= rad && !bad; ++k)
                    bad = (diff == orbit[static_cast<std::size_t>(max_radius + k)]);
                if (bad) break;
            }
            if (!bad) {
                out.push_back(cand);
                accepted = true;
            }
        }
        if (!accepted) throw ResourceError("point sampling exhausted its retry budget");
    }
    return out;
}

Divisor CurveContext::sample_divisor(int e, Rng& rng, int radius) const {
    Divisor d;
    std::vector<std::pair<ProjPoint, int>> avoid;
    for (int i = 0; i < e; ++i) {
        ProjPoint p = sample_points(1, avoid, rng)[0];
        avoid.push_back({p, radius});
        d.entries.push_back({p, 1});
    }
    return d;
}

void CurveContext::validate_divisor(const Divisor& d) const {
    for (std::size_t i = 0; i < d.entries.size(); ++i) {
        auto& [p, m] = d.entries[i];
        if (m != 1)
            throw UsageError("divisors with a point of multiplicity >= 2 are not supported");
        if (!on_curve(p)) throw UsageError("divisor point off the cubic");
        for (std::size_t j = i + 1; j < d.entries.size(); ++j)
            if (d.entries[j].first == p) throw UsageError("divisor points must be distinct");
    }
}

} // namespace skl
