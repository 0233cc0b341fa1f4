#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "skl/algebra.hpp"
#include "skl/rng.hpp"

namespace skl {

struct ProjPoint {
    std::array<PrimeField::Elt, 3> c{0, 0, 0};
    bool operator==(const ProjPoint&) const = default;
    bool operator<(const ProjPoint& o) const { return c < o.c; }
};

// canonical representative: first nonzero coordinate scaled to 1
ProjPoint normalize_point(const PrimeField& f, std::array<PrimeField::Elt, 3> v);

// Degree-3 monomial exponents in a fixed order; index 0 is x^3, index 4 is
// xyz, index 9 is z^3.
inline constexpr std::array<std::array<int, 3>, 10> kMonomialExponents = {{
    {3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1},
    {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3}}};

std::string monomial_name(int idx);

struct PlaneCubic {
    std::array<PrimeField::Elt, 10> coeff{};
};

PrimeField::Elt eval_cubic(const PrimeField& f, const PlaneCubic& e, const ProjPoint& p);
std::array<PrimeField::Elt, 3> grad_cubic(const PrimeField& f, const PlaneCubic& e,
                                          const ProjPoint& p);

// det of the 3x3 matrix of linear forms obtained by reading each relation as
// a bilinear pairing (first letter evaluated at p, second letter left free)
PlaneCubic point_scheme(const Presentation& pres);

struct Divisor {
    std::vector<std::pair<ProjPoint, int>> entries; // (point, multiplicity)

    int degree() const {
        int d = 0;
        for (auto& [p, m] : entries) d += m;
        return d;
    }
};

// The derived geometric package: Hesse-normalized cubic, inflection
// basepoint, translation point with an order certificate, group law, sigma.
class CurveContext {
  public:
    CurveContext(const Presentation& pres, int order_threshold, Rng& rng);

    const PrimeField& field() const { return pres_.f; }
    const PlaneCubic& cubic() const { return e_; }
    PrimeField::Elt hesse_lambda() const { return lambda_; }
    const ProjPoint& basepoint() const { return p0_; }
    const ProjPoint& translation() const { return r_; }
    int order_exceeds() const { return order_threshold_; }
    const std::array<ProjPoint, 9>& inflections() const { return inflections_; }

    bool on_curve(const ProjPoint& p) const;
    bool is_inflection(const ProjPoint& p) const;

    // third intersection of the line through p and q (tangent when p == q)
    ProjPoint third(const ProjPoint& p, const ProjPoint& q) const;
    ProjPoint add(const ProjPoint& p, const ProjPoint& q) const;
    ProjPoint neg(const ProjPoint& p) const;
    ProjPoint sub(const ProjPoint& p, const ProjPoint& q) const;
    ProjPoint mul_int(long long k, const ProjPoint& p) const;

    // smallest k in [1, bound] with k*r = basepoint, if any
    std::optional<int> order_of(const ProjPoint& r, int bound) const;

    ProjPoint sigma(const ProjPoint& p, long long k = 1) const;

    bool lin_equiv(const Divisor& d1, const Divisor& d2) const;
    ProjPoint divisor_sum(const Divisor& d) const;

    // genus-1 section count for a degree-d class
    static int rr_dim(int d, bool trivial_class);

    // points of the form inflection + m*translation with m < window,
    // rejecting any candidate within the sigma-orbit radius of an avoided
    // point; 200 rejected attempts per point exhaust the retry budget
    std::vector<ProjPoint> sample_points(int count,
                                         std::vector<std::pair<ProjPoint, int>> avoid,
                                         Rng& rng, std::uint64_t window = 1000000) const;
    Divisor sample_divisor(int e, Rng& rng, int radius = 60) const;

    // distinct multiplicity-1 points on the cubic
    void validate_divisor(const Divisor& d) const;

  private:
    Presentation pres_;
    PlaneCubic e_;
    PrimeField::Elt lambda_;
    std::array<ProjPoint, 9> inflections_;
    ProjPoint p0_, r_;
    int order_threshold_;

    ProjPoint sigma_once(const ProjPoint& p, bool inverse) const;
    ProjPoint tangent_second_point(const ProjPoint& p) const;
};

} // namespace skl
