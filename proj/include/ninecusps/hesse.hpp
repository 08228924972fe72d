#pragma once

#include <array>
#include <string>
#include <vector>

#include "ninecusps/eisenstein.hpp"
#include "ninecusps/lattice.hpp"
#include "ninecusps/matrix.hpp"
#include "ninecusps/polynomial.hpp"

namespace ninecusps {

// Point of the projective plane over Q(w); equality is equality up to a
// nonzero scalar. Also used for points of the dual plane (lines read as dual
// coordinates).
class ProjPoint {
  public:
    ProjPoint(Eisenstein x0, Eisenstein x1, Eisenstein x2);

    const std::array<Eisenstein, 3>& coords() const { return c_; }
    const Eisenstein& operator[](int i) const { return c_[i]; }

    // Scales the first nonzero coordinate to 1.
    ProjPoint normalized() const;

    friend bool operator==(const ProjPoint& p, const ProjPoint& q);

    std::string to_string() const;

  private:
    std::array<Eisenstein, 3> c_;
};

// Line of the projective plane in dual coordinates; same scale semantics.
class ProjLine {
  public:
    ProjLine(Eisenstein a0, Eisenstein a1, Eisenstein a2);

    const std::array<Eisenstein, 3>& coeffs() const { return c_; }
    ProjLine normalized() const;
    ProjPoint as_dual_point() const { return {c_[0], c_[1], c_[2]}; }

    friend bool operator==(const ProjLine& k, const ProjLine& l);

    std::string to_string() const;

  private:
    std::array<Eisenstein, 3> c_;
};

// Exact incidence: the defining dot product vanishes.
bool incident(const ProjLine& l, const ProjPoint& p);

// The cubic x0^3 + x1^3 + x2^3 + 3 lambda x0 x1 x2.
struct HesseCubic {
    Eisenstein lambda;
    HomogPoly poly;

    explicit HesseCubic(const Eisenstein& lambda);
};

enum class CubicKind { Smooth, Singular, Fermat };

std::string to_string(CubicKind kind);

// Fermat for lambda = 0; Singular exactly when the three partial derivatives
// share a projective zero, which happens exactly at lambda^3 = -1. The closed
// form is confirmed against an elimination-matrix oracle on every call.
CubicKind smoothness_check(const HesseCubic& c);

// The oracle behind smoothness_check: degree-4 multiples of the gradient
// quadrics span all quartics exactly when the gradient system has no
// projective zero (the quadrics then form a regular sequence, so the ideal
// contains every form of degree 4).
bool gradient_common_zero(const HesseCubic& c);

// The nine flexes (0:1:-w^k), (1:0:-w^k), (1:-w^k:0), each verified to lie on
// the curve with vanishing Hessian determinant. Family order: x0 = 0 first
// (k = 0,1,2), then x1 = 0, then x2 = 0.
std::vector<ProjPoint> flexes(const HesseCubic& c);

// Hessian determinant of the cubic, as a form.
HomogPoly hessian_determinant(const HesseCubic& c);

enum class Symmetry { Rotate, Scale };  // coordinate rotation / omega scaling

// Point action: Rotate sends (x0:x1:x2) to (x2:x0:x1), Scale multiplies x_i
// by w^i. Both fix the Hesse cubic and permute its flexes.
ProjPoint symmetry_action(Symmetry s, const ProjPoint& p);

// Induced action on lines (inverse-transpose on dual coordinates).
ProjLine symmetry_action_dual(Symmetry s, const ProjLine& l);

// Labels the flexes by F3^2 so the two symmetries act as the standard
// translations; the 12 collinear flex triples then match the affine lines.
struct FlexLabeling {
    std::vector<ProjPoint> flexes;                    // index order as above
    std::array<std::array<int, 2>, 9> labels;         // labels[i] = (a, b)
    std::vector<std::array<int, 3>> collinear_triples;  // 12 sorted index triples
};

FlexLabeling flex_labeling(const HesseCubic& c);

// Tangent line at a flex: the gradient, checked to meet the curve with
// multiplicity three there.
ProjLine inflectional_tangent(const HesseCubic& c, const ProjPoint& flex);

// Conic in dual coordinates given by a symmetric matrix.
struct ConicForm {
    Matrix<Eisenstein> m;  // 3x3 symmetric

    Eisenstein evaluate(const ProjPoint& dual_point) const;
    bool nondegenerate() const;
    HomogPoly form() const;
};

// The conic xi0*xi1 + lambda*xi2^2 touched by the six inflectional tangents
// of the x0 = 0 / x1 = 0 flex families.
ConicForm standard_conic(const Eisenstein& lambda);

// A pair of parallel lines of flexes, by flex index.
struct FlexLinePair {
    std::array<int, 3> first;
    std::array<int, 3> second;
};

// All pairs of distinct parallel collinear triples (12 for the affine plane).
std::vector<FlexLinePair> parallel_flex_pairs(const FlexLabeling& labeling);

// The conic touched by the six tangents of the pair: the standard conic
// transported by the dual symmetry action when the pair is reachable from the
// x0/x1 pair, otherwise fitted exactly through the six dual points.
ConicForm conic_for_pair(const HesseCubic& c, const FlexLabeling& labeling,
                         const FlexLinePair& pair);

// True when all six tangents of the pair lie on a common nondegenerate conic,
// evaluated exactly.
bool conic_tangency_check(const HesseCubic& c, const FlexLabeling& labeling,
                          const FlexLinePair& pair);

// The dual sextic and the nine dual points of the inflectional tangents.
struct DualCurve {
    HomogPoly sextic;                   // degree 6, primitive-normalized
    std::vector<ProjPoint> cusp_duals;  // tangents at the nine flexes
};

// Dual curve of the cubic, eliminated from {C = 0, xi parallel to grad C} by
// a Sylvester resultant, with extraneous coordinate factors divided off.
// Requires a smooth non-Fermat cubic with rational lambda.
DualCurve dual_sextic(const HesseCubic& c);

// Independent elimination route for cross-checks: the discriminant of the
// cubic restricted to the moving line, cleared of its coordinate factor.
HomogPoly dual_sextic_discriminant_route(const HesseCubic& c);

// Local data of the dual curve at one dual point.
struct CuspLocalData {
    ProjPoint point;
    bool on_curve;
    bool singular;           // both partials vanish
    bool quadratic_rank_one; // quadratic part a perfect square
    bool is_a2;              // and the repeated factor misses the cubic part
};

CuspLocalData classify_dual_point(const DualCurve& dual, const ProjPoint& p);

// Local intersection numbers of the conic with the dual sextic at the six
// distinguished cusps (the dual points of the pair's tangent families).
struct ConicIntersection {
    std::vector<int> multiplicities;  // per cusp, expected 2 each
    int total;                        // expected 12 = deg(conic) * deg(sextic)
    bool conic_covers_all;            // no intersection outside the cusps
    bool tangents_differ;             // conic tangent != cuspidal tangent everywhere
};

ConicIntersection conic_cusp_intersection(const DualCurve& dual, const ConicForm& conic,
                                          const std::vector<ProjPoint>& cusps);

// Solution of the pairing system for the difference class R - R' over the
// basis E1..E9, E1'..E9', H with H^2 = 2 and H orthogonal to the E's:
// coefficients -1/3 on E_i, 1/3 on E_i' for i <= 6, zero elsewhere.
struct RRClassSolution {
    RationalClass diff;                 // 19 coefficients in basis order
    Matrix<Rational> gram;              // the 19x19 pairing matrix used
    std::vector<Rational> pairings;     // re-substituted pairings, all exact
};

RRClassSolution solve_rr_class();

}  // namespace ninecusps
