#include "ninecusps/hesse.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ninecusps {

namespace {

using P1 = Polynomial<1>;
using P2 = Polynomial<2>;
using P3 = Polynomial<3>;
using P5 = Polynomial<5>;

bool proportional(const std::array<Eisenstein, 3>& p, const std::array<Eisenstein, 3>& q) {
    return (p[0] * q[1] - p[1] * q[0]).is_zero() && (p[0] * q[2] - p[2] * q[0]).is_zero() &&
           (p[1] * q[2] - p[2] * q[1]).is_zero();
}

std::string triple_to_string(const std::array<Eisenstein, 3>& c, char open, char close) {
    std::ostringstream out;
    out << open << c[0].to_string() << " : " << c[1].to_string() << " : " << c[2].to_string()
        << close;
    return out.str();
}

std::array<Eisenstein, 3> normalized_triple(const std::array<Eisenstein, 3>& c) {
    for (const Eisenstein& v : c) {
        if (v.is_zero()) continue;
        const Eisenstein inv = v.inverse();
        return {c[0] * inv, c[1] * inv, c[2] * inv};
    }
    throw std::logic_error("projective: normalizing the zero triple");
}

}  // namespace

ProjPoint::ProjPoint(Eisenstein x0, Eisenstein x1, Eisenstein x2)
    : c_{std::move(x0), std::move(x1), std::move(x2)} {
    if (c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero())
        throw std::invalid_argument("point: all coordinates zero");
}

ProjPoint ProjPoint::normalized() const {
    const auto n = normalized_triple(c_);
    return {n[0], n[1], n[2]};
}

bool operator==(const ProjPoint& p, const ProjPoint& q) { return proportional(p.c_, q.c_); }

std::string ProjPoint::to_string() const {
    return triple_to_string(normalized_triple(c_), '(', ')');
}

ProjLine::ProjLine(Eisenstein a0, Eisenstein a1, Eisenstein a2)
    : c_{std::move(a0), std::move(a1), std::move(a2)} {
    if (c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero())
        throw std::invalid_argument("line: all coefficients zero");
}

ProjLine ProjLine::normalized() const {
    const auto n = normalized_triple(c_);
    return {n[0], n[1], n[2]};
}

bool operator==(const ProjLine& k, const ProjLine& l) { return proportional(k.c_, l.c_); }

std::string ProjLine::to_string() const {
    return triple_to_string(normalized_triple(c_), '[', ']');
}

bool incident(const ProjLine& l, const ProjPoint& p) {
    Eisenstein acc(0);
    for (int i = 0; i < 3; ++i) acc += l.coeffs()[i] * p.coords()[i];
    return acc.is_zero();
}

HesseCubic::HesseCubic(const Eisenstein& lambda_in) : lambda(lambda_in) {
    const P3 x0 = P3::variable(0), x1 = P3::variable(1), x2 = P3::variable(2);
    poly = x0.pow(3) + x1.pow(3) + x2.pow(3) + (Eisenstein(3) * lambda) * (x0 * x1 * x2);
}

std::string to_string(CubicKind kind) {
    switch (kind) {
        case CubicKind::Smooth: return "Smooth";
        case CubicKind::Singular: return "Singular";
        case CubicKind::Fermat: return "Fermat";
    }
    return "?";
}

bool gradient_common_zero(const HesseCubic& c) {
    // Degree-4 piece of the ideal generated by the three gradient quadrics.
    // The quadrics have no common projective zero exactly when they form a
    // regular sequence, in which case the quotient's Hilbert series (1 + t)^3
    // vanishes from degree 4 on: the 18 quartic multiples must span all 15
    // quartic monomials. Conversely a rank deficit certifies a common zero.
    std::array<P3, 3> partials;
    for (int i = 0; i < 3; ++i) partials[i] = c.poly.derivative(i);

    std::vector<std::array<int, 3>> deg2, deg4;
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; a + b <= 2; ++b) deg2.push_back({a, b, 2 - a - b});
    for (int a = 0; a <= 4; ++a)
        for (int b = 0; a + b <= 4; ++b) deg4.push_back({a, b, 4 - a - b});

    Matrix<Eisenstein> mac(3 * deg2.size(), deg4.size(), Eisenstein(0));
    std::size_t row = 0;
    for (const P3& partial : partials) {
        for (const auto& mono : deg2) {
            const P3 multiple = P3::monomial(mono, Eisenstein(1)) * partial;
            for (std::size_t col = 0; col < deg4.size(); ++col)
                mac.at(row, col) = multiple.coefficient(deg4[col]);
            ++row;
        }
    }
    return rank(mac) < deg4.size();
}

CubicKind smoothness_check(const HesseCubic& c) {
    CubicKind kind = CubicKind::Smooth;
    if (c.lambda.is_zero()) kind = CubicKind::Fermat;
    else if (c.lambda * c.lambda * c.lambda == Eisenstein(-1)) kind = CubicKind::Singular;

    // The closed form is only trusted because the elimination oracle agrees.
    const bool has_zero = gradient_common_zero(c);
    if (has_zero != (kind == CubicKind::Singular))
        throw std::logic_error("smoothness: closed form and gradient oracle disagree");
    return kind;
}

HomogPoly hessian_determinant(const HesseCubic& c) {
    std::array<std::array<P3, 3>, 3> h;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) h[i][j] = c.poly.derivative(i).derivative(j);
    return h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
           h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
           h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
}

std::vector<ProjPoint> flexes(const HesseCubic& c) {
    if (smoothness_check(c) == CubicKind::Singular)
        throw std::invalid_argument("flexes: cubic is singular");

    const HomogPoly hess = hessian_determinant(c);
    std::vector<ProjPoint> out;
    for (int family = 0; family < 3; ++family) {
        for (long k = 0; k < 3; ++k) {
            const Eisenstein mw = -Eisenstein::omega_pow(k);
            ProjPoint p = family == 0   ? ProjPoint(Eisenstein(0), Eisenstein(1), mw)
                          : family == 1 ? ProjPoint(Eisenstein(1), Eisenstein(0), mw)
                                        : ProjPoint(Eisenstein(1), mw, Eisenstein(0));
            if (!c.poly.evaluate(p.coords()).is_zero())
                throw std::logic_error("flexes: point misses the curve");
            if (!hess.evaluate(p.coords()).is_zero())
                throw std::logic_error("flexes: Hessian does not vanish");
            out.push_back(std::move(p));
        }
    }
    return out;
}

ProjPoint symmetry_action(Symmetry s, const ProjPoint& p) {
    const auto& c = p.coords();
    if (s == Symmetry::Rotate) return {c[2], c[0], c[1]};
    return {c[0], Eisenstein::omega() * c[1], Eisenstein::omega_pow(2) * c[2]};
}

ProjLine symmetry_action_dual(Symmetry s, const ProjLine& l) {
    const auto& c = l.coeffs();
    // Inverse-transpose of the point action: the rotation is its own
    // inverse-transpose, the scaling inverts the powers of omega.
    if (s == Symmetry::Rotate) return {c[2], c[0], c[1]};
    return {c[0], Eisenstein::omega_pow(2) * c[1], Eisenstein::omega() * c[2]};
}

FlexLabeling flex_labeling(const HesseCubic& c) {
    FlexLabeling out;
    out.flexes = flexes(c);

    const ProjPoint base = out.flexes[0];
    std::array<bool, 9> hit{};
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) {
            ProjPoint p = base;
            for (int i = 0; i < b; ++i) p = symmetry_action(Symmetry::Scale, p);
            for (int i = 0; i < a; ++i) p = symmetry_action(Symmetry::Rotate, p);
            int index = -1;
            for (int i = 0; i < 9; ++i)
                if (out.flexes[i] == p) index = i;
            if (index < 0) throw std::logic_error("labeling: orbit left the flex set");
            if (hit[index]) throw std::logic_error("labeling: action is not transitive");
            hit[index] = true;
            out.labels[index] = {a, b};
        }
    }

    for (int i = 0; i < 9; ++i)
        for (int j = i + 1; j < 9; ++j)
            for (int k = j + 1; k < 9; ++k) {
                Matrix<Eisenstein> m(3, 3);
                for (int col = 0; col < 3; ++col) {
                    m.at(0, col) = out.flexes[i].coords()[col];
                    m.at(1, col) = out.flexes[j].coords()[col];
                    m.at(2, col) = out.flexes[k].coords()[col];
                }
                if (det_exact(m).is_zero()) out.collinear_triples.push_back({i, j, k});
            }
    if (out.collinear_triples.size() != 12)
        throw std::logic_error("labeling: expected 12 collinear triples");

    // Collinear triples must be exactly the affine lines of the label plane.
    std::set<std::set<std::pair<int, int>>> affine_lines;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (const auto& [da, db] :
                 std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {1, 1}, {1, 2}}) {
                std::set<std::pair<int, int>> line;
                for (int s = 0; s < 3; ++s)
                    line.insert({(a + s * da) % 3, (b + s * db) % 3});
                affine_lines.insert(line);
            }
    if (affine_lines.size() != 12) throw std::logic_error("labeling: affine-plane bookkeeping");

    std::set<std::set<std::pair<int, int>>> label_triples;
    for (const auto& t : out.collinear_triples) {
        std::set<std::pair<int, int>> line;
        for (int idx : t) line.insert({out.labels[idx][0], out.labels[idx][1]});
        label_triples.insert(line);
    }
    if (label_triples != affine_lines)
        throw std::logic_error("labeling: collinear triples are not the affine lines");
    return out;
}

ProjLine inflectional_tangent(const HesseCubic& c, const ProjPoint& p) {
    if (!c.poly.evaluate(p.coords()).is_zero())
        throw std::invalid_argument("tangent: point not on the curve");

    const auto& x = p.coords();
    std::array<Eisenstein, 3> grad;
    for (int i = 0; i < 3; ++i) grad[i] = c.poly.derivative(i).evaluate(x);
    ProjLine l(grad[0], grad[1], grad[2]);
    if (!incident(l, p)) throw std::logic_error("tangent: gradient line misses the point");

    // Second point spanning the line; the cross product lies on l and is
    // independent of p unless l and p are proportional, which cannot happen
    // here (the tangent would be isotropic through its own contact point).
    const auto& a = l.coeffs();
    std::array<Eisenstein, 3> q{a[1] * x[2] - a[2] * x[1], a[2] * x[0] - a[0] * x[2],
                                a[0] * x[1] - a[1] * x[0]};
    if (q[0].is_zero() && q[1].is_zero() && q[2].is_zero())
        throw std::logic_error("tangent: degenerate span");

    // Restrict the cubic to s*p + t*q: a flex means a triple root at t = 0.
    std::array<P2, 3> args;
    for (int i = 0; i < 3; ++i)
        args[i] = Eisenstein(x[i]) * P2::variable(0) + Eisenstein(q[i]) * P2::variable(1);
    const P2 restricted = c.poly.substitute<2>(args);
    for (int texp = 0; texp <= 2; ++texp)
        if (!restricted.coefficient({3 - texp, texp}).is_zero())
            throw std::logic_error("tangent: contact multiplicity below three");
    return l;
}

Eisenstein ConicForm::evaluate(const ProjPoint& dual_point) const {
    const auto& x = dual_point.coords();
    Eisenstein acc(0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) acc += x[i] * m.at(i, j) * x[j];
    return acc;
}

bool ConicForm::nondegenerate() const { return !det_exact(m).is_zero(); }

HomogPoly ConicForm::form() const {
    P3 out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::array<int, 3> e{};
            e[i] += 1;
            e[j] += 1;
            out += P3::monomial(e, m.at(i, j));
        }
    return out;
}

ConicForm standard_conic(const Eisenstein& lambda) {
    Matrix<Eisenstein> m(3, 3, Eisenstein(0));
    m.at(0, 1) = Eisenstein(make_rational(1, 2));
    m.at(1, 0) = Eisenstein(make_rational(1, 2));
    m.at(2, 2) = lambda;
    return {m};
}

std::vector<FlexLinePair> parallel_flex_pairs(const FlexLabeling& labeling) {
    std::vector<FlexLinePair> out;
    const auto& ts = labeling.collinear_triples;
    for (std::size_t i = 0; i < ts.size(); ++i)
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
            bool disjoint = true;
            for (int a : ts[i])
                for (int b : ts[j]) disjoint &= a != b;
            if (disjoint) out.push_back({ts[i], ts[j]});
        }
    return out;
}

namespace {

std::vector<ProjPoint> pair_dual_points(const HesseCubic& c, const FlexLabeling& labeling,
                                        const FlexLinePair& pair) {
    std::vector<ProjPoint> duals;
    for (const auto& triple : {pair.first, pair.second})
        for (int idx : triple)
            duals.push_back(inflectional_tangent(c, labeling.flexes[idx]).as_dual_point());
    return duals;
}

Matrix<Eisenstein> symmetry_matrix(int rotations, int scalings) {
    Matrix<Eisenstein> g = Matrix<Eisenstein>::identity(3);
    for (int r = 0; r < rotations; ++r) {
        Matrix<Eisenstein> rot(3, 3, Eisenstein(0));
        rot.at(0, 2) = Eisenstein(1);
        rot.at(1, 0) = Eisenstein(1);
        rot.at(2, 1) = Eisenstein(1);
        g = rot * g;
    }
    for (int s = 0; s < scalings; ++s) {
        Matrix<Eisenstein> sc(3, 3, Eisenstein(0));
        sc.at(0, 0) = Eisenstein(1);
        sc.at(1, 1) = Eisenstein::omega();
        sc.at(2, 2) = Eisenstein::omega_pow(2);
        g = sc * g;
    }
    return g;
}

}  // namespace

ConicForm conic_for_pair(const HesseCubic& c, const FlexLabeling& labeling,
                         const FlexLinePair& pair) {
    const CubicKind kind = smoothness_check(c);
    if (kind == CubicKind::Fermat)
        throw std::invalid_argument("conic: degenerate for the Fermat cubic");
    if (kind == CubicKind::Singular) throw std::invalid_argument("conic: cubic is singular");

    const auto duals = pair_dual_points(c, labeling, pair);
    const ConicForm base = standard_conic(c.lambda);

    // Transport of the base conic under the dual symmetry action reaches the
    // coordinate-triangle pairs; try those first.
    for (int rot = 0; rot < 3; ++rot) {
        for (int sc = 0; sc < 3; ++sc) {
            const Matrix<Eisenstein> g = symmetry_matrix(rot, sc);
            const ConicForm moved{g * base.m * g.transposed()};
            bool all = true;
            for (const ProjPoint& d : duals) all &= moved.evaluate(d).is_zero();
            if (all) return moved;
        }
    }

    // Otherwise fit the conic through the six dual points exactly.
    Matrix<Eisenstein> sys(duals.size(), 6, Eisenstein(0));
    for (std::size_t r = 0; r < duals.size(); ++r) {
        const auto& d = duals[r].coords();
        sys.at(r, 0) = d[0] * d[0];
        sys.at(r, 1) = d[1] * d[1];
        sys.at(r, 2) = d[2] * d[2];
        sys.at(r, 3) = Eisenstein(2) * d[0] * d[1];
        sys.at(r, 4) = Eisenstein(2) * d[0] * d[2];
        sys.at(r, 5) = Eisenstein(2) * d[1] * d[2];
    }
    const auto kernel = nullspace(sys);
    if (kernel.size() != 1)
        throw std::logic_error("conic: six tangents do not determine a unique conic");
    const auto& v = kernel[0];
    Matrix<Eisenstein> m(3, 3, Eisenstein(0));
    m.at(0, 0) = v[0];
    m.at(1, 1) = v[1];
    m.at(2, 2) = v[2];
    m.at(0, 1) = m.at(1, 0) = v[3];
    m.at(0, 2) = m.at(2, 0) = v[4];
    m.at(1, 2) = m.at(2, 1) = v[5];
    return {m};
}

bool conic_tangency_check(const HesseCubic& c, const FlexLabeling& labeling,
                          const FlexLinePair& pair) {
    const ConicForm conic = conic_for_pair(c, labeling, pair);
    if (!conic.nondegenerate()) return false;
    for (const ProjPoint& d : pair_dual_points(c, labeling, pair))
        if (!conic.evaluate(d).is_zero()) return false;
    return true;
}

namespace {

// Strips every coordinate factor: divides by xi_i while all terms contain it.
P3 strip_coordinate_factors(P3 f) {
    for (int var = 0; var < 3; ++var) {
        while (true) {
            auto q = P3::try_divide(f, P3::variable(var));
            if (!q) break;
            f = *q;
        }
    }
    return f;
}

}  // namespace

DualCurve dual_sextic(const HesseCubic& c) {
    if (smoothness_check(c) != CubicKind::Smooth)
        throw std::invalid_argument("dual: cubic must be smooth and non-Fermat");
    if (!c.lambda.is_rational())
        throw std::invalid_argument("dual: lambda must be rational");

    // Variables of P5: x0, x1 keep the curve point, xi0..xi2 the dual point.
    // On the chart xi2 != 0 the incidence xi . x = 0 pins
    // x2 = -(xi0 x0 + xi1 x1)/xi2; clearing denominators scales x0, x1 by xi2.
    const P5 x0 = P5::variable(0), x1 = P5::variable(1);
    const P5 xi0 = P5::variable(2), xi1 = P5::variable(3), xi2 = P5::variable(4);
    const std::array<P5, 3> sub{xi2 * x0, xi2 * x1, P5{} - (xi0 * x0 + xi1 * x1)};

    const P5 curve = c.poly.substitute<5>(sub);
    const P5 minor01 = xi0 * c.poly.derivative(1).substitute<5>(sub) -
                       xi1 * c.poly.derivative(0).substitute<5>(sub);

    // Both are binary forms in (x0, x1); eliminating x1 leaves x0^6 times a
    // degree-15 form in xi.
    const P5 eliminant = P5::resultant(curve, minor01, 1);
    P5 shell;
    {
        std::array<int, 5> e{};
        e[0] = 6;
        shell = P5::monomial(e, Eisenstein(1));
    }
    const P5 reduced = P5::divide_exact(eliminant, shell);

    P3 h = reduced.substitute<3>({P3{}, P3{}, P3::variable(0), P3::variable(1), P3::variable(2)});
    h = strip_coordinate_factors(h).primitive_part();

    DualCurve out;
    out.sextic = h;
    for (const ProjPoint& flex : flexes(c))
        out.cusp_duals.push_back(inflectional_tangent(c, flex).as_dual_point());

    if (out.sextic.total_degree() != 6)
        throw std::logic_error("dual: cleaned eliminant does not have degree 6");
    for (const ProjPoint& d : out.cusp_duals)
        if (!out.sextic.evaluate(d.coords()).is_zero())
            throw std::logic_error("dual: tangent dual point misses the sextic");
    return out;
}

HomogPoly dual_sextic_discriminant_route(const HesseCubic& c) {
    if (smoothness_check(c) != CubicKind::Smooth)
        throw std::invalid_argument("dual: cubic must be smooth and non-Fermat");

    // Restrict the cubic to the moving line through p = (xi1 : -xi0 : 0) and
    // q = (xi2 : 0 : -xi0); a point of the dual curve is a line on which the
    // restriction has a repeated root. Variables of P5: s, t, xi0, xi1, xi2.
    const P5 s = P5::variable(0), t = P5::variable(1);
    const P5 xi0 = P5::variable(2), xi1 = P5::variable(3), xi2 = P5::variable(4);
    const std::array<P5, 3> line{s * xi1 + t * xi2, P5{} - s * xi0, P5{} - t * xi0};
    const P5 restricted = c.poly.substitute<5>(line);

    auto coeff = [&](int sdeg, int tdeg) {
        return restricted.coefficient_in(0, sdeg).coefficient_in(1, tdeg);
    };
    const P5 a = coeff(3, 0), b = coeff(2, 1), e = coeff(1, 2), d = coeff(0, 3);

    // Discriminant of the binary cubic a s^3 + b s^2 t + e s t^2 + d t^3.
    const P5 disc = Eisenstein(18) * (a * b * e * d) - Eisenstein(4) * (b.pow(3) * d) +
                    b * b * e * e - Eisenstein(4) * (a * e.pow(3)) -
                    Eisenstein(27) * (a * a * d * d);

    P3 h = disc.substitute<3>({P3{}, P3{}, P3::variable(0), P3::variable(1), P3::variable(2)});
    return strip_coordinate_factors(h).primitive_part();
}

namespace {

struct LocalChart {
    int chart;                       // index scaled to 1
    std::array<Eisenstein, 3> at;    // scaled coordinates
    std::array<int, 2> others;      // the two local directions
    P2 expansion;                    // f(p + u e_a + v e_b) in the chart
};

LocalChart local_expansion(const HomogPoly& f, const ProjPoint& p) {
    LocalChart lc;
    const ProjPoint n = p.normalized();
    lc.at = n.coords();
    lc.chart = -1;
    for (int i = 0; i < 3; ++i)
        if (lc.chart < 0 && lc.at[i] == Eisenstein(1)) lc.chart = i;
    int k = 0;
    for (int i = 0; i < 3; ++i)
        if (i != lc.chart) lc.others[k++] = i;

    std::array<P2, 3> args;
    args[lc.chart] = P2::constant(Eisenstein(1));
    args[lc.others[0]] = P2::constant(lc.at[lc.others[0]]) + P2::variable(0);
    args[lc.others[1]] = P2::constant(lc.at[lc.others[1]]) + P2::variable(1);
    lc.expansion = f.substitute<2>(args);
    return lc;
}

// The doubled linear factor of a rank-one binary quadratic A u^2 + B uv + C v^2.
P2 repeated_factor(const Eisenstein& qa, const Eisenstein& qb, const Eisenstein& qc) {
    if (!qa.is_zero()) return Eisenstein(2) * qa * P2::variable(0) + qb * P2::variable(1);
    return qb * P2::variable(0) + Eisenstein(2) * qc * P2::variable(1);
}

}  // namespace

CuspLocalData classify_dual_point(const DualCurve& dual, const ProjPoint& p) {
    CuspLocalData out{p, false, false, false, false};
    const LocalChart lc = local_expansion(dual.sextic, p);

    out.on_curve = lc.expansion.graded_part(0).is_zero();
    out.singular = out.on_curve && lc.expansion.graded_part(1).is_zero();
    if (!out.singular) return out;

    const P2 q2 = lc.expansion.graded_part(2);
    const Eisenstein qa = q2.coefficient({2, 0});
    const Eisenstein qb = q2.coefficient({1, 1});
    const Eisenstein qc = q2.coefficient({0, 2});
    out.quadratic_rank_one =
        !q2.is_zero() && (qb * qb - Eisenstein(4) * qa * qc).is_zero();
    if (!out.quadratic_rank_one) return out;

    const P2 ell = repeated_factor(qa, qb, qc);
    const P2 cubic = lc.expansion.graded_part(3);
    out.is_a2 = !cubic.is_zero() && !ell.divides(cubic);
    return out;
}

namespace {

// Cross product; the line through two points, or the intersection of two lines.
std::array<Eisenstein, 3> cross(const std::array<Eisenstein, 3>& x,
                                const std::array<Eisenstein, 3>& y) {
    return {x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]};
}

}  // namespace

ConicIntersection conic_cusp_intersection(const DualCurve& dual, const ConicForm& conic,
                                          const std::vector<ProjPoint>& cusps) {
    for (const ProjPoint& p : cusps)
        if (!conic.evaluate(p).is_zero())
            throw std::invalid_argument("intersection: cusp not on the conic");
    if (cusps.empty()) throw std::invalid_argument("intersection: no cusps given");

    auto pair_m = [&](const std::array<Eisenstein, 3>& x, const std::array<Eisenstein, 3>& y) {
        Eisenstein acc(0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) acc += x[i] * conic.m.at(i, j) * y[j];
        return acc;
    };

    // Pencil parametrization from the first cusp: X(t) is the second
    // intersection of the conic with the line through p0 and V(t) = A + tB.
    // For a smooth conic this is an isomorphism from the line to the conic,
    // so vanishing orders along it are local intersection numbers. A and B
    // are picked so that every cusp parameter is finite and the composed
    // polynomial has full degree 12; its roots then account for the whole
    // intersection cycle.
    const std::vector<std::array<long, 3>> seeds{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0},
                                                 {1, 0, 1}, {0, 1, 1}, {1, 1, 1}, {1, 2, 3},
                                                 {2, 1, 1}, {1, 2, 1}};
    const ProjPoint& p0 = cusps.front();

    auto attempt = [&](const std::array<Eisenstein, 3>& a, const std::array<Eisenstein, 3>& b)
        -> std::optional<ConicIntersection> {
        const P1 tvar = P1::variable(0);
        std::array<P1, 3> vt;
        for (int i = 0; i < 3; ++i) vt[i] = P1::constant(a[i]) + P1::constant(b[i]) * tvar;

        P1 vmv, pmv;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                vmv += P1::constant(conic.m.at(i, j)) * vt[i] * vt[j];
                pmv += P1::constant(p0.coords()[i] * conic.m.at(i, j)) * vt[j];
            }
        std::array<P1, 3> xt;
        for (int i = 0; i < 3; ++i)
            xt[i] = vmv * P1::constant(p0.coords()[i]) - Eisenstein(2) * (pmv * vt[i]);

        const P1 composite = dual.sextic.substitute<1>({xt[0], xt[1], xt[2]});
        if (composite.degree_in(0) != 12) return std::nullopt;

        ConicIntersection out{{}, 0, false, true};
        for (const ProjPoint& p : cusps) {
            // Parameter where X(t) passes through p. For p0 itself that is
            // the tangent direction (V on the polar of p0); for any other
            // cusp it is where V crosses the chord through p0 and p.
            Eisenstein t_num(0), t_den(0);
            if (p == p0) {
                t_num = -pair_m(p0.coords(), a);
                t_den = pair_m(p0.coords(), b);
            } else {
                const auto chord = cross(p0.coords(), p.coords());
                Eisenstein ca(0), cb(0);
                for (int i = 0; i < 3; ++i) {
                    ca += chord[i] * a[i];
                    cb += chord[i] * b[i];
                }
                t_num = -ca;
                t_den = cb;
            }
            if (t_den.is_zero()) return std::nullopt;
            const Eisenstein tp = t_num / t_den;

            // The image really is p (rules out degenerate pencil members).
            std::array<Eisenstein, 3> val;
            for (int i = 0; i < 3; ++i) val[i] = xt[i].evaluate({tp});
            if (val[0].is_zero() && val[1].is_zero() && val[2].is_zero()) return std::nullopt;
            if (!(ProjPoint(val[0], val[1], val[2]) == p)) return std::nullopt;

            int order = 0;
            P1 rem = composite;
            const P1 factor = tvar - P1::constant(tp);
            while (auto q = P1::try_divide(rem, factor)) {
                rem = *q;
                order += 1;
            }
            out.multiplicities.push_back(order);
            out.total += order;
        }
        out.conic_covers_all = out.total == 12;

        // Cusp tangent against conic tangent, in each cusp's chart.
        for (const ProjPoint& p : cusps) {
            const LocalChart lc = local_expansion(dual.sextic, p);
            const P2 q2 = lc.expansion.graded_part(2);
            const P2 ell = repeated_factor(q2.coefficient({2, 0}), q2.coefficient({1, 1}),
                                           q2.coefficient({0, 2}));
            // Lift ell = alpha u + beta v to a line of the dual plane.
            const Eisenstein alpha = ell.coefficient({1, 0});
            const Eisenstein beta = ell.coefficient({0, 1});
            std::array<Eisenstein, 3> cusp_line{};
            cusp_line[lc.others[0]] = alpha;
            cusp_line[lc.others[1]] = beta;
            cusp_line[lc.chart] = -(alpha * lc.at[lc.others[0]] + beta * lc.at[lc.others[1]]);
            // Conic tangent at p: M p.
            std::array<Eisenstein, 3> conic_line{};
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) conic_line[i] += conic.m.at(i, j) * p.coords()[j];
            if (proportional(cusp_line, conic_line)) out.tangents_differ = false;
        }
        return out;
    };

    for (std::size_t ai = 0; ai < seeds.size(); ++ai) {
        for (std::size_t bi = 0; bi < seeds.size(); ++bi) {
            if (ai == bi) continue;
            std::array<Eisenstein, 3> a{Eisenstein(seeds[ai][0]), Eisenstein(seeds[ai][1]),
                                        Eisenstein(seeds[ai][2])};
            std::array<Eisenstein, 3> b{Eisenstein(seeds[bi][0]), Eisenstein(seeds[bi][1]),
                                        Eisenstein(seeds[bi][2])};
            if (auto out = attempt(a, b)) return *out;
        }
    }
    throw std::logic_error("intersection: no usable parametrization base found");
}

RRClassSolution solve_rr_class() {
    // Basis order E1..E9, E1'..E9', H.
    const int n = 19;
    Matrix<Rational> gram(n, n, Rational(0));
    for (int i = 0; i < 9; ++i) {
        gram.at(i, i) = Rational(-2);
        gram.at(9 + i, 9 + i) = Rational(-2);
        gram.at(i, 9 + i) = Rational(1);
        gram.at(9 + i, i) = Rational(1);
    }
    gram.at(18, 18) = Rational(2);

    std::vector<Rational> rhs(n, Rational(0));
    for (int i = 0; i < 6; ++i) {
        rhs[i] = Rational(1);       // (R - R').E_i = 1
        rhs[9 + i] = Rational(-1);  // (R - R').E_i' = -1
    }

    RRClassSolution out;
    out.gram = gram;
    out.diff.coeffs = solve_exact(gram, rhs);

    // Re-substitute: the pairings must reproduce the right-hand side exactly.
    out.pairings.assign(n, Rational(0));
    for (int k = 0; k < n; ++k) {
        Rational acc(0);
        for (int j = 0; j < n; ++j) acc += out.diff.coeffs[j] * gram.at(j, k);
        out.pairings[k] = acc;
        if (acc != rhs[k]) throw std::logic_error("class solve: pairing mismatch");
    }

    // 3 (R - R') = sum (E_i' - E_i), i <= 6: integral coefficients.
    for (int j = 0; j < n; ++j) {
        const Rational tripled = out.diff.coeffs[j] * 3;
        if (!is_integer(tripled)) throw std::logic_error("class solve: thirds expected");
    }
    for (int i = 0; i < 9; ++i) {
        const Rational expected = i < 6 ? make_rational(-1, 3) : Rational(0);
        if (out.diff.coeffs[i] != expected || out.diff.coeffs[9 + i] != -expected)
            throw std::logic_error("class solve: unexpected solution");
    }
    if (out.diff.coeffs[18] != 0) throw std::logic_error("class solve: H coefficient nonzero");

    // sum(2E_i + E_i') - 3(R-R') = 3 sum E_i and
    // sum(E_i + 2E_i') + 3(R-R') = 3 sum E_i', both with integer thirds.
    for (int variant = 0; variant < 2; ++variant) {
        std::vector<Rational> v(n, Rational(0));
        for (int i = 0; i < 6; ++i) {
            v[i] = Rational(variant == 0 ? 2 : 1);
            v[9 + i] = Rational(variant == 0 ? 1 : 2);
        }
        const Rational sign = variant == 0 ? Rational(-3) : Rational(3);
        for (int j = 0; j < n; ++j) {
            const Rational diff = v[j] + sign * out.diff.coeffs[j];
            if (!is_integer(Rational(diff / 3)))
                throw std::logic_error("class solve: divisibility by three fails");
        }
    }
    return out;
}

}  // namespace ninecusps
