#include <chrono>
#include <cstdio>

#include "ninecusps/hesse.hpp"

using namespace ninecusps;
using Clock = std::chrono::steady_clock;

int main() {
    const HesseCubic c{Eisenstein(2)};
    std::printf("smoothness: %s\n", to_string(smoothness_check(c)).c_str());

    auto t0 = Clock::now();
    const DualCurve dual = dual_sextic(c);
    auto t1 = Clock::now();
    std::printf("dual sextic degree %d, %zu terms, %.2fs\n", dual.sextic.total_degree(),
                dual.sextic.term_count(), std::chrono::duration<double>(t1 - t0).count());
    std::printf("sextic: %s\n",
                dual.sextic.to_string({"u", "v", "w"}).c_str());

    const HomogPoly other = dual_sextic_discriminant_route(c);
    std::printf("discriminant route degree %d, %zu terms\n", other.total_degree(),
                other.term_count());
    std::printf("equal up to scalar: %d\n",
                HomogPoly::equal_up_to_scalar(dual.sextic, other));

    int a2 = 0;
    for (const ProjPoint& p : dual.cusp_duals) {
        const CuspLocalData d = classify_dual_point(dual, p);
        a2 += d.is_a2;
    }
    std::printf("A2 singularities among 9 dual points: %d\n", a2);

    const FlexLabeling fl = flex_labeling(c);
    const FlexLinePair standard{{0, 1, 2}, {3, 4, 5}};
    std::printf("conic tangency standard pair: %d\n", conic_tangency_check(c, fl, standard));

    std::vector<ProjPoint> six;
    for (int idx : {0, 1, 2, 3, 4, 5})
        six.push_back(inflectional_tangent(c, fl.flexes[idx]).as_dual_point());
    auto t2 = Clock::now();
    const ConicIntersection ci = conic_cusp_intersection(dual, standard_conic(c.lambda), six);
    auto t3 = Clock::now();
    std::printf("multiplicities:");
    for (int m : ci.multiplicities) std::printf(" %d", m);
    std::printf(" total %d covers_all %d tangents_differ %d, %.2fs\n", ci.total,
                ci.conic_covers_all, ci.tangents_differ,
                std::chrono::duration<double>(t3 - t2).count());

    const RRClassSolution rr = solve_rr_class();
    std::printf("rr: n1=%s n1'=%s n7=%s H=%s\n", to_string(rr.diff.coeffs[0]).c_str(),
                to_string(rr.diff.coeffs[9]).c_str(), to_string(rr.diff.coeffs[6]).c_str(),
                to_string(rr.diff.coeffs[18]).c_str());
    return 0;
}
