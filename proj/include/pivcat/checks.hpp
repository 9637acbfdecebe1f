#ifndef PIVCAT_CHECKS_HPP
#define PIVCAT_CHECKS_HPP

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "pivcat/errors.hpp"
#include "pivcat/fusion_ring.hpp"
#include "pivcat/graded.hpp"
#include "pivcat/group.hpp"
#include "pivcat/nimrep.hpp"
#include "pivcat/pointed.hpp"

namespace pivcat {
namespace checks {

inline FusionRing fibonacci_ring() {
    return build_fusion_ring({"1", "tau"}, 0, {0, 1},
                             {{{0, 0, 0}, 1}, {{0, 1, 1}, 1}, {{1, 0, 1}, 1}, {{1, 1, 0}, 1}, {{1, 1, 1}, 1}});
}

inline FusionRing ising_ring() {
    // labels 1, eps, sigma with eps^2 = 1, eps sigma = sigma eps = sigma, sigma^2 = 1 + eps
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, long long> c;
    auto put = [&](std::size_t i, std::size_t j, std::size_t k) { c[{i, j, k}] = 1; };
    for (std::size_t i = 0; i < 3; ++i) {
        put(0, i, i);
        if (i != 0) put(i, 0, i);
    }
    put(1, 1, 0);
    put(1, 2, 2);
    put(2, 1, 2);
    put(2, 2, 0);
    put(2, 2, 1);
    return build_fusion_ring({"1", "eps", "sigma"}, 0, {0, 1, 2}, std::move(c));
}

/// Two independent routes to module-trace existence: the restriction
/// criterion versus the balanced-theta solver, over every subgroup of g and
/// every character into mu_m.
inline CheckReport module_trace_agreement(const FiniteGroup& g, int m) {
    CheckReport report;
    std::size_t cases = 0;
    bool ok = true;
    std::string witness;
    const auto characters = enumerate_characters(g, m);
    for (const auto& h : g.subgroups())
        for (const auto& chi : characters) {
            bool by_restriction = module_trace_exists(g, h, chi);
            auto solved = build_module_trace(g, h, chi);
            ++cases;
            if (by_restriction != solved.feasible()) {
                ok = false;
                witness = "subgroup of order " + std::to_string(h.size());
            }
            if (solved.feasible()) {
                // normalization and value sanity: theta(He) = 1
                CosetModule cm = make_coset_module(g, h);
                if (!(solved.theta->at(cm.coset_of(g.identity())) == Cyclotomic(1))) {
                    ok = false;
                    witness = "normalization";
                }
            } else if (solved.feasible() == false) {
                // the witness cycle must have a non-unit twist product
                Cyclotomic prod(1);
                for (auto e : solved.infeasible_cycle) prod *= balancing_twist(chi, e);
                if (prod == Cyclotomic(1)) {
                    ok = false;
                    witness = "degenerate infeasibility cycle";
                }
            }
        }
    report.add("module_trace.two_route_agreement[" + std::to_string(cases) + " cases]", ok, witness);
    return report;
}

/// Brute-force theta-search oracle: counts assignments of mu_m values to the
/// cosets satisfying every twist constraint, with and without the
/// normalization theta(He) = 1.
struct ThetaSearch {
    std::size_t solutions_normalized = 0;
    std::size_t solutions_total = 0;
};

inline ThetaSearch theta_search(const FiniteGroup& g, const std::vector<std::size_t>& h, const Character& chi) {
    CosetModule cm = make_coset_module(g, h);
    const std::size_t n = cm.cosets.size();
    const int m = chi.root_order;
    ThetaSearch out;
    std::vector<int> expo(n, 0);
    std::size_t root = cm.coset_of(g.identity());
    while (true) {
        bool ok = true;
        for (std::size_t e = 0; e < g.order() && ok; ++e)
            for (std::size_t c = 0; c < n && ok; ++c)
                ok = (expo[cm.action[e][c]] - expo[c] - (m - chi.exponent(e))) % m == 0;
        if (ok) {
            ++out.solutions_total;
            if (expo[root] == 0) ++out.solutions_normalized;
        }
        std::size_t pos = 0;
        while (pos < n && ++expo[pos] == m) expo[pos++] = 0;
        if (pos == n) break;
    }
    return out;
}

/// The Frobenius symmetry of kH agrees with module-trace existence, for all
/// subgroups and characters into mu_m.
inline CheckReport frobenius_trace_cross(const FiniteGroup& g, int m) {
    CheckReport report;
    std::size_t cases = 0;
    bool ok = true;
    std::string witness;
    const auto characters = enumerate_characters(g, m);
    for (const auto& h : g.subgroups())
        for (const auto& chi : characters) {
            GradedAlgebra kh = subgroup_algebra(g, h);
            FrobeniusData f = standard_frobenius(kh, chi);
            bool symmetric = frobenius_verify(f).is_symmetric;
            bool trace = module_trace_exists(g, h, chi);
            ++cases;
            if (symmetric != trace) {
                ok = false;
                witness = "subgroup of order " + std::to_string(h.size());
            }
        }
    report.add("frobenius.symmetric_iff_module_trace[" + std::to_string(cases) + " cases]", ok, witness);
    return report;
}

/// Rieffel-induced pairing on double cosets equals the bimodule-Hom pairing,
/// and the descended basis objects fall into exactly |H\G/K| isomorphism
/// classes under Hom ranks.
inline CheckReport rieffel_hom_consistency(const FiniteGroup& g, const std::vector<std::size_t>& h,
                                           const std::vector<std::size_t>& k) {
    CheckReport report;
    DoubleCosetModule dc = double_coset_tensor(g, h, k);
    report.add("tensor.pairing_well_defined", dc.pairing_well_defined,
               dc.pairing_well_defined ? "" : "representative pairs disagree");

    const std::size_t nb = dc.basis.size();
    std::vector<GradedBimodule> descended;
    for (std::size_t w = 0; w < nb; ++w)
        descended.push_back(free_double_coset_bimodule(g, h, k, dc.basis[w].front()));

    bool equal = true;
    std::string eq_witness;
    for (std::size_t w1 = 0; w1 < nb && equal; ++w1)
        for (std::size_t w2 = 0; w2 < nb && equal; ++w2) {
            long long direct = static_cast<long long>(hom_dimension(descended[w1], descended[w2]));
            if (direct != dc.pairing[w1][w2]) {
                equal = false;
                eq_witness = "cosets " + std::to_string(w1) + "," + std::to_string(w2) + ": Rieffel " +
                             std::to_string(dc.pairing[w1][w2]) + " vs Hom " + std::to_string(direct);
            }
        }
    report.add("tensor.rieffel_equals_hom", equal, eq_witness);

    // isomorphism classes among all descended simple pairs, via Hom ranks
    std::vector<GradedBimodule> images;
    for (std::size_t i = 0; i < dc.right_cosets.size(); ++i)
        for (std::size_t j = 0; j < dc.left_cosets.size(); ++j)
            images.push_back(free_double_coset_bimodule(
                g, dc.h, dc.k, g.mul(dc.right_cosets[i].front(), dc.left_cosets[j].front())));
    std::vector<std::size_t> klass(images.size(), images.size());
    std::size_t classes = 0;
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (klass[i] != images.size()) continue;
        klass[i] = classes;
        for (std::size_t j = i + 1; j < images.size(); ++j)
            if (klass[j] == images.size() && hom_dimension(images[i], images[j]) > 0) klass[j] = classes;
        ++classes;
    }
    bool count_ok = classes == nb;
    report.add("tensor.descended_class_count", count_ok,
               count_ok ? "" : std::to_string(classes) + " classes vs " + std::to_string(nb) + " double cosets");
    return report;
}

/// NIM-level inner-hom coefficients against explicit coset comparison, for
/// every coset pair and group element.
inline CheckReport adjunction_dimensions(const FiniteGroup& g, const std::vector<std::size_t>& h) {
    CheckReport report;
    CosetModule cm = make_coset_module(g, h);
    BimoduleNim nim = coset_to_nimrep(cm);
    bool ok = true;
    std::string witness;
    for (std::size_t a = 0; a < cm.cosets.size() && ok; ++a)
        for (std::size_t b = 0; b < cm.cosets.size() && ok; ++b) {
            RingElement lhs = coset_inner_hom(cm, a, b);
            RingElement also = inner_hom_left(nim, a, b);
            if (!(lhs == also)) {
                ok = false;
                witness = "NIM export disagrees at (" + std::to_string(a) + "," + std::to_string(b) + ")";
                break;
            }
            for (std::size_t e = 0; e < g.order(); ++e) {
                Rat coeff = lhs.coefficient(e);
                Rat expect = cm.action[e][b] == a ? 1 : 0;  // dim Hom(m_a, g |> m_b) by coset comparison
                if (coeff != expect) {
                    ok = false;
                    witness = "(" + std::to_string(a) + "," + std::to_string(b) + "," + g.name(e) + ")";
                    break;
                }
            }
        }
    report.add("adjunction.dimension_identity", ok, witness);
    return report;
}

/// Conjugate-pivotal identities for every character of g into mu_m:
/// tr^{R,conj} = tr^{L} on each simple, involution, and the spherical
/// criterion.
inline CheckReport conjugate_pivotal_identities(const FiniteGroup& g, int m) {
    CheckReport report;
    bool trace_ok = true, invol_ok = true, spherical_ok = true;
    std::string witness;
    for (const auto& chi : enumerate_characters(g, m)) {
        Character conj = conjugate_pivotal(chi);
        for (std::size_t e = 0; e < g.order(); ++e) {
            if (!(trace_of_simple(conj, e, TraceSide::right) == trace_of_simple(chi, e, TraceSide::left))) {
                trace_ok = false;
                witness = g.name(e);
            }
        }
        if (!(conjugate_pivotal(conj) == chi)) invol_ok = false;
        if (spherical_check(chi) != (conj == chi)) spherical_ok = false;
    }
    report.add("pivotal.conjugate_trace_identity", trace_ok, witness);
    report.add("pivotal.conjugate_involution", invol_ok, "");
    report.add("pivotal.spherical_iff_self_conjugate", spherical_ok, "");
    return report;
}

/// Trace of a scalar endomorphism of the simple delta_g, recomputed through
/// the generic graded-trace composite; oracle for the closed form in
/// trace_of_simple.
inline Cyclotomic trace_composite_oracle(const Character& k, std::size_t g, TraceSide side,
                                         const Cyclotomic& scalar) {
    GradedVectorSpace x;
    x.group = k.group;
    x.ids = {"v"};
    x.grades = {g};
    CMat f(1, 1);
    f(0, 0) = scalar;
    return graded_trace(x, f, k, side);
}

}  // namespace checks
}  // namespace pivcat

#endif
