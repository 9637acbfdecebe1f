#ifndef PIVCAT_NIMREP_HPP
#define PIVCAT_NIMREP_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "pivcat/errors.hpp"
#include "pivcat/fusion_ring.hpp"
#include "pivcat/matrix.hpp"

namespace pivcat {

/// Which side a fusion ring acts on. Right actions compose in reversed order.
enum class ActionSide { left, right };

/// NIM-representation of a fusion ring: one non-negative integer matrix per
/// basis element with L(d)_{ab} = dim Hom(m_a, d |> m_b) (left convention)
/// or R(c)_{ab} = dim Hom(m_a, m_b <| c) (right convention).
struct NimRep {
    FusionRing ring;
    std::vector<std::string> module_labels;
    std::vector<IMat> action;  // indexed by ring basis

    std::size_t module_size() const { return module_labels.size(); }

    const IMat& matrix(std::size_t ring_index) const { return action.at(ring_index); }

    std::size_t label_index(const std::string& label) const {
        for (std::size_t i = 0; i < module_labels.size(); ++i)
            if (module_labels[i] == label) return i;
        throw LabelUnknown(label);
    }
};

/// Element of the rationalized Grothendieck group of the module category.
struct ModuleElement {
    std::map<std::size_t, Rat> coefficients;

    static ModuleElement basis(std::size_t a) { return ModuleElement{{{a, Rat(1)}}}; }

    ModuleElement& add(std::size_t a, const Rat& c) {
        if (c == 0) return *this;
        auto [it, inserted] = coefficients.emplace(a, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coefficients.erase(it);
        }
        return *this;
    }

    friend bool operator==(const ModuleElement& a, const ModuleElement& b) {
        return a.coefficients == b.coefficients;
    }
};

/// Formal linear combination of m (x) n pairs, prior to descent to the
/// relative tensor product.
struct FormalTensor {
    struct Term {
        Rat coefficient;
        std::size_t first;   // label index in M
        std::size_t second;  // label index in N
    };
    std::vector<Term> terms;

    static FormalTensor pure(std::size_t a, std::size_t b) { return FormalTensor{{{Rat(1), a, b}}}; }
};

/// Validates a NIM-rep exhaustively: unit, representation property and the
/// reciprocity axiom L(d*) = L(d)^T. Reciprocity is required for validity;
/// matrices without it cannot arise from a module category.
inline NimRep build_nimrep(FusionRing ring, std::vector<std::string> module_labels, std::vector<IMat> action,
                           ActionSide side = ActionSide::left) {
    const std::size_t rank = ring.size();
    const std::size_t n = module_labels.size();
    if (n == 0) throw ParseError("module label set is empty");
    if (action.size() != rank) throw ParseError("need one action matrix per ring basis element");
    for (const auto& m : action) {
        if (m.rows != n || m.cols != n) throw ParseError("action matrix has wrong shape");
        for (auto v : m.data)
            if (v < 0) throw ParseError("action matrix has a negative entry");
    }

    if (!(action[ring.unit] == IMat::identity(n))) throw UnitViolation("action of the unit is not the identity");

    for (std::size_t c = 0; c < rank; ++c)
        for (std::size_t d = 0; d < rank; ++d) {
            IMat lhs = side == ActionSide::left ? action[c] * action[d] : action[d] * action[c];
            IMat rhs(n, n);
            for (std::size_t k = 0; k < rank; ++k) {
                long long mult = ring.n(c, d, k);
                if (mult != 0) rhs.scale_add(mult, action[k]);
            }
            if (!(lhs == rhs)) throw RepresentationViolation(c, d);
        }

    for (std::size_t d = 0; d < rank; ++d)
        if (!(action[ring.dual[d]] == action[d].transposed()))
            throw ReciprocityViolation("action of " + ring.labels[d] + "* is not the transpose");

    return NimRep{std::move(ring), std::move(module_labels), std::move(action)};
}

/// Decategorified bimodule category: a left D-action and a right C-action on
/// the same labels, commuting matrix-by-matrix.
struct BimoduleNim {
    NimRep left;   // L(d) over D
    NimRep right;  // R(c) over C

    const std::vector<std::string>& module_labels() const { return left.module_labels; }
    std::size_t module_size() const { return left.module_size(); }
    std::size_t label_index(const std::string& label) const { return left.label_index(label); }
};

inline BimoduleNim build_bimodule_nim(FusionRing left_ring, FusionRing right_ring,
                                      std::vector<std::string> module_labels, std::vector<IMat> left_action,
                                      std::vector<IMat> right_action) {
    NimRep l = build_nimrep(std::move(left_ring), module_labels, std::move(left_action), ActionSide::left);
    NimRep r = build_nimrep(std::move(right_ring), std::move(module_labels), std::move(right_action), ActionSide::right);
    for (std::size_t d = 0; d < l.ring.size(); ++d)
        for (std::size_t c = 0; c < r.ring.size(); ++c)
            if (!(l.action[d] * r.action[c] == r.action[c] * l.action[d]))
                throw RepresentationViolation(c, d);
    return BimoduleNim{std::move(l), std::move(r)};
}

/// The unit bimodule: the ring acting on itself by multiplication on both sides.
inline BimoduleNim regular_bimodule(const FusionRing& ring) {
    const std::size_t n = ring.size();
    std::vector<IMat> left(n, IMat(n, n)), right(n, IMat(n, n));
    for (const auto& [key, v] : ring.coefficients) {
        auto [i, j, k] = key;
        left[i](k, j) = v;   // L(d)_{ab} = N_{d b}^{a}
        right[j](k, i) = v;  // R(c)_{ab} = N_{b c}^{a}
    }
    return build_bimodule_nim(ring, ring, ring.labels, std::move(left), std::move(right));
}

/// D-valued inner hom of two module simples: the class sum_d L(d)_{ab} d,
/// whose d-coefficient is dim Hom(m_a, d |> m_b).
inline RingElement inner_hom_left(const BimoduleNim& m, std::size_t a, std::size_t b) {
    if (a >= m.module_size() || b >= m.module_size()) throw IndexOutOfRange("module label index");
    RingElement out;
    for (std::size_t d = 0; d < m.left.ring.size(); ++d) out.add(d, Rat(m.left.action[d](a, b)));
    return out;
}

inline RingElement inner_hom_left(const BimoduleNim& m, const std::string& a, const std::string& b) {
    return inner_hom_left(m, m.label_index(a), m.label_index(b));
}

/// C-valued inner hom: the class sum_c R(c)_{ba} c, whose c-coefficient is
/// dim Hom(m_b, m_a <| c).
inline RingElement inner_hom_right(const BimoduleNim& m, std::size_t a, std::size_t b) {
    if (a >= m.module_size() || b >= m.module_size()) throw IndexOutOfRange("module label index");
    RingElement out;
    for (std::size_t c = 0; c < m.right.ring.size(); ++c) out.add(c, Rat(m.right.action[c](b, a)));
    return out;
}

inline RingElement inner_hom_right(const BimoduleNim& m, const std::string& a, const std::string& b) {
    return inner_hom_right(m, m.label_index(a), m.label_index(b));
}

/// Bilinear extension of the D-valued inner hom to Grothendieck classes.
inline RingElement inner_hom_left(const BimoduleNim& m, const ModuleElement& x, const ModuleElement& y) {
    RingElement out;
    for (const auto& [a, ca] : x.coefficients)
        for (const auto& [b, cb] : y.coefficients) out = out + (ca * cb) * inner_hom_left(m, a, b);
    return out;
}

/// Class of d |> m_a in Gr(M).
inline ModuleElement act_left(const BimoduleNim& m, std::size_t ring_index, std::size_t a) {
    ModuleElement out;
    for (std::size_t x = 0; x < m.module_size(); ++x) out.add(x, Rat(m.left.action[ring_index](x, a)));
    return out;
}

/// Class of m_a <| c in Gr(M).
inline ModuleElement act_right(const BimoduleNim& m, std::size_t a, std::size_t ring_index) {
    ModuleElement out;
    for (std::size_t x = 0; x < m.module_size(); ++x) out.add(x, Rat(m.right.action[ring_index](x, a)));
    return out;
}

/// Class of m_a <| r for a ring element r.
inline ModuleElement act_right(const BimoduleNim& m, std::size_t a, const RingElement& r) {
    ModuleElement out;
    for (const auto& [c, coeff] : r.coefficients)
        for (std::size_t x = 0; x < m.module_size(); ++x) out.add(x, coeff * Rat(m.right.action[c](x, a)));
    return out;
}

/// Checks the algebra-valued inner-product axioms exhaustively over basis
/// labels and ring generators: linearity in the first slot, the hermitian
/// identity under star, non-degeneracy on the diagonal, and compatibility of
/// the right action with star.
inline CheckReport verify_inner_product_axioms(const BimoduleNim& m) {
    CheckReport report;
    const std::size_t n = m.module_size();
    const FusionRing& dring = m.left.ring;
    const FusionRing& cring = m.right.ring;

    bool linear = true;
    std::string linear_witness;
    for (std::size_t c = 0; c < dring.size() && linear; ++c)
        for (std::size_t a = 0; a < n && linear; ++a)
            for (std::size_t b = 0; b < n && linear; ++b) {
                RingElement lhs = inner_hom_left(m, act_left(m, c, a), ModuleElement::basis(b));
                RingElement rhs = multiply(dring, RingElement::basis(c), inner_hom_left(m, a, b));
                if (!(lhs == rhs)) {
                    linear = false;
                    linear_witness = dring.labels[c] + " |> " + m.module_labels()[a] + ", " + m.module_labels()[b];
                }
            }
    report.add("inner_product.left_linearity", linear, linear_witness);

    bool hermitian = true;
    std::string herm_witness;
    for (std::size_t a = 0; a < n && hermitian; ++a)
        for (std::size_t b = 0; b < n && hermitian; ++b)
            if (!(star(dring, inner_hom_left(m, a, b)) == inner_hom_left(m, b, a))) {
                hermitian = false;
                herm_witness = "(" + m.module_labels()[a] + "," + m.module_labels()[b] + ")";
            }
    report.add("inner_product.hermitian", hermitian, herm_witness);

    bool nondegenerate = true;
    std::string nd_witness;
    for (std::size_t a = 0; a < n && nondegenerate; ++a)
        if (inner_hom_left(m, a, a).coefficient(dring.unit) < 1) {
            nondegenerate = false;
            nd_witness = m.module_labels()[a];
        }
    report.add("inner_product.nondegenerate", nondegenerate, nd_witness);

    bool compat = true;
    std::string compat_witness;
    for (std::size_t c = 0; c < cring.size() && compat; ++c)
        for (std::size_t a = 0; a < n && compat; ++a)
            for (std::size_t b = 0; b < n && compat; ++b) {
                RingElement lhs = inner_hom_left(m, act_right(m, a, c), ModuleElement::basis(b));
                RingElement rhs = inner_hom_left(m, ModuleElement::basis(a), act_right(m, b, cring.dual[c]));
                if (!(lhs == rhs)) {
                    compat = false;
                    compat_witness = m.module_labels()[a] + " <| " + cring.labels[c] + ", " + m.module_labels()[b];
                }
            }
    report.add("inner_product.right_action_star", compat, compat_witness);

    return report;
}

/// Rieffel induction on formal tensors: (m (x) n, m~ (x) n~) goes to
/// < m <| <n,n~>_C , m~ >_D, extended bilinearly.
inline RingElement rieffel_pairing(const BimoduleNim& m, const BimoduleNim& n, const FormalTensor& t1,
                                   const FormalTensor& t2) {
    if (!(m.right.ring == n.left.ring)) throw RingMismatch("middle ring of the two bimodules differs");
    RingElement out;
    for (const auto& s : t1.terms)
        for (const auto& t : t2.terms) {
            RingElement middle = inner_hom_left(n, s.second, t.second);
            ModuleElement acted = act_right(m, s.first, middle);
            RingElement pair = inner_hom_left(m, acted, ModuleElement::basis(t.first));
            out = out + (s.coefficient * t.coefficient) * pair;
        }
    return out;
}

/// Verifies that the Rieffel pairing is balanced over the middle ring and
/// that the induced pairing is linear and hermitian, exhaustively over basis
/// labels and ring generators.
inline CheckReport rieffel_balanced_check(const BimoduleNim& m, const BimoduleNim& n) {
    CheckReport report;
    if (!(m.right.ring == n.left.ring)) throw RingMismatch("middle ring of the two bimodules differs");
    const FusionRing& cring = m.right.ring;
    const FusionRing& dring = m.left.ring;
    const std::size_t nm = m.module_size(), nn = n.module_size();

    auto pure_pairing = [&](std::size_t a1, std::size_t a2, std::size_t b1, std::size_t b2) {
        return rieffel_pairing(m, n, FormalTensor::pure(a1, a2), FormalTensor::pure(b1, b2));
    };

    bool balanced = true;
    std::string bal_witness;
    for (std::size_t c = 0; c < cring.size() && balanced; ++c)
        for (std::size_t a1 = 0; a1 < nm && balanced; ++a1)
            for (std::size_t a2 = 0; a2 < nn && balanced; ++a2)
                for (std::size_t b1 = 0; b1 < nm && balanced; ++b1)
                    for (std::size_t b2 = 0; b2 < nn && balanced; ++b2) {
                        // (m <| c) (x) n versus m (x) (c |> n)
                        FormalTensor lhs, rhs;
                        ModuleElement mc = act_right(m, a1, c);
                        for (const auto& [x, coeff] : mc.coefficients) lhs.terms.push_back({coeff, x, a2});
                        ModuleElement cn = act_left(n, c, a2);
                        for (const auto& [x, coeff] : cn.coefficients) rhs.terms.push_back({coeff, a1, x});
                        FormalTensor other = FormalTensor::pure(b1, b2);
                        if (!(rieffel_pairing(m, n, lhs, other) == rieffel_pairing(m, n, rhs, other))) {
                            balanced = false;
                            bal_witness = "(" + m.module_labels()[a1] + "," + cring.labels[c] + "," +
                                          n.module_labels()[a2] + ")";
                        }
                    }
    report.add("rieffel.balanced", balanced, bal_witness);

    bool hermitian = true;
    std::string herm_witness;
    for (std::size_t a1 = 0; a1 < nm && hermitian; ++a1)
        for (std::size_t a2 = 0; a2 < nn && hermitian; ++a2)
            for (std::size_t b1 = 0; b1 < nm && hermitian; ++b1)
                for (std::size_t b2 = 0; b2 < nn && hermitian; ++b2)
                    if (!(star(dring, pure_pairing(a1, a2, b1, b2)) == pure_pairing(b1, b2, a1, a2))) {
                        hermitian = false;
                        herm_witness = "(" + std::to_string(a1) + "," + std::to_string(a2) + ";" +
                                       std::to_string(b1) + "," + std::to_string(b2) + ")";
                    }
    report.add("rieffel.hermitian", hermitian, herm_witness);

    bool linear = true;
    std::string lin_witness;
    for (std::size_t d = 0; d < dring.size() && linear; ++d)
        for (std::size_t a1 = 0; a1 < nm && linear; ++a1)
            for (std::size_t a2 = 0; a2 < nn && linear; ++a2)
                for (std::size_t b1 = 0; b1 < nm && linear; ++b1)
                    for (std::size_t b2 = 0; b2 < nn && linear; ++b2) {
                        FormalTensor lhs;
                        ModuleElement dm = act_left(m, d, a1);
                        for (const auto& [x, coeff] : dm.coefficients) lhs.terms.push_back({coeff, x, a2});
                        RingElement got = rieffel_pairing(m, n, lhs, FormalTensor::pure(b1, b2));
                        RingElement expect = multiply(dring, RingElement::basis(d), pure_pairing(a1, a2, b1, b2));
                        if (!(got == expect)) {
                            linear = false;
                            lin_witness = dring.labels[d] + " |> (" + std::to_string(a1) + "," + std::to_string(a2) + ")";
                        }
                    }
    report.add("rieffel.left_linearity", linear, lin_witness);

    return report;
}

enum class DualSide { left_dual, right_dual };

/// The dual bimodule category at the Grothendieck level: a (C,D)-bimodule on
/// the same labels. Both sides produce the same matrices here because the
/// double dual is trivial on Gr and reciprocity identifies R(c*) with R(c)^T.
inline BimoduleNim dual_nimrep(const BimoduleNim& m, DualSide side = DualSide::left_dual) {
    const FusionRing& cring = m.right.ring;
    const FusionRing& dring = m.left.ring;
    std::vector<IMat> new_left(cring.size()), new_right(dring.size());
    for (std::size_t c = 0; c < cring.size(); ++c)
        new_left[c] = side == DualSide::left_dual ? m.right.action[c].transposed() : m.right.action[cring.dual[c]];
    for (std::size_t d = 0; d < dring.size(); ++d)
        new_right[d] = side == DualSide::left_dual ? m.left.action[d].transposed() : m.left.action[dring.dual[d]];
    return build_bimodule_nim(cring, dring, m.module_labels(), std::move(new_left), std::move(new_right));
}

/// The Serre permutation: the unique sigma with
/// star(<m_a~, m_a>) = <m_a, m_sigma(a~)> for all a, a~, found by exhaustive
/// search with early pruning. Guarded at 8 labels.
inline std::vector<std::size_t> serre_permutation(const BimoduleNim& m, std::size_t max_labels = 8) {
    const std::size_t n = m.module_size();
    if (n > max_labels) throw SizeGuard("Serre search supports at most " + std::to_string(max_labels) + " labels");
    const FusionRing& dring = m.left.ring;

    // target(at, a) = star(<m_at, m_a>) must equal <m_a, m_sigma(at)>
    std::vector<std::vector<RingElement>> target(n, std::vector<RingElement>(n));
    std::vector<std::vector<RingElement>> table(n, std::vector<RingElement>(n));
    for (std::size_t at = 0; at < n; ++at)
        for (std::size_t a = 0; a < n; ++a) {
            target[at][a] = star(dring, inner_hom_left(m, at, a));
            table[at][a] = inner_hom_left(m, at, a);
        }

    // candidates per position: sigma(at) = y requires target[at][a] == table[a][y] for all a
    std::vector<std::vector<std::size_t>> candidates(n);
    for (std::size_t at = 0; at < n; ++at)
        for (std::size_t y = 0; y < n; ++y) {
            bool ok = true;
            for (std::size_t a = 0; a < n && ok; ++a) ok = target[at][a] == table[a][y];
            if (ok) candidates[at].push_back(y);
        }

    std::vector<std::size_t> sigma(n, n);
    std::vector<bool> used(n, false);
    std::vector<std::vector<std::size_t>> solutions;
    auto search = [&](auto&& self, std::size_t at) -> void {
        if (solutions.size() > 1) return;
        if (at == n) {
            solutions.push_back(sigma);
            return;
        }
        for (auto y : candidates[at]) {
            if (used[y]) continue;
            used[y] = true;
            sigma[at] = y;
            self(self, at + 1);
            used[y] = false;
        }
    };
    search(search, 0);

    if (solutions.empty()) throw NoSerrePermutation();
    if (solutions.size() > 1) throw AmbiguousSerrePermutation();
    return solutions.front();
}

/// Assembles the snake composite on Gr(M) in both orientations using the
/// coevaluation class sum_i m_i (x) m_i and the evaluation pairings, and
/// verifies that each equals the identity matrix.
inline CheckReport snake_check(const BimoduleNim& m) {
    CheckReport report;
    const std::size_t n = m.module_size();

    // orientation 1: coevaluation in the left ring, evaluation by the C-valued pairing
    IMat phi1(n, n);
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t i = 0; i < n; ++i)
            phi1(i, b) = inner_hom_right(m, i, b).coefficient(m.right.ring.unit).convert_to<long long>();

    // orientation 2: coevaluation in the right ring, evaluation by the D-valued pairing
    IMat phi2(n, n);
    for (std::size_t b = 0; b < n; ++b)
        for (std::size_t i = 0; i < n; ++i)
            phi2(i, b) = inner_hom_left(m, b, i).coefficient(m.left.ring.unit).convert_to<long long>();

    bool p1 = phi1 == IMat::identity(n);
    bool p2 = phi2 == IMat::identity(n);
    report.add("snake.left_triangulator", p1, p1 ? "" : "composite differs from the identity matrix");
    report.add("snake.right_triangulator", p2, p2 ? "" : "composite differs from the identity matrix");
    return report;
}

}  // namespace pivcat

#endif
