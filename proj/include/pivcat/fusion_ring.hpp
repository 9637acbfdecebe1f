#ifndef PIVCAT_FUSION_RING_HPP
#define PIVCAT_FUSION_RING_HPP

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "pivcat/errors.hpp"
#include "pivcat/group.hpp"
#include "pivcat/matrix.hpp"
#include "pivcat/rational.hpp"

namespace pivcat {

/// Fusion ring: based ring with non-negative integer structure constants
/// N_{ij}^k, a unit basis element and a duality involution. Construct through
/// build_fusion_ring, which verifies the axioms exhaustively.
struct FusionRing {
    std::vector<std::string> labels;
    std::size_t unit = 0;
    std::vector<std::size_t> dual;
    /// Sparse multiplicities; absent triples are zero.
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, long long> coefficients;

    std::size_t size() const { return labels.size(); }

    long long n(std::size_t i, std::size_t j, std::size_t k) const {
        auto it = coefficients.find({i, j, k});
        return it == coefficients.end() ? 0 : it->second;
    }

    std::size_t index_of(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return i;
        throw LabelUnknown(label);
    }

    /// Left multiplication matrix of basis element i: (L_i)_{k j} = N_{ij}^k.
    IMat left_matrix(std::size_t i) const {
        IMat m(size(), size());
        for (const auto& [key, v] : coefficients)
            if (std::get<0>(key) == i) m(std::get<2>(key), std::get<1>(key)) = v;
        return m;
    }

    friend bool operator==(const FusionRing& a, const FusionRing& b) {
        return a.labels == b.labels && a.unit == b.unit && a.dual == b.dual && a.coefficients == b.coefficients;
    }
};

/// Element of the rationalized fusion ring, sparse over the basis.
struct RingElement {
    std::map<std::size_t, Rat> coefficients;

    static RingElement basis(std::size_t i) { return RingElement{{{i, Rat(1)}}}; }

    Rat coefficient(std::size_t i) const {
        auto it = coefficients.find(i);
        return it == coefficients.end() ? Rat(0) : it->second;
    }

    RingElement& add(std::size_t i, const Rat& c) {
        if (c == 0) return *this;
        auto [it, inserted] = coefficients.emplace(i, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) coefficients.erase(it);
        }
        return *this;
    }

    friend RingElement operator+(const RingElement& a, const RingElement& b) {
        RingElement out = a;
        for (const auto& [i, c] : b.coefficients) out.add(i, c);
        return out;
    }

    friend RingElement operator*(const Rat& c, const RingElement& a) {
        RingElement out;
        if (c == 0) return out;
        for (const auto& [i, v] : a.coefficients) out.coefficients[i] = c * v;
        return out;
    }

    friend bool operator==(const RingElement& a, const RingElement& b) {
        return a.coefficients == b.coefficients;
    }

    bool is_zero() const { return coefficients.empty(); }
};

inline void require_index(const FusionRing& r, std::size_t i) {
    if (i >= r.size()) throw IndexOutOfRange("basis index " + std::to_string(i) + " in a ring of rank " + std::to_string(r.size()));
}

inline void require_supported(const FusionRing& r, const RingElement& x) {
    for (const auto& [i, c] : x.coefficients) {
        (void)c;
        require_index(r, i);
    }
}

/// Validates the four structural axioms and returns the ring.
/// The associativity sweep is O(n^4); rings larger than max_basis are rejected.
inline FusionRing build_fusion_ring(std::vector<std::string> labels, std::size_t unit, std::vector<std::size_t> dual,
                                    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, long long> coefficients,
                                    std::size_t max_basis = 64) {
    const std::size_t n = labels.size();
    if (n == 0) throw ParseError("fusion ring needs a non-empty label set");
    if (n > max_basis) throw SizeGuard("ring has " + std::to_string(n) + " simples, guard is " + std::to_string(max_basis));
    if (unit >= n) throw IndexOutOfRange("unit index");
    if (dual.size() != n) throw ParseError("dual involution has wrong length");
    for (auto d : dual)
        if (d >= n) throw IndexOutOfRange("dual image");
    for (auto it = coefficients.begin(); it != coefficients.end();) {
        auto [i, j, k] = it->first;
        if (i >= n || j >= n || k >= n) throw IndexOutOfRange("fusion coefficient index");
        if (it->second < 0) throw ParseError("negative fusion multiplicity");
        if (it->second == 0)
            it = coefficients.erase(it);
        else
            ++it;
    }

    FusionRing r{std::move(labels), unit, std::move(dual), std::move(coefficients)};

    // dual is an involution
    for (std::size_t i = 0; i < n; ++i)
        if (r.dual[r.dual[i]] != i) throw DualityViolation(i, r.dual[i], "dual map is not an involution");

    // unit: N_{1j}^k = delta_{jk} = N_{j1}^k
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            long long expect = j == k ? 1 : 0;
            if (r.n(r.unit, j, k) != expect)
                throw UnitViolation("N_{1," + r.labels[j] + "}^{" + r.labels[k] + "} = " + std::to_string(r.n(r.unit, j, k)));
            if (r.n(j, r.unit, k) != expect)
                throw UnitViolation("N_{" + r.labels[j] + ",1}^{" + r.labels[k] + "} = " + std::to_string(r.n(j, r.unit, k)));
        }

    // duality: N_{ij}^1 = delta_{j,i*}
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            long long expect = j == r.dual[i] ? 1 : 0;
            if (r.n(i, j, r.unit) != expect)
                throw DualityViolation(i, j, "N_{i,j}^1 = " + std::to_string(r.n(i, j, r.unit)));
        }

    // Frobenius reciprocity: N_{ij}^k = N_{i*k}^j = N_{kj*}^i
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                long long v = r.n(i, j, k);
                if (v != r.n(r.dual[i], k, j) || v != r.n(k, r.dual[j], i))
                    throw ReciprocityViolation("triple (" + r.labels[i] + "," + r.labels[j] + "," + r.labels[k] + ")");
            }

    // associativity: sum_m N_{ij}^m N_{mk}^l = sum_m N_{jk}^m N_{im}^l
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t l = 0; l < n; ++l) {
                    long long lhs = 0, rhs = 0;
                    for (std::size_t m = 0; m < n; ++m) {
                        lhs += r.n(i, j, m) * r.n(m, k, l);
                        rhs += r.n(j, k, m) * r.n(i, m, l);
                    }
                    if (lhs != rhs) throw AssociativityViolation(i, j, k, l);
                }

    return r;
}

inline RingElement multiply(const FusionRing& r, const RingElement& x, const RingElement& y) {
    require_supported(r, x);
    require_supported(r, y);
    RingElement out;
    for (const auto& [i, a] : x.coefficients)
        for (const auto& [j, b] : y.coefficients) {
            Rat c = a * b;
            for (std::size_t k = 0; k < r.size(); ++k) {
                long long m = r.n(i, j, k);
                if (m != 0) out.add(k, c * m);
            }
        }
    return out;
}

/// The *-involution: basis element i goes to i*, coefficients are fixed
/// (they are rational, so conjugation acts trivially).
inline RingElement star(const FusionRing& r, const RingElement& x) {
    require_supported(r, x);
    RingElement out;
    for (const auto& [i, c] : x.coefficients) out.add(r.dual[i], c);
    return out;
}

/// Verifies that star is an involutive anti-automorphism on the basis.
inline CheckReport check_star_axioms(const FusionRing& r) {
    CheckReport report;
    bool anti = true, invol = true;
    std::string anti_witness, invol_witness;
    for (std::size_t i = 0; i < r.size() && invol; ++i)
        if (r.dual[r.dual[i]] != i) {
            invol = false;
            invol_witness = r.labels[i];
        }
    for (std::size_t i = 0; i < r.size() && anti; ++i)
        for (std::size_t j = 0; j < r.size() && anti; ++j) {
            RingElement lhs = star(r, multiply(r, RingElement::basis(i), RingElement::basis(j)));
            RingElement rhs = multiply(r, star(r, RingElement::basis(j)), star(r, RingElement::basis(i)));
            if (!(lhs == rhs)) {
                anti = false;
                anti_witness = "(" + r.labels[i] + "," + r.labels[j] + ")";
            }
        }
    report.add("star.antiautomorphism", anti, anti_witness);
    report.add("star.involution", invol, invol_witness);
    return report;
}

/// Frobenius-Perron dimensions by power iteration on the total fusion matrix.
/// Diagnostic only; the sole deliberately inexact computation in the library.
inline std::vector<double> fp_dimensions(const FusionRing& r, double tolerance = 1e-12, std::size_t max_iter = 100000) {
    const std::size_t n = r.size();
    IMat total(n, n);
    for (std::size_t i = 0; i < n; ++i) total = total + r.left_matrix(i);
    std::vector<double> v(n, 1.0), w(n, 0.0);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += static_cast<double>(total(i, j)) * v[j];
            w[i] = acc;
        }
        double norm = 0.0;
        for (double x : w) norm = std::max(norm, std::abs(x));
        if (norm == 0.0) throw ConvergenceFailure("total fusion matrix is nilpotent");
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] /= norm;
            delta = std::max(delta, std::abs(w[i] - v[i]));
        }
        v = w;
        if (delta < tolerance) {
            double unit_dim = v[r.unit];
            for (auto& x : v) x /= unit_dim;
            return v;
        }
    }
    throw ConvergenceFailure("power iteration cap reached");
}

/// Pointed fusion ring of a finite group: labels are the elements,
/// N_{gh}^k = [gh = k], dual is the group inverse.
inline FusionRing pointed_ring(const FiniteGroup& g) {
    std::vector<std::size_t> dual(g.order());
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, long long> coeff;
    for (std::size_t a = 0; a < g.order(); ++a) {
        dual[a] = g.inv(a);
        for (std::size_t b = 0; b < g.order(); ++b) coeff[{a, b, g.mul(a, b)}] = 1;
    }
    return build_fusion_ring(g.names(), g.identity(), std::move(dual), std::move(coeff));
}

/// The fusion ring of Vect: a single label "1".
inline FusionRing trivial_ring() { return pointed_ring(FiniteGroup::trivial()); }

/// Renders an element like "1 + 2*t" with coefficients in lowest terms.
inline std::string to_string(const FusionRing& r, const RingElement& x) {
    if (x.coefficients.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : x.coefficients) {
        Rat a = c;
        if (!first) {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        } else if (a < 0) {
            os << '-';
            a = -a;
        }
        if (a != 1) os << format_rat(a) << '*';
        os << r.labels[i];
        first = false;
    }
    return os.str();
}

}  // namespace pivcat

#endif
