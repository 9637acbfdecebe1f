#ifndef PIVCAT_CYCLOTOMIC_HPP
#define PIVCAT_CYCLOTOMIC_HPP

#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pivcat/rational.hpp"

namespace pivcat {

namespace detail {

/// Euler totient, plain trial division (orders here are tiny).
inline int totient(int m) {
    int result = m;
    int n = m;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

/// Exact division of integer polynomials, quotient known to be integral.
inline std::vector<BigInt> poly_divide_exact(std::vector<BigInt> num, const std::vector<BigInt>& den) {
    std::vector<BigInt> quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
    for (int k = static_cast<int>(quot.size()) - 1; k >= 0; --k) {
        BigInt c = num[k + den.size() - 1] / den.back();
        quot[k] = c;
        for (std::size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
    }
    for (const auto& c : num)
        if (c != 0) throw std::logic_error("poly_divide_exact: nonzero remainder");
    return quot;
}

/// Coefficients of the m-th cyclotomic polynomial, constant term first. Cached.
inline const std::vector<BigInt>& cyclotomic_poly(int m) {
    static std::map<int, std::vector<BigInt>> cache;
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    std::vector<BigInt> num(m + 1, 0);
    num[0] = -1;
    num[m] = 1;
    for (int d = 1; d < m; ++d)
        if (m % d == 0) num = poly_divide_exact(std::move(num), cyclotomic_poly(d));
    return cache.emplace(m, std::move(num)).first->second;
}

}  // namespace detail

/// Element of the cyclotomic field Q(zeta_m), stored as a rational-coefficient
/// polynomial in zeta_m reduced modulo the m-th cyclotomic polynomial.
/// Equality is coefficient-wise on reduced representatives of a common order.
class Cyclotomic {
public:
    Cyclotomic() : order_(1), coeff_(1, Rat(0)) {}

    explicit Cyclotomic(const Rat& r, int order = 1) : order_(order), coeff_(detail::totient(order), Rat(0)) {
        check_order(order);
        coeff_[0] = r;
    }

    explicit Cyclotomic(long long n) : Cyclotomic(Rat(n)) {}

    /// zeta_m^k
    static Cyclotomic root_of_unity(int m, long long k) {
        check_order(m);
        k %= m;
        if (k < 0) k += m;
        std::vector<Rat> raw(static_cast<std::size_t>(k) + 1, Rat(0));
        raw.back() = Rat(1);
        return Cyclotomic(m, reduce(std::move(raw), m));
    }

    int order() const { return order_; }
    const std::vector<Rat>& coefficients() const { return coeff_; }

    bool is_zero() const {
        return std::all_of(coeff_.begin(), coeff_.end(), [](const Rat& c) { return c == 0; });
    }

    bool is_rational() const {
        for (std::size_t i = 1; i < coeff_.size(); ++i)
            if (coeff_[i] != 0) return false;
        return true;
    }

    /// The rational value, if is_rational().
    Rat rational_value() const {
        if (!is_rational()) throw std::logic_error("cyclotomic value is not rational");
        return coeff_[0];
    }

    /// Re-expresses the element in Q(zeta_n) for order_ | n, via zeta_m = zeta_n^{n/m}.
    Cyclotomic promoted(int n) const {
        if (n == order_) return *this;
        if (n % order_ != 0) throw std::invalid_argument("promoted: order is not a multiple");
        int step = n / order_;
        std::vector<Rat> raw(static_cast<std::size_t>(order_) * step, Rat(0));
        for (std::size_t i = 0; i < coeff_.size(); ++i) raw[i * step] = coeff_[i];
        return Cyclotomic(n, reduce(std::move(raw), n));
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = to_common(a, b);
        for (std::size_t i = 0; i < y.coeff_.size(); ++i) x.coeff_[i] += y.coeff_[i];
        return x;
    }

    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = to_common(a, b);
        for (std::size_t i = 0; i < y.coeff_.size(); ++i) x.coeff_[i] -= y.coeff_[i];
        return x;
    }

    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& c : r.coeff_) c = -c;
        return r;
    }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = to_common(a, b);
        std::vector<Rat> raw(x.coeff_.size() + y.coeff_.size(), Rat(0));
        for (std::size_t i = 0; i < x.coeff_.size(); ++i) {
            if (x.coeff_[i] == 0) continue;
            for (std::size_t j = 0; j < y.coeff_.size(); ++j)
                if (y.coeff_[j] != 0) raw[i + j] += x.coeff_[i] * y.coeff_[j];
        }
        return Cyclotomic(x.order_, reduce(std::move(raw), x.order_));
    }

    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[x] mod Phi_m.
    Cyclotomic inverse() const {
        if (is_zero()) throw std::domain_error("cyclotomic inverse of zero");
        if (is_rational()) return Cyclotomic(Rat(1) / coeff_[0], order_);
        const auto& phi_int = detail::cyclotomic_poly(order_);
        std::vector<Rat> r0(phi_int.begin(), phi_int.end());
        std::vector<Rat> r1 = coeff_;
        trim(r1);
        std::vector<Rat> s0{Rat(0)}, s1{Rat(1)};
        while (degree(r1) > 0) {
            auto [q, rem] = poly_divmod(r0, r1);
            std::vector<Rat> s2 = poly_sub(s0, poly_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            trim(r1);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r1.empty() || r1[0] == 0) throw std::logic_error("cyclotomic inverse: gcd not a unit");
        Rat lead = r1[0];
        for (auto& c : s1) c /= lead;
        return Cyclotomic(order_, reduce(std::move(s1), order_));
    }

    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        auto [x, y] = to_common(a, b);
        return x.coeff_ == y.coeff_;
    }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    std::complex<double> approx() const {
        std::complex<double> z = std::polar(1.0, 2.0 * 3.141592653589793238462643 / order_);
        std::complex<double> acc(0.0, 0.0);
        for (std::size_t i = coeff_.size(); i-- > 0;) acc = acc * z + std::complex<double>(to_double(coeff_[i]), 0.0);
        return acc;
    }

    /// Reduced polynomial in "z", e.g. "1/2*z^2 - z + 3".
    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = coeff_.size(); i-- > 0;) {
            const Rat& c = coeff_[i];
            if (c == 0) continue;
            Rat a = c;
            if (!first) {
                os << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            } else if (a < 0) {
                os << '-';
                a = -a;
            }
            if (i == 0) {
                os << format_rat(a);
            } else {
                if (a != 1) os << format_rat(a) << '*';
                os << 'z';
                if (i > 1) os << '^' << i;
            }
            first = false;
        }
        if (first) os << '0';
        return os.str();
    }

private:
    Cyclotomic(int order, std::vector<Rat> reduced) : order_(order), coeff_(std::move(reduced)) {}

    static void check_order(int m) {
        if (m < 1) throw std::invalid_argument("cyclotomic order must be positive");
        if (m > 1024) throw std::invalid_argument("cyclotomic order too large");
    }

    static int degree(const std::vector<Rat>& p) {
        for (std::size_t i = p.size(); i-- > 0;)
            if (p[i] != 0) return static_cast<int>(i);
        return -1;
    }

    static void trim(std::vector<Rat>& p) {
        while (!p.empty() && p.back() == 0) p.pop_back();
    }

    static std::vector<Rat> poly_mul(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<Rat> out(a.size() + b.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        return out;
    }

    static std::vector<Rat> poly_sub(const std::vector<Rat>& a, const std::vector<Rat>& b) {
        std::vector<Rat> out = a;
        if (out.size() < b.size()) out.resize(b.size(), Rat(0));
        for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
        return out;
    }

    static std::pair<std::vector<Rat>, std::vector<Rat>> poly_divmod(std::vector<Rat> num,
                                                                     const std::vector<Rat>& den) {
        int dd = degree(den);
        if (dd < 0) throw std::domain_error("poly_divmod by zero");
        std::vector<Rat> quot(num.size(), Rat(0));
        for (int k = degree(num); k >= dd; k = degree(num)) {
            Rat c = num[k] / den[dd];
            quot[k - dd] += c;
            for (int j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
        }
        return {std::move(quot), std::move(num)};
    }

    /// Reduces a raw coefficient vector modulo Phi_m to degree < phi(m).
    static std::vector<Rat> reduce(std::vector<Rat> raw, int m) {
        const auto& phi_int = detail::cyclotomic_poly(m);
        const std::size_t deg = phi_int.size() - 1;  // = totient(m)
        if (raw.size() > deg) {
            for (std::size_t k = raw.size(); k-- > deg;) {
                if (raw[k] == 0) continue;
                Rat c = raw[k];  // phi is monic
                raw[k] = 0;
                for (std::size_t j = 0; j < deg; ++j) raw[k - deg + j] -= c * Rat(BigInt(phi_int[j]));
            }
        }
        raw.resize(deg, Rat(0));
        return raw;
    }

    static std::pair<Cyclotomic, Cyclotomic> to_common(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.order_ == b.order_) return {a, b};
        int l = std::lcm(a.order_, b.order_);
        return {a.promoted(l), b.promoted(l)};
    }

    int order_;
    std::vector<Rat> coeff_;
};

}  // namespace pivcat

#endif
