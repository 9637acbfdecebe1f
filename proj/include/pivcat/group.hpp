#ifndef PIVCAT_GROUP_HPP
#define PIVCAT_GROUP_HPP

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "pivcat/errors.hpp"

namespace pivcat {

/// Finite group given by its multiplication table. Immutable after construction;
/// associativity, identity and inverses are verified exhaustively.
class FiniteGroup {
public:
    /// Default-constructs the trivial group, so that aggregates embedding a
    /// group always hold a valid one.
    FiniteGroup() : n_(1), identity_(0), table_{{0}}, inverse_{0}, names_{"e"} {}

    /// table[i][j] = index of g_i * g_j.
    static FiniteGroup from_table(std::vector<std::vector<std::size_t>> table, std::vector<std::string> names = {}) {
        FiniteGroup g{Raw{}};
        g.n_ = table.size();
        if (g.n_ == 0) throw NotAGroup("empty table");
        for (const auto& row : table) {
            if (row.size() != g.n_) throw NotAGroup("table is not square");
            for (auto v : row)
                if (v >= g.n_) throw NotAGroup("table entry out of range");
        }
        g.table_ = std::move(table);
        // identity
        g.identity_ = g.n_;
        for (std::size_t e = 0; e < g.n_; ++e) {
            bool ok = true;
            for (std::size_t x = 0; x < g.n_ && ok; ++x) ok = g.table_[e][x] == x && g.table_[x][e] == x;
            if (ok) {
                g.identity_ = e;
                break;
            }
        }
        if (g.identity_ == g.n_) throw NotAGroup("no identity element");
        // inverses
        g.inverse_.assign(g.n_, g.n_);
        for (std::size_t x = 0; x < g.n_; ++x) {
            for (std::size_t y = 0; y < g.n_; ++y)
                if (g.table_[x][y] == g.identity_ && g.table_[y][x] == g.identity_) {
                    g.inverse_[x] = y;
                    break;
                }
            if (g.inverse_[x] == g.n_) throw NotAGroup("element " + std::to_string(x) + " has no inverse");
        }
        // associativity
        for (std::size_t a = 0; a < g.n_; ++a)
            for (std::size_t b = 0; b < g.n_; ++b)
                for (std::size_t c = 0; c < g.n_; ++c)
                    if (g.table_[g.table_[a][b]][c] != g.table_[a][g.table_[b][c]])
                        throw NotAGroup("associativity fails at (" + std::to_string(a) + "," + std::to_string(b) +
                                        "," + std::to_string(c) + ")");
        if (names.empty()) {
            for (std::size_t i = 0; i < g.n_; ++i) names.push_back("g" + std::to_string(i));
        }
        if (names.size() != g.n_) throw NotAGroup("names/table size mismatch");
        g.names_ = std::move(names);
        return g;
    }

    static FiniteGroup trivial() { return from_table({{0}}, {"e"}); }

    static FiniteGroup cyclic(std::size_t n) {
        std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
        std::vector<std::string> names(n);
        for (std::size_t i = 0; i < n; ++i) {
            names[i] = i == 0 ? "e" : "r" + std::to_string(i);
            for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
        }
        return from_table(std::move(t), std::move(names));
    }

    /// Symmetric group on 3 letters, elements e,(12),(13),(23),(123),(132).
    static FiniteGroup symmetric3() {
        // permutations of {0,1,2} in the order above
        const std::vector<std::vector<int>> perms = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
        const std::vector<std::string> names = {"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
        auto compose = [&](std::size_t a, std::size_t b) {
            std::vector<int> p(3);
            for (int i = 0; i < 3; ++i) p[i] = perms[a][perms[b][i]];
            for (std::size_t k = 0; k < perms.size(); ++k)
                if (perms[k] == p) return k;
            return perms.size();
        };
        std::vector<std::vector<std::size_t>> t(6, std::vector<std::size_t>(6));
        for (std::size_t a = 0; a < 6; ++a)
            for (std::size_t b = 0; b < 6; ++b) t[a][b] = compose(a, b);
        return from_table(std::move(t), names);
    }

    /// Dihedral group of order 8, elements r^i s^j with s r s = r^{-1}.
    static FiniteGroup dihedral4() {
        auto idx = [](std::size_t rot, std::size_t flip) { return rot + 4 * flip; };
        std::vector<std::vector<std::size_t>> t(8, std::vector<std::size_t>(8));
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t j = 0; j < 4; ++j)
                    for (std::size_t b = 0; b < 2; ++b) {
                        // (r^i s^a)(r^j s^b) = r^{i + j*(-1)^a} s^{a+b}
                        std::size_t rot = a == 0 ? (i + j) % 4 : (i + 4 - j % 4) % 4;
                        t[idx(i, a)][idx(j, b)] = idx(rot, (a + b) % 2);
                    }
        std::vector<std::string> names = {"e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"};
        return from_table(std::move(t), std::move(names));
    }

    std::size_t order() const { return n_; }
    std::size_t identity() const { return identity_; }
    std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
    std::size_t inv(std::size_t a) const { return inverse_[a]; }
    const std::vector<std::vector<std::size_t>>& table() const { return table_; }
    const std::string& name(std::size_t i) const { return names_[i]; }
    const std::vector<std::string>& names() const { return names_; }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < n_; ++i)
            if (names_[i] == name) return i;
        throw LabelUnknown(name);
    }

    std::size_t element_order(std::size_t a) const {
        std::size_t x = a, k = 1;
        while (x != identity_) {
            x = mul(x, a);
            ++k;
        }
        return k;
    }

    /// The exponent of the group, lcm of element orders.
    std::size_t exponent() const {
        std::size_t e = 1;
        for (std::size_t a = 0; a < n_; ++a) e = std::lcm(e, element_order(a));
        return e;
    }

    bool is_subgroup(const std::vector<std::size_t>& elems) const {
        std::set<std::size_t> s(elems.begin(), elems.end());
        if (s.empty() || !s.count(identity_)) return false;
        for (auto a : s) {
            if (a >= n_) return false;
            if (!s.count(inverse_[a])) return false;
            for (auto b : s)
                if (!s.count(table_[a][b])) return false;
        }
        return true;
    }

    /// All subgroups as sorted element lists, enumerated by closing every subset
    /// of generators (desk scale; guarded).
    std::vector<std::vector<std::size_t>> subgroups() const {
        if (n_ > 16) throw SizeGuard("subgroup enumeration supports order <= 16");
        std::set<std::vector<std::size_t>> found;
        std::vector<std::size_t> subset;
        for (std::size_t mask = 0; mask < (std::size_t(1) << n_); ++mask) {
            subset.clear();
            for (std::size_t i = 0; i < n_; ++i)
                if (mask & (std::size_t(1) << i)) subset.push_back(i);
            found.insert(closure(subset));
        }
        return {found.begin(), found.end()};
    }

    /// Subgroup generated by the given elements.
    std::vector<std::size_t> closure(const std::vector<std::size_t>& gens) const {
        std::set<std::size_t> s{identity_};
        std::vector<std::size_t> queue{identity_};
        for (auto g : gens)
            if (!s.count(g)) {
                s.insert(g);
                queue.push_back(g);
            }
        while (!queue.empty()) {
            std::size_t x = queue.back();
            queue.pop_back();
            for (auto y : std::vector<std::size_t>(s.begin(), s.end())) {
                for (std::size_t z : {mul(x, y), mul(y, x), inv(x)})
                    if (!s.count(z)) {
                        s.insert(z);
                        queue.push_back(z);
                    }
            }
        }
        return {s.begin(), s.end()};
    }

    /// Right cosets H\G as sorted element sets, ordered by smallest element.
    std::vector<std::vector<std::size_t>> right_cosets(const std::vector<std::size_t>& h) const {
        require_subgroup(h);
        std::vector<bool> seen(n_, false);
        std::vector<std::vector<std::size_t>> cosets;
        for (std::size_t x = 0; x < n_; ++x) {
            if (seen[x]) continue;
            std::vector<std::size_t> coset;
            for (auto e : h) coset.push_back(mul(e, x));
            std::sort(coset.begin(), coset.end());
            for (auto e : coset) seen[e] = true;
            cosets.push_back(std::move(coset));
        }
        return cosets;
    }

    /// Left cosets G/H as sorted element sets, ordered by smallest element.
    std::vector<std::vector<std::size_t>> left_cosets(const std::vector<std::size_t>& h) const {
        require_subgroup(h);
        std::vector<bool> seen(n_, false);
        std::vector<std::vector<std::size_t>> cosets;
        for (std::size_t x = 0; x < n_; ++x) {
            if (seen[x]) continue;
            std::vector<std::size_t> coset;
            for (auto e : h) coset.push_back(mul(x, e));
            std::sort(coset.begin(), coset.end());
            for (auto e : coset) seen[e] = true;
            cosets.push_back(std::move(coset));
        }
        return cosets;
    }

    /// Double cosets H\G/K as sorted element sets, ordered by smallest element.
    std::vector<std::vector<std::size_t>> double_cosets(const std::vector<std::size_t>& h,
                                                        const std::vector<std::size_t>& k) const {
        require_subgroup(h);
        require_subgroup(k);
        std::vector<bool> seen(n_, false);
        std::vector<std::vector<std::size_t>> out;
        for (std::size_t x = 0; x < n_; ++x) {
            if (seen[x]) continue;
            std::set<std::size_t> dc;
            for (auto a : h)
                for (auto b : k) dc.insert(mul(mul(a, x), b));
            for (auto e : dc) seen[e] = true;
            out.emplace_back(dc.begin(), dc.end());
        }
        return out;
    }

    /// The subgroup as a standalone group, together with the element map into G.
    std::pair<FiniteGroup, std::vector<std::size_t>> subgroup_as_group(const std::vector<std::size_t>& h) const {
        require_subgroup(h);
        std::vector<std::size_t> elems = h;
        std::sort(elems.begin(), elems.end());
        std::vector<std::vector<std::size_t>> t(elems.size(), std::vector<std::size_t>(elems.size()));
        std::vector<std::string> names;
        for (std::size_t i = 0; i < elems.size(); ++i) names.push_back(names_[elems[i]]);
        auto local = [&](std::size_t g) {
            auto it = std::lower_bound(elems.begin(), elems.end(), g);
            return static_cast<std::size_t>(it - elems.begin());
        };
        for (std::size_t i = 0; i < elems.size(); ++i)
            for (std::size_t j = 0; j < elems.size(); ++j) t[i][j] = local(mul(elems[i], elems[j]));
        return {from_table(std::move(t), std::move(names)), elems};
    }

    void require_subgroup(const std::vector<std::size_t>& h) const {
        if (!is_subgroup(h)) throw NotASubgroup("element set is not closed or misses identity/inverses");
    }

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
        return a.table_ == b.table_ && a.names_ == b.names_;
    }

private:
    struct Raw {};
    explicit FiniteGroup(Raw) {}

    std::size_t n_ = 0;
    std::size_t identity_ = 0;
    std::vector<std::vector<std::size_t>> table_;
    std::vector<std::size_t> inverse_;
    std::vector<std::string> names_;
};

}  // namespace pivcat

#endif
