#ifndef PIVCAT_IO_HPP
#define PIVCAT_IO_HPP

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pivcat/errors.hpp"
#include "pivcat/fusion_ring.hpp"
#include "pivcat/graded.hpp"
#include "pivcat/group.hpp"
#include "pivcat/nimrep.hpp"
#include "pivcat/pointed.hpp"

namespace pivcat {
namespace io {

using nlohmann::json;

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot read file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// FNV-1a 64-bit digest of the raw bytes, rendered as hex. Used for the
/// deterministic input stamps in reports.
inline std::string digest(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

inline json parse_json(const std::string& text, const std::string& what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError(what + " is not valid JSON");
    return j;
}

inline json load_json(const std::filesystem::path& path) { return parse_json(read_file(path), path.string()); }

/// What kind of object a JSON file describes, detected from its keys.
enum class FileKind { ring, nimrep, group, algebra, character, unknown };

inline FileKind detect_kind(const json& j) {
    if (!j.is_object()) return FileKind::unknown;
    if (j.contains("module_labels")) return FileKind::nimrep;
    if (j.contains("labels") && j.contains("fusion")) return FileKind::ring;
    if (j.contains("table") && j.contains("order")) return FileKind::group;
    if (j.contains("basis") && j.contains("mult")) return FileKind::algebra;
    if (j.contains("m") && j.contains("exponents")) return FileKind::character;
    return FileKind::unknown;
}

inline FusionRing ring_from_json(const json& j, std::size_t max_basis = 64) {
    if (!j.is_object() || !j.contains("labels") || !j.contains("unit") || !j.contains("dual") || !j.contains("fusion"))
        throw ParseError("ring file needs labels, unit, dual, fusion");
    std::vector<std::string> labels = j.at("labels").get<std::vector<std::string>>();
    auto find = [&](const std::string& s) -> std::size_t {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == s) return i;
        throw ParseError("ring refers to unknown label '" + s + "'");
    };
    std::size_t unit = find(j.at("unit").get<std::string>());
    std::vector<std::size_t> dual(labels.size());
    const json& dj = j.at("dual");
    if (!dj.is_object()) throw ParseError("dual must be an object label -> label");
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!dj.contains(labels[i])) throw ParseError("dual missing label '" + labels[i] + "'");
        dual[i] = find(dj.at(labels[i]).get<std::string>());
    }
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, long long> coeff;
    for (const json& t : j.at("fusion")) {
        if (!t.contains("i") || !t.contains("j") || !t.contains("k") || !t.contains("n"))
            throw ParseError("fusion entries need i, j, k, n");
        long long n = t.at("n").get<long long>();
        if (n <= 0) throw ParseError("fusion multiplicity must be positive");
        auto key = std::make_tuple(find(t.at("i").get<std::string>()), find(t.at("j").get<std::string>()),
                                   find(t.at("k").get<std::string>()));
        if (coeff.count(key)) throw ParseError("duplicate fusion triple");
        coeff[key] = n;
    }
    return build_fusion_ring(std::move(labels), unit, std::move(dual), std::move(coeff), max_basis);
}

inline FiniteGroup group_from_json(const json& j) {
    if (!j.is_object() || !j.contains("order") || !j.contains("table")) throw ParseError("group file needs order and table");
    std::size_t n = j.at("order").get<std::size_t>();
    auto table = j.at("table").get<std::vector<std::vector<std::size_t>>>();
    if (table.size() != n) throw ParseError("group table size differs from order");
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    return FiniteGroup::from_table(std::move(table), std::move(names));
}

inline Character character_from_json(const json& j, const FiniteGroup& g) {
    if (!j.is_object() || !j.contains("m") || !j.contains("exponents"))
        throw ParseError("character needs m and exponents");
    int m = j.at("m").get<int>();
    std::vector<int> exps(g.order(), 0);
    for (const auto& [name, value] : j.at("exponents").items()) exps[g.index_of(name)] = value.get<int>();
    return make_character(g, m, std::move(exps));
}

inline std::vector<std::size_t> subgroup_from_json(const json& j, const FiniteGroup& g) {
    if (!j.is_array()) throw ParseError("subgroup must be an array of element names");
    std::vector<std::size_t> elems;
    for (const json& e : j) elems.push_back(g.index_of(e.get<std::string>()));
    g.require_subgroup(elems);
    return elems;
}

/// Resolves a value that is either an inline object or a path (relative to
/// base_dir) to another JSON file.
inline json resolve_ref(const json& j, const std::filesystem::path& base_dir) {
    if (j.is_object()) return j;
    if (j.is_string()) return load_json(base_dir / j.get<std::string>());
    throw ParseError("reference must be a path string or an inline object");
}

inline IMat imat_from_json(const json& j, std::size_t n) {
    IMat m(n, n);
    if (j.is_array() && j.size() == n * n && (n == 0 || !j.at(0).is_array())) {
        for (std::size_t i = 0; i < n * n; ++i) m.data[i] = j.at(i).get<long long>();
        return m;
    }
    if (!j.is_array() || j.size() != n) throw ParseError("action matrix must be n x n (nested or row-major)");
    for (std::size_t i = 0; i < n; ++i) {
        const json& row = j.at(i);
        if (!row.is_array() || row.size() != n) throw ParseError("action matrix row has wrong length");
        for (std::size_t k = 0; k < n; ++k) m(i, k) = row.at(k).get<long long>();
    }
    return m;
}

/// Loads a NIM-rep file. With a right_action block the same ring acts on both
/// sides; without one the right action is the trivial one of Vect.
inline BimoduleNim nimrep_from_json(const json& j, const std::filesystem::path& base_dir, std::size_t max_basis = 64) {
    if (!j.is_object() || !j.contains("ring") || !j.contains("module_labels") || !j.contains("left_action"))
        throw ParseError("nimrep file needs ring, module_labels, left_action");
    FusionRing ring = ring_from_json(resolve_ref(j.at("ring"), base_dir), max_basis);
    auto labels = j.at("module_labels").get<std::vector<std::string>>();
    const std::size_t n = labels.size();

    auto actions_from = [&](const json& block) {
        std::vector<IMat> action(ring.size());
        std::vector<bool> seen(ring.size(), false);
        for (const auto& [label, mat] : block.items()) {
            std::size_t idx = ring.index_of(label);
            action[idx] = imat_from_json(mat, n);
            seen[idx] = true;
        }
        for (std::size_t i = 0; i < ring.size(); ++i)
            if (!seen[i]) {
                if (i == ring.unit)
                    action[i] = IMat::identity(n);
                else
                    throw ParseError("missing action matrix for '" + ring.labels[i] + "'");
            }
        return action;
    };

    std::vector<IMat> left = actions_from(j.at("left_action"));
    if (j.contains("right_action")) {
        std::vector<IMat> right = actions_from(j.at("right_action"));
        return build_bimodule_nim(ring, ring, std::move(labels), std::move(left), std::move(right));
    }
    std::vector<IMat> right{IMat::identity(n)};
    return build_bimodule_nim(std::move(ring), trivial_ring(), std::move(labels), std::move(left), std::move(right));
}

inline Cyclotomic scalar_from_json(const json& j) {
    if (j.is_number_integer()) return Cyclotomic(Rat(j.get<long long>()));
    if (j.is_string()) return Cyclotomic(parse_rat(j.get<std::string>()));
    throw ParseError("scalars must be integers or \"p/q\" strings");
}

inline CVec vector_from_json(const json& j, const GradedVectorSpace& space) {
    CVec v(space.dim(), Cyclotomic(0));
    if (!j.is_object()) throw ParseError("coefficient vectors must be objects id -> rational");
    for (const auto& [id, value] : j.items()) {
        bool found = false;
        for (std::size_t i = 0; i < space.dim(); ++i)
            if (space.ids[i] == id) {
                v[i] = scalar_from_json(value);
                found = true;
                break;
            }
        if (!found) throw ParseError("unknown basis id '" + id + "'");
    }
    return v;
}

/// Loads a graded algebra file; validates the algebra axioms.
inline GradedAlgebra algebra_from_json(const json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object() || !j.contains("group") || !j.contains("basis") || !j.contains("mult") || !j.contains("unit"))
        throw ParseError("algebra file needs group, basis, mult, unit");
    GradedAlgebra a;
    a.space.group = group_from_json(resolve_ref(j.at("group"), base_dir));
    for (const json& b : j.at("basis")) {
        if (!b.contains("id") || !b.contains("grade")) throw ParseError("basis entries need id and grade");
        a.space.ids.push_back(b.at("id").get<std::string>());
        a.space.grades.push_back(a.space.group.index_of(b.at("grade").get<std::string>()));
    }
    const std::size_t n = a.dim();
    a.mult.assign(n, std::vector<CVec>(n, CVec(n, Cyclotomic(0))));
    auto find = [&](const std::string& id) -> std::size_t {
        for (std::size_t i = 0; i < n; ++i)
            if (a.space.ids[i] == id) return i;
        throw ParseError("unknown basis id '" + id + "'");
    };
    for (const json& entry : j.at("mult")) {
        if (!entry.contains("i") || !entry.contains("j") || !entry.contains("out"))
            throw ParseError("mult entries need i, j, out");
        std::size_t i = find(entry.at("i").get<std::string>());
        std::size_t jj = find(entry.at("j").get<std::string>());
        CVec out = vector_from_json(entry.at("out"), a.space);
        for (std::size_t k = 0; k < n; ++k) a.mult[i][jj][k] = out[k];
    }
    a.unit = vector_from_json(j.at("unit"), a.space);
    CheckReport rep = check_algebra(a);
    if (!rep.all_pass()) {
        for (const auto& v : rep.verdicts)
            if (!v.pass) throw Error("algebra validation failed: " + v.check + " at " + v.witness);
    }
    return a;
}

/// Optional counit in the file; otherwise the identity-grade functional.
inline CVec counit_from_json(const json& j, const GradedAlgebra& a) {
    if (j.contains("counit")) return vector_from_json(j.at("counit"), a.space);
    return standard_counit(a);
}

/// Optional comultiplication entries [{"i","j","k","c"}]; otherwise derived
/// from the counit through the non-degenerate pairing.
inline std::vector<CMat> derive_comult_or_load(const json& j, const GradedAlgebra& a, const CVec& counit) {
    if (!j.contains("comult")) return derive_comult(a, counit);
    const std::size_t n = a.dim();
    auto find = [&](const std::string& id) -> std::size_t {
        for (std::size_t i = 0; i < n; ++i)
            if (a.space.ids[i] == id) return i;
        throw ParseError("unknown basis id '" + id + "'");
    };
    std::vector<CMat> comult(n, CMat(n, n));
    for (const json& entry : j.at("comult")) {
        if (!entry.contains("i") || !entry.contains("j") || !entry.contains("k") || !entry.contains("c"))
            throw ParseError("comult entries need i, j, k, c");
        comult[find(entry.at("i").get<std::string>())](find(entry.at("j").get<std::string>()),
                                                       find(entry.at("k").get<std::string>())) =
            scalar_from_json(entry.at("c"));
    }
    return comult;
}

}  // namespace io
}  // namespace pivcat

#endif
