#ifndef PIVCAT_ERRORS_HPP
#define PIVCAT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pivcat {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Structured validation failures carry the offending indices.
struct AssociativityViolation : Error {
    std::size_t i, j, k, l;
    AssociativityViolation(std::size_t i_, std::size_t j_, std::size_t k_, std::size_t l_)
        : Error("fusion associativity fails at (" + std::to_string(i_) + "," + std::to_string(j_) + "," +
                std::to_string(k_) + "," + std::to_string(l_) + ")"),
          i(i_), j(j_), k(k_), l(l_) {}
};

struct UnitViolation : Error {
    explicit UnitViolation(const std::string& detail) : Error("unit axiom fails: " + detail) {}
};

struct DualityViolation : Error {
    std::size_t i, j;
    DualityViolation(std::size_t i_, std::size_t j_, const std::string& detail)
        : Error("duality axiom fails at (" + std::to_string(i_) + "," + std::to_string(j_) + "): " + detail),
          i(i_), j(j_) {}
};

struct ReciprocityViolation : Error {
    explicit ReciprocityViolation(const std::string& detail) : Error("reciprocity fails: " + detail) {}
};

struct RepresentationViolation : Error {
    std::size_t c, d;
    RepresentationViolation(std::size_t c_, std::size_t d_)
        : Error("representation property fails at ring pair (" + std::to_string(c_) + "," + std::to_string(d_) + ")"),
          c(c_), d(d_) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& detail) : Error("index out of range: " + detail) {}
};

struct LabelUnknown : Error {
    explicit LabelUnknown(const std::string& label) : Error("unknown label: '" + label + "'") {}
};

struct RingMismatch : Error {
    explicit RingMismatch(const std::string& detail) : Error("ring mismatch: " + detail) {}
};

struct NotASubgroup : Error {
    explicit NotASubgroup(const std::string& detail) : Error("not a subgroup: " + detail) {}
};

struct NotAGroup : Error {
    explicit NotAGroup(const std::string& detail) : Error("not a group table: " + detail) {}
};

struct NoSerrePermutation : Error {
    NoSerrePermutation() : Error("no permutation satisfies the Serre identity") {}
};

struct AmbiguousSerrePermutation : Error {
    AmbiguousSerrePermutation() : Error("more than one permutation satisfies the Serre identity") {}
};

struct ConvergenceFailure : Error {
    explicit ConvergenceFailure(const std::string& detail) : Error("iteration did not converge: " + detail) {}
};

struct SizeGuard : Error {
    explicit SizeGuard(const std::string& detail) : Error("size guard exceeded: " + detail) {}
};

struct AlgebraMismatch : Error {
    explicit AlgebraMismatch(const std::string& detail) : Error("algebra mismatch: " + detail) {}
};

struct NotNormalized : Error {
    explicit NotNormalized(const std::string& detail) : Error("Frobenius data not normalized: " + detail) {}
};

struct PreconditionFailed : Error {
    std::string missing;
    explicit PreconditionFailed(const std::string& missing_property)
        : Error("precondition failed: " + missing_property), missing(missing_property) {}
};

struct NotSemisimpleBasis : Error {
    explicit NotSemisimpleBasis(const std::string& detail) : Error("not a semisimple basis: " + detail) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& detail) : Error("malformed input: " + detail) {}
};

/// One named check with outcome and, on failure, a witness description.
struct Verdict {
    std::string check;
    bool pass = false;
    std::string witness;  // empty when pass
};

/// Result list shared by the verification-style operations.
struct CheckReport {
    std::vector<Verdict> verdicts;

    bool all_pass() const {
        for (const auto& v : verdicts)
            if (!v.pass) return false;
        return true;
    }
    void add(std::string check, bool pass, std::string witness = "") {
        verdicts.push_back({std::move(check), pass, std::move(witness)});
    }
};

}  // namespace pivcat

#endif
