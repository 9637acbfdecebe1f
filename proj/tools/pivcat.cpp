// pivcat: exact calculator for fusion rings, NIM-reps, pointed module
// categories and Frobenius algebra objects. One binary, subcommand dispatch,
// all numeric output exact; deterministic reports for identical inputs.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pivcat/pivcat.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pivcat;

namespace {

struct Options {
    std::string format = "text";
    bool approx = false;
    std::size_t max_basis = 64;
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
    CheckReport checks;
    json artifacts = json::object();

    void input_file(const fs::path& p) { inputs.emplace_back(p.string(), io::digest(io::read_file(p))); }
};

void print_report(const Report& r, const Options& opt) {
    if (opt.format == "json") {
        json j;
        j["schema"] = "pivcat/1";
        j["command"] = r.command;
        j["inputs"] = json::array();
        for (const auto& [path, digest] : r.inputs) j["inputs"].push_back({{"path", path}, {"digest", digest}});
        j["verdicts"] = json::array();
        for (const auto& v : r.checks.verdicts) {
            json jv{{"check", v.check}, {"pass", v.pass}};
            if (!v.witness.empty()) jv["witness"] = v.witness;
            j["verdicts"].push_back(jv);
        }
        j["artifacts"] = r.artifacts;
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (const auto& [path, digest] : r.inputs) std::cout << "input " << path << " [" << digest << "]\n";
    for (const auto& v : r.checks.verdicts) {
        std::cout << (v.pass ? "PASS " : "FAIL ") << v.check;
        if (!v.witness.empty()) std::cout << "  (" << v.witness << ")";
        std::cout << "\n";
    }
    if (!r.artifacts.empty()) std::cout << r.artifacts.dump(2) << "\n";
}

/// Inline JSON if the argument looks like JSON, otherwise a file path.
json arg_to_json(const std::string& arg, Report& report) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return io::parse_json(arg, "argument");
    report.input_file(arg);
    return io::load_json(arg);
}

std::string scalar_string(const Cyclotomic& c, const Options& opt) {
    std::string s = c.to_string();
    if (opt.approx) {
        auto z = c.approx();
        s += "  ~ " + std::to_string(z.real()) + (z.imag() >= 0 ? "+" : "") + std::to_string(z.imag()) + "i";
    }
    return s;
}

int cmd_validate(const std::string& path, const Options& opt) {
    Report report;
    report.command = "validate";
    report.input_file(path);
    json j = io::load_json(path);
    io::FileKind kind = io::detect_kind(j);
    fs::path base = fs::path(path).parent_path();
    switch (kind) {
        case io::FileKind::ring: {
            FusionRing r = io::ring_from_json(j, opt.max_basis);
            report.checks.add("ring.axioms", true);
            CheckReport star = check_star_axioms(r);
            for (auto& v : star.verdicts) report.checks.verdicts.push_back(v);
            report.artifacts["kind"] = "ring";
            report.artifacts["rank"] = r.size();
            break;
        }
        case io::FileKind::nimrep: {
            BimoduleNim nim = io::nimrep_from_json(j, base, opt.max_basis);
            report.checks.add("nimrep.axioms", true);
            for (auto& v : verify_inner_product_axioms(nim).verdicts) report.checks.verdicts.push_back(v);
            for (auto& v : snake_check(nim).verdicts) report.checks.verdicts.push_back(v);
            report.artifacts["kind"] = "nimrep";
            report.artifacts["module_rank"] = nim.module_size();
            break;
        }
        case io::FileKind::group: {
            FiniteGroup g = io::group_from_json(j);
            report.checks.add("group.axioms", true);
            report.artifacts["kind"] = "group";
            report.artifacts["order"] = g.order();
            break;
        }
        case io::FileKind::algebra: {
            GradedAlgebra a = io::algebra_from_json(j, base);
            report.checks.add("algebra.axioms", true);
            report.artifacts["kind"] = "algebra";
            report.artifacts["dimension"] = a.dim();
            break;
        }
        case io::FileKind::character: {
            if (j.at("m").get<int>() < 1) throw ParseError("character root order must be positive");
            report.checks.add("character.shape", true);
            report.artifacts["kind"] = "character";
            break;
        }
        default:
            throw ParseError("file is not a ring, nimrep, group, algebra or character");
    }
    print_report(report, opt);
    return report.checks.all_pass() ? 0 : 1;
}

int cmd_innerhom(const std::string& path, const std::string& a, const std::string& b, const std::string& side,
                 const Options& opt) {
    Report report;
    report.command = "innerhom";
    report.input_file(path);
    BimoduleNim nim = io::nimrep_from_json(io::load_json(path), fs::path(path).parent_path(), opt.max_basis);
    RingElement result;
    const FusionRing* value_ring = nullptr;
    if (side == "left") {
        result = inner_hom_left(nim, a, b);
        value_ring = &nim.left.ring;
    } else {
        result = inner_hom_right(nim, a, b);
        value_ring = &nim.right.ring;
    }
    report.checks.add("innerhom.computed", true);
    report.artifacts["side"] = side;
    report.artifacts["inner_hom"] = to_string(*value_ring, result);
    if (opt.approx) {
        double fp = 0;
        auto dims = fp_dimensions(*value_ring);
        for (const auto& [i, c] : result.coefficients) fp += to_double(c) * dims[i];
        report.artifacts["approx_fp_value"] = fp;
    }
    print_report(report, opt);
    return 0;
}

int cmd_moduletrace(const std::string& group_path, const std::string& subgroup_arg, const std::string& char_arg,
                    const Options& opt) {
    Report report;
    report.command = "moduletrace";
    report.input_file(group_path);
    FiniteGroup g = io::group_from_json(io::load_json(group_path));
    std::vector<std::size_t> h = io::subgroup_from_json(arg_to_json(subgroup_arg, report), g);
    Character chi = io::character_from_json(arg_to_json(char_arg, report), g);

    bool exists = module_trace_exists(g, h, chi);
    ModuleTraceResult solved = build_module_trace(g, h, chi);
    report.checks.add("moduletrace.two_route_agreement", exists == solved.feasible(),
                      exists == solved.feasible() ? "" : "criterion and solver disagree");
    report.artifacts["exists"] = exists;
    if (solved.feasible()) {
        CosetModule cm = make_coset_module(g, h);
        json theta = json::object();
        for (const auto& [c, v] : *solved.theta) theta[cm.coset_names[c]] = scalar_string(v, opt);
        report.artifacts["theta"] = theta;
    } else {
        json cycle = json::array();
        Cyclotomic prod(1);
        for (auto e : solved.infeasible_cycle) {
            cycle.push_back(g.name(e));
            prod *= chi.value(e);
        }
        report.artifacts["infeasible_cycle"] = cycle;
        report.artifacts["cycle_kappa_product"] = scalar_string(prod, opt);
    }
    print_report(report, opt);
    return report.checks.all_pass() ? 0 : 1;
}

int cmd_frobenius(const std::string& algebra_path, const std::string& char_arg, const Options& opt) {
    Report report;
    report.command = "frobenius";
    report.input_file(algebra_path);
    json aj = io::load_json(algebra_path);
    GradedAlgebra a = io::algebra_from_json(aj, fs::path(algebra_path).parent_path());
    Character chi = io::character_from_json(arg_to_json(char_arg, report), a.space.group);

    FrobeniusData f{a, io::counit_from_json(aj, a), {}, chi};
    f.comult = io::derive_comult_or_load(aj, a, f.counit);
    FrobeniusReport fr = frobenius_verify(f);
    for (auto& v : fr.details.verdicts) report.checks.verdicts.push_back(v);
    report.artifacts["is_frobenius"] = fr.is_frobenius;
    report.artifacts["is_special"] = fr.is_special;
    report.artifacts["is_normalized"] = fr.is_normalized;
    report.artifacts["is_symmetric"] = fr.is_symmetric;
    report.artifacts["is_separable"] = fr.is_separable;
    if (fr.is_special) {
        report.artifacts["beta_A"] = scalar_string(fr.beta_a, opt);
        report.artifacts["beta_1"] = scalar_string(fr.beta_one, opt);
    }
    print_report(report, opt);
    return 0;
}

int cmd_tensor(const std::string& group_path, const std::string& h_arg, const std::string& k_arg,
               const Options& opt) {
    Report report;
    report.command = "tensor";
    report.input_file(group_path);
    FiniteGroup g = io::group_from_json(io::load_json(group_path));
    std::vector<std::size_t> h = io::subgroup_from_json(arg_to_json(h_arg, report), g);
    std::vector<std::size_t> k = io::subgroup_from_json(arg_to_json(k_arg, report), g);

    CheckReport consistency = checks::rieffel_hom_consistency(g, h, k);
    for (auto& v : consistency.verdicts) report.checks.verdicts.push_back(v);

    DoubleCosetModule dc = double_coset_tensor(g, h, k);
    json basis = json::array();
    for (const auto& w : dc.basis) basis.push_back("HgK@" + g.name(w.front()));
    report.artifacts["basis"] = basis;
    json pairing = json::array();
    for (const auto& row : dc.pairing) pairing.push_back(row);
    report.artifacts["rieffel_pairing"] = pairing;
    json hom = json::array();
    for (std::size_t w1 = 0; w1 < dc.basis.size(); ++w1) {
        json row = json::array();
        for (std::size_t w2 = 0; w2 < dc.basis.size(); ++w2) {
            auto x1 = free_double_coset_bimodule(g, h, k, dc.basis[w1].front());
            auto x2 = free_double_coset_bimodule(g, h, k, dc.basis[w2].front());
            row.push_back(hom_dimension(x1, x2));
        }
        hom.push_back(row);
    }
    report.artifacts["hom_pairing"] = hom;
    print_report(report, opt);
    return report.checks.all_pass() ? 0 : 1;
}

int cmd_report(const std::string& dir, const Options& opt) {
    Report report;
    report.command = "report";
    if (!fs::is_directory(dir)) throw ParseError("not a directory: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) throw ParseError("no data files in " + dir);

    for (const auto& path : files) {
        std::string stem = fs::relative(path, dir).string();
        json j;
        try {
            j = io::load_json(path);
        } catch (const ParseError& e) {
            report.checks.add("corpus." + stem, false, e.what());
            continue;
        }
        try {
            fs::path base = path.parent_path();
            switch (io::detect_kind(j)) {
                case io::FileKind::ring: {
                    FusionRing r = io::ring_from_json(j, opt.max_basis);
                    bool ok = check_star_axioms(r).all_pass();
                    BimoduleNim reg = regular_bimodule(r);
                    ok = ok && verify_inner_product_axioms(reg).all_pass() && snake_check(reg).all_pass();
                    if (r.size() <= 8) {
                        auto sigma = serre_permutation(reg);
                        for (std::size_t i = 0; i < sigma.size(); ++i) ok = ok && sigma[i] == i;
                    }
                    auto fp = fp_dimensions(r);
                    for (double d : fp) ok = ok && d >= 1.0 - 1e-9;
                    ok = ok && std::abs(fp[r.unit] - 1.0) < 1e-9;
                    report.checks.add("corpus." + stem, ok, ok ? "" : "ring checks failed");
                    break;
                }
                case io::FileKind::nimrep: {
                    BimoduleNim nim = io::nimrep_from_json(j, base, opt.max_basis);
                    bool ok = verify_inner_product_axioms(nim).all_pass() && snake_check(nim).all_pass();
                    if (nim.module_size() <= 8) {
                        auto sigma = serre_permutation(nim);
                        (void)sigma;
                    }
                    report.checks.add("corpus." + stem, ok, ok ? "" : "nimrep checks failed");
                    break;
                }
                case io::FileKind::group: {
                    FiniteGroup g = io::group_from_json(j);
                    int m = static_cast<int>(g.order());
                    bool ok = checks::module_trace_agreement(g, m).all_pass();
                    ok = ok && checks::frobenius_trace_cross(g, m).all_pass();
                    ok = ok && checks::conjugate_pivotal_identities(g, m).all_pass();
                    for (const auto& h : g.subgroups()) ok = ok && checks::adjunction_dimensions(g, h).all_pass();
                    for (const auto& h : g.subgroups())
                        for (const auto& k : g.subgroups())
                            if (h.size() * k.size() <= 18)
                                ok = ok && checks::rieffel_hom_consistency(g, h, k).all_pass();
                    report.checks.add("corpus." + stem, ok, ok ? "" : "group battery failed");
                    break;
                }
                case io::FileKind::algebra: {
                    GradedAlgebra a = io::algebra_from_json(j, base);
                    Character triv = make_character(a.space.group, 1, std::vector<int>(a.space.group.order(), 0));
                    FrobeniusData f{a, io::counit_from_json(j, a), {}, triv};
                    bool ok = true;
                    try {
                        f.comult = derive_comult(a, f.counit);
                        ok = frobenius_verify(f).is_frobenius;
                    } catch (const PreconditionFailed&) {
                        // algebras with degenerate counit pairing are still valid corpus entries
                    }
                    report.checks.add("corpus." + stem, ok, ok ? "" : "frobenius battery failed");
                    break;
                }
                case io::FileKind::character: {
                    report.checks.add("corpus." + stem, j.at("m").get<int>() >= 1);
                    break;
                }
                default:
                    report.checks.add("corpus." + stem, false, "unrecognized file kind");
            }
        } catch (const Error& e) {
            report.checks.add("corpus." + stem, false, e.what());
        }
    }
    print_report(report, opt);
    return report.checks.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pivcat: exact inner-hom calculus for fusion rings, pointed module categories and algebra objects"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--approx", opt.approx, "Add floating-point previews to exact scalars");
    app.add_option("--max-basis", opt.max_basis, "Size guard for ring validation");

    std::string path, label_a, label_b, side = "left", sub_arg, char_arg, k_arg;

    CLI::App* validate = app.add_subcommand("validate", "Validate a ring/nimrep/group/algebra file");
    validate->add_option("path", path)->required();

    CLI::App* innerhom = app.add_subcommand("innerhom", "Inner hom of two module labels");
    innerhom->add_option("module", path)->required();
    innerhom->add_option("label-a", label_a)->required();
    innerhom->add_option("label-b", label_b)->required();
    innerhom->add_option("--side", side)->check(CLI::IsMember({"left", "right"}));

    CLI::App* moduletrace = app.add_subcommand("moduletrace", "Module-trace existence and theta solution");
    moduletrace->add_option("group", path)->required();
    moduletrace->add_option("subgroup", sub_arg, "JSON array of element names, inline or a file")->required();
    moduletrace->add_option("character", char_arg, "JSON character object, inline or a file")->required();

    CLI::App* frobenius = app.add_subcommand("frobenius", "Frobenius property report for an algebra file");
    frobenius->add_option("algebra", path)->required();
    frobenius->add_option("character", char_arg)->required();

    CLI::App* tensor = app.add_subcommand("tensor", "Double-coset tensor product with pairing tables");
    tensor->add_option("group", path)->required();
    tensor->add_option("H", sub_arg)->required();
    tensor->add_option("K", k_arg)->required();

    CLI::App* reportcmd = app.add_subcommand("report", "Run the verification battery over a corpus directory");
    reportcmd->add_option("dir", path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(path, opt);
        if (innerhom->parsed()) return cmd_innerhom(path, label_a, label_b, side, opt);
        if (moduletrace->parsed()) return cmd_moduletrace(path, sub_arg, char_arg, opt);
        if (frobenius->parsed()) return cmd_frobenius(path, char_arg, opt);
        if (tensor->parsed()) return cmd_tensor(path, sub_arg, k_arg, opt);
        if (reportcmd->parsed()) return cmd_report(path, opt);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
