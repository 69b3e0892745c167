// Command-line front end: verify presentations, run the constructions,
// compute truncated enveloping algebras with the engine cross-check, and run
// the theorem checkers.
//
// Exit codes: 0 pass, 1 axiom/certificate failure, 2 parse or structural
// error, 3 engine disagreement, 4 window coverage below the strict threshold.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dgpa/cohomology.hpp"
#include "dgpa/io.hpp"
#include "dgpa/theorems.hpp"
#include "dgpa/ue_module.hpp"

using namespace dgpa;
using nlohmann::json;

namespace {

constexpr const char* kReportSchema = "dgpa-report/1";

enum ExitCode : int {
    exit_pass = 0,
    exit_fail = 1,
    exit_parse = 2,
    exit_disagree = 3,
    exit_coverage = 4,
};

void write_json_report(const std::string& path, const std::string& command, json body) {
    if (path.empty()) return;
    body["schema"] = kReportSchema;
    body["command"] = command;
    std::ofstream out(path);
    out << body.dump(2) << "\n";
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write file", path);
    out << text;
}

/// "2*x + 1/3*y - z" -> element over the given space.
Element parse_combo(const std::string& text, const GradedSpace& sp, const Field& f) {
    Element out(sp);
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    bool first = true;
    while (skip_ws(), i < text.size()) {
        long sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw value_error("expected '+' or '-' in element expression");
        }
        skip_ws();
        std::size_t start = i;
        while (i < text.size() && text[i] != '+' && text[i] != '-') ++i;
        std::string term = text.substr(start, i - start);
        while (!term.empty() && std::isspace(static_cast<unsigned char>(term.back())))
            term.pop_back();
        if (term.empty()) throw value_error("empty term in element expression");
        Scalar coeff = Scalar::of_int(f, sign);
        std::string name = term;
        // monomial names may contain '*' themselves, so a whole-term symbol
        // match wins over the coeff*name split
        if (!sp.find(name)) {
            auto star = term.find('*');
            if (star == std::string::npos)
                throw value_error("unknown symbol '" + term + "'");
            coeff = coeff * Scalar::parse(f, term.substr(0, star));
            name = term.substr(star + 1);
            while (!name.empty() && std::isspace(static_cast<unsigned char>(name.front())))
                name.erase(name.begin());
        }
        out.add_term(sp.index_of(name), coeff);
        first = false;
    }
    return out;
}

VerificationReport verify_parsed(const ParsedPresentation& p, const std::string& kind) {
    if (kind == "lie") {
        if (!p.lie) throw value_error("file does not contain a Lie presentation");
        return verify_dg_lie(*p.lie);
    }
    if (kind == "algebra") {
        if (p.algebra) return verify_dg_algebra(p.algebra->algebra);
        if (p.deformation) return verify_dg_algebra(p.deformation->base);
        throw value_error("file does not contain an algebra presentation");
    }
    if (kind == "poisson") {
        if (!p.algebra) throw value_error("file does not contain a Poisson presentation");
        PoissonVerifyOptions opts;
        opts.allow_noncommutative = !p.algebra->algebra.commutative;
        return verify_dg_poisson(*p.algebra, opts);
    }
    if (kind == "module") {
        if (!p.module) throw value_error("file does not contain a module section");
        return verify_dg_poisson_module(*p.module);
    }
    throw value_error("unknown verification kind '" + kind + "'");
}

int run_verify(const std::string& path, const std::string& kind, const std::string& json_out) {
    ParsedPresentation p = load_presentation(path);
    VerificationReport rep = verify_parsed(p, kind);
    std::cout << "verify " << kind << " " << path << ": " << rep.summary() << "\n";
    write_json_report(json_out, "verify", json{{"input", path}, {"kind", kind},
                                               {"report", report_json(rep)}});
    return rep.pass() ? exit_pass : exit_fail;
}

DGPoissonData require_verified_algebra(const ParsedPresentation& p, const std::string& path) {
    if (!p.algebra) throw value_error(path + " does not contain an algebra presentation");
    PoissonVerifyOptions opts;
    opts.allow_noncommutative = !p.algebra->algebra.commutative;
    VerificationReport rep = verify_dg_poisson(*p.algebra, opts);
    if (!rep.pass())
        throw precondition_error(path + " fails verification",
                                 rep.violations.front().to_string());
    return *p.algebra;
}

DGLieData require_verified_lie(const ParsedPresentation& p, const std::string& path) {
    if (!p.lie) throw value_error(path + " does not contain a Lie presentation");
    VerificationReport rep = verify_dg_lie(*p.lie);
    if (!rep.pass())
        throw precondition_error(path + " fails verification",
                                 rep.violations.front().to_string());
    return *p.lie;
}

/// Re-verify before writing; constructions never emit unchecked output.
void write_poisson(const DGPoissonData& a, const std::string& out) {
    PoissonVerifyOptions opts;
    opts.allow_noncommutative = !a.algebra.commutative;
    VerificationReport rep = verify_dg_poisson(a, opts);
    if (!rep.pass())
        throw precondition_error("constructed algebra fails verification",
                                 rep.violations.front().to_string());
    std::string text = serialize_algebra(a);
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
}

void write_lie(const DGLieData& l, const std::string& out) {
    VerificationReport rep = verify_dg_lie(l);
    if (!rep.pass())
        throw precondition_error("constructed Lie algebra fails verification",
                                 rep.violations.front().to_string());
    std::string text = serialize_lie(l);
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
}

std::string dims_text(const UETruncation& t) { return t.dims_table_text(); }

int run_ue(const std::string& path, std::uint32_t max_len, const std::string& engine,
           const std::string& out, const std::string& json_out) {
    ParsedPresentation p = load_presentation(path);
    DGPoissonData a = require_verified_algebra(p, path);
    json body{{"input", path}, {"max_len", max_len}, {"engine", engine}};
    int code = exit_pass;

    if (engine == "both") {
        OracleComparison cmp = compare_with_oracle(a, max_len);
        UETruncation t = ue_truncated(a, max_len);
        std::cout << "rewriting:\n" << dims_text(t);
        std::cout << "d^2 = 0: "
                  << (t.diagnostics.failures.empty() ? "holds" : "VIOLATED")
                  << " (" << t.diagnostics.d2_checked << " checked, "
                  << t.diagnostics.d2_deferred << " deferred)\n";
        std::cout << cmp.summary() << "\n";
        body["comparison"] = comparison_json(cmp);
        if (!out.empty()) write_file(out, serialize_truncation(t));
        if (cmp.hard_disagreement())
            code = exit_disagree;
        else if (!t.diagnostics.ok())
            code = exit_fail;
    } else {
        UETruncation t = engine == "oracle" ? ideal_quotient_oracle(a, max_len)
                                            : ue_truncated(a, max_len);
        std::cout << dims_text(t);
        std::cout << "d^2 = 0: "
                  << (t.diagnostics.failures.empty() ? "holds" : "VIOLATED")
                  << " (" << t.diagnostics.d2_checked << " checked, "
                  << t.diagnostics.d2_deferred << " deferred)\n";
        if (t.stable)
            std::cout << "stability at " << max_len << ": " << (*t.stable ? "stable" : "unstable")
                      << "\n";
        for (const auto& f : t.diagnostics.failures) std::cout << "failure: " << f << "\n";
        json dims = json::array();
        for (const auto& [key, count] : t.dims_table())
            dims.push_back({key.first, key.second, count});
        body["dims"] = std::move(dims);
        body["d2_ok"] = t.diagnostics.ok();
        if (!out.empty()) write_file(out, serialize_truncation(t));
        if (!t.diagnostics.ok()) code = exit_fail;
    }
    body["status"] = code == exit_pass ? "pass" : (code == exit_disagree ? "disagree" : "fail");
    write_json_report(json_out, "ue", std::move(body));
    return code;
}

int finish_certificate(const IsoCertificate& cert, bool strict, double threshold,
                       const std::string& json_out) {
    std::cout << cert.summary() << "\n";
    write_json_report(json_out, "check", json{{"certificate", certificate_json(cert)}});
    if (strict && cert.coverage() < threshold) {
        std::cout << "coverage " << cert.coverage() << " below the strict threshold "
                  << threshold << "\n";
        return exit_coverage;
    }
    return cert.verified() ? exit_pass : exit_fail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact structure-constant toolkit for DG Poisson algebras and their "
                 "truncated universal enveloping algebras"};
    app.require_subcommand(1);

    // verify ------------------------------------------------------------
    std::string v_file, v_kind = "poisson", v_json;
    auto* verify = app.add_subcommand("verify", "run an axiom verifier on a presentation");
    verify->add_option("file", v_file)->required();
    verify->add_option("--kind", v_kind)
        ->check(CLI::IsMember({"algebra", "lie", "poisson", "module"}));
    verify->add_option("--json", v_json, "write a machine-readable report");

    // construct ----------------------------------------------------------
    std::string c_op, c_out, c_json, c_alpha;
    std::vector<std::string> c_inputs;
    unsigned c_trunc = 2;
    auto* construct = app.add_subcommand("construct", "build a derived presentation");
    construct->add_option("op", c_op)
        ->required()
        ->check(CLI::IsMember(
            {"opposite", "tensor", "sym", "endo", "gerstd", "extgerst", "deform",
             "semidirect", "cohomology"}));
    construct->add_option("inputs", c_inputs, "input presentation files")->required();
    construct->add_option("-o,--out", c_out, "output file (stdout when omitted)");
    construct->add_option("--sym-trunc", c_trunc, "symmetric truncation order");
    construct->add_option("--alpha", c_alpha, "element, e.g. \"1*a*b + 2*x\"");
    construct->add_option("--json", c_json);

    // ue -------------------------------------------------------------
    std::string u_file, u_engine = "rewrite", u_out, u_json;
    std::uint32_t u_len = 3;
    auto* ue = app.add_subcommand("ue", "compute the truncated enveloping algebra");
    ue->add_option("file", u_file)->required();
    ue->add_option("--max-len", u_len, "word length window");
    ue->add_option("--engine", u_engine)->check(CLI::IsMember({"rewrite", "oracle", "both"}));
    ue->add_option("--out", u_out, "persist the truncation as JSON");
    ue->add_option("--json", u_json);

    // check ------------------------------------------------------------
    std::string k_theorem, k_json;
    std::vector<std::string> k_inputs;
    std::uint32_t k_len = 2;
    unsigned k_trunc = 2;
    bool k_strict = false;
    double k_threshold = 0.9;
    auto* check = app.add_subcommand("check", "machine-check a theorem at truncation");
    check->add_option("theorem", k_theorem)
        ->required()
        ->check(CLI::IsMember({"tensor", "opposite", "symlie", "module-roundtrip"}));
    check->add_option("inputs", k_inputs)->required();
    check->add_option("--max-len", k_len);
    check->add_option("--sym-trunc", k_trunc);
    check->add_flag("--strict", k_strict, "fail when window coverage is too low");
    check->add_option("--coverage-threshold", k_threshold);
    check->add_option("--json", k_json);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*verify) return run_verify(v_file, v_kind, v_json);

        if (*construct) {
            auto input = [&](std::size_t i) -> const std::string& {
                if (i >= c_inputs.size()) throw value_error("missing input file");
                return c_inputs[i];
            };
            if (c_op == "opposite") {
                auto a = require_verified_algebra(load_presentation(input(0)), input(0));
                write_poisson(opposite(a), c_out);
            } else if (c_op == "tensor") {
                auto a = require_verified_algebra(load_presentation(input(0)), input(0));
                auto b = require_verified_algebra(load_presentation(input(1)), input(1));
                write_poisson(tensor(a, b), c_out);
            } else if (c_op == "sym") {
                auto l = require_verified_lie(load_presentation(input(0)), input(0));
                write_poisson(symmetric_dgp(l, c_trunc), c_out);
            } else if (c_op == "endo") {
                auto p = load_presentation(input(0));
                const GradedSpace& sp = p.algebra ? p.algebra->space()
                                                  : (p.lie ? p.lie->space
                                                           : p.deformation->base.space);
                GradedLinearMap d = p.algebra ? p.algebra->algebra.differential
                                              : (p.lie ? p.lie->differential
                                                       : p.deformation->base.differential);
                DGVectorSpaceData v(p.field, sp, std::move(d));
                write_poisson(endomorphism_dgp(v).algebra, c_out);
            } else if (c_op == "gerstd") {
                auto g = require_verified_algebra(load_presentation(input(0)), input(0));
                if (c_alpha.empty()) throw value_error("gerstd needs --alpha");
                Element alpha = parse_combo(c_alpha, g.space(), g.field());
                write_poisson(gerstenhaber_differential(g, alpha), c_out);
            } else if (c_op == "extgerst") {
                auto l = require_verified_lie(load_presentation(input(0)), input(0));
                if (auto witness = exterior_bracket_paths_disagree(l)) {
                    std::cout << "bracket path disagreement: " << *witness << "\n";
                    return exit_fail;
                }
                std::cout << "displayed sum agrees with the biderivation extension\n";
                write_poisson(exterior_gerstenhaber(l), c_out);
            } else if (c_op == "deform") {
                auto p = load_presentation(input(0));
                if (!p.deformation) throw value_error("expected a deformation file");
                auto r = deformation_bracket(*p.deformation);
                if (!r.order) {
                    std::cout << "commutative-to-order-"
                              << p.deformation->corrections.size() << "\n";
                    return exit_pass;
                }
                std::cout << "first noncommutative order m = " << *r.order << "\n";
                std::cout << "bracket verification: " << r.check.summary() << "\n";
                if (!r.check.pass()) return exit_fail;
                write_poisson(*r.poisson, c_out);
            } else if (c_op == "semidirect") {
                auto l = require_verified_lie(load_presentation(input(0)), input(0));
                write_lie(semidirect_lie(l), c_out);
            } else if (c_op == "cohomology") {
                auto a = require_verified_algebra(load_presentation(input(0)), input(0));
                write_poisson(cohomology(a), c_out);
            }
            return exit_pass;
        }

        if (*ue) return run_ue(u_file, u_len, u_engine, u_out, u_json);

        if (*check) {
            auto input = [&](std::size_t i) -> const std::string& {
                if (i >= k_inputs.size()) throw value_error("missing input file");
                return k_inputs[i];
            };
            if (k_theorem == "tensor") {
                auto a = require_verified_algebra(load_presentation(input(0)), input(0));
                auto b = require_verified_algebra(load_presentation(input(1)), input(1));
                return finish_certificate(check_tensor_ue_iso(a, b, k_len), k_strict,
                                          k_threshold, k_json);
            }
            if (k_theorem == "opposite") {
                auto a = require_verified_algebra(load_presentation(input(0)), input(0));
                return finish_certificate(check_op_ue_iso(a, k_len), k_strict, k_threshold,
                                          k_json);
            }
            if (k_theorem == "symlie") {
                auto l = require_verified_lie(load_presentation(input(0)), input(0));
                return finish_certificate(check_sym_lie_ue(l, k_trunc, k_len), k_strict,
                                          k_threshold, k_json);
            }
            // module-roundtrip: the module may live in the first or a second file
            ParsedPresentation p = load_presentation(input(0));
            if (!p.module && k_inputs.size() > 1) p = load_presentation(input(1));
            if (!p.module || !p.algebra)
                throw value_error("module-roundtrip needs a file with a module section");
            VerificationReport mrep = verify_dg_poisson_module(*p.module);
            if (!mrep.pass()) {
                std::cout << "module fails verification: " << mrep.summary() << "\n";
                return exit_fail;
            }
            auto rep_obj = module_to_ue_rep(*p.algebra, *p.module);
            auto back = ue_rep_to_module(*p.algebra, rep_obj);
            bool same = back.action == p.module->action &&
                        back.lie_action == p.module->lie_action &&
                        back.differential == p.module->differential;
            std::cout << "module round trip: " << (same ? "tables equal" : "TABLES DIFFER")
                      << "\n";
            write_json_report(k_json, "check",
                              json{{"theorem", "module-roundtrip"},
                                   {"status", same ? "verified" : "failed"}});
            return same ? exit_pass : exit_fail;
        }
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return exit_parse;
    } catch (const size_guard_error& e) {
        std::cerr << "size guard: " << e.what() << "\n";
        return exit_parse;
    } catch (const precondition_error& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return exit_fail;
    } catch (const truncation_overflow_error& e) {
        std::cerr << "truncation overflow: " << e.what() << "\n";
        return exit_parse;
    } catch (const dgpa_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse;
    }
    return exit_pass;
}
