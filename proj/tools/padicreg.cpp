#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "padicreg/identities.hpp"
#include "padicreg/report.hpp"

using namespace padicreg;

namespace {

// exit codes: 0 success, 1 operational error, 2 undecidable, 3 condition failure
constexpr int kOk = 0, kOperational = 1, kUndecidable = 2, kConditionFailed = 3;

long default_precision() {
    if (const char* env = std::getenv("PADICREG_PRECISION")) {
        long v = std::atol(env);
        if (v >= min_working_precision()) return v;
    }
    return 16;
}

int cmd_analyze(const std::string& path, long precision_override, const std::string& format) {
    RegulatorInstance inst = ingest_file(path);
    if (precision_override > 0) {
        if (inst.has_exact()) {
            inst.precision = precision_override;
            for (int j = 0; j < 3; ++j)
                inst.L[static_cast<std::size_t>(j)] = PadicNumber::from_rational(
                    inst.p, (*inst.L_exact)[static_cast<std::size_t>(j)], inst.precision);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    inst.M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        PadicNumber::from_rational(
                            inst.p, (*inst.M_exact)[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                            inst.precision);
        } else if (precision_override <= inst.precision) {
            inst.precision = precision_override;
            for (int j = 0; j < 3; ++j)
                inst.L[static_cast<std::size_t>(j)] =
                    inst.L[static_cast<std::size_t>(j)].with_rel_precision(precision_override);
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    inst.M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        inst.M[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].with_rel_precision(
                            precision_override);
        } else {
            std::cerr << "error: cannot raise the precision of digit-string data\n";
            return kOperational;
        }
        if (inst.precision < min_working_precision()) {
            std::cerr << "error: precision below the working minimum of " << min_working_precision()
                      << "\n";
            return kOperational;
        }
    }
    AnalysisReport rep = analyze(inst);
    std::cout << (format == "structured" ? emit_report(rep) : emit_report_text(rep));
    bool any_false = rep.conditions.res == Tri::False || rep.conditions.sl == Tri::False ||
                     rep.conditions.reg == Tri::False;
    bool any_undecidable = rep.conditions.res == Tri::Undecidable ||
                           rep.conditions.sl == Tri::Undecidable ||
                           rep.conditions.reg == Tri::Undecidable;
    if (any_false) return kConditionFailed;
    if (any_undecidable) return kUndecidable;
    return kOk;
}

int cmd_verify_identities(bool perturb) {
    auto checks = run_identity_suite(perturb);
    bool all = true;
    for (const auto& c : checks) {
        std::cout << (c.pass ? "[pass] " : "[FAIL] ") << c.name;
        if (!c.note.empty()) std::cout << "  -- " << c.note;
        std::cout << "\n";
        all = all && c.pass;
    }
    std::cout << (all ? "all identities verified\n" : "identity failures detected\n");
    return all ? kOk : kConditionFailed;
}

int cmd_ring(int truncation) {
    RingStructureReport rep = ring_structure_report(truncation);
    int dual = dualizing_generators(truncation);
    OhtaFiberReport ohta = ohta_fiber_check(dual);
    std::cout << "[ring]\n";
    std::cout << "truncation = " << truncation << "\n";
    std::cout << "minimal_primes = " << rep.components << "\n";
    std::cout << "coordinate_products_vanish = \"" << (rep.products_vanish ? "true" : "false")
              << "\"\n";
    std::cout << "weight_map_is_sum = \"" << (rep.weight_map_ok ? "true" : "false") << "\"\n";
    std::cout << "cotangent_dim = " << rep.cotangent_dim << "\n";
    std::cout << "fiber_dim = " << rep.fiber_dim << "\n";
    std::cout << "socle_dim = " << rep.socle_dim << "\n";
    std::cout << "gorenstein = \"" << (rep.gorenstein ? "true" : "false") << "\"\n";
    std::cout << "dualizing_generators = " << dual << "\n";
    std::cout << "\n[ohta]\n";
    std::cout << "fiber_dim_H = " << ohta.fiber_dim_H << "\n";
    std::cout << "multiplicity_r = " << ohta.multiplicity_r << "\n";
    std::cout << "pm_fiber_dim = " << ohta.pm_fiber_dim << "\n";
    std::cout << "free = \"" << (ohta.free ? "true" : "false") << "\"\n";
    bool ok = rep.components == 4 && rep.products_vanish && rep.weight_map_ok &&
              rep.cotangent_dim == 3 && rep.fiber_dim == 4 && rep.socle_dim == 3 &&
              !rep.gorenstein && dual == 3 && ohta.fiber_dim_H == 4 && ohta.multiplicity_r == 2 &&
              ohta.pm_fiber_dim == 2 && !ohta.free;
    return ok ? kOk : kConditionFailed;
}

int cmd_synth(const std::string& rc_name, unsigned long seed, unsigned long prime, long precision,
              const std::string& out) {
    RepClass rc;
    if (rc_name == "rm") rc = RepClass::RM;
    else if (rc_name == "cm") rc = RepClass::CM;
    else if (rc_name == "klein") rc = RepClass::Klein;
    else if (rc_name == "exotic") rc = RepClass::Exotic;
    else {
        std::cerr << "error: unknown case '" << rc_name << "'\n";
        return kOperational;
    }
    RegulatorInstance inst = synth_instance(rc, seed, prime, precision);
    std::string text = emit_instance(inst);
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out);
        if (!f) {
            std::cerr << "error: cannot write " << out << "\n";
            return kOperational;
        }
        f << text;
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic regulator and eigencurve-geometry toolkit"};
    app.require_subcommand(1);

    std::string analyze_path, analyze_format = "text";
    long analyze_precision = 0;
    CLI::App* an = app.add_subcommand("analyze", "run the full pipeline on an instance file");
    an->add_option("file", analyze_path, "instance file")->required();
    an->add_option("--precision", analyze_precision, "working precision override");
    an->add_option("--format", analyze_format, "text or structured")
        ->check(CLI::IsMember({"text", "structured"}));

    bool perturb = false;
    CLI::App* vi = app.add_subcommand("verify-identities", "verify the symbolic identity suite");
    vi->add_flag("--perturb", perturb, "inject a perturbation (expected failure, for testing)");

    int truncation = 3;
    CLI::App* ring = app.add_subcommand("ring", "local-ring model of the Hecke algebra");
    ring->add_option("--truncation", truncation, "power series truncation order")->required();

    std::string synth_case, synth_out;
    unsigned long synth_seed = 0, synth_prime = 5;
    long synth_precision = default_precision();
    CLI::App* sy = app.add_subcommand("synth", "emit a synthetic instance");
    sy->add_option("--case", synth_case, "rm, cm, klein or exotic")->required();
    sy->add_option("--seed", synth_seed, "deterministic seed")->required();
    sy->add_option("--prime", synth_prime, "odd prime, default 5");
    sy->add_option("--precision", synth_precision, "digits, default 16 or PADICREG_PRECISION");
    sy->add_option("--out", synth_out, "output file (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (an->parsed()) return cmd_analyze(analyze_path, analyze_precision, analyze_format);
        if (vi->parsed()) return cmd_verify_identities(perturb);
        if (ring->parsed()) return cmd_ring(truncation);
        if (sy->parsed()) return cmd_synth(synth_case, synth_seed, synth_prime, synth_precision, synth_out);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOperational;
    } catch (const RankUndecidable& e) {
        std::cerr << "undecidable: " << e.what() << "\n";
        return kUndecidable;
    } catch (const PrecisionError& e) {
        std::cerr << "undecidable: " << e.what() << "\n";
        return kUndecidable;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOperational;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOperational;
    }
    return kOperational;
}
