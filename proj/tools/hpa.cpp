// Command-line front end: hpa <command> [options]. Prints one JSON document
// {"header": ..., "result": ...} unless a text format is requested.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "hpa/algebra.hpp"
#include "hpa/dsl.hpp"
#include "hpa/errors.hpp"
#include "hpa/invariants.hpp"
#include "hpa/morse.hpp"
#include "hpa/realization.hpp"
#include "hpa/resolution.hpp"
#include "hpa/serialize.hpp"
#include "hpa/toric.hpp"

namespace {

constexpr const char* version = "0.1.0";

enum Exit { ok = 0, math_failure = 1, usage_failure = 2 };

struct Options {
    std::vector<std::string> inputs;
    std::string ring = "Z";
    std::string matching = "bh";
    std::optional<std::size_t> max_dim;
    std::string out;
    std::string format = "json";
    bool emit_quiver = false;
    bool audit = false;
    bool cells = false;
    int degree = -1;
    std::string weights;
    std::string degrees;
    bool bondal_ruan = false;
};

// Usage-level failure that the parser did not catch (bad flag values, I/O).
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw UsageError("cannot write " + o.out);
    f << text;
}

void emit(const Options& o, const std::string& command, hpa::Json result) {
    hpa::Json doc;
    doc["header"] = {{"tool", "hpa"}, {"version", version}, {"command", command}};
    doc["result"] = std::move(result);
    write_output(o, doc.dump(2) + "\n");
}

hpa::Ring ring_of(const Options& o) {
    try {
        return hpa::parse_ring(o.ring);
    } catch (const hpa::Error& e) {
        throw UsageError(e.what());
    }
}

std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Parse errors and unreadable files are usage failures.
hpa::QuiverDocument load(const std::string& path) {
    if (!std::filesystem::exists(path)) throw UsageError("no such file: " + path);
    try {
        return hpa::parse_quiver(read_text(path));
    } catch (const hpa::ParseError& e) {
        throw UsageError(path + ": " + e.what());
    }
}

hpa::Hpa load_valid(const std::string& path) {
    hpa::QuiverDocument doc = load(path);
    hpa::Hpa a = hpa::make_hpa(doc.quiver, doc.relations);
    hpa::require_valid(a);
    return a;
}

hpa::Json load_json(const std::string& path) {
    try {
        return hpa::load_json_file(path);
    } catch (const hpa::Error& e) {
        throw UsageError(e.what());
    }
}

// Inline JSON text, or a path to a JSON file.
hpa::Json json_argument(const std::string& text) {
    if (std::filesystem::exists(text)) return load_json(text);
    try {
        return hpa::Json::parse(text);
    } catch (const hpa::Json::exception&) {
        throw UsageError("not JSON and not a file: " + text);
    }
}

int cmd_check(const Options& o) {
    hpa::QuiverDocument doc = load(o.inputs.at(0));
    hpa::Hpa a = hpa::make_hpa(doc.quiver, doc.relations);
    hpa::HpaReport r = hpa::check_hpa(a);
    if (o.emit_quiver) {
        write_output(o, hpa::emit_quiver(doc.quiver, doc.relations));
    } else {
        hpa::Json result = hpa::check_json(a, r);
        result["algebra"] = hpa::algebra_json(a);
        emit(o, "check", result);
    }
    return r.valid ? ok : math_failure;
}

int cmd_realize(const Options& o) {
    hpa::Hpa a = load_valid(o.inputs.at(0));
    hpa::CellComplex x = hpa::build_realization(a, o.max_dim);
    if (o.format == "dot") {
        write_output(o, hpa::face_poset_dot(x));
        return ok;
    }
    if (auto bad = hpa::check_simplicial_identities(x)) throw hpa::Error("simplicial identity fails: " + *bad);
    hpa::ChainComplex chains = hpa::cw_chain_complex(x, ring_of(o));
    emit(o, "realize", hpa::realization_json(x, chains, o.cells));
    return ok;
}

int cmd_homology(const Options& o) {
    hpa::Ring ring = ring_of(o);
    hpa::Hpa a = load_valid(o.inputs.at(0));
    hpa::CellComplex x = hpa::build_realization(a, o.max_dim);
    hpa::ChainComplex chains = hpa::cw_chain_complex(x, ring);
    emit(o, "homology",
         {{"ring", ring.name()},
          {"counts", x.counts()},
          {"euler", hpa::euler_characteristic(x)},
          {"homology", hpa::homology_json(hpa::homology(chains, ring))}});
    return ok;
}

hpa::Json report_json(const hpa::CheckReport& r) { return {{"passed", r.passed}, {"witnesses", r.witnesses}}; }

int cmd_resolve(const Options& o) {
    hpa::Hpa a = load_valid(o.inputs.at(0));
    hpa::CellComplex x = hpa::build_realization(a, o.max_dim);
    hpa::BimoduleComplex c = hpa::cellular_resolution(x);
    hpa::CheckReport d2 = hpa::verify_d_squared(c);
    hpa::Json result = hpa::bimodule_json(c, o.degree);
    result["d_squared"] = report_json(d2);
    bool passed = d2.passed;
    if (!o.max_dim) {
        hpa::CheckReport h = hpa::contracting_homotopy_check(c);
        result["contracting_homotopy"] = report_json(h);
        passed = passed && h.passed;
    }
    emit(o, "resolve", result);
    return passed ? ok : math_failure;
}

int cmd_morse(const Options& o) {
    hpa::Ring ring = ring_of(o);
    hpa::Hpa a = load_valid(o.inputs.at(0));
    hpa::CellComplex x = hpa::build_realization(a);
    hpa::BimoduleComplex c = hpa::cellular_resolution(x);
    std::vector<hpa::ClassId> fallback;
    hpa::Matching m;
    if (o.matching == "bh")
        m = hpa::babson_hersh_matching(x, &fallback);
    else if (o.matching == "greedy")
        m = hpa::greedy_internal_matching(x);
    else if (std::filesystem::exists(o.matching))
        m = hpa::matching_from_chains(x, hpa::matching_pairs_from_json(load_json(o.matching)));
    else
        throw UsageError("--matching: expected bh, greedy or a fixture file, got " + o.matching);

    hpa::Json result;
    result["matching"] = hpa::matching_json(m);
    if (!fallback.empty()) {
        hpa::Json f = hpa::Json::array();
        for (hpa::ClassId p : fallback) f.push_back(a.describe(p));
        result["fallback_intervals"] = f;
    }
    hpa::CheckReport internal = hpa::check_internal(m);
    hpa::AcyclicReport acyclic = hpa::check_acyclic(m);
    result["internal"] = report_json(internal);
    hpa::Json cycle = hpa::Json::array();
    for (const hpa::CellRef& r : acyclic.cycle) cycle.push_back(x.describe(r.dim, r.index));
    result["acyclic"] = {{"passed", acyclic.acyclic}, {"cycle", cycle}};
    if (!internal.passed || !acyclic.acyclic) {
        emit(o, "morse", result);
        return math_failure;
    }

    hpa::MorseComplex mc = hpa::morse_complex(c, m);
    hpa::CheckReport d2 = hpa::verify_d_squared(mc.complex);
    result["d_squared"] = report_json(d2);
    hpa::CheckReport quasi;
    const std::size_t n = a.quiver().vertex_count();
    for (hpa::VertexId v = 0; v < n; ++v)
        for (hpa::VertexId w = 0; w < n; ++w) {
            auto full = hpa::nonzero(hpa::tor_via_resolution(c, v, w, ring));
            auto reduced = hpa::nonzero(hpa::tor_via_resolution(mc.complex, v, w, ring));
            if (full != reduced)
                quasi.fail("Tor(S_" + a.quiver().vertex_name(v) + ", S_" + a.quiver().vertex_name(w) + ") differs");
        }
    result["quasi_isomorphism"] = report_json(quasi);
    if (!d2.passed || !quasi.passed) {
        emit(o, "morse", result);
        return math_failure;
    }
    result["critical_counts"] = mc.counts();
    result["euler"] = hpa::euler_characteristic(mc.counts());
    result["minimal"] = report_json(hpa::check_minimal(mc));
    if (a.graded()) result["linear"] = report_json(hpa::check_linear(mc));
    result["complex"] = hpa::bimodule_json(mc.complex, o.degree);
    if (o.audit) result["gradient_paths"] = hpa::gradient_audit_json(c, m);
    emit(o, "morse", result);
    return ok;
}

int cmd_betti(const Options& o) {
    hpa::Hpa a = load_valid(o.inputs.at(0));
    hpa::BettiTable t = hpa::betti_table(a);
    for (const auto& w : t.warnings) std::cerr << "warning: " << w << '\n';
    if (o.format == "csv")
        write_output(o, hpa::betti_csv(a, t));
    else
        emit(o, "betti", hpa::betti_json(a, t));
    return ok;
}

int cmd_koszul(const Options& o) {
    hpa::Hpa a = load_valid(o.inputs.at(0));
    emit(o, "koszul", hpa::koszul_json(hpa::koszul_check(a)));
    return ok;
}

int cmd_toric(const Options& o) {
    if (o.weights.empty()) throw UsageError("toric: --weights is required");
    hpa::Json wj = json_argument(o.weights);
    hpa::WeightData w = hpa::weight_data_from_json(wj);
    std::vector<hpa::Degree> degrees;
    if (o.bondal_ruan) {
        if (!hpa::check_cohomologically_proper(w)) throw hpa::PreconditionError("weights are not cohomologically proper");
        degrees = hpa::image_phi(w);
    } else if (!o.degrees.empty()) {
        degrees = hpa::degrees_from_json(json_argument(o.degrees), w);
    } else if (wj.is_object() && wj.contains("degrees")) {
        degrees = hpa::degrees_from_json(wj.at("degrees"), w);
    } else {
        throw UsageError("toric: give --bondal-ruan or --degrees");
    }
    hpa::ToricHpa t = hpa::build_toric_hpa(w, degrees);
    if (o.format == "json") {
        hpa::Json result = hpa::toric_json(t);
        result["proper"] = hpa::check_cohomologically_proper(w);
        emit(o, "toric", result);
    } else {
        write_output(o, hpa::emit_quiver(t.presentation.quiver, t.presentation.relations));
    }
    return ok;
}

int cmd_tensor(const Options& o) {
    if (o.inputs.size() != 2) throw UsageError("tensor: expected two input files");
    hpa::Hpa a = load_valid(o.inputs[0]);
    hpa::Hpa b = load_valid(o.inputs[1]);
    hpa::QuiverDocument doc = hpa::tensor_presentation(a, b);
    if (o.emit_quiver) {
        write_output(o, hpa::emit_quiver(doc.quiver, doc.relations));
        return ok;
    }
    hpa::Ring ring = ring_of(o);
    hpa::Hpa t = hpa::make_hpa(doc.quiver, doc.relations);
    hpa::require_valid(t);
    hpa::CellComplex x = hpa::build_realization(t, o.max_dim);
    emit(o, "tensor",
         {{"ring", ring.name()},
          {"vertices", doc.quiver.vertex_count()},
          {"arrows", doc.quiver.arrow_count()},
          {"classes", t.class_count()},
          {"counts", x.counts()},
          {"homology", hpa::homology_json(hpa::homology(hpa::cw_chain_complex(x, ring), ring))},
          {"quiver", hpa::emit_quiver(doc.quiver, doc.relations)}});
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Homotopy path algebras: realizations, resolutions, Morse reduction, toric quivers"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub, std::size_t inputs) {
        sub->add_option("input", o.inputs, "quiver file(s)")->required()->expected(static_cast<int>(inputs));
        sub->add_option("--out", o.out, "write output to this path");
    };
    auto ring = [&](CLI::App* sub) { sub->add_option("--ring", o.ring, "coefficients: Z, Q or Fp:<p>"); };
    auto max_dim = [&](CLI::App* sub) { sub->add_option("--max-dim", o.max_dim, "cap the cell dimension"); };

    auto* check = app.add_subcommand("check", "validate the cancellation conditions");
    common(check, 1);
    check->add_flag("--emit-quiver", o.emit_quiver, "print the normalized quiver document");

    auto* realize = app.add_subcommand("realize", "cells and boundary matrices of the realization");
    common(realize, 1);
    ring(realize);
    max_dim(realize);
    realize->add_flag("--cells", o.cells, "list the cells");
    realize->add_option("--format", o.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));

    auto* hom = app.add_subcommand("homology", "cellular homology of the realization");
    common(hom, 1);
    ring(hom);
    max_dim(hom);

    auto* resolve = app.add_subcommand("resolve", "cellular bimodule resolution");
    common(resolve, 1);
    max_dim(resolve);
    resolve->add_option("--degree", o.degree, "export only this degree");

    auto* morse = app.add_subcommand("morse", "Morse complex of a matching");
    common(morse, 1);
    ring(morse);
    morse->add_option("--matching", o.matching, "bh, greedy or a matching fixture file");
    morse->add_option("--degree", o.degree, "export only this degree");
    morse->add_flag("--audit", o.audit, "include every gradient path");

    auto* betti = app.add_subcommand("betti", "Tor ranks between simple modules");
    common(betti, 1);
    betti->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    auto* koszul = app.add_subcommand("koszul", "Koszulity verdict");
    common(koszul, 1);

    auto* toric = app.add_subcommand("toric", "quiver with relations from weight data");
    toric->add_option("--weights", o.weights, "weight JSON, inline or a file")->required();
    toric->add_option("--degrees", o.degrees, "degree list JSON, inline or a file");
    toric->add_flag("--bondal-ruan", o.bondal_ruan, "use the image of the Bondal-Ruan map");
    toric->add_flag("--emit-quiver", o.emit_quiver, "print the quiver document (default)");
    toric->add_option("--format", o.format, "dsl or json")->check(CLI::IsMember({"dsl", "json"}));
    toric->add_option("--out", o.out, "write output to this path");

    auto* tensor = app.add_subcommand("tensor", "tensor product of two algebras");
    common(tensor, 2);
    ring(tensor);
    max_dim(tensor);
    tensor->add_flag("--emit-quiver", o.emit_quiver, "print the quiver document");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage_failure;
    }
    if (toric->parsed() && o.format == "json" && toric->count("--format") == 0) o.format = "dsl";
    if (toric->parsed() && o.emit_quiver) o.format = "dsl";

    try {
        if (check->parsed()) return cmd_check(o);
        if (realize->parsed()) return cmd_realize(o);
        if (hom->parsed()) return cmd_homology(o);
        if (resolve->parsed()) return cmd_resolve(o);
        if (morse->parsed()) return cmd_morse(o);
        if (betti->parsed()) return cmd_betti(o);
        if (koszul->parsed()) return cmd_koszul(o);
        if (toric->parsed()) return cmd_toric(o);
        if (tensor->parsed()) return cmd_tensor(o);
    } catch (const UsageError& e) {
        std::cerr << "hpa: " << e.what() << '\n';
        return usage_failure;
    } catch (const hpa::Json::exception& e) {
        std::cerr << "hpa: malformed JSON input: " << e.what() << '\n';
        return usage_failure;
    } catch (const hpa::Error& e) {
        std::cerr << "hpa: " << e.what() << '\n';
        return math_failure;
    }
    return usage_failure;
}
