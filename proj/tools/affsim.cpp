#include "affsim/affine.hpp"
#include "affsim/document.hpp"
#include "affsim/enumerate.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

using namespace affsim;

// Exit codes: 0 success/similar, 1 decided negative, 2 parse error,
// 3 semantic error, 4 resource guard.
int exit_code(Errc code) {
    switch (code) {
    case Errc::parse_error: return 2;
    case Errc::too_large: return 4;
    default: return 3;
    }
}

Json load_document(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::stringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
    } else {
        std::ifstream in(path);
        require(in.good(), Errc::parse_error, "cannot read " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        raise(Errc::parse_error, std::string("invalid JSON: ") + e.what());
    }
}

void emit(const Json& report) { std::cout << report.dump() << "\n"; }

template <typename Fn>
int with_field(const FieldSpec& spec, Fn&& fn) {
    if (spec.kind == FieldSpec::Kind::prime) return fn(PrimeField(spec.p));
    return fn(RationalField());
}

template <FieldElements F>
int run_tau(const F& field, const Json& doc) {
    AffineMap<F> f = parse_affine_map(field, doc);
    const std::size_t k = tau(f);
    Json report;
    report["tau"] = k;
    report["n1"] = fitting_split(f.linear()).n1;
    report["fixed_point_exists"] = (k == 0);
    emit(report);
    return 0;
}

template <FieldElements F>
int run_similar(const F& field, const Json& doc_f, const Json& doc_g, bool witness) {
    AffineMap<F> f = parse_affine_map(field, doc_f);
    AffineMap<F> g = parse_affine_map(field, doc_g);
    auto decision = decide_similar(f, g);
    Json report;
    report["similar"] = decision.similar;
    report["reason"] = to_string(decision.reason);
    if (decision.similar && witness) {
        auto h = build_conjugator(f, g);
        report["T"] = matrix_to_json(h.linear);
        report["t"] = vec_to_json(field, h.translation);
        report["verified"] = compose(h.as_map(), f) == compose(g, h.as_map());
    }
    emit(report);
    return decision.similar ? 0 : 1;
}

template <FieldElements F>
int run_flat(const F& field, const Json& doc) {
    AffineMap<F> f = parse_affine_map(field, doc);
    auto flat = minimal_invariant_flat(f);
    Json report;
    report["point"] = vec_to_json(field, flat.point);
    Json rows = Json::array();
    for (const auto& row : flat.direction_basis) rows.push_back(vec_to_json(field, row));
    report["direction"] = rows;
    report["dim"] = flat.flat_dim();
    emit(report);
    return 0;
}

template <FieldElements F>
int run_canon(const F& field, const Json& doc) {
    AffineMap<F> f = parse_affine_map(field, doc);
    Json report;
    report["invariant_factors"] = factors_to_json(invariant_factors(f.linear()));
    emit(report);
    return 0;
}

Json table_to_json(const ClassTable& table) {
    Json rows = Json::array();
    for (const auto& cls : table.classes) {
        Json row;
        row["linear_invariant_factors"] = factors_to_json(cls.linear_invariant);
        row["tau"] = cls.tau;
        Json rep;
        rep["matrix"] = matrix_to_json(cls.representative.linear());
        rep["vector"] = vec_to_json(cls.representative.field(), cls.representative.translation());
        row["representative"] = rep;
        row["orbit_size"] = cls.orbit_size ? Json(*cls.orbit_size) : Json(nullptr);
        rows.push_back(row);
    }
    return rows;
}

int run_classes(std::size_t n, std::uint32_t p, bool invertible_only, bool oracle) {
    ClassTable table = oracle ? brute_force_affine_classes(n, p, invertible_only)
                              : derive_affine_classes(n, p, invertible_only);
    Json report;
    report["p"] = p;
    report["n"] = n;
    report["invertible_only"] = invertible_only;
    report["count"] = table.classes.size();
    report["classes"] = table_to_json(table);
    bool agreed = true;
    if (oracle) {
        ClassTable derived = derive_affine_classes(n, p, invertible_only);
        agreed = tables_agree(table, derived) && table.classes.size() == derived.classes.size();
        report["agreement"] = agreed;
    }
    emit(report);
    return agreed ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact similarity of affine maps over F_p and Q: the trajectory-coset "
                 "invariant tau, conjugator certificates, minimal invariant flats, and "
                 "desk-scale class enumeration"};
    app.require_subcommand(1);

    std::string file_f, file_g;
    bool witness = false;
    std::size_t n = 1;
    std::uint32_t p = 2;
    bool invertible_only = false, oracle = false;

    auto* cmd_tau = app.add_subcommand("tau", "Invariant tau of a map document");
    cmd_tau->add_option("file", file_f, "map document (JSON), or - for stdin")->required();

    auto* cmd_similar = app.add_subcommand("similar", "Decide similarity of two maps");
    cmd_similar->add_option("fileF", file_f, "first map document")->required();
    cmd_similar->add_option("fileG", file_g, "second map document")->required();
    cmd_similar->add_flag("--witness", witness, "emit a verified conjugator h(x) = T x + t");

    auto* cmd_flat = app.add_subcommand("flat", "Minimal invariant flat of a map");
    cmd_flat->add_option("file", file_f, "map document (JSON), or - for stdin")->required();

    auto* cmd_canon = app.add_subcommand("canon", "Invariant factors of the linear part");
    cmd_canon->add_option("file", file_f, "map document (JSON), or - for stdin")->required();

    auto* cmd_classes = app.add_subcommand("classes", "Enumerate affine similarity classes");
    cmd_classes->add_option("--n", n, "dimension")->required();
    cmd_classes->add_option("--p", p, "field characteristic (prime)")->required();
    cmd_classes->add_flag("--invertible", invertible_only, "only maps with invertible linear part");
    cmd_classes->add_flag("--oracle", oracle, "cross-check against brute-force orbits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (cmd_tau->parsed()) {
            Json doc = load_document(file_f);
            return with_field(affsim::parse_field(doc),
                              [&](const auto& field) { return run_tau(field, doc); });
        }
        if (cmd_similar->parsed()) {
            Json doc_f = load_document(file_f);
            Json doc_g = load_document(file_g);
            auto spec_f = affsim::parse_field(doc_f);
            auto spec_g = affsim::parse_field(doc_g);
            affsim::require(spec_f == spec_g, affsim::Errc::field_mismatch,
                            "documents use different fields");
            return with_field(spec_f, [&](const auto& field) {
                return run_similar(field, doc_f, doc_g, witness);
            });
        }
        if (cmd_flat->parsed()) {
            Json doc = load_document(file_f);
            return with_field(affsim::parse_field(doc),
                              [&](const auto& field) { return run_flat(field, doc); });
        }
        if (cmd_canon->parsed()) {
            Json doc = load_document(file_f);
            return with_field(affsim::parse_field(doc),
                              [&](const auto& field) { return run_canon(field, doc); });
        }
        if (cmd_classes->parsed()) return run_classes(n, p, invertible_only, oracle);
    } catch (const affsim::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
