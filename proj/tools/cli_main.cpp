// Command-line front end: field/element input, the embedding pipeline,
// and the individual verifiers, with optional JSON reports.
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pembed/bounds.hpp"
#include "pembed/error.hpp"
#include "pembed/heights.hpp"
#include "pembed/json_io.hpp"
#include "pembed/modular.hpp"
#include "pembed/numfield.hpp"
#include "pembed/padic.hpp"
#include "pembed/verify.hpp"

namespace {

using namespace pembed;

constexpr int kSchemaVersion = 1;

constexpr int kExitParse = 2;
constexpr int kExitNotGenerating = 3;
constexpr int kExitSearchExhausted = 4;
constexpr int kExitInternal = 5;

json base_report(const std::string& subcommand) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["subcommand"] = subcommand;
    return j;
}

void emit(const json& j, bool as_json, const std::string& text) {
    if (as_json)
        std::cout << j.dump(2) << '\n';
    else
        std::cout << text;
}

std::vector<std::string> split_names(const std::string& csv) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : csv) {
        if (ch == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

u64 default_p_max() {
    if (const char* env = std::getenv("PEMBED_P_MAX")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 1) return static_cast<u64>(v);
    }
    return 100000000;
}

FieldElement lookup_element(const FieldSpec& spec, const std::string& name) {
    auto it = spec.elements.find(name);
    if (it == spec.elements.end()) throw ParseError("unknown element name: " + name);
    return it->second;
}

FieldSpec resolve_field(const std::string& field_path, unsigned long cyclotomic_m) {
    if (cyclotomic_m > 0) {
        FieldSpec spec;
        spec.field = std::make_shared<const NumberField>(cyclotomic(cyclotomic_m));
        return spec;
    }
    if (field_path.empty()) throw ParseError("either --field or --cyclotomic is required");
    return load_field_spec(field_path);
}

json embedding_to_json(const EmbeddingResult& emb) {
    json j;
    j["p"] = emb.p;
    j["precision"] = emb.eta.k;
    json digits = json::array();
    for (u64 d : emb.eta.digits()) digits.push_back(d);
    j["eta_digits"] = digits;
    j["valuations"] = json::object();
    for (const auto& [name, v] : emb.element_valuations) j["valuations"][name] = v;
    json skipped = json::array();
    for (const auto& [p, reason] : emb.skipped_primes)
        skipped.push_back(json{{"p", p}, {"reason", to_string(reason)}});
    j["skipped_primes"] = skipped;
    j["bound"] = json{{"log_bound", emb.log_bound},
                      {"log_p", std::log(static_cast<double>(emb.p))},
                      {"sum_element_heights", emb.sum_beta_heights},
                      {"asserted", false}};
    return j;
}

int cmd_embed(const std::string& field_path, unsigned long cyclo_m, const std::string& element_csv,
              const std::string& generator_csv, const std::string& inline_elements, u64 p_max, unsigned precision,
              u64 seed, double bound_c, bool as_json) {
    FieldSpec spec = resolve_field(field_path, cyclo_m);
    if (!inline_elements.empty()) {
        json extra;
        try {
            extra = json::parse(inline_elements);
        } catch (const std::exception& e) {
            throw ParseError(std::string("invalid --elements-inline JSON: ") + e.what());
        }
        if (!extra.is_object()) throw ParseError("--elements-inline must be a JSON object of named elements");
        for (const auto& [name, val] : extra.items())
            spec.elements.insert_or_assign(name, element_from_json(spec.field, val));
    }
    std::vector<std::string> names = split_names(element_csv);
    if (names.empty()) throw ParseError("--elements must name at least one element");

    json report = base_report("embed");
    report["field"] = poly_to_json(spec.field->defining_poly());
    report["seed"] = seed;

    std::vector<std::pair<std::string, FieldElement>> elements;
    if (!generator_csv.empty()) {
        // Pipeline: primitive element from the generators, then rebase every
        // requested element into the new power basis.
        std::vector<FieldElement> gens;
        for (const std::string& g : split_names(generator_csv)) gens.push_back(lookup_element(spec, g));
        PrimitiveResult prim = primitive_from_generators(gens);
        auto new_field = std::make_shared<const NumberField>(prim.min_poly, /*assert_irreducible=*/true);
        report["primitive"] = json{{"multipliers", prim.multipliers},
                                   {"min_poly", poly_to_json(prim.min_poly)},
                                   {"height", prim.height},
                                   {"height_bound", prim.height_bound}};
        for (const std::string& n : names) {
            FieldElement beta = lookup_element(spec, n);
            std::vector<mpq_class> coords = rebase_coords(beta, prim.element);
            elements.emplace_back(n, FieldElement(new_field, std::move(coords)));
        }
    } else {
        for (const std::string& n : names) elements.emplace_back(n, lookup_element(spec, n));
    }

    EmbeddingOptions opts;
    opts.p_max = p_max;
    opts.precision = precision;
    opts.seed = seed;
    opts.bound_exponent_c = bound_c;
    EmbeddingResult emb = find_embedding(elements, opts);
    report["embedding"] = embedding_to_json(emb);

    std::string text = "p = " + std::to_string(emb.p) + "\n";
    for (const auto& [name, v] : emb.element_valuations) text += "v_p(" + name + ") = " + std::to_string(v) + "\n";
    emit(report, as_json, text);
    return 0;
}

int cmd_primitive(const std::string& field_path, const std::string& generator_csv, bool as_json) {
    FieldSpec spec = load_field_spec(field_path);
    std::vector<FieldElement> gens;
    for (const std::string& g : split_names(generator_csv)) gens.push_back(lookup_element(spec, g));
    if (gens.empty()) throw ParseError("--generators must name at least one element");
    PrimitiveResult prim = primitive_from_generators(gens);

    json report = base_report("primitive");
    report["multipliers"] = prim.multipliers;
    report["min_poly"] = poly_to_json(prim.min_poly);
    report["element"] = element_to_json(prim.element);
    report["height"] = prim.height;
    report["height_bound"] = prim.height_bound;
    std::string text = "min_poly = " + prim.min_poly.to_string() + "\nheight = " + std::to_string(prim.height) +
                       " <= " + std::to_string(prim.height_bound) + "\n";
    emit(report, as_json, text);
    return 0;
}

int cmd_coords(const std::string& field_path, const std::string& name, bool as_json) {
    FieldSpec spec = load_field_spec(field_path);
    FieldElement beta = lookup_element(spec, name);
    PowerBasisCoords pc = power_basis_coords(beta);
    CoefficientHeightReport cert = coefficient_height_certificate(beta);

    json report = base_report("coords");
    report["element"] = name;
    json num = json::array();
    for (const auto& a : pc.a) num.push_back(a.get_str());
    report["num"] = num;
    report["den"] = pc.b.get_str();
    report["coeff_heights"] = cert.coeff_heights;
    report["per_index_bounds"] = cert.per_index_bounds;
    report["uniform_bound"] = cert.uniform_bound;
    report["log_den"] = cert.log_b;
    report["pass"] = cert.pass;
    std::string text = "den = " + pc.b.get_str() + "\nuniform bound = " + std::to_string(cert.uniform_bound) +
                       (cert.pass ? " (pass)\n" : " (fail)\n");
    emit(report, as_json, text);
    return 0;
}

int cmd_heights(const std::string& poly_text, bool as_json) {
    IntPoly f = IntPoly::parse(poly_text);
    MahlerEstimate m = mahler_measure(f);
    HeightMahlerReport sandwich = check_height_mahler_inequality(f);

    json report = base_report("heights");
    report["poly"] = poly_to_json(f);
    report["height"] = height(f).get_str();
    report["length"] = length(f).get_str();
    report["mahler"] = m.value;
    report["mahler_abs_error"] = m.abs_error;
    report["sandwich"] =
        json{{"lower", sandwich.lower}, {"mahler", sandwich.mahler}, {"upper", sandwich.upper}, {"pass", sandwich.pass}};
    if (f.degree() >= 1) report["abs_log_height_if_irreducible"] = abs_log_height(f);
    std::string text = "H = " + height(f).get_str() + ", M = " + std::to_string(m.value) + " (+-" +
                       std::to_string(m.abs_error) + ")\n";
    emit(report, as_json, text);
    return 0;
}

int cmd_simple_root_prime(const std::string& poly_text, const std::string& coprime_to, u64 p_max, u64 seed,
                          bool as_json) {
    IntPoly f = IntPoly::parse(poly_text);
    mpz_class Q(coprime_to);
    SimpleRootWitness w = smallest_simple_root_prime(f, Q, p_max, seed);

    json report = base_report("simple-root-prime");
    report["poly"] = poly_to_json(f);
    report["coprime_to"] = Q.get_str();
    report["p"] = w.p;
    report["root"] = w.a;
    emit(report, as_json, "p = " + std::to_string(w.p) + ", root = " + std::to_string(w.a) + "\n");
    return 0;
}

int cmd_generic_prime(const std::string& poly_text, bool as_json) {
    IntPoly f = IntPoly::parse(poly_text);
    GenericPrimeResult g = generic_prime(f);

    json report = base_report("generic-prime");
    report["poly"] = poly_to_json(f);
    report["p"] = g.witness.p;
    report["root"] = g.witness.a;
    report["case"] = g.case_tag;
    report["bound"] = g.bound.get_str();
    report["radical_disc"] = g.radical_M.get_str();
    emit(report, as_json,
         "p = " + std::to_string(g.witness.p) + " (case " + std::to_string(g.case_tag) + ", bound " + g.bound.get_str() +
             ")\n");
    return 0;
}

int cmd_verify_lemmas(const std::string& poly_text, u64 ell, unsigned k_max, const std::string& L_csv, bool as_json) {
    IntPoly f = IntPoly::parse(poly_text);
    std::vector<mpz_class> Ls;
    for (const std::string& s : split_names(L_csv)) Ls.emplace_back(s);
    if (Ls.empty()) Ls = {mpz_class(10), mpz_class(100)};
    CongruenceLemmaReport rep = verify_congruence_lemmas(f, ell, k_max, Ls);

    json report = base_report("verify-lemmas");
    report["poly"] = poly_to_json(f);
    report["ell"] = ell;
    report["distinct_roots"] = rep.distinct_roots;
    json checks = json::array();
    for (const auto& c : rep.checks) {
        json jc;
        jc["k"] = c.k;
        jc["count"] = c.count.get_str();
        jc["lagrange_ok"] = c.lagrange_ok;
        jc["konyagin_power_ok"] = c.konyagin_power_ok;
        jc["drift_ok"] = c.drift_ok;
        checks.push_back(jc);
    }
    report["checks"] = checks;
    report["all_pass"] = rep.all_pass;
    emit(report, as_json, std::string("all_pass = ") + (rep.all_pass ? "true" : "false") + "\n");
    return rep.all_pass ? 0 : 1;
}

int cmd_delta(const std::string& m_text, bool as_json) {
    mpz_class m(m_text);
    mpz_class d = delta(m);
    json report = base_report("delta");
    report["m"] = m.get_str();
    report["delta"] = d.get_str();
    emit(report, as_json, "delta(" + m.get_str() + ") = " + d.get_str() + "\n");
    return 0;
}

int cmd_bounds(const std::string& name, const std::string& inputs_path, double c, double C, double scale,
               double empirical, bool has_empirical, bool as_json) {
    std::ifstream in(inputs_path);
    if (!in) throw ParseError("cannot open inputs file: " + inputs_path);
    json j;
    try {
        j = json::parse(in);
    } catch (const std::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    std::map<std::string, double> inputs;
    for (const auto& [key, val] : j.items()) inputs[key] = val.get<double>();
    BoundConstants constants{c, C, scale};
    std::optional<double> emp;
    if (has_empirical) emp = empirical;
    BoundReport rep = evaluate_bound(name, inputs, constants, emp);

    json report = base_report("bounds");
    report["name"] = rep.name;
    report["inputs"] = rep.inputs;
    report["log_bound"] = rep.log_bound;
    report["overflowed"] = rep.overflowed;
    report["asserted"] = rep.asserted;
    if (rep.log_empirical) report["log_empirical"] = *rep.log_empirical;
    if (rep.margin) report["margin"] = *rep.margin;
    std::string text = "log bound = " + std::to_string(rep.log_bound) + "\n";
    if (rep.margin) text += "margin = " + std::to_string(*rep.margin) + "\n";
    emit(report, as_json, text);
    return 0;
}

int cmd_sharpness_primes(unsigned n, unsigned R, bool as_json) {
    SharpnessPrimesReport rep = sharpness_primes(n, R);
    json report = base_report("sharpness-primes");
    report["n"] = rep.n;
    report["R"] = rep.R;
    json betas = json::array();
    for (const auto& b : rep.beta) betas.push_back(b.get_str());
    report["beta"] = betas;
    report["p_nR"] = rep.p_nR.get_str();
    report["least_good_prime"] = rep.least_good_prime.get_str();
    report["sum_heights"] = rep.sum_heights;
    report["ratio"] = rep.ratio;
    report["exceeds_p_nR"] = rep.exceeds_p_nR;
    emit(report, as_json,
         "least good prime = " + rep.least_good_prime.get_str() + " > p_nR = " + rep.p_nR.get_str() + "\n");
    return rep.exceeds_p_nR ? 0 : 1;
}

int cmd_sharpness_quadratic(long k, long t, unsigned samples, u64 seed, bool as_json) {
    SharpnessQuadraticReport rep = sharpness_quadratic(k, t, samples, seed);
    json report = base_report("sharpness-quadratic");
    report["k"] = rep.k;
    report["t"] = rep.t;
    report["samples"] = rep.samples;
    report["threshold"] = rep.threshold;
    report["min_height"] = rep.min_height.get_str();
    report["asserted"] = rep.asserted;
    report["all_above"] = rep.all_above;
    emit(report, as_json,
         "min height = " + rep.min_height.get_str() + " vs threshold " + std::to_string(rep.threshold) + "\n");
    return rep.all_above ? 0 : 1;
}

int cmd_verify_all(const std::string& scope, u64 seed, const std::string& fault, bool as_json) {
    SuiteOptions opts;
    if (scope == "quick")
        opts.scope = SuiteScope::Quick;
    else if (scope == "full")
        opts.scope = SuiteScope::Full;
    else
        throw ParseError("scope must be quick or full");
    opts.seed = seed;
    opts.fault_inject = fault;

    auto results = run_verification_suite(opts);
    json report = base_report("verify-all");
    report["scope"] = scope;
    report["seed"] = seed;
    json checks = json::array();
    std::string text;
    std::size_t total = 0, failed = 0;
    for (const auto& r : results) {
        json jc;
        jc["name"] = r.name;
        jc["checks"] = r.checks;
        jc["failures"] = r.failures;
        jc["messages"] = r.messages;
        checks.push_back(jc);
        total += r.checks;
        failed += r.failures;
        text += r.name + ": " + std::to_string(r.checks - r.failures) + "/" + std::to_string(r.checks) + " passed\n";
        for (const auto& m : r.messages) text += "  FAIL " + m + "\n";
    }
    report["checks"] = checks;
    bool pass = suite_passed(results);
    report["pass"] = pass;
    text += std::to_string(total - failed) + "/" + std::to_string(total) + " total\n";
    emit(report, as_json, text);
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact number-field arithmetic: p-adic unit embeddings and inequality verification"};
    app.require_subcommand(1);

    bool as_json = false;
    app.add_flag("--json", as_json, "emit a single JSON object");

    // Shared option storage.
    std::string field_path, element_csv, generator_csv, inline_elements, poly_text, coprime_to = "1", L_csv,
                bound_name, inputs_path, scope = "quick", fault, m_text, element_name;
    unsigned long cyclo_m = 0;
    u64 p_max = default_p_max(), seed = 0;
    unsigned precision = 64, k_max = 3, samples = 200, sh_n = 1, sh_R = 1;
    long quad_k = 15, quad_t = 2;
    u64 ell = 2;
    double const_c = 1.0, const_C = 1.0, const_scale = 1.0, empirical = 0.0;

    auto* embed = app.add_subcommand("embed", "find a prime and embedding making the elements p-adic units");
    embed->add_option("--field", field_path, "field spec JSON path");
    embed->add_option("--cyclotomic", cyclo_m, "use the m-th cyclotomic field instead of --field");
    embed->add_option("--elements", element_csv, "comma-separated element names")->required();
    embed->add_option("--generators", generator_csv, "optional generator names for the primitive-element pipeline");
    embed->add_option("--elements-inline", inline_elements, "extra named elements as a JSON object");
    embed->add_option("--p-max", p_max, "prime search limit");
    embed->add_option("--precision", precision, "p-adic digits");
    embed->add_option("--seed", seed, "RNG seed");
    embed->add_option("--bound-c", const_c, "reported bound exponent constant");

    auto* primitive = app.add_subcommand("primitive", "primitive element from generators");
    primitive->add_option("--field", field_path)->required();
    primitive->add_option("--generators", generator_csv)->required();

    auto* coords = app.add_subcommand("coords", "power-basis coordinates with height certificate");
    coords->add_option("--field", field_path)->required();
    coords->add_option("--element", element_name)->required();

    auto* heights_cmd = app.add_subcommand("heights", "height, length and Mahler measure of a polynomial");
    heights_cmd->add_option("--poly", poly_text)->required();

    auto* srp = app.add_subcommand("simple-root-prime", "smallest prime with a simple root, coprime to Q");
    srp->add_option("--poly", poly_text)->required();
    srp->add_option("--coprime-to", coprime_to);
    srp->add_option("--p-max", p_max);
    srp->add_option("--seed", seed);

    auto* gp = app.add_subcommand("generic-prime", "constructive simple-root prime with explicit case bound");
    gp->add_option("--poly", poly_text)->required();

    auto* vl = app.add_subcommand("verify-lemmas", "root-count inequalities modulo prime powers");
    vl->add_option("--poly", poly_text)->required();
    vl->add_option("--ell", ell)->required();
    vl->add_option("--k-max", k_max);
    vl->add_option("--L", L_csv, "comma-separated L values");

    auto* dl = app.add_subcommand("delta", "cyclotomic correction factor");
    dl->add_option("--m", m_text)->required();

    auto* bd = app.add_subcommand("bounds", "evaluate a parameterized bound formula");
    bd->add_option("--name", bound_name)->required();
    bd->add_option("--inputs", inputs_path)->required();
    bd->add_option("--c", const_c);
    bd->add_option("--C", const_C);
    bd->add_option("--exponent-scale", const_scale);
    auto* emp_opt = bd->add_option("--empirical", empirical, "observed value for the margin");

    auto* sh = app.add_subcommand("sharpness", "extremal constructions");
    auto* shp = sh->add_subcommand("primes", "products of consecutive primes");
    shp->add_option("--n", sh_n)->required();
    shp->add_option("--R", sh_R)->required();
    auto* shq = sh->add_subcommand("quadratic", "quadratic fields with large-height primitive elements");
    shq->add_option("--k", quad_k)->required();
    shq->add_option("--t", quad_t)->required();
    shq->add_option("--samples", samples);
    shq->add_option("--seed", seed);
    sh->require_subcommand(1);

    auto* va = app.add_subcommand("verify-all", "run the full asserted-inequality suite");
    va->add_option("--scope", scope, "quick or full");
    va->add_option("--seed", seed);
    va->add_option("--fault-inject", fault, "invert the named check's first comparison (failure-path test)");

    // Let app-level flags (--json) appear after the subcommand name.
    for (CLI::App* s : {embed, primitive, coords, heights_cmd, srp, gp, vl, dl, bd, sh, shp, shq, va})
        s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    try {
        if (*embed)
            return cmd_embed(field_path, cyclo_m, element_csv, generator_csv, inline_elements, p_max, precision,
                             seed, const_c, as_json);
        if (*primitive) return cmd_primitive(field_path, generator_csv, as_json);
        if (*coords) return cmd_coords(field_path, element_name, as_json);
        if (*heights_cmd) return cmd_heights(poly_text, as_json);
        if (*srp) return cmd_simple_root_prime(poly_text, coprime_to, p_max, seed, as_json);
        if (*gp) return cmd_generic_prime(poly_text, as_json);
        if (*vl) return cmd_verify_lemmas(poly_text, ell, k_max, L_csv, as_json);
        if (*dl) return cmd_delta(m_text, as_json);
        if (*bd) return cmd_bounds(bound_name, inputs_path, const_c, const_C, const_scale, empirical,
                                   emp_opt->count() > 0, as_json);
        if (*shp) return cmd_sharpness_primes(sh_n, sh_R, as_json);
        if (*shq) return cmd_sharpness_quadratic(quad_k, quad_t, samples, seed, as_json);
        if (*va) return cmd_verify_all(scope, seed, fault, as_json);
        std::cerr << "no subcommand\n";
        return kExitParse;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitParse;
    } catch (const NotGenerating& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNotGenerating;
    } catch (const SearchExhausted& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitSearchExhausted;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInternal;
    }
}
