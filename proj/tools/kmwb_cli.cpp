// Command-line front end for the workbench: exact data files in, exact
// reports out. Exit codes: 0 ok, 2 verification failure, 3 parse error,
// 4 dimension mismatch, 5 unbounded / not salient, 6 recovery failure.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kmwb/workbench.hpp"

namespace {

using kmwb::Json;

void emit(const Json& j, const std::optional<std::string>& out_path) {
    if (out_path)
        kmwb::save_json_file(*out_path, j);
    else
        std::cout << kmwb::dump_json(j);
}

kmwb::LatticeClass parse_class_arg(const std::string& s) {
    kmwb::LatticeClass out;
    std::string cur;
    for (char ch : s) {
        if (ch == ',') {
            out.push_back(kmwb::Int(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(kmwb::Int(cur));
    return out;
}

Json membership_witness(const kmwb::InsideCertificate& cert) {
    Json j;
    j["inside"] = true;
    j["lambda"] = kmwb::detail_io::from_ratvec(cert.lambda);
    return j;
}

Json km_report_json(const kmwb::KMPropertyReport& rep) {
    Json j;
    j["parity"] = rep.parity_ok ? "pass" : "fail";
    j["negation_closure"] = rep.negation_ok ? "pass" : "fail";
    j["adjunction"] = rep.adjunction_ok ? "pass" : "fail";
    Json viol = Json::array();
    for (const auto& k : rep.parity_violations) {
        Json v;
        v["check"] = "parity";
        v["K"] = kmwb::detail_io::from_intvec(k);
        viol.push_back(std::move(v));
    }
    for (const auto& k : rep.negation_violations) {
        Json v;
        v["check"] = "negation_closure";
        v["K"] = kmwb::detail_io::from_intvec(k);
        viol.push_back(std::move(v));
    }
    for (const auto& a : rep.adjunction_violations) {
        Json v;
        v["check"] = "adjunction";
        v["K"] = kmwb::detail_io::from_intvec(a.km_class);
        v["sigma"] = kmwb::detail_io::from_intvec(a.sigma);
        v["genus"] = a.genus;
        v["lhs_2g_minus_2"] = a.lhs.get_str();
        v["rhs_sigma2_plus_K_sigma"] = a.rhs.get_str();
        viol.push_back(std::move(v));
    }
    j["violations"] = std::move(viol);
    Json notices = Json::array();
    for (const auto& n : rep.notices) notices.push_back(n);
    j["notices"] = std::move(notices);
    return j;
}

int cmd_verify(const std::string& desc_path, const std::string& struct_path,
               const std::optional<std::string>& out_path) {
    auto desc = kmwb::descriptor_from_json(kmwb::load_json_file(desc_path));
    auto s = kmwb::structure_from_json(kmwb::load_json_file(struct_path));

    Json rep;
    rep["command"] = "verify";
    bool ok = true;

    auto km = kmwb::verify_km_properties(s, desc.lattice, desc.w2, desc.surfaces);
    rep["km_properties"] = km_report_json(km);
    ok = ok && km.all_ok();

    if (desc.cone) {
        Json dec = Json::array();
        for (const auto& t : s.terms()) {
            Json entry;
            entry["K"] = kmwb::detail_io::from_intvec(t.cls);
            try {
                auto d = kmwb::decompose(desc.kx, t.cls, *desc.cone);
                entry["verdict"] = "pass";
                entry["C"] = kmwb::detail_io::from_intvec(d.c);
                entry["D"] = kmwb::detail_io::from_intvec(d.d);
                entry["C_certificate"] = membership_witness(d.c_certificate);
                entry["D_certificate"] = membership_witness(d.d_certificate);
            } catch (const kmwb::Error& e) {
                entry["verdict"] = "fail";
                entry["witness"] = e.what();
                ok = false;
            }
            dec.push_back(std::move(entry));
        }
        rep["decompositions"] = std::move(dec);
    }

    if (desc.hodge) {
        auto t11 = kmwb::classes_type11_check(*desc.hodge, desc.lattice, s);
        Json tj;
        tj["verdict"] = t11.ok ? "pass" : "fail";
        Json off = Json::array();
        for (const auto& k : t11.offenders) off.push_back(kmwb::detail_io::from_intvec(k));
        tj["offenders"] = std::move(off);
        rep["type_1_1"] = std::move(tj);
        ok = ok && t11.ok;
    }

    rep["verdict"] = ok ? "pass" : "fail";
    emit(rep, out_path);
    return ok ? 0 : 2;
}

int cmd_expand(const std::string& desc_path, const std::string& struct_path, int degree,
               const std::optional<std::string>& out_path) {
    auto desc = kmwb::descriptor_from_json(kmwb::load_json_file(desc_path));
    auto s = kmwb::structure_from_json(kmwb::load_json_file(struct_path));
    auto series = kmwb::expand_structure(s, desc.lattice, degree);
    emit(kmwb::series_to_json(series), out_path);
    return 0;
}

int cmd_recover(const std::string& desc_path, const std::string& series_path,
                std::optional<long> bound, const std::optional<std::string>& cand_path, bool ns,
                const std::optional<std::string>& out_path) {
    auto desc = kmwb::descriptor_from_json(kmwb::load_json_file(desc_path));
    auto series = kmwb::series_from_json(kmwb::load_json_file(series_path));
    kmwb::RecoveryHint hint;
    if (bound) hint.bound = kmwb::Int(*bound);
    if (cand_path) hint.candidates = kmwb::candidates_from_json(kmwb::load_json_file(*cand_path));
    if (!hint.bound && !hint.candidates)
        throw kmwb::recovery_error("AmbiguousRecovery", "need --bound or --candidates");

    kmwb::KMStructure s;
    if (ns) {
        if (!desc.ns_basis)
            throw kmwb::recovery_error("DegenerateRestriction", "descriptor has no ns_basis");
        s = kmwb::recover_from_NS(series, desc.lattice, *desc.ns_basis, hint);
    } else {
        s = kmwb::recover_structure(series, desc.lattice, hint);
    }
    Json j = kmwb::structure_to_json(s, desc.lattice.rank());
    Json transcript;
    transcript["re_expansion_verified"] = !ns;
    if (ns) {
        // For NS recovery re-verify against the restriction of the re-expansion.
        auto full = kmwb::expand_structure(s, desc.lattice, series.max_degree());
        transcript["re_expansion_verified"] =
            kmwb::restrict_series(full, *desc.ns_basis) == series;
    }
    j["transcript"] = std::move(transcript);
    emit(j, out_path);
    return 0;
}

int cmd_decompose(const std::string& desc_path, const std::string& ki_arg,
                  const std::optional<std::string>& out_path) {
    auto desc = kmwb::descriptor_from_json(kmwb::load_json_file(desc_path));
    if (!desc.cone) throw kmwb::verification_error("NotInCone", "descriptor has no cone block");
    auto ki = parse_class_arg(ki_arg);
    Json rep;
    rep["command"] = "decompose";
    rep["K"] = kmwb::detail_io::from_intvec(ki);
    auto d = kmwb::decompose(desc.kx, ki, *desc.cone);
    rep["C"] = kmwb::detail_io::from_intvec(d.c);
    rep["D"] = kmwb::detail_io::from_intvec(d.d);
    rep["C_certificate"] = membership_witness(d.c_certificate);
    rep["D_certificate"] = membership_witness(d.d_certificate);
    rep["verdict"] = "pass";
    emit(rep, out_path);
    return 0;
}

int cmd_enumerate(const std::string& desc_path, bool gentype,
                  const std::optional<std::string>& out_path) {
    auto desc = kmwb::descriptor_from_json(kmwb::load_json_file(desc_path));
    if (!desc.cone) throw kmwb::verification_error("NotInCone", "descriptor has no cone block");
    auto cands = kmwb::enumerate_candidates(desc.kx, *desc.cone, desc.w2);
    Json j = kmwb::candidates_to_json(cands);
    if (gentype) {
        auto rep = kmwb::gentype_bound_check(desc.lattice, *desc.cone, desc.kx, cands);
        Json g;
        if (!rep.hypotheses_met) {
            g["verdict"] = "hypotheses-not-met";
            Json fh = Json::array();
            for (const auto& f : rep.failed_hypotheses) fh.push_back(f);
            g["failed_hypotheses"] = std::move(fh);
        } else {
            g["verdict"] = rep.all_ok ? "pass" : "fail";
            g["KX_squared"] = rep.kx_squared.get_str();
            Json entries = Json::array();
            for (const auto& e : rep.entries) {
                Json ej;
                ej["K"] = kmwb::detail_io::from_intvec(e.k);
                ej["K_squared"] = e.k_squared.get_str();
                ej["audit_4(D2-KXD)"] = e.audit.get_str();
                ej["equality"] = e.equality;
                ej["violation"] = e.violation;
                entries.push_back(std::move(ej));
            }
            g["entries"] = std::move(entries);
        }
        j["gentype"] = std::move(g);
    }
    emit(j, out_path);
    return 0;
}

int cmd_blowup(const std::string& desc_path, const std::string& struct_path, int count,
               const std::optional<std::string>& out_path) {
    auto desc = kmwb::descriptor_from_json(kmwb::load_json_file(desc_path));
    auto s = kmwb::structure_from_json(kmwb::load_json_file(struct_path));
    auto bm = kmwb::blowup_lattice(desc.lattice, count);
    emit(kmwb::structure_to_json(kmwb::blowup_structure(s, bm), bm.extended.rank()), out_path);
    return 0;
}

int cmd_blowdown(const std::string& desc_path, const std::string& series_path,
                 const std::string& mode, const std::optional<std::string>& out_path) {
    auto desc = kmwb::descriptor_from_json(kmwb::load_json_file(desc_path));
    auto series = kmwb::series_from_json(kmwb::load_json_file(series_path));
    int l = series.nvars - desc.lattice.rank();
    if (l < 1)
        throw kmwb::dimension_mismatch("series rank must exceed base rank by the blow-up count");
    auto bm = kmwb::blowup_lattice(desc.lattice, l);
    kmwb::TruncatedSeries down =
        mode == "e6" ? kmwb::blowdown_E6(series, bm) : kmwb::blowdown_E4(series, bm);
    Json j = kmwb::series_to_json(down);
    if (mode == "e6") j["audit_factor_note"] = "raw -1/2 E^6 contraction; scale not normalized";
    emit(j, out_path);
    return 0;
}

int cmd_purity(const std::string& desc_path, const std::string& series_path,
               const std::optional<std::string>& out_path) {
    auto desc = kmwb::descriptor_from_json(kmwb::load_json_file(desc_path));
    if (!desc.hodge)
        throw kmwb::verification_error("SingularBasis", "descriptor has no hodge block");
    auto series = kmwb::series_from_json(kmwb::load_json_file(series_path));
    auto rep = kmwb::purity_check(*desc.hodge, series);
    Json j;
    j["command"] = "purity";
    j["verdict"] = rep.pure ? "pass" : "fail";
    Json viol = Json::array();
    for (const auto& v : rep.violations) {
        Json vj;
        vj["degree"] = v.degree;
        Json e = Json::array();
        for (int k : v.exponents) e.push_back(k);
        vj["hodge_exponents"] = std::move(e);
        vj["bidegree"] = std::to_string(v.p) + "," + std::to_string(v.q);
        viol.push_back(std::move(vj));
    }
    j["violations"] = std::move(viol);
    emit(j, out_path);
    return rep.pure ? 0 : 2;
}

int cmd_forms(const std::string& desc_path, const std::string& struct_path, int omega, int degree,
              const std::optional<std::string>& out_path) {
    auto desc = kmwb::descriptor_from_json(kmwb::load_json_file(desc_path));
    if (!desc.hodge)
        throw kmwb::verification_error("SingularBasis", "descriptor has no hodge block");
    auto s = kmwb::structure_from_json(kmwb::load_json_file(struct_path));
    auto rep = kmwb::forms_identity_check(*desc.hodge, desc.lattice, s,
                                          static_cast<size_t>(omega), degree);
    Json j;
    j["command"] = "forms";
    if (!rep.hypotheses_met) {
        j["verdict"] = "hypotheses-not-met";
    } else {
        j["verdict"] = rep.ok ? "pass" : "fail";
        j["q0"] = kmwb::rational_str(rep.q0);
        j["exponent"] = kmwb::rational_str(rep.exponent);
        j["x"] = kmwb::detail_io::from_ratvec(rep.x);
    }
    Json fails = Json::array();
    for (const auto& f : rep.failures) fails.push_back(f);
    j["failures"] = std::move(fails);
    emit(j, out_path);
    return (rep.hypotheses_met && rep.ok) ? 0 : 2;
}

int cmd_genus(const std::string& desc_path, const std::string& struct_path,
              const std::string& sigma_arg, const std::optional<std::string>& out_path) {
    auto desc = kmwb::descriptor_from_json(kmwb::load_json_file(desc_path));
    auto s = kmwb::structure_from_json(kmwb::load_json_file(struct_path));
    auto sigma = parse_class_arg(sigma_arg);
    Json j;
    j["command"] = "genus";
    j["sigma"] = kmwb::detail_io::from_intvec(sigma);
    j["min_genus"] = kmwb::min_genus_bound(s, desc.lattice, sigma).get_str();
    emit(j, out_path);
    return 0;
}

int cmd_simpletype(const std::string& raw_path, const std::optional<std::string>& out_path) {
    auto fam = kmwb::raw_family_from_json(kmwb::load_json_file(raw_path));
    auto rep = kmwb::check_simple_type(fam);
    Json j;
    j["command"] = "simpletype";
    j["verdict"] = rep.ok ? "pass" : "fail";
    Json checked = Json::array();
    for (int k : rep.checked_k) checked.push_back(k);
    j["checked_k"] = std::move(checked);
    Json failing = Json::array();
    for (int k : rep.failing_k) failing.push_back(k);
    j["failing_k"] = std::move(failing);
    emit(j, out_path);
    return rep.ok ? 0 : 2;
}

int cmd_flatten(const std::string& raw_path, int b_plus,
                const std::optional<std::string>& out_path) {
    int rank = 0;
    auto fam = kmwb::raw_family_from_json(kmwb::load_json_file(raw_path), &rank);
    emit(kmwb::series_to_json(kmwb::flatten_to_series(fam, b_plus, rank)), out_path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact workbench for Donaldson series in basic-class form"};
    app.require_subcommand(1);

    std::string desc_path, struct_path, series_path, raw_path, ki_arg, sigma_arg;
    std::string mode = "e4";
    std::optional<std::string> out_path, cand_path;
    std::optional<long> bound;
    int degree = 6, count = 1, omega = 0, b_plus = 3;
    bool ns = false, gentype = false;

    auto* verify = app.add_subcommand("verify", "verify structure properties for a surface");
    verify->add_option("--descriptor", desc_path)->required();
    verify->add_option("--structure", struct_path)->required();
    verify->add_option("-o,--output", out_path);

    auto* expand = app.add_subcommand("expand", "expand a structure to a truncated series");
    expand->add_option("--descriptor", desc_path)->required();
    expand->add_option("--structure", struct_path)->required();
    expand->add_option("--degree", degree)->required();
    expand->add_option("-o,--output", out_path);

    auto* recover = app.add_subcommand("recover", "recover a structure from series data");
    recover->add_option("--descriptor", desc_path)->required();
    recover->add_option("--series", series_path)->required();
    recover->add_option("--bound", bound);
    recover->add_option("--candidates", cand_path);
    recover->add_flag("--ns", ns, "series is restricted to the NS sublattice");
    recover->add_option("-o,--output", out_path);

    auto* decompose = app.add_subcommand("decompose", "decompose K_X = C + D against the cone");
    decompose->add_option("--descriptor", desc_path)->required();
    decompose->add_option("--ki", ki_arg)->required();
    decompose->add_option("-o,--output", out_path);

    auto* enumerate = app.add_subcommand("enumerate", "enumerate candidate classes");
    enumerate->add_option("--descriptor", desc_path)->required();
    enumerate->add_flag("--gentype", gentype, "append the K^2 bound report");
    enumerate->add_option("-o,--output", out_path);

    auto* blowup = app.add_subcommand("blowup", "transfer a structure to the blow-up");
    blowup->add_option("--descriptor", desc_path)->required();
    blowup->add_option("--structure", struct_path)->required();
    blowup->add_option("--l", count)->required();
    blowup->add_option("-o,--output", out_path);

    auto* blowdown = app.add_subcommand("blowdown", "contract a series back to the base");
    blowdown->add_option("--descriptor", desc_path)->required();
    blowdown->add_option("--series", series_path)->required();
    blowdown->add_option("--mode", mode)->check(CLI::IsMember({"e4", "e6"}));
    blowdown->add_option("-o,--output", out_path);

    auto* purity = app.add_subcommand("purity", "check (d,d) purity of a series");
    purity->add_option("--descriptor", desc_path)->required();
    purity->add_option("--series", series_path)->required();
    purity->add_option("-o,--output", out_path);

    auto* forms = app.add_subcommand("forms", "check q(w + conj w) = q0 e^{Q(w, conj w)}");
    forms->add_option("--descriptor", desc_path)->required();
    forms->add_option("--structure", struct_path)->required();
    forms->add_option("--omega", omega);
    forms->add_option("--degree", degree);
    forms->add_option("-o,--output", out_path);

    auto* genus = app.add_subcommand("genus", "minimal genus bound for a class");
    genus->add_option("--descriptor", desc_path)->required();
    genus->add_option("--structure", struct_path)->required();
    genus->add_option("--sigma", sigma_arg)->required();
    genus->add_option("-o,--output", out_path);

    auto* simpletype = app.add_subcommand("simpletype", "check q_k(pt^2,-) = 4 q_{k-1}");
    simpletype->add_option("--raw", raw_path)->required();
    simpletype->add_option("-o,--output", out_path);

    auto* flatten = app.add_subcommand("flatten", "flatten raw polynomials to a series");
    flatten->add_option("--raw", raw_path)->required();
    flatten->add_option("--b-plus", b_plus)->required();
    flatten->add_option("-o,--output", out_path);

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify(desc_path, struct_path, out_path);
        if (expand->parsed()) return cmd_expand(desc_path, struct_path, degree, out_path);
        if (recover->parsed())
            return cmd_recover(desc_path, series_path, bound, cand_path, ns, out_path);
        if (decompose->parsed()) return cmd_decompose(desc_path, ki_arg, out_path);
        if (enumerate->parsed()) return cmd_enumerate(desc_path, gentype, out_path);
        if (blowup->parsed()) return cmd_blowup(desc_path, struct_path, count, out_path);
        if (blowdown->parsed()) return cmd_blowdown(desc_path, series_path, mode, out_path);
        if (purity->parsed()) return cmd_purity(desc_path, series_path, out_path);
        if (forms->parsed()) return cmd_forms(desc_path, struct_path, omega, degree, out_path);
        if (genus->parsed()) return cmd_genus(desc_path, struct_path, sigma_arg, out_path);
        if (simpletype->parsed()) return cmd_simpletype(raw_path, out_path);
        if (flatten->parsed()) return cmd_flatten(raw_path, b_plus, out_path);
    } catch (const kmwb::Error& e) {
        Json err;
        err["error"] = e.code();
        err["message"] = e.what();
        std::cerr << kmwb::dump_json(err);
        return e.exit_code();
    }
    return 0;
}
