#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kmwb/descriptor.hpp"
#include "kmwb/series.hpp"
#include "kmwb/structure.hpp"

namespace kmwb {

using Json = nlohmann::ordered_json;

// All file formats are exact: rationals travel as reduced "p/q" strings,
// never as floats. Serialization is canonical (sorted monomials and terms)
// so outputs are byte-reproducible.

inline Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(e.what());
    }
}

inline Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_json_text(text);
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open " + path + " for writing");
    out << dump_json(j);
}

namespace detail_io {

inline const Json& field(const Json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw parse_error(std::string("missing field \"") + name + "\"");
    return *it;
}

inline Int to_int(const Json& j) {
    if (j.is_number_integer()) return Int(static_cast<long>(j.get<long long>()));
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::invalid_argument&) {
            throw parse_error("bad integer literal \"" + j.get<std::string>() + "\"");
        }
    }
    throw parse_error("expected an integer");
}

inline Rat to_rat(const Json& j) {
    if (j.is_number_integer()) return make_rat(to_int(j));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw parse_error("expected a rational as integer or \"p/q\" string");
}

inline IntVec to_intvec(const Json& j) {
    if (!j.is_array()) throw parse_error("expected an integer array");
    IntVec out;
    for (const auto& v : j) out.push_back(to_int(v));
    return out;
}

inline RatVec to_ratvec(const Json& j) {
    if (!j.is_array()) throw parse_error("expected a rational array");
    RatVec out;
    for (const auto& v : j) out.push_back(to_rat(v));
    return out;
}

inline Json from_intvec(const IntVec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(x.get_str());
    return out;
}

inline Json from_ratvec(const RatVec& v) {
    Json out = Json::array();
    for (const auto& x : v) out.push_back(rational_str(x));
    return out;
}

}  // namespace detail_io

// ---- structure files: {"rank": n, "terms": [{"a": "p/q", "K": [..]}]} ----

inline KMStructure structure_from_json(const Json& j, int* rank_out = nullptr) {
    int rank = static_cast<int>(detail_io::to_int(detail_io::field(j, "rank")).get_si());
    if (rank_out) *rank_out = rank;
    std::vector<KMTerm> terms;
    for (const auto& t : detail_io::field(j, "terms")) {
        KMTerm term;
        term.coefficient = detail_io::to_rat(detail_io::field(t, "a"));
        term.cls = detail_io::to_intvec(detail_io::field(t, "K"));
        if (term.cls.size() != static_cast<size_t>(rank))
            throw parse_error("structure class length != rank");
        terms.push_back(std::move(term));
    }
    return KMStructure(std::move(terms));
}

inline Json structure_to_json(const KMStructure& s, int rank) {
    Json j;
    j["rank"] = rank;
    Json terms = Json::array();
    for (const auto& t : s.terms()) {
        Json term;
        term["a"] = rational_str(t.coefficient);
        term["K"] = detail_io::from_intvec(t.cls);
        terms.push_back(std::move(term));
    }
    j["terms"] = std::move(terms);
    return j;
}

// ---- series files: {"rank", "D", "parts": [{"d", "monomials": [{"e","c"}]}]} ----

inline TruncatedSeries series_from_json(const Json& j) {
    int rank = static_cast<int>(detail_io::to_int(detail_io::field(j, "rank")).get_si());
    int max_degree = static_cast<int>(detail_io::to_int(detail_io::field(j, "D")).get_si());
    if (max_degree < 0) throw parse_error("negative truncation degree");
    TruncatedSeries out(rank, max_degree);
    for (const auto& part : detail_io::field(j, "parts")) {
        int d = static_cast<int>(detail_io::to_int(detail_io::field(part, "d")).get_si());
        if (d < 0 || d > max_degree) throw parse_error("part degree out of range");
        for (const auto& mono : detail_io::field(part, "monomials")) {
            IntVec raw = detail_io::to_intvec(detail_io::field(mono, "e"));
            Exponents e;
            int total = 0;
            for (const auto& v : raw) {
                int k = static_cast<int>(v.get_si());
                if (k < 0) throw parse_error("negative exponent");
                total += k;
                e.push_back(k);
            }
            if (e.size() != static_cast<size_t>(rank)) throw parse_error("exponent length != rank");
            if (total != d) throw parse_error("monomial degree != part degree");
            Rat c = detail_io::to_rat(detail_io::field(mono, "c"));
            if (c == 0) throw parse_error("stored zero coefficient");
            if (!out.parts[d].emplace(std::move(e), std::move(c)).second)
                throw parse_error("duplicate monomial");
        }
    }
    return out;
}

inline Json series_to_json(const TruncatedSeries& f) {
    Json j;
    j["rank"] = f.nvars;
    j["D"] = f.max_degree();
    Json parts = Json::array();
    for (int d = 0; d <= f.max_degree(); ++d) {
        if (f.parts[d].empty()) continue;
        Json part;
        part["d"] = d;
        Json monos = Json::array();
        for (const auto& [e, c] : f.parts[d]) {
            Json mono;
            Json ej = Json::array();
            for (int k : e) ej.push_back(k);
            mono["e"] = std::move(ej);
            mono["c"] = rational_str(c);
            monos.push_back(std::move(mono));
        }
        part["monomials"] = std::move(monos);
        parts.push_back(std::move(part));
    }
    j["parts"] = std::move(parts);
    return j;
}

// ---- raw polynomial families ----

inline RawPolynomialFamily raw_family_from_json(const Json& j, int* rank_out = nullptr) {
    int rank = static_cast<int>(detail_io::to_int(detail_io::field(j, "rank")).get_si());
    if (rank_out) *rank_out = rank;
    RawPolynomialFamily fam;
    for (const auto& entry : detail_io::field(j, "entries")) {
        int k = static_cast<int>(detail_io::to_int(detail_io::field(entry, "k")).get_si());
        int pt = static_cast<int>(detail_io::to_int(detail_io::field(entry, "j")).get_si());
        const Json& pj = detail_io::field(entry, "poly");
        HomogeneousPolynomial poly;
        poly.degree = static_cast<int>(detail_io::to_int(detail_io::field(pj, "d")).get_si());
        for (const auto& mono : detail_io::field(pj, "monomials")) {
            IntVec raw = detail_io::to_intvec(detail_io::field(mono, "e"));
            Exponents e;
            for (const auto& v : raw) e.push_back(static_cast<int>(v.get_si()));
            if (e.size() != static_cast<size_t>(rank)) throw parse_error("exponent length != rank");
            poly.monomials.emplace(std::move(e), detail_io::to_rat(detail_io::field(mono, "c")));
        }
        try {
            fam.insert(k, pt, std::move(poly));
        } catch (const Error& err) {
            throw parse_error(err.what());
        }
    }
    return fam;
}

// ---- candidate lists ----

inline Json candidates_to_json(const std::vector<LatticeClass>& ks) {
    Json j;
    Json arr = Json::array();
    for (const auto& k : ks) arr.push_back(detail_io::from_intvec(k));
    j["candidates"] = std::move(arr);
    return j;
}

inline std::vector<LatticeClass> candidates_from_json(const Json& j) {
    std::vector<LatticeClass> out;
    for (const auto& k : detail_io::field(j, "candidates")) out.push_back(detail_io::to_intvec(k));
    return out;
}

// ---- surface descriptors ----

inline SurfaceDescriptor descriptor_from_json(const Json& j) {
    SurfaceDescriptor d;
    int rank = static_cast<int>(detail_io::to_int(detail_io::field(j, "rank")).get_si());
    IntVec q = detail_io::to_intvec(detail_io::field(j, "Q"));
    try {
        d.lattice = IntersectionLattice(rank, std::move(q));
        d.b_plus = static_cast<int>(detail_io::to_int(detail_io::field(j, "b_plus")).get_si());
        d.w2 = detail_io::to_intvec(detail_io::field(j, "w2"));
        d.kx = detail_io::to_intvec(detail_io::field(j, "KX"));
        if (j.contains("ns_basis")) {
            std::vector<LatticeClass> basis;
            for (const auto& b : j["ns_basis"]) basis.push_back(detail_io::to_intvec(b));
            d.ns_basis = std::move(basis);
        }
        if (j.contains("cone")) {
            std::vector<RatVec> gens;
            for (const auto& g : detail_io::field(j["cone"], "generators"))
                gens.push_back(detail_io::to_ratvec(g));
            d.cone = RationalCone(rank, std::move(gens));
        }
        if (j.contains("hodge")) {
            std::vector<HodgeVector> vecs;
            for (const auto& v : detail_io::field(j["hodge"], "vectors")) {
                HodgeVector hv;
                std::string type = detail_io::field(v, "type").get<std::string>();
                if (type == "2,0")
                    hv.type = Bidegree::TwoZero;
                else if (type == "1,1")
                    hv.type = Bidegree::OneOne;
                else if (type == "0,2")
                    hv.type = Bidegree::ZeroTwo;
                else
                    throw parse_error("bad Hodge type tag \"" + type + "\"");
                RatVec re = detail_io::to_ratvec(detail_io::field(v, "re"));
                RatVec im = detail_io::to_ratvec(detail_io::field(v, "im"));
                if (re.size() != im.size()) throw parse_error("re/im length mismatch");
                for (size_t i = 0; i < re.size(); ++i) hv.coords.push_back({re[i], im[i]});
                vecs.push_back(std::move(hv));
            }
            d.hodge = HodgeBasis(d.lattice, std::move(vecs));
        }
        if (j.contains("surfaces")) {
            for (const auto& s : j["surfaces"]) {
                SurfaceConstraint con;
                con.sigma = detail_io::to_intvec(detail_io::field(s, "class"));
                con.genus =
                    static_cast<int>(detail_io::to_int(detail_io::field(s, "genus")).get_si());
                if (con.genus < 0) throw parse_error("negative genus");
                if (s.contains("connected")) con.connected = s["connected"].get<bool>();
                check_length(d.lattice, con.sigma.size(), "surface class");
                d.surfaces.push_back(std::move(con));
            }
        }
        d.validate();
    } catch (const Error& err) {
        if (err.family() == ErrorFamily::Parse) throw;
        throw parse_error(std::string("invalid descriptor: ") + err.what());
    }
    return d;
}

}  // namespace kmwb
