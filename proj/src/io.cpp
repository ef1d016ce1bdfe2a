#include "curvetk/io.hpp"

#include "curvetk/hyperaut.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace curvetk {

json field_to_json(const FieldSpec& s) {
    json j;
    j["p"] = s.p();
    j["n"] = s.n();
    if (s.n() > 1) {
        json m = json::array();
        for (u32 c : s.modulus()) m.push_back(c);
        j["modulus"] = m;
    }
    return j;
}

const FieldSpec& field_from_json(const json& j) {
    u64 p = j.at("p").get<u64>();
    unsigned n = j.at("n").get<unsigned>();
    if (n == 1 || !j.contains("modulus")) {
        if (n != 1) return FieldSpec::get(p, n);
        return FieldSpec::get(p, 1);
    }
    std::vector<i64> m = j.at("modulus").get<std::vector<i64>>();
    return FieldSpec::with_modulus(p, m);
}

json element_to_json(const FieldElement& e) {
    if (e.field().n() == 1) return e.coeffs()[0];
    json a = json::array();
    for (u32 c : e.coeffs()) a.push_back(c);
    return a;
}

FieldElement element_from_json(const json& j, const FieldSpec& s) {
    if (j.is_array()) return FieldElement::from_vector(s, j.get<std::vector<i64>>());
    return FieldElement::from_int(s, j.get<i64>());
}

json poly_to_json(const Poly& f) {
    json a = json::array();
    for (int k = 0; k <= f.degree(); ++k) a.push_back(element_to_json(f.coeff(k)));
    return a;
}

Poly poly_from_json(const json& j, const FieldSpec& s) {
    std::vector<FieldElement> c;
    for (const json& e : j) c.push_back(element_from_json(e, s));
    return Poly(s, std::move(c));
}

json curve_to_json(const HyperellipticCurve& c) {
    json j = field_to_json(*c.spec);
    j["model"] = "hyperelliptic";
    j["f"] = poly_to_json(c.f);
    j["genus"] = c.genus;
    return j;
}

HyperellipticCurve curve_from_json(const json& j) {
    if (j.at("model").get<std::string>() != "hyperelliptic")
        throw std::invalid_argument("not a hyperelliptic curve record");
    const FieldSpec& s = field_from_json(j);
    HyperellipticCurve c = make_hyperelliptic(s, poly_from_json(j.at("f"), s));
    if (j.contains("genus") && j.at("genus").get<int>() != c.genus)
        throw std::invalid_argument("genus in record does not match the model");
    return c;
}

json as_cover_to_json(const ArtinSchreierCover& c) {
    json j = field_to_json(*c.spec);
    j["model"] = "artin-schreier";
    j["f"] = poly_to_json(c.f.num);
    if (!c.f.is_polynomial()) j["f_den"] = poly_to_json(c.f.den);
    j["genus"] = c.genus;
    return j;
}

ArtinSchreierCover as_cover_from_json(const json& j) {
    if (j.at("model").get<std::string>() != "artin-schreier")
        throw std::invalid_argument("not an artin-schreier record");
    const FieldSpec& s = field_from_json(j);
    Poly num = poly_from_json(j.at("f"), s);
    Poly den = j.contains("f_den") ? poly_from_json(j.at("f_den"), s) : Poly::one(s);
    ArtinSchreierCover c = make_artin_schreier(s, RationalFunction(std::move(num), std::move(den)));
    if (j.contains("genus") && j.at("genus").get<int>() != c.genus)
        throw std::invalid_argument("genus in record does not match the model");
    return c;
}

json prank_to_json(const PRankResult& r) {
    json j;
    j["genus"] = r.genus;
    j["p_rank"] = r.f;
    j["method"] = r.method;
    j["verified"] = r.verified;
    if (!r.rank_chain.empty()) j["rank_chain"] = r.rank_chain;
    if (!r.lpoly.empty()) j["l_polynomial"] = r.lpoly;
    return j;
}

json aut_to_json(const ReducedAutGroup& g) {
    json j;
    j["order"] = g.order();
    j["structure"] = g.structure.str();
    j["splitting_field"] = field_to_json(*g.field);
    json els = json::array();
    for (const MoebiusMap& m : g.elements) {
        json e = json::array();
        e.push_back(element_to_json(m.a()));
        e.push_back(element_to_json(m.b()));
        e.push_back(element_to_json(m.c()));
        e.push_back(element_to_json(m.d()));
        els.push_back(e);
    }
    j["elements"] = els;
    return j;
}

namespace {

json config_to_json(const SearchConfig& cfg) {
    json j;
    j["p"] = cfg.p;
    j["n_max"] = cfg.n_max;
    j["g"] = cfg.g;
    j["target_f"] = cfg.target_f;
    switch (cfg.aut) {
        case AutConstraint::trivial_reduced: j["aut_constraint"] = "trivial-reduced"; break;
        case AutConstraint::contains_order_ell:
            j["aut_constraint"] = "contains-order-ell";
            j["aut_ell"] = cfg.aut_ell;
            break;
        case AutConstraint::z4: j["aut_constraint"] = "z4"; break;
        case AutConstraint::any: j["aut_constraint"] = "any"; break;
    }
    j["sample_budget"] = cfg.sample_budget;
    j["master_seed"] = cfg.master_seed;
    return j;
}

SearchConfig config_from_json(const json& j) {
    SearchConfig cfg;
    cfg.p = j.at("p").get<u64>();
    cfg.n_max = j.at("n_max").get<unsigned>();
    cfg.g = j.at("g").get<int>();
    cfg.target_f = j.at("target_f").get<int>();
    std::string a = j.at("aut_constraint").get<std::string>();
    if (a == "trivial-reduced") cfg.aut = AutConstraint::trivial_reduced;
    else if (a == "contains-order-ell") {
        cfg.aut = AutConstraint::contains_order_ell;
        cfg.aut_ell = j.at("aut_ell").get<unsigned>();
    } else if (a == "z4") cfg.aut = AutConstraint::z4;
    else cfg.aut = AutConstraint::any;
    cfg.sample_budget = j.at("sample_budget").get<u64>();
    cfg.master_seed = j.at("master_seed").get<u64>();
    return cfg;
}

}  // namespace

json witness_to_json(const WitnessRecord& w) {
    json j;
    j["curve"] = curve_to_json(w.curve);
    j["p_rank"] = w.p_rank;
    j["prank"] = prank_to_json(w.prank_result);
    j["reduced_aut"] = aut_to_json(w.reduced);
    j["certificate"] = {{"prank_method", w.prank_result.method},
                        {"verification", w.verified ? "zeta-oracle" : "none"}};
    j["found"] = {{"level", w.found_level}, {"index", w.found_index}};
    j["config"] = config_to_json(w.config);
    return j;
}

WitnessRecord witness_from_json(const json& j) {
    HyperellipticCurve c = curve_from_json(j.at("curve"));
    WitnessRecord w{std::move(c), j.at("p_rank").get<int>(),  {},
                    ReducedAutGroup{nullptr, {}, {StructureTag::Kind::trivial, 1}},
                    j.at("certificate").at("verification").get<std::string>() != "none",
                    j.at("found").at("level").get<unsigned>(),
                    j.at("found").at("index").get<u64>(),
                    config_from_json(j.at("config"))};
    // reconstruct the stored group over its splitting field
    const json& ja = j.at("reduced_aut");
    const FieldSpec& L = field_from_json(ja.at("splitting_field"));
    std::vector<MoebiusMap> els;
    for (const json& e : ja.at("elements")) {
        els.push_back(MoebiusMap(element_from_json(e.at(0), L), element_from_json(e.at(1), L),
                                 element_from_json(e.at(2), L), element_from_json(e.at(3), L)));
    }
    ReducedAutGroup g{&L, std::move(els), {StructureTag::Kind::trivial, 1}};
    g.structure = structure_of(g.elements);  // derived data, recomputed
    w.reduced = std::move(g);
    PRankResult pr;
    pr.f = w.p_rank;
    pr.genus = w.curve.genus;
    pr.method = j.at("prank").at("method").get<std::string>();
    pr.verified = j.at("prank").at("verified").get<bool>();
    if (j.at("prank").contains("rank_chain"))
        pr.rank_chain = j.at("prank").at("rank_chain").get<std::vector<unsigned>>();
    if (j.at("prank").contains("l_polynomial"))
        pr.lpoly = j.at("prank").at("l_polynomial").get<std::vector<i64>>();
    w.prank_result = std::move(pr);
    return w;
}

json census_to_json(const CensusResult& c) {
    json j;
    j["config"] = {{"q", c.q},      {"g", c.g},
                   {"mode", c.exhaustive ? "exhaustive" : "sampled"},
                   {"sample_budget", c.sample_budget},
                   {"seed", c.seed}};
    j["total"] = c.total;
    json rows = json::array();
    for (const CensusRow& r : c.rows) {
        rows.push_back({{"q", r.q},
                        {"g", r.g},
                        {"p_rank", r.p_rank},
                        {"aut_order", r.aut_order},
                        {"count", r.count},
                        {"frequency_num", r.count},
                        {"frequency_den", c.total}});
    }
    j["rows"] = rows;
    return j;
}

std::string census_to_csv(const CensusResult& c) {
    std::ostringstream os;
    os << "# census\n";
    os << "# q=" << c.q << " g=" << c.g << " mode=" << (c.exhaustive ? "exhaustive" : "sampled")
       << " sample_budget=" << c.sample_budget << " seed=" << c.seed << " total=" << c.total << "\n";
    os << "q,g,p_rank,aut_order,count,frequency_num,frequency_den\n";
    for (const CensusRow& r : c.rows) {
        os << r.q << "," << r.g << "," << r.p_rank << "," << r.aut_order << "," << r.count << ","
           << r.count << "," << c.total << "\n";
    }
    return os.str();
}

CensusResult census_from_csv(const std::string& text) {
    CensusResult out{0, 0, 0, false, 0, 0, {}};
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string kv;
            while (ls >> kv) {
                auto eq = kv.find('=');
                if (eq == std::string::npos) continue;
                std::string k = kv.substr(0, eq), v = kv.substr(eq + 1);
                if (k == "q") out.q = std::stoull(v);
                else if (k == "g") out.g = std::stoi(v);
                else if (k == "mode") out.exhaustive = v == "exhaustive";
                else if (k == "sample_budget") out.sample_budget = std::stoull(v);
                else if (k == "seed") out.seed = std::stoull(v);
                else if (k == "total") out.total = std::stoull(v);
            }
            continue;
        }
        if (line.rfind("q,", 0) == 0) continue;  // header
        CensusRow r{0, 0, 0, 0, 0};
        u64 fnum = 0, fden = 0;
        char comma;
        std::istringstream ls(line);
        ls >> r.q >> comma >> r.g >> comma >> r.p_rank >> comma >> r.aut_order >> comma >> r.count >>
            comma >> fnum >> comma >> fden;
        out.rows.push_back(r);
    }
    return out;
}

namespace {

json cover_datum_to_json(const CoverDatum& d) {
    json j;
    j["ell"] = d.ell;
    j["g_Y"] = d.g_Y;
    j["f_Y"] = d.f_Y;
    j["branch_count"] = d.branch_count;
    if (!d.jumps.empty()) j["jumps"] = d.jumps;
    return j;
}

}  // namespace

json audit_to_json(const AuditReport& r) {
    json j;
    j["g"] = r.g;
    j["f"] = r.f;
    j["p"] = r.p;
    j["dim_M"] = r.dim_M_value;
    j["dim_H"] = r.dim_H_value;
    json cases = json::array();
    for (const AuditCase& c : r.cases) {
        json cj;
        cj["space"] = c.space;
        cj["ell"] = c.ell_label;
        cj["ell_value"] = c.ell_value;
        if (c.max_bound) cj["max_bound"] = *c.max_bound;
        else cj["max_bound"] = nullptr;
        cj["stratum_dim"] = c.stratum_dim;
        cj["verdict"] = c.max_bound ? verdict_str(c.verdict) : "strict";
        if (c.witness) cj["witness_datum"] = cover_datum_to_json(*c.witness);
        if (!c.note.empty()) cj["note"] = c.note;
        cases.push_back(cj);
    }
    j["cases"] = cases;
    if (!r.notes.empty()) j["notes"] = r.notes;
    return j;
}

std::string audit_to_table(const AuditReport& r) {
    std::ostringstream os;
    os << "audit g=" << r.g << " f=" << r.f << " p=" << r.p << "  dim M=" << r.dim_M_value
       << "  dim H=" << r.dim_H_value << "\n";
    os << "space  ell     bound  stratum  verdict\n";
    for (const AuditCase& c : r.cases) {
        os << "  " << c.space << "    " << c.ell_label;
        for (size_t i = c.ell_label.size(); i < 6; ++i) os << ' ';
        if (c.max_bound) os << *c.max_bound;
        else os << "-";
        os << "      " << c.stratum_dim << "        " << verdict_str(c.verdict);
        if (!c.note.empty()) os << "  (" << c.note << ")";
        os << "\n";
    }
    for (const std::string& n : r.notes) os << "note: " << n << "\n";
    return os.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace curvetk
