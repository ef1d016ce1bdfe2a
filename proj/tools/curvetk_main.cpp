// curvetk: p-ranks, automorphism groups, curve families, moduli-dimension
// formulas and searches over finite fields. See README.md for examples.

#include <CLI11.hpp>
#include <iostream>

#include "curvetk/io.hpp"

using namespace curvetk;

namespace {

constexpr int kExitInvalidConfig = 2;
constexpr int kExitExhausted = 3;

const FieldSpec& field_of(u64 p, unsigned n) { return FieldSpec::get(p, n); }

std::vector<i64> parse_int_list(const std::string& s) {
    std::vector<i64> out;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        if (!tok.empty()) out.push_back(std::stoll(tok));
    }
    return out;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int run_prank(u64 p, unsigned n, const std::string& ftext, const std::string& fden,
              const std::string& model, bool no_verify) {
    const FieldSpec& K = field_of(p, n);
    PRankResult r;
    json rec;
    if (model == "artin-schreier" || p == 2) {
        Poly num = Poly::parse(K, ftext);
        Poly den = fden.empty() ? Poly::one(K) : Poly::parse(K, fden);
        ArtinSchreierCover c = make_artin_schreier(K, RationalFunction(num, den));
        r = prank(c, !no_verify);
        rec = as_cover_to_json(c);
    } else {
        HyperellipticCurve c = make_hyperelliptic(K, Poly::parse(K, ftext));
        r = prank(c, !no_verify);
        rec = curve_to_json(c);
    }
    json out = prank_to_json(r);
    out["curve"] = rec;
    emit(out);
    return 0;
}

int run_aut(u64 p, unsigned n, const std::string& ftext) {
    const FieldSpec& K = field_of(p, n);
    HyperellipticCurve c = make_hyperelliptic(K, Poly::parse(K, ftext));
    ReducedAutGroup g = reduced_aut(c);
    json out;
    out["curve"] = curve_to_json(c);
    out["reduced_order"] = g.order();
    out["structure"] = g.structure.str();
    out["full_aut_order"] = full_aut_order(g);
    json classes = json::array();
    for (const LiftClass& lc : classify_involutions(c, g)) {
        json cj;
        cj["map"] = lc.map.str();
        cj["order"] = lc.order;
        cj["class"] = lc.tag == LiftTag::z4 ? "z4" : (lc.tag == LiftTag::klein4 ? "klein4" : "wild");
        classes.push_back(cj);
    }
    out["involution_classes"] = classes;
    out["splitting_field"] = field_to_json(*g.field);
    emit(out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curve toolkit: p-ranks, automorphism groups and moduli dimensions over finite fields"};
    app.require_subcommand(1);

    // ---- prank ----
    u64 p = 3;
    unsigned n = 1;
    std::string ftext, fden, model = "hyperelliptic";
    bool no_verify = false;
    auto* sp = app.add_subcommand("prank", "p-rank of a curve");
    sp->add_option("--p", p, "characteristic")->required();
    sp->add_option("--n", n, "base field extension degree");
    sp->add_option("--f", ftext, "defining polynomial / function")->required();
    sp->add_option("--f-den", fden, "denominator (artin-schreier)");
    sp->add_option("--model", model, "hyperelliptic | artin-schreier");
    sp->add_flag("--no-verify", no_verify, "skip the zeta-oracle cross-check");

    // ---- aut ----
    auto* sa = app.add_subcommand("aut", "reduced automorphism group of a hyperelliptic curve");
    sa->add_option("--p", p, "characteristic")->required();
    sa->add_option("--n", n, "base field extension degree");
    sa->add_option("--f", ftext, "defining polynomial")->required();

    // ---- construct ----
    auto* sc = app.add_subcommand("construct", "explicit curve families");
    sc->require_subcommand(1);
    int cg = 3;
    std::string lambdas, f1text, f2text, fibmode = "free", jumps;
    auto* scz = sc->add_subcommand("z4", "member of the order-4 family");
    scz->add_option("--p", p, "characteristic")->required();
    scz->add_option("--n", n, "base field extension degree");
    scz->add_option("--g", cg, "genus");
    scz->add_option("--lambdas", lambdas, "comma-separated lambda values")->required();
    auto* scf = sc->add_subcommand("fiber", "Klein-four fiber product");
    scf->add_option("--p", p, "characteristic")->required();
    scf->add_option("--n", n, "base field extension degree");
    scf->add_option("--f1", f1text, "first polynomial")->required();
    scf->add_option("--f2", f2text, "second polynomial")->required();
    scf->add_option("--mode", fibmode, "even | odd | free");
    auto* sca = sc->add_subcommand("as", "Artin-Schreier cover with prescribed jumps");
    sca->add_option("--p", p, "characteristic")->required();
    sca->add_option("--n", n, "base field extension degree");
    sca->add_option("--jumps", jumps, "place:jump pairs, e.g. inf:1,0:2")->required();

    // ---- dims ----
    auto* sd = app.add_subcommand("dims", "moduli dimension formulas");
    sd->require_subcommand(1);
    int dg = 3, df = 0, dgy = 0, dfy = 0, dbranch = -1;
    u64 dell = 2, dp = 3;
    std::string djumps, format = "json";
    auto* sdm = sd->add_subcommand("M", "p-rank stratum of the full moduli space");
    sdm->add_option("--g", dg)->required();
    sdm->add_option("--f", df)->required();
    auto* sdh = sd->add_subcommand("H", "hyperelliptic p-rank stratum");
    sdh->add_option("--g", dg)->required();
    sdh->add_option("--f", df)->required();
    auto* sdp = sd->add_subcommand("order-p", "hyperelliptic locus with an order-p automorphism");
    sdp->add_option("--g", dg)->required();
    sdp->add_option("--p", dp)->required();
    auto* sde = sd->add_subcommand("order-ell", "hyperelliptic locus with an order-ell automorphism");
    sde->add_option("--g", dg)->required();
    sde->add_option("--ell", dell)->required();
    auto* sd4 = sd->add_subcommand("h4iota", "order-4 squaring to the involution");
    sd4->add_option("--g", dg)->required();
    auto* sdas = sd->add_subcommand("as", "Artin-Schreier locus");
    sdas->add_option("--p", dp)->required();
    sdas->add_option("--g", dg)->required();
    sdas->add_option("--f", df)->required();
    auto* sdl = sd->add_subcommand("cover-bound", "cover-datum dimension bound");
    sdl->add_option("--ell", dell)->required();
    sdl->add_option("--p", dp)->required();
    sdl->add_option("--g", dg)->required();
    sdl->add_option("--gy", dgy)->required();
    sdl->add_option("--fy", dfy)->required();
    sdl->add_option("--jumps", djumps, "comma-separated jumps (wild case)");
    sdl->add_option("--branch", dbranch, "branch count");
    auto* sdr = sd->add_subcommand("rh", "Riemann-Hurwitz consistency check");
    sdr->add_option("--ell", dell)->required();
    sdr->add_option("--p", dp)->required();
    sdr->add_option("--g", dg)->required();
    sdr->add_option("--gy", dgy)->required();
    sdr->add_option("--branch", dbranch);
    sdr->add_option("--jumps", djumps);
    auto* sdd = sd->add_subcommand("ds", "Deuring-Shafarevich consistency check");
    sdd->add_option("--p", dp)->required();
    sdd->add_option("--f", df)->required();
    sdd->add_option("--fy", dfy)->required();
    sdd->add_option("--branch", dbranch)->required();
    auto* sdaud = sd->add_subcommand("audit", "replay the dimension-comparison case analysis");
    sdaud->add_option("--g", dg)->required();
    sdaud->add_option("--f", df)->required();
    sdaud->add_option("--p", dp)->required();
    sdaud->add_option("--format", format, "json | table");

    // ---- search ----
    auto* ss = app.add_subcommand("search", "witness search for prescribed (g, f, Aut)");
    SearchConfig cfg;
    std::string autc = "trivial", out_path;
    unsigned ell = 0, workers = 0;
    ss->add_option("--p", cfg.p, "characteristic")->required();
    ss->add_option("--g", cfg.g, "genus")->required();
    ss->add_option("--f", cfg.target_f, "target p-rank (-1 = any)")->required();
    ss->add_option("--nmax", cfg.n_max, "largest extension degree to search");
    ss->add_option("--budget", cfg.sample_budget, "samples per extension level")->required();
    ss->add_option("--seed", cfg.master_seed, "master seed");
    ss->add_option("--aut", autc, "trivial | any | z4 | order-ell");
    ss->add_option("--ell", ell, "order for the order-ell constraint");
    ss->add_option("--workers", workers, "worker threads (default: CURVETK_WORKERS or hardware)");
    ss->add_option("--out", out_path, "write the witness record to this file");

    // ---- census ----
    auto* scen = app.add_subcommand("census", "joint (p-rank, aut order) counts over curve models");
    bool exhaustive = false;
    u64 budget = 0, seed = 0;
    std::string cen_out, cen_format = "csv";
    scen->add_option("--p", p, "characteristic")->required();
    scen->add_option("--n", n, "base field extension degree");
    scen->add_option("--g", cg, "genus")->required();
    scen->add_flag("--exhaustive", exhaustive, "enumerate the full model space");
    scen->add_option("--budget", budget, "number of samples (sampled mode)");
    scen->add_option("--seed", seed, "sampling seed");
    scen->add_option("--workers", workers, "worker threads");
    scen->add_option("--out", cen_out, "output file");
    scen->add_option("--format", cen_format, "csv | json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInvalidConfig;
    }

    try {
        if (sp->parsed()) return run_prank(p, n, ftext, fden, model, no_verify);
        if (sa->parsed()) return run_aut(p, n, ftext);
        if (scz->parsed()) {
            const FieldSpec& K = field_of(p, n);
            std::vector<FieldElement> ls;
            for (i64 v : parse_int_list(lambdas)) ls.push_back(FieldElement::from_int(K, v));
            if (scz->count("--g") && cg != static_cast<int>(ls.size()) + 1)
                throw std::invalid_argument("genus must equal (number of lambdas) + 1");
            HyperellipticCurve c = z4_family(Z4FamilyParams{&K, ls});
            json out;
            out["curve"] = curve_to_json(c);
            out["p_rank"] = prank(c).f;
            ReducedAutGroup g = reduced_aut(c);
            out["reduced_order"] = g.order();
            out["structure"] = g.structure.str();
            emit(out);
            return 0;
        }
        if (scf->parsed()) {
            const FieldSpec& K = field_of(p, n);
            FiberMode mode = fibmode == "even"   ? FiberMode::even_mode
                             : fibmode == "odd"  ? FiberMode::odd_mode
                                                 : FiberMode::free_mode;
            KleinFourCover kc = fiber_product(Poly::parse(K, f1text), Poly::parse(K, f2text), K, mode);
            json out;
            out["c1"] = curve_to_json(kc.c1);
            out["c2"] = curve_to_json(kc.c2);
            if (kc.c3) out["c3"] = curve_to_json(*kc.c3);
            out["g3"] = kc.g3;
            out["total_genus"] = kc.total_genus;
            out["predicted_prank"] = kc.predicted_prank;
            if (kc.total_genus <= 4) {
                PRankResult direct = fiber_prank_by_counting(kc);
                out["counted_prank"] = direct.f;
                out["additivity_verified"] = direct.f == kc.predicted_prank;
            }
            emit(out);
            return 0;
        }
        if (sca->parsed()) {
            const FieldSpec& K = field_of(p, n);
            std::vector<JumpSpec> js;
            std::istringstream is(jumps);
            std::string tok;
            while (std::getline(is, tok, ',')) {
                auto colon = tok.find(':');
                if (colon == std::string::npos) throw std::invalid_argument("jumps: expected place:jump");
                std::string place = tok.substr(0, colon);
                unsigned jump = static_cast<unsigned>(std::stoul(tok.substr(colon + 1)));
                if (place == "inf") js.push_back(JumpSpec{true, FieldElement(K), jump});
                else js.push_back(JumpSpec{false, FieldElement::from_int(K, std::stoll(place)), jump});
            }
            ArtinSchreierCover c = as_construct(K, js);
            json out = as_cover_to_json(c);
            out["p_rank"] = as_prank(c);
            json bd = json::array();
            for (const RamificationDatum& d : c.branch_data) {
                json dj;
                dj["place"] = d.at_infinity ? json("inf") : element_to_json(d.place);
                dj["jump"] = d.jump;
                bd.push_back(dj);
            }
            out["branch_data"] = bd;
            out["branch_field"] = field_to_json(*c.branch_field);
            emit(out);
            return 0;
        }
        if (sdm->parsed()) {
            emit({{"formula", "dim_M"}, {"g", dg}, {"f", df}, {"dimension", dim_M(dg, df)}});
            return 0;
        }
        if (sdh->parsed()) {
            emit({{"formula", "dim_H"}, {"g", dg}, {"f", df}, {"dimension", dim_H(dg, df)}});
            return 0;
        }
        if (sdp->parsed()) {
            StratumDimResult r = dim_hyperell_order_p(dg, dp);
            json out{{"formula", "dim_hyperell_order_p"}, {"g", dg}, {"p", dp}};
            out["dimension"] = r.empty() ? json(nullptr) : json(*r.dimension);
            if (r.empty()) out["empty_reason"] = r.empty_reason;
            emit(out);
            return 0;
        }
        if (sde->parsed()) {
            StratumDimResult r = dim_hyperell_order_ell(dg, dell);
            json out{{"formula", "dim_hyperell_order_ell"}, {"g", dg}, {"ell", dell}};
            out["dimension"] = r.empty() ? json(nullptr) : json(*r.dimension);
            if (!r.empty()) {
                out["chosen_i"] = r.chosen_i;
                out["valid_i"] = r.valid_i;
            } else {
                out["empty_reason"] = r.empty_reason;
            }
            emit(out);
            return 0;
        }
        if (sd4->parsed()) {
            emit({{"formula", "dim_H4iota"}, {"g", dg}, {"dimension", dim_H4iota(dg)}});
            return 0;
        }
        if (sdas->parsed()) {
            StratumDimResult r = dim_AS(dp, dg, df);
            json out{{"formula", "dim_AS"}, {"p", dp}, {"g", dg}, {"f", df}};
            out["dimension"] = r.empty() ? json(nullptr) : json(*r.dimension);
            out["is_upper_bound"] = r.is_upper_bound;
            if (r.empty()) out["empty_reason"] = r.empty_reason;
            emit(out);
            return 0;
        }
        if (sdl->parsed() || sdr->parsed()) {
            std::vector<unsigned> js;
            for (i64 v : parse_int_list(djumps)) js.push_back(static_cast<unsigned>(v));
            int branch = dbranch >= 0 ? dbranch : static_cast<int>(js.size());
            CoverDatum d{dell, dp, dg, dgy, dfy, branch, js};
            if (sdl->parsed()) {
                emit({{"formula", "cover_dim_bound"}, {"bound", cover_dim_bound(d)}});
            } else {
                emit({{"formula", "rh_check"}, {"consistent", rh_check(d)}});
            }
            return 0;
        }
        if (sdd->parsed()) {
            emit({{"formula", "ds_check"}, {"consistent", ds_check(dp, df, dfy, dbranch)}});
            return 0;
        }
        if (sdaud->parsed()) {
            AuditReport rep = theorem_audit(dg, df, dp);
            if (format == "table") std::cout << audit_to_table(rep);
            else emit(audit_to_json(rep));
            return 0;
        }
        if (ss->parsed()) {
            if (autc == "trivial") cfg.aut = AutConstraint::trivial_reduced;
            else if (autc == "any") cfg.aut = AutConstraint::any;
            else if (autc == "z4") cfg.aut = AutConstraint::z4;
            else if (autc == "order-ell") {
                cfg.aut = AutConstraint::contains_order_ell;
                cfg.aut_ell = ell;
            } else throw std::invalid_argument("unknown aut constraint: " + autc);
            cfg.workers = workers;
            SearchOutcome o = find_witness(cfg);
            if (!o.witness) {
                json out{{"outcome", "exhausted"},
                         {"note", "budget spent without a witness; not a disproof"}};
                emit(out);
                return kExitExhausted;
            }
            json out = witness_to_json(*o.witness);
            if (!out_path.empty()) write_file(out_path, out.dump(2) + "\n");
            emit(out);
            return 0;
        }
        if (scen->parsed()) {
            const FieldSpec& K = field_of(p, n);
            if (!exhaustive && budget == 0)
                throw std::invalid_argument("choose --exhaustive or a positive --budget");
            CensusResult c = census(cg, K, exhaustive, budget, seed, workers);
            std::string payload =
                cen_format == "json" ? census_to_json(c).dump(2) + "\n" : census_to_csv(c);
            if (!cen_out.empty()) write_file(cen_out, payload);
            std::cout << payload;
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitInvalidConfig;
}
