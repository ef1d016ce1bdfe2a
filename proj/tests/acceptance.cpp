// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Usage: acceptance [k]   (k = 1..10; no argument runs everything)

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <sstream>

#include "curvetk/io.hpp"

using namespace curvetk;

namespace {

using clock_t_ = std::chrono::steady_clock;

double seconds_since(clock_t_::time_point t0) {
    return std::chrono::duration<double>(clock_t_::now() - t0).count();
}

std::string g_outdir = "acceptance_out";

void ensure_outdir() { std::filesystem::create_directories(g_outdir); }

// ---------------------------------------------------------------- criterion 1
// Cartier-Manin stable rank == zeta-oracle p-rank on full sweeps of monic
// squarefree models: degree 3 and 5 over F_3, F_5, F_7; degree 3 over F_11
// and F_13.
bool criterion1(std::string& detail) {
    auto t0 = clock_t_::now();
    struct Sweep {
        u64 p;
        unsigned deg;
    };
    std::vector<Sweep> sweeps{{3, 3}, {3, 5}, {5, 3}, {5, 5}, {7, 3}, {7, 5}, {11, 3}, {13, 3}};
    std::atomic<u64> checked{0};
    std::atomic<u64> mismatches{0};
    for (const Sweep& s : sweeps) {
        const FieldSpec& K = FieldSpec::get(s.p, 1);
        u64 space = 1;
        for (unsigned i = 0; i < s.deg; ++i) space *= s.p;
        constexpr u64 kChunk = 512;
        u64 nchunks = (space + kChunk - 1) / kChunk;
        parallel_chunks(nchunks, default_worker_count(), [&](u64 chunk) {
            u64 lo = chunk * kChunk, hi = std::min(space, lo + kChunk);
            for (u64 idx = lo; idx < hi; ++idx) {
                u64 t = idx;
                std::vector<i64> cs;
                cs.reserve(s.deg + 1);
                for (unsigned k = 0; k < s.deg; ++k) {
                    cs.push_back(static_cast<i64>(t % s.p));
                    t /= s.p;
                }
                cs.push_back(1);
                Poly f = Poly::from_ints(K, cs);
                if (!f.squarefree()) continue;
                HyperellipticCurve c = make_hyperelliptic(K, f);
                int via_cartier = static_cast<int>(stable_rank(cartier_matrix(c)));
                int via_zeta = zeta_prank(c).f;
                ++checked;
                if (via_cartier != via_zeta) ++mismatches;
            }
        });
    }
    double el = seconds_since(t0);
    std::ostringstream os;
    os << checked.load() << " curves, " << mismatches.load() << " disagreements (" << el << "s)";
    detail = os.str();
    return mismatches.load() == 0 && el < 600.0;
}

// ---------------------------------------------------------------- criterion 2
// Elliptic sanity: for all y^2 = x^3 + ax + b over F_p, p in {3,5,7,11,13},
// p-rank 0 iff #E(F_p) = 1 mod p.
bool criterion2(std::string& detail) {
    auto t0 = clock_t_::now();
    u64 checked = 0, failures = 0;
    for (u64 p : {3, 5, 7, 11, 13}) {
        const FieldSpec& K = FieldSpec::get(p, 1);
        for (u64 a = 0; a < p; ++a) {
            for (u64 b = 0; b < p; ++b) {
                Poly f = Poly::from_ints(K, {static_cast<i64>(b), static_cast<i64>(a), 0, 1});
                if (!f.squarefree()) continue;
                HyperellipticCurve c = make_hyperelliptic(K, f);
                bool rank_zero = prank(c).f == 0;
                bool trace_zero = count_points(c, 1) % p == 1;
                ++checked;
                if (rank_zero != trace_zero) ++failures;
            }
        }
    }
    std::ostringstream os;
    os << checked << " curves, " << failures << " failures (" << seconds_since(t0) << "s)";
    detail = os.str();
    return failures == 0;
}

// ---------------------------------------------------------------- criterion 3
// Pinned table of dimension-formula values.
bool criterion3(std::string& detail) {
    auto t0 = clock_t_::now();
    unsigned failures = 0, checks = 0;
    auto expect = [&](bool ok) {
        ++checks;
        if (!ok) ++failures;
    };
    StratumDimResult h73 = dim_hyperell_order_p(7, 3);
    expect(!h73.empty() && *h73.dimension == 3);
    expect(dim_hyperell_order_ell(3, 5).empty());
    for (int g = 3; g <= 10; ++g) {
        StratumDimResult r = dim_hyperell_order_ell(g, 2);
        expect(!r.empty() && *r.dimension == g);
        expect(dim_H4iota(g) == g - 1);
    }
    expect(dim_M(3, 0) == 3);
    expect(dim_M(3, 3) == 6);
    expect(dim_M(4, 2) == 7);
    expect(dim_H(3, 0) == 2);
    expect(dim_H(4, 1) == 4);
    expect(cover_dim_bound(CoverDatum{2, 7, 4, 1, 1, 6, {}}) == 6);
    expect(cover_dim_bound(CoverDatum{3, 3, 4, 1, 1, 2, {1, 1}}) == 3);
    expect(cover_dim_bound(CoverDatum{3, 7, 4, 0, 0, 6, {}}) == 3);
    expect(local_def_dim(3, 1) == 1);
    expect(local_def_dim(3, 4) == 3);
    expect(local_def_dim(2, 5) == 3);
    StratumDimResult as2 = dim_AS(2, 3, 1);
    expect(!as2.empty() && *as2.dimension == 3);
    StratumDimResult as3 = dim_AS(3, 3, 0);
    expect(!as3.empty() && *as3.dimension == 2 && as3.is_upper_bound);
    expect(dim_AS(5, 3, 0).empty());
    StratumDimResult h37 = dim_hyperell_order_p(3, 7);
    expect(h37.empty() && h37.empty_reason == "negativity");
    expect(rh_check(CoverDatum{2, 7, 3, 1, 0, 4, {}}));
    expect(rh_check(CoverDatum{2, 2, 1, 0, 0, 1, {3}}));
    expect(!rh_check(CoverDatum{3, 7, 3, 1, 0, 1, {}}));
    expect(ds_check(2, 3, 1, 2));
    expect(ds_check(2, 0, 0, 1));
    expect(ds_check(3, 2, 0, 2));
    double el = seconds_since(t0);
    std::ostringstream os;
    os << checks << " pinned values, " << failures << " failures (" << el << "s)";
    detail = os.str();
    return failures == 0 && el < 1.0;
}

// ---------------------------------------------------------------- criterion 4
// theorem_audit reproduces the exceptional-case lists exactly for
// 3 <= g <= 8, 0 <= f <= g, p in {2,3,5,7}.
bool criterion4(std::string& detail) {
    auto t0 = clock_t_::now();
    u64 audits = 0, failures = 0;
    for (int g = 3; g <= 8; ++g) {
        for (int f = 0; f <= g; ++f) {
            for (u64 p : {2, 3, 5, 7}) {
                AuditReport rep = theorem_audit(g, f, p);
                ++audits;
                bool ok = true;
                bool m2_seen_nonstrict = false;
                for (const AuditCase& c : rep.cases) {
                    bool nonstrict = c.max_bound.has_value() && c.verdict != Verdict::strict;
                    if (c.space == "M") {
                        if (nonstrict) {
                            if (!(c.ell_label == "2" && p != 2 && f <= 1 && c.witness &&
                                  c.witness->g_Y == 1 && c.witness->f_Y == f))
                                ok = false;
                            m2_seen_nonstrict = true;
                        }
                    } else {
                        bool expected =
                            (c.ell_label == "2" && f <= 1) || (c.ell_label == "4iota" && f == 0);
                        if (nonstrict != expected) ok = false;
                    }
                }
                if (p != 2 && f <= 1 && !m2_seen_nonstrict) ok = false;
                if (!ok) ++failures;
            }
        }
    }
    double el = seconds_since(t0);
    std::ostringstream os;
    os << audits << " audits, " << failures << " list mismatches (" << el << "s)";
    detail = os.str();
    return failures == 0 && el < 60.0;
}

// ---------------------------------------------------------------- criterion 5
// z4 family: p in {3,7}, g in {2,3}, 100 sampled members over F_{p^3}: every
// member classifies z4; for g = 3 some member has positive p-rank.
bool criterion5(std::string& detail) {
    auto t0 = clock_t_::now();
    u64 members = 0, not_z4 = 0, missing_positive = 0;
    for (u64 p : {3, 7}) {
        const FieldSpec& K = FieldSpec::get(p, 3);
        for (int g : {2, 3}) {
            std::atomic<u64> bad{0};
            std::atomic<u64> pos{0};
            constexpr u64 kSamples = 100;
            parallel_chunks(kSamples, default_worker_count(), [&](u64 idx) {
                Rng rng(derive_seed(0x5a5a + p * 10 + static_cast<u64>(g), idx));
                std::vector<FieldElement> ls;
                for (unsigned attempt = 0;; ++attempt) {
                    if (attempt > 10000) throw std::runtime_error("no admissible tuple");
                    ls.clear();
                    for (int i = 0; i < g - 1; ++i) {
                        std::vector<u32> v(K.n());
                        K.element_from_index(rng.below(K.size()), v.data());
                        ls.emplace_back(K, std::move(v));
                    }
                    try {
                        HyperellipticCurve c = z4_family(Z4FamilyParams{&K, ls});
                        ReducedAutGroup gr = reduced_aut(c);
                        bool z4 = false;
                        for (const LiftClass& lc : classify_involutions(c, gr))
                            if (lc.tag == LiftTag::z4) z4 = true;
                        if (!z4) ++bad;
                        if (prank(c).f > 0) ++pos;
                        return;
                    } catch (const std::invalid_argument&) {
                        continue;  // inadmissible tuple, resample
                    }
                }
            });
            members += kSamples;
            not_z4 += bad.load();
            if (g == 3 && pos.load() == 0) ++missing_positive;
        }
    }
    double el = seconds_since(t0);
    std::ostringstream os;
    os << members << " members, " << not_z4 << " without a z4 class, " << missing_positive
       << " genus-3 families without positive p-rank (" << el << "s)";
    detail = os.str();
    return not_z4 == 0 && missing_positive == 0;
}

// ---------------------------------------------------------------- criterion 6
// Fiber-product p-rank additivity on >= 50 desk instances at p = 3, total
// genus <= 4, by direct point counting on the two-equation model.
bool criterion6(std::string& detail) {
    auto t0 = clock_t_::now();
    const FieldSpec& f3 = FieldSpec::get(3, 1);
    u64 instances = 0, failures = 0, g3zero = 0;
    // pairs of distinct monic squarefree cubics over F_3 (total genus <= 4)
    std::vector<Poly> cubics;
    for (u64 idx = 0; idx < 27; ++idx) {
        u64 t = idx;
        std::vector<i64> cs;
        for (int k = 0; k < 3; ++k) {
            cs.push_back(static_cast<i64>(t % 3));
            t /= 3;
        }
        cs.push_back(1);
        Poly f = Poly::from_ints(f3, cs);
        if (f.squarefree()) cubics.push_back(f);
    }
    for (size_t i = 0; i < cubics.size() && instances < 44; ++i) {
        for (size_t j = i + 1; j < cubics.size() && instances < 44; ++j) {
            KleinFourCover kc = fiber_product(cubics[i], cubics[j], f3);
            if (kc.total_genus > 4) continue;
            PRankResult direct = fiber_prank_by_counting(kc);
            ++instances;
            if (kc.g3 == 0) ++g3zero;
            if (direct.f != kc.predicted_prank) ++failures;
        }
    }
    // odd-mode instances (the genus-parity case with genus-0 third quotient)
    for (size_t i = 0; i < cubics.size() && instances < 52; ++i) {
        for (u64 q = 0; q < 9 && instances < 52; ++q) {
            Poly quad = Poly::from_ints(f3, {static_cast<i64>(q % 3), static_cast<i64>(q / 3), 1});
            Poly f1 = cubics[i] * quad;
            if (!f1.squarefree()) continue;
            KleinFourCover kc = fiber_product(f1, cubics[i], f3, FiberMode::odd_mode);
            if (kc.total_genus > 4) continue;
            PRankResult direct = fiber_prank_by_counting(kc);
            ++instances;
            ++g3zero;
            if (direct.f != kc.predicted_prank) ++failures;
        }
    }
    // even-mode instances over F_9 (still p = 3)
    const FieldSpec& f9 = FieldSpec::get(3, 2);
    const Embedding& e = f3.embed_into(f9);
    for (size_t i = 0; i < cubics.size() && instances < 58; ++i) {
        Poly base = cubics[i].lift(e);
        FieldElement r = FieldElement::generator(f9);
        Poly other = base * Poly(f9, {-r, FieldElement::from_int(f9, 1)});
        if (!other.squarefree()) continue;
        KleinFourCover kc = fiber_product(base, other, f9, FiberMode::even_mode);
        PRankResult direct = fiber_prank_by_counting(kc);
        ++instances;
        ++g3zero;
        if (direct.f != kc.predicted_prank) ++failures;
    }
    double el = seconds_since(t0);
    std::ostringstream os;
    os << instances << " instances (" << g3zero << " with genus-0 third quotient), " << failures
       << " additivity failures (" << el << "s)";
    detail = os.str();
    return instances >= 50 && failures == 0;
}

// ---------------------------------------------------------------- criterion 7
// Witness search: p in {3,5}, g = 3, every f in {0,1,2,3} yields a verified
// record within n_max = 4 and budget 1e6.
bool run_criterion7(unsigned workers, const std::string& suffix, std::string& detail) {
    auto t0 = clock_t_::now();
    ensure_outdir();
    unsigned failures = 0;
    for (u64 p : {3, 5}) {
        for (int f = 0; f <= 3; ++f) {
            SearchConfig cfg;
            cfg.p = p;
            cfg.n_max = 4;
            cfg.g = 3;
            cfg.target_f = f;
            cfg.aut = AutConstraint::trivial_reduced;
            cfg.sample_budget = 1000000;
            cfg.master_seed = 42;
            cfg.workers = workers;
            SearchOutcome o = find_witness(cfg);
            bool ok = o.witness.has_value();
            if (ok) {
                const WitnessRecord& w = *o.witness;
                ok = w.p_rank == f && w.reduced.order() == 1 && w.verified && verify_witness(w);
                std::ostringstream name;
                name << g_outdir << "/witness_p" << p << "_f" << f << suffix << ".json";
                write_file(name.str(), witness_to_json(w).dump(2) + "\n");
            }
            if (!ok) ++failures;
        }
    }
    double el = seconds_since(t0);
    std::ostringstream os;
    os << "8 configurations, " << failures << " failures (" << el << "s)";
    detail = os.str();
    return failures == 0;
}

bool criterion7(std::string& detail) { return run_criterion7(2, "", detail); }

// ---------------------------------------------------------------- criterion 8
// Codimension slopes from genus-2 censuses at q = 3, 9 (exhaustive) and
// q = 27 (1e5 samples): estimated codim within [1.5, 2.5] for f = 0 and
// [0.5, 1.5] for f = 1.
bool run_criterion8(unsigned workers, const std::string& suffix, std::string& detail,
                    bool check_slopes = true) {
    auto t0 = clock_t_::now();
    ensure_outdir();
    const FieldSpec& f3 = FieldSpec::get(3, 1);
    const FieldSpec& f9 = FieldSpec::get(3, 2);
    const FieldSpec& f27 = FieldSpec::get(3, 3);
    CensusResult c3 = census(2, f3, true, 0, 0, workers);
    CensusResult c9 = census(2, f9, true, 0, 0, workers);
    CensusResult c27 = census(2, f27, false, 100000, 20240809, workers);
    write_file(g_outdir + "/census_q3" + suffix + ".csv", census_to_csv(c3));
    write_file(g_outdir + "/census_q9" + suffix + ".csv", census_to_csv(c9));
    write_file(g_outdir + "/census_q27" + suffix + ".csv", census_to_csv(c27));
    SlopeFit s0 = slope_fit({c3, c9, c27}, 0);
    SlopeFit s1 = slope_fit({c3, c9, c27}, 1);
    double el = seconds_since(t0);
    std::ostringstream os;
    os << "codim(f=0) = " << (s0.ok ? s0.estimated_codimension : -1) << ", codim(f=1) = "
       << (s1.ok ? s1.estimated_codimension : -1) << " (" << el << "s)";
    detail = os.str();
    if (!check_slopes) return true;
    return s0.ok && s1.ok && s0.estimated_codimension >= 1.5 && s0.estimated_codimension <= 2.5 &&
           s1.estimated_codimension >= 0.5 && s1.estimated_codimension <= 1.5;
}

bool criterion8(std::string& detail) { return run_criterion8(2, "", detail); }

// ---------------------------------------------------------------- criterion 9
// 1e4 random genus-3 curves over F_27: no reduced automorphism of order 3
// (the order-p locus is empty by the divisibility condition).
bool run_criterion9(unsigned workers, const std::string& suffix, std::string& detail) {
    auto t0 = clock_t_::now();
    ensure_outdir();
    const FieldSpec& f27 = FieldSpec::get(3, 3);
    CensusResult c = census(3, f27, false, 10000, 8675309, workers);
    write_file(g_outdir + "/census_g3_q27" + suffix + ".csv", census_to_csv(c));
    u64 order_div_p = 0;
    for (const CensusRow& r : c.rows)
        if (r.aut_order % 3 == 0) order_div_p += r.count;
    double el = seconds_since(t0);
    std::ostringstream os;
    os << c.total << " curves, " << order_div_p << " with reduced order divisible by 3 (" << el
       << "s)";
    detail = os.str();
    return c.total == 10000 && order_div_p == 0;
}

bool criterion9(std::string& detail) { return run_criterion9(2, "", detail); }

// --------------------------------------------------------------- criterion 10
// Re-running criteria 7-9 with different worker counts produces byte-identical
// output files.
bool criterion10(std::string& detail) {
    auto t0 = clock_t_::now();
    std::string d7a, d7b, d8a, d8b, d9a, d9b;
    run_criterion7(2, "_w2", d7a);
    run_criterion7(3, "_w3", d7b);
    run_criterion8(2, "_w2", d8a, /*check_slopes=*/false);
    run_criterion8(3, "_w3", d8b, /*check_slopes=*/false);
    run_criterion9(2, "_w2", d9a);
    run_criterion9(3, "_w3", d9b);
    unsigned failures = 0, compared = 0;
    auto compare = [&](const std::string& a, const std::string& b) {
        ++compared;
        if (read_file(g_outdir + "/" + a) != read_file(g_outdir + "/" + b)) ++failures;
    };
    for (u64 p : {3, 5}) {
        for (int f = 0; f <= 3; ++f) {
            std::ostringstream a, b;
            a << "witness_p" << p << "_f" << f << "_w2.json";
            b << "witness_p" << p << "_f" << f << "_w3.json";
            compare(a.str(), b.str());
        }
    }
    compare("census_q3_w2.csv", "census_q3_w3.csv");
    compare("census_q9_w2.csv", "census_q9_w3.csv");
    compare("census_q27_w2.csv", "census_q27_w3.csv");
    compare("census_g3_q27_w2.csv", "census_g3_q27_w3.csv");
    double el = seconds_since(t0);
    std::ostringstream os;
    os << compared << " file pairs, " << failures << " byte differences (" << el << "s)";
    detail = os.str();
    return failures == 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::pair<int, std::function<bool(std::string&)>>> criteria = {
        {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
        {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10},
    };
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    if (const char* env = std::getenv("ACCEPTANCE_OUTDIR")) g_outdir = env;
    bool all_ok = true;
    for (auto& [k, fn] : criteria) {
        if (only && k != only) continue;
        std::string detail;
        bool ok = false;
        try {
            ok = fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("CRITERION %2d %s  %s\n", k, ok ? "PASS" : "FAIL", detail.c_str());
        std::fflush(stdout);
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
