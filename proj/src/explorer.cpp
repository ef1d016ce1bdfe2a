#include "curvetk/explorer.hpp"

#include <algorithm>
#include <atomic>
#include <memory>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace curvetk {

HyperellipticCurve random_curve(int g, const FieldSpec& s, Rng& rng) {
    if (s.p() < 3) throw std::invalid_argument("random hyperelliptic curves require p >= 3");
    if (g < 1) throw std::invalid_argument("genus must be positive");
    unsigned deg = 2 * static_cast<unsigned>(g) + 1;
    for (unsigned attempt = 0; attempt < 100000; ++attempt) {
        Poly f = Poly::random_monic(s, deg, rng);
        if (f.squarefree()) return HyperellipticCurve{&s, f, g};
    }
    throw std::runtime_error("rejection sampling budget exhausted");
}

namespace {

bool aut_ok(const SearchConfig& cfg, const HyperellipticCurve& c, ReducedAutGroup& group_out) {
    BranchLocus locus = branch_locus(c);
    ReducedAutGroup g = stabilizer_of(locus);
    bool ok = false;
    switch (cfg.aut) {
        case AutConstraint::trivial_reduced:
            ok = g.order() == 1;
            break;
        case AutConstraint::any:
            ok = true;
            break;
        case AutConstraint::contains_order_ell: {
            for (const MoebiusMap& m : g.elements) {
                if (!m.is_identity() && element_order(m) == cfg.aut_ell) {
                    ok = true;
                    break;
                }
            }
            break;
        }
        case AutConstraint::z4: {
            for (const MoebiusMap& m : g.elements) {
                if (m.is_identity() || element_order(m) != 2) continue;
                unsigned fixed = 0;
                for (const ProjPoint& pt : locus.points)
                    if (m.apply(pt) == pt) ++fixed;
                if (fixed == 2) {
                    ok = true;
                    break;
                }
            }
            break;
        }
    }
    if (ok) group_out = std::move(g);
    return ok;
}

constexpr u64 kSearchChunk = 256;

}  // namespace

SearchOutcome find_witness(const SearchConfig& cfg) {
    if (cfg.g < 2) throw std::invalid_argument("witness search requires genus >= 2");
    if (cfg.target_f > cfg.g) throw std::invalid_argument("p-rank cannot exceed the genus");
    if (cfg.n_max < 1) throw std::invalid_argument("n_max must be positive");
    if (cfg.sample_budget == 0) throw std::invalid_argument("sample budget must be positive");
    if (cfg.aut == AutConstraint::contains_order_ell && cfg.aut_ell < 2)
        throw std::invalid_argument("order constraint needs ell >= 2");
    unsigned workers = cfg.workers ? cfg.workers : default_worker_count();
    for (unsigned level = 1; level <= cfg.n_max; ++level) {
        const FieldSpec& K = FieldSpec::get(cfg.p, level);
        u64 level_seed = derive_seed(cfg.master_seed, level);
        u64 nchunks = (cfg.sample_budget + kSearchChunk - 1) / kSearchChunk;
        std::vector<std::optional<u64>> chunk_hit(nchunks);
        std::mutex keep_mu;
        std::map<u64, HyperellipticCurve> kept;
        // On tiny fields the budget revisits the same few models thousands of
        // times; memoize verdicts by model index. Entries are exact, so racy
        // duplicate computation is harmless and results stay worker-count
        // independent.
        u64 space = 0;
        unsigned deg = 2 * static_cast<unsigned>(cfg.g) + 1;
        if (K.size_fits_u64()) {
            long double sp = 1;
            for (unsigned i = 0; i < deg; ++i) sp *= static_cast<long double>(K.size());
            if (sp <= 200000.0L) {
                space = 1;
                for (unsigned i = 0; i < deg; ++i) space *= K.size();
            }
        }
        std::unique_ptr<std::atomic<signed char>[]> memo;
        if (space) {
            memo = std::make_unique<std::atomic<signed char>[]>(space);
            for (u64 i = 0; i < space; ++i) memo[i].store(-1, std::memory_order_relaxed);
        }
        auto model_index = [&](const Poly& f) -> u64 {
            u64 idx = 0;
            for (unsigned k = deg; k-- > 0;) idx = idx * K.size() + f.coeff(static_cast<int>(k)).index();
            return idx;
        };
        auto body = [&](u64 chunk) -> bool {
            u64 lo = chunk * kSearchChunk;
            u64 hi = std::min(cfg.sample_budget, lo + kSearchChunk);
            for (u64 i = lo; i < hi; ++i) {
                Rng rng(derive_seed(level_seed, i));
                HyperellipticCurve c = random_curve(cfg.g, K, rng);
                bool ok;
                if (memo) {
                    u64 mi = model_index(c.f);
                    signed char v = memo[mi].load(std::memory_order_relaxed);
                    if (v < 0) {
                        PRankResult pr = prank(c);
                        ReducedAutGroup g{&K, {}, {StructureTag::Kind::trivial, 1}};
                        ok = (cfg.target_f < 0 || pr.f == cfg.target_f) && aut_ok(cfg, c, g);
                        memo[mi].store(ok ? 1 : 0, std::memory_order_relaxed);
                    } else {
                        ok = v > 0;
                    }
                } else {
                    PRankResult pr = prank(c);
                    if (cfg.target_f >= 0 && pr.f != cfg.target_f) {
                        ok = false;
                    } else {
                        ReducedAutGroup g{&K, {}, {StructureTag::Kind::trivial, 1}};
                        ok = aut_ok(cfg, c, g);
                    }
                }
                if (!ok) continue;
                chunk_hit[chunk] = i;
                std::lock_guard<std::mutex> lock(keep_mu);
                kept.emplace(i, std::move(c));
                return true;
            }
            return false;
        };
        u64 hit_chunk = parallel_chunks_until(nchunks, workers, body);
        if (hit_chunk < nchunks) {
            u64 index = *chunk_hit[hit_chunk];
            HyperellipticCurve curve = std::move(kept.find(index)->second);
            ReducedAutGroup group = stabilizer_of(branch_locus(curve));
            WitnessRecord w{std::move(curve), 0, {}, std::move(group), false, level, index, cfg};
            bool verified = true;
            PRankResult pr;
            try {
                pr = prank(w.curve, /*verify=*/true);
            } catch (const std::domain_error&) {
                pr = prank(w.curve, /*verify=*/false);  // oracle out of envelope
                verified = false;
            }
            w.p_rank = pr.f;
            w.prank_result = std::move(pr);
            w.verified = verified && w.prank_result.verified;
            return SearchOutcome{std::move(w)};
        }
    }
    return SearchOutcome{std::nullopt};
}

bool verify_witness(const WitnessRecord& w) {
    PRankResult pr;
    try {
        pr = prank(w.curve, /*verify=*/true);
    } catch (const std::domain_error&) {
        return false;
    } catch (const std::runtime_error&) {
        return false;
    }
    if (pr.f != w.p_rank) return false;
    ReducedAutGroup g = reduced_aut(w.curve);
    if (g.field != w.reduced.field) return false;
    if (g.elements.size() != w.reduced.elements.size()) return false;
    for (size_t i = 0; i < g.elements.size(); ++i)
        if (!(g.elements[i] == w.reduced.elements[i])) return false;
    return true;
}

// ----- census -----------------------------------------------------------------

CensusResult census(int g, const FieldSpec& s, bool exhaustive, u64 sample_budget, u64 seed,
                    unsigned workers) {
    if (g < 2) throw std::invalid_argument("census requires genus >= 2");
    if (s.p() < 3) throw std::invalid_argument("census requires p >= 3");
    if (!workers) workers = default_worker_count();
    u64 q = s.size();
    unsigned deg = 2 * static_cast<unsigned>(g) + 1;
    u64 space = 0;
    if (exhaustive) {
        // envelope: q^(2g+2) <= 1e8
        long double env = 1;
        for (unsigned i = 0; i < deg + 1; ++i) env *= static_cast<long double>(q);
        if (env > 1e8L) throw std::domain_error("exhaustive census envelope exceeded (q^(2g+2) > 1e8)");
        space = 1;
        for (unsigned i = 0; i < deg; ++i) space *= q;
    } else if (sample_budget == 0) {
        return CensusResult{q, g, 0, false, 0, seed, {}};
    }
    u64 jobs = exhaustive ? space : sample_budget;
    constexpr u64 kChunk = 1024;
    u64 nchunks = (jobs + kChunk - 1) / kChunk;
    std::vector<std::map<std::pair<int, unsigned>, u64>> partial(nchunks);
    std::vector<u64> partial_total(nchunks, 0);
    parallel_chunks(nchunks, workers, [&](u64 chunk) {
        auto& cells = partial[chunk];
        u64 lo = chunk * kChunk, hi = std::min(jobs, lo + kChunk);
        std::vector<u32> digits(s.n());
        for (u64 i = lo; i < hi; ++i) {
            std::optional<HyperellipticCurve> curve;
            if (exhaustive) {
                // decode index into the non-leading coefficients
                std::vector<FieldElement> cs;
                cs.reserve(deg + 1);
                u64 t = i;
                for (unsigned k = 0; k < deg; ++k) {
                    s.element_from_index(t % q, digits.data());
                    t /= q;
                    cs.emplace_back(s, digits);
                }
                cs.push_back(FieldElement::from_int(s, 1));
                Poly f(s, std::move(cs));
                if (f.degree() != static_cast<int>(deg) || !f.squarefree()) continue;
                curve = HyperellipticCurve{&s, std::move(f), g};
            } else {
                Rng rng(derive_seed(seed, i));
                curve = random_curve(g, s, rng);
            }
            int f_rank = prank(*curve).f;
            unsigned aut_order = stabilizer_of(branch_locus(*curve)).order();
            ++cells[{f_rank, aut_order}];
            ++partial_total[chunk];
        }
    });
    std::map<std::pair<int, unsigned>, u64> cells;
    u64 total = 0;
    for (u64 c = 0; c < nchunks; ++c) {
        total += partial_total[c];
        for (const auto& [key, cnt] : partial[c]) cells[key] += cnt;
    }
    CensusResult out{q, g, total, exhaustive, exhaustive ? 0 : sample_budget, exhaustive ? 0 : seed, {}};
    out.rows.reserve(cells.size());
    for (const auto& [key, cnt] : cells)
        out.rows.push_back(CensusRow{q, g, key.first, key.second, cnt});
    return out;
}

SlopeFit slope_fit(const std::vector<CensusResult>& censuses, int f) {
    SlopeFit out;
    std::vector<std::pair<double, double>> pts;  // (ln q, ln freq)
    double max_lb = 0;
    bool zero_count = false;
    for (const CensusResult& c : censuses) {
        if (c.total == 0) continue;
        u64 cnt = c.count_prank_le(f);
        if (cnt == 0) {
            zero_count = true;
            double lb = std::log(static_cast<double>(c.total)) / std::log(static_cast<double>(c.q));
            max_lb = std::max(max_lb, lb);
            continue;
        }
        double freq = static_cast<double>(cnt) / static_cast<double>(c.total);
        pts.emplace_back(std::log(static_cast<double>(c.q)), std::log(freq));
    }
    if (zero_count) {
        out.error = "zero count at some field size; codimension exceeds the reported lower bound";
        out.codim_lower_bound = max_lb;
        return out;
    }
    if (pts.size() < 2) {
        out.error = "need counts at two or more field sizes";
        return out;
    }
    double n = static_cast<double>(pts.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    out.slope = (n * sxy - sx * sy) / denom;
    out.estimated_codimension = -out.slope;
    double intercept = (sy - out.slope * sx) / n;
    double ss = 0;
    for (auto& [x, y] : pts) {
        double e = y - (out.slope * x + intercept);
        ss += e * e;
    }
    out.residual = std::sqrt(ss);
    out.ok = true;
    return out;
}

}  // namespace curvetk
