#include "tfdl/density_experiment.hpp"

#include "tfdl/orbital.hpp"
#include "tfdl/poly.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

namespace tfdl {

namespace {

// Residue policy: the heavyweight contributors (small discriminant, many
// short vectors) get the ideal-count window estimator; the long tail gets
// the truncated Euler product, whose error is a few percent and sign-mixed
// across fields, well inside the exponent-fit tolerance.
constexpr i64 kWindowDiscCap = 40000;
constexpr i64 kWindowN = 30000;
constexpr i64 kEulerP = 6000;
constexpr double kZeta3 = 1.2020569031595942854;

i64 amax_of(i64 A) {
    // largest a0 with 27 a0^2 <= 4 A^3
    i64 b = 4 * A * A * A / 27;
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(b)));
    while (r > 0 && r * r > b) --r;
    while ((r + 1) * (r + 1) <= b) ++r;
    return r;
}

double kahan_total(const std::vector<double>& v) {
    double s = 0.0, comp = 0.0;
    for (double x : v) {
        double y = x - comp;
        double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    return s;
}

struct DiscoveredCallbacks {
    // invoked with the full field alive; records are dropped right after
    std::function<void(const CubicField&, const TraceLattice&, const std::vector<ShortVector>&)>
        sink;
};

std::string resolve_cache_path(const std::string& cache_path) {
    const char* env = std::getenv("TFDL_CACHE");
    if (env != nullptr) return std::string(env);
    return cache_path;
}

Int int_from_str(const std::string& s) {
    TFDL_CHECK(!s.empty(), "field cache: empty integer");
    return Int(s);
}

u64 fingerprint_hash(const CubicField& E) {
    u64 h = 1469598103934665603ull;
    for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29}) {
        SplittingType st = splitting_type(E, p);
        for (auto& [f, e] : st.shape) {
            h ^= (static_cast<u64>(p) << 16) ^ (static_cast<u64>(f) << 8) ^ static_cast<u64>(e);
            h *= 1099511628211ull;
        }
    }
    return h;
}

struct AuditRow {
    i64 disc;
    u64 fphash;
    std::array<i64, 3> poly;
};

MonicIntPoly poly_from_i64(const std::array<i64, 3>& c) {
    return MonicIntPoly::cubic(Int(c[2]), Int(c[1]), Int(c[0]));
}

// Registers every pair reachable from the field's Q <= X classes and
// returns the packed keys; eta = 3 xi - tr(xi) per sign-class.
std::set<u64> field_pair_keys(const CubicField& E, const std::vector<ShortVector>& classes,
                              i64 a_top) {
    Int trw[3];
    for (int i = 0; i < 3; ++i) {
        trw[i] = 0;
        for (int j = 0; j < 3; ++j) trw[i] += E.mult_table[i][j][j];
    }
    TFDL_CHECK(trw[0] == 3, "discover_fields: basis does not start at 1");
    std::set<u64> keys;
    for (const auto& sv : classes) {
        Int tx = sv.coeff[0] * trw[1] + sv.coeff[1] * trw[2];
        std::array<Int, 3> eta = {Int(-tx), Int(3 * sv.coeff[0]), Int(3 * sv.coeff[1])};
        MonicIntPoly fe = char_poly_in_field(eta, E);
        TFDL_CHECK(fe[2] == 0, "discover_fields: trace-zero class has nonzero trace");
        TFDL_CHECK(fe[1] < 0, "discover_fields: degenerate class form");
        Rat two_a1 = Rat(fe[1]) * Rat(2);
        Rat minus_9q = Rat(-9) * sv.q;
        TFDL_CHECK(two_a1 == minus_9q, "discover_fields: class Q mismatch");
        Int Ai = -fe[1];
        Int a0i = fe[0] < 0 ? Int(-fe[0]) : fe[0];
        TFDL_CHECK(a0i > 0, "discover_fields: reducible class");
        TFDL_CHECK(mpz_fits_slong_p(Ai.get_mpz_t()) && mpz_fits_slong_p(a0i.get_mpz_t()),
                   "discover_fields: pair out of range");
        i64 av = Ai.get_si(), a0v = a0i.get_si();
        TFDL_CHECK(av <= a_top && a0v < (i64(1) << 32), "discover_fields: pair out of range");
        keys.insert((static_cast<u64>(av) << 32) | static_cast<u64>(a0v));
    }
    return keys;
}

void sweep_fields(i64 X, const DiscoveredCallbacks& cb, std::ostream* cache_out) {
    std::unordered_set<u64> explained;
    explained.reserve(1u << 16);
    i64 hits = 0, inserts = 0, found = 0;
    std::vector<AuditRow> audit;
    const i64 a_top = 9 * X / 2;
    std::vector<std::pair<i64, int>> cand;
    for (i64 A = 3; A <= a_top; A += 3) {
        i64 B = A / 3;
        i64 amax = amax_of(A);
        if (amax < 1) continue;
        cand.clear();
        for (int t = 0; t <= 2; ++t) {
            if (((t * t - B) % 3 + 3) % 3 != 0) continue;
            i64 r = ((t * t * t - 3 * B * t) % 27 + 27) % 27;
            for (i64 a0 = (r == 0 ? 27 : r); a0 <= amax; a0 += 27) cand.emplace_back(a0, t);
        }
        std::sort(cand.begin(), cand.end());
        for (size_t i = 0; i + 1 < cand.size(); ++i)
            TFDL_CHECK(cand[i].first != cand[i + 1].first,
                       "discover_fields: one pair admits two integral shifts");
        for (auto& [a0, t] : cand) {
            u64 key = (static_cast<u64>(A) << 32) | static_cast<u64>(a0);
            if (explained.count(key)) {
                ++hits;
                continue;
            }
            if (has_integer_root({-A, a0})) continue;
            // xi = (eta + t)/3 is integral: divisions exact by the stream congruences
            i64 c1 = (t * t - B) / 3;
            i64 c0 = a0 - t * t * t + 3 * B * t;
            TFDL_CHECK(c0 % 27 == 0, "discover_fields: stride misaligned");
            MonicIntPoly g = MonicIntPoly::cubic(Int(-t), Int(c1), Int(c0 / 27));
            CubicField E = build_field(g);
            TFDL_CHECK(E.poly_disc > 0, "discover_fields: region pair not totally real");
            TraceLattice lat = gram_matrix(E);
            Rat m1_9 = lat.m1 * Rat(9);
            TFDL_CHECK(m1_9 <= Rat(2 * A), "discover_fields: trigger class above bound");
            Rat prod = lat.m1 * lat.m2;
            Rat d3 = prod * Rat(3);
            Rat d9 = prod * Rat(9);
            Rat D4 = Rat(E.field_disc) * Rat(4);
            TFDL_CHECK(Rat(E.field_disc) <= d3 && d9 <= D4,
                       "discover_fields: minima outside the rank-2 sandwich");
            std::vector<ShortVector> classes = enumerate_short_vectors(lat, Rat(X));
            TFDL_CHECK(!classes.empty(), "discover_fields: discovered field has no classes");
            std::set<u64> keys = field_pair_keys(E, classes, a_top);
            TFDL_CHECK(keys.count(key), "discover_fields: trigger pair missing from field");
            for (u64 k : keys) {
                TFDL_CHECK(explained.insert(k).second,
                           "discover_fields: pair explained by two fields");
                ++inserts;
            }
            ++found;
            i64 disc_i = E.field_disc.get_si();
            std::array<i64, 3> pc = {g[0].get_si(), g[1].get_si(), g[2].get_si()};
            audit.push_back({disc_i, fingerprint_hash(E), pc});
            if (cache_out != nullptr) *cache_out << field_json_record(E) << "\n";
            cb.sink(E, lat, classes);
        }
    }
    TFDL_CHECK(hits + found == inserts, "discover_fields: pair accounting mismatch");
    // no two discovered fields may be isomorphic; equal (disc, splitting
    // shapes) survivors get the full test
    std::sort(audit.begin(), audit.end(), [](const AuditRow& a, const AuditRow& b) {
        return std::tie(a.disc, a.fphash, a.poly) < std::tie(b.disc, b.fphash, b.poly);
    });
    for (size_t i = 0; i + 1 < audit.size(); ++i) {
        if (audit[i].disc != audit[i + 1].disc || audit[i].fphash != audit[i + 1].fphash)
            continue;
        CubicField E1 = build_field(poly_from_i64(audit[i].poly));
        CubicField E2 = build_field(poly_from_i64(audit[i + 1].poly));
        TFDL_CHECK(!is_isomorphic(E1, E2), "discover_fields: duplicate field in output");
    }
}

// Throws on any malformed or stale content; the caller falls back to a
// fresh sweep.
void load_cache(const std::string& path, i64 X, i64 fingerprint_bound,
                const DiscoveredCallbacks& cb) {
    std::ifstream in(path);
    TFDL_CHECK(in.good(), "field cache: cannot open");
    std::string line;
    TFDL_CHECK(static_cast<bool>(std::getline(in, line)), "field cache: missing header");
    nlohmann::json hdr = nlohmann::json::parse(line);
    TFDL_CHECK(hdr.contains("sweep_x") && hdr["sweep_x"].is_number_integer(),
               "field cache: bad header");
    TFDL_CHECK(hdr["sweep_x"].get<i64>() >= X, "field cache: stale sweep bound");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        MonicIntPoly g = MonicIntPoly::cubic(int_from_str(j.at("poly").at(2).get<std::string>()),
                                             int_from_str(j.at("poly").at(1).get<std::string>()),
                                             int_from_str(j.at("poly").at(0).get<std::string>()));
        CubicField E = build_field(g);
        TFDL_CHECK(E.field_disc == int_from_str(j.at("field_disc").get<std::string>()),
                   "field cache: discriminant mismatch");
        TFDL_CHECK(E.index == int_from_str(j.at("index").get<std::string>()),
                   "field cache: index mismatch");
        TFDL_CHECK(E.is_galois == j.at("is_galois").get<bool>(),
                   "field cache: galois flag mismatch");
        for (const auto& fp : j.at("fingerprint")) {
            i64 p = fp.at("p").get<i64>();
            if (p > fingerprint_bound) continue;
            SplittingType st = splitting_type(E, p);
            std::vector<std::pair<int, int>> want;
            for (const auto& s : fp.at("shape")) want.emplace_back(s.at(0).get<int>(), s.at(1).get<int>());
            TFDL_CHECK(st.shape == want, "field cache: splitting fingerprint mismatch");
        }
        TraceLattice lat = gram_matrix(E);
        if (lat.m1 > Rat(X)) continue;
        std::vector<ShortVector> classes = enumerate_short_vectors(lat, Rat(X));
        cb.sink(E, lat, classes);
    }
}

void for_each_field(i64 X, const std::string& cache_path, i64 fingerprint_bound,
                    const DiscoveredCallbacks& cb) {
    TFDL_CHECK(X >= 1, "discover_fields: X >= 1 required");
    TFDL_CHECK(X <= 100000, "discover_fields: sweep bound out of supported range");
    std::string path = resolve_cache_path(cache_path);
    if (!path.empty()) {
        try {
            load_cache(path, X, fingerprint_bound, cb);
            return;
        } catch (const std::exception&) {
            // stale or corrupt: rebuild below and overwrite
        }
    }
    if (path.empty()) {
        sweep_fields(X, cb, nullptr);
        return;
    }
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out.good()) {
            std::cerr << "field cache: cannot write " << tmp << ", caching disabled\n";
            sweep_fields(X, cb, nullptr);
            return;
        }
        out << nlohmann::json{{"sweep_x", X}}.dump() << "\n";
        sweep_fields(X, cb, &out);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        std::cerr << "field cache: cannot move " << tmp << " into place\n";
}

}  // namespace

std::vector<DepressedCubic> enumerate_region(i64 X) {
    TFDL_CHECK(X >= 1, "enumerate_region: X >= 1 required");
    TFDL_CHECK(X <= 2000, "enumerate_region: materialized region too large");
    std::vector<DepressedCubic> out;
    for (i64 A = 1; A <= X / 2; ++A)
        for (i64 a0 = 1, m = amax_of(A); a0 <= m; ++a0) out.push_back({-A, a0});
    return out;
}

bool has_integer_root(const DepressedCubic& c) {
    TFDL_CHECK(c.a1 < 0 && c.a0 > 0, "has_integer_root: outside the region");
    i64 A = -c.a1;
    i64 R = static_cast<i64>(2.0 * std::sqrt(static_cast<double>(A) / 3.0)) + 1;
    for (i64 r = -R; r <= R; ++r) {
        if (r == 0) continue;
        if (r * r * r + c.a1 * r + c.a0 == 0) return true;
    }
    return false;
}

RegionCounts region_counts(i64 X) {
    TFDL_CHECK(X >= 1, "region_counts: X >= 1 required");
    TFDL_CHECK(X <= 4000, "region_counts: region too large");
    RegionCounts rc;
    for (i64 A = 1; A <= X / 2; ++A)
        for (i64 a0 = 1, m = amax_of(A); a0 <= m; ++a0) {
            ++rc.pairs;
            if (has_integer_root({-A, a0}))
                ++rc.reducible;
            else
                ++rc.irreducible;
        }
    return rc;
}

std::pair<i64, i64> irreducible_count(i64 X) {
    RegionCounts rc = region_counts(X);
    return {rc.irreducible, rc.reducible};
}

std::vector<FieldRecord> discover_fields(i64 X, const std::string& cache_path,
                                         i64 fingerprint_bound) {
    std::vector<FieldRecord> out;
    DiscoveredCallbacks cb;
    cb.sink = [&](const CubicField& E, const TraceLattice& lat,
                  const std::vector<ShortVector>& classes) {
        out.push_back({E, lat, classes});
    };
    for_each_field(X, cache_path, fingerprint_bound, cb);
    std::sort(out.begin(), out.end(), [](const FieldRecord& a, const FieldRecord& b) {
        if (a.E.field_disc != b.E.field_disc) return a.E.field_disc < b.E.field_disc;
        for (int i = 0; i < 3; ++i)
            if (a.E.defining_poly[i] != b.E.defining_poly[i])
                return a.E.defining_poly[i] < b.E.defining_poly[i];
        return false;
    });
    return out;
}

DensitySeries sigma_series(const SweepConfig& cfg) {
    TFDL_CHECK(!cfg.x_grid.empty(), "sigma_series: empty grid");
    TFDL_CHECK(cfg.x_grid.front() >= 1, "sigma_series: grid below 1");
    for (size_t i = 0; i + 1 < cfg.x_grid.size(); ++i)
        TFDL_CHECK(cfg.x_grid[i] < cfg.x_grid[i + 1], "sigma_series: grid not increasing");
    TFDL_CHECK(cfg.residue_truncation_N >= 1000, "sigma_series: residue truncation too small");
    const i64 Xmax = cfg.x_grid.back();

    struct LightField {
        i64 disc;
        std::array<i64, 3> poly;
        Rat m1;
        bool galois;
        double rho;
        double err_rel;
        std::vector<Rat> q;        // sorted ascending
        std::vector<double> cpre;  // prefix sums of c_global values
    };
    std::vector<LightField> fields;
    DiscoveredCallbacks cb;
    cb.sink = [&](const CubicField& E, const TraceLattice& lat,
                  const std::vector<ShortVector>& classes) {
        LightField lf;
        TFDL_CHECK(mpz_fits_slong_p(E.field_disc.get_mpz_t()), "sigma_series: disc overflow");
        lf.disc = E.field_disc.get_si();
        lf.poly = {E.defining_poly[0].get_si(), E.defining_poly[1].get_si(),
                   E.defining_poly[2].get_si()};
        lf.m1 = lat.m1;
        lf.galois = E.is_galois;
        ResidueEstimate est;
        if (lf.disc <= kWindowDiscCap)
            est = residue_estimate(E, std::min(cfg.residue_truncation_N, kWindowN));
        else
            est = residue_euler_product(E, std::min(cfg.residue_truncation_N, kEulerP));
        TFDL_CHECK(est.value > 0, "sigma_series: nonpositive residue estimate");
        lf.rho = est.value;
        lf.err_rel = est.error_bar / est.value;
        double run = 0.0;
        for (const auto& sv : classes) {
            lf.q.push_back(sv.q);
            run += c_global(std::array<Int, 3>{0, sv.coeff[0], sv.coeff[1]}, E).get_d();
            lf.cpre.push_back(run);
        }
        fields.push_back(std::move(lf));
    };
    for_each_field(Xmax, cfg.cache_path, std::min<i64>(cfg.prime_fingerprint_bound, 100), cb);
    std::sort(fields.begin(), fields.end(), [](const LightField& a, const LightField& b) {
        return std::tie(a.disc, a.poly) < std::tie(b.disc, b.poly);
    });

    DensitySeries s;
    s.grid = cfg.x_grid;
    const size_t n = cfg.x_grid.size();
    s.sigma.assign(n, 0.0);
    s.field_count.assign(n, 0);
    s.pair_count.assign(n, 0);
    s.irreducible_count.assign(n, 0);
    s.reducible_count.assign(n, 0);
    s.sup_ratio.assign(n, 0.0);
    s.low_confidence.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
        Rat Xi(cfg.x_grid[i]);
        std::vector<double> terms;
        terms.reserve(fields.size());
        for (const auto& f : fields) {
            if (f.m1 > Xi) continue;
            ++s.field_count[i];
            size_t k = std::upper_bound(f.q.begin(), f.q.end(), Xi) - f.q.begin();
            TFDL_CHECK(k > 0, "sigma_series: contributing field with no vectors");
            s.pair_count[i] += static_cast<i64>(k);
            terms.push_back(f.rho / (f.galois ? 3.0 : 1.0) * 2.0 * f.cpre[k - 1]);
            if (f.err_rel > 0.05) s.low_confidence[i] = 1;
        }
        s.sigma[i] = kahan_total(terms);
        RegionCounts rc = region_counts(cfg.x_grid[i]);
        s.irreducible_count[i] = rc.irreducible;
        s.reducible_count[i] = rc.reducible;
    }
    for (size_t i = 0; i < n; ++i) {
        double sup = 0.0;
        for (size_t j = i / 2; j <= i; ++j)
            sup = std::max(sup, s.sigma[j] / std::pow(static_cast<double>(s.grid[j]), 2.5));
        s.sup_ratio[i] = sup;
    }
    return s;
}

std::string series_csv(const DensitySeries& s) {
    std::ostringstream out;
    out << "X,sigma,field_count,pair_count,irreducible,reducible,sup_ratio\n";
    out.precision(12);
    for (size_t i = 0; i < s.grid.size(); ++i) {
        out << s.grid[i] << ',' << s.sigma[i] << ',' << s.field_count[i] << ','
            << s.pair_count[i] << ',' << s.irreducible_count[i] << ',' << s.reducible_count[i]
            << ',' << s.sup_ratio[i] << "\n";
    }
    return out.str();
}

std::string field_table_csv(i64 X, i64 residue_truncation_N, const std::string& cache_path) {
    TFDL_CHECK(residue_truncation_N >= 1000, "field_table_csv: residue truncation below 1000");
    struct Row {
        i64 disc = 0;
        std::array<i64, 3> poly{};
        std::string text;
    };
    std::vector<Row> rows;
    DiscoveredCallbacks cb;
    cb.sink = [&](const CubicField& E, const TraceLattice& lat,
                  const std::vector<ShortVector>&) {
        Row r;
        TFDL_CHECK(mpz_fits_slong_p(E.field_disc.get_mpz_t()), "field_table_csv: disc overflow");
        r.disc = E.field_disc.get_si();
        r.poly = {E.defining_poly[0].get_si(), E.defining_poly[1].get_si(),
                  E.defining_poly[2].get_si()};
        ResidueEstimate est;
        i64 used;
        if (r.disc <= kWindowDiscCap) {
            used = std::min(residue_truncation_N, kWindowN);
            est = residue_estimate(E, used);
        } else {
            used = std::min(residue_truncation_N, kEulerP);
            est = residue_euler_product(E, used);
        }
        std::ostringstream os;
        os.precision(12);
        os << r.disc << ',' << E.index << ',' << lat.m1.get_d() << ',' << lat.m2.get_d() << ','
           << est.value << ',' << est.error_bar << ',' << used << "\n";
        r.text = os.str();
        rows.push_back(std::move(r));
    };
    for_each_field(X, cache_path, 100, cb);
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return std::tie(a.disc, a.poly) < std::tie(b.disc, b.poly);
    });
    std::string out = "disc,index,m1,m2,rho_hat,err,N\n";
    for (const auto& r : rows) out += r.text;
    return out;
}

ExponentFit fit_exponent(const std::vector<i64>& grid, const std::vector<double>& sigma) {
    TFDL_CHECK(grid.size() == sigma.size(), "fit_exponent: length mismatch");
    std::vector<double> lx, ly;
    for (size_t i = 0; i < grid.size(); ++i) {
        if (sigma[i] <= 0) continue;
        TFDL_CHECK(grid[i] >= 1, "fit_exponent: grid below 1");
        lx.push_back(std::log(static_cast<double>(grid[i])));
        ly.push_back(std::log(sigma[i]));
    }
    size_t m = lx.size();
    TFDL_CHECK(m >= 5, "fit_exponent: at least five positive points required");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < m; ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    double det = m * sxx - sx * sx;
    TFDL_CHECK(det > 1e-12, "fit_exponent: degenerate grid");
    ExponentFit fit;
    fit.slope = (m * sxy - sx * sy) / det;
    fit.intercept = (sy * sxx - sx * sxy) / det;
    double rss = 0;
    for (size_t i = 0; i < m; ++i) {
        double r = ly[i] - fit.slope * lx[i] - fit.intercept;
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / m);
    return fit;
}

ExponentFit fit_exponent(const DensitySeries& s) { return fit_exponent(s.grid, s.sigma); }

QuadraticSweep quadratic_sweep(i64 X) {
    TFDL_CHECK(X >= 5, "quadratic_sweep: X >= 5 required");
    QuadraticSweep qs;
    double run = 0.0, comp = 0.0;
    for (i64 d = 5; d <= X; ++d) {
        if (!is_fundamental_discriminant(d)) continue;
        QuadraticData qd = quadratic_class_data(d);
        // narrow class count times log of the norm-one fundamental automorph
        // equals 2 h log eps_0, so no extra factor here
        double res = static_cast<double>(qd.class_number) * qd.log_eps /
                     std::sqrt(static_cast<double>(d));
        double y = res - comp;
        double t = run + y;
        comp = (t - run) - y;
        run = t;
        qs.d.push_back(d);
        qs.residue.push_back(res);
        qs.cumulative.push_back(run);
    }
    qs.ratio = qs.cumulative.empty() ? 0.0 : qs.cumulative.back() / static_cast<double>(X);
    return qs;
}

DiscSignEstimate mc_disc_positive(i64 samples, u64 seed) {
    TFDL_CHECK(samples >= 10000, "mc_disc_positive: at least 10^4 samples required");
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        return (static_cast<double>(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    };
    // N(0, 1/(2 pi)) pairs, matching the density exp(-pi t^2)
    double spare = 0.0;
    bool have_spare = false;
    auto normal = [&]() {
        if (have_spare) {
            have_spare = false;
            return spare;
        }
        double u1 = uniform(), u2 = uniform();
        double r = std::sqrt(-std::log(u1) / M_PI);
        spare = r * std::sin(2.0 * M_PI * u2);
        have_spare = true;
        return r * std::cos(2.0 * M_PI * u2);
    };
    i64 pos = 0;
    for (i64 it = 0; it < samples; ++it) {
        double x[3][3];
        for (auto& row : x)
            for (double& v : row) v = normal();
        have_spare = false;  // fixed draw count per sample
        double tr3 = (x[0][0] + x[1][1] + x[2][2]) / 3.0;
        double y[3][3];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) y[i][j] = x[i][j] - (i == j ? tr3 : 0.0);
        double tr2 = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) tr2 += y[i][j] * y[j][i];
        double p = -tr2 / 2.0;
        double det = y[0][0] * (y[1][1] * y[2][2] - y[1][2] * y[2][1]) -
                     y[0][1] * (y[1][0] * y[2][2] - y[1][2] * y[2][0]) +
                     y[0][2] * (y[1][0] * y[2][1] - y[1][1] * y[2][0]);
        double q = -det;
        if (-4.0 * p * p * p - 27.0 * q * q > 0.0) ++pos;
    }
    DiscSignEstimate est;
    est.samples = samples;
    est.seed = seed;
    est.p_hat = static_cast<double>(pos) / static_cast<double>(samples);
    est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(samples));
    est.p_reference = 1.0 / (2.0 * std::sqrt(2.0));
    est.beta_candidate = 2.0 * std::pow(M_PI, 4.5) * kZeta3 / std::sqrt(3.0) * est.p_hat;
    return est;
}

}  // namespace tfdl
