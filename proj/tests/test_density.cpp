#include "doctest.h"

#include "tfdl/density_experiment.hpp"
#include "tfdl/orbital.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>

using namespace tfdl;

namespace {

// Unrestricted reference sweep: every irreducible region pair up to the
// tripled bound, naive isomorphism dedup.  Independent of the congruence
// filter and the pair-registration bookkeeping in discover_fields.
std::vector<Int> brute_force_discs(i64 X) {
    std::vector<CubicField> fields;
    for (i64 A = 1; 2 * A <= 9 * X; ++A) {
        for (i64 a0 = 1; 27 * a0 * a0 <= 4 * A * A * A; ++a0) {
            if (has_integer_root({-A, a0})) continue;
            CubicField E = build_field(MonicIntPoly::cubic(Int(0), Int(-A), Int(a0)));
            TraceLattice lat = gram_matrix(E);
            if (lat.m1 > Rat(X)) continue;
            bool dup = false;
            for (auto& F : fields)
                if (F.field_disc == E.field_disc && is_isomorphic(F, E)) {
                    dup = true;
                    break;
                }
            if (!dup) fields.push_back(std::move(E));
        }
    }
    std::vector<Int> discs;
    for (auto& F : fields) discs.push_back(F.field_disc);
    std::sort(discs.begin(), discs.end());
    return discs;
}

std::vector<Int> record_discs(const std::vector<FieldRecord>& F) {
    std::vector<Int> discs;
    for (auto& f : F) discs.push_back(f.E.field_disc);
    return discs;
}

}  // namespace

TEST_CASE("region enumeration") {
    auto r10 = enumerate_region(10);
    REQUIRE(r10.size() == 10);
    CHECK(r10.front().a1 == -2);
    CHECK(r10.front().a0 == 1);
    CHECK(r10.back().a1 == -5);
    CHECK(r10.back().a0 == 4);
    int per_a1[6] = {0, 0, 0, 0, 0, 0};
    for (auto& c : r10) {
        REQUIRE(-c.a1 <= 5);
        REQUIRE(c.a0 >= 1);
        CHECK(27 * c.a0 * c.a0 <= 4 * (-c.a1) * (-c.a1) * (-c.a1));
        ++per_a1[-c.a1];
    }
    CHECK(per_a1[1] == 0);
    CHECK(per_a1[2] == 1);
    CHECK(per_a1[3] == 2);
    CHECK(per_a1[4] == 3);
    CHECK(per_a1[5] == 4);

    CHECK(enumerate_region(1).empty());
    CHECK(enumerate_region(3).empty());

    // monotone as a set
    auto r14 = enumerate_region(14);
    std::set<std::pair<i64, i64>> big;
    for (auto& c : r14) big.insert({c.a1, c.a0});
    for (auto& c : r10) CHECK(big.count({c.a1, c.a0}) == 1);
    CHECK(r14.size() > r10.size());
}

TEST_CASE("integer root detection") {
    CHECK(has_integer_root({-2, 1}));    // root 1
    CHECK(!has_integer_root({-3, 1}));
    CHECK(has_integer_root({-3, 2}));    // discriminant 0, root 1
    CHECK(has_integer_root({-12, 16}));  // root 2
    CHECK(has_integer_root({-12, 11}));  // root 1
    CHECK(!has_integer_root({-21, 7}));
    CHECK(has_integer_root({-21, 34}));  // root 2
    CHECK(has_integer_root({-18, 27}));  // root 3
}

TEST_CASE("region splits into irreducible and reducible") {
    RegionCounts rc = region_counts(10);
    CHECK(rc.pairs == 10);
    CHECK(rc.irreducible == 5);
    CHECK(rc.reducible == 5);
    auto [irr, red] = irreducible_count(10);
    CHECK(irr == 5);
    CHECK(red == 5);

    std::set<std::pair<i64, i64>> irr_pairs;
    for (auto& c : enumerate_region(10))
        if (!has_integer_root(c)) irr_pairs.insert({c.a1, c.a0});
    std::set<std::pair<i64, i64>> want = {
        {-3, 1}, {-4, 1}, {-4, 2}, {-5, 1}, {-5, 3}};
    CHECK(irr_pairs == want);

    // growth of the irreducible count tracks the X^{5/2} region volume
    auto [i100, r100] = irreducible_count(100);
    auto [i200, r200] = irreducible_count(200);
    double ratio = static_cast<double>(i200) / static_cast<double>(i100);
    CHECK(ratio > std::pow(2.0, 2.2));
    CHECK(ratio < std::pow(2.0, 2.8));
    CHECK(r200 > r100);
}

TEST_CASE("field discovery at small bounds") {
    CHECK(discover_fields(4).empty());

    auto f5 = discover_fields(5);
    REQUIRE(f5.size() == 1);
    CHECK(f5[0].E.field_disc == 49);
    CHECK(f5[0].E.is_galois);
    CHECK(f5[0].E.index == 1);
    CHECK(f5[0].lat.m1 == Rat(14) / Rat(3));
    REQUIRE(f5[0].classes.size() == 3);
    for (auto& sv : f5[0].classes) CHECK(sv.q == Rat(14) / Rat(3));
    // the hexagonal lattice meets the upper Minkowski wall: m1 m2 = 4D/9
    Rat prod49 = f5[0].lat.m1 * f5[0].lat.m2;
    Rat wall49 = Rat(4 * 49) / Rat(9);
    CHECK(prod49 == wall49);

    auto f6 = discover_fields(6);
    REQUIRE(f6.size() == 2);
    CHECK(f6[0].E.field_disc == 49);
    CHECK(f6[1].E.field_disc == 81);
    CHECK(f6[1].lat.m1 == 6);
    CHECK(f6[1].classes.size() == 3);
}

TEST_CASE("field discovery agrees with the unrestricted reference sweep") {
    auto got = record_discs(discover_fields(10));
    auto want = brute_force_discs(10);
    CHECK(got == want);
    CHECK(!want.empty());
    // conductor-13 cyclic field and the first non-Galois discs show up
    std::set<Int> discs(want.begin(), want.end());
    CHECK(discs.count(49) == 1);
    CHECK(discs.count(81) == 1);
    CHECK(discs.count(148) == 1);
    CHECK(discs.count(169) == 1);
    CHECK(discs.count(229) == 1);
}

TEST_CASE("field discovery invariants at X = 25") {
    auto F = discover_fields(25);
    CHECK(F.size() > 100);
    Rat X(25);
    for (size_t i = 0; i + 1 < F.size(); ++i) {
        bool poly_differs = false;
        for (int k = 0; k < 3; ++k)
            if (F[i].E.defining_poly[k] != F[i + 1].E.defining_poly[k]) poly_differs = true;
        bool ordered = F[i].E.field_disc < F[i + 1].E.field_disc ||
                       (F[i].E.field_disc == F[i + 1].E.field_disc && poly_differs);
        CHECK(ordered);
    }
    for (auto& f : F) {
        CHECK(f.lat.m1 <= X);
        REQUIRE(!f.classes.empty());
        CHECK(f.classes.front().q == f.lat.m1);
        Rat prod = f.lat.m1 * f.lat.m2;
        Rat D(f.E.field_disc);
        Rat p3 = prod * 3;
        Rat p9 = prod * 9;
        Rat d4 = D * 4;
        CHECK(D <= p3);
        CHECK(p9 <= d4);
        // fields with both minima below X sit inside the 3X^2 disc window
        if (f.lat.m2 <= X) CHECK(D <= Rat(3 * 25 * 25));
    }
    // stability: the smallest discriminants never change as X grows
    auto F30 = discover_fields(30);
    CHECK(F30.size() >= F.size());
    auto d25 = record_discs(F);
    auto d30 = record_discs(F30);
    for (int i = 0; i < 10; ++i) CHECK(d25[i] == d30[i]);
    for (int i = 0; i + 1 < 10; ++i) CHECK(d25[i] <= d25[i + 1]);
}

TEST_CASE("field cache round trip") {
    std::string path = "density_cache_test.jsonl";
    std::remove(path.c_str());
    auto fresh = discover_fields(6, path);
    REQUIRE(fresh.size() == 2);
    {
        std::ifstream in(path);
        REQUIRE(in.good());
        std::string hdr;
        REQUIRE(static_cast<bool>(std::getline(in, hdr)));
        CHECK(hdr.find("\"sweep_x\":6") != std::string::npos);
    }
    auto cached = discover_fields(6, path);
    REQUIRE(cached.size() == fresh.size());
    for (size_t i = 0; i < fresh.size(); ++i) {
        CHECK(cached[i].E.field_disc == fresh[i].E.field_disc);
        CHECK(cached[i].E.defining_poly == fresh[i].E.defining_poly);
        CHECK(cached[i].lat.m1 == fresh[i].lat.m1);
        CHECK(cached[i].classes.size() == fresh[i].classes.size());
    }
    // a cache built at a larger bound serves smaller queries
    auto narrowed = discover_fields(5, path);
    REQUIRE(narrowed.size() == 1);
    CHECK(narrowed[0].E.field_disc == 49);
    // a stale bound forces a rebuild at the wider X
    auto widened = discover_fields(7, path);
    CHECK(widened.size() >= 2);
    {
        std::ifstream in(path);
        std::string hdr;
        std::getline(in, hdr);
        CHECK(hdr.find("\"sweep_x\":7") != std::string::npos);
    }
    // corruption falls back to a fresh sweep
    {
        std::ofstream out(path);
        out << "not json\n";
    }
    auto rebuilt = discover_fields(6, path);
    CHECK(rebuilt.size() == 2);

    // environment variable overrides the argument
    std::string env_path = "density_cache_env.jsonl";
    std::remove(env_path.c_str());
    setenv("TFDL_CACHE", env_path.c_str(), 1);
    auto via_env = discover_fields(6, path);
    unsetenv("TFDL_CACHE");
    CHECK(via_env.size() == 2);
    {
        std::ifstream envin(env_path);
        CHECK(envin.good());
    }

    // set-but-empty TFDL_CACHE disables caching entirely
    std::remove(path.c_str());
    setenv("TFDL_CACHE", "", 1);
    auto no_cache = discover_fields(5, path);
    unsetenv("TFDL_CACHE");
    CHECK(no_cache.size() == 1);
    {
        std::ifstream off(path);
        CHECK(!off.good());
    }
    std::remove(env_path.c_str());
}

TEST_CASE("sigma series on a tiny grid") {
    SweepConfig cfg;
    cfg.x_grid = {4, 5, 6};
    cfg.residue_truncation_N = 20000;
    DensitySeries s = sigma_series(cfg);
    REQUIRE(s.grid.size() == 3);
    CHECK(s.sigma[0] == 0.0);
    CHECK(s.sigma[1] > 0.0);
    CHECK(s.sigma[1] <= s.sigma[2]);
    CHECK(s.field_count == std::vector<i64>{0, 1, 2});
    CHECK(s.pair_count == std::vector<i64>{0, 3, 6});
    CHECK(s.low_confidence[0] == 0);
    CHECK(s.irreducible_count[2] == 1);  // region(6) = {(-2,1), (-3,1), (-3,2)}
    CHECK(s.reducible_count[2] == 2);

    // both fields are Galois with unit orbital weights, so Sigma is exactly
    // 2 sum of residues; recompute through the public pieces
    auto F = discover_fields(6);
    double want5 = 0.0, want6 = 0.0;
    for (auto& f : F) {
        double rho = residue_estimate(f.E, 20000).value;
        double csum = 0.0;
        for (auto& sv : f.classes) {
            Rat c = c_global(std::array<Int, 3>{0, sv.coeff[0], sv.coeff[1]}, f.E);
            CHECK(c == 1);
            csum += c.get_d();
        }
        double term = rho / 3.0 * 2.0 * csum;
        if (f.lat.m1 <= Rat(5)) want5 += term;
        want6 += term;
    }
    CHECK(s.sigma[1] == doctest::Approx(want5).epsilon(1e-12));
    CHECK(s.sigma[2] == doctest::Approx(want6).epsilon(1e-12));

    // residue of the conductor-7 field: 8 h R / (2 sqrt(49)) with h = 1,
    // R = 0.5254458... (regulator of the maximal real subfield of Q(zeta_7))
    double rho49 = s.sigma[1] / 2.0;
    CHECK(rho49 == doctest::Approx(4.0 * 0.52545489 / 7.0).epsilon(0.02));

    CHECK_THROWS(sigma_series(SweepConfig{{10, 10}, 20000, 100, 7, ""}));
    CHECK_THROWS(sigma_series(SweepConfig{{}, 20000, 100, 7, ""}));
    CHECK_THROWS(sigma_series(SweepConfig{{4, 5, 6}, 10, 100, 7, ""}));
}

TEST_CASE("series csv") {
    SweepConfig cfg;
    cfg.x_grid = {4, 5, 6};
    cfg.residue_truncation_N = 20000;
    DensitySeries s = sigma_series(cfg);
    std::string csv = series_csv(s);
    CHECK(csv.rfind("X,sigma,field_count,pair_count,irreducible,reducible,sup_ratio\n", 0) == 0);
    int lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 4);
    CHECK(csv.find("\n4,0,0,0,") != std::string::npos);
}

TEST_CASE("exponent fit") {
    std::vector<i64> grid = {25, 50, 100, 200, 400};
    std::vector<double> pure, quad;
    for (i64 x : grid) {
        pure.push_back(std::pow(static_cast<double>(x), 2.5));
        quad.push_back(7.0 * static_cast<double>(x) * static_cast<double>(x));
    }
    ExponentFit f1 = fit_exponent(grid, pure);
    CHECK(f1.slope == doctest::Approx(2.5).epsilon(1e-10));
    CHECK(f1.intercept == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(f1.residual < 1e-10);
    ExponentFit f2 = fit_exponent(grid, quad);
    CHECK(f2.slope == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(f2.intercept == doctest::Approx(std::log(7.0)).epsilon(1e-9));

    std::vector<double> with_zero = pure;
    with_zero[0] = 0.0;  // only four positive points remain
    CHECK_THROWS(fit_exponent(grid, with_zero));
    CHECK_THROWS(fit_exponent({7, 7, 7, 7, 7}, pure));
    CHECK_THROWS(fit_exponent({25, 50}, {1.0, 2.0}));
}

TEST_CASE("quadratic residue sweep") {
    QuadraticSweep q5 = quadratic_sweep(5);
    REQUIRE(q5.d.size() == 1);
    CHECK(q5.d[0] == 5);
    CHECK(q5.residue[0] == doctest::Approx(0.43040894).epsilon(1e-6));
    CHECK(q5.ratio == doctest::Approx(q5.residue[0] / 5.0).epsilon(1e-12));

    QuadraticSweep q40 = quadratic_sweep(40);
    std::vector<i64> want = {5, 8, 12, 13, 17, 21, 24, 28, 29, 33, 37, 40};
    CHECK(q40.d == want);
    // d = 8 has a norm -1 unit, d = 12 does not; the narrow-class formula
    // covers both: 2 log(1+sqrt 2)/sqrt 8 and 2 log(2+sqrt 3)/sqrt 12
    CHECK(q40.residue[1] == doctest::Approx(2.0 * std::log(1.0 + std::sqrt(2.0)) / std::sqrt(8.0)).epsilon(1e-9));
    CHECK(q40.residue[2] == doctest::Approx(2.0 * std::log(2.0 + std::sqrt(3.0)) / std::sqrt(12.0)).epsilon(1e-9));
    for (size_t i = 0; i + 1 < q40.cumulative.size(); ++i)
        CHECK(q40.cumulative[i] < q40.cumulative[i + 1]);
    CHECK_THROWS(quadratic_sweep(4));
}

TEST_CASE("monte carlo discriminant sign") {
    DiscSignEstimate a = mc_disc_positive(20000, 7);
    DiscSignEstimate b = mc_disc_positive(20000, 7);
    CHECK(a.p_hat == b.p_hat);  // bit-exact reproducibility
    CHECK(a.p_reference == doctest::Approx(0.35355339).epsilon(1e-8));
    CHECK(a.p_hat > 0.33);
    CHECK(a.p_hat < 0.38);
    CHECK(std::abs(a.p_hat - a.p_reference) < 4.0 * a.std_error);
    DiscSignEstimate c = mc_disc_positive(20000, 8);
    CHECK(c.p_hat != a.p_hat);
    CHECK(std::abs(c.p_hat - a.p_hat) < 3.0 * (c.std_error + a.std_error));
    double beta = 2.0 * std::pow(M_PI, 4.5) * 1.2020569031595942854 / std::sqrt(3.0) * a.p_hat;
    CHECK(a.beta_candidate == doctest::Approx(beta).epsilon(1e-12));
    CHECK_THROWS(mc_disc_positive(9999, 7));
}
