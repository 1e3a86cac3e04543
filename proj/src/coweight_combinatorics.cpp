#include "tfdl/coweight_combinatorics.hpp"

#include <algorithm>
#include <random>

namespace tfdl {

namespace {

void validate(const ParabolicType& p) {
    TFDL_CHECK(!p.composition.empty(), "parabolic type: empty composition");
    for (int c : p.composition)
        TFDL_CHECK(c >= 1, "parabolic type: block sizes must be positive");
}

// Prefix sums of coords: S[i] = coords[0] + ... + coords[i-1].
std::vector<Rat> prefix_sums(const CorootPoint& H) {
    std::vector<Rat> s(H.coords.size() + 1, Rat(0));
    for (size_t i = 0; i < H.coords.size(); ++i) s[i + 1] = s[i] + H.coords[i];
    return s;
}

// Block edges of p including 0 and n.
std::vector<int> edges_of(const ParabolicType& p) {
    std::vector<int> e{0};
    for (int c : p.composition) e.push_back(e.back() + c);
    return e;
}

// Root at an inner edge e[j] of p1, evaluated through the projection onto
// the p1 Levi: difference of the adjacent block averages.
Rat root_at(const std::vector<int>& e, size_t j, const std::vector<Rat>& S) {
    int l = e[j - 1], b = e[j], r = e[j + 1];
    return (S[b] - S[l]) / Rat(b - l) - (S[r] - S[b]) / Rat(r - b);
}

// Weight dual to the coroot at position b inside the p2-block [s+1, e]:
// the block-relative partial sum. For p2 = G this is the usual
// sum_{m<=b} H_m - (b/n) sum H_m.
Rat weight_at(int b, int s, int e, const std::vector<Rat>& S) {
    return S[b] - S[s] - Rat(b - s) / Rat(e - s) * (S[e] - S[s]);
}

struct NestedPair {
    std::vector<int> e1;      // edges of p1
    std::vector<int> bnd2;    // boundaries of p2 (subset of inner e1)
    std::vector<int> e2;      // edges of p2
    int n;
};

NestedPair prepare(const ParabolicType& p1, const ParabolicType& p2,
                   const CorootPoint& H) {
    validate(p1);
    validate(p2);
    TFDL_CHECK(refines(p1, p2), "characteristic function: p1 must refine p2");
    TFDL_CHECK(static_cast<int>(H.coords.size()) == p1.rank(),
               "characteristic function: point dimension mismatch");
    return {edges_of(p1), p2.boundaries(), edges_of(p2), p1.rank()};
}

bool is_bnd2(const NestedPair& np, int b) {
    return std::binary_search(np.bnd2.begin(), np.bnd2.end(), b);
}

// p2-block [s+1, e] containing position b.
std::pair<int, int> enclosing_block(const NestedPair& np, int b) {
    for (size_t j = 1; j < np.e2.size(); ++j)
        if (np.e2[j - 1] < b && b < np.e2[j]) return {np.e2[j - 1], np.e2[j]};
    TFDL_CHECK(false, "characteristic function: boundary not inside any block");
    return {0, 0};
}

}  // namespace

int ParabolicType::rank() const {
    int n = 0;
    for (int c : composition) n += c;
    return n;
}

std::vector<int> ParabolicType::boundaries() const {
    std::vector<int> b;
    int s = 0;
    for (size_t i = 0; i + 1 < composition.size(); ++i) {
        s += composition[i];
        b.push_back(s);
    }
    return b;
}

ParabolicType ParabolicType::minimal(int n) {
    TFDL_CHECK(n >= 1, "parabolic type: rank must be positive");
    return {std::vector<int>(static_cast<size_t>(n), 1)};
}

ParabolicType ParabolicType::full(int n) {
    TFDL_CHECK(n >= 1, "parabolic type: rank must be positive");
    return {{n}};
}

bool operator==(const ParabolicType& a, const ParabolicType& b) {
    return a.composition == b.composition;
}

bool refines(const ParabolicType& p1, const ParabolicType& p2) {
    validate(p1);
    validate(p2);
    if (p1.rank() != p2.rank()) return false;
    auto b1 = p1.boundaries();
    auto b2 = p2.boundaries();
    return std::includes(b1.begin(), b1.end(), b2.begin(), b2.end());
}

int tau(const ParabolicType& p1, const ParabolicType& p2, const CorootPoint& H) {
    NestedPair np = prepare(p1, p2, H);
    auto S = prefix_sums(H);
    for (size_t j = 1; j + 1 < np.e1.size(); ++j) {
        if (is_bnd2(np, np.e1[j])) continue;
        if (sgn(root_at(np.e1, j, S)) <= 0) return 0;
    }
    return 1;
}

int tau_hat(const ParabolicType& p1, const ParabolicType& p2, const CorootPoint& H) {
    NestedPair np = prepare(p1, p2, H);
    auto S = prefix_sums(H);
    for (size_t j = 1; j + 1 < np.e1.size(); ++j) {
        int b = np.e1[j];
        if (is_bnd2(np, b)) continue;
        auto [s, e] = enclosing_block(np, b);
        if (sgn(weight_at(b, s, e, S)) <= 0) return 0;
    }
    return 1;
}

int sigma(const ParabolicType& p1, const ParabolicType& p2, const CorootPoint& H) {
    NestedPair np = prepare(p1, p2, H);
    auto S = prefix_sums(H);
    for (size_t j = 1; j + 1 < np.e1.size(); ++j) {
        int b = np.e1[j];
        if (is_bnd2(np, b)) {
            // roots of the p1 Levi that survive to p2 must be non-positive,
            // while the full weight at each p2 boundary stays positive
            if (sgn(root_at(np.e1, j, S)) > 0) return 0;
            if (sgn(weight_at(b, 0, np.n, S)) <= 0) return 0;
        } else {
            if (sgn(root_at(np.e1, j, S)) <= 0) return 0;
        }
    }
    return 1;
}

std::vector<ParabolicType> compositions_of(int n) {
    TFDL_CHECK(n >= 1, "compositions_of: rank must be positive");
    std::vector<ParabolicType> out;
    int masks = 1 << (n - 1);
    for (int m = 0; m < masks; ++m) {
        ParabolicType p;
        int run = 1;
        for (int i = 1; i < n; ++i) {
            if (m & (1 << (i - 1))) {
                p.composition.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        p.composition.push_back(run);
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<ParabolicType> coarsenings(const ParabolicType& p) {
    validate(p);
    auto bnd = p.boundaries();
    int k = static_cast<int>(bnd.size());
    std::vector<ParabolicType> out;
    for (int m = 0; m < (1 << k); ++m) {
        ParabolicType q;
        int prev = 0;
        for (int i = 0; i < k; ++i)
            if (m & (1 << i)) {
                q.composition.push_back(bnd[i] - prev);
                prev = bnd[i];
            }
        q.composition.push_back(p.rank() - prev);
        out.push_back(std::move(q));
    }
    return out;
}

std::vector<CorootPoint> sample_coroot_points(const ParabolicType& p1, int count,
                                              u64 seed) {
    validate(p1);
    TFDL_CHECK(count >= 0, "sample_coroot_points: negative count");
    int n = p1.rank();
    auto e1 = edges_of(p1);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-4096, 4096);
    std::uniform_int_distribution<int> den(1, 64);

    std::vector<CorootPoint> pts;
    pts.reserve(static_cast<size_t>(count));
    while (static_cast<int>(pts.size()) < count) {
        CorootPoint H;
        H.coords.reserve(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) H.coords.push_back(Rat(num(rng)) / Rat(den(rng)));
        auto S = prefix_sums(H);
        bool generic = true;
        for (size_t j = 1; j + 1 < e1.size() && generic; ++j) {
            if (sgn(root_at(e1, j, S)) == 0) generic = false;
            if (sgn(weight_at(e1[j], 0, n, S)) == 0) generic = false;
        }
        if (generic) pts.push_back(std::move(H));
    }
    return pts;
}

int sigma_identity_check(const ParabolicType& p1, const ParabolicType& p2,
                         const std::vector<CorootPoint>& points) {
    TFDL_CHECK(refines(p1, p2), "sigma_identity_check: p1 must refine p2");
    auto bigger = coarsenings(p2);
    size_t k2 = p2.boundaries().size();
    ParabolicType G = ParabolicType::full(p1.rank());
    int violations = 0;
    for (const auto& H : points) {
        int lhs = sigma(p1, p2, H);
        int rhs = 0;
        for (const auto& R : bigger) {
            int term = tau(p1, R, H) * tau_hat(R, G, H);
            if (term == 0) continue;
            rhs += ((k2 - R.boundaries().size()) % 2 == 0) ? term : -term;
        }
        if (lhs != rhs) ++violations;
    }
    return violations;
}

int sigma_partition_check(const ParabolicType& p1,
                          const std::vector<CorootPoint>& points) {
    validate(p1);
    auto bigger = coarsenings(p1);
    ParabolicType G = ParabolicType::full(p1.rank());
    int violations = 0;
    for (const auto& H : points) {
        int lhs = 0;
        for (const auto& p2 : bigger) lhs += sigma(p1, p2, H);
        if (lhs != tau_hat(p1, G, H)) ++violations;
    }
    return violations;
}

std::vector<NilpotentOrbitRecord> nilpotent_catalog(int n) {
    TFDL_CHECK(n == 2 || n == 3, "nilpotent_catalog: only ranks 2 and 3");
    auto record = [n](std::string name, std::vector<int> part) {
        // dim = n^2 - sum of squares of the dual partition
        int dim = n * n;
        for (int i = 1;; ++i) {
            int dual = 0;
            for (int p : part)
                if (p >= i) ++dual;
            if (dual == 0) break;
            dim -= dual * dual;
        }
        NilpotentOrbitRecord r;
        r.name = std::move(name);
        r.partition = std::move(part);
        r.dim = dim;
        r.delta = Rat(dim) / Rat(2);
        return r;
    };
    if (n == 2) return {record("trivial", {1, 1}), record("regular", {2})};
    return {record("trivial", {1, 1, 1}), record("minimal", {2, 1}),
            record("regular", {3})};
}

std::string QuadraticSurd::str() const {
    if (b == 0) return a.get_str();
    std::string out = a == 0 ? std::string() : a.get_str();
    Rat ab = abs(b);
    std::string coeff = ab == 1 ? std::string() : ab.get_str() + "*";
    if (out.empty())
        out = (b < 0 ? "-" : "") + coeff;
    else
        out += (b < 0 ? " - " : " + ") + coeff;
    return out + "sqrt(" + std::to_string(D) + ")";
}

bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) {
    if (x.b == 0 && y.b == 0) return x.a == y.a;
    return x.a == y.a && x.b == y.b && x.D == y.D;
}

QuadraticSurd operator+(const QuadraticSurd& x, const QuadraticSurd& y) {
    TFDL_CHECK(x.b == 0 || y.b == 0 || x.D == y.D, "surd sum: radicand mismatch");
    i64 D = x.b != 0 ? x.D : y.D;
    return {x.a + y.a, x.b + y.b, D};
}

bool surd_less(const QuadraticSurd& x, const QuadraticSurd& y) {
    TFDL_CHECK(x.b == 0 || y.b == 0 || x.D == y.D, "surd compare: radicand mismatch");
    i64 D = x.b != 0 ? x.D : y.D;
    Rat da = x.a - y.a;  // x - y = da + db sqrt(D); x < y iff that is negative
    Rat db = x.b - y.b;
    if (db == 0) return da < 0;
    if (da == 0) return db < 0;
    if (da < 0 && db < 0) return true;
    if (da > 0 && db > 0) return false;
    Rat cmp = da * da - db * db * Rat(D);  // sign of |da| vs |db| sqrt(D)
    return da < 0 ? cmp > 0 : cmp < 0;
}

std::vector<PoleEntry> pole_table(int n, GroupKind group) {
    i64 D = group == GroupKind::GL ? i64(n) * n : i64(n) * n - 1;
    i64 r = 0;
    while ((r + 1) * (r + 1) <= D) ++r;
    bool square = r * r == D;

    std::vector<PoleEntry> out;
    for (auto& orbit : nilpotent_catalog(n)) {
        QuadraticSurd sm;
        sm.D = D;
        if (square) {
            sm.a = Rat(1 - r) / Rat(2) + Rat(orbit.dim) / Rat(2 * r);
            sm.b = 0;
        } else {
            sm.a = Rat(1) / Rat(2);
            sm.b = (Rat(orbit.dim) / Rat(D) - 1) / Rat(2);
        }
        QuadraticSurd sp{Rat(1) - sm.a, -sm.b, D};
        out.push_back({orbit, sm, sp, n - 1});
    }
    return out;
}

}  // namespace tfdl
