#include "tfdl/zeta_residue.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace tfdl {

double log_mpz(const Int& x) {
    TFDL_CHECK(x > 0, "log_mpz: positive argument required");
    long e = 0;
    double m = mpz_get_d_2exp(&e, x.get_mpz_t());
    return std::log(m) + static_cast<double>(e) * M_LN2;
}

bool is_fundamental_discriminant(i64 d) {
    if (d == 0 || d == 1) return false;
    i64 r = ((d % 4) + 4) % 4;
    if (r == 1) return squarefree_split_i64(d).root == 1;
    if (r != 0) return false;
    i64 m = d / 4;
    i64 mr = ((m % 4) + 4) % 4;
    if (mr != 2 && mr != 3) return false;
    return squarefree_split_i64(m).root == 1;
}

Int qform_disc(const QForm& f) { return f.b * f.b - 4 * f.a * f.c; }

namespace {

void check_disc(const QForm& f, i64 d) {
    TFDL_CHECK(qform_disc(f) == d, "qform: discriminant mismatch");
}

bool valid_positive_disc(i64 d) {
    if (d <= 0) return false;
    i64 r = d & 3;
    if (r != 0 && r != 1) return false;
    return !is_square_i64(d);
}

}  // namespace

bool qform_is_reduced(const QForm& f, i64 d) {
    check_disc(f, d);
    if (f.b <= 0) return false;
    Int b = f.b;
    if (b * b >= d) return false;
    Int ta = 2 * abs(f.a);
    // sqrt(d) < b + 2|a|, exact since d is non-square
    if ((b + ta) * (b + ta) <= d) return false;
    // 2|a| - b < sqrt(d)
    if (ta > b && (ta - b) * (ta - b) >= d) return false;
    return true;
}

QForm qform_rho(const QForm& f, i64 d) {
    check_disc(f, d);
    TFDL_CHECK(f.c != 0, "qform_rho: degenerate form");
    Int ac = abs(f.c);
    Int tc = 2 * ac;
    Int s = isqrt_floor(Int(d));
    Int r = (-f.b) % tc;
    if (r < 0) r += tc;
    Int bp;
    if (ac > s) {
        // |c| dominates sqrt(d): normalize b' into (-|c|, |c|]
        bp = r;
        if (bp > ac) bp -= tc;
    } else {
        // largest b' <= floor(sqrt d) with b' = r (mod 2|c|); the open window
        // (sqrt d - 2|c|, sqrt d) contains exactly one residue
        bp = s - ((s - r) % tc + tc) % tc;
    }
    Int num = bp * bp - d;
    TFDL_CHECK(num % (4 * f.c) == 0, "qform_rho: congruence violated");
    return {f.c, bp, num / (4 * f.c)};
}

std::vector<QForm> reduced_forms(i64 d) {
    TFDL_CHECK(valid_positive_disc(d), "reduced_forms: need positive non-square discriminant");
    std::vector<QForm> out;
    i64 s = isqrt_i64(d);
    for (i64 b = (d & 1) ? 1 : 2; b <= s; b += 2) {
        i64 m = (d - b * b) / 4;
        for (i64 A : divisors_i64(m)) {
            i64 C = m / A;
            QForm f{A, b, -C};
            if (qform_is_reduced(f, d)) {
                out.push_back(f);
                out.push_back(QForm{-A, b, C});
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<QForm>> reduced_form_cycles(i64 d) {
    auto forms = reduced_forms(d);
    std::set<QForm> pending(forms.begin(), forms.end());
    std::vector<std::vector<QForm>> cycles;
    while (!pending.empty()) {
        QForm start = *pending.begin();
        std::vector<QForm> cyc;
        QForm f = start;
        do {
            TFDL_CHECK(pending.erase(f) == 1, "reduced_form_cycles: rho left the reduced set");
            cyc.push_back(f);
            f = qform_rho(f, d);
        } while (!(f == start));
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

std::pair<Int, Int> pell_fundamental(i64 d) {
    TFDL_CHECK(valid_positive_disc(d), "pell_fundamental: need positive non-square discriminant");
    // Reduce the principal form, then accumulate the cycle's step matrices;
    // one traversal is the fundamental automorph, i.e. the minimal (t, u).
    QForm f = (d & 1) ? QForm{1, 1, Int(1 - d) / 4} : QForm{1, 0, Int(-d) / 4};
    for (int guard = 0; !qform_is_reduced(f, d); ++guard) {
        TFDL_CHECK(guard < 10000, "pell_fundamental: reduction did not terminate");
        f = qform_rho(f, d);
    }
    QForm start = f;
    Int m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    do {
        QForm g = qform_rho(f, d);
        TFDL_CHECK((f.b + g.b) % (2 * f.c) == 0, "pell_fundamental: step not integral");
        Int st = (f.b + g.b) / (2 * f.c);
        // right-multiply by [[0, -1], [1, st]]
        Int n00 = m01, n01 = -m00 + m01 * st;
        Int n10 = m11, n11 = -m10 + m11 * st;
        m00 = n00; m01 = n01; m10 = n10; m11 = n11;
        f = g;
    } while (!(f == start));
    Int t = abs(m00 + m11);
    TFDL_CHECK(m10 % start.a == 0, "pell_fundamental: automorph shape");
    Int u = abs(m10 / start.a);
    TFDL_CHECK(t * t - d * u * u == 4 && u >= 1, "pell_fundamental: not an automorph");
    return {t, u};
}

QuadraticData quadratic_class_data(i64 d) {
    TFDL_CHECK(valid_positive_disc(d), "quadratic_class_data: need positive non-square discriminant");
    QuadraticData q;
    q.d = d;
    auto [t, u] = pell_fundamental(d);
    q.pell_t = t;
    q.pell_u = u;
    q.class_number = static_cast<int>(reduced_form_cycles(d).size());
    TFDL_CHECK(q.class_number >= 1, "quadratic_class_data: empty form cycle set");
    // log((t + u sqrt d)/2) without overflow: t + u sqrt d = t (1 + y) with
    // y = u sqrt(d) / t computed in log space
    double logt = log_mpz(t);
    double y = std::exp(log_mpz(u) + 0.5 * std::log(static_cast<double>(d)) - logt);
    q.log_eps = logt + std::log1p(y) - M_LN2;
    return q;
}

}  // namespace tfdl
