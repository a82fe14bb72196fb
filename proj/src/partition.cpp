#include "cranklab/partition.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "cranklab/errors.hpp"

namespace cranklab {

PartitionStats partition_stats(std::vector<long> parts) {
    if (parts.empty()) throw std::invalid_argument("partition must be non-empty");
    for (long p : parts)
        if (p <= 0) throw std::invalid_argument("partition parts must be positive");
    std::sort(parts.begin(), parts.end(), std::greater<long>());

    PartitionStats st;
    st.largest = parts.front();
    st.length = static_cast<long>(parts.size());
    for (long p : parts) {
        st.n += p;
        if (p == 1) ++st.ones;
    }
    for (long p : parts)
        if (p > st.ones) ++st.big_parts;
    st.crank = (st.ones == 0) ? st.largest : st.big_parts - st.ones;
    st.rank = st.largest - st.length;
    return st;
}

long crank_of(const std::vector<long>& parts) { return partition_stats(parts).crank; }
long rank_of(const std::vector<long>& parts) { return partition_stats(parts).rank; }

namespace {
void enumerate(long remaining, long max_part, std::vector<long>& cur,
               const std::function<void(const std::vector<long>&)>& fn) {
    if (remaining == 0) {
        fn(cur);
        return;
    }
    for (long p = std::min(max_part, remaining); p >= 1; --p) {
        cur.push_back(p);
        enumerate(remaining - p, p, cur, fn);
        cur.pop_back();
    }
}
} // namespace

void for_each_partition(long n, const std::function<void(const std::vector<long>&)>& fn,
                        long cap) {
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (n > cap) throw capacity_error("enumeration cap exceeded: n = " + std::to_string(n) +
                                      " > cap = " + std::to_string(cap));
    std::vector<long> cur;
    enumerate(n, n, cur, fn);
}

std::vector<mpz_class> partition_counts(long n_max) {
    if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
    std::vector<mpz_class> p(static_cast<size_t>(n_max) + 1);
    p[0] = 1;
    for (long n = 1; n <= n_max; ++n) {
        mpz_class acc = 0;
        // generalized pentagonal numbers k(3k-1)/2 for k = 1,-1,2,-2,...
        for (long k = 1;; ++k) {
            long g1 = k * (3 * k - 1) / 2;
            long g2 = k * (3 * k + 1) / 2;
            if (g1 > n && g2 > n) break;
            int sgn = (k % 2 == 1) ? 1 : -1;
            if (g1 <= n) {
                if (sgn > 0) acc += p[n - g1]; else acc -= p[n - g1];
            }
            if (g2 <= n) {
                if (sgn > 0) acc += p[n - g2]; else acc -= p[n - g2];
            }
        }
        p[n] = acc;
    }
    return p;
}

// ---- crank table DP ----

namespace {
const mpz_class kZero = 0;
}

const mpz_class& CrankTable::count(long m, long n) const {
    if (n < 0 || n > n_max) return kZero;
    if (m < -n || m > n) return kZero;
    return rows[static_cast<size_t>(n)][static_cast<size_t>(m + n)];
}

mpz_class CrankTable::row_sum(long n) const {
    mpz_class acc = 0;
    for (const auto& v : rows[static_cast<size_t>(n)]) acc += v;
    return acc;
}

CrankTable build_crank_table(long n_max, long cap) {
    if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
    if (n_max > cap)
        throw capacity_error("dense crank table cap exceeded: n_max = " + std::to_string(n_max) +
                             " > cap = " + std::to_string(cap));
    CrankTable t;
    t.n_max = n_max;
    t.rows.resize(static_cast<size_t>(n_max) + 1);
    for (long n = 0; n <= n_max; ++n)
        t.rows[static_cast<size_t>(n)].assign(static_cast<size_t>(2 * n + 1), mpz_class(0));
    t.rows[0][0] = 1;

    // Every factor shifts m by at most 1 per unit of n, so |m| <= n holds for
    // all intermediate coefficients and the ragged rows never lose terms.
    auto at = [&](long n, long m) -> mpz_class& {
        return t.rows[static_cast<size_t>(n)][static_cast<size_t>(m + n)];
    };
    auto get = [&](long n, long m) -> const mpz_class& {
        if (m < -n || m > n) return kZero;
        return t.rows[static_cast<size_t>(n)][static_cast<size_t>(m + n)];
    };

    for (long j = 1; j <= n_max; ++j) {
        // multiply by (1 - q^j): descending n so rows[n-j] is still the old value
        for (long n = n_max; n >= j; --n)
            for (long m = -n; m <= n; ++m)
                if (m >= -(n - j) && m <= n - j) at(n, m) -= get(n - j, m);
        // divide by (1 - w q^j): ascending n, new values feed forward
        for (long n = j; n <= n_max; ++n)
            for (long m = -n; m <= n; ++m)
                at(n, m) += get(n - j, m - 1);
        // divide by (1 - w^{-1} q^j)
        for (long n = j; n <= n_max; ++n)
            for (long m = -n; m <= n; ++m)
                at(n, m) += get(n - j, m + 1);
    }

    // n=1 anomaly: product row is (1,-1,1) at m=(-1,0,1); the true counts
    // put the single partition of 1 at crank -1.
    if (n_max >= 1) {
        t.rows[1][0] = 1; // m = -1
        t.rows[1][1] = 0;
        t.rows[1][2] = 0;
    }
    return t;
}

const mpz_class& ResidueTable::count(long r, long n) const {
    if (n < 0 || n > n_max) return kZero;
    long rr = ((r % Q) + Q) % Q;
    return rows[static_cast<size_t>(n)][static_cast<size_t>(rr)];
}

ResidueTable build_residue_table(long Q, long n_max, long cap) {
    if (Q < 2) throw std::invalid_argument("Q must be >= 2");
    if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
    if (n_max > cap)
        throw capacity_error("residue table cap exceeded: n_max = " + std::to_string(n_max) +
                             " > cap = " + std::to_string(cap));
    ResidueTable t;
    t.Q = Q;
    t.n_max = n_max;
    t.rows.assign(static_cast<size_t>(n_max) + 1,
                  std::vector<mpz_class>(static_cast<size_t>(Q), mpz_class(0)));
    t.rows[0][0] = 1;

    // Same three passes as the dense table, with the crank exponent reduced
    // mod Q on the fly (w^Q = 1).
    for (long j = 1; j <= n_max; ++j) {
        for (long n = n_max; n >= j; --n) {
            auto& row = t.rows[static_cast<size_t>(n)];
            const auto& src = t.rows[static_cast<size_t>(n - j)];
            for (long r = 0; r < Q; ++r) row[static_cast<size_t>(r)] -= src[static_cast<size_t>(r)];
        }
        for (long n = j; n <= n_max; ++n) {
            auto& row = t.rows[static_cast<size_t>(n)];
            const auto& src = t.rows[static_cast<size_t>(n - j)];
            for (long r = 0; r < Q; ++r)
                row[static_cast<size_t>(r)] += src[static_cast<size_t>((r - 1 + Q) % Q)];
        }
        for (long n = j; n <= n_max; ++n) {
            auto& row = t.rows[static_cast<size_t>(n)];
            const auto& src = t.rows[static_cast<size_t>(n - j)];
            for (long r = 0; r < Q; ++r)
                row[static_cast<size_t>(r)] += src[static_cast<size_t>((r + 1) % Q)];
        }
    }

    if (n_max >= 1) {
        for (long r = 0; r < Q; ++r) t.rows[1][static_cast<size_t>(r)] = 0;
        t.rows[1][static_cast<size_t>(Q - 1)] = 1; // crank -1 mod Q
    }
    return t;
}

std::set<long> crank_value_set(long n, long cap) {
    std::set<long> vals;
    for_each_partition(n, [&](const std::vector<long>& parts) {
        if (!parts.empty()) vals.insert(crank_of(parts));
    }, cap);
    return vals;
}

// ---- cyclotomic arithmetic ----

void CyclotomicInt::add_term(long e, const mpz_class& z) {
    long ee = ((e % Q) + Q) % Q;
    c[static_cast<size_t>(ee)] += z;
}

CyclotomicInt CyclotomicInt::shifted(long e) const {
    CyclotomicInt out(Q);
    long ee = ((e % Q) + Q) % Q;
    for (long i = 0; i < Q; ++i)
        out.c[static_cast<size_t>((i + ee) % Q)] = c[static_cast<size_t>(i)];
    return out;
}

CyclotomicInt operator+(const CyclotomicInt& a, const CyclotomicInt& b) {
    if (a.Q != b.Q) throw std::invalid_argument("cyclotomic order mismatch");
    CyclotomicInt out(a.Q);
    for (long i = 0; i < a.Q; ++i)
        out.c[static_cast<size_t>(i)] = a.c[static_cast<size_t>(i)] + b.c[static_cast<size_t>(i)];
    return out;
}

bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
    return a.Q == b.Q && a.c == b.c;
}

namespace {
// Exact division of integer polynomials (divisor monic), ascending coeffs.
std::vector<mpz_class> poly_divide_exact(std::vector<mpz_class> num,
                                         const std::vector<mpz_class>& den) {
    long dn = static_cast<long>(num.size()) - 1;
    long dd = static_cast<long>(den.size()) - 1;
    std::vector<mpz_class> q(static_cast<size_t>(dn - dd) + 1);
    for (long i = dn - dd; i >= 0; --i) {
        mpz_class coef = num[static_cast<size_t>(i + dd)];
        q[static_cast<size_t>(i)] = coef;
        for (long j = 0; j <= dd; ++j)
            num[static_cast<size_t>(i + j)] -= coef * den[static_cast<size_t>(j)];
    }
    for (const auto& r : num)
        if (r != 0) throw consistency_error("polynomial division not exact");
    return q;
}
} // namespace

std::vector<mpz_class> cyclotomic_polynomial(long Q) {
    if (Q < 1) throw std::invalid_argument("Q must be >= 1");
    // Phi_d for every divisor d of Q, built up from x^d - 1 by dividing out
    // the proper-divisor cyclotomics.
    std::vector<std::pair<long, std::vector<mpz_class>>> known;
    for (long d = 1; d <= Q; ++d) {
        if (Q % d != 0) continue;
        std::vector<mpz_class> poly(static_cast<size_t>(d) + 1);
        poly[0] = -1;
        poly[static_cast<size_t>(d)] = 1;
        for (const auto& [e, phi] : known)
            if (d % e == 0) poly = poly_divide_exact(std::move(poly), phi);
        known.emplace_back(d, std::move(poly));
    }
    return known.back().second;
}

mpz_class rational_integer_value(const CyclotomicInt& v) {
    std::vector<mpz_class> rem(v.c.begin(), v.c.end());
    const std::vector<mpz_class> phi = cyclotomic_polynomial(v.Q);
    long dd = static_cast<long>(phi.size()) - 1;
    // reduce mod the monic Phi_Q
    for (long i = static_cast<long>(rem.size()) - 1; i >= dd; --i) {
        mpz_class coef = rem[static_cast<size_t>(i)];
        if (coef == 0) continue;
        for (long j = 0; j <= dd; ++j)
            rem[static_cast<size_t>(i - dd + j)] -= coef * phi[static_cast<size_t>(j)];
    }
    for (long i = 1; i < dd; ++i)
        if (rem[static_cast<size_t>(i)] != 0)
            throw consistency_error("cyclotomic value is not a rational integer");
    return rem[0];
}

CyclotomicInt a_tilde_exact(const ResidueTable& t, long j, long n) {
    CyclotomicInt out(t.Q);
    for (long r = 0; r < t.Q; ++r)
        out.add_term(j * r, t.count(r, n));
    return out;
}

mpz_class filter_reconstruct(const ResidueTable& t, long r, long n) {
    CyclotomicInt acc(t.Q);
    for (long j = 0; j < t.Q; ++j) {
        CyclotomicInt aj = a_tilde_exact(t, j, n);
        acc = acc + aj.shifted(-j * r);
    }
    mpz_class val = rational_integer_value(acc);
    if (val % t.Q != 0)
        throw consistency_error("filter sum not divisible by Q");
    return val / t.Q;
}

void write_residue_csv(std::ostream& os, const ResidueTable& t) {
    os << "n,r,count\n";
    for (long n = 0; n <= t.n_max; ++n)
        for (long r = 0; r < t.Q; ++r)
            os << n << ',' << r << ',' << t.count(r, n).get_str() << '\n';
}

void write_crank_csv(std::ostream& os, const CrankTable& t) {
    os << "n,m,count\n";
    for (long n = 0; n <= t.n_max; ++n)
        for (long m = -n; m <= n; ++m)
            os << n << ',' << m << ',' << t.count(m, n).get_str() << '\n';
}

} // namespace cranklab
