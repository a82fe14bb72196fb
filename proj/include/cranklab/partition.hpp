#pragma once

#include <gmpxx.h>

#include <functional>
#include <iosfwd>
#include <set>
#include <vector>

namespace cranklab {

// ---- single-partition statistics ----

struct PartitionStats {
    long n = 0;        // sum of parts
    long largest = 0;  // biggest part
    long length = 0;   // number of parts
    long ones = 0;     // o: number of parts equal to 1
    long big_parts = 0;// nu: number of parts strictly larger than o
    long crank = 0;    // largest if o == 0, else nu - o
    long rank = 0;     // largest - length
};

// parts may arrive in any order; throws std::invalid_argument on empty input
// or non-positive parts.
PartitionStats partition_stats(std::vector<long> parts);
long crank_of(const std::vector<long>& parts);
long rank_of(const std::vector<long>& parts);

// Enumerate all partitions of n (parts non-increasing). The callback sees
// each partition once. cap guards runtime: p(45) is ~9e4, p(100) would be 2e8.
void for_each_partition(long n, const std::function<void(const std::vector<long>&)>& fn,
                        long cap = 45);

// p(0..n_max) by the pentagonal-number recurrence, exact integers.
std::vector<mpz_class> partition_counts(long n_max);

// ---- exact crank tables ----

// M(m,n) for |m| <= n; rows[n] has 2n+1 entries indexed by m+n.
struct CrankTable {
    long n_max = 0;
    std::vector<std::vector<mpz_class>> rows;
    const mpz_class& count(long m, long n) const; // zero outside the stored range
    mpz_class row_sum(long n) const;
};

// M(r,Q;n) with crank residues mod Q; rows[n][r].
struct ResidueTable {
    long Q = 0;
    long n_max = 0;
    std::vector<std::vector<mpz_class>> rows;
    const mpz_class& count(long r, long n) const; // r reduced mod Q
};

// Both tables expand the crank generating function
//   prod_j (1-q^j) / ((1-w q^j)(1-w^{-1} q^j))
// by one multiply pass and two divide passes per j, then patch row n=1:
// the product's n=1 coefficients are (w^{-1} - 1 + w) while the single
// partition of 1 has crank -1 only. Row sums equal p(n) afterwards.
CrankTable build_crank_table(long n_max, long cap = 500);
ResidueTable build_residue_table(long Q, long n_max, long cap = 5000);

// Distinct crank values among partitions of n, by enumeration.
std::set<long> crank_value_set(long n, long cap = 45);

// ---- integer cyclotomic arithmetic ----

// Element of Z[x]/(x^Q - 1); exponents always reduced mod Q.
struct CyclotomicInt {
    long Q = 1;
    std::vector<mpz_class> c;
    explicit CyclotomicInt(long Q_) : Q(Q_), c(static_cast<size_t>(Q_)) {}
    void add_term(long e, const mpz_class& z);
    CyclotomicInt shifted(long e) const; // multiply by x^e
};
CyclotomicInt operator+(const CyclotomicInt& a, const CyclotomicInt& b);
bool operator==(const CyclotomicInt& a, const CyclotomicInt& b);

// Coefficients of the Q-th cyclotomic polynomial, ascending degree.
std::vector<mpz_class> cyclotomic_polynomial(long Q);

// Value of v at x = zeta_Q when that value is a rational integer, i.e. the
// remainder of v mod Phi_Q must be a constant; throws consistency_error
// otherwise.
mpz_class rational_integer_value(const CyclotomicInt& v);

// A~(j/Q; n) = sum_m M(m,n) zeta^{jm} = sum_r M(r,Q;n) zeta^{jr}, exact.
CyclotomicInt a_tilde_exact(const ResidueTable& t, long j, long n);

// (1/Q) sum_j zeta^{-jr} A~(j/Q;n): the root-of-unity filter. Must equal the
// table entry; the division by Q is checked exact.
mpz_class filter_reconstruct(const ResidueTable& t, long r, long n);

// ---- CSV emitters ----
// residue tables: header n,r,count; crank tables: header n,m,count.
void write_residue_csv(std::ostream& os, const ResidueTable& t);
void write_crank_csv(std::ostream& os, const CrankTable& t);

} // namespace cranklab
