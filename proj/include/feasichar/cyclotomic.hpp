#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace feasichar {

using Integer = boost::multiprecision::cpp_int;

/// Exact element of Z[zeta_n], kept in canonical form: the conductor is the
/// smallest n (never 2 mod 4) with the value in Q(zeta_n), and the
/// coefficients are the coordinates over the power basis
/// zeta^0, ..., zeta^{phi(n)-1} after reduction by the n-th cyclotomic
/// polynomial. Equality of values is equality of representations.
class Cyclotomic {
public:
    Cyclotomic() : n_(1), c_{0} {}
    explicit Cyclotomic(const Integer& v) : n_(1), c_{v} {}
    explicit Cyclotomic(long long v) : n_(1), c_{Integer(v)} {}

    static Cyclotomic root_of_unity(long n, long k);
    /// sum of coeff * zeta_n^exp over the given exponent map
    static Cyclotomic from_exponents(long n, const std::map<long, Integer>& terms);

    long conductor() const { return n_; }
    const std::vector<Integer>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_integer() const { return n_ == 1; }
    const Integer& as_integer() const;

    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic operator-() const;
    bool operator==(const Cyclotomic& o) const { return n_ == o.n_ && c_ == o.c_; }
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }
    bool operator<(const Cyclotomic& o) const;  // arbitrary total order for maps

    /// Galois automorphism zeta -> zeta^k, gcd(k, conductor) required = 1.
    Cyclotomic galois(long k) const;
    Cyclotomic complex_conjugate() const;

    /// coordinates of the value inside Q(zeta_N) for any N with conductor | N
    std::vector<Integer> coords_at(long N) const;

    std::string to_string() const;
    static Cyclotomic parse(const std::string& text);

    static long phi(long n);
    static const std::vector<Integer>& cyclotomic_polynomial(long n);

private:
    Cyclotomic(long n, std::vector<Integer> c) : n_(n), c_(std::move(c)) {}
    static Cyclotomic make_canonical(long n, const std::map<long, Integer>& exps);

    long n_;
    std::vector<Integer> c_;
};

}  // namespace feasichar
