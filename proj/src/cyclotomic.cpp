#include "feasichar/cyclotomic.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace feasichar {

namespace {

long gcd_ll(long a, long b) {
    while (b) {
        long t = a % b;
        a = b;
        b = t;
    }
    return a < 0 ? -a : a;
}

long lcm_ll(long a, long b) { return a / gcd_ll(a, b) * b; }

// exact division of polynomials with integer coefficients (b monic-ish: the
// leading coefficient of every cyclotomic polynomial is 1)
std::vector<Integer> poly_divexact(std::vector<Integer> a, const std::vector<Integer>& b) {
    std::vector<Integer> out(a.size() - b.size() + 1, Integer(0));
    for (long i = (long)a.size() - 1; i >= (long)b.size() - 1; --i) {
        Integer c = a[i];
        if (c != 0) {
            long k = i - ((long)b.size() - 1);
            out[k] = c;
            for (size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
        }
    }
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return out;
}

std::mutex g_cache_mutex;

}  // namespace

long Cyclotomic::phi(long n) {
    long r = 1, m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            r *= p - 1;
            m /= p;
            while (m % p == 0) {
                r *= p;
                m /= p;
            }
        }
    }
    if (m > 1) r *= m - 1;
    return r;
}

const std::vector<Integer>& Cyclotomic::cyclotomic_polynomial(long n) {
    static std::unordered_map<long, std::vector<Integer>> cache;
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::function<const std::vector<Integer>&(long)> get = [&](long m) -> const std::vector<Integer>& {
        auto jt = cache.find(m);
        if (jt != cache.end()) return jt->second;
        std::vector<Integer> poly(m + 1, Integer(0));
        poly[0] = -1;
        poly[m] = 1;
        for (long d = 1; d < m; ++d)
            if (m % d == 0) poly = poly_divexact(std::move(poly), get(d));
        return cache.emplace(m, std::move(poly)).first->second;
    };
    return get(n);
}

namespace {

// reduce an exponent map at conductor n to coordinates over the power basis
std::vector<Integer> reduce_mod_phi(long n, const std::map<long, Integer>& exps) {
    const auto& Phi = Cyclotomic::cyclotomic_polynomial(n);
    long d = (long)Phi.size() - 1;
    std::vector<Integer> poly(std::max<long>(n, d + 1), Integer(0));
    for (const auto& [e, c] : exps) {
        long ee = ((e % n) + n) % n;
        poly[ee] += c;
    }
    for (long i = (long)poly.size() - 1; i >= d; --i) {
        Integer c = poly[i];
        if (c != 0) {
            for (long j = 0; j <= d; ++j) poly[i - d + j] -= c * Phi[j];
        }
    }
    poly.resize(d);
    return poly;
}

// columns: coordinates at conductor n of zeta_d^j for j < phi(d)
const std::vector<std::vector<Integer>>& embed_matrix(long d, long n) {
    static std::map<std::pair<long, long>, std::vector<std::vector<Integer>>> cache;
    static std::mutex m;
    std::lock_guard<std::mutex> lock(m);
    auto key = std::make_pair(d, n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<Integer>> cols;
    long pd = Cyclotomic::phi(d);
    for (long j = 0; j < pd; ++j) {
        std::map<long, Integer> e;
        e[j * (n / d) % n] = 1;
        cols.push_back(reduce_mod_phi(n, e));
    }
    return cache.emplace(key, std::move(cols)).first->second;
}

// rational (num, den) pair used only inside the lowering solver
struct Rat {
    Integer num, den;
    Rat() : num(0), den(1) {}
    Rat(Integer n) : num(std::move(n)), den(1) {}
    Rat(Integer n, Integer d) : num(std::move(n)), den(std::move(d)) { norm(); }
    void norm() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        Integer g = boost::multiprecision::gcd(num < 0 ? Integer(-num) : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }
    Rat operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
    Rat operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
    Rat operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
    Rat operator/(const Rat& o) const { return Rat(num * o.den, den * o.num); }
    bool is_zero() const { return num == 0; }
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
};

// if the value (canonical coords at conductor n) lies in Q(zeta_d), return its
// coordinates there
bool try_lower(const std::vector<Integer>& coeffs, long n, long d, std::vector<Integer>& out) {
    const auto& cols = embed_matrix(d, n);
    long rows = (long)coeffs.size();
    long ncols = (long)cols.size();
    std::vector<std::vector<Rat>> aug(rows, std::vector<Rat>(ncols + 1));
    for (long r = 0; r < rows; ++r) {
        for (long c = 0; c < ncols; ++c) aug[r][c] = Rat(cols[c][r]);
        aug[r][ncols] = Rat(coeffs[r]);
    }
    std::vector<long> piv(ncols, -1);
    long r = 0;
    for (long c = 0; c < ncols && r < rows; ++c) {
        long pr = -1;
        for (long i = r; i < rows; ++i)
            if (!aug[i][c].is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(aug[r], aug[pr]);
        Rat inv = Rat(Integer(1)) / aug[r][c];
        for (long j = 0; j <= ncols; ++j) aug[r][j] = aug[r][j] * inv;
        for (long i = 0; i < rows; ++i) {
            if (i != r && !aug[i][c].is_zero()) {
                Rat f = aug[i][c];
                for (long j = 0; j <= ncols; ++j) aug[i][j] = aug[i][j] - f * aug[r][j];
            }
        }
        piv[c] = r;
        ++r;
    }
    std::vector<Rat> w(ncols);
    for (long c = 0; c < ncols; ++c)
        if (piv[c] >= 0) w[c] = aug[piv[c]][ncols];
    // verify the solution reproduces the value exactly
    for (long rr = 0; rr < rows; ++rr) {
        Rat s;
        for (long c = 0; c < ncols; ++c)
            if (!w[c].is_zero()) s = s + w[c] * Rat(cols[c][rr]);
        if (!(s == Rat(coeffs[rr]))) return false;
    }
    out.clear();
    for (auto& x : w) {
        if (x.den != 1) return false;
        out.push_back(x.num);
    }
    return true;
}

}  // namespace

Cyclotomic Cyclotomic::make_canonical(long n, const std::map<long, Integer>& exps) {
    auto coeffs = reduce_mod_phi(n, exps);
    bool zero = std::all_of(coeffs.begin(), coeffs.end(), [](const Integer& c) { return c == 0; });
    if (zero) return Cyclotomic();
    long cur = n;
    // divisors of n not congruent to 2 mod 4, ascending
    for (long d = 1; d < cur; ++d) {
        if (cur % d != 0 || d % 4 == 2) continue;
        std::vector<Integer> low;
        if (try_lower(coeffs, cur, d, low)) return Cyclotomic(d, std::move(low));
    }
    if (cur % 4 == 2) {
        // never canonical: Q(zeta_{2m}) = Q(zeta_m) for odd m, so some proper
        // divisor above must have matched
        throw std::logic_error("cyclotomic canonicalization failed");
    }
    return Cyclotomic(cur, std::move(coeffs));
}

Cyclotomic Cyclotomic::root_of_unity(long n, long k) {
    if (n <= 0) throw std::invalid_argument("root_of_unity: n must be positive");
    std::map<long, Integer> e;
    e[((k % n) + n) % n] = 1;
    return make_canonical(n, e);
}

Cyclotomic Cyclotomic::from_exponents(long n, const std::map<long, Integer>& terms) {
    if (n <= 0) throw std::invalid_argument("from_exponents: n must be positive");
    return make_canonical(n, terms);
}

bool Cyclotomic::is_zero() const { return n_ == 1 && c_[0] == 0; }

const Integer& Cyclotomic::as_integer() const {
    if (n_ != 1) throw std::domain_error("cyclotomic value is not a rational integer");
    return c_[0];
}

std::vector<Integer> Cyclotomic::coords_at(long N) const {
    if (N % n_ != 0) throw std::invalid_argument("coords_at: conductor does not divide N");
    std::map<long, Integer> e;
    for (size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != 0) e[(long)k * (N / n_) % N] += c_[k];
    return reduce_mod_phi(N, e);
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    long N = lcm_ll(n_, o.n_);
    std::map<long, Integer> e;
    for (size_t k = 0; k < c_.size(); ++k)
        if (c_[k] != 0) e[(long)k * (N / n_) % N] += c_[k];
    for (size_t k = 0; k < o.c_.size(); ++k)
        if (o.c_[k] != 0) e[(long)k * (N / o.n_) % N] += o.c_[k];
    return make_canonical(N, e);
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    long N = lcm_ll(n_, o.n_);
    std::map<long, Integer> e;
    for (size_t a = 0; a < c_.size(); ++a) {
        if (c_[a] == 0) continue;
        for (size_t b = 0; b < o.c_.size(); ++b) {
            if (o.c_[b] == 0) continue;
            long exp = ((long)a * (N / n_) + (long)b * (N / o.n_)) % N;
            e[exp] += c_[a] * o.c_[b];
        }
    }
    return make_canonical(N, e);
}

bool Cyclotomic::operator<(const Cyclotomic& o) const {
    if (n_ != o.n_) return n_ < o.n_;
    return c_ < o.c_;
}

Cyclotomic Cyclotomic::galois(long k) const {
    long kk = ((k % n_) + n_) % n_;
    if (gcd_ll(kk, n_) != 1) throw std::invalid_argument("galois: index not coprime to conductor");
    std::map<long, Integer> e;
    for (size_t a = 0; a < c_.size(); ++a)
        if (c_[a] != 0) e[(long)a * kk % n_] += c_[a];
    return make_canonical(n_, e);
}

Cyclotomic Cyclotomic::complex_conjugate() const { return galois(n_ - 1 == 0 ? 1 : n_ - 1); }

std::string Cyclotomic::to_string() const {
    if (is_zero()) return "0";
    if (n_ == 1) return c_[0].str();
    std::ostringstream out;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k] == 0) continue;
        Integer mag = c_[k] < 0 ? Integer(-c_[k]) : c_[k];
        std::string body;
        if (k == 0)
            body = mag.str();
        else if (k == 1)
            body = mag.str() + "*z" + std::to_string(n_);
        else
            body = mag.str() + "*z" + std::to_string(n_) + "^" + std::to_string(k);
        if (first) {
            out << (c_[k] < 0 ? "-" : "") << body;
            first = false;
        } else {
            out << (c_[k] < 0 ? " - " : " + ") << body;
        }
    }
    return out.str();
}

Cyclotomic Cyclotomic::parse(const std::string& text) {
    // grammar: term (('+'|'-') term)*, term = int | int '*' root | root,
    // root = 'z' int ('^' int)?
    size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && isspace((unsigned char)text[i])) ++i;
    };
    auto parse_uint = [&]() -> Integer {
        skip();
        size_t s = i;
        while (i < text.size() && isdigit((unsigned char)text[i])) ++i;
        if (s == i) throw std::invalid_argument("cyclotomic parse: expected integer in '" + text + "'");
        return Integer(text.substr(s, i - s));
    };
    std::map<long, std::map<long, Integer>> by_conductor;  // n -> exponent map
    Integer const_term = 0;
    bool any = false;
    skip();
    while (i < text.size()) {
        int sign = 1;
        if (text[i] == '+') {
            ++i;
            skip();
        } else if (text[i] == '-') {
            sign = -1;
            ++i;
            skip();
        } else if (any) {
            throw std::invalid_argument("cyclotomic parse: expected +/- in '" + text + "'");
        }
        Integer coeff = 1;
        bool have_coeff = false;
        if (i < text.size() && isdigit((unsigned char)text[i])) {
            coeff = parse_uint();
            have_coeff = true;
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip();
            } else {
                const_term += sign * coeff;
                any = true;
                skip();
                continue;
            }
        }
        if (i >= text.size() || text[i] != 'z')
            throw std::invalid_argument("cyclotomic parse: expected root term in '" + text + "'");
        ++i;
        Integer nn = parse_uint();
        long n = (long)nn;
        long k = 1;
        skip();
        if (i < text.size() && text[i] == '^') {
            ++i;
            k = (long)parse_uint();
            skip();
        }
        by_conductor[n][((k % n) + n) % n] += sign * coeff;
        (void)have_coeff;
        any = true;
    }
    if (!any) throw std::invalid_argument("cyclotomic parse: empty value");
    Cyclotomic result(const_term);
    for (const auto& [n, exps] : by_conductor) result = result + make_canonical(n, exps);
    return result;
}

}  // namespace feasichar
