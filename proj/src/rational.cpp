#include "fltz/rational.hpp"

#include <numeric>
#include <ostream>
#include <stdexcept>

namespace fltz {

namespace {

bool fits(const Int& v) {
    return v >= std::numeric_limits<std::int64_t>::min() + 1 &&
           v <= std::numeric_limits<std::int64_t>::max();
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    return std::gcd(a, b);
}

}  // namespace

Rat::Rat(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("zero denominator");
    if (num == INT64_MIN || den == INT64_MIN) {
        set_big(BigRat(Int(num), Int(den)));
        return;
    }
    if (den < 0) {
        num = -num;
        den = -den;
    }
    std::int64_t g = gcd64(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    n_ = num;
    d_ = den;
}

Rat::Rat(const Int& v) {
    if (fits(v))
        n_ = static_cast<std::int64_t>(v);
    else
        set_big(BigRat(v));
}

Rat::Rat(const Int& num, const Int& den) {
    if (den == 0) throw std::domain_error("zero denominator");
    set_big(BigRat(num, den));
}

Rat::Rat(const BigRat& v) { set_big(v); }

void Rat::set_big(BigRat v) {
    const Int& nu = boost::multiprecision::numerator(v);
    const Int& de = boost::multiprecision::denominator(v);
    if (fits(nu) && fits(de)) {
        n_ = static_cast<std::int64_t>(nu);
        d_ = static_cast<std::int64_t>(de);
        big_.reset();
    } else {
        big_ = std::make_shared<const BigRat>(std::move(v));
    }
}

Rat Rat::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::domain_error&) {
        throw std::invalid_argument("bad rational: " + s);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational: " + s);
    }
}

Int Rat::num() const { return small() ? Int(n_) : boost::multiprecision::numerator(*big_); }
Int Rat::den() const { return small() ? Int(d_) : boost::multiprecision::denominator(*big_); }
bool Rat::is_integer() const { return small() ? d_ == 1 : den() == 1; }
int Rat::sign() const {
    if (small()) return (n_ > 0) - (n_ < 0);
    return big_->sign();
}
BigRat Rat::big() const { return small() ? BigRat(Int(n_), Int(d_)) : *big_; }

Rat Rat::operator-() const {
    if (small()) return Rat(-n_, d_);
    return Rat(BigRat(-*big_));
}

Rat& Rat::operator+=(const Rat& o) {
    if (small() && o.small()) {
        if (d_ == o.d_) {
            std::int64_t s;
            if (!__builtin_add_overflow(n_, o.n_, &s)) return *this = Rat(s, d_);
        } else {
            std::int64_t a, b, s, den;
            if (!__builtin_mul_overflow(n_, o.d_, &a) && !__builtin_mul_overflow(o.n_, d_, &b) &&
                !__builtin_add_overflow(a, b, &s) && !__builtin_mul_overflow(d_, o.d_, &den))
                return *this = Rat(s, den);
        }
    }
    set_big(big() + o.big());
    return *this;
}

Rat& Rat::operator-=(const Rat& o) { return *this += -o; }

Rat& Rat::operator*=(const Rat& o) {
    if (small() && o.small()) {
        // cross-reduce first to keep the fast path alive
        std::int64_t g1 = gcd64(n_, o.d_), g2 = gcd64(o.n_, d_);
        if (g1 == 0) g1 = 1;
        if (g2 == 0) g2 = 1;
        std::int64_t a = n_ / g1, b = o.n_ / g2, c = d_ / g2, e = o.d_ / g1, nn, dd;
        if (!__builtin_mul_overflow(a, b, &nn) && !__builtin_mul_overflow(c, e, &dd))
            return *this = Rat(nn, dd);
    }
    set_big(big() * o.big());
    return *this;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.sign() == 0) throw std::domain_error("division by zero");
    if (o.small()) return *this *= Rat(o.d_, o.n_);
    set_big(big() / o.big());
    return *this;
}

bool operator==(const Rat& a, const Rat& b) {
    if (a.small() && b.small()) return a.n_ == b.n_ && a.d_ == b.d_;
    return a.big() == b.big();
}

bool operator<(const Rat& a, const Rat& b) {
    if (a.small() && b.small()) {
        if (a.d_ == b.d_) return a.n_ < b.n_;
        __int128 l = static_cast<__int128>(a.n_) * b.d_;
        __int128 r = static_cast<__int128>(b.n_) * a.d_;
        return l < r;
    }
    return a.big() < b.big();
}

std::string Rat::str() const {
    if (small()) return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
    Int d = den();
    return d == 1 ? num().str() : num().str() + "/" + d.str();
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

Int floor(const Rat& r) {
    Int n = r.num(), d = r.den();
    Int q = n / d;  // truncates toward zero
    if (n < 0 && q * d != n) q -= 1;
    return q;
}

Int ceil(const Rat& r) { return -floor(-r); }

Rat abs(const Rat& r) { return r.sign() < 0 ? -r : r; }

long to_long(const Int& v) {
    if (v > std::numeric_limits<long>::max() || v < std::numeric_limits<long>::min())
        throw std::overflow_error("integer does not fit in long");
    return static_cast<long>(v);
}

long to_long(const Rat& r) {
    if (!r.is_integer()) throw std::domain_error("not an integer: " + r.str());
    return to_long(r.num());
}

Rat dot(const QVec& a, const QVec& b) {
    Rat s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Rat dot(const QVec& a, const ZVec& b) {
    Rat s;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (b[i] != 0) s += a[i] * Rat(b[i]);
    return s;
}

QVec to_q(const ZVec& v) {
    QVec q;
    q.reserve(v.size());
    for (long x : v) q.emplace_back(x);
    return q;
}

std::string str(const QVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].str();
    }
    return s + ")";
}

}  // namespace fltz
