#pragma once
// Exact scalars. Int is an arbitrary-precision integer; Rat keeps an int64
// numerator/denominator pair and promotes to a big rational only on overflow.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace fltz {

using Int = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

class Rat {
public:
    Rat() = default;
    Rat(int v) : n_(v) {}
    Rat(long v) : n_(v) {}
    Rat(long long v) : n_(v) {}
    Rat(std::int64_t num, std::int64_t den);
    explicit Rat(const Int& v);
    Rat(const Int& num, const Int& den);
    explicit Rat(const BigRat& v);

    // "p/q" or "p"; throws std::invalid_argument on malformed text
    static Rat parse(const std::string& s);

    Int num() const;
    Int den() const;
    bool is_integer() const;
    int sign() const;
    BigRat big() const;

    Rat operator-() const;
    Rat& operator+=(const Rat& o);
    Rat& operator-=(const Rat& o);
    Rat& operator*=(const Rat& o);
    Rat& operator/=(const Rat& o);
    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b);
    friend bool operator<(const Rat& a, const Rat& b);
    friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
    friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
    friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
    friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

    std::string str() const;

private:
    void set_big(BigRat v);
    bool small() const { return !big_; }

    std::int64_t n_ = 0;
    std::int64_t d_ = 1;
    std::shared_ptr<const BigRat> big_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

Int floor(const Rat& r);
Int ceil(const Rat& r);
Rat abs(const Rat& r);
long to_long(const Int& v);   // throws std::overflow_error if it does not fit
long to_long(const Rat& r);   // integral rationals only

using QVec = std::vector<Rat>;
using ZVec = std::vector<long>;

Rat dot(const QVec& a, const QVec& b);
Rat dot(const QVec& a, const ZVec& b);
QVec to_q(const ZVec& v);
std::string str(const QVec& v);

}  // namespace fltz
