#pragma once
// Constructible functions: stalkwise Euler characteristics, convolution with
// respect to Euler integration with compact supports, and the Morelli map.

#include "fltz/ccc.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace fltz {

struct ConstructibleFunction {
    std::shared_ptr<const StrataPoset> strata;
    std::vector<long> values;  // one per stratum

    static ConstructibleFunction zero(std::shared_ptr<const StrataPoset> strata);
    // 0 outside the window
    long at(const QVec& x) const;
    std::vector<int> support() const;
    bool supported_in_core() const;
    ConstructibleFunction& operator+=(const ConstructibleFunction& o);  // same strata required
    ConstructibleFunction scaled(long k) const;
    friend bool operator==(const ConstructibleFunction& a, const ConstructibleFunction& b) {
        return a.strata == b.strata && a.values == b.values;
    }

    std::string to_json() const;  // {"strata":[{"signs","value"}]}
    std::string to_csv() const;   // one row per stratum: sample coordinates, dim, value
};

ConstructibleFunction local_euler(const SheafDiagram& F);

// (f * g)(z) = integral of f(x) g(z - x) dchi_c, evaluated at one sample per
// stratum of `target`. Throws "non-compact support" unless f and g vanish off
// their trusted cores and "window overflow" if the sum of their supports does
// not fit inside the target window. The result is constant on target strata
// when the target arrangement contains every wall of the convolution (the
// FLTZ arrangement does, for inputs constructible along it).
ConstructibleFunction euler_convolution(const ConstructibleFunction& f, const ConstructibleFunction& g,
                                        std::shared_ptr<const StrataPoset> target);
ConstructibleFunction euler_convolution_serial(const ConstructibleFunction& f, const ConstructibleFunction& g,
                                               std::shared_ptr<const StrataPoset> target);
// the integral at a single point
long euler_convolution_at(const ConstructibleFunction& f, const ConstructibleFunction& g, const QVec& z);

using DivisorClass = std::vector<std::pair<Divisor, long>>;  // formal Z-combination

// Window whose trusted core holds the support of every kappa(D) in the class.
Window morelli_window(const Fan& fan, const DivisorClass& cls);
ConstructibleFunction morelli_map(const Fan& fan, const DivisorClass& cls, std::shared_ptr<const StrataPoset> strata);
ConstructibleFunction morelli_map(const Fan& fan, const DivisorClass& cls);  // window from morelli_window

}  // namespace fltz
