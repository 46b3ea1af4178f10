#include "fltz/strata.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fltz {

Window Window::cube(int n, const Rat& lo, const Rat& hi) { return Window{QVec(n, lo), QVec(n, hi)}; }

bool Window::contains(const QVec& x) const {
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] < x[i] && x[i] < hi[i])) return false;
    return true;
}

bool Window::core_contains(const QVec& x) const {
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] + Rat(1) <= x[i] && x[i] <= hi[i] - Rat(1))) return false;
    return true;
}

Window Window::translated(const ZVec& m) const {
    Window w = *this;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        w.lo[i] += Rat(m[i]);
        w.hi[i] += Rat(m[i]);
    }
    return w;
}

Window Window::grown(const Rat& r) const {
    Window w = *this;
    for (std::size_t i = 0; i < lo.size(); ++i) {
        w.lo[i] -= r;
        w.hi[i] += r;
    }
    return w;
}

namespace {

// normalize so the first nonzero coordinate is positive
std::pair<ZVec, Rat> canonical(ZVec nu, Rat off) {
    for (long x : nu) {
        if (x == 0) continue;
        if (x < 0) {
            for (auto& y : nu) y = -y;
            off = -off;
        }
        break;
    }
    return {nu, off};
}

// range of <y,nu> over the open box: (lo, hi)
std::pair<Rat, Rat> functional_range(const ZVec& nu, const Window& w) {
    Rat a, b;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        Rat p = Rat(nu[i]) * w.lo[i], q = Rat(nu[i]) * w.hi[i];
        a += std::min(p, q);
        b += std::max(p, q);
    }
    return {a, b};
}

}  // namespace

Arrangement fltz_arrangement(const Fan& fan, const Window& window, const std::vector<std::pair<ZVec, Rat>>& extra) {
    const int n = fan.rank();
    if (window.rank() != n || static_cast<int>(window.hi.size()) != n) throw std::invalid_argument("window rank mismatch");
    for (int i = 0; i < n; ++i)
        if (!(window.lo[i] < window.hi[i])) throw std::invalid_argument("empty window");
    std::map<std::pair<ZVec, Rat>, bool> hs;
    for (const auto& nu : fan.rays()) {
        auto [a, b] = functional_range(nu, window);
        for (Int k = floor(a) + 1; Rat(k) < b; ++k) {
            auto key = canonical(nu, Rat(k));
            hs[key] = true;
        }
    }
    for (const auto& [nu, off] : extra) {
        if (static_cast<int>(nu.size()) != n) throw std::invalid_argument("extra hyperplane of wrong rank");
        auto [a, b] = functional_range(nu, window);
        if (!(a < off && off < b)) continue;
        auto key = canonical(nu, off);
        if (!hs.count(key)) hs[key] = false;
    }
    Arrangement A;
    A.rank = n;
    A.window = window;
    for (const auto& [key, f] : hs) A.hyperplanes.push_back(ArrHyperplane{key.first, key.second, f});
    return A;
}

StrataPoset::StrataPoset(Arrangement A) : arr_(std::move(A)) {
    const int n = arr_.rank;
    const int m = static_cast<int>(arr_.hyperplanes.size());
    std::vector<Hyperplane> H;
    std::vector<std::uint8_t> allowed;
    for (const auto& h : arr_.hyperplanes) {
        H.push_back(Hyperplane{to_q(h.normal), h.offset});
        allowed.push_back(kAny);
    }
    for (int i = 0; i < n; ++i) {
        QVec e(n);
        e[i] = 1;
        H.push_back(Hyperplane{e, arr_.window.lo[i]});
        allowed.push_back(kZero | kPos);
        H.push_back(Hyperplane{e, arr_.window.hi[i]});
        allowed.push_back(kNeg | kZero);
    }
    FaceLattice L = enumerate_faces(n, H, allowed);
    const int nf = static_cast<int>(L.faces.size());

    // downward closure to collect closure vertices
    std::vector<std::vector<int>> below(nf);
    for (auto [a, b] : L.covers) below[b].push_back(a);
    std::vector<int> order(nf);
    for (int i = 0; i < nf; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return L.faces[a].dim < L.faces[b].dim; });
    std::vector<std::set<int>> verts(nf);
    for (int f : order) {
        if (L.faces[f].dim == 0) verts[f].insert(f);
        for (int g : below[f]) verts[f].insert(verts[g].begin(), verts[g].end());
    }

    std::vector<int> keep(nf, -1);
    for (int f = 0; f < nf; ++f) {
        const auto& s = L.faces[f].sign;
        bool inside = true;
        for (int j = m; j < m + 2 * n; ++j)
            if (s[j] == 0) inside = false;
        if (!inside) continue;
        Stratum st;
        st.sign.assign(s.begin(), s.begin() + m);
        st.dim = L.faces[f].dim;
        st.sample = L.faces[f].sample;
        for (int v : verts[f]) st.closure_vertices.push_back(L.faces[v].sample);
        keep[f] = static_cast<int>(strata_.size());
        index_[st.sign] = keep[f];
        strata_.push_back(std::move(st));
    }
    std::vector<std::pair<int, int>> rel;
    for (auto [a, b] : L.covers)
        if (keep[a] >= 0 && keep[b] >= 0) rel.emplace_back(keep[a], keep[b]);
    poset_ = std::make_shared<FinitePoset>(size(), rel);
}

StrataPoset face_poset(const Arrangement& A) { return StrataPoset(A); }

int StrataPoset::find(const std::vector<std::int8_t>& sign) const {
    auto it = index_.find(sign);
    return it == index_.end() ? -1 : it->second;
}

std::vector<std::int8_t> StrataPoset::signs_at(const QVec& x) const {
    std::vector<std::int8_t> s;
    s.reserve(arr_.hyperplanes.size());
    for (const auto& h : arr_.hyperplanes) s.push_back(static_cast<std::int8_t>((dot(x, h.normal) - h.offset).sign()));
    return s;
}

int StrataPoset::stratum_of(const QVec& x) const {
    if (static_cast<int>(x.size()) != rank() || !arr_.window.contains(x))
        throw std::out_of_range("point " + str(x) + " is outside the window");
    int s = find(signs_at(x));
    if (s < 0) throw std::logic_error("no stratum for a point inside the window");
    return s;
}

std::vector<int> StrataPoset::open_star(int s) const {
    std::vector<int> out{s};
    const auto& up = poset_->above(s);
    out.insert(out.end(), up.begin(), up.end());
    std::sort(out.begin(), out.end());
    return out;
}

bool StrataPoset::in_core(int s) const {
    for (const auto& v : strata_[s].closure_vertices)
        if (!arr_.window.core_contains(v)) return false;
    return true;
}

std::string StrataPoset::to_dot() const {
    std::ostringstream os;
    os << "digraph strata {\n";
    for (int i = 0; i < size(); ++i)
        os << "  s" << i << " [label=\"" << sign_string(strata_[i].sign) << " d" << strata_[i].dim << "\"];\n";
    for (auto [a, b] : poset_->covers()) os << "  s" << a << " -> s" << b << ";\n";
    os << "}\n";
    return os.str();
}

std::pair<QVec, ZVec> period_reduce(const QVec& x) {
    QVec rep = x;
    ZVec m(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        Int f = floor(x[i]);
        m[i] = to_long(f);
        rep[i] -= Rat(f);
    }
    return {rep, m};
}

}  // namespace fltz
