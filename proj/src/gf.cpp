#include "qramp/gf.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace qramp {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace {

// Dense coefficient vectors over F_p, ascending, used only during field
// construction (modulus search, primitive search).
using PPoly = std::vector<unsigned>;

PPoly ptrim(PPoly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

PPoly pmul(const PPoly& a, const PPoly& b, unsigned p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    return ptrim(std::move(r));
}

// a mod b; b monic after normalization.
PPoly pmod(PPoly a, PPoly b, unsigned p) {
    a = ptrim(std::move(a));
    b = ptrim(std::move(b));
    if (b.empty()) throw std::logic_error("polynomial division by zero");
    // make b monic
    unsigned lead = b.back();
    if (lead != 1) {
        unsigned inv = 1;
        for (unsigned x = 1; x < p; ++x)
            if (x * lead % p == 1) inv = x;
        for (auto& c : b) c = c * inv % p;
    }
    while (a.size() >= b.size()) {
        unsigned f = a.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] = (a[shift + i] + p * f - f * b[i] % p) % p;
        a = ptrim(std::move(a));
    }
    return a;
}

bool irreducible(const PPoly& f, unsigned p) {
    size_t m = f.size() - 1;
    if (m == 0) return false;
    if (m == 1) return true;
    // trial division by every monic polynomial of degree 1..m/2
    for (size_t d = 1; 2 * d <= m; ++d) {
        unsigned count = 1;
        for (size_t i = 0; i < d; ++i) count *= p;
        for (unsigned lo = 0; lo < count; ++lo) {
            PPoly g(d + 1, 0);
            unsigned v = lo;
            for (size_t i = 0; i < d; ++i) {
                g[i] = v % p;
                v /= p;
            }
            g[d] = 1;
            if (pmod(f, g, p).empty()) return false;
        }
    }
    return true;
}

std::vector<unsigned> prime_factors(unsigned n) {
    std::vector<unsigned> fs;
    for (unsigned d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

std::mutex g_registry_mutex;
std::map<std::string, std::unique_ptr<FieldSpec>>& registry() {
    static std::map<std::string, std::unique_ptr<FieldSpec>> r;
    return r;
}

std::string make_key(unsigned p, unsigned m, const std::vector<unsigned>& modulus) {
    std::ostringstream os;
    os << p << '^' << m;
    for (unsigned c : modulus) os << ',' << c;
    return os.str();
}

}  // namespace

FieldSpec::FieldSpec(unsigned p, unsigned m, std::vector<unsigned> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
    if (!is_prime(p_)) throw std::invalid_argument("field characteristic must be prime");
    if (m_ < 1) throw std::invalid_argument("extension degree must be >= 1");
    unsigned long long q = 1;
    for (unsigned i = 0; i < m_; ++i) {
        q *= p_;
        if (q > kMaxOrder) throw std::invalid_argument("field order exceeds enumeration cap");
    }
    q_ = static_cast<unsigned>(q);

    if (m_ == 1) {
        // pure modular arithmetic; modulus kept as x by convention
        if (modulus_.empty()) modulus_ = {0, 1};
        if (modulus_ != std::vector<unsigned>{0, 1})
            throw std::invalid_argument("prime field takes no modulus");
    } else {
        if (modulus_.size() != m_ + 1 || modulus_.back() != 1)
            throw std::invalid_argument("modulus must be monic of degree m");
        for (unsigned c : modulus_)
            if (c >= p_) throw std::invalid_argument("modulus coefficient out of range");
        if (!irreducible(modulus_, p_)) throw std::invalid_argument("modulus is reducible");
    }

    // primitive: smallest element of multiplicative order q-1
    primitive_ = 0;
    for (unsigned v = 1; v < q_; ++v) {
        if (multiplicative_order(v) == q_ - 1) {
            primitive_ = v;
            break;
        }
    }
    if (primitive_ == 0) throw std::logic_error("no primitive element found");

    // exp/log tables over the primitive element
    exp_.resize(2 * (q_ - 1));
    log_.assign(q_, 0);
    unsigned cur = 1;
    for (unsigned i = 0; i < q_ - 1; ++i) {
        exp_[i] = cur;
        exp_[i + (q_ - 1)] = cur;
        log_[cur] = i;
        cur = mul_poly(cur, primitive_);
    }
}

std::vector<unsigned> FieldSpec::digits(unsigned v) const {
    std::vector<unsigned> d(m_);
    for (unsigned i = 0; i < m_; ++i) {
        d[i] = v % p_;
        v /= p_;
    }
    return d;
}

unsigned FieldSpec::undigits(const std::vector<unsigned>& d) const {
    unsigned v = 0;
    for (unsigned i = m_; i-- > 0;) v = v * p_ + (i < d.size() ? d[i] % p_ : 0);
    return v;
}

unsigned FieldSpec::mul_poly(unsigned a, unsigned b) const {
    if (m_ == 1) return static_cast<unsigned>((static_cast<unsigned long long>(a) * b) % p_);
    PPoly prod = pmul(digits(a), digits(b), p_);
    PPoly red = pmod(std::move(prod), modulus_, p_);
    red.resize(m_, 0);
    return undigits(red);
}

unsigned FieldSpec::multiplicative_order(unsigned a) const {
    if (a == 0) return 0;
    unsigned ord = 1;
    unsigned cur = a;
    while (cur != 1) {
        cur = mul_poly(cur, a);
        ++ord;
        if (ord > q_) throw std::logic_error("order computation ran away");
    }
    return ord;
}

unsigned FieldSpec::add_raw(unsigned a, unsigned b) const {
    if (m_ == 1) return (a + b) % p_;
    unsigned r = 0, pw = 1;
    for (unsigned i = 0; i < m_; ++i) {
        r += (a % p_ + b % p_) % p_ * pw;
        a /= p_;
        b /= p_;
        pw *= p_;
    }
    return r;
}

unsigned FieldSpec::neg_raw(unsigned a) const {
    if (m_ == 1) return (p_ - a % p_) % p_;
    unsigned r = 0, pw = 1;
    for (unsigned i = 0; i < m_; ++i) {
        r += (p_ - a % p_) % p_ * pw;
        a /= p_;
        pw *= p_;
    }
    return r;
}

unsigned FieldSpec::sub_raw(unsigned a, unsigned b) const { return add_raw(a, neg_raw(b)); }

unsigned FieldSpec::mul_raw(unsigned a, unsigned b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
}

unsigned FieldSpec::inv_euclid(unsigned a) const {
    if (a == 0) throw std::domain_error("division by zero in field");
    if (m_ == 1) {
        // extended Euclid on integers
        long long t = 0, nt = 1, r = p_, nr = a % p_;
        while (nr != 0) {
            long long qq = r / nr;
            std::swap(t -= qq * nt, nt);
            std::swap(r -= qq * nr, nr);
        }
        return static_cast<unsigned>((t % p_ + p_) % p_);
    }
    // extended Euclid on polynomials over F_p
    auto inv_mod_p = [this](unsigned x) -> unsigned {
        x %= p_;
        for (unsigned y = 1; y < p_; ++y)
            if (x * y % p_ == 1) return y;
        throw std::domain_error("division by zero in field");
    };
    PPoly r0 = modulus_, r1 = ptrim(digits(a));
    PPoly t0{}, t1{1};
    while (!r1.empty()) {
        // quotient of r0 by r1
        PPoly q{};
        PPoly rem = r0;
        while (rem.size() >= r1.size() && !rem.empty()) {
            unsigned coef = rem.back() * inv_mod_p(r1.back()) % p_;
            size_t shift = rem.size() - r1.size();
            if (q.size() < shift + 1) q.resize(shift + 1, 0);
            q[shift] = coef;
            for (size_t i = 0; i < r1.size(); ++i)
                rem[shift + i] = (rem[shift + i] + p_ * p_ - coef * r1[i] % p_) % p_;
            rem = ptrim(std::move(rem));
        }
        PPoly nt = t0;
        PPoly qt = pmul(q, t1, p_);
        size_t len = std::max(nt.size(), qt.size());
        nt.resize(len, 0);
        qt.resize(len, 0);
        for (size_t i = 0; i < len; ++i) nt[i] = (nt[i] + p_ - qt[i]) % p_;
        t0 = t1;
        t1 = ptrim(std::move(nt));
        r0 = r1;
        r1 = rem;
    }
    if (r0.size() != 1) throw std::logic_error("gcd with modulus not constant");
    unsigned scale = inv_mod_p(r0[0]);
    for (auto& c : t0) c = c * scale % p_;
    t0.resize(m_, 0);
    return undigits(t0);
}

unsigned FieldSpec::inv_raw(unsigned a) const {
    if (a == 0) throw std::domain_error("division by zero in field");
    // table fast path; inv_euclid kept as the table-free reference
    if (!log_.empty()) return exp_[(q_ - 1) - log_[a]];
    return inv_euclid(a);
}

unsigned FieldSpec::pow_raw(unsigned a, long long e) const {
    if (a == 0) {
        if (e < 0) throw std::domain_error("division by zero in field");
        return e == 0 ? 1 : 0;
    }
    long long ord = q_ - 1;
    long long r = ((e % ord) + ord) % ord;
    return exp_[static_cast<unsigned>(static_cast<unsigned long long>(log_[a]) * r % ord)];
}

const FieldSpec& FieldSpec::get(unsigned p, unsigned m) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (m < 1) throw std::invalid_argument("extension degree must be >= 1");
    if (m == 1) return get(p, 1, {0, 1});
    // smallest monic irreducible of degree m, ordered by the canonical
    // integer encoding of the low coefficients
    unsigned count = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (count > kMaxOrder) throw std::invalid_argument("field order exceeds enumeration cap");
        count *= p;
    }
    for (unsigned lo = 0; lo < count; ++lo) {
        std::vector<unsigned> mod(m + 1, 0);
        unsigned v = lo;
        for (unsigned i = 0; i < m; ++i) {
            mod[i] = v % p;
            v /= p;
        }
        mod[m] = 1;
        if (irreducible(mod, p)) return get(p, m, mod);
    }
    throw std::logic_error("no irreducible polynomial found");
}

const FieldSpec& FieldSpec::get(unsigned p, unsigned m, const std::vector<unsigned>& modulus) {
    std::vector<unsigned> mod = modulus;
    if (m == 1 && mod.empty()) mod = {0, 1};
    std::string key = make_key(p, m, mod);
    std::lock_guard<std::mutex> lock(g_registry_mutex);
    auto it = registry().find(key);
    if (it == registry().end()) {
        auto spec = std::unique_ptr<FieldSpec>(new FieldSpec(p, m, mod));
        it = registry().emplace(key, std::move(spec)).first;
    }
    return *it->second;
}

const FieldSpec& FieldSpec::parse(const std::string& descriptor) {
    auto caret = descriptor.find('^');
    if (caret == std::string::npos) throw std::invalid_argument("bad field descriptor: " + descriptor);
    unsigned p = static_cast<unsigned>(std::stoul(descriptor.substr(0, caret)));
    auto slash = descriptor.find('/', caret);
    unsigned m;
    if (slash == std::string::npos) {
        m = static_cast<unsigned>(std::stoul(descriptor.substr(caret + 1)));
        return get(p, m);
    }
    m = static_cast<unsigned>(std::stoul(descriptor.substr(caret + 1, slash - caret - 1)));
    std::vector<unsigned> mod;
    std::istringstream is(descriptor.substr(slash + 1));
    std::string tok;
    while (std::getline(is, tok, ',')) mod.push_back(static_cast<unsigned>(std::stoul(tok)));
    return get(p, m, mod);
}

std::string FieldSpec::descriptor() const {
    std::ostringstream os;
    os << p_ << '^' << m_;
    if (m_ > 1) {
        os << '/';
        for (size_t i = 0; i < modulus_.size(); ++i) {
            if (i) os << ',';
            os << modulus_[i];
        }
    }
    return os.str();
}

FieldElement FieldSpec::element(unsigned value) const { return {this, value}; }
FieldElement FieldSpec::zero() const { return {this, 0}; }
FieldElement FieldSpec::one() const { return {this, 1}; }

std::vector<FieldElement> FieldSpec::all_elements() const {
    std::vector<FieldElement> out;
    out.reserve(q_);
    for (unsigned v = 0; v < q_; ++v) out.emplace_back(this, v);
    return out;
}

}  // namespace qramp
