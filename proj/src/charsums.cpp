#include "subconv/charsums.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "subconv/simd.hpp"

namespace subconv::charsums {

using arith::Factorization;
using arith::i64;
using arith::mod_floor;
using arith::mulmod;
using arith::powmod;

// ---------------------------------------------------------------------------
// Ramanujan and Kloosterman sums
// ---------------------------------------------------------------------------

i64 ramanujan_sum(i64 n, i64 c) {
    if (c < 1) throw PreconditionViolated("ramanujan_sum: c >= 1 required");
    if (c == 1) return 1;
    i64 g = std::gcd(n < 0 ? -n : n, c);  // gcd(0, c) = c
    // Hoelder: S(0,n;c) = mu(c/g) * phi(c) / phi(c/g); equals the divisor
    // form sum_{d|g} d * mu(c/d).
    i64 cg = c / g;
    int mu = arith::mobius(cg);
    if (mu == 0) return 0;
    return mu * (arith::euler_phi(c) / arith::euler_phi(cg));
}

i64 ramanujan_sum_bruteforce(i64 n, i64 c) {
    if (c < 1 || c > 1000000)
        throw PreconditionViolated("ramanujan_sum_bruteforce: need 1 <= c <= 1e6");
    if (c == 1) return 1;
    i64 nr = mod_floor(n, c);
    std::vector<double> theta;
    theta.reserve(size_t(c));
    for (i64 h = 1; h < c; ++h) {
        if (std::gcd(h, c) != 1) continue;
        theta.push_back(double(mulmod(h, nr, c)) / double(c));
    }
    complexd s = simd::active().phase_sum(theta.data(), nullptr, theta.size());
    double phi = double(theta.size());
    i64 rounded = i64(std::llround(s.real()));
    double residual = std::max(std::abs(s.real() - double(rounded)), std::abs(s.imag()));
    if (residual > 1e-6 * phi)
        throw RoundingResidualTooLarge("ramanujan_sum_bruteforce: residual too large");
    return rounded;
}

std::vector<i64> ramanujan_table(i64 c) {
    if (c < 1 || c > 1000000)
        throw PreconditionViolated("ramanujan_table: need 1 <= c <= 1e6");
    std::vector<i64> table(size_t(c), 0);
    for (i64 d : arith::divisors(c)) {
        int mu = arith::mobius(c / d);
        if (mu == 0) continue;
        i64 add = mu * d;
        for (i64 r = 0; r < c; r += d) table[size_t(r)] += add;
    }
    return table;
}

complexd kloosterman_sum(i64 a, i64 b, i64 c) {
    if (c < 1 || c > 1000000)
        throw PreconditionViolated("kloosterman_sum: need 1 <= c <= 1e6");
    if (c == 1) return {1.0, 0.0};
    i64 ar = mod_floor(a, c), br = mod_floor(b, c);
    std::vector<double> theta;
    theta.reserve(size_t(c));
    for (i64 x = 1; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        i64 xb = arith::inv_mod(x, c);
        theta.push_back(double((mulmod(ar, x, c) + mulmod(br, xb, c)) % c) / double(c));
    }
    return simd::active().phase_sum(theta.data(), nullptr, theta.size());
}

// ---------------------------------------------------------------------------
// Character table construction
// ---------------------------------------------------------------------------

namespace detail {

namespace {

using u64 = arith::u64;

i64 primitive_root_mod_p(i64 p) {
    if (p == 2) return 1;
    Factorization f = arith::factorize(p - 1);
    for (i64 g = 2; g < p; ++g) {
        bool ok = true;
        for (const auto& pp : f) {
            if (powmod(g, u64((p - 1) / pp.prime), p) == 1) { ok = false; break; }
        }
        if (ok) return g;
    }
    throw Error("primitive_root_mod_p: none found");
}

ComponentGroup build_component(i64 p, int k) {
    ComponentGroup comp;
    comp.prime = p;
    comp.exponent = k;
    comp.pk = 1;
    for (int i = 0; i < k; ++i) comp.pk = arith::checked_mul(comp.pk, p);
    comp.dlog.assign(size_t(comp.pk), -1);

    if (p == 2) {
        if (k == 1) {
            comp.dlog[1] = 0;  // trivial group
            return comp;
        }
        if (k == 2) {
            comp.generators = {3};
            comp.orders = {2};
            comp.dlog[1] = 0;
            comp.dlog[3] = 1;
            return comp;
        }
        // (Z/2^k)* = <-1> x <5>
        i64 half = comp.pk / 4;  // order of 5
        comp.generators = {comp.pk - 1, 5};
        comp.orders = {2, half};
        for (i64 a = 0; a <= 1; ++a) {
            i64 x = a == 0 ? 1 : comp.pk - 1;
            for (i64 b = 0; b < half; ++b) {
                comp.dlog[size_t(x)] = a + 2 * b;
                x = mulmod(x, 5, comp.pk);
            }
        }
        return comp;
    }

    // odd p: cyclic, generated by a primitive root valid for every power
    i64 g = primitive_root_mod_p(p);
    if (k > 1 && powmod(g, u64(p - 1), p * p) == 1) g += p;
    i64 phi = comp.pk / p * (p - 1);
    comp.generators = {g % comp.pk};
    comp.orders = {phi};
    i64 x = 1;
    for (i64 e = 0; e < phi; ++e) {
        comp.dlog[size_t(x)] = e;
        x = mulmod(x, comp.generators[0], comp.pk);
    }
    return comp;
}

} // namespace

std::shared_ptr<const CharacterTable> character_table(i64 q) {
    static std::mutex mu;
    static std::map<i64, std::weak_ptr<const CharacterTable>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(q);
        if (it != cache.end())
            if (auto sp = it->second.lock()) return sp;
    }
    auto t = std::make_shared<CharacterTable>();
    t->modulus = q;
    for (const auto& pp : arith::factorize(q))
        t->components.push_back(build_component(pp.prime, pp.exponent));
    {
        std::lock_guard<std::mutex> lock(mu);
        cache[q] = t;
    }
    return t;
}

} // namespace detail

// ---------------------------------------------------------------------------
// DirichletCharacter
// ---------------------------------------------------------------------------

namespace {

// Number of generator slots in a component.
size_t gen_count(const detail::ComponentGroup& c) { return c.orders.size(); }

} // namespace

DirichletCharacter DirichletCharacter::principal(i64 q) {
    auto t = detail::character_table(q);
    size_t ngen = 0;
    for (const auto& c : t->components) ngen += gen_count(c);
    return DirichletCharacter(std::move(t), std::vector<i64>(ngen, 0));
}

std::optional<RationalPhase> DirichletCharacter::phase(i64 a) const {
    RationalPhase total;
    size_t idx = 0;
    for (const auto& comp : table_->components) {
        i64 r = mod_floor(a, comp.pk);
        if (r % comp.prime == 0) return std::nullopt;
        i64 packed = comp.dlog[size_t(r)];
        if (gen_count(comp) == 2) {
            i64 e0 = packed & 1, e1 = packed >> 1;
            total = total + RationalPhase(mulmod(images_[idx], e0, comp.orders[0]), comp.orders[0]);
            total = total + RationalPhase(mulmod(images_[idx + 1], e1, comp.orders[1]), comp.orders[1]);
        } else if (gen_count(comp) == 1) {
            total = total + RationalPhase(mulmod(images_[idx], packed, comp.orders[0]), comp.orders[0]);
        }
        idx += gen_count(comp);
    }
    return total;
}

bool DirichletCharacter::is_principal() const {
    return std::all_of(images_.begin(), images_.end(), [](i64 e) { return e == 0; });
}

i64 DirichletCharacter::order() const {
    i64 ord = 1;
    size_t idx = 0;
    for (const auto& comp : table_->components) {
        for (size_t g = 0; g < gen_count(comp); ++g, ++idx) {
            i64 o = comp.orders[g] / std::gcd(images_[idx], comp.orders[g]);
            ord = std::lcm(ord, o);
        }
    }
    return ord;
}

bool DirichletCharacter::is_real() const { return order() <= 2; }

i64 DirichletCharacter::conductor() const {
    i64 cond = 1;
    size_t idx = 0;
    for (const auto& comp : table_->components) {
        i64 p = comp.prime;
        if (p == 2) {
            if (comp.exponent == 1) { idx += gen_count(comp); continue; }
            if (comp.exponent == 2) {
                if (images_[idx] != 0) cond *= 4;
                idx += 1;
                continue;
            }
            i64 a = images_[idx], b = images_[idx + 1];
            idx += 2;
            if (b == 0) {
                if (a != 0) cond *= 4;
                continue;
            }
            int t = 0;
            i64 bb = b;
            while (bb % 2 == 0) { bb /= 2; ++t; }
            i64 c2 = 1;
            for (int j = 0; j < comp.exponent - t; ++j) c2 *= 2;
            cond *= c2;
            continue;
        }
        i64 e = images_[idx];
        idx += 1;
        if (e == 0) continue;
        int v = 0;
        while (e % p == 0) { e /= p; ++v; }
        int j = std::max(1, comp.exponent - v);
        i64 pj = 1;
        for (int i = 0; i < j; ++i) pj *= p;
        cond *= pj;
    }
    return cond;
}

DirichletCharacter DirichletCharacter::conjugate() const {
    std::vector<i64> imgs = images_;
    size_t idx = 0;
    for (const auto& comp : table_->components)
        for (size_t g = 0; g < gen_count(comp); ++g, ++idx)
            imgs[idx] = imgs[idx] == 0 ? 0 : comp.orders[g] - imgs[idx];
    return DirichletCharacter(table_, std::move(imgs));
}

DirichletCharacter DirichletCharacter::primitive_inducing() const {
    i64 cond = conductor();
    i64 q = modulus();
    for (const auto& psi : characters_mod(cond)) {
        bool match = true;
        for (i64 x = 1; x < std::max<i64>(q, 2) && match; ++x) {
            if (std::gcd(x, q) != 1) continue;
            auto a = phase(x);
            auto b = psi.phase(x);
            if (!a || !b || !(*a == *b)) match = false;
        }
        if (match) return psi;
    }
    throw Error("primitive_inducing: no inducing character found");
}

std::vector<DirichletCharacter> characters_mod(i64 q) {
    if (q < 1 || q > 100000)
        throw PreconditionViolated("characters_mod: need 1 <= q <= 1e5");
    auto t = detail::character_table(q);
    std::vector<i64> orders;
    for (const auto& comp : t->components)
        for (i64 o : comp.orders) orders.push_back(o);

    std::vector<DirichletCharacter> out;
    std::vector<i64> images(orders.size(), 0);
    while (true) {
        out.push_back(DirichletCharacter(t, images));
        // mixed-radix increment; principal (all zeros) comes first
        size_t i = 0;
        for (; i < orders.size(); ++i) {
            if (++images[i] < orders[i]) break;
            images[i] = 0;
        }
        if (i == orders.size()) break;
    }
    return out;
}

DirichletCharacter character_from_images(i64 q, const std::vector<i64>& images) {
    auto t = detail::character_table(q);
    size_t ngen = 0;
    for (const auto& c : t->components) ngen += c.orders.size();
    if (images.size() != ngen)
        throw PreconditionViolated("character_from_images: wrong image count");
    std::vector<i64> imgs = images;
    size_t idx = 0;
    for (const auto& c : t->components)
        for (size_t g = 0; g < c.orders.size(); ++g, ++idx)
            imgs[idx] = mod_floor(imgs[idx], c.orders[g]);
    return DirichletCharacter(t, std::move(imgs));
}

complexd gauss_sum(const DirichletCharacter& chi) {
    i64 q = chi.modulus();
    arith::KahanComplex acc;
    for (i64 x = 0; x < q; ++x) {
        auto ph = chi.phase(x);
        if (!ph) continue;
        acc.add((*ph + RationalPhase(x, q)).eval());
    }
    if (q == 1) return {1.0, 0.0};
    return acc.value();
}

} // namespace subconv::charsums
