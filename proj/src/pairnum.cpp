#include "pairnum.hpp"

#include <future>
#include <sstream>

namespace clickstate {

PairNumber pair_add(const PairNumber& a, const PairNumber& b) { return {a.n + b.n, a.m + b.m}; }
PairNumber pair_sub(const PairNumber& a, const PairNumber& b) { return {a.n - b.n, a.m - b.m}; }
PairNumber pair_neg(const PairNumber& a) { return {-a.n, -a.m}; }

PairNumber pair_mul(const PairNumber& a, const PairNumber& b) {
    return {a.n * b.n - a.m * b.m, a.n * b.m + a.m * b.n};
}

PairNumber pair_inverse(const PairNumber& a) {
    if (a.is_zero()) throw invariant_violation("zero pair has no multiplicative inverse");
    Rational delta = a.n * a.n + a.m * a.m;
    return {a.n / delta, -a.m / delta};
}

PairNumber involution(const PairNumber& a, Involution kind) {
    switch (kind) {
        case Involution::conj: return {a.n, -a.m};
        case Involution::swap: return {a.m, a.n};
    }
    throw invariant_violation("unknown involution kind");
}

Rational pair_norm_sq(const PairNumber& a) { return a.n * a.n + a.m * a.m; }

// ---------------------------------------------------------------------------

std::array<SignAssignment, 16> SignAssignment::all() {
    std::array<SignAssignment, 16> out{};
    int k = 0;
    for (int s1 : {+1, -1})
        for (int s2 : {+1, -1})
            for (int s3 : {+1, -1})
                for (int s4 : {+1, -1}) out[k++] = SignAssignment{s1, s2, s3, s4};
    return out;
}

PairNumber CandidateAlgebra::multiply(const PairNumber& a, const PairNumber& b) const {
    return {Rational(signs.s1) * a.n * b.n + Rational(signs.s2) * a.m * b.m,
            Rational(signs.s3) * a.n * b.m + Rational(signs.s4) * a.m * b.n};
}

namespace {

// splitmix64; a tiny deterministic stream that behaves identically on
// every platform the library builds on.
std::uint64_t next_u64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

long bounded(std::uint64_t& state, long lo, long hi) {
    return lo + static_cast<long>(next_u64(state) % static_cast<std::uint64_t>(hi - lo + 1));
}

std::string render_pair(const PairNumber& a) {
    return "(" + to_string(a.n) + "," + to_string(a.m) + ")";
}

// Two-sided unity of a candidate, solved from the linear conditions the
// identity a(.)e = e(.)a = a imposes on (e1,e2). Matching coefficients of
// a1 and a2 gives e2 = 0, s1*e1 = 1, s4*e1 = 1 (right side) and
// s3*e1 = 1 (left side); a solution exists only when s1 = s3 = s4.
std::optional<PairNumber> solve_unity(const SignAssignment& s) {
    if (s.s1 != s.s4 || s.s1 != s.s3) return std::nullopt;
    return PairNumber{Rational(s.s1), Rational(0)};
}

// Inverse of `a` under the candidate rule, when the 2x2 system
// a(.)x = unity is solvable.
std::optional<PairNumber> solve_inverse(const CandidateAlgebra& alg, const PairNumber& a,
                                        const PairNumber& unity) {
    const auto& s = alg.signs;
    // a(.)x = (s1*a1*x1 + s2*a2*x2, s3*a1*x2 + s4*a2*x1)
    Rational det = Rational(s.s1 * s.s3) * a.n * a.n - Rational(s.s2 * s.s4) * a.m * a.m;
    if (det == 0) return std::nullopt;
    Rational x1 = (Rational(s.s3) * a.n * unity.n - Rational(s.s2) * a.m * unity.m) / det;
    Rational x2 = (Rational(s.s1) * a.n * unity.m - Rational(s.s4) * a.m * unity.n) / det;
    PairNumber x{x1, x2};
    if (alg.multiply(a, x) != unity || alg.multiply(x, a) != unity) return std::nullopt;
    return x;
}

// phi(x (.)_C y) = phi(x) (.)_std phi(y) is bilinear in (x,y), so checking
// the four basis products proves it for all pairs.
bool sign_map_is_isomorphism(const CandidateAlgebra& from, const CandidateAlgebra& to,
                             const SignMap& phi) {
    const std::array<PairNumber, 2> basis{PairNumber::one(), PairNumber::i()};
    for (const auto& x : basis)
        for (const auto& y : basis)
            if (phi.apply(from.multiply(x, y)) != to.multiply(phi.apply(x), phi.apply(y)))
                return false;
    return true;
}

std::optional<SignMap> find_sign_isomorphism(const CandidateAlgebra& from,
                                             const CandidateAlgebra& to) {
    for (int eps : {+1, -1})
        for (int delta : {+1, -1}) {
            SignMap phi{eps, delta};
            if (sign_map_is_isomorphism(from, to, phi)) return phi;
        }
    return std::nullopt;
}

CandidateVerdict examine_candidate(const SignAssignment& signs, std::uint32_t trials,
                                   std::uint64_t sub_seed) {
    CandidateAlgebra alg{signs};
    CandidateVerdict v;
    v.signs = signs;
    v.distributive = true;
    v.associative = true;
    std::uint64_t state = sub_seed;

    for (std::uint32_t t = 0; t < trials && (v.distributive || v.associative); ++t) {
        PairNumber a = random_pair(state), b = random_pair(state), c = random_pair(state);
        if (v.distributive &&
            alg.multiply(c, pair_add(a, b)) != pair_add(alg.multiply(c, a), alg.multiply(c, b))) {
            v.distributive = false;
            v.distributivity_witness = std::array<PairNumber, 2>{a, b};
        }
        if (v.associative &&
            alg.multiply(alg.multiply(a, b), c) != alg.multiply(a, alg.multiply(b, c))) {
            v.associative = false;
            v.associativity_witness = std::array<PairNumber, 3>{a, b, c};
        }
    }

    v.unity = solve_unity(signs);
    v.has_unity = v.unity.has_value();

    if (v.has_unity) {
        v.invertible = true;
        // the fixed witness (1,1) first: it is exactly where delta = n^2 - m^2
        // degenerates
        std::vector<PairNumber> probes{PairNumber{Rational(1), Rational(1)}};
        std::uint64_t probe_state = state;
        for (std::uint32_t t = 0; t < trials; ++t) probes.push_back(random_nonzero_pair(probe_state));
        for (const auto& a : probes) {
            if (a.is_zero()) continue;
            if (!solve_inverse(alg, a, *v.unity)) {
                v.invertible = false;
                v.invertibility_witness = a;
                break;
            }
        }
    }
    return v;
}

} // namespace

Rational random_rational(std::uint64_t& state) {
    long n = bounded(state, -1000, 1000);
    long d = bounded(state, 1, 1000);
    return Rational(n, d);
}

PairNumber random_pair(std::uint64_t& state) {
    Rational n = random_rational(state);
    Rational m = random_rational(state);
    return {n, m};
}

PairNumber random_nonzero_pair(std::uint64_t& state) {
    for (;;) {
        PairNumber p = random_pair(state);
        if (!p.is_zero()) return p;
    }
}

SurvivorReport ansatz_search(std::uint32_t trial_count, std::uint64_t seed) {
    if (trial_count < 1) throw invariant_violation("ansatz search needs trial_count >= 1");
    SurvivorReport report;
    report.trials_per_candidate = trial_count;
    report.seed = seed;

    const auto candidates = SignAssignment::all();
    std::vector<std::future<CandidateVerdict>> futures;
    futures.reserve(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        std::uint64_t sub_seed = seed ^ (0x9E3779B97F4A7C15ULL * (i + 1));
        futures.push_back(std::async(std::launch::async | std::launch::deferred, examine_candidate,
                                     candidates[i], trial_count, sub_seed));
    }
    for (auto& f : futures) report.candidates.push_back(f.get());

    CandidateAlgebra standard{SignAssignment::standard()};
    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < report.candidates.size(); ++i) {
        auto& v = report.candidates[i];
        if (v.distributive && v.associative && v.has_unity)
            report.pass_associativity_unity.push_back(v.signs);
        if (v.distributive && v.associative && v.has_unity && v.invertible) {
            report.pass_invertibility.push_back(v.signs);
            survivors.push_back(i);
            v.isomorphism_to_standard = find_sign_isomorphism(CandidateAlgebra{v.signs}, standard);
            if (v.signs == SignAssignment::standard()) report.standard_survives = true;
        }
    }

    // Group survivors into classes: first against the standard rule, then
    // pairwise among whatever (if anything) remains.
    std::vector<int> cls(survivors.size(), -1);
    int next_class = 0;
    for (std::size_t i = 0; i < survivors.size(); ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = next_class;
        CandidateAlgebra ai{report.candidates[survivors[i]].signs};
        for (std::size_t j = i + 1; j < survivors.size(); ++j) {
            if (cls[j] >= 0) continue;
            CandidateAlgebra aj{report.candidates[survivors[j]].signs};
            if (find_sign_isomorphism(aj, ai)) cls[j] = next_class;
        }
        ++next_class;
    }
    report.isomorphism_classes = next_class;
    return report;
}

// ---------------------------------------------------------------------------

AlgebraReport verify_field_axioms(std::uint32_t trials, std::uint64_t seed) {
    if (trials < 1) throw invariant_violation("axiom verification needs trials >= 1");
    AlgebraReport report;
    report.trials = trials;
    report.seed = seed;

    struct Def {
        const char* name;
        bool (*check)(const PairNumber&, const PairNumber&, const PairNumber&);
    };
    static const Def defs[] = {
        {"add_commutative",
         [](const PairNumber& a, const PairNumber& b, const PairNumber&) {
             return pair_add(a, b) == pair_add(b, a);
         }},
        {"add_associative",
         [](const PairNumber& a, const PairNumber& b, const PairNumber& c) {
             return pair_add(pair_add(a, b), c) == pair_add(a, pair_add(b, c));
         }},
        {"add_zero_identity",
         [](const PairNumber& a, const PairNumber&, const PairNumber&) {
             return pair_add(a, PairNumber::zero()) == a;
         }},
        {"add_inverse",
         [](const PairNumber& a, const PairNumber&, const PairNumber&) {
             return pair_add(a, pair_neg(a)).is_zero();
         }},
        {"mul_commutative",
         [](const PairNumber& a, const PairNumber& b, const PairNumber&) {
             return pair_mul(a, b) == pair_mul(b, a);
         }},
        {"mul_associative",
         [](const PairNumber& a, const PairNumber& b, const PairNumber& c) {
             return pair_mul(pair_mul(a, b), c) == pair_mul(a, pair_mul(b, c));
         }},
        {"mul_unity",
         [](const PairNumber& a, const PairNumber&, const PairNumber&) {
             return pair_mul(PairNumber::one(), a) == a && pair_mul(a, PairNumber::one()) == a;
         }},
        {"mul_inverse_formula",
         [](const PairNumber& a, const PairNumber&, const PairNumber&) {
             if (a.is_zero()) return true;
             Rational delta = a.n * a.n + a.m * a.m;
             PairNumber inv = pair_inverse(a);
             return inv == PairNumber{a.n / delta, -a.m / delta} &&
                    pair_mul(a, inv) == PairNumber::one();
         }},
        {"mul_distributes_over_add",
         [](const PairNumber& a, const PairNumber& b, const PairNumber& c) {
             return pair_mul(c, pair_add(a, b)) == pair_add(pair_mul(c, a), pair_mul(c, b));
         }},
        {"conj_involution",
         [](const PairNumber& a, const PairNumber&, const PairNumber&) {
             return involution(involution(a, Involution::conj), Involution::conj) == a;
         }},
        {"swap_involution",
         [](const PairNumber& a, const PairNumber&, const PairNumber&) {
             return involution(involution(a, Involution::swap), Involution::swap) == a;
         }},
        {"conj_swap_squared_negates",
         [](const PairNumber& a, const PairNumber&, const PairNumber&) {
             PairNumber once = involution(involution(a, Involution::swap), Involution::conj);
             PairNumber twice = involution(involution(once, Involution::swap), Involution::conj);
             return twice == pair_neg(a);
         }},
        {"involutions_preserve_norm_sq",
         [](const PairNumber& a, const PairNumber&, const PairNumber&) {
             return pair_norm_sq(involution(a, Involution::conj)) == pair_norm_sq(a) &&
                    pair_norm_sq(involution(a, Involution::swap)) == pair_norm_sq(a);
         }},
    };

    for (const auto& def : defs)
        report.checks.push_back(AxiomCheck{def.name, trials, 0, ""});

    std::uint64_t state = seed;
    for (std::uint32_t t = 0; t < trials; ++t) {
        PairNumber a = random_pair(state), b = random_pair(state), c = random_pair(state);
        for (std::size_t k = 0; k < std::size(defs); ++k) {
            if (!defs[k].check(a, b, c)) {
                auto& chk = report.checks[k];
                if (chk.failures == 0) {
                    std::ostringstream w;
                    w << "a=" << render_pair(a) << " b=" << render_pair(b)
                      << " c=" << render_pair(c);
                    chk.witness = w.str();
                }
                ++chk.failures;
            }
        }
    }

    report.verdict = true;
    for (const auto& chk : report.checks)
        if (chk.failures != 0) report.verdict = false;
    return report;
}

// ---------------------------------------------------------------------------

bool OrdinalSet::contains(const OrdinalSet& e) const {
    for (const auto& x : elems_)
        if (x == e) return true;
    return false;
}

void OrdinalSet::insert(OrdinalSet e) {
    if (!contains(e)) elems_.push_back(std::move(e));
}

bool OrdinalSet::operator==(const OrdinalSet& o) const {
    if (elems_.size() != o.elems_.size()) return false;
    for (const auto& x : elems_)
        if (!o.contains(x)) return false;
    return true;
}

std::string OrdinalSet::render() const {
    if (elems_.empty()) return "∅";
    std::string out = "{";
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        if (i) out += ",";
        out += elems_[i].render();
    }
    out += "}";
    return out;
}

OrdinalSet ordinal_union(const OrdinalSet& a, const OrdinalSet& b) {
    OrdinalSet out = a;
    for (const auto& e : b.elements()) out.insert(e);
    return out;
}

OrdinalSet ordinal_encode(unsigned n) {
    if (n > kMaxOrdinal)
        throw invariant_violation("ordinal argument exceeds the nesting depth guard (12)");
    OrdinalSet current; // 0 := {}
    for (unsigned k = 0; k < n; ++k) {
        OrdinalSet singleton;
        singleton.insert(current);
        current = ordinal_union(current, singleton); // n+1 := n U {n}
    }
    return current;
}

} // namespace clickstate
