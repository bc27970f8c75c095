#include "invmon/oracles.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <unordered_map>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace invmon {

bool shortlex_less(const Alphabet& alphabet, const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    auto rank = [&](const Letter& l) {
        return 2 * alphabet.index_of(l.symbol) + (l.sign < 0 ? 1 : 0);
    };
    for (std::size_t i = 0; i < a.size(); ++i) {
        int ra = rank(a[i]);
        int rb = rank(b[i]);
        if (ra != rb) return ra < rb;
    }
    return false;
}

GroupOracle free_oracle(const Alphabet& alphabet) {
    GroupOracle o;
    o.name = "free";
    o.alphabet = alphabet;
    o.is_identity = [](const Word& w) { return reduce(w).empty() ? Answer::yes : Answer::no; };
    o.normal_form = [](const Word& w) -> std::optional<Word> { return reduce(w); };
    return o;
}

GroupOracle cyclic_oracle(SymbolId letter, int modulus) {
    if (modulus < 1) throw std::invalid_argument("cyclic_oracle needs modulus >= 1");
    GroupOracle o;
    o.name = "cyclic-" + std::to_string(modulus);
    o.alphabet.symbols = {letter};
    auto exponent = [letter](const Word& w) -> long {
        long e = 0;
        for (const Letter& l : w.letters) {
            if (l.symbol != letter)
                throw std::invalid_argument("cyclic oracle: unexpected letter " + to_string(l));
            e += l.sign;
        }
        return e;
    };
    o.is_identity = [exponent, modulus](const Word& w) {
        return exponent(w) % modulus == 0 ? Answer::yes : Answer::no;
    };
    o.normal_form = [exponent, modulus, letter](const Word& w) -> std::optional<Word> {
        long e = ((exponent(w) % modulus) + modulus) % modulus;
        Word out;
        for (long i = 0; i < e; ++i) out.append(Letter(letter, 1));
        return out;
    };
    return o;
}

GroupOracle kb_oracle(std::shared_ptr<const RewriteSystem> system) {
    GroupOracle o;
    o.name = system->complete() ? "kb" : "kb-incomplete";
    o.alphabet = system->alphabet();
    if (system->complete()) {
        o.is_identity = [system](const Word& w) {
            return system->normal_form(w).empty() ? Answer::yes : Answer::no;
        };
        o.normal_form = [system](const Word& w) -> std::optional<Word> {
            return system->normal_form(w);
        };
    } else {
        o.is_identity = [system](const Word& w) {
            return system->normal_form(w).empty() ? Answer::yes : Answer::inconclusive;
        };
    }
    return o;
}

GroupOracle kb_oracle(const Presentation& p, int completion_budget) {
    auto system = std::make_shared<RewriteSystem>(knuth_bendix(p, completion_budget));
    return kb_oracle(std::move(system));
}

// ---------------------------------------------------------------------------
// Whitehead minimization

namespace {

std::size_t tuple_cyclic_length(const std::vector<Word>& tuple) {
    std::size_t n = 0;
    for (const Word& w : tuple) n += cyclically_reduce(w).second.size();
    return n;
}

std::vector<Word> apply_map(const std::vector<Word>& tuple, const std::map<SymbolId, Word>& m) {
    std::vector<Word> out;
    out.reserve(tuple.size());
    for (const Word& w : tuple) out.push_back(reduce(substitute(w, m)));
    return out;
}

} // namespace

std::optional<FreeCertificate> whitehead_free_certificate(const Presentation& p) {
    const std::size_t n = p.alphabet.symbols.size();
    if (n == 0 || n > 8) return std::nullopt;

    std::vector<Word> tuple;
    for (const Word& r : p.relators) {
        Word core = cyclically_reduce(r).second;
        if (!core.empty()) tuple.push_back(core);
    }

    std::map<SymbolId, Word> total;
    for (SymbolId s : p.alphabet.symbols) total[s] = Word({Letter(s, 1)});

    std::vector<Letter> letters;
    for (SymbolId s : p.alphabet.symbols) {
        letters.emplace_back(s, 1);
        letters.emplace_back(s, -1);
    }

    // Greedy descent over type-II Whitehead automorphisms; peak reduction
    // guarantees the greedy minimum is the orbit minimum.
    bool improved = true;
    std::size_t best = tuple_cyclic_length(tuple);
    while (improved && best > 0) {
        improved = false;
        for (const Letter& a : letters) {
            std::vector<Letter> others;
            for (const Letter& l : letters)
                if (l.symbol != a.symbol) others.push_back(l);
            const std::size_t subsets = std::size_t(1) << others.size();
            for (std::size_t mask = 0; mask < subsets && !improved; ++mask) {
                if (mask == 0) continue;
                auto in_A = [&](const Letter& l) -> bool {
                    for (std::size_t i = 0; i < others.size(); ++i)
                        if (others[i] == l) return (mask >> i) & 1u;
                    return false;
                };
                std::map<SymbolId, Word> phi;
                bool trivial = true;
                for (SymbolId s : p.alphabet.symbols) {
                    if (s == a.symbol) {
                        phi[s] = Word({Letter(s, 1)});
                        continue;
                    }
                    bool pos = in_A(Letter(s, 1));
                    bool neg = in_A(Letter(s, -1));
                    Word image;
                    if (neg) image.append(a.inverse());
                    image.append(Letter(s, 1));
                    if (pos) image.append(a);
                    phi[s] = image;
                    if (pos || neg) trivial = false;
                }
                if (trivial) continue;
                std::vector<Word> next = apply_map(tuple, phi);
                std::size_t len = tuple_cyclic_length(next);
                if (len < best) {
                    best = len;
                    tuple = std::move(next);
                    for (auto& [s, w] : total) w = reduce(substitute(w, phi));
                    improved = true;
                }
            }
            if (improved) break;
        }
    }

    FreeCertificate cert;
    for (const Word& w : tuple) {
        Word core = cyclically_reduce(w).second;
        if (core.empty()) continue;
        if (core.size() != 1) return std::nullopt;
        SymbolId s = core[0].symbol;
        if (std::find(cert.killed.begin(), cert.killed.end(), s) == cert.killed.end())
            cert.killed.push_back(s);
    }
    cert.automorphism = std::move(total);
    for (SymbolId s : p.alphabet.symbols)
        if (std::find(cert.killed.begin(), cert.killed.end(), s) == cert.killed.end())
            cert.remaining.symbols.push_back(s);

    // Replay check: every relator must die under the certificate map.
    for (const Word& r : p.relators) {
        Word image = substitute(r, cert.automorphism);
        Word stripped;
        for (const Letter& l : image.letters)
            if (std::find(cert.killed.begin(), cert.killed.end(), l.symbol) == cert.killed.end())
                stripped.append(l);
        if (!reduce(stripped).empty()) return std::nullopt;
    }
    return cert;
}

GroupOracle free_certificate_oracle(const Presentation& p, const FreeCertificate& cert) {
    GroupOracle o;
    o.name = "whitehead-free";
    o.alphabet = p.alphabet;
    auto image = [cert](const Word& w) {
        Word mapped = substitute(w, cert.automorphism);
        Word stripped;
        for (const Letter& l : mapped.letters)
            if (std::find(cert.killed.begin(), cert.killed.end(), l.symbol) == cert.killed.end())
                stripped.append(l);
        return reduce(stripped);
    };
    o.is_identity = [image](const Word& w) { return image(w).empty() ? Answer::yes : Answer::no; };
    o.normal_form = [image](const Word& w) -> std::optional<Word> { return image(w); };
    return o;
}

// ---------------------------------------------------------------------------
// Soluble Baumslag-Solitar leaf

namespace {

// Exact values num / n^den_exp with overflow tracking.
struct NFrac {
    __int128 num = 0;
    int den_exp = 0;
    bool valid = true;
};

constexpr __int128 kNumCap = (static_cast<__int128>(1) << 100);

NFrac nfrac_normalize(NFrac f, long n) {
    if (!f.valid) return f;
    while (f.den_exp > 0 && f.num % n == 0) {
        f.num /= n;
        --f.den_exp;
    }
    if (f.num == 0) f.den_exp = 0;
    if (f.num > kNumCap || f.num < -kNumCap || f.den_exp > 120) f.valid = false;
    return f;
}

// f scaled by n^e.
NFrac nfrac_scale_pow(NFrac f, long n, int e, bool& ok) {
    if (!f.valid) return f;
    if (e >= 0) {
        for (int i = 0; i < e; ++i) {
            f.num *= n;
            if (f.num > kNumCap || f.num < -kNumCap) {
                f.valid = false;
                return f;
            }
        }
    } else {
        f.den_exp += -e;
    }
    f = nfrac_normalize(f, n);
    ok = f.valid;
    return f;
}

NFrac nfrac_add(NFrac a, NFrac b, long n) {
    if (!a.valid || !b.valid) return NFrac{0, 0, false};
    int d = std::max(a.den_exp, b.den_exp);
    for (int i = a.den_exp; i < d; ++i) a.num *= n;
    for (int i = b.den_exp; i < d; ++i) b.num *= n;
    NFrac r{a.num + b.num, d, true};
    if (r.num > kNumCap || r.num < -kNumCap) r.valid = false;
    return nfrac_normalize(r, n);
}

// Affine map x -> n^alpha_exp * x + beta.
struct AffineEl {
    int alpha_exp = 0;
    NFrac beta{};
    bool valid = true;
};

AffineEl affine_compose(const AffineEl& f, const AffineEl& g, long n) {
    // (f o g)(x) = n^(af+ag) x + n^af * beta_g + beta_f
    AffineEl r;
    if (!f.valid || !g.valid) {
        r.valid = false;
        return r;
    }
    r.alpha_exp = f.alpha_exp + g.alpha_exp;
    bool ok = true;
    NFrac scaled = nfrac_scale_pow(g.beta, n, f.alpha_exp, ok);
    r.beta = nfrac_add(scaled, f.beta, n);
    r.valid = ok && r.beta.valid && std::abs(r.alpha_exp) <= 120;
    return r;
}

AffineEl affine_inverse(const AffineEl& f, long n) {
    // f(x) = a x + b  =>  f^-1(x) = x/a - b/a
    AffineEl r;
    r.alpha_exp = -f.alpha_exp;
    bool ok = true;
    NFrac nb = f.beta;
    nb.num = -nb.num;
    r.beta = nfrac_scale_pow(nb, n, -f.alpha_exp, ok);
    r.valid = f.valid && ok && r.beta.valid;
    return r;
}

struct BsRecognition {
    Word t_word;    // stable letter, as a word over the original alphabet
    Word a_word;    // conjugated generator, over the original alphabet
    long n = 0;     // t^-1 a t = a^n
    std::map<SymbolId, AffineEl> letter_affine;
};

// Tries to read the cyclic word r as s^-1 w^p s w^q over two symbols.
struct ConjShape {
    SymbolId s;
    SymbolId w;
    long p, q;
    bool ok = false;
};

ConjShape match_conjugation_shape(const Word& r0) {
    ConjShape out;
    Word r = cyclically_reduce(r0).second;
    if (r.size() < 4) return out;
    for (std::size_t rot = 0; rot < r.size(); ++rot) {
        Word w;
        for (std::size_t i = 0; i < r.size(); ++i) w.append(r[(rot + i) % r.size()]);
        // Expect w = s^-1 w^p s w^q.
        const Letter first = w[0];
        if (first.sign != -1) continue;
        SymbolId s = first.symbol;
        // Find the matching positive s.
        std::size_t pos = 0;
        long pcount = 0;
        SymbolId wsym = 0;
        bool okblock = true;
        std::size_t i = 1;
        for (; i < w.size(); ++i) {
            if (w[i].symbol == s) break;
            if (wsym == 0) wsym = w[i].symbol;
            if (w[i].symbol != wsym) {
                okblock = false;
                break;
            }
            pcount += w[i].sign;
        }
        if (!okblock || i >= w.size() || w[i].sign != 1 || pcount == 0) continue;
        pos = i;
        long qcount = 0;
        bool okq = true;
        for (std::size_t j = pos + 1; j < w.size(); ++j) {
            if (w[j].symbol != wsym) {
                okq = false;
                break;
            }
            qcount += w[j].sign;
        }
        if (!okq || qcount == 0) continue;
        // Block letters must be uniform powers (cyclically reduced, so signs
        // within each block are already uniform).
        out.s = s;
        out.w = wsym;
        out.p = pcount;
        out.q = qcount;
        out.ok = true;
        return out;
    }
    return out;
}

std::optional<BsRecognition> recognize_bs(const Presentation& p) {
    if (p.alphabet.symbols.size() != 2) return std::nullopt;
    std::vector<Word> rels;
    for (const Word& r : p.relators) {
        Word core = cyclically_reduce(r).second;
        if (!core.empty()) rels.push_back(core);
    }
    if (rels.size() != 1) return std::nullopt;
    const Word& r = rels[0];
    SymbolId g1 = p.alphabet.symbols[0];
    SymbolId g2 = p.alphabet.symbols[1];

    // Candidate changes of generators: keep one generator, set u to a short
    // word containing the other exactly once.
    struct Candidate {
        std::map<SymbolId, Word> subst; // original -> word over {kept, u}
        std::map<SymbolId, Word> back;  // {kept, u} -> word over originals
    };
    std::vector<Candidate> candidates;
    SymbolId usym = intern_symbol("__bs_u");

    auto make_candidate = [&](SymbolId kept, SymbolId out, const Word& udef) {
        // udef is a word over originals containing `out` exactly once, sign +1.
        // Solve udef = u for `out`.
        Word solved; // expression of `out` over {kept, u}
        std::size_t pos = udef.size();
        for (std::size_t i = 0; i < udef.size(); ++i)
            if (udef[i].symbol == out) pos = i;
        Word prefix, suffix;
        for (std::size_t i = 0; i < pos; ++i) prefix.append(udef[i]);
        for (std::size_t i = pos + 1; i < udef.size(); ++i) suffix.append(udef[i]);
        // udef = prefix * out^sign * suffix = u  =>  out^sign = prefix^-1 u suffix^-1
        Word rhs = invert(prefix) * Word({Letter(usym, 1)}) * invert(suffix);
        if (udef[pos].sign < 0) rhs = invert(rhs);
        Candidate c;
        c.subst[kept] = Word({Letter(kept, 1)});
        c.subst[out] = rhs;
        c.back[kept] = Word({Letter(kept, 1)});
        c.back[usym] = udef;
        candidates.push_back(std::move(c));
    };

    for (auto [kept, out] : {std::pair{g1, g2}, std::pair{g2, g1}}) {
        make_candidate(kept, out, Word({Letter(out, 1)}));
        for (int ks : {1, -1}) {
            make_candidate(kept, out, Word({Letter(kept, ks), Letter(out, 1)}));
            make_candidate(kept, out, Word({Letter(out, 1), Letter(kept, ks)}));
        }
    }

    for (const Candidate& cand : candidates) {
        Word r2 = reduce(substitute(r, cand.subst));
        for (bool inv : {false, true}) {
            Word probe = inv ? invert(r2) : r2;
            ConjShape shape = match_conjugation_shape(probe);
            if (!shape.ok) continue;
            long pexp = shape.p, qexp = shape.q;
            // relation: s^-1 w^p s w^q = 1, i.e. s^-1 w^p s = w^-q.
            long n = 0;
            int t_sign = 1;
            if (pexp == 1) {
                n = -qexp;
                t_sign = 1; // t := s, a := w, t^-1 a t = a^n
            } else if (pexp == -1) {
                n = qexp; // invert the relation
                t_sign = 1;
            } else if (qexp == 1 || qexp == -1) {
                // s w^q s^-1 = w^-p  =>  use t := s^-1.
                n = (qexp == 1) ? -pexp : pexp;
                t_sign = -1;
            } else {
                continue;
            }
            if (std::abs(n) < 2) continue;

            BsRecognition rec;
            // Words over the original alphabet for t and a.
            Word s_orig = cand.back.count(shape.s) ? cand.back.at(shape.s)
                                                   : Word({Letter(shape.s, 1)});
            Word w_orig = cand.back.count(shape.w) ? cand.back.at(shape.w)
                                                   : Word({Letter(shape.w, 1)});
            rec.t_word = t_sign > 0 ? s_orig : invert(s_orig);
            rec.a_word = w_orig;
            rec.n = n;

            // Affine images of the working letters: a -> x+1, t -> x/n.
            AffineEl a_aff;
            a_aff.beta = NFrac{1, 0, true};
            AffineEl t_aff;
            t_aff.alpha_exp = -1;
            std::map<SymbolId, AffineEl> work;
            work[shape.w] = a_aff;
            work[shape.s] = t_sign > 0 ? t_aff : affine_inverse(t_aff, n);

            // Original letters through the substitution.
            auto eval_word = [&](const Word& w) {
                AffineEl acc;
                for (const Letter& l : w.letters) {
                    AffineEl la = work.at(l.symbol);
                    if (l.sign < 0) la = affine_inverse(la, n);
                    acc = affine_compose(acc, la, n);
                }
                return acc;
            };
            rec.letter_affine[g1] = eval_word(reduce(substitute(Word({Letter(g1, 1)}), cand.subst)));
            rec.letter_affine[g2] = eval_word(reduce(substitute(Word({Letter(g2, 1)}), cand.subst)));
            rec.n = n;

            // The relator itself must evaluate to the identity.
            AffineEl check;
            for (const Letter& l : r.letters) {
                AffineEl la = rec.letter_affine.at(l.symbol);
                if (l.sign < 0) la = affine_inverse(la, n);
                check = affine_compose(check, la, n);
            }
            if (!check.valid || check.alpha_exp != 0 || check.beta.num != 0) continue;
            return rec;
        }
    }
    return std::nullopt;
}

} // namespace

std::optional<GroupOracle> solvable_bs_oracle(const Presentation& p) {
    auto rec0 = recognize_bs(p);
    if (!rec0) return std::nullopt;
    auto rec = std::make_shared<BsRecognition>(*rec0);

    GroupOracle o;
    o.name = "bs-" + std::to_string(rec->n);
    o.alphabet = p.alphabet;

    auto evaluate = [rec](const Word& w) {
        AffineEl acc;
        for (const Letter& l : w.letters) {
            auto it = rec->letter_affine.find(l.symbol);
            if (it == rec->letter_affine.end())
                throw std::invalid_argument("bs oracle: unexpected letter " + to_string(l));
            AffineEl la = it->second;
            if (l.sign < 0) la = affine_inverse(la, rec->n);
            acc = affine_compose(acc, la, rec->n);
            if (!acc.valid) break;
        }
        return acc;
    };

    o.is_identity = [evaluate](const Word& w) {
        AffineEl a = evaluate(w);
        if (!a.valid) return Answer::inconclusive;
        return (a.alpha_exp == 0 && a.beta.num == 0) ? Answer::yes : Answer::no;
    };
    o.normal_form = [evaluate, rec](const Word& w) -> std::optional<Word> {
        AffineEl a = evaluate(w);
        if (!a.valid) return std::nullopt;
        // Element is t^Q a^m t^-P with alpha = n^(P-Q), beta = m / n^Q.
        int E = a.alpha_exp; // P - Q
        int Q = std::max({0, -E, a.beta.den_exp});
        int P = E + Q;
        __int128 m = a.beta.num;
        for (int i = a.beta.den_exp; i < Q; ++i) {
            m *= rec->n;
            if (m > kNumCap || m < -kNumCap) return std::nullopt;
        }
        // Spell a^m in base |n| through conjugation, a^m = a^c t a^(m/n) t^-1,
        // so the representative stays logarithmic in |m|.
        std::function<Word(__int128)> spell = [&](__int128 mm) {
            Word out;
            if (mm == 0) return out;
            __int128 q = mm / rec->n;
            __int128 c = mm % rec->n; // sign follows mm in C++
            Word aw = c >= 0 ? rec->a_word : invert(rec->a_word);
            for (__int128 i = 0; i < (c >= 0 ? c : -c); ++i) out.append(aw);
            if (q != 0) {
                out.append(rec->t_word);
                out.append(spell(q));
                out.append(invert(rec->t_word));
            }
            return out;
        };
        Word out;
        for (int i = 0; i < Q; ++i) out.append(rec->t_word);
        out.append(spell(m));
        Word tinv = invert(rec->t_word);
        for (int i = 0; i < P; ++i) out.append(tinv);
        return reduce(out);
    };
    return o;
}

// ---------------------------------------------------------------------------
// Leaf ladder

std::optional<GroupOracle> leaf_oracle(const Presentation& p, int kb_budget) {
    std::vector<Word> live;
    for (const Word& r : p.relators)
        if (!reduce(r).empty()) live.push_back(reduce(r));

    if (live.empty()) return free_oracle(p.alphabet);

    if (p.alphabet.symbols.size() == 1) {
        long g = 0;
        for (const Word& r : live) {
            long e = 0;
            for (const Letter& l : r.letters) e += l.sign;
            g = std::gcd(g, e);
        }
        if (g == 0) return free_oracle(p.alphabet);
        return cyclic_oracle(p.alphabet.symbols[0], static_cast<int>(g));
    }

    if (auto cert = whitehead_free_certificate(p)) return free_certificate_oracle(p, *cert);
    if (auto bs = solvable_bs_oracle(p)) return bs;

    auto system = std::make_shared<RewriteSystem>(knuth_bendix(p, kb_budget));
    if (system->complete()) return kb_oracle(system);
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Cyclic subgroup membership by normal-form matching

namespace {

SubgroupMembership cyclic_scan(const GroupOracle& amb, const Word& gen, const Word& w) {
    SubgroupMembership r;
    auto expr = [](long k) {
        std::vector<std::pair<int, int>> e;
        for (long i = 0; i < std::labs(k); ++i) e.emplace_back(0, k >= 0 ? 1 : -1);
        return e;
    };
    if (amb.has_normal_form()) {
        auto nfw = amb.normal_form(w);
        auto nfu = amb.normal_form(gen);
        if (nfw && nfu) {
            if (nfu->empty()) {
                // <u> trivial.
                r.member = nfw->empty() ? Answer::yes : Answer::no;
                return r;
            }
            if (nfw->empty()) {
                r.member = Answer::yes;
                return r;
            }
            const std::size_t limit = nfw->size() + nfu->size() + 8;
            for (int dir : {1, -1}) {
                Word power;
                std::size_t overshoot = 0;
                for (long k = dir; std::labs(k) <= 512; k += dir) {
                    power.append(dir > 0 ? gen : invert(gen));
                    auto nfp = amb.normal_form(power);
                    if (!nfp) break;
                    if (*nfp == *nfw) {
                        r.member = Answer::yes;
                        r.expression = expr(k);
                        return r;
                    }
                    overshoot = nfp->size() > limit ? overshoot + 1 : 0;
                    if (overshoot >= 4) break;
                }
            }
            r.member = Answer::no;
            return r;
        }
    }
    // Fallback: bounded exponent scan through the identity test.
    long bound = static_cast<long>(w.size()) + 8;
    bool saw_inconclusive = false;
    for (long k = -bound; k <= bound; ++k) {
        Word cand = w;
        Word step = k >= 0 ? invert(gen) : gen;
        for (long i = 0; i < std::labs(k); ++i) cand.append(step);
        Answer a = amb.is_identity(cand);
        if (a == Answer::yes) {
            r.member = Answer::yes;
            r.expression = expr(k);
            return r;
        }
        if (a == Answer::inconclusive) saw_inconclusive = true;
    }
    r.member = saw_inconclusive ? Answer::inconclusive : Answer::no;
    return r;
}

} // namespace

ConstructiveSubgroupOracle cyclic_subgroup_oracle(const GroupOracle& ambient, const Word& u) {
    ConstructiveSubgroupOracle out;
    auto amb = std::make_shared<GroupOracle>(ambient);
    auto gen = std::make_shared<Word>(u);
    struct Cache {
        std::mutex mutex;
        std::unordered_map<Word, SubgroupMembership, WordHash> map;
    };
    auto cache = std::make_shared<Cache>();
    out.contains = [amb, gen, cache](const Word& w0) -> SubgroupMembership {
        Word w = reduce(w0);
        {
            std::scoped_lock lock(cache->mutex);
            auto it = cache->map.find(w);
            if (it != cache->map.end()) return it->second;
        }
        SubgroupMembership r = cyclic_scan(*amb, *gen, w);
        {
            std::scoped_lock lock(cache->mutex);
            if (cache->map.size() < (1u << 22)) cache->map.emplace(w, r);
        }
        return r;
    };
    return out;
}

// ---------------------------------------------------------------------------
// Free products

class FreeProductContext {
public:
    GroupOracle left, right;
    Alphabet combined;

    FreeProductContext(GroupOracle l, GroupOracle r) : left(std::move(l)), right(std::move(r)) {
        combined = disjoint_union(left.alphabet, right.alphabet);
    }

    int side_of(SymbolId s) const {
        if (left.alphabet.contains(s)) return 0;
        if (right.alphabet.contains(s)) return 1;
        throw std::invalid_argument("word leaves the product alphabet: " + symbol_name(s));
    }

    const GroupOracle& factor(int side) const { return side == 0 ? left : right; }

    std::vector<Syllable> split(const Word& w) const {
        std::vector<Syllable> out;
        for (const Letter& l : w.letters) {
            int s = side_of(l.symbol);
            if (out.empty() || out.back().side != s) out.push_back(Syllable{s, Word{}});
            out.back().word.append(l);
        }
        return out;
    }

    // Deletes factor-trivial syllables and merges neighbours to a fixpoint.
    SyllableForm normalize(const Word& w) const {
        SyllableForm form;
        form.syllables = split(reduce(w));
        bool changed = true;
        while (changed) {
            changed = false;
            for (std::size_t i = 0; i < form.syllables.size(); ++i) {
                Answer a = factor(form.syllables[i].side).is_identity(form.syllables[i].word);
                if (a == Answer::yes) {
                    form.syllables.erase(form.syllables.begin() + static_cast<std::ptrdiff_t>(i));
                    if (i > 0 && i < form.syllables.size() &&
                        form.syllables[i - 1].side == form.syllables[i].side) {
                        form.syllables[i - 1].word =
                            reduce(form.syllables[i - 1].word * form.syllables[i].word);
                        form.syllables.erase(form.syllables.begin() +
                                             static_cast<std::ptrdiff_t>(i));
                    }
                    changed = true;
                    break;
                }
                if (a == Answer::inconclusive) form.status = Answer::inconclusive;
            }
        }
        return form;
    }

    Answer is_identity(const Word& w) const {
        SyllableForm form = normalize(w);
        if (form.syllables.empty()) return Answer::yes;
        if (form.status == Answer::inconclusive) return Answer::inconclusive;
        return Answer::no;
    }

    std::optional<Word> normal_form(const Word& w) const {
        SyllableForm form = normalize(w);
        if (form.status == Answer::inconclusive) return std::nullopt;
        Word out;
        for (const Syllable& s : form.syllables) {
            if (!factor(s.side).has_normal_form()) return std::nullopt;
            auto nf = factor(s.side).normal_form(s.word);
            if (!nf) return std::nullopt;
            out.append(*nf);
        }
        return out;
    }
};

SyllableForm FreeProduct::normal_form_syllables(const Word& w) const {
    return context->normalize(w);
}

FreeProduct free_product(GroupOracle left, GroupOracle right) {
    auto ctx = std::make_shared<FreeProductContext>(std::move(left), std::move(right));
    FreeProduct fp;
    fp.context = ctx;
    fp.oracle.name = "free-product(" + ctx->left.name + "," + ctx->right.name + ")";
    fp.oracle.alphabet = ctx->combined;
    fp.oracle.is_identity = [ctx](const Word& w) { return ctx->is_identity(w); };
    bool nf_ok = ctx->left.has_normal_form() && ctx->right.has_normal_form();
    if (nf_ok)
        fp.oracle.normal_form = [ctx](const Word& w) { return ctx->normal_form(w); };
    return fp;
}

GroupOracle free_product_oracle(GroupOracle left, GroupOracle right) {
    return free_product(std::move(left), std::move(right)).oracle;
}

// ---------------------------------------------------------------------------
// Amalgamated products

class AmalgamContext {
public:
    GroupOracle left, right;
    Alphabet combined;
    std::vector<std::pair<Word, Word>> pairs;
    ConstructiveSubgroupOracle member[2];
    struct RepEntry {
        std::optional<Word> rep;
        long shift = 0;
    };
    mutable std::mutex rep_mutex;
    mutable std::unordered_map<Word, RepEntry, WordHash> rep_cache[2];

    AmalgamContext(GroupOracle l, GroupOracle r, std::vector<std::pair<Word, Word>> ps,
                   ConstructiveSubgroupOracle lm, ConstructiveSubgroupOracle rm)
        : left(std::move(l)), right(std::move(r)), pairs(std::move(ps)) {
        combined = disjoint_union(left.alphabet, right.alphabet);
        member[0] = std::move(lm);
        member[1] = std::move(rm);
        for (auto& [u, v] : pairs) {
            if (!left.alphabet.contains_word(u) || !right.alphabet.contains_word(v))
                throw std::invalid_argument("amalgam pair words on the wrong sides");
        }
    }

    const GroupOracle& factor(int side) const { return side == 0 ? left : right; }

    Word pair_word(int side, int index) const {
        const auto& [u, v] = pairs.at(static_cast<std::size_t>(index));
        return side == 0 ? u : v;
    }

    Word translate(int from_side, const std::vector<std::pair<int, int>>& expr) const {
        Word out;
        for (auto [idx, sign] : expr) {
            Word g = pair_word(1 - from_side, idx);
            if (sign > 0)
                out.append(g);
            else
                out.append(invert(g));
        }
        return reduce(out);
    }

    int side_of(SymbolId s) const {
        if (left.alphabet.contains(s)) return 0;
        if (right.alphabet.contains(s)) return 1;
        throw std::invalid_argument("word leaves the amalgam alphabet: " + symbol_name(s));
    }

    std::vector<Syllable> split(const Word& w) const {
        std::vector<Syllable> out;
        for (const Letter& l : w.letters) {
            int s = side_of(l.symbol);
            if (out.empty() || out.back().side != s) out.push_back(Syllable{s, Word{}});
            out.back().word.append(l);
        }
        return out;
    }

    // Reduced form: trivial syllables deleted, interior amalgam-subgroup
    // syllables rewritten to the other side and merged. The syllable count
    // strictly decreases at every rewrite.
    SyllableForm reduce_form(const Word& w) const {
        SyllableForm form;
        form.syllables = split(reduce(w));
        bool changed = true;
        while (changed) {
            changed = false;
            // Pass 1: drop factor-trivial syllables, merging neighbours.
            for (std::size_t i = 0; i < form.syllables.size(); ++i) {
                Answer a = factor(form.syllables[i].side).is_identity(form.syllables[i].word);
                if (a == Answer::yes) {
                    form.syllables.erase(form.syllables.begin() + static_cast<std::ptrdiff_t>(i));
                    if (i > 0 && i < form.syllables.size() &&
                        form.syllables[i - 1].side == form.syllables[i].side) {
                        form.syllables[i - 1].word =
                            reduce(form.syllables[i - 1].word * form.syllables[i].word);
                        form.syllables.erase(form.syllables.begin() +
                                             static_cast<std::ptrdiff_t>(i));
                    }
                    changed = true;
                    break;
                }
                if (a == Answer::inconclusive) form.status = Answer::inconclusive;
            }
            if (changed) continue;
            if (form.syllables.size() < 2) break;
            // Pass 2: rewrite an amalgam-subgroup syllable across.
            for (std::size_t i = 0; i < form.syllables.size(); ++i) {
                int side = form.syllables[i].side;
                SubgroupMembership m = member[side].contains(form.syllables[i].word);
                if (m.member == Answer::inconclusive) {
                    form.status = Answer::inconclusive;
                    continue;
                }
                if (m.member != Answer::yes) continue;
                Word moved = translate(side, m.expression);
                Word merged = moved;
                std::size_t lo = i, hi = i;
                if (i > 0) {
                    merged = form.syllables[i - 1].word * merged;
                    lo = i - 1;
                }
                if (i + 1 < form.syllables.size()) {
                    merged = merged * form.syllables[i + 1].word;
                    hi = i + 1;
                }
                Syllable repl{1 - side, reduce(merged)};
                form.syllables.erase(form.syllables.begin() + static_cast<std::ptrdiff_t>(lo),
                                     form.syllables.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
                form.syllables.insert(form.syllables.begin() + static_cast<std::ptrdiff_t>(lo),
                                      repl);
                changed = true;
                break;
            }
        }
        return form;
    }

    Answer is_identity(const Word& w) const {
        SyllableForm form = reduce_form(w);
        if (form.syllables.empty()) return Answer::yes;
        if (form.syllables.size() == 1)
            return factor(form.syllables[0].side).is_identity(form.syllables[0].word);
        if (form.status == Answer::inconclusive) return Answer::inconclusive;
        return Answer::no;
    }

    // Canonical coset representative of s<A> on one side, by scanning powers
    // of the side's amalgamated generator around the shortlex minimum. The
    // scan is keyed by the side normal form so the choice is coset-canonical,
    // and cached: products revisit the same syllables constantly.
    std::optional<Word> coset_rep(int side, const Word& s, long* shift) const {
        if (pairs.size() != 1) return std::nullopt;
        const GroupOracle& f = factor(side);
        if (!f.has_normal_form()) return std::nullopt;
        auto nfs = f.normal_form(s);
        if (!nfs) return std::nullopt;
        {
            std::scoped_lock lock(rep_mutex);
            auto it = rep_cache[side].find(*nfs);
            if (it != rep_cache[side].end()) {
                *shift = it->second.shift;
                return it->second.rep;
            }
        }
        std::optional<Word> result;
        long result_shift = 0;
        Word u = pair_word(side, 0);
        long window = 4;
        const long cap = 64;
        while (true) {
            std::optional<Word> best;
            long best_k = 0;
            for (long k = -window; k <= window; ++k) {
                Word cand = s;
                Word step = k >= 0 ? u : invert(u);
                for (long i = 0; i < std::labs(k); ++i) cand.append(step);
                auto nf = f.normal_form(cand);
                if (!nf) return std::nullopt;
                if (!best || shortlex_less(f.alphabet, *nf, *best)) {
                    best = *nf;
                    best_k = k;
                }
            }
            if (std::labs(best_k) <= window - 3) {
                result = best;
                result_shift = best_k;
                break;
            }
            window *= 2;
            if (window > cap) return std::nullopt;
        }
        {
            std::scoped_lock lock(rep_mutex);
            rep_cache[side].emplace(*nfs, RepEntry{result, result_shift});
        }
        *shift = result_shift;
        return result;
    }

    std::optional<Word> normal_form(const Word& w) const {
        SyllableForm form = reduce_form(w);
        if (form.status == Answer::inconclusive) return std::nullopt;
        if (form.syllables.empty()) return Word{};
        if (form.syllables.size() == 1) {
            // An amalgam-subgroup element can be spelled on either side;
            // canonicalize those to the left factor.
            const Syllable& s = form.syllables[0];
            SubgroupMembership m = member[s.side].contains(s.word);
            if (m.member == Answer::inconclusive) return std::nullopt;
            if (m.member == Answer::yes) {
                Word on_left;
                for (auto [idx, sign] : m.expression) {
                    Word g = pair_word(0, idx);
                    on_left.append(sign > 0 ? g : invert(g));
                }
                if (!left.has_normal_form()) return std::nullopt;
                return left.normal_form(on_left);
            }
        }
        Word out;
        std::vector<Syllable> sylls = form.syllables;
        for (std::size_t i = 0; i + 1 < sylls.size(); ++i) {
            long shift = 0;
            auto rep = coset_rep(sylls[i].side, sylls[i].word, &shift);
            if (!rep) return std::nullopt;
            out.append(*rep);
            // s = rep * u^-shift; push u^-shift into the next syllable on the
            // other side as v^-shift.
            if (shift != 0) {
                Word v = pair_word(sylls[i + 1].side, 0);
                Word carry;
                Word step = shift > 0 ? invert(v) : v;
                for (long j = 0; j < std::labs(shift); ++j) carry.append(step);
                sylls[i + 1].word = reduce(carry * sylls[i + 1].word);
            }
        }
        const GroupOracle& lastf = factor(sylls.back().side);
        if (!lastf.has_normal_form()) return std::nullopt;
        auto nf = lastf.normal_form(sylls.back().word);
        if (!nf) return std::nullopt;
        out.append(*nf);
        return out;
    }
};

SyllableForm AmalgamProduct::normal_form_syllables(const Word& w) const {
    return context->reduce_form(w);
}

AmalgamProduct amalgam_product(GroupOracle left, GroupOracle right,
                               std::vector<std::pair<Word, Word>> pairs,
                               ConstructiveSubgroupOracle left_member,
                               ConstructiveSubgroupOracle right_member) {
    auto ctx = std::make_shared<AmalgamContext>(std::move(left), std::move(right),
                                                std::move(pairs), std::move(left_member),
                                                std::move(right_member));
    AmalgamProduct ap;
    ap.context = ctx;
    ap.oracle.name = "amalgam(" + ctx->left.name + "," + ctx->right.name + ")";
    ap.oracle.alphabet = ctx->combined;
    ap.oracle.is_identity = [ctx](const Word& w) { return ctx->is_identity(w); };
    ap.oracle.normal_form = [ctx](const Word& w) { return ctx->normal_form(w); };
    return ap;
}

GroupOracle amalgam_oracle(GroupOracle left, GroupOracle right,
                           std::vector<std::pair<Word, Word>> pairs,
                           ConstructiveSubgroupOracle left_member,
                           ConstructiveSubgroupOracle right_member) {
    return amalgam_product(std::move(left), std::move(right), std::move(pairs),
                           std::move(left_member), std::move(right_member))
        .oracle;
}

GroupOracle memoized(GroupOracle inner, std::size_t cache_cap) {
    struct Cache {
        std::unordered_map<Word, Answer, WordHash> ident;
        std::unordered_map<Word, std::optional<Word>, WordHash> nf;
        std::size_t cap;
    };
    auto cache = std::make_shared<Cache>();
    cache->cap = cache_cap;
    auto in = std::make_shared<GroupOracle>(std::move(inner));

    GroupOracle o;
    o.name = in->name;
    o.alphabet = in->alphabet;
    o.is_identity = [in, cache](const Word& w) {
        auto it = cache->ident.find(w);
        if (it != cache->ident.end()) return it->second;
        Answer a = in->is_identity(w);
        if (cache->ident.size() < cache->cap) cache->ident.emplace(w, a);
        return a;
    };
    if (in->has_normal_form()) {
        o.normal_form = [in, cache](const Word& w) {
            auto it = cache->nf.find(w);
            if (it != cache->nf.end()) return it->second;
            auto nf = in->normal_form(w);
            if (cache->nf.size() < cache->cap) cache->nf.emplace(w, nf);
            return nf;
        };
    }
    return o;
}

} // namespace invmon
