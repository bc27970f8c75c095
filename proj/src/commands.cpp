#include "invmon/commands.hpp"

#include <chrono>
#include <fstream>
#include <set>

#include "invmon/eunitary.hpp"
#include "invmon/stephen.hpp"

namespace invmon {

std::string directory_of(const std::string& path) {
    auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string(".") : path.substr(0, pos);
}

namespace {

std::string resolve(const std::string& base_dir, const std::string& ref) {
    if (!ref.empty() && ref.front() == '/') return ref;
    return base_dir + "/" + ref;
}

// Wraps an oracle so that queries are translated first; the declared alphabet
// is widened so downstream shortlex comparisons stay total on the normal
// forms' letters.
GroupOracle translated_oracle(std::string name, const Alphabet& outer,
                              std::function<Word(const Word&)> translate, GroupOracle inner) {
    GroupOracle o;
    o.name = std::move(name);
    o.alphabet = outer;
    for (SymbolId s : inner.alphabet.symbols)
        if (!o.alphabet.contains(s)) o.alphabet.symbols.push_back(s);
    auto in = std::make_shared<GroupOracle>(std::move(inner));
    o.is_identity = [in, translate](const Word& w) { return in->is_identity(translate(w)); };
    if (in->has_normal_form())
        o.normal_form = [in, translate](const Word& w) { return in->normal_form(translate(w)); };
    return o;
}

GroupOracle structural_oracle(const PresentationFile& file, int kb_budget) {
    const Presentation& p = file.pres;
    Factorisation f = file.factorisation();

    bool nontrivial_fact = file.fact.has_value();

    auto try_uml = [&]() -> std::optional<GroupOracle> {
        auto markers = detect_uniquely_marked(f);
        if (!markers) return std::nullopt;
        UmlDecomposition dec = uml_decompose(p, f, *markers);
        auto h_leaf = leaf_oracle(dec.h, kb_budget);
        if (!h_leaf) return std::nullopt;
        GroupOracle inner = dec.free_part.symbols.empty()
                                ? memoized(*h_leaf)
                                : free_product_oracle(memoized(*h_leaf),
                                                      free_oracle(dec.free_part));
        // Queries may mix outer letters with inner coordinates (normal forms
        // circulate through product towers), so the map fixes inner symbols.
        auto map = std::make_shared<std::map<SymbolId, Word>>(dec.forward);
        for (SymbolId s : inner.alphabet.symbols)
            if (!map->count(s)) (*map)[s] = Word({Letter(s, 1)});
        return translated_oracle(
            "structural-uml(" + inner.name + ")", p.alphabet,
            [map](const Word& w) { return reduce(substitute(w, *map)); }, std::move(inner));
    };

    auto try_da = [&]() -> std::optional<GroupOracle> {
        if (!detect_alphabetically_disjoint(f)) return std::nullopt;
        std::vector<int> orders;
        if (!file.factor_orders.empty()) {
            orders.assign(f.factors.size(), 0);
            for (auto [idx, m] : file.factor_orders) orders[static_cast<std::size_t>(idx)] = m;
        }
        DaChain chain = da_chain(p, f, orders);
        auto h_leaf = leaf_oracle(chain.h, kb_budget);
        if (!h_leaf) return std::nullopt;
        GroupOracle acc = chain.x0.symbols.empty()
                              ? memoized(*h_leaf)
                              : free_product_oracle(memoized(*h_leaf), free_oracle(chain.x0));
        // Rebuild G_{j-1} from G_j bottom-up.
        for (std::size_t j = chain.levels.size(); j-- > 0;) {
            const DaChainLevel& lv = chain.levels[j];
            GroupOracle b = lv.order == 0 ? free_oracle(lv.support)
                                          : cyclic_oracle(lv.support.symbols[0], lv.order);
            Word zw({Letter(lv.z, 1)});
            acc = memoized(amalgam_oracle(acc, b, {{zw, lv.u}}, cyclic_subgroup_oracle(acc, zw),
                                          cyclic_subgroup_oracle(b, lv.u)));
        }
        GroupOracle out = std::move(acc);
        out.name = "structural-da(" + out.name + ")";
        Alphabet widened = p.alphabet;
        for (SymbolId s : out.alphabet.symbols)
            if (!widened.contains(s)) widened.symbols.push_back(s);
        out.alphabet = widened;
        return out;
    };

    // A declared nontrivial factorisation usually carries the intended
    // decomposition; try it before the raw leaf ladder.
    if (nontrivial_fact) {
        if (auto o = try_uml()) return *o;
        if (auto o = try_da()) return *o;
    }
    if (auto o = leaf_oracle(p, kb_budget)) return *o;
    if (!nontrivial_fact) {
        if (auto o = try_uml()) return *o;
        if (auto o = try_da()) return *o;
    }
    throw std::runtime_error(
        "structural oracle assembly failed: no leaf or decomposition applies");
}

} // namespace

GroupOracle build_group_oracle(const PresentationFile& file, const std::string& base_dir) {
    switch (file.oracle.kind) {
        case OracleSpec::Kind::free_group: {
            for (const Word& r : file.pres.relators)
                if (!reduce(r).empty())
                    throw std::runtime_error("oracle: free declared, but relator " + to_string(r) +
                                             " is not freely trivial");
            return free_oracle(file.pres.alphabet);
        }
        case OracleSpec::Kind::cyclic: {
            if (file.pres.alphabet.symbols.size() != 1)
                throw std::runtime_error("oracle: cyclic needs a single generator");
            return cyclic_oracle(file.pres.alphabet.symbols[0], file.oracle.modulus);
        }
        case OracleSpec::Kind::knuth_bendix:
            return kb_oracle(file.pres, file.oracle.budget);
        case OracleSpec::Kind::amalgam: {
            PresentationFile left = load_presentation_file(resolve(base_dir, file.oracle.left_ref));
            PresentationFile right =
                load_presentation_file(resolve(base_dir, file.oracle.right_ref));
            GroupOracle lo = memoized(build_group_oracle(left, base_dir));
            GroupOracle ro = memoized(build_group_oracle(right, base_dir));
            if (file.amalgam_pairs.empty())
                throw std::runtime_error("oracle: amalgam-of needs amalgam_pair lines");
            if (file.amalgam_pairs.size() == 1) {
                const auto& [u, v] = file.amalgam_pairs[0];
                return memoized(amalgam_oracle(lo, ro, {file.amalgam_pairs[0]},
                                               cyclic_subgroup_oracle(lo, u),
                                               cyclic_subgroup_oracle(ro, v)));
            }
            throw std::runtime_error(
                "oracle: amalgam-of over several pairs is not supported; the worked examples "
                "amalgamate over a single pair");
        }
        case OracleSpec::Kind::unspecified:
            return structural_oracle(file, 20000);
    }
    throw std::logic_error("unreachable oracle kind");
}

MeuContext build_meu_context(const PresentationFile& file, const std::string& base_dir) {
    MeuContext ctx;
    ctx.pres = file.pres;
    ctx.group = build_group_oracle(file, base_dir);
    ctx.prefix = build_prefix_membership(file, ctx.group);
    return ctx;
}

namespace {

Json word_list_json(const std::vector<Word>& ws) {
    Json arr = Json::array();
    for (const Word& w : ws) arr.push_back(to_string(w));
    return arr;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

} // namespace

Json cmd_analyze(const std::string& path, const CommandOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    PresentationFile file = load_presentation_file(path);
    std::string base_dir = directory_of(path);

    Json out;
    out["command"] = "analyze";
    out["file"] = path;
    out["kind"] = file.pres.kind == PresentationKind::group ? "group" : "inverse_monoid";
    out["relators"] = word_list_json(file.pres.relators);

    Factorisation f = file.factorisation();
    FactorisationCheck chk = validate_factorisation(file.pres, f);
    out["factorisation"]["valid"] = chk.ok;
    if (!chk.ok) out["factorisation"]["error"] = chk.error;
    out["factorisation"]["factors"] = word_list_json(f.factors);

    if (chk.ok) {
        auto markers = detect_uniquely_marked(f);
        out["factorisation"]["uniquely_marked"] = markers.has_value();
        if (markers) {
            Json m;
            for (auto [idx, sym] : markers->marker)
                m[to_string(f.factors[static_cast<std::size_t>(idx)])] = symbol_name(sym);
            out["factorisation"]["markers"] = m;
        }
        out["factorisation"]["alphabetically_disjoint"] = detect_alphabetically_disjoint(f);
    }

    AdjanClosure closure = adjan_unit_closure(file.pres, 20000, f.factors, opts.budget);
    out["units"]["closure"] = word_list_json(closure.units);
    out["units"]["budget_exhausted"] = closure.budget_exhausted;
    bool all_factors_units = true;
    for (const Word& u : f.factors)
        if (!closure.certifies(u)) all_factors_units = false;
    out["units"]["factorisation_unital"] =
        all_factors_units ? "via closure" : (file.unital_asserted ? "asserted" : "not certified");

    // E-unitarity attempts.
    Json eu;
    if (file.pres.relators.size() == 1) {
        try {
            EUnitaryCertificate cert = certify_single_relator(file.pres);
            eu["route"] = cert.route;
            eu["certified"] = true;
        } catch (const CertificationFailure& e) {
            eu["certified"] = false;
            eu["reason"] = e.what();
        }
    } else if (file.oracle.kind == OracleSpec::Kind::amalgam && !file.amalgam_pairs.empty()) {
        try {
            PresentationFile left = load_presentation_file(resolve(base_dir, file.oracle.left_ref));
            PresentationFile right =
                load_presentation_file(resolve(base_dir, file.oracle.right_ref));
            EUnitaryCertificate lc = certify_single_relator(left.pres);
            EUnitaryCertificate rc = certify_single_relator(right.pres);
            std::vector<Word> lhints = left.factorisation().factors;
            std::vector<Word> rhints = right.factorisation().factors;
            for (const auto& [u, v] : file.amalgam_pairs) {
                lhints.push_back(u);
                rhints.push_back(v);
            }
            AdjanClosure lu = adjan_unit_closure(left.pres, 20000, lhints, opts.budget);
            AdjanClosure ru = adjan_unit_closure(right.pres, 20000, rhints, opts.budget);
            AmalgamCertification cert =
                certify_amalgam(left, lc, right, rc, file.amalgam_pairs, lu, ru);
            eu["route"] = cert.certificate.route;
            eu["certified"] = true;
            eu["replay"] = replay_certificate(cert.certificate);
        } catch (const std::exception& e) {
            eu["certified"] = false;
            eu["reason"] = e.what();
        }
    } else {
        eu["certified"] = false;
        eu["reason"] = "no route applies (not single-relator, no amalgam declaration)";
    }
    out["eunitary"] = eu;

    if (!file.hidden.empty()) {
        try {
            HiddenUmlResult hr = hidden_uml_rewrite(file.pres, f, file.hidden);
            PresentationFile rewritten;
            rewritten.pres = hr.pres;
            rewritten.fact = hr.fact;
            out["hidden_rewrite"]["applied"] = true;
            out["hidden_rewrite"]["new_factors"] = word_list_json(hr.new_factors);
            out["hidden_rewrite"]["presentation"] = print_presentation_file(rewritten);
            if (!opts.out_path.empty()) {
                std::ofstream os(opts.out_path);
                os << print_presentation_file(rewritten);
                out["hidden_rewrite"]["written_to"] = opts.out_path;
            }
        } catch (const HiddenUmlError& e) {
            out["hidden_rewrite"]["applied"] = false;
            out["hidden_rewrite"]["condition"] = e.condition;
            out["hidden_rewrite"]["reason"] = e.what();
        }
    }

    out["ms"] = elapsed_ms(t0);
    return out;
}

Json cmd_pmp(const std::string& path, const Word& query, const CommandOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    PresentationFile file = load_presentation_file(path);
    Json out;
    out["command"] = "pmp";
    out["file"] = path;
    out["word"] = to_string(query);
    (void)opts;
    try {
        GroupOracle g = build_group_oracle(file, directory_of(path));
        PrefixMembershipOracle pmp = build_prefix_membership(file, g);
        std::vector<std::string> trace;
        Answer a = pmp.contains_traced(query, &trace);
        out["member"] = a == Answer::yes ? Json(true)
                        : a == Answer::no ? Json(false)
                                          : Json("inconclusive");
        out["pipeline"] = pmp.pipeline;
        out["certification"] = pmp.certification;
        out["trace"] = trace;
    } catch (const PipelineNotApplicable& e) {
        out["member"] = "not-applicable";
        out["reason"] = e.what();
    }
    out["ms"] = elapsed_ms(t0);
    return out;
}

Json cmd_wp(const std::string& path, const Word& u, const Word& v, const CommandOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    PresentationFile file = load_presentation_file(path);
    Json out;
    out["command"] = "wp";
    out["file"] = path;
    out["u"] = to_string(u);
    out["v"] = to_string(v);

    bool meu_available = true;
    try {
        MeuContext ctx = build_meu_context(file, directory_of(path));
        Answer a = meu_equal(ctx, u, v);
        if (a != Answer::inconclusive) {
            out["answer"] = a == Answer::yes ? "equal" : "false";
            out["engine"] = "meu";
            out["scope"] = "maximal E-unitary image";
            out["ms"] = elapsed_ms(t0);
            return out;
        }
    } catch (const std::exception&) {
        meu_available = false;
    }

    SemiDecision d = stephen_equal(file.pres, u, v, opts.budget);
    out["answer"] = d == SemiDecision::equal ? "equal" : "unknown";
    out["engine"] = "stephen";
    out["budget_rounds"] = opts.budget;
    if (!meu_available) out["note"] = "meu oracles unavailable; semi-decision only";
    out["ms"] = elapsed_ms(t0);
    return out;
}

Json cmd_amalgamate(const std::string& left_path, const std::string& right_path,
                    const std::vector<std::pair<Word, Word>>& pairs, const CommandOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    PresentationFile left = load_presentation_file(left_path);
    PresentationFile right = load_presentation_file(right_path);
    Json out;
    out["command"] = "amalgamate";
    out["left"] = left_path;
    out["right"] = right_path;
    try {
        EUnitaryCertificate lc = certify_single_relator(left.pres);
        EUnitaryCertificate rc = certify_single_relator(right.pres);
        std::vector<Word> lhints = left.factorisation().factors;
        std::vector<Word> rhints = right.factorisation().factors;
        for (const auto& [u, v] : pairs) {
            lhints.push_back(u);
            rhints.push_back(v);
        }
        AdjanClosure lu = adjan_unit_closure(left.pres, 20000, lhints, opts.budget);
        AdjanClosure ru = adjan_unit_closure(right.pres, 20000, rhints, opts.budget);
        AmalgamCertification cert = certify_amalgam(left, lc, right, rc, pairs, lu, ru);

        PresentationFile combined = cert.combined;
        combined.oracle.kind = OracleSpec::Kind::amalgam;
        combined.oracle.left_ref = left_path;
        combined.oracle.right_ref = right_path;
        out["presentation"] = print_presentation_file(combined);
        out["certificate"] = Json::parse(certificate_to_json(cert.certificate));
        out["certified"] = true;
        if (!opts.out_path.empty()) {
            std::ofstream os(opts.out_path);
            os << print_presentation_file(combined);
            std::ofstream cs(opts.out_path + ".cert.json");
            cs << certificate_to_json(cert.certificate) << "\n";
            out["written_to"] = opts.out_path;
        }
    } catch (const std::exception& e) {
        out["certified"] = false;
        out["reason"] = e.what();
    }
    out["ms"] = elapsed_ms(t0);
    return out;
}

Json cmd_stephen(const std::string& path, const Word& u, const Word& v,
                 const CommandOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    PresentationFile file = load_presentation_file(path);
    Json out;
    out["command"] = "stephen";
    out["file"] = path;
    out["u"] = to_string(u);
    out["v"] = to_string(v);
    SemiDecision d = stephen_equal(file.pres, u, v, opts.budget);
    out["answer"] = to_string(d);
    out["budget_rounds"] = opts.budget;
    if (!opts.dot_path.empty()) {
        StephenApproximant approx(file.pres, u, opts.budget);
        std::ofstream os(opts.dot_path);
        os << approx.to_dot();
        out["dot"] = opts.dot_path;
    }
    out["ms"] = elapsed_ms(t0);
    return out;
}

} // namespace invmon
