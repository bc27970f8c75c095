// Command-line front door: parse presentation files, run analyses and
// decision queries, emit JSON reports and DOT graphs.
#include <CLI11.hpp>

#include <iostream>

#include "invmon/commands.hpp"

using namespace invmon;

namespace {

void emit(const Json& verdict, bool json_mode) {
    if (json_mode) {
        std::cout << verdict.dump(2) << "\n";
        return;
    }
    // Compact human-readable rendering of the same verdict.
    for (auto& [key, value] : verdict.items()) {
        if (value.is_structured())
            std::cout << key << ": " << value.dump() << "\n";
        else
            std::cout << key << ": " << (value.is_string() ? value.get<std::string>()
                                                           : value.dump())
                      << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"invmon - decision procedures for special inverse monoid presentations"};
    app.require_subcommand(1);

    bool json_mode = false;
    CommandOptions opts;
    app.add_flag("--json", json_mode, "machine-readable verdict on stdout");
    app.add_option("--budget", opts.budget, "sew-and-fold rounds for the Stephen engine");
    app.add_option("--kb-budget", opts.kb_budget, "rule budget for Knuth-Bendix completion");
    app.add_option("--max-len", opts.max_len, "word length bound for sampled checks");
    app.add_option("--dot", opts.dot_path, "write a DOT graph here");
    app.add_option("--out", opts.out_path, "write emitted presentations here");

    std::string file, file2, word_text, u_text, v_text;
    std::vector<std::string> pair_texts;

    auto* analyze = app.add_subcommand("analyze", "factorisation classes, units, E-unitarity");
    analyze->add_option("file", file)->required();

    auto* pmp = app.add_subcommand("pmp", "prefix membership of a word");
    pmp->add_option("file", file)->required();
    pmp->add_option("--word", word_text, "query word, e.g. \"a a b'\"")->required();

    auto* wp = app.add_subcommand("wp", "word problem of the maximal E-unitary image");
    wp->add_option("file", file)->required();
    wp->add_option("--eq", u_text, "left word")->required();
    wp->add_option("--to", v_text, "right word (defaults to the empty word)");

    auto* amalgamate = app.add_subcommand("amalgamate", "certify and emit an amalgam");
    amalgamate->add_option("left", file)->required();
    amalgamate->add_option("right", file2)->required();
    amalgamate->add_option("--pair", pair_texts, "amalgamated pair \"u = v\"")->required();

    auto* stephen = app.add_subcommand("stephen", "sew-and-fold semi-decision");
    stephen->add_option("file", file)->required();
    stephen->add_option("--eq", u_text, "left word")->required();
    stephen->add_option("--to", v_text, "right word (defaults to the empty word)");

    CLI11_PARSE(app, argc, argv);

    try {
        Json verdict;
        if (*analyze) {
            verdict = cmd_analyze(file, opts);
        } else if (*pmp) {
            verdict = cmd_pmp(file, parse_word(word_text), opts);
        } else if (*wp) {
            verdict = cmd_wp(file, parse_word(u_text), parse_word(v_text), opts);
        } else if (*amalgamate) {
            std::vector<std::pair<Word, Word>> pairs;
            for (const std::string& t : pair_texts) {
                auto eq = t.find('=');
                if (eq == std::string::npos) throw std::runtime_error("--pair needs u = v");
                pairs.emplace_back(parse_word(t.substr(0, eq)), parse_word(t.substr(eq + 1)));
            }
            verdict = cmd_amalgamate(file, file2, pairs, opts);
        } else if (*stephen) {
            verdict = cmd_stephen(file, parse_word(u_text), parse_word(v_text), opts);
        }
        emit(verdict, json_mode);
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
