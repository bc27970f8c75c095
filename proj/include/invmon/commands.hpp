#ifndef INVMON_COMMANDS_HPP
#define INVMON_COMMANDS_HPP

#include <json.hpp>

#include <optional>
#include <string>

#include "invmon/meu.hpp"
#include "invmon/oracles.hpp"
#include "invmon/prefix_membership.hpp"
#include "invmon/presentation.hpp"

namespace invmon {

using Json = nlohmann::ordered_json;

struct CommandOptions {
    int budget = 4;         // stephen rounds
    int kb_budget = 20000;  // completion rule budget
    int max_len = 8;
    std::string dot_path;
    std::string out_path;
};

// Builds the word-problem oracle a file declares:
//   free | cyclic m | kb budget | amalgam-of left right | structural (default)
// `base_dir` resolves amalgam-of references. The structural route uses the
// file's own factorisation: a leaf ladder on the whole presentation, the
// marked-factor free-product splitting, or the disjoint-alphabet chain.
GroupOracle build_group_oracle(const PresentationFile& file, const std::string& base_dir);

// Full context for meu queries: group oracle plus prefix membership.
MeuContext build_meu_context(const PresentationFile& file, const std::string& base_dir);

Json cmd_analyze(const std::string& path, const CommandOptions& opts);
Json cmd_pmp(const std::string& path, const Word& query, const CommandOptions& opts);
Json cmd_wp(const std::string& path, const Word& u, const Word& v, const CommandOptions& opts);
Json cmd_amalgamate(const std::string& left_path, const std::string& right_path,
                    const std::vector<std::pair<Word, Word>>& pairs, const CommandOptions& opts);
Json cmd_stephen(const std::string& path, const Word& u, const Word& v,
                 const CommandOptions& opts);

std::string directory_of(const std::string& path);

} // namespace invmon

#endif
