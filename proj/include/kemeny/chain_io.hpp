#pragma once

#include "kemeny/chain.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace kemeny {

class ChainFileError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raw contents of a chain file, before validate_chain.
struct ChainFile {
    std::string name;
    std::vector<std::string> states;
    Matrix p;
};

/// {"name": string, "states": [string], "P": [[number]]}; name and states optional.
ChainFile parse_chain_json(const std::string& text);

/// Edge list with header "from,to,prob"; missing pairs are 0 and states are
/// the sorted set of labels that appear.
ChainFile parse_chain_csv(const std::string& text, std::string name = {});

/// Picks the parser from the first non-blank character ('{' means JSON).
ChainFile load_chain_file(const std::filesystem::path& path);

}  // namespace kemeny
