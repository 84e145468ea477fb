#include "kemeny/chain_io.hpp"

#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace kemeny {
namespace {

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

ChainFile parse_chain_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ChainFileError(std::string("ChainFileError(invalid JSON: ") + e.what() + ")");
    }
    if (!doc.is_object() || !doc.contains("P") || !doc["P"].is_array()) {
        throw ChainFileError("ChainFileError(JSON chain needs an array field \"P\")");
    }
    ChainFile out;
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) throw ChainFileError("ChainFileError(\"name\" must be a string)");
        out.name = doc["name"].get<std::string>();
    }
    if (doc.contains("states")) {
        if (!doc["states"].is_array()) throw ChainFileError("ChainFileError(\"states\" must be an array)");
        for (const auto& s : doc["states"]) {
            if (!s.is_string()) throw ChainFileError("ChainFileError(state labels must be strings)");
            out.states.push_back(s.get<std::string>());
        }
    }
    const auto& rows = doc["P"];
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto cols = n == 0 ? 0 : static_cast<Eigen::Index>(rows[0].is_array() ? rows[0].size() : 0);
    out.p.resize(n, cols);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array()) throw ChainFileError("ChainFileError(row " + std::to_string(i) + " is not an array)");
        if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw NotSquare(static_cast<std::size_t>(n), row.size());
        }
        for (Eigen::Index j = 0; j < cols; ++j) {
            const auto& v = row[static_cast<std::size_t>(j)];
            if (!v.is_number()) {
                throw ChainFileError("ChainFileError(P[" + std::to_string(i) + "][" + std::to_string(j) +
                                     "] is not a number)");
            }
            out.p(i, j) = v.get<double>();
        }
    }
    return out;
}

ChainFile parse_chain_csv(const std::string& text, std::string name) {
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    struct Edge {
        std::string from, to;
        double prob;
    };
    std::vector<Edge> edges;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        const auto fields = split_csv_line(line);
        if (!have_header) {
            if (fields != std::vector<std::string>{"from", "to", "prob"}) {
                throw ChainFileError("ChainFileError(CSV header must be \"from,to,prob\")");
            }
            have_header = true;
            continue;
        }
        if (fields.size() != 3 || fields[0].empty() || fields[1].empty()) {
            throw ChainFileError("ChainFileError(line " + std::to_string(line_no) + ": expected from,to,prob)");
        }
        double prob = 0.0;
        try {
            std::size_t used = 0;
            prob = std::stod(fields[2], &used);
            if (used != fields[2].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ChainFileError("ChainFileError(line " + std::to_string(line_no) + ": bad probability \"" +
                                 fields[2] + "\")");
        }
        edges.push_back({fields[0], fields[1], prob});
    }
    if (!have_header) throw ChainFileError("ChainFileError(empty CSV)");

    std::set<std::string> labels;
    for (const auto& e : edges) {
        labels.insert(e.from);
        labels.insert(e.to);
    }
    ChainFile out;
    out.name = std::move(name);
    out.states.assign(labels.begin(), labels.end());
    std::map<std::string, Eigen::Index> index;
    for (std::size_t i = 0; i < out.states.size(); ++i) index[out.states[i]] = static_cast<Eigen::Index>(i);
    const auto n = static_cast<Eigen::Index>(out.states.size());
    out.p = Matrix::Zero(n, n);
    std::set<std::pair<Eigen::Index, Eigen::Index>> seen;
    for (const auto& e : edges) {
        const auto i = index[e.from];
        const auto j = index[e.to];
        if (!seen.insert({i, j}).second) {
            throw ChainFileError("ChainFileError(duplicate edge " + e.from + " -> " + e.to + ")");
        }
        out.p(i, j) = e.prob;
    }
    return out;
}

ChainFile load_chain_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ChainFileError("ChainFileError(cannot read " + path.string() + ")");
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        ChainFile f = parse_chain_json(text);
        if (f.name.empty()) f.name = path.stem().string();
        return f;
    }
    return parse_chain_csv(text, path.stem().string());
}

}  // namespace kemeny
