#include "kemeny/json_writer.hpp"

#include <cmath>
#include <cstdio>

namespace kemeny {
namespace {

void write(const nlohmann::ordered_json& v, int indent, int depth, std::string& out) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out += '\n';
        out.append(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (v.type()) {
        case nlohmann::ordered_json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(depth + 1);
                out += nlohmann::ordered_json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                write(it.value(), indent, depth + 1, out);
            }
            newline(depth);
            out += '}';
            return;
        }
        case nlohmann::ordered_json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            // Arrays of scalars stay on one line; matrices get one row per line.
            bool scalars = true;
            for (const auto& e : v) scalars = scalars && !e.is_structured();
            out += '[';
            bool first = true;
            for (const auto& e : v) {
                if (!first) out += scalars ? ", " : ",";
                first = false;
                if (!scalars) newline(depth + 1);
                write(e, indent, depth + 1, out);
            }
            if (!scalars) newline(depth);
            out += ']';
            return;
        }
        case nlohmann::ordered_json::value_t::number_float: {
            const double d = v.get<double>();
            if (!std::isfinite(d)) {
                out += "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", d);
            out += buf;
            return;
        }
        default:
            out += v.dump();
            return;
    }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& value, int indent) {
    std::string out;
    write(value, indent, 0, out);
    out += '\n';
    return out;
}

}  // namespace kemeny
