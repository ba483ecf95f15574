#include "kcrit/app/json_format.hpp"

#include <cmath>
#include <cstdio>

namespace kcrit::app {

namespace {

void newline(std::string& out, int indent, int depth) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * depth), ' ');
}

void dump(const Json& v, std::string& out, int indent, int depth) {
    switch (v.type()) {
        case Json::value_t::object: {
            if (v.empty()) {
                out += "{}";
                return;
            }
            out += '{';
            bool first = true;
            for (auto it = v.begin(); it != v.end(); ++it) {
                if (!first) out += ',';
                first = false;
                newline(out, indent, depth + 1);
                out += Json(it.key()).dump();
                out += indent < 0 ? ":" : ": ";
                dump(it.value(), out, indent, depth + 1);
            }
            newline(out, indent, depth);
            out += '}';
            return;
        }
        case Json::value_t::array: {
            if (v.empty()) {
                out += "[]";
                return;
            }
            out += '[';
            bool first = true;
            for (const auto& item : v) {
                if (!first) out += ',';
                first = false;
                newline(out, indent, depth + 1);
                dump(item, out, indent, depth + 1);
            }
            newline(out, indent, depth);
            out += ']';
            return;
        }
        case Json::value_t::number_float: {
            const double x = v.get<double>();
            if (!std::isfinite(x)) {
                out += "null";
                return;
            }
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            out += buf;
            return;
        }
        default: out += v.dump(); return;
    }
}

}  // namespace

std::string dump_json(const Json& value, int indent) {
    std::string out;
    dump(value, out, indent, 0);
    return out;
}

}  // namespace kcrit::app
