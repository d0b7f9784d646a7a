#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace revcue::csv {

/// RFC-4180 field escaping: quote when the field contains a comma, quote,
/// or line break; double embedded quotes.
inline std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (const char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

/// Reads one RFC-4180 record (quoted fields may span lines). Returns false
/// at end of input. `lines_consumed` counts physical lines read.
inline bool read_record(std::istream& in, std::vector<std::string>& fields,
                        std::size_t& lines_consumed) {
    fields.clear();
    lines_consumed = 0;
    std::string field;
    bool in_quotes = false;
    bool any = false;
    int c;
    while ((c = in.get()) != EOF) {
        any = true;
        const char ch = static_cast<char>(c);
        if (in_quotes) {
            if (ch == '"') {
                if (in.peek() == '"') {
                    in.get();
                    field.push_back('"');
                } else {
                    in_quotes = false;
                }
            } else {
                if (ch == '\n') ++lines_consumed;
                field.push_back(ch);
            }
            continue;
        }
        if (ch == '"' && field.empty()) {
            in_quotes = true;
        } else if (ch == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (ch == '\n') {
            ++lines_consumed;
            if (!field.empty() && field.back() == '\r') field.pop_back();
            fields.push_back(std::move(field));
            return true;
        } else {
            field.push_back(ch);
        }
    }
    if (!any) return false;
    if (!field.empty() && field.back() == '\r') field.pop_back();
    fields.push_back(std::move(field));
    ++lines_consumed;
    return true;
}

} // namespace revcue::csv
