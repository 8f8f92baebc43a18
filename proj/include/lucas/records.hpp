#pragma once

/**
 * @file records.hpp
 * @brief Flat machine-readable records: CSV with a fixed header, or JSON
 *        lines with keys in schema order.
 *
 * A record is an ordered list of named fields. Integers that can outgrow a
 * machine word are carried as `Decimal` and written to JSON as strings.
 * Reading goes through `RawRecord`, a key -> text map, so typed parsers are
 * shared by both formats.
 */

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

namespace lucas {

enum class Format { json, csv };

inline Format parse_format(std::string_view s) {
    if (s == "json") {
        return Format::json;
    }
    if (s == "csv") {
        return Format::csv;
    }
    throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

struct Decimal {
    std::string digits;
    bool operator==(const Decimal&) const = default;
};

using FieldValue = std::variant<std::monostate, bool, std::int64_t, std::uint64_t, std::string, Decimal>;

struct Field {
    std::string key;
    FieldValue value;
};

using Record = std::vector<Field>;

struct record_parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

inline std::string csv_text(const FieldValue& v) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(std::uint64_t x) const { return std::to_string(x); }
        std::string operator()(const std::string& s) const { return csv_escape(s); }
        std::string operator()(const Decimal& d) const { return d.digits; }
    };
    return std::visit(Visitor{}, v);
}

inline nlohmann::ordered_json json_value(const FieldValue& v) {
    struct Visitor {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(bool b) const { return b; }
        nlohmann::ordered_json operator()(std::int64_t x) const { return x; }
        nlohmann::ordered_json operator()(std::uint64_t x) const { return x; }
        nlohmann::ordered_json operator()(const std::string& s) const { return s; }
        nlohmann::ordered_json operator()(const Decimal& d) const { return d.digits; }
    };
    return std::visit(Visitor{}, v);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) {
        throw record_parse_error("unterminated quote in CSV line");
    }
    out.push_back(std::move(cur));
    return out;
}

} // namespace detail

/// Serializes records of one type. CSV writes the header before the first
/// record; every later record must carry the same keys.
class RecordWriter {
public:
    RecordWriter(std::ostream& out, Format format) : out_(out), format_(format) {}

    void write(const Record& record) {
        if (format_ == Format::json) {
            nlohmann::ordered_json j = nlohmann::ordered_json::object();
            for (const auto& f : record) {
                j[f.key] = detail::json_value(f.value);
            }
            out_ << j.dump() << '\n';
            return;
        }
        if (header_.empty()) {
            for (const auto& f : record) {
                header_.push_back(f.key);
            }
            write_csv_row(header_);
        }
        std::vector<std::string> row;
        for (std::size_t i = 0; i < record.size(); ++i) {
            if (i >= header_.size() || record[i].key != header_[i]) {
                throw std::logic_error("CSV record does not match header at field " + record[i].key);
            }
            row.push_back(detail::csv_text(record[i].value));
        }
        write_csv_row(row, false);
    }

    Format format() const noexcept { return format_; }

private:
    void write_csv_row(const std::vector<std::string>& cells, bool escape = true) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out_ << (i ? "," : "") << (escape ? detail::csv_escape(cells[i]) : cells[i]);
        }
        out_ << '\n';
    }

    std::ostream& out_;
    Format format_;
    std::vector<std::string> header_;
};

/// A parsed record: key -> textual value ("" for null/absent, "true"/"false"
/// for booleans, decimal digits for numbers).
using RawRecord = std::map<std::string, std::string>;

inline std::vector<RawRecord> read_records(std::istream& in, Format format) {
    std::vector<RawRecord> out;
    std::string line;
    if (format == Format::json) {
        while (std::getline(in, line)) {
            if (line.empty()) {
                continue;
            }
            nlohmann::ordered_json j;
            try {
                j = nlohmann::ordered_json::parse(line);
            } catch (const nlohmann::json::exception& e) {
                throw record_parse_error(e.what());
            }
            if (!j.is_object()) {
                throw record_parse_error("JSON record is not an object");
            }
            RawRecord r;
            for (const auto& [k, v] : j.items()) {
                if (v.is_null()) {
                    r[k] = "";
                } else if (v.is_string()) {
                    r[k] = v.get<std::string>();
                } else {
                    r[k] = v.dump();
                }
            }
            out.push_back(std::move(r));
        }
        return out;
    }
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto cells = detail::split_csv_line(line);
        if (header.empty()) {
            header = std::move(cells);
            continue;
        }
        if (cells.size() != header.size()) {
            throw record_parse_error("CSV row has " + std::to_string(cells.size()) + " fields, header has " +
                                     std::to_string(header.size()));
        }
        RawRecord r;
        for (std::size_t i = 0; i < header.size(); ++i) {
            r[header[i]] = std::move(cells[i]);
        }
        out.push_back(std::move(r));
    }
    return out;
}

namespace detail {

inline const std::string& raw_field(const RawRecord& r, const std::string& key) {
    const auto it = r.find(key);
    if (it == r.end()) {
        throw record_parse_error("missing field '" + key + "'");
    }
    return it->second;
}

inline std::int64_t raw_int(const RawRecord& r, const std::string& key) {
    const std::string& s = raw_field(r, key);
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) {
            throw record_parse_error("bad integer in '" + key + "'");
        }
        return v;
    } catch (const std::logic_error&) {
        throw record_parse_error("bad integer in '" + key + "': " + s);
    }
}

inline std::uint64_t raw_uint(const RawRecord& r, const std::string& key) {
    const std::string& s = raw_field(r, key);
    if (s.empty() || s.front() == '-') {
        throw record_parse_error("bad unsigned integer in '" + key + "': " + s);
    }
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) {
            throw record_parse_error("bad unsigned integer in '" + key + "'");
        }
        return v;
    } catch (const std::logic_error&) {
        throw record_parse_error("bad unsigned integer in '" + key + "': " + s);
    }
}

inline bool raw_bool(const RawRecord& r, const std::string& key) {
    const std::string& s = raw_field(r, key);
    if (s == "true") {
        return true;
    }
    if (s == "false") {
        return false;
    }
    throw record_parse_error("bad boolean in '" + key + "': " + s);
}

} // namespace detail

} // namespace lucas
