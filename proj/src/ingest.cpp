#include "scientrank/ingest.hpp"

#include "scientrank/csv.hpp"
#include "scientrank/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace scientrank {

using nlohmann::json;

namespace {

bool is_blank(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

bool valid_utf8(std::string_view s) {
    std::size_t i = 0;
    while (i < s.size()) {
        auto c = static_cast<unsigned char>(s[i]);
        std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
        if (len == 0 || i + len > s.size()) return false;
        for (std::size_t k = 1; k < len; ++k) {
            if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
        }
        i += len;
    }
    return true;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return value;
}

std::vector<std::string> split_bar(std::string_view cell) {
    std::vector<std::string> out;
    if (cell.empty()) return out;
    while (true) {
        auto bar = cell.find('|');
        out.emplace_back(cell.substr(0, bar));
        if (bar == std::string_view::npos) break;
        cell.remove_prefix(bar + 1);
    }
    return out;
}

// Pulls typed values out of a JSON object, recording type errors instead of throwing.
struct JsonReader {
    const json& obj;
    std::vector<Violation>& errors;

    std::optional<std::string> string(const char* key) {
        auto it = obj.find(key);
        if (it == obj.end()) return std::nullopt;
        if (!it->is_string()) {
            errors.push_back({key, it->dump(), "expected string"});
            return std::nullopt;
        }
        return it->get<std::string>();
    }

    std::optional<std::int64_t> integer(const char* key) {
        auto it = obj.find(key);
        if (it == obj.end()) return std::nullopt;
        if (!it->is_number_integer()) {
            errors.push_back({key, it->dump(), "expected integer"});
            return std::nullopt;
        }
        return it->get<std::int64_t>();
    }

    std::vector<std::string> strings(const char* key) {
        std::vector<std::string> out;
        auto it = obj.find(key);
        if (it == obj.end()) return out;
        if (!it->is_array()) {
            errors.push_back({key, it->dump(), "expected array of strings"});
            return out;
        }
        for (const auto& item : *it) {
            if (!item.is_string()) {
                errors.push_back({key, item.dump(), "expected array of strings"});
                continue;
            }
            out.push_back(item.get<std::string>());
        }
        return out;
    }
};

void append_violations(std::vector<Diagnostic>& diags, std::size_t line,
                       const std::vector<Violation>& violations) {
    for (const auto& v : violations) {
        std::string msg = v.message;
        if (!v.value.empty()) msg += " (got " + v.value + ")";
        diags.push_back({line, v.field, std::move(msg)});
    }
}

class RecordSink {
public:
    explicit RecordSink(ParseResult& out) : out_(out) {}

    void accept(std::size_t line, const RecordCandidate& candidate,
                std::vector<Violation> type_errors) {
        if (!type_errors.empty()) {
            append_violations(out_.diagnostics, line, type_errors);
            return;
        }
        auto result = validate_record(candidate);
        if (!result.ok()) {
            append_violations(out_.diagnostics, line, result.violations);
            return;
        }
        if (!ids_.insert(result.record->id).second) {
            out_.diagnostics.push_back({line, "id", "duplicate id '" + result.record->id + "'"});
            return;
        }
        out_.records.push_back(std::move(*result.record));
    }

private:
    ParseResult& out_;
    std::unordered_set<std::string> ids_;
};

void parse_jsonl(std::istream& in, ParseResult& out) {
    RecordSink sink(out);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank(line)) continue;
        if (!valid_utf8(line)) {
            out.diagnostics.push_back({lineno, "", "invalid UTF-8"});
            continue;
        }
        json obj;
        try {
            obj = json::parse(line);
        } catch (const json::parse_error& e) {
            out.diagnostics.push_back({lineno, "", std::string("malformed JSON: ") + e.what()});
            continue;
        }
        if (!obj.is_object()) {
            out.diagnostics.push_back({lineno, "", "expected a JSON object"});
            continue;
        }
        std::vector<Violation> errors;
        JsonReader reader{obj, errors};
        RecordCandidate c;
        c.id = reader.string("id");
        c.year = reader.integer("year");
        c.doc_type = reader.string("doc_type");
        c.fields = reader.strings("fields");
        c.citations = reader.integer("citations");
        c.affiliations = reader.strings("affiliations");
        sink.accept(lineno, c, std::move(errors));
    }
}

void parse_csv(std::istream& in, ParseResult& out) {
    static const std::vector<std::string> kColumns = {"id",        "year",      "doc_type",
                                                      "fields",    "citations", "affiliations"};
    RecordSink sink(out);
    std::string line;
    std::size_t lineno = 0;
    std::unordered_map<std::string, std::size_t> index;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank(line)) continue;
        if (!valid_utf8(line)) {
            out.diagnostics.push_back({lineno, "", "invalid UTF-8"});
            continue;
        }
        std::vector<std::string> cells;
        try {
            cells = csv::split_line(line);
        } catch (const DataError& e) {
            if (!have_header) throw DataError(std::string("records CSV header: ") + e.what());
            out.diagnostics.push_back({lineno, "", e.what()});
            continue;
        }
        if (!have_header) {
            for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i]] = i;
            for (const auto& col : kColumns) {
                if (!index.count(col)) throw DataError("records CSV header lacks column '" + col + "'");
            }
            have_header = true;
            continue;
        }
        if (cells.size() != index.size()) {
            out.diagnostics.push_back({lineno, "", "expected " + std::to_string(index.size()) +
                                                       " cells, got " + std::to_string(cells.size())});
            continue;
        }
        auto cell = [&](const char* col) -> const std::string& { return cells[index.at(col)]; };
        std::vector<Violation> errors;
        RecordCandidate c;
        c.id = cell("id");
        if (auto y = parse_int(cell("year"))) {
            c.year = y;
        } else {
            errors.push_back({"year", cell("year"), "expected integer"});
        }
        c.doc_type = cell("doc_type");
        c.fields = split_bar(cell("fields"));
        if (auto n = parse_int(cell("citations"))) {
            c.citations = n;
        } else {
            errors.push_back({"citations", cell("citations"), "expected integer"});
        }
        c.affiliations = split_bar(cell("affiliations"));
        sink.accept(lineno, c, std::move(errors));
    }
}

// Appends the UTF-8 encoding of a code point.
void encode_utf8(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out += static_cast<char>(cp);
    } else if (cp < 0x800) {
        out += static_cast<char>(0xC0 | (cp >> 6));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else if (cp < 0x10000) {
        out += static_cast<char>(0xE0 | (cp >> 12));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    } else {
        out += static_cast<char>(0xF0 | (cp >> 18));
        out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
        out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
        out += static_cast<char>(0x80 | (cp & 0x3F));
    }
}

// Invalid sequences decode byte-by-byte as Latin-1 so normalization never fails.
std::vector<char32_t> decode_utf8(std::string_view s) {
    std::vector<char32_t> out;
    std::size_t i = 0;
    while (i < s.size()) {
        auto c = static_cast<unsigned char>(s[i]);
        std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
        bool ok = len > 0 && i + len <= s.size();
        for (std::size_t k = 1; ok && k < len; ++k) {
            ok = (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
        }
        if (!ok) {
            out.push_back(c);
            ++i;
            continue;
        }
        char32_t cp = len == 1 ? c : len == 2 ? (c & 0x1F) : len == 3 ? (c & 0x0F) : (c & 0x07);
        for (std::size_t k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
        out.push_back(cp);
        i += len;
    }
    return out;
}

char32_t fold_case(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;  // Latin-1
    if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;              // Cyrillic А..Я
    if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;              // Ѐ..Џ (incl. Є І Ї Ў)
    if (cp == 0x490) return 0x491;                                 // Ґ
    return cp;
}

bool is_space(char32_t cp) {
    return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U'\v' || cp == U'\f' ||
           cp == 0xA0;
}

bool is_ascii_punct(char32_t cp) {
    return cp < 0x80 && std::ispunct(static_cast<unsigned char>(cp));
}

}  // namespace

RecordFormat record_format_for_path(const std::string& path) {
    auto ends_with = [&](std::string_view suffix) {
        return path.size() >= suffix.size() &&
               path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0;
    };
    return ends_with(".csv") || ends_with(".CSV") ? RecordFormat::csv : RecordFormat::jsonl;
}

std::string to_string(const Diagnostic& d) {
    std::string out = "line " + std::to_string(d.line) + ": ";
    if (!d.field.empty()) out += d.field + ": ";
    return out + d.message;
}

ParseResult parse_records(std::istream& in, RecordFormat format) {
    if (!in) throw DataError("record stream is not readable");
    ParseResult out;
    if (format == RecordFormat::jsonl) {
        parse_jsonl(in, out);
    } else {
        parse_csv(in, out);
    }
    if (in.bad()) throw DataError("I/O error while reading records");
    return out;
}

void write_records_jsonl(const Corpus& corpus, std::ostream& out) {
    for (const auto& r : corpus.records) {
        json obj = json::object();
        obj["id"] = r.id;
        obj["year"] = r.year;
        obj["doc_type"] = std::string(to_string(r.doc_type));
        obj["fields"] = r.fields;
        obj["citations"] = r.citations;
        obj["affiliations"] = r.affiliations;
        out << obj.dump() << '\n';
    }
}

std::string normalize_affiliation(std::string_view raw, const NormalizationPolicy& policy) {
    auto cps = decode_utf8(raw);
    if (policy.case_fold) {
        for (auto& cp : cps) cp = fold_case(cp);
    }
    std::vector<char32_t> collapsed;
    collapsed.reserve(cps.size());
    for (char32_t cp : cps) {
        if (policy.collapse_whitespace && is_space(cp)) {
            if (!collapsed.empty() && collapsed.back() == U' ') continue;
            collapsed.push_back(U' ');
        } else {
            collapsed.push_back(cp);
        }
    }
    auto trimmable = [&](char32_t cp) {
        if (is_space(cp)) return policy.collapse_whitespace || policy.strip_punctuation;
        return policy.strip_punctuation && is_ascii_punct(cp);
    };
    std::size_t lo = 0;
    std::size_t hi = collapsed.size();
    while (lo < hi && trimmable(collapsed[lo])) ++lo;
    while (hi > lo && trimmable(collapsed[hi - 1])) --hi;

    std::string out;
    out.reserve(raw.size());
    for (std::size_t i = lo; i < hi; ++i) encode_utf8(collapsed[i], out);
    return out;
}

std::vector<InstitutionProfile> load_alias_map(std::istream& in, const NormalizationPolicy& policy) {
    if (!in) throw DataError("alias map stream is not readable");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("alias map: malformed JSON: ") + e.what());
    }
    if (!doc.is_array()) throw DataError("alias map: expected a JSON array");

    std::vector<InstitutionProfile> profiles;
    std::unordered_map<std::string, std::string> owner;  // normalized alias -> inst_id
    std::unordered_set<std::string> ids;
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("inst_id") || !item["inst_id"].is_string()) {
            throw DataError("alias map: every entry needs a string inst_id");
        }
        InstitutionProfile p;
        p.inst_id = item["inst_id"].get<std::string>();
        if (!ids.insert(p.inst_id).second) throw DataError("alias map: duplicate inst_id " + p.inst_id);
        p.name = item.value("name", p.inst_id);
        if (item.contains("aliases")) {
            if (!item["aliases"].is_array()) throw DataError("alias map: aliases of " + p.inst_id + " must be an array");
            for (const auto& a : item["aliases"]) {
                if (!a.is_string()) throw DataError("alias map: non-string alias under " + p.inst_id);
                p.aliases.push_back(a.get<std::string>());
            }
        }
        if (p.aliases.empty()) throw DataError("empty alias set: " + p.inst_id);

        std::vector<std::string> matchable = p.aliases;
        matchable.push_back(p.name);
        for (const auto& alias : matchable) {
            auto key = normalize_affiliation(alias, policy);
            auto [it, inserted] = owner.emplace(key, p.inst_id);
            if (!inserted && it->second != p.inst_id) {
                throw DataError("alias collision: " + alias + " (" + it->second + ", " + p.inst_id + ")");
            }
        }
        profiles.push_back(std::move(p));
    }
    return profiles;
}

void write_alias_map(const std::vector<InstitutionProfile>& profiles, std::ostream& out) {
    json doc = json::array();
    for (const auto& p : profiles) {
        doc.push_back({{"inst_id", p.inst_id}, {"name", p.name}, {"aliases", p.aliases}});
    }
    out << doc.dump(2) << '\n';
}

ResolvedCorpus resolve_affiliations(const Corpus& corpus, const std::vector<InstitutionProfile>& profiles,
                                    const NormalizationPolicy& policy) {
    ResolvedCorpus out;
    out.corpus = corpus;
    std::unordered_map<std::string, std::string> lookup;
    for (const auto& p : profiles) {
        out.institutions[p.inst_id] = p.name;
        lookup.emplace(normalize_affiliation(p.name, policy), p.inst_id);
        for (const auto& a : p.aliases) lookup.emplace(normalize_affiliation(a, policy), p.inst_id);
    }
    for (const auto& r : corpus.records) {
        auto& assigned = out.assignment[r.id];
        for (const auto& raw : r.affiliations) {
            auto it = lookup.find(normalize_affiliation(raw, policy));
            if (it == lookup.end()) {
                ++out.unresolved[raw];
            } else {
                assigned.insert(it->second);
                ++out.matched_strings;
            }
        }
    }
    return out;
}

std::vector<IndicatorRow> load_indicator_rows(std::istream& in) {
    if (!in) throw DataError("indicator stream is not readable");
    std::vector<IndicatorRow> rows;
    std::unordered_map<std::string, std::size_t> index;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_blank(line)) continue;
        auto cells = csv::split_line(line);
        if (!have_header) {
            for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i]] = i;
            for (const char* col : {"inst_id", "top10", "citations", "pubs"}) {
                if (!index.count(col)) throw DataError(std::string("indicator CSV header lacks column '") + col + "'");
            }
            have_header = true;
            continue;
        }
        auto where = "indicator CSV row " + std::to_string(lineno);
        if (cells.size() != index.size()) throw DataError(where + ": wrong number of cells");
        auto cell = [&](const char* col) -> std::optional<std::string> {
            auto it = index.find(col);
            if (it == index.end()) return std::nullopt;
            return cells[it->second];
        };
        auto count = [&](const char* col) {
            auto v = parse_int(*cell(col));
            if (!v || *v < 0) throw DataError(where + ": " + col + " must be a non-negative integer, got '" + *cell(col) + "'");
            return *v;
        };
        IndicatorRow row;
        row.inst_id = *cell("inst_id");
        if (row.inst_id.empty()) throw DataError(where + ": empty inst_id");
        if (!ids.insert(row.inst_id).second) throw DataError(where + ": duplicate inst_id " + row.inst_id);
        row.name = cell("name").value_or("");
        if (row.name.empty()) row.name = row.inst_id;
        try {
            row.top10 = parse_rational(*cell("top10"));
        } catch (const DataError&) {
            throw DataError(where + ": top10 is not a number: '" + *cell("top10") + "'");
        }
        if (row.top10 < 0) throw DataError(where + ": top10 negative");
        row.citations = count("citations");
        row.pubs = count("pubs");
        if (auto mc = cell("mean_citedness"); mc && !mc->empty()) {
            try {
                row.mean_citedness_override = parse_rational(*mc);
            } catch (const DataError&) {
                throw DataError(where + ": mean_citedness is not a number: '" + *mc + "'");
            }
        }
        if (auto t = cell("tie_order"); t && !t->empty()) {
            auto v = parse_int(*t);
            if (!v) throw DataError(where + ": tie_order must be an integer");
            row.tie_order = *v;
        }
        rows.push_back(std::move(row));
    }
    if (in.bad()) throw DataError("I/O error while reading indicators");
    return rows;
}

}  // namespace scientrank
