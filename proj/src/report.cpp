#include "scientrank/report.hpp"

#include "scientrank/csv.hpp"
#include "scientrank/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>

namespace scientrank {

namespace {

constexpr int kExactDigits = 15;

const std::vector<std::string> kCsvColumns = {"name",     "top10",     "top10_rank", "mc_exact",
                                              "mc_display", "mc_rank", "citations",  "pubs",
                                              "inst_id",  "h_index",   "key_rank"};

bool terminating(const Rational& value) {
    BigInt d = denominator(value);
    while (d % 2 == 0) d /= 2;
    while (d % 5 == 0) d /= 5;
    return d == 1;
}

// Exact decimal when the expansion terminates, else kExactDigits places.
std::string exact_decimal(const Rational& value) {
    if (is_integer(value)) return numerator(value).str();
    if (!terminating(value)) return to_fixed(value, kExactDigits);
    int digits = 0;
    Rational scaled = value;
    while (!is_integer(scaled)) {
        scaled *= 10;
        ++digits;
    }
    return to_fixed(value, digits);
}

std::string opt_int(const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string(); }

std::string top10_display(const Rational& value, const DisplayPolicy& policy) {
    return is_integer(value) ? numerator(value).str() : round_display(value, policy);
}

std::string value_rank(const std::string& value, const std::optional<std::int64_t>& rank) {
    return rank ? value + "/" + std::to_string(*rank) : value;
}

std::size_t display_width(std::string_view s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
        return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
    }));
}

struct DisplayRows {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

DisplayRows display_rows(const RankingTable& table, const DisplayPolicy& policy) {
    std::string years =
        std::to_string(table.window.start_year()) + "-" + std::to_string(table.window.end_year());
    DisplayRows out;
    out.header = {"University", "Top-10% publications (value/rank)", "Mean citedness (value/rank)",
                  "Citations, " + years, "Publications, " + years};
    for (const auto& row : table.rows) {
        const auto& v = row.values;
        std::string mc = v.mean_citedness ? round_display(*v.mean_citedness, policy) : std::string("n/a");
        out.rows.push_back({v.name, value_rank(top10_display(v.top10, policy), row.top10_rank),
                            v.mean_citedness ? value_rank(mc, row.mc_rank) : mc, std::to_string(v.citations),
                            std::to_string(v.pubs)});
    }
    return out;
}

std::string render_csv(const RankingTable& table, const DisplayPolicy& policy) {
    DisplayPolicy plain = policy;
    plain.decimal_separator = '.';
    std::string out = csv::join(kCsvColumns) + "\n";
    for (const auto& row : table.rows) {
        const auto& v = row.values;
        out += csv::join({v.name, to_exact_string(v.top10), opt_int(row.top10_rank),
                          v.mean_citedness ? exact_decimal(*v.mean_citedness) : "",
                          v.mean_citedness ? round_display(*v.mean_citedness, plain) : "", opt_int(row.mc_rank),
                          std::to_string(v.citations), std::to_string(v.pubs), v.inst_id, opt_int(v.h_index),
                          opt_int(row.key_rank)});
        out += '\n';
    }
    return out;
}

std::string render_json(const RankingTable& table, const DisplayPolicy& policy) {
    using nlohmann::ordered_json;
    DisplayPolicy plain = policy;
    plain.decimal_separator = '.';
    auto opt = [](const std::optional<std::int64_t>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); };
    ordered_json doc = ordered_json::array();
    for (const auto& row : table.rows) {
        const auto& v = row.values;
        ordered_json obj;
        obj["name"] = v.name;
        obj["top10"] = to_exact_string(v.top10);
        obj["top10_rank"] = opt(row.top10_rank);
        obj["mc_exact"] = v.mean_citedness ? ordered_json(exact_decimal(*v.mean_citedness)) : ordered_json(nullptr);
        obj["mc_display"] =
            v.mean_citedness ? ordered_json(round_display(*v.mean_citedness, plain)) : ordered_json(nullptr);
        obj["mc_rank"] = opt(row.mc_rank);
        obj["citations"] = v.citations;
        obj["pubs"] = v.pubs;
        obj["inst_id"] = v.inst_id;
        obj["h_index"] = opt(v.h_index);
        obj["key_rank"] = opt(row.key_rank);
        doc.push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

std::string render_markdown(const RankingTable& table, const DisplayPolicy& policy) {
    auto d = display_rows(table, policy);
    auto line = [](const std::vector<std::string>& cells) {
        std::string out = "|";
        for (const auto& c : cells) out += " " + c + " |";
        return out + "\n";
    };
    std::string out = line(d.header);
    out += "|---|---:|---:|---:|---:|\n";
    for (const auto& r : d.rows) out += line(r);
    return out;
}

std::string render_text(const RankingTable& table, const DisplayPolicy& policy) {
    auto d = display_rows(table, policy);
    std::vector<std::size_t> width(d.header.size());
    for (std::size_t i = 0; i < width.size(); ++i) width[i] = display_width(d.header[i]);
    for (const auto& r : d.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], display_width(r[i]));
    }
    auto line = [&](const std::vector<std::string>& cells) {
        std::string out;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            std::string pad(width[i] - display_width(cells[i]), ' ');
            if (i) out += "  ";
            out += i == 0 ? cells[i] + pad : pad + cells[i];
        }
        while (!out.empty() && out.back() == ' ') out.pop_back();
        return out + "\n";
    };
    std::string header = line(d.header);
    std::string out = policy.styled ? "\x1b[1m" + header.substr(0, header.size() - 1) + "\x1b[0m\n" : header;
    for (const auto& r : d.rows) out += line(r);
    return out;
}

std::optional<std::int64_t> parse_opt_int(const std::string& cell, const std::string& where) {
    if (cell.empty()) return std::nullopt;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw DataError(where + ": expected integer, got '" + cell + "'");
    }
    return v;
}

}  // namespace

std::string round_display(const Rational& value, const DisplayPolicy& policy) {
    std::string out = to_fixed(value, policy.decimals, policy.decimal_separator);
    if (policy.trim_trailing_zeros && policy.decimals > 0) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == policy.decimal_separator) out.pop_back();
    }
    return out;
}

OutputFormat parse_output_format(std::string_view text) {
    if (text == "csv") return OutputFormat::csv;
    if (text == "json") return OutputFormat::json;
    if (text == "markdown" || text == "md") return OutputFormat::markdown;
    if (text == "text") return OutputFormat::text;
    throw ConfigError("unknown output format '" + std::string(text) + "'");
}

std::string render_table(const RankingTable& table, OutputFormat format, const DisplayPolicy& policy) {
    switch (format) {
        case OutputFormat::csv: return render_csv(table, policy);
        case OutputFormat::json: return render_json(table, policy);
        case OutputFormat::markdown: return render_markdown(table, policy);
        case OutputFormat::text: return render_text(table, policy);
    }
    return {};
}

std::vector<TableCsvRow> parse_table_csv(std::istream& in) {
    if (!in) throw DataError("table stream is not readable");
    std::vector<TableCsvRow> rows;
    std::map<std::string, std::size_t> index;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        auto cells = csv::split_line(line);
        if (!have_header) {
            for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i]] = i;
            for (const char* col : {"name", "top10", "top10_rank", "mc_exact", "mc_rank", "citations", "pubs"}) {
                if (!index.count(col)) throw DataError(std::string("table CSV header lacks column '") + col + "'");
            }
            have_header = true;
            continue;
        }
        std::string where = "table CSV row " + std::to_string(lineno);
        if (cells.size() != index.size()) throw DataError(where + ": wrong number of cells");
        auto cell = [&](const char* col) -> std::string {
            auto it = index.find(col);
            return it == index.end() ? std::string() : cells[it->second];
        };

        TableCsvRow r;
        r.name = cell("name");
        r.inst_id = cell("inst_id").empty() ? r.name : cell("inst_id");
        r.top10 = parse_rational(cell("top10"));
        r.top10_rank = parse_opt_int(cell("top10_rank"), where);
        r.mc_display = cell("mc_display");
        r.mc_rank = parse_opt_int(cell("mc_rank"), where);
        auto citations = parse_opt_int(cell("citations"), where);
        auto pubs = parse_opt_int(cell("pubs"), where);
        if (!citations || !pubs) throw DataError(where + ": citations and pubs are required");
        r.citations = *citations;
        r.pubs = *pubs;
        r.h_index = parse_opt_int(cell("h_index"), where);
        r.key_rank = parse_opt_int(cell("key_rank"), where);

        // mc_exact is C/P unless it was overridden; recover the exact ratio when it matches.
        if (auto mc = cell("mc_exact"); !mc.empty()) {
            if (r.pubs > 0 && exact_decimal(Rational(r.citations, r.pubs)) == mc) {
                r.mean_citedness = Rational(r.citations, r.pubs);
            } else {
                r.mean_citedness = parse_rational(mc);
            }
        }
        rows.push_back(std::move(r));
    }
    if (!have_header) throw DataError("table CSV is empty");
    return rows;
}

Ranking ranking_from_csv(const std::vector<TableCsvRow>& rows) {
    Ranking out;
    for (const auto& r : rows) {
        auto rank = r.key_rank ? r.key_rank : r.top10_rank;
        if (rank) out.push_back({r.inst_id, r.name, *rank});
    }
    return out;
}

}  // namespace scientrank
