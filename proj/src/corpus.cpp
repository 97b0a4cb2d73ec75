#include "scientrank/corpus.hpp"

#include "scientrank/error.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

namespace scientrank {

std::string_view to_string(DocType type) {
    switch (type) {
        case DocType::article: return "article";
        case DocType::review: return "review";
        case DocType::other: return "other";
    }
    return "other";
}

std::optional<DocType> parse_doc_type(std::string_view text) {
    if (text == "article") return DocType::article;
    if (text == "review") return DocType::review;
    if (text == "other") return DocType::other;
    return std::nullopt;
}

DocTypeSet default_doc_types() { return {DocType::article, DocType::review}; }

DocTypeSet all_doc_types() { return {DocType::article, DocType::review, DocType::other}; }

DocTypeSet parse_doc_types(std::string_view text) {
    DocTypeSet out;
    while (!text.empty()) {
        auto comma = text.find(',');
        auto item = text.substr(0, comma);
        auto type = parse_doc_type(item);
        if (!type) throw ConfigError("unknown document type '" + std::string(item) + "'");
        out.insert(*type);
        if (comma == std::string_view::npos) break;
        text.remove_prefix(comma + 1);
    }
    if (out.empty()) throw ConfigError("document type list is empty");
    return out;
}

Window::Window(int start_year, int end_year) : start_(start_year), end_(end_year) {
    if (start_year > end_year) {
        throw ConfigError("window start " + std::to_string(start_year) + " is after end " +
                          std::to_string(end_year));
    }
}

Window Window::parse(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ConfigError("window must look like START:END, got '" + std::string(text) + "'");
    }
    auto to_int = [&](std::string_view part) {
        int value = 0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), value);
        if (ec != std::errc{} || ptr != part.data() + part.size()) {
            throw ConfigError("bad year '" + std::string(part) + "' in window");
        }
        return value;
    };
    return Window(to_int(text.substr(0, colon)), to_int(text.substr(colon + 1)));
}

std::optional<Window> intersect(const Window& a, const Window& b) {
    int lo = std::max(a.start_year(), b.start_year());
    int hi = std::min(a.end_year(), b.end_year());
    if (lo > hi) return std::nullopt;
    return Window(lo, hi);
}

Corpus make_corpus(std::vector<PublicationRecord> records, std::string provenance) {
    std::unordered_set<std::string> seen;
    for (const auto& r : records) {
        if (!seen.insert(r.id).second) throw DataError("duplicate record id '" + r.id + "'");
    }
    return Corpus{std::move(records), std::move(provenance)};
}

ValidationResult validate_record(const RecordCandidate& c) {
    ValidationResult result;
    auto& v = result.violations;

    if (!c.id || c.id->empty()) v.push_back({"id", c.id.value_or(""), "id missing or empty"});
    if (!c.year) {
        v.push_back({"year", "", "year missing"});
    } else if (*c.year < kMinYear || *c.year > kMaxYear) {
        v.push_back({"year", std::to_string(*c.year), "year out of range"});
    }
    std::optional<DocType> type;
    if (!c.doc_type) {
        v.push_back({"doc_type", "", "doc_type missing"});
    } else if (type = parse_doc_type(*c.doc_type); !type) {
        v.push_back({"doc_type", *c.doc_type, "unknown doc_type"});
    }
    if (c.fields.empty()) v.push_back({"fields", "", "fields empty"});
    for (const auto& f : c.fields) {
        if (f.empty()) v.push_back({"fields", f, "empty field code"});
    }
    if (!c.citations) {
        v.push_back({"citations", "", "citations missing"});
    } else if (*c.citations < 0) {
        v.push_back({"citations", std::to_string(*c.citations), "citations negative"});
    }
    if (c.affiliations.empty()) v.push_back({"affiliations", "", "affiliations empty"});

    if (!v.empty()) return result;

    PublicationRecord r;
    r.id = *c.id;
    r.year = static_cast<int>(*c.year);
    r.doc_type = *type;
    r.fields = std::set<std::string>(c.fields.begin(), c.fields.end());
    r.citations = *c.citations;
    r.affiliations = c.affiliations;
    result.record = std::move(r);
    return result;
}

Corpus filter_window(const Corpus& corpus, const Window& window) {
    Corpus out{{}, corpus.provenance};
    std::copy_if(corpus.records.begin(), corpus.records.end(), std::back_inserter(out.records),
                 [&](const PublicationRecord& r) { return window.contains(r.year); });
    return out;
}

Corpus filter_doc_types(const Corpus& corpus, const DocTypeSet& allowed) {
    if (allowed.empty()) throw ConfigError("allowed document types must be non-empty");
    Corpus out{{}, corpus.provenance};
    std::copy_if(corpus.records.begin(), corpus.records.end(), std::back_inserter(out.records),
                 [&](const PublicationRecord& r) { return allowed.count(r.doc_type) > 0; });
    return out;
}

}  // namespace scientrank
