#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace scientrank {

enum class DocType { article, review, other };

std::string_view to_string(DocType type);
std::optional<DocType> parse_doc_type(std::string_view text);

using DocTypeSet = std::set<DocType>;

/// articles + reviews, the document types counted by the indicator tables.
DocTypeSet default_doc_types();
DocTypeSet all_doc_types();

/// Parses a comma separated list such as "article,review".
DocTypeSet parse_doc_types(std::string_view text);

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

struct PublicationRecord {
    std::string id;
    int year = 0;
    DocType doc_type = DocType::article;
    std::set<std::string> fields;
    std::int64_t citations = 0;
    std::vector<std::string> affiliations;

    bool operator==(const PublicationRecord&) const = default;
};

/// Inclusive range of publication years.
class Window {
public:
    Window(int start_year, int end_year);

    int start_year() const { return start_; }
    int end_year() const { return end_; }
    bool contains(int year) const { return year >= start_ && year <= end_; }

    /// Parses "2011:2015".
    static Window parse(std::string_view text);

    bool operator==(const Window&) const = default;

private:
    int start_;
    int end_;
};

/// Intersection of two windows, or nullopt when they do not overlap.
std::optional<Window> intersect(const Window& a, const Window& b);

struct Corpus {
    std::vector<PublicationRecord> records;
    std::string provenance;
};

/// Builds a corpus, rejecting duplicate record ids with DataError.
Corpus make_corpus(std::vector<PublicationRecord> records, std::string provenance);

/// A record as it came off the wire, before any invariant has been checked.
struct RecordCandidate {
    std::optional<std::string> id;
    std::optional<std::int64_t> year;
    std::optional<std::string> doc_type;
    std::vector<std::string> fields;
    std::optional<std::int64_t> citations;
    std::vector<std::string> affiliations;
};

struct Violation {
    std::string field;
    std::string value;
    std::string message;
};

struct ValidationResult {
    std::optional<PublicationRecord> record;
    std::vector<Violation> violations;

    bool ok() const { return record.has_value(); }
};

/// Checks every record invariant. Never repairs: any violation means no record.
ValidationResult validate_record(const RecordCandidate& candidate);

Corpus filter_window(const Corpus& corpus, const Window& window);

/// `allowed` must be non-empty (ConfigError otherwise).
Corpus filter_doc_types(const Corpus& corpus, const DocTypeSet& allowed);

}  // namespace scientrank
