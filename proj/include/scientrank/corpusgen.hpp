#pragma once

// Deterministic synthetic corpora.
//
// Randomness comes from SplitMix64 (Steele, Lea & Flood 2014; constants
// 0x9E3779B97F4A7C15, 0xBF58476D1CE4E5B9, 0x94D049BB133111EB). Each field
// spec owns a stream seeded with `seed XOR fnv1a64(stream label)`, so two
// fields sharing a label draw identical sequences. Per year (ascending) the
// stream yields papers_per_year citation draws:
//   uniform      = (next() >> 11) * 2^-53
//   lognormal    = floor(exp(mu + sigma * z)), z by Box-Muller from
//                  u1 = 1 - uniform, u2 = uniform, z = sqrt(-2 ln u1) cos(2 pi u2)
//   zipf         = k - 1, k the first rank in 1..cutoff whose cumulative
//                  weight sum_{i<=k} i^-s exceeds uniform * total
//   constant     = c
// each multiplied by citation_scale. Paper j of a cell goes to institutions
// in profile order, floor(share * N) consecutive papers each; the remainder
// is attributed to the rest-of-world affiliation.

#include "scientrank/corpus.hpp"
#include "scientrank/ingest.hpp"
#include "scientrank/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace scientrank {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

std::uint64_t fnv1a64(std::string_view text);

inline constexpr const char* kRestOfWorld = "Rest of World";

struct DiscreteLognormal {
    double mu = 0;
    double sigma = 1;
};
struct Zipf {
    double s = 1;
    std::int64_t cutoff = 1000;
};
struct Constant {
    std::int64_t c = 0;
};
using CitationDistribution = std::variant<DiscreteLognormal, Zipf, Constant>;

struct FieldSpec {
    std::string field;
    std::int64_t papers_per_year = 0;
    CitationDistribution distribution = Constant{};
    Window years{2011, 2015};
    std::int64_t citation_scale = 1;
    /// RNG stream label; empty means the field code.
    std::string stream;
};

struct Flat {};
struct Rising {};
struct Declining {};
struct CeasedAfter {
    int year = 0;
};
using Ramp = std::variant<Flat, Rising, Declining, CeasedAfter>;

struct ActivityProfile {
    std::string inst_id;
    std::string name;
    /// Base share of each field's yearly output, in [0, 1].
    std::map<std::string, Rational> shares;
    Ramp ramp = Flat{};
};

/// Base share scaled by the ramp: rising (k+1)/Y, declining (Y-k)/Y for the
/// k-th of Y years; ceased_after(c) zero for years after c.
Rational effective_share(const ActivityProfile& profile, const FieldSpec& spec, int year);

struct GeneratorSpec {
    std::vector<FieldSpec> fields;
    std::vector<ActivityProfile> profiles;
    std::optional<std::uint64_t> seed;
};

/// Reads the JSON generator spec. ConfigError on anything invalid.
GeneratorSpec parse_generator_spec(std::istream& in);

struct GeneratedCorpus {
    Corpus corpus;
    std::vector<InstitutionProfile> aliases;
    std::uint64_t seed = 0;
};

/// ConfigError on invalid specs or shares summing above 1 in any field-year.
GeneratedCorpus generate(const std::vector<FieldSpec>& fields, const std::vector<ActivityProfile>& profiles,
                         std::uint64_t seed);

}  // namespace scientrank
