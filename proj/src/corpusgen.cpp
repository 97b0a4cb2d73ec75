#include "scientrank/corpusgen.hpp"

#include "scientrank/error.hpp"

#include <json.hpp>

#include <cmath>
#include <istream>
#include <numbers>
#include <set>

namespace scientrank {

using nlohmann::json;

namespace {

constexpr double kMaxDraw = 1e12;

class Sampler {
public:
    Sampler(const CitationDistribution& dist, std::int64_t scale) : dist_(dist), scale_(scale) {
        if (const auto* z = std::get_if<Zipf>(&dist_)) {
            double acc = 0;
            cumulative_.reserve(static_cast<std::size_t>(z->cutoff));
            for (std::int64_t k = 1; k <= z->cutoff; ++k) {
                acc += std::pow(static_cast<double>(k), -z->s);
                cumulative_.push_back(acc);
            }
        }
    }

    std::int64_t draw(SplitMix64& rng) const {
        std::int64_t base = 0;
        if (const auto* ln = std::get_if<DiscreteLognormal>(&dist_)) {
            double u1 = 1.0 - rng.uniform();
            double u2 = rng.uniform();
            double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
            double x = std::floor(std::exp(ln->mu + ln->sigma * z));
            base = static_cast<std::int64_t>(std::min(x, kMaxDraw));
        } else if (std::holds_alternative<Zipf>(dist_)) {
            double target = rng.uniform() * cumulative_.back();
            std::size_t k = 0;
            while (k + 1 < cumulative_.size() && cumulative_[k] <= target) ++k;
            base = static_cast<std::int64_t>(k);
        } else {
            base = std::get<Constant>(dist_).c;
        }
        return base * scale_;
    }

private:
    CitationDistribution dist_;
    std::int64_t scale_;
    std::vector<double> cumulative_;
};

void validate(const FieldSpec& spec) {
    auto fail = [&](const std::string& msg) { throw ConfigError("field " + spec.field + ": " + msg); };
    if (spec.field.empty()) throw ConfigError("field spec with empty field code");
    if (spec.papers_per_year < 0) fail("papers_per_year must be >= 0");
    if (spec.citation_scale < 1) fail("citation_scale must be >= 1");
    if (spec.years.start_year() < kMinYear || spec.years.end_year() > kMaxYear) fail("years out of range");
    if (const auto* ln = std::get_if<DiscreteLognormal>(&spec.distribution)) {
        if (!std::isfinite(ln->mu) || !std::isfinite(ln->sigma) || ln->sigma < 0) fail("bad lognormal parameters");
    } else if (const auto* z = std::get_if<Zipf>(&spec.distribution)) {
        if (!(z->s > 0) || z->cutoff < 1) fail("zipf needs s > 0 and cutoff >= 1");
    } else if (std::get<Constant>(spec.distribution).c < 0) {
        fail("constant citations must be >= 0");
    }
}

Rational share_from_json(const json& v, const std::string& where) {
    try {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number()) return parse_rational(v.dump());
    } catch (const DataError&) {
    }
    throw ConfigError(where + ": share must be a decimal or fraction, got " + v.dump());
}

Window years_from_json(const json& v) {
    if (v.is_string()) return Window::parse(v.get<std::string>());
    if (v.is_object()) return Window(v.at("start").get<int>(), v.at("end").get<int>());
    throw ConfigError("years must be \"START:END\" or {\"start\":..,\"end\":..}");
}

CitationDistribution distribution_from_json(const json& v) {
    auto type = v.at("type").get<std::string>();
    if (type == "discrete_lognormal") return DiscreteLognormal{v.at("mu").get<double>(), v.at("sigma").get<double>()};
    if (type == "zipf") return Zipf{v.at("s").get<double>(), v.at("cutoff").get<std::int64_t>()};
    if (type == "constant") return Constant{v.at("c").get<std::int64_t>()};
    throw ConfigError("unknown distribution type '" + type + "'");
}

Ramp ramp_from_json(const json& v) {
    if (v.is_string()) {
        auto s = v.get<std::string>();
        if (s == "flat") return Flat{};
        if (s == "rising") return Rising{};
        if (s == "declining") return Declining{};
        throw ConfigError("unknown ramp '" + s + "'");
    }
    if (v.is_object() && v.contains("ceased_after")) return CeasedAfter{v.at("ceased_after").get<int>()};
    throw ConfigError("ramp must be flat, rising, declining or {\"ceased_after\": YEAR}");
}

}  // namespace

std::uint64_t fnv1a64(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Rational effective_share(const ActivityProfile& profile, const FieldSpec& spec, int year) {
    auto it = profile.shares.find(spec.field);
    if (it == profile.shares.end() || !spec.years.contains(year)) return 0;
    const std::int64_t span = spec.years.end_year() - spec.years.start_year() + 1;
    const std::int64_t k = year - spec.years.start_year();
    return std::visit(
        [&](const auto& ramp) -> Rational {
            using T = std::decay_t<decltype(ramp)>;
            if constexpr (std::is_same_v<T, Flat>) return it->second;
            if constexpr (std::is_same_v<T, Rising>) return it->second * Rational(k + 1, span);
            if constexpr (std::is_same_v<T, Declining>) return it->second * Rational(span - k, span);
            if constexpr (std::is_same_v<T, CeasedAfter>) return year <= ramp.year ? it->second : Rational(0);
        },
        profile.ramp);
}

GeneratorSpec parse_generator_spec(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("generator spec: malformed JSON: ") + e.what());
    }
    GeneratorSpec spec;
    try {
        if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
        for (const auto& f : doc.at("fields")) {
            FieldSpec fs;
            fs.field = f.at("field").get<std::string>();
            fs.papers_per_year = f.at("papers_per_year").get<std::int64_t>();
            fs.distribution = distribution_from_json(f.at("distribution"));
            fs.years = years_from_json(f.at("years"));
            fs.citation_scale = f.value("citation_scale", std::int64_t{1});
            fs.stream = f.value("stream", std::string());
            spec.fields.push_back(std::move(fs));
        }
        if (doc.contains("profiles")) {
            for (const auto& p : doc.at("profiles")) {
                ActivityProfile ap;
                ap.inst_id = p.at("inst_id").get<std::string>();
                ap.name = p.value("name", ap.inst_id);
                for (const auto& [field, share] : p.at("shares").items()) {
                    ap.shares[field] = share_from_json(share, "profile " + ap.inst_id);
                }
                if (p.contains("ramp")) ap.ramp = ramp_from_json(p.at("ramp"));
                spec.profiles.push_back(std::move(ap));
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("generator spec: ") + e.what());
    }
    return spec;
}

GeneratedCorpus generate(const std::vector<FieldSpec>& fields, const std::vector<ActivityProfile>& profiles,
                         std::uint64_t seed) {
    std::set<std::string> codes;
    for (const auto& f : fields) {
        validate(f);
        if (!codes.insert(f.field).second) throw ConfigError("field " + f.field + " specified twice");
    }
    std::set<std::string> ids;
    std::set<std::string> names;
    for (const auto& p : profiles) {
        if (p.inst_id.empty()) throw ConfigError("profile with empty inst_id");
        if (!ids.insert(p.inst_id).second) throw ConfigError("duplicate profile " + p.inst_id);
        if (!names.insert(p.name).second) throw ConfigError("duplicate profile name " + p.name);
        if (p.name == kRestOfWorld) throw ConfigError("profile name clashes with the rest-of-world label");
        for (const auto& [field, share] : p.shares) {
            if (share < 0 || share > 1) throw ConfigError("share of " + p.inst_id + " in " + field + " outside [0,1]");
        }
    }

    GeneratedCorpus out;
    out.seed = seed;
    out.corpus.provenance = "corpusgen splitmix64 seed=" + std::to_string(seed);
    for (const auto& f : fields) {
        const std::string& label = f.stream.empty() ? f.field : f.stream;
        SplitMix64 rng(seed ^ fnv1a64(label));
        Sampler sampler(f.distribution, f.citation_scale);
        for (int year = f.years.start_year(); year <= f.years.end_year(); ++year) {
            std::vector<std::int64_t> counts;
            Rational total = 0;
            for (const auto& p : profiles) {
                Rational share = effective_share(p, f, year);
                total += share;
                Rational quota = share * f.papers_per_year;
                counts.push_back(static_cast<std::int64_t>(numerator(quota) / denominator(quota)));
            }
            if (total > 1) {
                throw ConfigError("infeasible shares: field " + f.field + " year " + std::to_string(year) +
                                  " sums to " + to_exact_string(total));
            }
            std::size_t owner = 0;
            std::int64_t used = 0;
            for (std::int64_t j = 0; j < f.papers_per_year; ++j) {
                while (owner < counts.size() && used == counts[owner]) {
                    ++owner;
                    used = 0;
                }
                PublicationRecord r;
                r.id = f.field + "-" + std::to_string(year) + "-" + std::to_string(j);
                r.year = year;
                r.doc_type = DocType::article;
                r.fields = {f.field};
                r.citations = sampler.draw(rng);
                r.affiliations = {owner < counts.size() ? profiles[owner].name : std::string(kRestOfWorld)};
                if (owner < counts.size()) ++used;
                out.corpus.records.push_back(std::move(r));
            }
        }
    }
    for (const auto& p : profiles) out.aliases.push_back({p.inst_id, p.name, {p.name}});
    return out;
}

}  // namespace scientrank
